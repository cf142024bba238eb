use std::collections::HashSet;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_index, Error, Result};

/// Named vertex groups laid out contiguously: the first group is
/// `0..size_0`, the next starts right after it, and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    names: Vec<String>,
    starts: Vec<usize>,
    n: usize,
}

impl Partition {
    pub fn new<S: Into<String>>(groups: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut starts = Vec::new();
        let mut n = 0;
        for (name, size) in groups {
            let name = name.into();
            if names.contains(&name) {
                return Err(Error::PartitionMismatch(format!("group {name} listed twice")));
            }
            names.push(name);
            starts.push(n);
            n += size;
        }
        Ok(Partition { names, starts, n })
    }

    /// Total vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn group_range(&self, g: usize) -> Range<usize> {
        self.starts[g]..self.starts.get(g + 1).copied().unwrap_or(self.n)
    }

    pub fn range(&self, name: &str) -> Option<Range<usize>> {
        self.names.iter().position(|x| x == name).map(|g| self.group_range(g))
    }

    pub fn sizes(&self) -> Vec<usize> {
        (0..self.len()).map(|g| self.group_range(g).len()).collect()
    }

    pub fn group_of(&self, v: usize) -> usize {
        self.starts.partition_point(|&s| s <= v) - 1
    }

    /// Ranges of the named groups, in the given order; errors unless the
    /// partition has exactly these groups.
    pub fn require(&self, names: &[&str]) -> Result<Vec<Range<usize>>> {
        let mut have: Vec<&str> = self.names.iter().map(String::as_str).collect();
        let mut want = names.to_vec();
        have.sort_unstable();
        want.sort_unstable();
        if have != want {
            return Err(Error::PartitionMismatch(format!(
                "expected groups {}, found {}",
                names.join(","),
                self.names.join(",")
            )));
        }
        Ok(names.iter().map(|name| self.range(name).expect("checked")).collect())
    }
}

/// A 3-uniform hypergraph, optionally partitioned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    /// Triples `a < b < c`, in sorted order.
    edges: Vec<[usize; 3]>,
    index: HashSet<[usize; 3]>,
    partition: Option<Partition>,
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

impl Hypergraph3 {
    /// Duplicate triples (in any vertex order) are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = [usize; 3]>, partition: Option<Partition>) -> Result<Self> {
        if let Some(p) = &partition {
            if p.n() != n {
                return Err(Error::PartitionMismatch(format!(
                    "partition covers {} of {n} vertices",
                    p.n()
                )));
            }
        }
        let mut index = HashSet::new();
        for e in edges {
            for &x in &e {
                check_index(x, n)?;
            }
            let e = sorted3(e);
            if e[0] == e[1] || e[1] == e[2] {
                return Err(Error::InvalidParams(format!("hyperedge {e:?} repeats a vertex")));
            }
            index.insert(e);
        }
        let mut edges: Vec<_> = index.iter().copied().collect();
        edges.sort_unstable();
        Ok(Hypergraph3 {
            n,
            edges,
            index,
            partition,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    pub fn has_edge(&self, a: usize, b: usize, c: usize) -> bool {
        self.index.contains(&sorted3([a, b, c]))
    }

    /// True iff every 3-subset of `set` is a hyperedge (vacuous below 3).
    pub fn is_clique(&self, set: &[usize]) -> bool {
        let k = set.len();
        (0..k).all(|i| (i + 1..k).all(|j| (j + 1..k).all(|l| self.has_edge(set[i], set[j], set[l]))))
    }

    /// Copy without the hyperedges that satisfy `drop`.
    pub fn without_edges(&self, mut drop: impl FnMut(&[usize; 3]) -> bool) -> Hypergraph3 {
        let kept: Vec<_> = self.edges.iter().copied().filter(|e| !drop(e)).collect();
        Hypergraph3::new(self.n, kept, self.partition.clone()).expect("subset of valid edges")
    }
}

/// Random partitioned hypergraph: every triple with its vertices in three
/// distinct groups is an edge with probability `p`.
pub fn random_partite_hypergraph(groups: &[(&str, usize)], p: f64, seed: u64) -> Result<Hypergraph3> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("edge probability {p} not in [0, 1]")));
    }
    let partition = Partition::new(groups.iter().map(|&(name, size)| (name, size)))?;
    let n = partition.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ga, gb, gc) = (partition.group_of(a), partition.group_of(b), partition.group_of(c));
                if ga != gb && gb != gc && ga != gc && rng.gen_bool(p) {
                    edges.push([a, b, c]);
                }
            }
        }
    }
    Hypergraph3::new(n, edges, Some(partition))
}

/// Default group names for a partition with `parts` groups: letters from
/// `A`, with the last group named `U`.
pub fn default_group_names(parts: usize) -> Vec<String> {
    (0..parts)
        .map(|i| {
            if i + 1 == parts {
                "U".to_string()
            } else {
                char::from(b'A' + i as u8).to_string()
            }
        })
        .collect()
}

/// Whether `h` has an `ell`-hyperclique. With a partition, only sets taking
/// at most one vertex from each group count.
pub fn brute_hyperclique(h: &Hypergraph3, ell: usize) -> bool {
    let mut chosen = Vec::with_capacity(ell);
    match h.partition() {
        Some(p) => {
            let groups: Vec<Range<usize>> = (0..p.len()).map(|g| p.group_range(g)).collect();
            extend_by_group(h, &groups, 0, ell, &mut chosen)
        }
        None => extend_any(h, 0, ell, &mut chosen),
    }
}

fn fits(h: &Hypergraph3, chosen: &[usize], v: usize) -> bool {
    let k = chosen.len();
    (0..k).all(|i| (i + 1..k).all(|j| h.has_edge(chosen[i], chosen[j], v)))
}

fn extend_any(h: &Hypergraph3, from: usize, ell: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == ell {
        return true;
    }
    for v in from..h.n() {
        if h.n() - v < ell - chosen.len() {
            break;
        }
        if fits(h, chosen, v) {
            chosen.push(v);
            if extend_any(h, v + 1, ell, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn extend_by_group(h: &Hypergraph3, groups: &[Range<usize>], g: usize, ell: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == ell {
        return true;
    }
    if groups.len() - g < ell - chosen.len() {
        return false;
    }
    for v in groups[g].clone() {
        if fits(h, chosen, v) {
            chosen.push(v);
            if extend_by_group(h, groups, g + 1, ell, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    extend_by_group(h, groups, g + 1, ell, chosen)
}
