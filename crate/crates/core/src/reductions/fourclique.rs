use std::collections::HashSet;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_index, Error, Result};
use crate::graph::Dag;
use crate::matrix::{count_product, BoolMatrix};
use crate::oracle::{count_lcas, LcaReport};

use super::hypergraph::Partition;

/// Simple undirected graph whose vertices are split into parts `A, B, C, D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourPartiteGraph {
    partition: Partition,
    /// `(u, v)` with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
    index: HashSet<(usize, usize)>,
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl FourPartiteGraph {
    /// Errors with `NotFourPartite` unless the partition is exactly
    /// `A, B, C, D` and every edge joins two different parts.
    pub fn new(partition: Partition, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        partition
            .require(&["A", "B", "C", "D"])
            .map_err(|e| Error::NotFourPartite(e.to_string()))?;
        let n = partition.n();
        let mut index = HashSet::new();
        for (u, v) in edges {
            check_index(u, n)?;
            check_index(v, n)?;
            if partition.group_of(u) == partition.group_of(v) {
                return Err(Error::NotFourPartite(format!("edge {{{u}, {v}}} inside one part")));
            }
            index.insert(ordered(u, v));
        }
        let mut edges: Vec<_> = index.iter().copied().collect();
        edges.sort_unstable();
        Ok(FourPartiteGraph {
            partition,
            edges,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.index.contains(&ordered(u, v))
    }

    pub fn part(&self, name: &str) -> Range<usize> {
        self.partition.range(name).expect("validated parts")
    }

    /// Copy without the edges that satisfy `drop`.
    pub fn without_edges(&self, mut drop: impl FnMut(usize, usize) -> bool) -> FourPartiteGraph {
        let kept: Vec<_> = self.edges.iter().copied().filter(|&(u, v)| !drop(u, v)).collect();
        FourPartiteGraph::new(self.partition.clone(), kept).expect("subset of valid edges")
    }
}

/// Random 4-partite graph, each cross-part pair an edge with probability `p`.
pub fn random_four_partite(sizes: [usize; 4], p: f64, seed: u64) -> Result<FourPartiteGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("edge probability {p} not in [0, 1]")));
    }
    let partition = Partition::new(["A", "B", "C", "D"].into_iter().zip(sizes))?;
    let n = partition.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if partition.group_of(u) != partition.group_of(v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    FourPartiteGraph::new(partition, edges)
}

/// Quadruple loop over one vertex per part.
pub fn brute_4clique(g: &FourPartiteGraph) -> bool {
    let (pa, pb, pc, pd) = (g.part("A"), g.part("B"), g.part("C"), g.part("D"));
    pa.clone().any(|a| {
        pb.clone().any(|b| {
            g.has_edge(a, b)
                && pc.clone().any(|c| {
                    g.has_edge(a, c)
                        && g.has_edge(b, c)
                        && pd
                            .clone()
                            .any(|d| g.has_edge(a, d) && g.has_edge(b, d) && g.has_edge(c, d))
                })
        })
    })
}

/// The counting gadget: `C` on top; `A'`, `D`, `B'` in the middle; `A`, `B`
/// at the bottom. All fields map source vertices (by offset within their
/// part) to gadget vertices.
#[derive(Clone, Debug)]
pub struct FourCliqueGadget {
    pub graph: Dag,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    pub a_copy: Vec<usize>,
    pub b_copy: Vec<usize>,
}

/// Edges: `c -> a` if `{c,a} ∈ E` else `c -> a'`; likewise for `b`;
/// `c -> d` and `d -> a`, `d -> b` along `E`; `a' -> a`, `b' -> b`; and
/// `a' -> b`, `b' -> a` for all `a, b`. Edges between `A` and `B` are
/// dropped.
///
/// Then `c` is an LCA of `(a, b)` iff `{c,a}, {c,b} ∈ E` and no `d` is
/// adjacent to all of `c, a, b`.
pub fn build_4clique_gadget(g: &FourPartiteGraph) -> FourCliqueGadget {
    let (pa, pb, pc, pd) = (g.part("A"), g.part("B"), g.part("C"), g.part("D"));
    let mut next = 0;
    let mut alloc = |len: usize| {
        let ids: Vec<usize> = (next..next + len).collect();
        next += len;
        ids
    };
    let c = alloc(pc.len());
    let a_copy = alloc(pa.len());
    let d = alloc(pd.len());
    let b_copy = alloc(pb.len());
    let a = alloc(pa.len());
    let b = alloc(pb.len());
    let n = next;

    let mut edges = Vec::new();
    for (ci, cv) in pc.clone().enumerate() {
        for (ai, av) in pa.clone().enumerate() {
            edges.push((c[ci], if g.has_edge(cv, av) { a[ai] } else { a_copy[ai] }));
        }
        for (bi, bv) in pb.clone().enumerate() {
            edges.push((c[ci], if g.has_edge(cv, bv) { b[bi] } else { b_copy[bi] }));
        }
        for (di, dv) in pd.clone().enumerate() {
            if g.has_edge(cv, dv) {
                edges.push((c[ci], d[di]));
            }
        }
    }
    for (di, dv) in pd.clone().enumerate() {
        for (ai, av) in pa.clone().enumerate() {
            if g.has_edge(dv, av) {
                edges.push((d[di], a[ai]));
            }
        }
        for (bi, bv) in pb.clone().enumerate() {
            if g.has_edge(dv, bv) {
                edges.push((d[di], b[bi]));
            }
        }
    }
    for ai in 0..pa.len() {
        edges.push((a_copy[ai], a[ai]));
        edges.extend(b.iter().map(|&bv| (a_copy[ai], bv)));
    }
    for bi in 0..pb.len() {
        edges.push((b_copy[bi], b[bi]));
        edges.extend(a.iter().map(|&av| (b_copy[bi], av)));
    }

    FourCliqueGadget {
        graph: Dag::new(n, edges).expect("layered construction"),
        a,
        b,
        c,
        d,
        a_copy,
        b_copy,
    }
}

/// Whether `g` has a 4-clique with one vertex per part, from all-pairs LCA
/// counts of the gadget supplied by `counter`.
///
/// Per `(a, b)`: middle-layer LCAs are exactly the middle-layer common
/// in-neighbours, so `|LCA(a,b) ∩ C|` is the total minus that count; no
/// bottom vertex is an LCA. `Q(a,b) - |LCA(a,b) ∩ C|` counts the `c`
/// adjacent to `a, b` that close a triangle with some `d`; a clique exists
/// iff this is positive for an edge `{a, b}`.
pub fn solve_4clique_with(g: &FourPartiteGraph, counter: impl FnOnce(&Dag) -> Result<LcaReport>) -> Result<bool> {
    let gadget = build_4clique_gadget(g);
    let counts = counter(&gadget.graph)?;
    if counts.n() != gadget.graph.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} counts for {} gadget vertices",
            counts.n(),
            gadget.graph.n()
        )));
    }
    let adj = gadget.graph.adjacency();
    let middle: Vec<usize> = gadget
        .a_copy
        .iter()
        .chain(&gadget.d)
        .chain(&gadget.b_copy)
        .copied()
        .collect();
    let bottom: Vec<usize> = gadget.a.iter().chain(&gadget.b).copied().collect();
    let mid_to_bottom = adj.permuted(&middle, &bottom);
    let common_mid = count_product(&mid_to_bottom.transpose(), &mid_to_bottom)?;

    let (pa, pb, pc) = (g.part("A"), g.part("B"), g.part("C"));
    let na = pa.len();
    let a_side = BoolMatrix::from_fn(pc.len(), na, |ci, ai| g.has_edge(pc.start + ci, pa.start + ai));
    let b_side = BoolMatrix::from_fn(pc.len(), pb.len(), |ci, bi| g.has_edge(pc.start + ci, pb.start + bi));
    let q = count_product(&a_side.transpose(), &b_side)?;

    for (ai, av) in pa.clone().enumerate() {
        for (bi, bv) in pb.clone().enumerate() {
            if !g.has_edge(av, bv) {
                continue;
            }
            let total = counts.count(gadget.a[ai], gadget.b[bi]);
            let in_c = total - common_mid.get(ai, na + bi);
            if q.get(ai, bi) > in_c {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// [`solve_4clique_with`] using brute-force LCA counts.
pub fn solve_4clique_via_countlca(g: &FourPartiteGraph) -> Result<bool> {
    solve_4clique_with(g, |h| Ok(count_lcas(h)))
}
