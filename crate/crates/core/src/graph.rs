//! DAG representation, topological ordering, reachability and instance
//! generators.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_index, Error, Result};
use crate::matrix::{bool_product, set_bit, test_bit, words_for, BoolMatrix};

/// A topological order: `pi[i]` is the vertex at position `i` and `pos` is
/// its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopoOrder {
    pi: Vec<usize>,
    pos: Vec<usize>,
}

impl TopoOrder {
    /// Kahn's algorithm, always releasing the smallest ready vertex id.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut indeg = vec![0usize; n];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            indeg[v] += 1;
            succ[u].push(v);
        }
        let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut pi = Vec::with_capacity(n);
        while let Some(Reverse(u)) = ready.pop() {
            pi.push(u);
            for &v in &succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(Reverse(v));
                }
            }
        }
        if pi.len() != n {
            return Err(Error::CycleDetected);
        }
        let mut pos = vec![0; n];
        for (i, &v) in pi.iter().enumerate() {
            pos[v] = i;
        }
        Ok(TopoOrder { pi, pos })
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    /// Vertex at position `i`.
    #[inline]
    pub fn vertex(&self, i: usize) -> usize {
        self.pi[i]
    }

    /// Position of vertex `v`.
    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn pos(&self) -> &[usize] {
        &self.pos
    }
}

/// A directed acyclic graph on vertices `0..n`.
///
/// Edges are kept sorted and the packed adjacency rows mirror them exactly.
/// Construction rejects self-loops, duplicate edges and cycles.
#[derive(Clone, Debug)]
pub struct Dag {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: BoolMatrix,
    order: TopoOrder,
}

impl PartialEq for Dag {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Dag {}

impl Dag {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            check_index(u, n)?;
            check_index(v, n)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let order = TopoOrder::from_edges(n, &edges)?;
        let mut adj = BoolMatrix::zeros(n, n);
        for &(u, v) in &edges {
            adj.set(u, v, true);
        }
        Ok(Dag { n, edges, adj, order })
    }

    pub fn empty(n: usize) -> Self {
        Dag::new(n, []).expect("edgeless graph is acyclic")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> &BoolMatrix {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj.get(u, v)
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.row_ones(u)
    }

    pub fn topo_order(&self) -> &TopoOrder {
        &self.order
    }
}

/// Deterministic topological order (min-id tie-breaking).
pub fn topological_order(g: &Dag) -> TopoOrder {
    g.topo_order().clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClosureBackend {
    /// Repeated squaring of `I + A` until it stops changing.
    Squaring,
    /// One depth-first search per source vertex.
    Dfs,
    /// DFS for sparse graphs, squaring otherwise.
    #[default]
    Auto,
}

/// Reflexive transitive closure: `D[w,v] = 1` iff `w ⇝ v`.
pub fn transitive_closure(g: &Dag) -> BoolMatrix {
    transitive_closure_with(g, ClosureBackend::Auto)
}

pub fn transitive_closure_with(g: &Dag, backend: ClosureBackend) -> BoolMatrix {
    match backend {
        ClosureBackend::Squaring => closure_by_squaring(g),
        ClosureBackend::Dfs => closure_by_dfs(g),
        ClosureBackend::Auto => {
            if g.m() <= 8 * g.n() {
                closure_by_dfs(g)
            } else {
                closure_by_squaring(g)
            }
        }
    }
}

fn closure_by_squaring(g: &Dag) -> BoolMatrix {
    let mut reach = g.adjacency().or(&BoolMatrix::identity(g.n()));
    // path lengths double each round; at most ceil(log2 n) rounds change anything
    loop {
        let next = bool_product(&reach, &reach).expect("square operands");
        if next == reach {
            return reach;
        }
        reach = next;
    }
}

fn closure_by_dfs(g: &Dag) -> BoolMatrix {
    let n = g.n();
    let stride = words_for(n);
    let mut words = vec![0u64; n * stride];
    let mut stack = Vec::new();
    for (src, row) in words.chunks_mut(stride.max(1)).enumerate().take(n) {
        set_bit(row, src);
        stack.push(src);
        while let Some(u) = stack.pop() {
            for v in g.out_neighbors(u) {
                if !test_bit(row, v) {
                    set_bit(row, v);
                    stack.push(v);
                }
            }
        }
    }
    BoolMatrix::from_words(n, n, words)
}

/// `Anc(v) = {w : D[w,v] = 1}`, ascending. Always contains `v`.
pub fn ancestors(closure: &BoolMatrix, v: usize) -> Result<Vec<usize>> {
    check_index(v, closure.cols())?;
    Ok((0..closure.rows()).filter(|&w| closure.get(w, v)).collect())
}

/// Closure together with its transpose, so descendant and ancestor sets are
/// both available as packed rows.
#[derive(Clone, Debug)]
pub struct Reachability {
    order: TopoOrder,
    desc: BoolMatrix,
    anc: BoolMatrix,
}

impl Reachability {
    pub fn new(g: &Dag) -> Self {
        let desc = transitive_closure(g);
        let anc = desc.transpose();
        Reachability {
            order: g.topo_order().clone(),
            desc,
            anc,
        }
    }

    pub fn n(&self) -> usize {
        self.desc.rows()
    }

    pub fn order(&self) -> &TopoOrder {
        &self.order
    }

    /// The closure `D`, rows are descendant sets.
    pub fn closure(&self) -> &BoolMatrix {
        &self.desc
    }

    /// `D^T`, rows are ancestor sets.
    pub fn ancestor_rows(&self) -> &BoolMatrix {
        &self.anc
    }

    #[inline]
    pub fn reaches(&self, w: usize, v: usize) -> bool {
        self.desc.get(w, v)
    }

    /// Packed `Anc(u) ∩ Anc(v)`.
    pub fn common_ancestors(&self, u: usize, v: usize) -> Vec<u64> {
        self.anc
            .row(u)
            .iter()
            .zip(self.anc.row(v))
            .map(|(a, b)| a & b)
            .collect()
    }
}

/// Induced subgraph on the order positions `start..n`, plus the map from
/// subgraph ids back to original ids. Subgraph vertex `i` is the vertex at
/// position `start + i`.
pub fn suffix_subgraph(g: &Dag, order: &TopoOrder, start: usize) -> Result<(Dag, Vec<usize>)> {
    if start > g.n() {
        return Err(Error::IndexOutOfRange {
            index: start,
            len: g.n() + 1,
        });
    }
    let map: Vec<usize> = order.pi()[start..].to_vec();
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| order.position(u) >= start && order.position(v) >= start)
        .map(|&(u, v)| (order.position(u) - start, order.position(v) - start));
    Ok((Dag::new(map.len(), edges)?, map))
}

/// Each pair `i < j` of a uniformly random vertex permutation gets the edge
/// `perm[i] -> perm[j]` independently with probability `edge_prob`.
pub fn random_dag(n: usize, edge_prob: f64, seed: u64) -> Result<Dag> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidParams(format!(
            "edge probability {edge_prob} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((perm[i], perm[j]));
            }
        }
    }
    Dag::new(n, edges)
}

/// Vertices are laid out layer by layer in id order. For each pair of layers
/// `i < j`, vertex `a` of layer `i` gets an edge to vertex `b` of layer `j`
/// iff `edge_rule(i, a, j, b)`.
pub fn layered_dag(layers: &[usize], mut edge_rule: impl FnMut(usize, usize, usize, usize) -> bool) -> Dag {
    let mut offsets = Vec::with_capacity(layers.len());
    let mut n = 0;
    for &size in layers {
        offsets.push(n);
        n += size;
    }
    let mut edges = Vec::new();
    for (i, &si) in layers.iter().enumerate() {
        for (j, &sj) in layers.iter().enumerate().skip(i + 1) {
            for a in 0..si {
                for b in 0..sj {
                    if edge_rule(i, a, j, b) {
                        edges.push((offsets[i] + a, offsets[j] + b));
                    }
                }
            }
        }
    }
    Dag::new(n, edges).expect("layered edges point forward")
}

/// Layered DAG whose consecutive layers are joined by independent random
/// edges, each present with probability `edge_prob`.
pub fn random_layered_dag(layers: &[usize], edge_prob: f64, seed: u64) -> Result<Dag> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::InvalidParams(format!(
            "edge probability {edge_prob} not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(layered_dag(layers, |i, _, j, _| j == i + 1 && rng.gen_bool(edge_prob)))
}
