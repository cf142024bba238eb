use crate::graph::Dag;

/// A graph on `2n + 1` vertices and a map `ρ` such that every pair
/// `(ρ(u), ρ(v))` with `u != v` has exactly one more LCA than `(u, v)` has
/// in `g`. On the diagonal both counts are 1, since a vertex is its own
/// unique LCA.
///
/// Vertices `0..n` copy `g`, vertex `n + u` is `ρ(u)` with in-edges from `u`
/// and from the apex `2n`. The apex is the extra LCA.
pub fn add_one_lca(g: &Dag) -> (Dag, Vec<usize>) {
    let n = g.n();
    let apex = 2 * n;
    let mut edges = g.edges().to_vec();
    for u in 0..n {
        edges.push((u, n + u));
        edges.push((apex, n + u));
    }
    let out = Dag::new(2 * n + 1, edges).expect("copies of an acyclic graph");
    (out, (n..2 * n).collect())
}
