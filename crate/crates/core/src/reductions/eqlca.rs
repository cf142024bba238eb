use std::collections::HashMap;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::Dag;
use crate::matrix::BoolMatrix;
use crate::oracle::count_lcas;

use super::hypergraph::Hypergraph3;

/// Group layout of one gadget family. Groups are named by index into
/// `groups`; the last group is always `U`.
struct Family {
    groups: &'static [&'static str],
    middle: &'static [&'static [usize]],
    bottom: [&'static [usize]; 2],
}

fn family(k: usize) -> Option<Family> {
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;
    match k {
        3 => Some(Family {
            groups: &["A", "B", "C", "U"],
            middle: &[&[A, B], &[B, C], &[C, A]],
            bottom: [&[A, B], &[C]],
        }),
        4 => Some(Family {
            groups: &["A", "B", "C", "D", "U"],
            middle: &[&[A, B], &[A, C], &[A, D], &[B, C, D]],
            bottom: [&[A, B], &[C, D]],
        }),
        5 => Some(Family {
            groups: &["A", "B", "C", "D", "E", "U"],
            middle: &[&[A, C, D], &[B, C, D], &[A, B, E], &[C, E], &[D, E]],
            bottom: [&[A, B, C], &[D, E]],
        }),
        6 => Some(Family {
            groups: &["A", "B", "C", "D", "U"],
            middle: &[&[A, B], &[A, C], &[A, D], &[B, C], &[B, D], &[C, D]],
            bottom: [&[A, B], &[C, D]],
        }),
        _ => None,
    }
}

/// Group names a hypergraph must be partitioned into for `target_k`.
pub fn required_groups(target_k: usize) -> Option<&'static [&'static str]> {
    family(target_k).map(|f| f.groups)
}

/// Gadget vertex provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetVertex {
    /// 1 (copy of `U`), 2 or 3.
    pub layer: u8,
    /// Hypergraph vertices this gadget vertex stands for, ordered by group.
    pub tuple: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryPair {
    pub u: usize,
    pub v: usize,
    /// The non-`U` hypergraph vertices named by the pair, ordered by group.
    pub source: Vec<usize>,
}

/// An Exact-k instance built from a hypergraph.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub graph: Dag,
    pub query_pairs: Vec<QueryPair>,
    /// Number of middle-layer LCAs every queried pair has.
    pub expected_count: usize,
    pub vertices: Vec<GadgetVertex>,
    index: HashMap<(u8, Vec<usize>), usize>,
}

impl GadgetInstance {
    /// Gadget vertex for a layer and tuple of hypergraph vertices.
    pub fn vertex(&self, layer: u8, tuple: &[usize]) -> Option<usize> {
        self.index.get(&(layer, tuple.to_vec())).copied()
    }
}

/// All tuples taking one vertex from each of `groups`, in lexicographic
/// order, paired with the group list.
fn tuples(ranges: &[Range<usize>], groups: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &g in groups {
        out = out
            .into_iter()
            .flat_map(|t| {
                ranges[g].clone().map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// True iff two typed tuples agree on every group they share.
fn consistent(ga: &[usize], ta: &[usize], gb: &[usize], tb: &[usize]) -> bool {
    ga.iter()
        .zip(ta)
        .all(|(g, x)| gb.iter().position(|h| h == g).is_none_or(|i| tb[i] == *x))
}

/// Three-layer Exact-k gadget for detecting a `(k+1)`- (or 5-, for `k = 6`)
/// hyperclique.
///
/// Layer 1 is a copy of `U`; layers 2 and 3 hold tuples over the non-`U`
/// groups. Edges: layer 1 to all of layer 3; a layer-2 tuple to a layer-3
/// tuple when they agree on all shared groups (tuples over disjoint groups
/// always agree); `u` to a layer-2 tuple `t` iff `{u} ∪ t` is not a
/// hyperclique. For a queried pair `(x, y)` of layer-3 tuples, the layer-2
/// common ancestors are the one tuple per layer-2 type consistent with both,
/// and `u` is an extra LCA iff `{u} ∪ t` is a hyperclique for all of them.
pub fn build_hyperclique_gadget(h: &Hypergraph3, target_k: usize) -> Result<GadgetInstance> {
    let fam =
        family(target_k).ok_or_else(|| Error::InvalidParams(format!("no hyperclique gadget for k = {target_k}")))?;
    let part = h
        .partition()
        .ok_or_else(|| Error::PartitionMismatch("hypergraph has no partition".into()))?;
    let ranges = part.require(fam.groups)?;
    let u_range = ranges[fam.groups.len() - 1].clone();

    let mut vertices = Vec::new();
    let mut index = HashMap::new();
    let mut add = |layer: u8, tuple: Vec<usize>, vertices: &mut Vec<GadgetVertex>| {
        index.insert((layer, tuple.clone()), vertices.len());
        vertices.push(GadgetVertex { layer, tuple });
        vertices.len() - 1
    };

    let top: Vec<usize> = u_range.clone().map(|x| add(1, vec![x], &mut vertices)).collect();
    let middle: Vec<Vec<(usize, Vec<usize>)>> = fam
        .middle
        .iter()
        .map(|groups| {
            tuples(&ranges, groups)
                .into_iter()
                .map(|t| (add(2, t.clone(), &mut vertices), t))
                .collect()
        })
        .collect();
    let bottom: Vec<Vec<(usize, Vec<usize>)>> = fam
        .bottom
        .iter()
        .map(|groups| {
            tuples(&ranges, groups)
                .into_iter()
                .map(|t| (add(3, t.clone(), &mut vertices), t))
                .collect()
        })
        .collect();

    let mut edges = Vec::new();
    for &u in &top {
        for side in &bottom {
            edges.extend(side.iter().map(|&(v, _)| (u, v)));
        }
    }
    for (mtype, mverts) in fam.middle.iter().zip(&middle) {
        for (btype, bverts) in fam.bottom.iter().zip(&bottom) {
            for (m, mt) in mverts {
                for (b, bt) in bverts {
                    if consistent(mtype, mt, btype, bt) {
                        edges.push((*m, *b));
                    }
                }
            }
        }
    }
    let mut set = Vec::with_capacity(4);
    for (&u, x) in top.iter().zip(u_range) {
        for (m, mt) in middle.iter().flatten() {
            set.clear();
            set.push(x);
            set.extend_from_slice(mt);
            if !h.is_clique(&set) {
                edges.push((u, *m));
            }
        }
    }
    let graph = Dag::new(vertices.len(), edges)?;

    let mut query_pairs = Vec::with_capacity(bottom[0].len() * bottom[1].len());
    for (x, xt) in &bottom[0] {
        for (y, yt) in &bottom[1] {
            let mut typed: Vec<(usize, usize)> = fam.bottom[0]
                .iter()
                .zip(xt)
                .chain(fam.bottom[1].iter().zip(yt))
                .map(|(&g, &v)| (g, v))
                .collect();
            typed.sort_unstable();
            query_pairs.push(QueryPair {
                u: *x,
                v: *y,
                source: typed.into_iter().map(|(_, v)| v).collect(),
            });
        }
    }

    Ok(GadgetInstance {
        graph,
        query_pairs,
        expected_count: fam.middle.len(),
        vertices,
        index,
    })
}

/// Whether `h` has the hyperclique the `target_k` gadget detects (one vertex
/// from every group), using `exact(g, k)` as the Exact-k solver.
///
/// A queried pair witnesses a hyperclique iff its source vertices already
/// form a hyperclique and the pair does not have exactly `expected_count`
/// LCAs.
pub fn solve_hyperclique_with(
    h: &Hypergraph3,
    target_k: usize,
    mut exact: impl FnMut(&Dag, usize) -> Result<BoolMatrix>,
) -> Result<bool> {
    let gadget = build_hyperclique_gadget(h, target_k)?;
    let bits = exact(&gadget.graph, gadget.expected_count)?;
    Ok(gadget
        .query_pairs
        .iter()
        .any(|q| h.is_clique(&q.source) && !bits.get(q.u, q.v)))
}

/// [`solve_hyperclique_with`] using brute-force LCA counts.
pub fn solve_hyperclique_via_eqlca(h: &Hypergraph3, target_k: usize) -> Result<bool> {
    solve_hyperclique_with(h, target_k, |g, k| {
        let counts = count_lcas(g);
        Ok(BoolMatrix::from_fn(g.n(), g.n(), |u, v| counts.count(u, v) == k as u64))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::hypergraph::{brute_hyperclique, random_partite_hypergraph, Partition};

    fn complete_partite(sizes: &[(&'static str, usize)]) -> Hypergraph3 {
        random_partite_hypergraph(sizes, 1.0, 0).unwrap()
    }

    fn singleton_groups(k: usize) -> Vec<(&'static str, usize)> {
        required_groups(k).unwrap().iter().map(|&g| (g, 1)).collect()
    }

    #[test]
    fn three_group_layout() {
        let h = complete_partite(&[("A", 2), ("B", 2), ("C", 2), ("U", 3)]);
        let g = build_hyperclique_gadget(&h, 3).unwrap();
        assert_eq!(g.graph.n(), 3 + 12 + 6);
        assert_eq!(g.query_pairs.len(), 8);
        assert_eq!(g.expected_count, 3);
        // (a, b)_2 -> c_3 for every c; (a, b)_2 -> (a', b)_3 only when a' = a
        let ab2 = g.vertex(2, &[0, 2]).unwrap();
        assert!(g.graph.has_edge(ab2, g.vertex(3, &[4]).unwrap()));
        assert!(g.graph.has_edge(ab2, g.vertex(3, &[5]).unwrap()));
        assert!(g.graph.has_edge(ab2, g.vertex(3, &[0, 2]).unwrap()));
        assert!(!g.graph.has_edge(ab2, g.vertex(3, &[1, 2]).unwrap()));
        let bc2 = g.vertex(2, &[2, 4]).unwrap();
        assert!(g.graph.has_edge(bc2, g.vertex(3, &[1, 2]).unwrap()));
        assert!(!g.graph.has_edge(bc2, g.vertex(3, &[5]).unwrap()));
        // complete hypergraph: U vertices point to no layer-2 tuple
        assert!(!g.graph.has_edge(g.vertex(1, &[6]).unwrap(), ab2));
    }

    #[test]
    fn queried_counts() {
        // one full 4-hyperclique {0, 1, 2, 3}; U = {3}
        let p = Partition::new(singleton_groups(3)).unwrap();
        let h = Hypergraph3::new(4, [[0, 1, 2], [0, 1, 3], [1, 2, 3], [0, 2, 3]], Some(p.clone())).unwrap();
        let g = build_hyperclique_gadget(&h, 3).unwrap();
        let q = &g.query_pairs[0];
        assert_eq!(q.source, vec![0, 1, 2]);
        assert_eq!(count_lcas(&g.graph).count(q.u, q.v), 4);
        assert!(solve_hyperclique_via_eqlca(&h, 3).unwrap());

        // no hyperedges touch u: u reaches every layer-2 tuple
        let h = Hypergraph3::new(4, [[0, 1, 2]], Some(p)).unwrap();
        let g = build_hyperclique_gadget(&h, 3).unwrap();
        let q = &g.query_pairs[0];
        assert_eq!(count_lcas(&g.graph).count(q.u, q.v), 3);
        assert!(!solve_hyperclique_via_eqlca(&h, 3).unwrap());
    }

    #[test]
    fn singleton_cliques_per_family() {
        for k in 3..=6 {
            let h = complete_partite(&singleton_groups(k));
            assert!(solve_hyperclique_via_eqlca(&h, k).unwrap(), "k = {k}");
            let first = h.edges()[0];
            let missing = h.without_edges(|e| *e == first);
            assert!(!solve_hyperclique_via_eqlca(&missing, k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn k4_five_clique_changes_count() {
        let h = complete_partite(&singleton_groups(4));
        let g = build_hyperclique_gadget(&h, 4).unwrap();
        let q = &g.query_pairs[0];
        assert_ne!(count_lcas(&g.graph).count(q.u, q.v), 4);
    }

    #[test]
    fn partition_errors() {
        let h = complete_partite(&[("A", 1), ("B", 1), ("C", 1), ("U", 1)]);
        assert!(matches!(
            build_hyperclique_gadget(&h, 4),
            Err(Error::PartitionMismatch(_))
        ));
        assert!(matches!(build_hyperclique_gadget(&h, 7), Err(Error::InvalidParams(_))));
        let bare = Hypergraph3::new(4, [], None).unwrap();
        assert!(matches!(
            build_hyperclique_gadget(&bare, 3),
            Err(Error::PartitionMismatch(_))
        ));
    }

    /// Every queried pair has exactly `expected_count` layer-2 LCAs, and with
    /// all `U` hyperedges removed no layer-1 LCA.
    #[test]
    fn middle_layer_count() {
        for k in 3..=6 {
            let sizes: Vec<(&str, usize)> = required_groups(k).unwrap().iter().map(|&g| (g, 2)).collect();
            let h = random_partite_hypergraph(&sizes, 0.7, k as u64).unwrap();
            let u = h.partition().unwrap().range("U").unwrap();
            let h = h.without_edges(|e| e.iter().any(|x| u.contains(x)));
            let g = build_hyperclique_gadget(&h, k).unwrap();
            let lists = crate::oracle::k_lcas_bruteforce(&g.graph, g.graph.n());
            for q in &g.query_pairs {
                let l = lists.list(q.u, q.v);
                assert_eq!(l.len(), g.expected_count);
                assert!(l.iter().all(|&w| g.vertices[w].layer == 2));
            }
        }
    }

    /// For every source tuple that is a hyperclique: count differs from the
    /// expected one iff some `u` extends it.
    #[test]
    fn biconditional_exhaustive_tiny() {
        for k in 3..=6 {
            let names = required_groups(k).unwrap();
            for seed in 0..12 {
                let sizes: Vec<(&str, usize)> = names
                    .iter()
                    .map(|&g| (g, if g == "U" { 1 + seed as usize % 4 } else { 2 }))
                    .collect();
                let density = [0.5, 0.8, 0.95][seed as usize % 3];
                let h = random_partite_hypergraph(&sizes, density, seed).unwrap();
                let g = build_hyperclique_gadget(&h, k).unwrap();
                let counts = count_lcas(&g.graph);
                let u = h.partition().unwrap().range("U").unwrap();
                for q in &g.query_pairs {
                    if !h.is_clique(&q.source) {
                        continue;
                    }
                    let extends = u.clone().any(|x| {
                        let mut s = q.source.clone();
                        s.push(x);
                        h.is_clique(&s)
                    });
                    assert_eq!(
                        counts.count(q.u, q.v) != g.expected_count as u64,
                        extends,
                        "k {k} seed {seed}"
                    );
                }
                assert_eq!(
                    solve_hyperclique_via_eqlca(&h, k).unwrap(),
                    brute_hyperclique(&h, names.len())
                );
            }
        }
    }
}
