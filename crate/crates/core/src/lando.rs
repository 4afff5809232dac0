//! The Lando graph of a diagram: admissible A-chords of the all-A
//! resolution, joined when their ends alternate along a circle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagram::{Diagram, ResolvedState, Smoothing};
use crate::graph::Graph;
use crate::simplicial::{VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LandoError {
    #[error("graph has {vertices} vertices, above the cap of {limit}")]
    CapExceeded { vertices: usize, limit: usize },
    #[error("resolution is not the all-A state")]
    NotAllA,
}

/// Vertices are the admissible A-chords in crossing order; vertex labels
/// are 1-based crossing indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LandoGraph {
    graph: Graph,
    crossings: Vec<usize>,
}

impl LandoGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Crossing index of each vertex.
    pub fn crossings(&self) -> &[usize] {
        &self.crossings
    }

    pub fn vertex_count(&self) -> usize {
        self.crossings.len()
    }
}

/// Builds the Lando graph from the all-A resolution.
pub fn build_lando(r: &ResolvedState) -> Result<LandoGraph, LandoError> {
    if r.chords().iter().any(|c| c.label != Smoothing::A) {
        return Err(LandoError::NotAllA);
    }
    let vertices: Vec<usize> = (0..r.chords().len())
        .filter(|&x| r.is_admissible(x))
        .collect();
    let mut edges = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
            if r.interleaved(u, v) {
                edges.push((i, j));
            }
        }
    }
    let labels = vertices.iter().map(|&x| x as u32 + 1).collect();
    let graph = Graph::new(labels, edges).expect("chord interleaving graph");
    Ok(LandoGraph {
        graph,
        crossings: vertices,
    })
}

/// Lando graph of a diagram.
pub fn lando_graph(d: &Diagram) -> LandoGraph {
    let r = d
        .resolve(&d.all_a_state())
        .expect("all-A state fits the diagram");
    build_lando(&r).expect("all-A resolution")
}

/// `I(G) = Σ_σ (−1)^{|σ|}` over all independent sets, by the recursion
/// `I(G) = I(G − v) − I(G − N[v])` with splitting into components.
pub fn independence_number(g: &Graph, max_vertices: usize) -> Result<BigInt, LandoError> {
    let limit = max_vertices.min(MAX_VERTICES);
    if g.vertex_count() > limit {
        return Err(LandoError::CapExceeded {
            vertices: g.vertex_count(),
            limit,
        });
    }
    let masks = g.neighbor_masks().expect("within bitmask range");
    let mut memo = HashMap::new();
    Ok(signed_count(
        &masks,
        VertexSet::full(g.vertex_count()),
        &mut memo,
    ))
}

fn signed_count(
    masks: &[VertexSet],
    live: VertexSet,
    memo: &mut HashMap<VertexSet, BigInt>,
) -> BigInt {
    if live.is_empty() {
        return BigInt::one();
    }
    if let Some(v) = memo.get(&live) {
        return v.clone();
    }
    let component = component_of(masks, live, live.first().unwrap());
    let result = if component != live {
        let a = signed_count(masks, component, memo);
        if a.is_zero() {
            a
        } else {
            a * signed_count(masks, live.difference(component), memo)
        }
    } else {
        let v = live
            .iter()
            .max_by_key(|&v| masks[v].intersection(live).len())
            .unwrap();
        let nbhd = masks[v].intersection(live);
        if nbhd.is_empty() {
            BigInt::zero()
        } else {
            signed_count(masks, live.without(v), memo)
                - signed_count(masks, live.difference(nbhd.with(v)), memo)
        }
    };
    memo.insert(live, result.clone());
    result
}

fn component_of(masks: &[VertexSet], live: VertexSet, v: usize) -> VertexSet {
    let mut seen = VertexSet::singleton(v);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for u in frontier.iter() {
            next = next.union(masks[u]);
        }
        frontier = next.intersection(live).difference(seen);
        seen = seen.union(frontier);
    }
    seen
}

/// Part sizes `(r, s)` with `r ≤ s` when `g ≅ K_{r,s}`.
pub fn is_complete_bipartite(g: &Graph) -> Option<(usize, usize)> {
    if g.vertex_count() < 2 || g.connected_components().len() != 1 {
        return None;
    }
    let colors = g.two_coloring()?;
    let r = colors.iter().filter(|&&c| c).count();
    let s = colors.len() - r;
    (g.edge_count() == r * s).then_some((r.min(s), r.max(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_independence_number(g: &Graph) -> i64 {
        let n = g.vertex_count();
        assert!(n <= 20);
        (0u32..1 << n)
            .filter(|&s| g.edges().all(|(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
            .map(|s| if s.count_ones() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(
            independence_number(&Graph::edgeless(1), 128).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            independence_number(&Graph::cycle(6), 128).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            independence_number(&Graph::edgeless(0), 128).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn agrees_with_naive_count_on_assorted_graphs() {
        let mut graphs = vec![
            Graph::complete_bipartite(2, 3),
            Graph::cycle(5),
            Graph::cycle(7),
        ];
        graphs.push(Graph::cycle(6).disjoint_union(&Graph::cycle(4)));
        graphs
            .push(Graph::with_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap());
        for g in graphs {
            assert_eq!(
                independence_number(&g, 128).unwrap(),
                BigInt::from(naive_independence_number(&g))
            );
        }
    }

    #[test]
    fn vertex_cap() {
        assert_eq!(
            independence_number(&Graph::edgeless(10), 5),
            Err(LandoError::CapExceeded {
                vertices: 10,
                limit: 5
            })
        );
    }

    #[test]
    fn complete_bipartite_detection() {
        assert_eq!(
            is_complete_bipartite(&Graph::complete_bipartite(2, 3)),
            Some((2, 3))
        );
        assert_eq!(
            is_complete_bipartite(&Graph::complete_bipartite(1, 1)),
            Some((1, 1))
        );
        assert_eq!(is_complete_bipartite(&Graph::cycle(6)), None);
        assert_eq!(is_complete_bipartite(&Graph::cycle(4)), Some((2, 2)));
        assert_eq!(is_complete_bipartite(&Graph::edgeless(3)), None);
    }

    #[test]
    fn adequate_trefoil_has_empty_lando_graph() {
        let d: Diagram = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".parse().unwrap();
        assert_eq!(lando_graph(&d).vertex_count(), 0);
        assert_eq!(lando_graph(&d.mirror()).vertex_count(), 0);
    }

    #[test]
    fn negative_kink_gives_an_isolated_vertex() {
        let d: Diagram = "X(1,2,2,1)".parse().unwrap();
        let g = lando_graph(&d);
        assert_eq!(g.crossings(), &[0]);
        assert_eq!(g.graph().edge_count(), 0);
    }
}
