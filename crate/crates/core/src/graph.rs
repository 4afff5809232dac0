//! Simple undirected graphs on an ordered vertex list.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write;

use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use crate::simplicial::{VertexSet, MAX_VERTICES};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("edge endpoint {0} is not a vertex")]
    UnknownVertex(u32),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(u32),
}

/// An undirected simple graph. Vertices are indexed `0..n` and carry a
/// label (for Lando graphs: the 1-based crossing number).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<u32>,
    adjacency: Vec<Vec<usize>>,
}

/// Wire form: `{"vertices": [labels], "edges": [[label, label], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
}

impl Graph {
    /// Builds a graph from vertex-index pairs. Repeated edges collapse into one.
    pub fn new(
        labels: Vec<u32>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for &l in &labels {
            if !seen.insert(l) {
                return Err(GraphError::DuplicateLabel(l));
            }
        }
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::UnknownVertex(u as u32));
            }
            if v >= n {
                return Err(GraphError::UnknownVertex(v as u32));
            }
            if u == v {
                return Err(GraphError::SelfLoop(labels[u]));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { labels, adjacency })
    }

    /// A graph on vertices labelled `1..=n`.
    pub fn with_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Graph::new((1..=n as u32).collect(), edges)
    }

    pub fn cycle(n: usize) -> Self {
        Graph::with_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle graph")
    }

    pub fn complete_bipartite(r: usize, s: usize) -> Self {
        Graph::with_edges(r + s, (0..r).flat_map(|i| (r..r + s).map(move |j| (i, j))))
            .expect("K_{r,s}")
    }

    pub fn edgeless(n: usize) -> Self {
        Graph::with_edges(n, []).expect("edgeless graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Neighborhoods as bitmasks; only valid for graphs with at most 128 vertices.
    pub fn neighbor_masks(&self) -> Option<Vec<VertexSet>> {
        if self.vertex_count() > MAX_VERTICES {
            return None;
        }
        Some(
            self.adjacency
                .iter()
                .map(|ns| ns.iter().copied().collect())
                .collect(),
        )
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// A proper 2-coloring (`false`/`true`), with the lowest vertex of each
    /// component colored `false`; `None` if the graph has an odd cycle.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adjacency[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.are_adjacent(u, v));
        Graph::new(self.labels.clone(), edges.collect::<Vec<_>>())
            .expect("complement of a simple graph")
    }

    /// Subgraph induced on `vertices` (kept in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let index: std::collections::HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter_map(|(u, v)| Some((*index.get(&u)?, *index.get(&v)?)))
            .collect();
        Graph::new(vertices.iter().map(|&v| self.labels[v]).collect(), edges)
            .expect("induced subgraph")
    }

    /// Disjoint union; the second graph's labels are offset past the first's.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.labels.iter().copied().max().unwrap_or(0);
        let n = self.vertex_count();
        let labels = self
            .labels
            .iter()
            .copied()
            .chain(other.labels.iter().map(|l| l + offset))
            .collect();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + n, v + n)))
            .collect::<Vec<_>>();
        Graph::new(labels, edges).expect("disjoint union")
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut da: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..other.vertex_count()).map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return false;
        }
        petgraph::algo::is_isomorphic(&self.to_petgraph(), &other.to_petgraph())
    }

    fn to_petgraph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::with_capacity(self.vertex_count(), self.edge_count());
        let nodes: Vec<_> = (0..self.vertex_count()).map(|_| g.add_node(())).collect();
        for (u, v) in self.edges() {
            g.add_edge(nodes[u], nodes[v], ());
        }
        g
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edges()
                .map(|(u, v)| [self.labels[u], self.labels[v]])
                .collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph, GraphError> {
        let index: std::collections::HashMap<u32, usize> = json
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i))
            .collect();
        let mut edges = Vec::new();
        for &[a, b] in &json.edges {
            let u = *index.get(&a).ok_or(GraphError::UnknownVertex(a))?;
            let v = *index.get(&b).ok_or(GraphError::UnknownVertex(b))?;
            edges.push((u, v));
        }
        Graph::new(json.vertices.clone(), edges)
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for l in &self.labels {
            let _ = writeln!(out, "  {l};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", self.labels[u], self.labels[v]);
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_basics() {
        let g = Graph::cycle(6);
        assert_eq!(g.edge_count(), 6);
        assert!(g.is_bipartite());
        assert_eq!(g.connected_components().len(), 1);
        assert!(!Graph::cycle(5).is_bipartite());
    }

    #[test]
    fn self_loops_are_rejected() {
        assert_eq!(Graph::with_edges(2, [(1, 1)]), Err(GraphError::SelfLoop(2)));
    }

    #[test]
    fn isomorphism_ignores_labels() {
        let a = Graph::with_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::with_edges(4, [(3, 1), (1, 0), (0, 2)]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&Graph::complete_bipartite(1, 3)));
        // trailing isolated vertex
        let c = Graph::with_edges(3, [(0, 1)]).unwrap();
        let d = Graph::with_edges(3, [(1, 2)]).unwrap();
        assert!(c.is_isomorphic(&d));
    }

    #[test]
    fn json_round_trip_and_dot() {
        let g = Graph::complete_bipartite(2, 3);
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(g.to_dot("k23").contains("1 -- 3;"));
    }

    #[test]
    fn complement_of_complete_bipartite_is_two_cliques() {
        let c = Graph::complete_bipartite(2, 3).complement();
        assert_eq!(c.connected_components(), vec![vec![0, 1], vec![2, 3, 4]]);
    }
}
