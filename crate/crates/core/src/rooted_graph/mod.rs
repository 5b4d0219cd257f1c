//! Finite simple graphs, rooted graphs and balls around a root.
//!
//! Vertices are `0..vertex_count`. Adjacency lists are kept sorted and free of
//! duplicates, so membership tests are binary searches and two graphs with the
//! same labelled edge set compare equal.

mod ball;
mod canon;
mod distance;
mod format;

pub use ball::{CanonicalBall, Interior};
pub(crate) use canon::refined_colors;
pub use canon::{canonicalize, decode_code, rooted_isomorphic, Canonical};
pub use distance::{rooted_distance, AgreementRadius, DistanceReport};
pub use format::{parse_graph, render_dot, render_graph, ParseError, ParseErrorKind};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    IndexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is disconnected from root")]
    DisconnectedFromRoot(usize),
    #[error("trivial cap: r_max must be positive")]
    TrivialCap,
    #[error("rooted graph has no vertices")]
    Empty,
    #[error("ball radius {radius} is smaller than root eccentricity {eccentricity}")]
    RadiusTooSmall { radius: usize, eccentricity: usize },
    #[error("malformed canonical code: {0}")]
    MalformedCode(&'static str),
}

/// A finite simple undirected graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Path on `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    /// Star `K_{1,k}` with the center at vertex 0.
    pub fn star(k: usize) -> Self {
        Graph::from_edges(k + 1, (1..=k).map(|v| (0, v))).expect("star edges are valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges).expect("bipartite edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::IndexOutOfRange {
                    vertex: x,
                    vertex_count: n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    /// Removes the edge `u-v`, returning whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        let pos = self.adj[u].binary_search(&v).unwrap();
        self.adj[u].remove(pos);
        let pos = self.adj[v].binary_search(&u).unwrap();
        self.adj[v].remove(pos);
        true
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut row: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        Graph { adj }
    }

    /// Applies the relabelling `old -> perm[old]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.adj.len());
        let mut adj = vec![Vec::new(); self.adj.len()];
        for (u, ns) in self.adj.iter().enumerate() {
            let mut row: Vec<usize> = ns.iter().map(|&w| perm[w]).collect();
            row.sort_unstable();
            adj[perm[u]] = row;
        }
        Graph { adj }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.adj.len();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&w| w + shift).collect()),
        );
        Graph { adj }
    }

    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Graph {
        debug_assert!(adj.iter().all(|row| row.windows(2).all(|w| w[0] < w[1])));
        Graph { adj }
    }
}

/// A graph with a designated root vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootedGraph {
    graph: Graph,
    root: usize,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self, GraphError> {
        if root >= graph.vertex_count() {
            return Err(if graph.vertex_count() == 0 {
                GraphError::Empty
            } else {
                GraphError::IndexOutOfRange {
                    vertex: root,
                    vertex_count: graph.vertex_count(),
                }
            });
        }
        Ok(RootedGraph { graph, root })
    }

    pub fn single_vertex() -> Self {
        RootedGraph {
            graph: Graph::new(1),
            root: 0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn into_parts(self) -> (Graph, usize) {
        (self.graph, self.root)
    }

    /// Distance of every vertex from the root.
    pub fn layers(&self) -> Vec<Option<usize>> {
        self.graph.distances_from(self.root)
    }

    /// Checks that every vertex is reachable from the root and returns the
    /// layers.
    pub fn connected_layers(&self) -> Result<Vec<usize>, GraphError> {
        self.layers()
            .into_iter()
            .enumerate()
            .map(|(v, d)| d.ok_or(GraphError::DisconnectedFromRoot(v)))
            .collect()
    }

    /// Largest distance from the root, over reachable vertices.
    pub fn eccentricity(&self) -> usize {
        self.layers().into_iter().flatten().max().unwrap_or(0)
    }

    /// The ball of radius `r` around the root.
    pub fn ball(&self, r: usize) -> RootedGraph {
        self.ball_with_map(r).0
    }

    /// The ball of radius `r` together with the original id of each ball
    /// vertex. Ball vertices are numbered in BFS order, so the root is 0 and
    /// layers are nondecreasing.
    pub fn ball_with_map(&self, r: usize) -> (RootedGraph, Vec<usize>) {
        let mut order = vec![self.root];
        let mut dist = vec![usize::MAX; self.graph.vertex_count()];
        dist[self.root] = 0;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            if dist[u] == r {
                continue;
            }
            for &w in self.graph.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    order.push(w);
                }
            }
        }
        let ball = self.graph.induced_subgraph(&order);
        (
            RootedGraph {
                graph: ball,
                root: 0,
            },
            order,
        )
    }

    pub fn relabel(&self, perm: &[usize]) -> RootedGraph {
        RootedGraph {
            graph: self.graph.relabel(perm),
            root: perm[self.root],
        }
    }
}
