//! The finite amalgam `H^(R)`: every ball of a tree glued onto its children
//! along the fixed interior maps, with all centres identified.

mod verify;

pub use verify::{
    nested_embedding_check, verify_universality, BallCheck, NestedReport, UniversalityReport,
};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ball_tree::{BallTree, TreeError};
use crate::embed::is_embedding;
use crate::rooted_graph::{CanonicalBall, Graph, GraphError, RootedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmalgamError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("incoherent gluing at tree node {node}: {message}")]
    Incoherent { node: usize, message: String },
    #[error("check radius {r_check} exceeds build radius {build_radius}")]
    RadiusTooLarge { r_check: usize, build_radius: usize },
}

/// The fixed strong embedding of the interior of `b` into `b`: the
/// lexicographically least root- and layer-preserving one.
pub fn choose_interior_embedding(b: &CanonicalBall) -> Option<&[usize]> {
    b.interior().map(|i| i.map.as_slice())
}

#[derive(Debug, Clone)]
pub struct AmalgamGraph {
    graph: Graph,
    root: usize,
    layer: Vec<usize>,
    /// Sorted `(tree node, canonical vertex)` pairs merged into each vertex.
    provenance: Vec<Vec<(usize, usize)>>,
    /// `copies[node][canonical vertex]` = amalgam vertex.
    copies: Vec<Vec<usize>>,
    build_radius: usize,
}

impl AmalgamGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn rooted(&self) -> RootedGraph {
        RootedGraph::new(self.graph.clone(), self.root).expect("root in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Distance from the root, shared by every merged source vertex.
    pub fn layer(&self) -> &[usize] {
        &self.layer
    }

    pub fn provenance(&self) -> &[Vec<(usize, usize)>] {
        &self.provenance
    }

    /// Where the glued copy of a tree node landed.
    pub fn copy_of(&self, node: usize) -> &[usize] {
        &self.copies[node]
    }

    pub fn build_radius(&self) -> usize {
        self.build_radius
    }

    /// A copy with one edge removed, for mutation tests.
    pub fn without_edge(&self, u: usize, v: usize) -> AmalgamGraph {
        let mut out = self.clone();
        out.graph.remove_edge(u, v);
        out
    }

    /// Sidecar JSON `{"vertex": [[node, canonical vertex], ...], ...}`.
    pub fn provenance_json(&self) -> String {
        let mut out = String::from("{\n");
        for (v, pairs) in self.provenance.iter().enumerate() {
            let list = serde_json::to_string(pairs).expect("pairs serialize");
            let sep = if v + 1 < self.provenance.len() {
                ","
            } else {
                ""
            };
            writeln!(out, "  \"{v}\": {list}{sep}").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Glues every ball of `t` onto its parent's copy. Refuses truncated trees.
pub fn synthesize(t: &BallTree) -> Result<AmalgamGraph, AmalgamError> {
    t.require_complete()?;
    let nodes = t.nodes();
    let mut offset = Vec::with_capacity(nodes.len());
    let mut total = 0;
    for node in nodes {
        offset.push(total);
        total += node.ball.vertex_count();
    }

    let mut uf = UnionFind::<usize>::new(total);
    for (id, node) in nodes.iter().enumerate() {
        let Some(parent) = node.parent else { continue };
        let map = choose_interior_embedding(&node.ball).expect("non-root nodes have interiors");
        let parent_ball = &nodes[parent].ball;
        for (v, &image) in map.iter().enumerate() {
            if parent_ball.layer()[v] != node.ball.layer()[image] {
                return Err(AmalgamError::Incoherent {
                    node: id,
                    message: format!("vertex {v} changes layer under the interior map"),
                });
            }
            uf.union(offset[parent] + v, offset[id] + image);
        }
    }

    let mut class_id: BTreeMap<usize, usize> = BTreeMap::new();
    let mut copies = Vec::with_capacity(nodes.len());
    let mut provenance: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut layer = Vec::new();
    for (id, node) in nodes.iter().enumerate() {
        let mut copy = Vec::with_capacity(node.ball.vertex_count());
        for v in 0..node.ball.vertex_count() {
            let rep = uf.find_mut(offset[id] + v);
            let next = class_id.len();
            let h = *class_id.entry(rep).or_insert(next);
            if h == provenance.len() {
                provenance.push(Vec::new());
                layer.push(node.ball.layer()[v]);
            } else if layer[h] != node.ball.layer()[v] {
                return Err(AmalgamError::Incoherent {
                    node: id,
                    message: format!("vertex {v} merged across layers"),
                });
            }
            provenance[h].push((id, v));
            copy.push(h);
        }
        copies.push(copy);
    }

    let mut adjacency = vec![Vec::new(); provenance.len()];
    for (id, node) in nodes.iter().enumerate() {
        for (u, v) in node.ball.graph().edges() {
            let (a, b) = (copies[id][u], copies[id][v]);
            if a == b {
                return Err(AmalgamError::Incoherent {
                    node: id,
                    message: format!("edge {u}-{v} collapsed to a loop"),
                });
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    let graph = Graph::from_sorted_adjacency(adjacency);

    for (id, node) in nodes.iter().enumerate() {
        if !is_embedding(node.ball.graph(), &graph, &copies[id], true) {
            return Err(AmalgamError::Incoherent {
                node: id,
                message: "glued copy is not an induced copy of the ball".into(),
            });
        }
    }
    for list in &mut provenance {
        list.sort_unstable();
    }

    Ok(AmalgamGraph {
        graph,
        root: copies[0][0],
        layer,
        provenance,
        copies,
        build_radius: t.depth(),
    })
}

/// Amalgams joined by a path through their roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedAmalgam {
    pub graph: Graph,
    pub roots: Vec<usize>,
}

pub fn connect_components(parts: &[AmalgamGraph]) -> ConnectedAmalgam {
    let mut graph = Graph::new(0);
    let mut roots = Vec::with_capacity(parts.len());
    for part in parts {
        roots.push(graph.vertex_count() + part.root());
        graph = graph.disjoint_union(part.graph());
    }
    for pair in roots.windows(2) {
        graph
            .add_edge(pair[0], pair[1])
            .expect("roots of distinct parts");
    }
    ConnectedAmalgam { graph, roots }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// `(degree, number of vertices)` in increasing degree order.
    pub histogram: Vec<(usize, usize)>,
    pub max_degree: usize,
    /// Largest degree among vertices at each distance from the root.
    pub max_degree_by_layer: Vec<usize>,
}

pub fn degree_profile(h: &AmalgamGraph) -> DegreeProfile {
    let g = h.graph();
    let mut histogram = BTreeMap::new();
    let depth = h.layer().iter().copied().max().unwrap_or(0);
    let mut by_layer = vec![0; depth + 1];
    for v in 0..g.vertex_count() {
        *histogram.entry(g.degree(v)).or_insert(0) += 1;
        let l = h.layer()[v];
        by_layer[l] = by_layer[l].max(g.degree(v));
    }
    DegreeProfile {
        histogram: histogram.into_iter().collect(),
        max_degree: g.max_degree(),
        max_degree_by_layer: by_layer,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball_tree::{build_tree, BuildLimits};
    use crate::class_spec::{ClassSpec, ListedGraph};
    use crate::rooted_graph::rooted_isomorphic;

    fn amalgam(d: usize, r: usize) -> AmalgamGraph {
        let t = build_tree(
            &ClassSpec::DegreeBounded(d),
            r,
            &BuildLimits::default(),
            None,
        );
        synthesize(&t).unwrap()
    }

    #[test]
    fn k1_list_gives_k1() {
        let spec =
            ClassSpec::explicit_list(vec![ListedGraph::Rooted(RootedGraph::single_vertex())])
                .unwrap();
        let t = build_tree(&spec, 3, &BuildLimits::default(), None);
        let h = synthesize(&t).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(degree_profile(&h).max_degree, 0);
    }

    #[test]
    fn root_degree_four() {
        let h = amalgam(4, 1);
        assert_eq!(h.root(), 0);
        assert_eq!(h.graph().degree(0), 17);
        assert_eq!(degree_profile(&h).max_degree, 17);
    }

    #[test]
    fn degree_two_is_an_edge() {
        let h = amalgam(2, 2);
        assert_eq!(h.graph().degree(h.root()), 1);
        assert_eq!(h.vertex_count(), 2);
    }

    #[test]
    fn max_degree_grows_with_radius() {
        assert!(
            degree_profile(&amalgam(4, 2)).max_degree > degree_profile(&amalgam(4, 1)).max_degree
        );
    }

    #[test]
    fn root_balls_are_stable() {
        let small = amalgam(3, 2).rooted();
        let large = amalgam(3, 3).rooted();
        for r in 0..=2 {
            assert!(rooted_isomorphic(&small.ball(r), &large.ball(r)).unwrap());
        }
    }

    #[test]
    fn provenance_layers_agree() {
        let h = amalgam(3, 3);
        let t = build_tree(
            &ClassSpec::DegreeBounded(3),
            3,
            &BuildLimits::default(),
            None,
        );
        let dist = h.graph().distances_from(h.root());
        for (v, pairs) in h.provenance().iter().enumerate() {
            for &(node, c) in pairs {
                assert_eq!(t.node(node).ball.layer()[c], h.layer()[v]);
            }
            assert_eq!(dist[v], Some(h.layer()[v]));
        }
        assert!(h.provenance_json().starts_with("{\n  \"0\": [[0,0],"));
    }

    #[test]
    fn truncated_trees_are_refused() {
        let limits = BuildLimits {
            max_nodes: Some(3),
            ..BuildLimits::default()
        };
        let t = build_tree(&ClassSpec::DegreeBounded(3), 2, &limits, None);
        assert!(matches!(
            synthesize(&t),
            Err(AmalgamError::Tree(TreeError::Truncated { .. }))
        ));
    }

    #[test]
    fn connecting_parts() {
        let k1 = amalgam(2, 0);
        let joined = connect_components(std::slice::from_ref(&k1));
        assert_eq!(joined.graph, *k1.graph());
        let pair = connect_components(&[k1.clone(), k1]);
        assert_eq!(pair.graph, Graph::path(2));

        let parts: Vec<AmalgamGraph> = (2..=4).map(|d| amalgam(d, 1)).collect();
        let joined = connect_components(&parts);
        for (i, part) in parts.iter().enumerate() {
            let extra = if i == 1 { 2 } else { 1 };
            assert_eq!(
                joined.graph.degree(joined.roots[i]),
                part.graph().degree(part.root()) + extra
            );
        }
    }

    #[test]
    fn interior_embedding_of_a_path_ball() {
        let p5 = RootedGraph::new(Graph::path(5), 2).unwrap();
        let b = CanonicalBall::of_ball(&p5, 2).unwrap();
        let map = choose_interior_embedding(&b).unwrap();
        assert_eq!(map[0], 0);
        let mut image = map.to_vec();
        image.sort_unstable();
        assert_eq!(image, vec![0, 1, 2]);
        assert!(choose_interior_embedding(&CanonicalBall::origin()).is_none());
    }
}
