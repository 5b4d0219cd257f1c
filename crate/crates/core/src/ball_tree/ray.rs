use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::TreeError;
use crate::embed::find_embedding;
use crate::rooted_graph::{CanonicalBall, Graph, GraphError, RootedGraph};

/// Glues a chain of nested balls `B_0, B_1, ..., B_k` along their interior
/// maps. The result is root-isomorphic to `B_k`.
pub fn ray_to_graph(path: &[CanonicalBall]) -> Result<RootedGraph, TreeError> {
    let Some(first) = path.first() else {
        return Err(TreeError::NotNested { index: 0 });
    };
    if first.radius() != 0 {
        return Err(TreeError::NotNested { index: 0 });
    }
    let mut graph = Graph::new(1);
    // place[v] = vertex of `graph` holding canonical vertex v of the current ball.
    let mut place = vec![0];
    for (index, pair) in path.windows(2).enumerate() {
        let (outer, inner) = (&pair[1], &pair[0]);
        let nested = outer.radius() == inner.radius() + 1
            && outer.interior().is_some_and(|i| i.code == inner.code());
        if !nested {
            return Err(TreeError::NotNested { index: index + 1 });
        }
        let map = &outer.interior().expect("checked").map;
        let mut next = vec![usize::MAX; outer.vertex_count()];
        for (v, &image) in map.iter().enumerate() {
            next[image] = place[v];
        }
        for slot in next.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = graph.add_vertex();
        }
        for (u, v) in outer.graph().edges() {
            if !graph.has_edge(next[u], next[v]) {
                graph.add_edge(next[u], next[v])?;
            }
        }
        place = next;
    }
    Ok(RootedGraph::new(graph, 0)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostDecomposition {
    /// `assignment[v]` lists the guests whose radius-`r` ball embeds with
    /// its root on host vertex `v`.
    pub assignment: Vec<Vec<usize>>,
    /// Guests assigned to no vertex.
    pub unassigned: Vec<usize>,
}

/// Assigns each guest to every host vertex that can carry the root of its
/// radius-`r` ball under a plain embedding.
pub fn decompose_by_host(
    host: &Graph,
    guests: &[RootedGraph],
    r: usize,
) -> Result<HostDecomposition, GraphError> {
    let balls: Vec<RootedGraph> = guests
        .iter()
        .map(|g| g.connected_layers().map(|_| g.ball(r)))
        .collect::<Result<_, _>>()?;
    let assignment: Vec<Vec<usize>> = (0..host.vertex_count())
        .into_par_iter()
        .map(|v| {
            balls
                .iter()
                .enumerate()
                .filter(|(_, b)| {
                    find_embedding(b, host, Some(v), false)
                        .expect("balls are connected")
                        .is_some()
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut covered = vec![false; guests.len()];
    for list in &assignment {
        for &i in list {
            covered[i] = true;
        }
    }
    let unassigned = (0..guests.len()).filter(|&i| !covered[i]).collect();
    Ok(HostDecomposition {
        assignment,
        unassigned,
    })
}
