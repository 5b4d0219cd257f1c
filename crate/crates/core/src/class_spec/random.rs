use rand::seq::IndexedRandom;
use rand::Rng;

use crate::rooted_graph::{Graph, RootedGraph};

/// A random connected graph with all degrees below `d` and between 1 and
/// `max_vertices` vertices, rooted at a random vertex.
///
/// A random tree is grown first, then up to as many random chords as there
/// are vertices are offered and kept when both ends have room.
pub fn random_degree_bounded_member<R: Rng + ?Sized>(
    d: usize,
    max_vertices: usize,
    rng: &mut R,
) -> RootedGraph {
    assert!(d >= 2, "degree bound must be at least 2");
    let target = rng.random_range(1..=max_vertices.max(1));
    let cap = d - 1;
    let mut g = Graph::new(1);
    while g.vertex_count() < target {
        let open: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| g.degree(v) < cap)
            .collect();
        let Some(&parent) = open.choose(rng) else {
            break;
        };
        let v = g.add_vertex();
        g.add_edge(parent, v).expect("fresh edge");
    }
    let n = g.vertex_count();
    if n >= 3 {
        for _ in 0..n {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && !g.has_edge(u, v) && g.degree(u) < cap && g.degree(v) < cap {
                g.add_edge(u, v).expect("checked");
            }
        }
    }
    let root = rng.random_range(0..n);
    RootedGraph::new(g, root).expect("root in range")
}
