//! Rooted (induced) subgraph search and exact embedding counts.
//!
//! Guest vertices are matched in BFS order from the root, picking within each
//! layer the vertex with the most already-ordered neighbors first. Host
//! candidates for a vertex are drawn from the neighborhood of the image of
//! one of its matched neighbors (the one of least host degree), so every
//! partial map stays connected.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rooted_graph::{Graph, GraphError, RootedGraph};

/// An injective guest -> host map found by the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    /// `map[guest vertex] = host vertex`.
    pub map: Vec<usize>,
    /// Non-adjacency is preserved as well.
    pub strong: bool,
    /// The guest root was pinned to a designated host vertex.
    pub root_pinned: bool,
}

/// First embedding of `guest` into `host` in search order. With `pin`, the
/// guest root must map to that host vertex.
pub fn find_embedding(
    guest: &RootedGraph,
    host: &Graph,
    pin: Option<usize>,
    strong: bool,
) -> Result<Option<EmbeddingWitness>, GraphError> {
    let mut matcher = Matcher::new(guest, host, strong)?;
    let mut found = None;
    let _ = matcher.run(pin, &mut |map| {
        found = Some(map.to_vec());
        ControlFlow::Break(())
    });
    Ok(found.map(|map| EmbeddingWitness {
        map,
        strong,
        root_pinned: pin.is_some(),
    }))
}

/// Number of distinct embeddings (raw maps, no symmetry reduction).
pub fn count_embeddings(
    guest: &RootedGraph,
    host: &Graph,
    pin: Option<usize>,
    strong: bool,
) -> Result<BigUint, GraphError> {
    let template = Matcher::new(guest, host, strong)?;
    let roots: Vec<usize> = match pin {
        Some(h) => vec![h],
        None => (0..host.vertex_count()).collect(),
    };
    // Branches on the image of the root are independent.
    let count: u128 = roots
        .par_iter()
        .map(|&h| {
            let mut matcher = template.clone();
            let mut count: u128 = 0;
            let _ = matcher.run(Some(h), &mut |_| {
                count += 1;
                ControlFlow::Continue(())
            });
            count
        })
        .sum();
    Ok(BigUint::from(count))
}

/// Checks that `map` is an injective (strong) embedding of `guest` into
/// `host`.
pub fn is_embedding(guest: &Graph, host: &Graph, map: &[usize], strong: bool) -> bool {
    if map.len() != guest.vertex_count() || map.iter().any(|&h| h >= host.vertex_count()) {
        return false;
    }
    let mut images = map.to_vec();
    images.sort_unstable();
    if images.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    for u in 0..guest.vertex_count() {
        for v in u + 1..guest.vertex_count() {
            let guest_edge = guest.has_edge(u, v);
            let host_edge = host.has_edge(map[u], map[v]);
            if (guest_edge && !host_edge) || (strong && !guest_edge && host_edge) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone)]
struct Matcher<'a> {
    guest: &'a Graph,
    host: &'a Graph,
    strong: bool,
    order: Vec<usize>,
    /// Earlier-ordered neighbors of each guest vertex.
    back: Vec<Vec<usize>>,
    /// Earlier-ordered non-neighbors of each guest vertex.
    back_non: Vec<Vec<usize>>,
    map: Vec<usize>,
    images: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(guest: &'a RootedGraph, host: &'a Graph, strong: bool) -> Result<Self, GraphError> {
        let layers = guest.connected_layers()?;
        let g = guest.graph();
        let n = g.vertex_count();
        let depth = layers.iter().copied().max().unwrap_or(0);

        let mut order = vec![guest.root()];
        let mut placed = vec![false; n];
        placed[guest.root()] = true;
        for layer in 1..=depth {
            let mut pending: Vec<usize> = (0..n).filter(|&v| layers[v] == layer).collect();
            while !pending.is_empty() {
                let (best, _) = pending
                    .iter()
                    .enumerate()
                    .max_by_key(|&(_, &v)| {
                        let anchored = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
                        (anchored, g.degree(v), std::cmp::Reverse(v))
                    })
                    .unwrap();
                let v = pending.swap_remove(best);
                placed[v] = true;
                order.push(v);
            }
        }

        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut back = vec![Vec::new(); n];
        let mut back_non = vec![Vec::new(); n];
        for &u in &order {
            for &w in &order[..position[u]] {
                if g.has_edge(u, w) {
                    back[u].push(w);
                } else {
                    back_non[u].push(w);
                }
            }
        }
        Ok(Matcher {
            guest: g,
            host,
            strong,
            order,
            back,
            back_non,
            map: vec![usize::MAX; n],
            images: Vec::with_capacity(n),
        })
    }

    fn run(
        &mut self,
        pin: Option<usize>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.guest.vertex_count() > self.host.vertex_count() {
            return ControlFlow::Continue(());
        }
        match pin {
            Some(h) if h >= self.host.vertex_count() => ControlFlow::Continue(()),
            Some(h) => self.try_assign(0, h, visit),
            None => {
                for h in 0..self.host.vertex_count() {
                    self.try_assign(0, h, visit)?;
                }
                ControlFlow::Continue(())
            }
        }
    }

    fn extend(
        &mut self,
        k: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(&u) = self.order.get(k) else {
            return visit(&self.map);
        };
        let host = self.host;
        let anchor = self.back[u]
            .iter()
            .map(|&w| self.map[w])
            .min_by_key(|&h| host.degree(h))
            .expect("non-root vertices have an earlier neighbor");
        for &c in host.neighbors(anchor) {
            self.try_assign(k, c, visit)?;
        }
        ControlFlow::Continue(())
    }

    fn try_assign(
        &mut self,
        k: usize,
        c: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let u = self.order[k];
        let host = self.host;
        if host.degree(c) < self.guest.degree(u) || self.images.contains(&c) {
            return ControlFlow::Continue(());
        }
        if !self.back[u].iter().all(|&w| host.has_edge(c, self.map[w])) {
            return ControlFlow::Continue(());
        }
        if self.strong
            && self.back_non[u]
                .iter()
                .any(|&w| host.has_edge(c, self.map[w]))
        {
            return ControlFlow::Continue(());
        }
        self.map[u] = c;
        self.images.push(c);
        let flow = self.extend(k + 1, visit);
        self.images.pop();
        self.map[u] = usize::MAX;
        flow
    }
}
