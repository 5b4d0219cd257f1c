//! One-layer extensions of a ball.
//!
//! Each new vertex attaches to a nonempty set of frontier vertices (a bit
//! mask over the frontier). New vertices are generated with nondecreasing
//! masks, then every admissible set of edges among the new vertices is
//! tried. Duplicates are removed by canonical code.

use std::collections::BTreeMap;

use super::{EnumLimits, Extensions};
use crate::rooted_graph::{canonicalize, CanonicalBall, Graph, RootedGraph};

/// Frontiers wider than this are not enumerated without a degree cap.
const MAX_UNCAPPED_FRONTIER: usize = 20;

pub(crate) fn extend_by_layer(
    ball: &CanonicalBall,
    degree_cap: Option<usize>,
    vertex_cap: Option<usize>,
    limits: &EnumLimits,
) -> Extensions {
    let base = ball.graph();
    let frontier: Vec<usize> = ball.frontier().collect();
    let slack: Vec<usize> = frontier
        .iter()
        .map(|&v| degree_cap.map_or(usize::MAX, |c| c.saturating_sub(base.degree(v))))
        .collect();

    let mut truncated = false;
    let by_degree = degree_cap.map(|_| slack.iter().fold(0usize, |a, &s| a.saturating_add(s)));
    let by_size = vertex_cap.map(|c| c.saturating_sub(base.vertex_count()));
    let natural = match (by_degree, by_size) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let max_new = match natural {
        Some(k) if k <= limits.max_new_vertices => k,
        _ => {
            truncated = true;
            limits.max_new_vertices
        }
    };

    let masks = if frontier.len() > 63
        || (degree_cap.is_none() && frontier.len() > MAX_UNCAPPED_FRONTIER)
    {
        truncated = true;
        Vec::new()
    } else {
        let widest = degree_cap.unwrap_or(frontier.len()).min(frontier.len());
        attachment_masks(&slack, widest)
    };

    let mut search = Search {
        base,
        radius: ball.radius(),
        frontier: &frontier,
        masks: &masks,
        slack,
        degree_cap,
        max_new,
        limits,
        candidates: 0,
        found: BTreeMap::new(),
        stopped: false,
    };
    search.grow(0, &mut Vec::new());
    truncated |= search.stopped;

    let radius = ball.radius() + 1;
    let balls = search
        .found
        .into_iter()
        .map(|(code, graph)| CanonicalBall::from_canonical_parts(radius, graph, code))
        .collect();
    Extensions { balls, truncated }
}

/// Nonempty subsets of frontier positions with positive slack, at most
/// `widest` elements each, in increasing numeric order.
fn attachment_masks(slack: &[usize], widest: usize) -> Vec<u64> {
    let open: Vec<usize> = (0..slack.len()).filter(|&i| slack[i] > 0).collect();
    let mut masks = Vec::new();
    let mut stack = vec![(0usize, 0u64, 0usize)];
    while let Some((next, mask, size)) = stack.pop() {
        if size > 0 {
            masks.push(mask);
        }
        if size == widest {
            continue;
        }
        for (k, &i) in open.iter().enumerate().skip(next) {
            stack.push((k + 1, mask | (1 << i), size + 1));
        }
    }
    masks.sort_unstable();
    masks
}

struct Search<'a> {
    base: &'a Graph,
    radius: usize,
    frontier: &'a [usize],
    masks: &'a [u64],
    slack: Vec<usize>,
    degree_cap: Option<usize>,
    max_new: usize,
    limits: &'a EnumLimits,
    candidates: u64,
    found: BTreeMap<Vec<u8>, Graph>,
    stopped: bool,
}

impl Search<'_> {
    fn grow(&mut self, start: usize, chosen: &mut Vec<u64>) {
        if self.stopped {
            return;
        }
        self.emit(chosen);
        if chosen.len() == self.max_new {
            return;
        }
        for idx in start..self.masks.len() {
            let mask = self.masks[idx];
            if bits(mask).any(|i| self.slack[i] == 0) {
                continue;
            }
            bits(mask).for_each(|i| self.slack[i] -= 1);
            chosen.push(mask);
            self.grow(idx, chosen);
            chosen.pop();
            bits(mask).for_each(|i| self.slack[i] += 1);
            if self.stopped {
                return;
            }
        }
    }

    fn emit(&mut self, chosen: &[u64]) {
        let mut graph = self.base.clone();
        let first = graph.vertex_count();
        for &mask in chosen {
            let v = graph.add_vertex();
            for i in bits(mask) {
                graph.add_edge(self.frontier[i], v).expect("fresh edge");
            }
        }
        let k = chosen.len();
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .collect();
        let mut room: Vec<usize> = chosen
            .iter()
            .map(|m| {
                self.degree_cap
                    .map_or(usize::MAX, |c| c - m.count_ones() as usize)
            })
            .collect();
        self.link(0, &pairs, &mut room, first, &mut graph);
    }

    fn link(
        &mut self,
        p: usize,
        pairs: &[(usize, usize)],
        room: &mut [usize],
        first: usize,
        graph: &mut Graph,
    ) {
        if self.stopped {
            return;
        }
        let Some(&(a, b)) = pairs.get(p) else {
            self.record(graph);
            return;
        };
        self.link(p + 1, pairs, room, first, graph);
        if room[a] > 0 && room[b] > 0 {
            room[a] -= 1;
            room[b] -= 1;
            graph.add_edge(first + a, first + b).expect("fresh edge");
            self.link(p + 1, pairs, room, first, graph);
            graph.remove_edge(first + a, first + b);
            room[a] += 1;
            room[b] += 1;
        }
    }

    fn record(&mut self, graph: &Graph) {
        self.candidates += 1;
        if self.candidates > self.limits.max_candidates {
            self.stopped = true;
            return;
        }
        let rooted = RootedGraph::new(graph.clone(), 0).expect("root 0 exists");
        let canon = canonicalize(&rooted).expect("extensions stay connected");
        if self.found.contains_key(&canon.code) {
            return;
        }
        if self.found.len() >= self.limits.max_outputs {
            self.stopped = true;
            return;
        }
        debug_assert!(rooted.eccentricity() <= self.radius + 1);
        let relabelled = graph.relabel(&canon.relabel);
        self.found.insert(canon.code, relabelled);
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}
