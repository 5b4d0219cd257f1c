//! Slow, independent reference implementations used by the integration
//! tests. Nothing here calls the canonical form or the embedding engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use ballgraph::{Graph, RootedGraph};
use itertools::Itertools;
use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Edge bitmask of `g` after moving vertex `order[k]` to position `k`.
fn relabelled_mask(g: &Graph, order: &[usize]) -> u64 {
    let n = order.len();
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let mut mask = 0u64;
    for (u, v) in g.edges() {
        let (a, b) = if pos[u] < pos[v] {
            (pos[u], pos[v])
        } else {
            (pos[v], pos[u])
        };
        mask |= 1 << (a * n + b);
    }
    mask
}

/// Least edge mask over all orderings that put the root first. Feasible
/// up to 8 vertices.
pub fn brute_rooted_form(g: &RootedGraph) -> (usize, u64) {
    let n = g.vertex_count();
    assert!(n <= 8, "brute force is limited to 8 vertices");
    let root = g.root();
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let best = others
        .iter()
        .copied()
        .permutations(others.len())
        .map(|p| {
            let mut order = Vec::with_capacity(n);
            order.push(root);
            order.extend(p);
            relabelled_mask(g.graph(), &order)
        })
        .min()
        .unwrap_or(0);
    (n, best)
}

/// Least rooted form over every choice of root.
pub fn brute_unrooted_form(g: &Graph) -> (usize, u64) {
    (0..g.vertex_count())
        .map(|r| brute_rooted_form(&RootedGraph::new(g.clone(), r).unwrap()))
        .min()
        .unwrap_or((0, 0))
}

/// `g` plus one vertex joined to each vertex of `nbrs`.
pub fn with_new_vertex(g: &Graph, nbrs: &[usize]) -> Graph {
    let mut h = g.clone();
    let v = h.add_vertex();
    for &u in nbrs {
        h.add_edge(u, v).unwrap();
    }
    h
}

/// Every connected rooted graph on up to `n_max` vertices, as labelled
/// candidates grouped by vertex count. Each size is grown from brute-force
/// class representatives of the size below, so every class appears, most
/// of them several times under different labellings.
pub fn rooted_candidates(n_max: usize) -> Vec<Vec<RootedGraph>> {
    let mut out = vec![Vec::new(), vec![RootedGraph::single_vertex()]];
    let mut reps = vec![RootedGraph::single_vertex()];
    for n in 2..=n_max {
        let mut candidates = Vec::new();
        let mut classes = BTreeMap::new();
        for rep in &reps {
            for subset in (0..n - 1).powerset().filter(|s| !s.is_empty()) {
                let g =
                    RootedGraph::new(with_new_vertex(rep.graph(), &subset), rep.root()).unwrap();
                classes
                    .entry(brute_rooted_form(&g))
                    .or_insert_with(|| g.clone());
                candidates.push(g);
            }
        }
        reps = classes.into_values().collect();
        out.push(candidates);
    }
    out
}

/// A uniformly random relabelling.
pub fn shuffle<R: Rng>(g: &RootedGraph, rng: &mut R) -> RootedGraph {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

fn to_petgraph(g: &RootedGraph) -> UnGraph<bool, ()> {
    let mut p = UnGraph::with_capacity(g.vertex_count(), g.graph().edge_count());
    let ids: Vec<_> = (0..g.vertex_count())
        .map(|v| p.add_node(v == g.root()))
        .collect();
    for (u, v) in g.graph().edges() {
        p.add_edge(ids[u], ids[v], ());
    }
    p
}

fn root_distances(g: &RootedGraph) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::from([g.root()]);
    dist[g.root()] = 0;
    while let Some(u) = queue.pop_front() {
        for &w in g.graph().neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Cheap invariant used to bucket graphs before the VF2 test.
type Invariant = (usize, usize, usize, Vec<usize>, Vec<(usize, usize)>);

fn invariant(g: &RootedGraph) -> Invariant {
    let degrees: Vec<usize> = (0..g.vertex_count())
        .map(|v| g.graph().degree(v))
        .sorted()
        .collect();
    let dist = root_distances(g);
    let layered: Vec<(usize, usize)> = (0..g.vertex_count())
        .map(|v| (dist[v], g.graph().degree(v)))
        .sorted()
        .collect();
    (
        g.vertex_count(),
        g.graph().edge_count(),
        g.graph().degree(g.root()),
        degrees,
        layered,
    )
}

/// Rooted isomorphism classes, deduplicated with VF2.
#[derive(Default)]
struct ClassSet {
    buckets: BTreeMap<Invariant, Vec<UnGraph<bool, ()>>>,
    len: usize,
}

impl ClassSet {
    fn insert(&mut self, g: &RootedGraph) -> bool {
        let p = to_petgraph(g);
        let bucket = self.buckets.entry(invariant(g)).or_default();
        let seen = bucket
            .iter()
            .any(|q| is_isomorphic_matching(q, &p, |a, b| a == b, |_, _| true));
        if !seen {
            bucket.push(p);
            self.len += 1;
        }
        !seen
    }
}

/// For each radius `0..=r_max`, the number of rooted isomorphism classes of
/// connected graphs with every degree below `d`, root eccentricity at most
/// that radius, and at most `n_max` vertices.
///
/// Graphs are grown one vertex at a time. Deleting a vertex farthest from
/// the root keeps the rest connected at unchanged distances, so the growth
/// reaches every class.
pub fn ball_census(d: usize, r_max: usize, n_max: usize) -> Vec<usize> {
    let mut counts = vec![0; r_max + 1];
    let mut seen = ClassSet::default();
    let origin = RootedGraph::single_vertex();
    seen.insert(&origin);
    let mut frontier = vec![origin];
    while let Some(g) = frontier.pop() {
        let ecc = root_distances(&g).into_iter().max().unwrap();
        for c in counts.iter_mut().skip(ecc) {
            *c += 1;
        }
        if g.vertex_count() == n_max {
            continue;
        }
        let open: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| g.graph().degree(v) + 1 < d)
            .collect();
        for subset in open.into_iter().powerset() {
            if subset.is_empty() || subset.len() + 1 > d {
                continue;
            }
            let h = RootedGraph::new(with_new_vertex(g.graph(), &subset), g.root()).unwrap();
            let ecc = root_distances(&h).into_iter().max().unwrap();
            if ecc <= r_max && seen.insert(&h) {
                frontier.push(h);
            }
        }
    }
    counts
}

/// Counts injective maps of `guest` into `host` that preserve edges (and
/// non-edges when `strong`), by trying every ordered choice of images.
pub fn brute_count(guest: &RootedGraph, host: &Graph, pin: Option<usize>, strong: bool) -> u128 {
    let n = guest.vertex_count();
    let g = guest.graph();
    let mut count = 0;
    for images in (0..host.vertex_count()).permutations(n) {
        if pin.is_some_and(|p| images[guest.root()] != p) {
            continue;
        }
        let ok = (0..n).tuple_combinations().all(|(a, b)| {
            let in_guest = g.has_edge(a, b);
            let in_host = host.has_edge(images[a], images[b]);
            if strong {
                in_guest == in_host
            } else {
                !in_guest || in_host
            }
        });
        count += ok as u128;
    }
    count
}

/// A random connected graph on exactly `n` vertices: a random tree plus
/// each remaining pair with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.random_range(0..v);
        g.add_edge(u, v).unwrap();
    }
    for (u, v) in (0..n).tuple_combinations() {
        if !g.has_edge(u, v) && rng.random_bool(p) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// A random connected graph on exactly `n` vertices with every degree at
/// most `cap`: a random tree of bounded degree plus random chords.
pub fn random_bounded<R: Rng>(n: usize, cap: usize, rng: &mut R) -> Graph {
    assert!(cap >= 2 || n <= 2);
    let mut g = Graph::new(1);
    while g.vertex_count() < n {
        let open: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| g.degree(v) < cap)
            .collect();
        let u = open[rng.random_range(0..open.len())];
        let v = g.add_vertex();
        g.add_edge(u, v).unwrap();
    }
    for _ in 0..n {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !g.has_edge(u, v) && g.degree(u) < cap && g.degree(v) < cap {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Block-respecting permutations of `[2^levels]` as plain vectors, their
/// inverses computed by search, and the number of `{s, s^-1}` pairs.
pub fn inverse_pair_count(levels: usize) -> usize {
    let n = 1usize << levels;
    let mut blocks: Vec<Vec<usize>> = vec![vec![1, 2]];
    for k in 1..levels {
        blocks.push(((1 << k) + 1..=(1 << (k + 1))).collect());
    }
    let perms: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|parts| parts.concat())
        .collect();
    assert!(perms.iter().all(|s| s.len() == n));
    let mut pairs = BTreeSet::new();
    for s in &perms {
        let inv: Vec<usize> = (1..=n)
            .map(|m| s.iter().position(|&x| x == m).unwrap() + 1)
            .collect();
        let key = if *s <= inv {
            (s.clone(), inv)
        } else {
            (inv, s.clone())
        };
        pairs.insert(key);
    }
    pairs.len()
}
