use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use super::{canonicalize, decode_code, refined_colors, Graph, GraphError, RootedGraph};

/// The radius-`(r-1)` interior of a ball and the fixed strong embedding of it
/// into the ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interior {
    pub code: Vec<u8>,
    /// `map[interior canonical id] = ball canonical id`.
    pub map: Vec<usize>,
}

/// A ball `B(v, r)` up to root-preserving isomorphism, tagged with its radius.
///
/// The graph is stored in canonical labelling: the root is vertex 0 and
/// vertices are sorted by layer. Identity is the pair `(radius, code)`, so a
/// finite graph reinterpreted at a larger radius is a different ball.
#[derive(Debug, Clone)]
pub struct CanonicalBall {
    radius: usize,
    graph: Graph,
    code: Vec<u8>,
    layer: Vec<usize>,
    interior: Option<Interior>,
}

impl PartialEq for CanonicalBall {
    fn eq(&self, other: &Self) -> bool {
        self.radius == other.radius && self.code == other.code
    }
}

impl Eq for CanonicalBall {}

impl Hash for CanonicalBall {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.radius.hash(state);
        self.code.hash(state);
    }
}

impl PartialOrd for CanonicalBall {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalBall {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.radius, &self.code).cmp(&(other.radius, &other.code))
    }
}

impl CanonicalBall {
    /// The one-vertex ball `B_0`.
    pub fn origin() -> Self {
        CanonicalBall::from_rooted(&RootedGraph::single_vertex(), 0).expect("K1 is a ball")
    }

    /// Canonical form of `g` read as a ball of the given radius. Every vertex
    /// must be within `radius` of the root.
    pub fn from_rooted(g: &RootedGraph, radius: usize) -> Result<Self, GraphError> {
        let layers = g.connected_layers()?;
        let eccentricity = layers.iter().copied().max().unwrap_or(0);
        if eccentricity > radius {
            return Err(GraphError::RadiusTooSmall {
                radius,
                eccentricity,
            });
        }
        let canon = canonicalize(g)?;
        let graph = g.graph().relabel(&canon.relabel);
        Ok(CanonicalBall::from_canonical_parts(
            radius, graph, canon.code,
        ))
    }

    /// Canonical form of `B(g, radius)`.
    pub fn of_ball(g: &RootedGraph, radius: usize) -> Result<Self, GraphError> {
        g.connected_layers()?;
        CanonicalBall::from_rooted(&g.ball(radius), radius)
    }

    /// Rebuilds a ball from its code, checking that the code is canonical.
    pub fn from_code(radius: usize, code: &[u8]) -> Result<Self, GraphError> {
        let graph = decode_code(code)?;
        let rooted = RootedGraph::new(graph, 0)?;
        let ball = CanonicalBall::from_rooted(&rooted, radius)?;
        if ball.code != code {
            return Err(GraphError::MalformedCode("code is not canonical"));
        }
        Ok(ball)
    }

    /// `graph` must already be in canonical labelling with code `code`.
    pub(crate) fn from_canonical_parts(radius: usize, graph: Graph, code: Vec<u8>) -> Self {
        let layer: Vec<usize> = graph
            .distances_from(0)
            .into_iter()
            .map(|d| d.expect("canonical balls are connected"))
            .collect();
        debug_assert!(layer.windows(2).all(|w| w[0] <= w[1]));
        let interior = (radius > 0).then(|| compute_interior(&graph, &layer, radius));
        CanonicalBall {
            radius,
            graph,
            code,
            layer,
            interior,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Distance from the root of each canonical vertex.
    pub fn layer(&self) -> &[usize] {
        &self.layer
    }

    pub fn interior(&self) -> Option<&Interior> {
        self.interior.as_ref()
    }

    /// Number of vertices with layer below the radius.
    pub fn interior_size(&self) -> usize {
        self.layer.iter().filter(|&&l| l < self.radius).count()
    }

    /// Vertices on the outermost layer.
    pub fn frontier(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.layer.len()).filter(move |&v| self.layer[v] == self.radius)
    }

    pub fn rooted(&self) -> RootedGraph {
        RootedGraph::new(self.graph.clone(), 0).expect("root 0 exists")
    }

    /// The interior ball itself, rebuilt from the stored code.
    pub fn interior_ball(&self) -> Option<CanonicalBall> {
        let interior = self.interior.as_ref()?;
        let graph = decode_code(&interior.code).expect("stored interior code is valid");
        Some(CanonicalBall::from_canonical_parts(
            self.radius - 1,
            graph,
            interior.code.clone(),
        ))
    }
}

fn compute_interior(graph: &Graph, layer: &[usize], radius: usize) -> Interior {
    let m = layer.iter().filter(|&&l| l < radius).count();
    let positions: Vec<usize> = (0..m).collect();
    let target = RootedGraph::new(graph.induced_subgraph(&positions), 0).expect("root kept");
    let canon = canonicalize(&target).expect("interior of a ball is connected");
    let interior_graph = target.graph().relabel(&canon.relabel);
    let interior = RootedGraph::new(interior_graph, 0).expect("root kept");
    let map = lex_least_isomorphism(&interior, &target)
        .expect("the interior is isomorphic to the inner layers");
    Interior {
        code: canon.code,
        map,
    }
}

/// Lexicographically least root-preserving isomorphism `from -> to`, as the
/// image sequence of `from`'s vertices. Candidates are restricted to equal
/// refined colors, which are canonical and therefore comparable across the
/// two graphs.
pub(crate) fn lex_least_isomorphism(from: &RootedGraph, to: &RootedGraph) -> Option<Vec<usize>> {
    let n = from.vertex_count();
    if n != to.vertex_count() || from.graph().edge_count() != to.graph().edge_count() {
        return None;
    }
    let from_colors = refined_colors(from).ok()?;
    let to_colors = refined_colors(to).ok()?;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[from.root()] = to.root();
    used[to.root()] = true;
    if from_colors[from.root()] != to_colors[to.root()] {
        return None;
    }
    let order: Vec<usize> = (0..n).filter(|&v| v != from.root()).collect();

    #[allow(clippy::too_many_arguments)]
    fn extend(
        k: usize,
        order: &[usize],
        from: &Graph,
        to: &Graph,
        from_colors: &[u32],
        to_colors: &[u32],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&u) = order.get(k) else {
            return true;
        };
        for c in 0..to.vertex_count() {
            if used[c] || to_colors[c] != from_colors[u] {
                continue;
            }
            let consistent = (0..from.vertex_count())
                .filter(|&w| map[w] != usize::MAX)
                .all(|w| from.has_edge(u, w) == to.has_edge(c, map[w]));
            if !consistent {
                continue;
            }
            map[u] = c;
            used[c] = true;
            if extend(k + 1, order, from, to, from_colors, to_colors, map, used) {
                return true;
            }
            map[u] = usize::MAX;
            used[c] = false;
        }
        false
    }

    extend(
        0,
        &order,
        from.graph(),
        to.graph(),
        &from_colors,
        &to_colors,
        &mut map,
        &mut used,
    )
    .then_some(map)
}
