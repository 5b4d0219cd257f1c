//! Graph classes described at the level of balls.
//!
//! A [`ClassSpec`] answers two questions about a canonical ball `b` of radius
//! `r`: is `b` a ball of some member of the class, and which radius-`(r+1)`
//! balls have `b` as their interior. The second question defines the
//! children of `b` in the ball tree.

mod enumerate;
mod random;
mod syntax;

pub use random::random_degree_bounded_member;
pub use syntax::{parse_spec, SpecSyntaxError};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rooted_graph::{CanonicalBall, Graph, GraphError, RootedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("degree bound must be at least 2, got {0}")]
    DegreeBelowTwo(usize),
    #[error("growth constant a must be positive")]
    ZeroGrowthConstant,
    #[error("listed graph {index} is not connected")]
    DisconnectedListEntry { index: usize },
    #[error("a union needs at least one member")]
    EmptyUnion,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A member of an explicit list: either a fixed rooted graph or a graph
/// rooted at each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListedGraph {
    Rooted(RootedGraph),
    Unrooted(Graph),
}

impl ListedGraph {
    fn rootings(&self) -> Vec<RootedGraph> {
        match self {
            ListedGraph::Rooted(g) => vec![g.clone()],
            ListedGraph::Unrooted(g) => (0..g.vertex_count())
                .map(|v| RootedGraph::new(g.clone(), v).expect("vertex in range"))
                .collect(),
        }
    }

    fn graph(&self) -> &Graph {
        match self {
            ListedGraph::Rooted(g) => g.graph(),
            ListedGraph::Unrooted(g) => g,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSpec {
    /// Connected graphs with every degree strictly below `d`.
    DegreeBounded(usize),
    /// Rooted graphs with `|B(v, r)| <= a * r^b` for all `r >= 1`.
    GrowthBounded {
        a: u64,
        b: u32,
    },
    ExplicitList(Vec<ListedGraph>),
    Union(Vec<ClassSpec>),
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::DegreeBounded(d) => write!(f, "degree<{d}"),
            ClassSpec::GrowthBounded { a, b } => write!(f, "growth:a={a},b={b}"),
            ClassSpec::ExplicitList(graphs) => write!(f, "list[{}]", graphs.len()),
            ClassSpec::Union(members) => {
                write!(f, "union(")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Bounds on a single extension step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumLimits {
    /// Most new vertices added on the outer layer.
    pub max_new_vertices: usize,
    /// Most distinct balls returned by one call.
    pub max_outputs: usize,
    /// Most candidate graphs canonicalized by one call.
    pub max_candidates: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_new_vertices: 64,
            max_outputs: 100_000,
            max_candidates: 50_000_000,
        }
    }
}

/// Children of a ball, sorted by code. `truncated` is set whenever a limit
/// cut the enumeration short.
#[derive(Debug, Clone)]
pub struct Extensions {
    pub balls: Vec<CanonicalBall>,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallPredicateReport {
    pub accepted: bool,
    pub violated_radius: Option<usize>,
    pub reason: String,
}

impl ClassSpec {
    pub fn degree_bounded(d: usize) -> Result<Self, ClassError> {
        if d < 2 {
            return Err(ClassError::DegreeBelowTwo(d));
        }
        Ok(ClassSpec::DegreeBounded(d))
    }

    pub fn growth_bounded(a: u64, b: u32) -> Result<Self, ClassError> {
        if a == 0 {
            return Err(ClassError::ZeroGrowthConstant);
        }
        Ok(ClassSpec::GrowthBounded { a, b })
    }

    pub fn explicit_list(graphs: Vec<ListedGraph>) -> Result<Self, ClassError> {
        for (index, g) in graphs.iter().enumerate() {
            if g.graph().vertex_count() == 0 || !g.graph().is_connected() {
                return Err(ClassError::DisconnectedListEntry { index });
            }
        }
        Ok(ClassSpec::ExplicitList(graphs))
    }

    pub fn union(members: Vec<ClassSpec>) -> Result<Self, ClassError> {
        if members.is_empty() {
            return Err(ClassError::EmptyUnion);
        }
        Ok(ClassSpec::Union(members))
    }

    /// Whether `b` is a ball of some member of the class.
    pub fn accepts_ball(&self, b: &CanonicalBall) -> bool {
        match self {
            ClassSpec::DegreeBounded(d) => b.graph().max_degree() < *d,
            ClassSpec::GrowthBounded { a, b: exponent } => {
                let mut sizes = vec![0usize; b.radius() + 1];
                for &l in b.layer() {
                    sizes[l] += 1;
                }
                let mut total = 0;
                for (k, &s) in sizes.iter().enumerate() {
                    total += s;
                    if k >= 1 && total as u128 > growth_cap(*a, *exponent, k) {
                        return false;
                    }
                }
                true
            }
            ClassSpec::ExplicitList(graphs) => graphs.iter().any(|g| {
                g.rootings().iter().any(|rg| {
                    CanonicalBall::of_ball(rg, b.radius()).is_ok_and(|own| own.code() == b.code())
                })
            }),
            ClassSpec::Union(members) => members.iter().any(|m| m.accepts_ball(b)),
        }
    }

    /// All balls of radius `r + 1` in the class whose interior is `b`.
    pub fn extensions(&self, b: &CanonicalBall, limits: &EnumLimits) -> Extensions {
        match self {
            ClassSpec::DegreeBounded(d) => {
                if !self.accepts_ball(b) {
                    return Extensions {
                        balls: Vec::new(),
                        truncated: false,
                    };
                }
                enumerate::extend_by_layer(b, Some(d - 1), None, limits)
            }
            ClassSpec::GrowthBounded { a, b: exponent } => {
                if !self.accepts_ball(b) {
                    return Extensions {
                        balls: Vec::new(),
                        truncated: false,
                    };
                }
                let cap = growth_cap(*a, *exponent, b.radius() + 1);
                let cap = usize::try_from(cap).unwrap_or(usize::MAX);
                enumerate::extend_by_layer(b, None, Some(cap), limits)
            }
            ClassSpec::ExplicitList(graphs) => {
                let mut found = BTreeMap::new();
                for g in graphs {
                    for rg in g.rootings() {
                        let matches = CanonicalBall::of_ball(&rg, b.radius())
                            .is_ok_and(|own| own.code() == b.code());
                        if matches {
                            let child = CanonicalBall::of_ball(&rg, b.radius() + 1)
                                .expect("listed graphs are connected");
                            found.entry(child.code().to_vec()).or_insert(child);
                        }
                    }
                }
                Extensions {
                    balls: found.into_values().collect(),
                    truncated: false,
                }
            }
            ClassSpec::Union(members) => {
                let mut found = BTreeMap::new();
                let mut truncated = false;
                for m in members {
                    if !m.accepts_ball(b) {
                        continue;
                    }
                    let ext = m.extensions(b, limits);
                    truncated |= ext.truncated;
                    for child in ext.balls {
                        found.entry(child.code().to_vec()).or_insert(child);
                    }
                }
                Extensions {
                    balls: found.into_values().collect(),
                    truncated,
                }
            }
        }
    }

    /// Checks every ball of `g` around its root against the class and
    /// reports the least radius whose ball falls outside it.
    pub fn member_check(&self, g: &RootedGraph) -> Result<BallPredicateReport, GraphError> {
        g.connected_layers()?;
        let eccentricity = g.eccentricity();
        // One radius past the eccentricity catches list entries that merely
        // start like g but are larger.
        for r in 0..=eccentricity + 1 {
            let ball = CanonicalBall::of_ball(g, r)?;
            if !self.accepts_ball(&ball) {
                return Ok(BallPredicateReport {
                    accepted: false,
                    violated_radius: Some(r),
                    reason: self.explain(&ball),
                });
            }
        }
        Ok(BallPredicateReport {
            accepted: true,
            violated_radius: None,
            reason: format!("every ball around the root lies in {self}"),
        })
    }

    fn explain(&self, ball: &CanonicalBall) -> String {
        let r = ball.radius();
        match self {
            ClassSpec::DegreeBounded(d) => format!(
                "ball of radius {r} has a vertex of degree {} >= {d}",
                ball.graph().max_degree()
            ),
            ClassSpec::GrowthBounded { a, b } => format!(
                "ball of radius {r} has {} vertices, more than {a}*{r}^{b}",
                ball.vertex_count()
            ),
            ClassSpec::ExplicitList(_) => {
                format!("ball of radius {r} is not a ball of any listed graph")
            }
            ClassSpec::Union(_) => format!("ball of radius {r} lies in no member of {self}"),
        }
    }
}

fn growth_cap(a: u64, b: u32, r: usize) -> u128 {
    (r as u128)
        .checked_pow(b)
        .and_then(|p| p.checked_mul(a as u128))
        .unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin_children(spec: &ClassSpec) -> Vec<CanonicalBall> {
        spec.extensions(&CanonicalBall::origin(), &EnumLimits::default())
            .balls
    }

    #[test]
    fn constructors_validate() {
        assert_eq!(
            ClassSpec::degree_bounded(1),
            Err(ClassError::DegreeBelowTwo(1))
        );
        assert_eq!(
            ClassSpec::growth_bounded(0, 2),
            Err(ClassError::ZeroGrowthConstant)
        );
        assert_eq!(ClassSpec::union(vec![]), Err(ClassError::EmptyUnion));
        assert_eq!(
            ClassSpec::explicit_list(vec![ListedGraph::Unrooted(Graph::new(2))]),
            Err(ClassError::DisconnectedListEntry { index: 0 })
        );
    }

    #[test]
    fn degree_two_has_two_radius_one_balls() {
        let balls = origin_children(&ClassSpec::DegreeBounded(2));
        let sizes: Vec<usize> = balls.iter().map(CanonicalBall::vertex_count).collect();
        assert_eq!(balls.len(), 2);
        assert!(sizes.contains(&1) && sizes.contains(&2));
    }

    #[test]
    fn degree_three_has_four_radius_one_balls() {
        let balls = origin_children(&ClassSpec::DegreeBounded(3));
        assert_eq!(balls.len(), 4);
        assert!(balls.iter().all(|b| b.radius() == 1));
        assert!(balls.windows(2).all(|w| w[0].code() < w[1].code()));
    }

    #[test]
    fn cycle_list_extends_path_ball_uniquely() {
        let spec = ClassSpec::explicit_list(vec![ListedGraph::Unrooted(Graph::cycle(6))]).unwrap();
        let p3 = RootedGraph::new(Graph::path(3), 1).unwrap();
        let b = CanonicalBall::from_rooted(&p3, 1).unwrap();
        let ext = spec.extensions(&b, &EnumLimits::default());
        assert_eq!(ext.balls.len(), 1);
        let p5 = RootedGraph::new(Graph::path(5), 2).unwrap();
        assert_eq!(ext.balls[0], CanonicalBall::from_rooted(&p5, 2).unwrap());
    }

    #[test]
    fn union_contains_members() {
        let small = ClassSpec::DegreeBounded(3);
        let list = ClassSpec::explicit_list(vec![ListedGraph::Unrooted(Graph::star(4))]).unwrap();
        let union = ClassSpec::union(vec![small.clone(), list.clone()]).unwrap();
        let all = origin_children(&union);
        for member in [small, list] {
            for b in origin_children(&member) {
                assert!(all.contains(&b));
            }
        }
    }

    #[test]
    fn member_check_degree() {
        let spec = ClassSpec::DegreeBounded(4);
        let k13 = RootedGraph::new(Graph::star(3), 0).unwrap();
        assert!(spec.member_check(&k13).unwrap().accepted);
        let k14 = RootedGraph::new(Graph::star(4), 0).unwrap();
        let report = spec.member_check(&k14).unwrap();
        assert!(!report.accepted);
        assert_eq!(report.violated_radius, Some(1));
    }

    #[test]
    fn member_check_growth_binary_tree() {
        // Complete binary tree of depth 4 rooted at the top: |B(r)| = 2^(r+1) - 1.
        let mut g = Graph::new(31);
        for v in 1..31 {
            g.add_edge((v - 1) / 2, v).unwrap();
        }
        let tree = RootedGraph::new(g, 0).unwrap();
        let spec = ClassSpec::growth_bounded(3, 1).unwrap();
        let report = spec.member_check(&tree).unwrap();
        // 3 <= 3*1 but 7 > 3*2.
        assert_eq!(report.violated_radius, Some(2));
    }

    #[test]
    fn member_check_list_rejects_larger_graph() {
        let spec = ClassSpec::explicit_list(vec![ListedGraph::Rooted(
            RootedGraph::new(Graph::path(3), 0).unwrap(),
        )])
        .unwrap();
        let p3 = RootedGraph::new(Graph::path(3), 0).unwrap();
        assert!(spec.member_check(&p3).unwrap().accepted);
        let p4 = RootedGraph::new(Graph::path(4), 0).unwrap();
        assert_eq!(spec.member_check(&p4).unwrap().violated_radius, Some(3));
        let p2 = RootedGraph::new(Graph::path(2), 0).unwrap();
        assert_eq!(spec.member_check(&p2).unwrap().violated_radius, Some(2));
    }

    #[test]
    fn union_member_check_takes_the_latest_violation() {
        let spec = ClassSpec::union(vec![
            ClassSpec::DegreeBounded(2),
            ClassSpec::DegreeBounded(3),
        ])
        .unwrap();
        let p4 = RootedGraph::new(Graph::path(4), 0).unwrap();
        assert!(spec.member_check(&p4).unwrap().accepted);
        let k13 = RootedGraph::new(Graph::star(3), 1).unwrap();
        assert_eq!(spec.member_check(&k13).unwrap().violated_radius, Some(2));
    }

    #[test]
    fn growth_extensions_respect_the_cap() {
        let spec = ClassSpec::growth_bounded(2, 1).unwrap();
        // Radius 1 allows at most 2 vertices, radius 2 at most 4.
        let balls = origin_children(&spec);
        assert_eq!(balls.len(), 2);
        for b in &balls {
            let ext = spec.extensions(b, &EnumLimits::default());
            assert!(!ext.truncated);
            assert!(ext.balls.iter().all(|c| c.vertex_count() <= 4));
        }
    }
}
