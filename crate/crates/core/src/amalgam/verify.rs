use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{AmalgamError, AmalgamGraph};
use crate::ball_tree::BallTree;
use crate::class_spec::{BallPredicateReport, ClassSpec};
use crate::embed::{find_embedding, is_embedding};
use crate::rooted_graph::RootedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallCheck {
    pub node: usize,
    pub radius: usize,
    pub vertex_count: usize,
    /// The glued copy is a strong root-preserving embedding.
    pub glued_copy_valid: bool,
    /// Witness found by search, guest canonical id -> host vertex.
    pub witness: Option<Vec<usize>>,
}

impl BallCheck {
    pub fn passed(&self) -> bool {
        self.glued_copy_valid && self.witness.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalityReport {
    pub r_check: usize,
    pub checks: Vec<BallCheck>,
    pub failures: usize,
    /// Failing ball with the fewest vertices, ties broken by node id.
    pub minimal_failure: Option<usize>,
}

impl UniversalityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks that every ball of `t` up to radius `r_check` embeds strongly in
/// `h` with its root on the amalgam root.
pub fn verify_universality(
    h: &AmalgamGraph,
    t: &BallTree,
    r_check: usize,
) -> Result<UniversalityReport, AmalgamError> {
    if r_check > h.build_radius() {
        return Err(AmalgamError::RadiusTooLarge {
            r_check,
            build_radius: h.build_radius(),
        });
    }
    let ids: Vec<usize> = (0..t.len())
        .filter(|&id| t.node(id).ball.radius() <= r_check)
        .collect();
    let checks: Vec<BallCheck> = ids
        .par_iter()
        .map(|&id| {
            let ball = &t.node(id).ball;
            let copy = h.copy_of(id);
            let glued_copy_valid =
                copy[0] == h.root() && is_embedding(ball.graph(), h.graph(), copy, true);
            let witness = find_embedding(&ball.rooted(), h.graph(), Some(h.root()), true)
                .expect("balls are connected")
                .map(|w| w.map);
            BallCheck {
                node: id,
                radius: ball.radius(),
                vertex_count: ball.vertex_count(),
                glued_copy_valid,
                witness,
            }
        })
        .collect();
    let failures = checks.iter().filter(|c| !c.passed()).count();
    let minimal_failure = checks
        .iter()
        .filter(|c| !c.passed())
        .min_by_key(|c| (c.vertex_count, c.node))
        .map(|c| c.node);
    Ok(UniversalityReport {
        r_check,
        checks,
        failures,
        minimal_failure,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedReport {
    pub membership: BallPredicateReport,
    /// `witnesses[r][v]` is the image of vertex `v` of the guest for the
    /// ball of radius `r`, or `None` outside that ball.
    pub witnesses: Vec<Vec<Option<usize>>>,
    /// Each witness restricts to the previous one.
    pub nested: bool,
    pub least_failure: Option<usize>,
}

impl NestedReport {
    pub fn passed(&self) -> bool {
        self.membership.accepted && self.least_failure.is_none() && self.nested
    }
}

/// Strong embeddings of `B(g, r)` at the amalgam root for every
/// `r <= min(r_max, build radius)`, chosen nested. `g` must belong to
/// `spec`; otherwise the least radius where membership fails is reported.
pub fn nested_embedding_check(
    g: &RootedGraph,
    h: &AmalgamGraph,
    spec: &ClassSpec,
    r_max: usize,
) -> Result<NestedReport, AmalgamError> {
    let membership = spec.member_check(g)?;
    if !membership.accepted {
        let least_failure = membership.violated_radius;
        return Ok(NestedReport {
            membership,
            witnesses: Vec::new(),
            nested: false,
            least_failure,
        });
    }
    let top = r_max.min(h.build_radius());
    let search = |r: usize| {
        let (ball, to_guest) = g.ball_with_map(r);
        find_embedding(&ball, h.graph(), Some(h.root()), true)
            .expect("guest is connected")
            .map(|w| {
                let mut full = vec![None; g.vertex_count()];
                for (b, &v) in to_guest.iter().enumerate() {
                    full[v] = Some(w.map[b]);
                }
                full
            })
    };

    let Some(outer) = search(top) else {
        let least_failure = (0..=top).find(|&r| search(r).is_none());
        return Ok(NestedReport {
            membership,
            witnesses: Vec::new(),
            nested: false,
            least_failure,
        });
    };

    let layers = g.connected_layers()?;
    let mut witnesses = Vec::with_capacity(top + 1);
    let mut nested = true;
    for r in 0..=top {
        let restricted: Vec<Option<usize>> = outer
            .iter()
            .zip(&layers)
            .map(|(&img, &l)| if l <= r { img } else { None })
            .collect();
        let (ball, to_guest) = g.ball_with_map(r);
        let map: Vec<usize> = to_guest
            .iter()
            .map(|&v| restricted[v].expect("inside the ball"))
            .collect();
        nested &= map[0] == h.root() && is_embedding(ball.graph(), h.graph(), &map, true);
        witnesses.push(restricted);
    }
    Ok(NestedReport {
        membership,
        witnesses,
        nested,
        least_failure: None,
    })
}
