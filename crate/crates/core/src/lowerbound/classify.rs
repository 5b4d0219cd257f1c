use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Pow;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use super::{build_gs, cylinder_measure, GsGraph, LowerBoundError, PermutationPrefix};
use crate::embed::find_embedding;
use crate::rooted_graph::{canonicalize, Graph, RootedGraph};

/// Largest `i` whose prefix space is enumerated in full (96 prefixes at 3,
/// almost four million at 4).
pub const MAX_CLASSIFY_LEVEL: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClassification {
    pub i: usize,
    pub prefixes: Vec<PermutationPrefix>,
    /// Indices into `prefixes`, grouped by isomorphism type of `G_s(i)`.
    pub classes: Vec<Vec<usize>>,
    /// Number of `{s, s^-1}` pairs among the prefixes.
    pub orbit_count: usize,
    /// Each class is exactly one `{s, s^-1}` pair.
    pub rule_holds: bool,
}

fn check_level(i: usize) -> Result<(), LowerBoundError> {
    match i {
        0 => Err(LowerBoundError::NoLevels(0)),
        i if i > MAX_CLASSIFY_LEVEL => Err(LowerBoundError::TooLarge {
            i,
            max: MAX_CLASSIFY_LEVEL,
        }),
        _ => Ok(()),
    }
}

/// Least rooted code over all choices of root: a complete invariant for
/// unrooted isomorphism.
fn unrooted_code(g: &Graph) -> Vec<u8> {
    (0..g.vertex_count())
        .map(|v| {
            let rooted = RootedGraph::new(g.clone(), v).expect("vertex in range");
            canonicalize(&rooted).expect("G_s(i) is connected").code
        })
        .min()
        .unwrap_or_default()
}

/// Groups all prefixes of length `i` by the isomorphism type of `G_s(i)`.
pub fn iso_classify(i: usize) -> Result<IsoClassification, LowerBoundError> {
    check_level(i)?;
    let prefixes = PermutationPrefix::all(i);
    let codes: Vec<Vec<u8>> = prefixes
        .par_iter()
        .map(|p| unrooted_code(build_gs(p).expect("valid prefix").graph()))
        .collect();
    let mut by_code: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
    for (idx, code) in codes.iter().enumerate() {
        by_code.entry(code).or_default().push(idx);
    }
    let mut classes: Vec<Vec<usize>> = by_code.into_values().collect();
    classes.sort_unstable();

    let position: BTreeMap<&PermutationPrefix, usize> =
        prefixes.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let partner: Vec<usize> = prefixes.iter().map(|p| position[&p.inverse()]).collect();
    let orbit_count = (0..prefixes.len()).filter(|&k| partner[k] >= k).count();
    let rule_holds = classes.iter().all(|class| {
        let a = class[0];
        let mut orbit = vec![a, partner[a]];
        orbit.sort_unstable();
        orbit.dedup();
        *class == orbit
    });
    Ok(IsoClassification {
        i,
        prefixes,
        classes,
        orbit_count,
        rule_holds,
    })
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NviReport {
    pub i: usize,
    pub vertex: usize,
    pub delta: usize,
    /// Isomorphism classes of `G_s(i)` that embed with 0 on `vertex`.
    #[serde_as(as = "DisplayFromStr")]
    pub count: BigUint,
    /// `delta^(5 * 2^i)`.
    #[serde_as(as = "DisplayFromStr")]
    pub bound: BigUint,
    pub within_bound: bool,
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandCensus {
    pub i: usize,
    pub vertex: usize,
    /// Restrictions of `s` to `[2^i]` whose `G_s(i)` embeds with 0 on `vertex`.
    pub nonzero: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub n_vi: BigUint,
    pub within_factor_two: bool,
    /// Exact measure of the set of `s` whose `G_s(i)` embeds.
    #[serde_as(as = "DisplayFromStr")]
    pub measure: BigRational,
}

/// Class representatives for one `i`, reusable across many host vertices.
#[derive(Debug, Clone)]
pub struct NviCounter {
    classification: IsoClassification,
    representatives: Vec<RootedGraph>,
    graphs: Vec<GsGraph>,
}

impl NviCounter {
    pub fn new(i: usize) -> Result<Self, LowerBoundError> {
        let classification = iso_classify(i)?;
        let graphs: Vec<GsGraph> = classification
            .prefixes
            .iter()
            .map(|p| build_gs(p).expect("valid prefix"))
            .collect();
        let representatives = classification
            .classes
            .iter()
            .map(|class| graphs[class[0]].rooted())
            .collect();
        Ok(NviCounter {
            classification,
            representatives,
            graphs,
        })
    }

    pub fn classification(&self) -> &IsoClassification {
        &self.classification
    }

    fn check_vertex(host: &Graph, v: usize) -> Result<(), LowerBoundError> {
        if v >= host.vertex_count() {
            return Err(LowerBoundError::HostVertex {
                vertex: v,
                vertex_count: host.vertex_count(),
            });
        }
        Ok(())
    }

    pub fn count(&self, host: &Graph, v: usize) -> Result<NviReport, LowerBoundError> {
        Self::check_vertex(host, v)?;
        let i = self.classification.i;
        let count = self
            .representatives
            .par_iter()
            .filter(|g| {
                find_embedding(g, host, Some(v), false)
                    .expect("G_s(i) is connected")
                    .is_some()
            })
            .count();
        let delta = host.max_degree();
        let bound = Pow::pow(BigUint::from(delta), 5usize << i);
        let count = BigUint::from(count);
        Ok(NviReport {
            i,
            vertex: v,
            delta,
            within_bound: count <= bound,
            count,
            bound,
        })
    }

    /// Checks every prefix directly rather than one per class.
    pub fn census(&self, host: &Graph, v: usize) -> Result<SummandCensus, LowerBoundError> {
        let n_vi = self.count(host, v)?.count;
        let nonzero = self
            .graphs
            .par_iter()
            .filter(|g| {
                find_embedding(&g.rooted(), host, Some(v), false)
                    .expect("G_s(i) is connected")
                    .is_some()
            })
            .count();
        let i = self.classification.i;
        let measure = cylinder_measure(i) * BigRational::from_integer(nonzero.into());
        Ok(SummandCensus {
            i,
            vertex: v,
            nonzero,
            within_factor_two: BigUint::from(nonzero) <= &n_vi * 2u32,
            n_vi,
            measure,
        })
    }
}

pub fn count_nvi(host: &Graph, v: usize, i: usize) -> Result<NviReport, LowerBoundError> {
    NviCounter::new(i)?.count(host, v)
}

pub fn summand_census(host: &Graph, v: usize, i: usize) -> Result<SummandCensus, LowerBoundError> {
    NviCounter::new(i)?.census(host, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn level_one_has_two_classes() {
        let c = iso_classify(1).unwrap();
        assert_eq!(c.classes.len(), 2);
        assert_eq!(c.orbit_count, 2);
        assert!(c.rule_holds);
    }

    #[test]
    fn level_two_matches_the_orbits() {
        let c = iso_classify(2).unwrap();
        assert_eq!(c.classes.len(), c.orbit_count);
        assert!(c.rule_holds);
        assert!(c.classes.iter().all(|k| k.len() <= 2));
    }

    #[test]
    fn level_guards() {
        assert!(matches!(iso_classify(0), Err(LowerBoundError::NoLevels(0))));
        assert!(matches!(
            iso_classify(4),
            Err(LowerBoundError::TooLarge { .. })
        ));
    }

    #[test]
    fn self_host() {
        let g = build_gs(&PermutationPrefix::identity(1)).unwrap();
        let report = count_nvi(g.graph(), g.zero(), 1).unwrap();
        assert!(report.count >= 1u32.into());
        assert_eq!(report.delta, 3);
        assert_eq!(report.bound, BigUint::from(59049u32));
        assert!(report.within_bound);
        let census = summand_census(g.graph(), g.zero(), 1).unwrap();
        assert!(census.within_factor_two);
    }

    #[test]
    fn path_host_has_no_room_for_chords() {
        let path = Graph::path(30);
        let report = count_nvi(&path, 15, 1).unwrap();
        assert!(report.count.is_zero());
        let census = summand_census(&path, 15, 1).unwrap();
        assert_eq!(census.nonzero, 0);
        assert!(census.measure.is_zero());
    }

    #[test]
    fn k33_is_within_bound() {
        let host = Graph::complete_bipartite(3, 3);
        for v in 0..6 {
            let r = count_nvi(&host, v, 1).unwrap();
            assert!(r.within_bound);
        }
        assert!(count_nvi(&host, 6, 1).is_err());
    }
}
