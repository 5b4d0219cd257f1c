use serde::{Deserialize, Serialize};

use super::{canonicalize, GraphError, RootedGraph};

/// Largest radius up to which two rooted graphs have isomorphic balls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "radius", rename_all = "snake_case")]
pub enum AgreementRadius {
    Exact(usize),
    /// The balls agree at every radius up to the cap.
    AtLeast(usize),
}

impl AgreementRadius {
    pub fn radius(self) -> usize {
        match self {
            AgreementRadius::Exact(r) | AgreementRadius::AtLeast(r) => r,
        }
    }

    pub fn is_capped(self) -> bool {
        matches!(self, AgreementRadius::AtLeast(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub agreement_radius: AgreementRadius,
    /// `exp(-agreement radius)`; an upper bound when capped.
    pub distance_value: f64,
}

/// The ball metric `exp(-max{r : B(a, r) ≅ B(b, r)})`, evaluated up to
/// `r_max`.
pub fn rooted_distance(
    a: &RootedGraph,
    b: &RootedGraph,
    r_max: usize,
) -> Result<DistanceReport, GraphError> {
    if r_max == 0 {
        return Err(GraphError::TrivialCap);
    }
    a.connected_layers()?;
    b.connected_layers()?;
    // Radius-0 balls are single vertices, so agreement starts at 0.
    let mut agreed = 0;
    for r in 1..=r_max {
        let (ba, bb) = (a.ball(r), b.ball(r));
        let same = ba.vertex_count() == bb.vertex_count()
            && ba.graph().edge_count() == bb.graph().edge_count()
            && canonicalize(&ba)?.code == canonicalize(&bb)?.code;
        if !same {
            return Ok(DistanceReport {
                agreement_radius: AgreementRadius::Exact(agreed),
                distance_value: (-(agreed as f64)).exp(),
            });
        }
        agreed = r;
    }
    Ok(DistanceReport {
        agreement_radius: AgreementRadius::AtLeast(r_max),
        distance_value: (-(r_max as f64)).exp(),
    })
}
