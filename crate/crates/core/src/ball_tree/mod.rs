//! The tree of radius-tagged balls of a class, built to a finite depth.
//!
//! Node 0 is the one-vertex ball of radius 0. Every other node's parent is
//! its interior ball. Nodes are numbered level by level; within a level,
//! children are grouped by parent and sorted by code.

mod io;
mod ray;
mod sigma;

pub use ray::{decompose_by_host, ray_to_graph, HostDecomposition};
pub use sigma::{sigma_decompose, SigmaDecomposition};

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class_spec::{ClassError, ClassSpec, EnumLimits, Extensions};
use crate::rooted_graph::{CanonicalBall, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("ball {index} of the path is not a one-step extension of its predecessor")]
    NotNested { index: usize },
    #[error("tree is truncated at {count} node(s); results would be unsound")]
    Truncated { count: usize },
    #[error("tree file: {0}")]
    Format(String),
    #[error("tree node {id}: {message}")]
    Integrity { id: usize, message: String },
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildLimits {
    #[serde(flatten)]
    pub per_ball: EnumLimits,
    /// Total node budget for the whole tree.
    pub max_nodes: Option<usize>,
}

/// Persistent store for extension results. Implementations must key on
/// the class as well; the builder only supplies the ball and the limits.
pub trait ExtensionCache: Sync {
    fn load(&self, ball: &CanonicalBall, limits: &EnumLimits) -> Option<Extensions>;
    fn store(&self, ball: &CanonicalBall, limits: &EnumLimits, extensions: &Extensions);
}

#[derive(Debug, Clone)]
pub struct TreeNode {
    pub ball: CanonicalBall,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Extensions of this ball were cut short or never computed.
    pub truncated: bool,
}

#[derive(Debug, Clone)]
pub struct BallTree {
    nodes: Vec<TreeNode>,
    index: HashMap<(usize, Vec<u8>), usize>,
    depth: usize,
    spec: String,
    limits: BuildLimits,
}

impl BallTree {
    fn with_root(depth: usize, spec: String, limits: BuildLimits) -> Self {
        let mut tree = BallTree {
            nodes: Vec::new(),
            index: HashMap::new(),
            depth,
            spec,
            limits,
        };
        tree.push(CanonicalBall::origin(), None);
        tree
    }

    fn push(&mut self, ball: CanonicalBall, parent: Option<usize>) -> usize {
        let id = self.nodes.len();
        let key = (ball.radius(), ball.code().to_vec());
        let previous = self.index.insert(key, id);
        assert!(previous.is_none(), "a ball has a unique interior");
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        self.nodes.push(TreeNode {
            ball,
            parent,
            children: Vec::new(),
            truncated: false,
        });
        id
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Label of the class the tree was built from.
    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn limits(&self) -> &BuildLimits {
        &self.limits
    }

    pub fn find(&self, ball: &CanonicalBall) -> Option<usize> {
        self.index
            .get(&(ball.radius(), ball.code().to_vec()))
            .copied()
    }

    /// Node ids at the given radius, in id order.
    pub fn level(&self, radius: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(move |&id| self.nodes[id].ball.radius() == radius)
    }

    /// Ids from the root down to `id`.
    pub fn path_to(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn truncated_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.truncated).count()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated_count() > 0
    }

    /// Error unless every node was fully expanded.
    pub fn require_complete(&self) -> Result<(), TreeError> {
        match self.truncated_count() {
            0 => Ok(()),
            count => Err(TreeError::Truncated { count }),
        }
    }
}

/// Breadth-first closure of extensions from the one-vertex ball up to
/// radius `depth`. Each level is expanded in parallel.
pub fn build_tree(
    spec: &ClassSpec,
    depth: usize,
    limits: &BuildLimits,
    cache: Option<&dyn ExtensionCache>,
) -> BallTree {
    let mut tree = BallTree::with_root(depth, spec.to_string(), *limits);
    let mut level = vec![0];
    for _ in 0..depth {
        let mut per_ball = limits.per_ball;
        if let Some(max) = limits.max_nodes {
            let room = max.saturating_sub(tree.len());
            per_ball.max_outputs = per_ball.max_outputs.min(room + 1);
        }
        let results: Vec<Extensions> = level
            .par_iter()
            .map(|&id| {
                let ball = &tree.nodes[id].ball;
                if let Some(hit) = cache.and_then(|c| c.load(ball, &per_ball)) {
                    return hit;
                }
                let ext = spec.extensions(ball, &per_ball);
                if let Some(c) = cache {
                    c.store(ball, &per_ball, &ext);
                }
                ext
            })
            .collect();

        let mut next = Vec::new();
        let mut out_of_room = false;
        for (&id, ext) in level.iter().zip(results) {
            let fits = limits
                .max_nodes
                .is_none_or(|max| tree.len() + ext.balls.len() <= max);
            if out_of_room || !fits {
                out_of_room = true;
                tree.nodes[id].truncated = true;
                continue;
            }
            tree.nodes[id].truncated = ext.truncated;
            for child in ext.balls {
                next.push(tree.push(child, Some(id)));
            }
        }
        if out_of_room {
            for &id in &next {
                tree.nodes[id].truncated = true;
            }
            break;
        }
        level = next;
    }
    tree
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    pub radius: usize,
    pub nodes: usize,
    pub cumulative: usize,
    /// Largest child count among nodes of this radius; absent at the horizon.
    pub max_children: Option<usize>,
    pub truncated: usize,
}

pub type BranchingProfile = Vec<LevelStats>;

pub fn branching_profile(t: &BallTree) -> BranchingProfile {
    let mut cumulative = 0;
    (0..=t.depth())
        .map(|radius| {
            let ids: Vec<usize> = t.level(radius).collect();
            cumulative += ids.len();
            LevelStats {
                radius,
                nodes: ids.len(),
                cumulative,
                max_children: (radius < t.depth()).then(|| {
                    ids.iter()
                        .map(|&id| t.node(id).children.len())
                        .max()
                        .unwrap_or(0)
                }),
                truncated: ids.iter().filter(|&&id| t.node(id).truncated).count(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplosionRow {
    pub cap: usize,
    pub radius_one_balls: usize,
    pub truncated: bool,
}

/// Number of radius-1 balls of the class of graphs with degrees below each
/// cap.
pub fn branching_explosion(
    caps: &[usize],
    limits: &EnumLimits,
) -> Result<Vec<ExplosionRow>, ClassError> {
    caps.iter()
        .map(|&cap| {
            let spec = ClassSpec::degree_bounded(cap)?;
            let ext = spec.extensions(&CanonicalBall::origin(), limits);
            Ok(ExplosionRow {
                cap,
                radius_one_balls: ext.balls.len(),
                truncated: ext.truncated,
            })
        })
        .collect()
}
