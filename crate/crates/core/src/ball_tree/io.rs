//! JSON form of a ball tree.

use serde::{Deserialize, Serialize};

use super::{BallTree, BuildLimits, TreeError};
use crate::rooted_graph::CanonicalBall;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TreeFile {
    meta: TreeMeta,
    nodes: Vec<NodeRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TreeMeta {
    spec: String,
    depth: usize,
    limits: BuildLimits,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct NodeRecord {
    id: usize,
    radius: usize,
    code: String,
    parent: Option<usize>,
    vcount: usize,
    truncated: bool,
}

impl BallTree {
    pub fn to_json(&self) -> String {
        let file = TreeFile {
            meta: TreeMeta {
                spec: self.spec.clone(),
                depth: self.depth,
                limits: self.limits,
            },
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| NodeRecord {
                    id,
                    radius: n.ball.radius(),
                    code: hex::encode(n.ball.code()),
                    parent: n.parent,
                    vcount: n.ball.vertex_count(),
                    truncated: n.truncated,
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("tree serializes");
        text.push('\n');
        text
    }

    /// Parses and re-validates a tree: every code must be canonical and
    /// every parent must be the interior of its child.
    pub fn from_json(text: &str) -> Result<BallTree, TreeError> {
        let file: TreeFile =
            serde_json::from_str(text).map_err(|e| TreeError::Format(e.to_string()))?;
        let meta = file.meta;
        let mut tree = BallTree {
            nodes: Vec::new(),
            index: Default::default(),
            depth: meta.depth,
            spec: meta.spec,
            limits: meta.limits,
        };
        for rec in file.nodes {
            let id = rec.id;
            let bad = |message: &str| TreeError::Integrity {
                id,
                message: message.to_string(),
            };
            if id != tree.len() {
                return Err(bad("ids must be 0, 1, 2, ... in order"));
            }
            if rec.radius > tree.depth {
                return Err(bad("radius beyond the tree depth"));
            }
            let code = hex::decode(&rec.code).map_err(|_| bad("code is not hex"))?;
            let ball =
                CanonicalBall::from_code(rec.radius, &code).map_err(|e| bad(&e.to_string()))?;
            if ball.vertex_count() != rec.vcount {
                return Err(bad("vertex count does not match the code"));
            }
            match rec.parent {
                None if id == 0 && ball == CanonicalBall::origin() => {}
                None => return Err(bad("only node 0 may lack a parent, and it must be B_0")),
                Some(p) if p >= id => return Err(bad("parent must precede its child")),
                Some(p) => {
                    let parent = &tree.nodes[p].ball;
                    let interior = ball.interior().map(|i| i.code.as_slice());
                    if parent.radius() + 1 != ball.radius() || interior != Some(parent.code()) {
                        return Err(bad("parent is not the interior ball"));
                    }
                }
            }
            if tree.find(&ball).is_some() {
                return Err(bad("duplicate ball"));
            }
            let new_id = tree.push(ball, rec.parent);
            tree.nodes[new_id].truncated = rec.truncated;
        }
        if tree.is_empty() {
            return Err(TreeError::Format("tree has no nodes".into()));
        }
        Ok(tree)
    }
}
