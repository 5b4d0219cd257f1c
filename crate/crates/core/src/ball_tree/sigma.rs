use serde::{Deserialize, Serialize};

use super::{BallTree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaDecomposition {
    /// Each part is a set of node ids, sorted.
    pub parts: Vec<Vec<usize>>,
    /// Nodes with no descendant at the horizon.
    pub residue: Vec<usize>,
}

/// Greedy finite-depth peel. A node is eligible when every node below it
/// (among those still present) has at most `k` children still present. The
/// shallowest eligible node is taken with its whole remaining subtree, plus
/// any ancestors left without a path to the horizon, and the process
/// repeats until nothing reaches the horizon.
pub fn sigma_decompose(t: &BallTree, k: usize) -> Result<SigmaDecomposition, TreeError> {
    t.require_complete()?;
    let n = t.len();
    let horizon = t.depth();

    let mut alive = vec![false; n];
    for id in (0..n).rev() {
        let node = t.node(id);
        alive[id] = node.ball.radius() == horizon || node.children.iter().any(|&c| alive[c]);
    }
    let residue: Vec<usize> = (0..n).filter(|&id| !alive[id]).collect();

    let mut parts = Vec::new();
    let mut eligible = vec![false; n];
    while alive[0] {
        for id in (0..n).rev() {
            let live: Vec<usize> = t
                .node(id)
                .children
                .iter()
                .copied()
                .filter(|&c| alive[c])
                .collect();
            eligible[id] = alive[id] && live.len() <= k && live.iter().all(|&c| eligible[c]);
        }
        let pick = (0..n)
            .find(|&id| eligible[id])
            .expect("horizon nodes are eligible");

        let mut part = Vec::new();
        let mut stack = vec![pick];
        while let Some(id) = stack.pop() {
            if alive[id] {
                alive[id] = false;
                part.push(id);
                stack.extend(t.node(id).children.iter().copied());
            }
        }
        let mut cur = t.node(pick).parent;
        while let Some(a) = cur {
            if t.node(a).children.iter().any(|&c| alive[c]) {
                break;
            }
            alive[a] = false;
            part.push(a);
            cur = t.node(a).parent;
        }
        part.sort_unstable();
        parts.push(part);
    }
    Ok(SigmaDecomposition { parts, residue })
}
