use serde::{Deserialize, Serialize};

use super::{LowerBoundError, PermutationPrefix};
use crate::rooted_graph::{Graph, RootedGraph};

/// `G_s(i)`: the path on `[-2^(i+1), 2^(i+1)]` with chords `2n -- -2s(n)`
/// for `n` in `[2^i]`. Vertex `x` is stored at index `x + 2^(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsGraph {
    i: usize,
    prefix: PermutationPrefix,
    graph: Graph,
}

impl GsGraph {
    pub fn i(&self) -> usize {
        self.i
    }

    pub fn prefix(&self) -> &PermutationPrefix {
        &self.prefix
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    fn half(&self) -> i64 {
        1 << (self.i + 1)
    }

    pub fn index(&self, label: i64) -> Option<usize> {
        let h = self.half();
        (-h..=h).contains(&label).then(|| (label + h) as usize)
    }

    pub fn label(&self, index: usize) -> i64 {
        index as i64 - self.half()
    }

    pub fn zero(&self) -> usize {
        self.half() as usize
    }

    /// The graph rooted at vertex 0.
    pub fn rooted(&self) -> RootedGraph {
        RootedGraph::new(self.graph.clone(), self.zero()).expect("0 is a vertex")
    }

    /// A copy with an extra edge between two labels, for mutation tests.
    pub fn with_extra_edge(&self, a: i64, b: i64) -> Result<GsGraph, LowerBoundError> {
        let mut out = self.clone();
        let vertex_count = self.graph.vertex_count();
        let ia = self.index(a).ok_or(LowerBoundError::HostVertex {
            vertex: a.unsigned_abs() as usize,
            vertex_count,
        })?;
        let ib = self.index(b).ok_or(LowerBoundError::HostVertex {
            vertex: b.unsigned_abs() as usize,
            vertex_count,
        })?;
        out.graph.add_edge(ia, ib)?;
        Ok(out)
    }
}

/// Builds `G_s(i)` with `i` = number of levels in the prefix.
pub fn build_gs(prefix: &PermutationPrefix) -> Result<GsGraph, LowerBoundError> {
    let i = prefix.levels();
    if i == 0 {
        return Err(LowerBoundError::NoLevels(0));
    }
    let half = 1i64 << (i + 1);
    let n = (2 * half + 1) as usize;
    let mut graph = Graph::path(n);
    for (k, &image) in prefix.restriction().iter().enumerate() {
        let m = k as i64 + 1;
        graph.add_edge((2 * m + half) as usize, (half - 2 * image as i64) as usize)?;
    }
    let g = GsGraph {
        i,
        prefix: prefix.clone(),
        graph,
    };
    debug_assert!(g.graph.max_degree() <= 3);
    Ok(g)
}

/// Which degrees the "no two consecutive degree-3 vertices" rule reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathDegree {
    /// Degrees inside the finite graph `G_s(i)`.
    Induced,
    /// Degrees inside the infinite `G_s`: the two ends also continue the
    /// path outward.
    Ambient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathUniqueness {
    pub convention: PathDegree,
    /// Spanning paths with no two consecutive degree-3 vertices, each
    /// counted once regardless of direction.
    pub qualifying_paths: usize,
    /// The path `-2^(i+1), ..., 2^(i+1)` itself qualifies.
    pub designated_qualifies: bool,
    pub unique: bool,
}

/// Enumerates every spanning path and counts the ones where no two
/// consecutive vertices have degree 3.
pub fn spanning_path_uniqueness(g: &GsGraph, convention: PathDegree) -> PathUniqueness {
    let graph = g.graph();
    let n = graph.vertex_count();
    let heavy: Vec<bool> = (0..n)
        .map(|v| {
            let outward = convention == PathDegree::Ambient && (v == 0 || v == n - 1);
            graph.degree(v) + usize::from(outward) == 3
        })
        .collect();
    let designated_qualifies =
        (0..n - 1).all(|v| graph.has_edge(v, v + 1) && !(heavy[v] && heavy[v + 1]));

    let mut count = 0;
    let mut visited = vec![false; n];
    for start in 0..n {
        visited[start] = true;
        extend(graph, &heavy, start, start, 1, &mut visited, &mut count);
        visited[start] = false;
    }

    fn extend(
        graph: &Graph,
        heavy: &[bool],
        start: usize,
        last: usize,
        len: usize,
        visited: &mut [bool],
        count: &mut usize,
    ) {
        if len == visited.len() {
            // Each undirected path is seen from both ends.
            if start < last {
                *count += 1;
            }
            return;
        }
        for &w in graph.neighbors(last) {
            if visited[w] || (heavy[w] && heavy[last]) {
                continue;
            }
            visited[w] = true;
            extend(graph, heavy, start, w, len + 1, visited, count);
            visited[w] = false;
        }
    }

    PathUniqueness {
        convention,
        qualifying_paths: count,
        designated_qualifies,
        unique: designated_qualifies && count == 1,
    }
}
