//! Root-preserving canonical labelling.
//!
//! Colors start as distance from the root and are refined until equitable.
//! When the coloring is not discrete, the first non-singleton cell is split by
//! individualizing each of its vertices in turn. Every leaf of this search
//! tree yields a labelling; the lexicographically least adjacency encoding
//! wins. Two leaves with equal encodings give an automorphism, and children
//! lying in one orbit of the automorphisms found so far (restricted to those
//! fixing the individualized prefix pointwise) are skipped.
//!
//! Colors are ordered and refinement never reorders existing cells, so the
//! root is always canonical vertex 0 and canonical ids are sorted by layer.

use super::{Graph, GraphError, RootedGraph};

/// Result of canonicalizing a rooted graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    /// Canonical encoding; equal iff the rooted graphs are isomorphic.
    pub code: Vec<u8>,
    /// `relabel[old] = canonical id`.
    pub relabel: Vec<usize>,
}

pub fn canonicalize(g: &RootedGraph) -> Result<Canonical, GraphError> {
    let layers = g.connected_layers()?;
    let mut colors: Vec<u32> = layers.iter().map(|&d| d as u32).collect();
    refine(g.graph(), &mut colors);

    let mut search = Search {
        graph: g.graph(),
        best: None,
        generators: Vec::new(),
    };
    let mut prefix = Vec::new();
    search.descend(colors, &mut prefix);
    let (code, relabel) = search.best.expect("search tree has at least one leaf");
    Ok(Canonical { code, relabel })
}

pub fn rooted_isomorphic(a: &RootedGraph, b: &RootedGraph) -> Result<bool, GraphError> {
    if a.vertex_count() != b.vertex_count() || a.graph().edge_count() != b.graph().edge_count() {
        // Still validate connectivity so the error contract holds.
        a.connected_layers()?;
        b.connected_layers()?;
        return Ok(false);
    }
    Ok(canonicalize(a)?.code == canonicalize(b)?.code)
}

/// Stable refined coloring seeded by distance from the root. The colors are
/// an isomorphism invariant: isomorphic rooted graphs get identical color
/// multisets with identical numbering.
pub(crate) fn refined_colors(g: &RootedGraph) -> Result<Vec<u32>, GraphError> {
    let layers = g.connected_layers()?;
    let mut colors: Vec<u32> = layers.iter().map(|&d| d as u32).collect();
    refine(g.graph(), &mut colors);
    Ok(colors)
}

/// Rebuilds the canonically labelled graph from a code.
pub fn decode_code(code: &[u8]) -> Result<Graph, GraphError> {
    let mut reader = Reader {
        bytes: code,
        pos: 0,
    };
    let width = reader.byte()? as usize;
    if !matches!(width, 1 | 2 | 4) {
        return Err(GraphError::MalformedCode("bad width byte"));
    }
    let n = reader.word(4)?;
    if width != width_for(n) {
        return Err(GraphError::MalformedCode(
            "width does not match vertex count",
        ));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        let count = reader.word(width)?;
        let mut prev = u;
        for _ in 0..count {
            let v = reader.word(width)?;
            if v <= prev || v >= n {
                return Err(GraphError::MalformedCode("neighbor list not increasing"));
            }
            g.add_edge(u, v)
                .map_err(|_| GraphError::MalformedCode("invalid edge"))?;
            prev = v;
        }
    }
    if reader.pos != code.len() {
        return Err(GraphError::MalformedCode("trailing bytes"));
    }
    Ok(g)
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn byte(&mut self) -> Result<u8, GraphError> {
        let b = *self
            .bytes
            .get(self.pos)
            .ok_or(GraphError::MalformedCode("truncated"))?;
        self.pos += 1;
        Ok(b)
    }

    fn word(&mut self, width: usize) -> Result<usize, GraphError> {
        let mut value = 0usize;
        for _ in 0..width {
            value = (value << 8) | self.byte()? as usize;
        }
        Ok(value)
    }
}

fn width_for(n: usize) -> usize {
    if n <= u8::MAX as usize {
        1
    } else if n <= u16::MAX as usize {
        2
    } else {
        4
    }
}

fn push_word(out: &mut Vec<u8>, value: usize, width: usize) {
    let bytes = (value as u32).to_be_bytes();
    out.extend_from_slice(&bytes[4 - width..]);
}

/// Layout: width byte, vertex count (4 bytes), then per canonical vertex the
/// number of higher-numbered neighbors followed by those neighbors.
fn encode(g: &Graph, labeling: &[usize]) -> Vec<u8> {
    let n = g.vertex_count();
    let width = width_for(n);
    let mut inverse = vec![0; n];
    for (v, &pos) in labeling.iter().enumerate() {
        inverse[pos] = v;
    }
    let mut out = Vec::with_capacity(5 + (n + 2 * g.edge_count()) * width);
    out.push(width as u8);
    push_word(&mut out, n, 4);
    let mut row = Vec::new();
    for (pos, &v) in inverse.iter().enumerate() {
        row.clear();
        row.extend(
            g.neighbors(v)
                .iter()
                .map(|&w| labeling[w])
                .filter(|&p| p > pos),
        );
        row.sort_unstable();
        push_word(&mut out, row.len(), width);
        for &p in &row {
            push_word(&mut out, p, width);
        }
    }
    out
}

/// Refines `colors` (dense, `0..k`) to the coarsest equitable partition
/// finer than it. New colors are ranks of `(old color, sorted neighbor
/// colors)`, so the order of existing cells is preserved.
fn refine(g: &Graph, colors: &mut [u32]) {
    let n = colors.len();
    let mut cells = count_colors(colors);
    let mut sigs: Vec<(u32, Vec<u32>, usize)> = Vec::with_capacity(n);
    loop {
        if cells == n {
            return;
        }
        sigs.clear();
        for v in 0..n {
            let mut around: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
            around.sort_unstable();
            sigs.push((colors[v], around, v));
        }
        sigs.sort_unstable_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                rank += 1;
            }
            colors[sigs[i].2] = rank;
        }
        let refined = rank as usize + 1;
        if refined == cells {
            return;
        }
        cells = refined;
    }
}

fn count_colors(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Gives `v` its own cell, placed just before the rest of its old cell.
fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let c = colors[v];
    colors
        .iter()
        .enumerate()
        .map(|(u, &x)| x + u32::from(x > c || (x == c && u != v)))
        .collect()
}

struct Search<'g> {
    graph: &'g Graph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, mut colors: Vec<u32>, prefix: &mut Vec<usize>) {
        refine(self.graph, &mut colors);
        let n = colors.len();
        let mut sizes = vec![0usize; count_colors(&colors)];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let Some(target) = sizes.iter().position(|&s| s > 1) else {
            self.leaf(colors);
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();

        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Vec<usize>)> = None;
        for &v in &cell {
            if !explored.is_empty() {
                let stale = orbits
                    .as_ref()
                    .is_none_or(|(seen, _)| *seen != self.generators.len());
                if stale {
                    orbits = Some((self.generators.len(), self.orbits_fixing(prefix)));
                }
                let (_, orbit) = orbits.as_ref().unwrap();
                if explored.iter().any(|&w| orbit[w] == orbit[v]) {
                    continue;
                }
            }
            let child = individualize(&colors, v);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, colors: Vec<u32>) {
        let labeling: Vec<usize> = colors.into_iter().map(|c| c as usize).collect();
        let code = encode(self.graph, &labeling);
        match &self.best {
            None => self.best = Some((code, labeling)),
            Some((best_code, best_labeling)) => match code.cmp(best_code) {
                std::cmp::Ordering::Less => self.best = Some((code, labeling)),
                std::cmp::Ordering::Equal => {
                    let mut inverse = vec![0; labeling.len()];
                    for (v, &pos) in best_labeling.iter().enumerate() {
                        inverse[pos] = v;
                    }
                    let automorphism: Vec<usize> =
                        labeling.iter().map(|&pos| inverse[pos]).collect();
                    if automorphism.iter().enumerate().any(|(v, &w)| v != w) {
                        self.generators.push(automorphism);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Orbit representative of each vertex under the group generated by the
    /// known automorphisms that fix `prefix` pointwise.
    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.graph.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gen in &self.generators {
            if prefix.iter().any(|&p| gen[p] != p) {
                continue;
            }
            for (v, &w) in gen.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }
}
