use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use ballgraph::class_spec::{parse_spec, ListedGraph};
use ballgraph::rooted_graph::parse_graph;
use ballgraph::{ClassSpec, Graph, RootedGraph};
use sha2::{Digest, Sha256};

pub fn read_graph(path: &Path) -> Result<(Graph, Option<usize>)> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph(&text)
        .map_err(|e| anyhow!("{}:{}:{}: {}", path.display(), e.line, e.column, e.kind))
}

/// Reads a rooted graph; `root` overrides the root stored in the file.
pub fn read_rooted(path: &Path, root: Option<usize>) -> Result<RootedGraph> {
    let (graph, stored) = read_graph(path)?;
    let root = root
        .or(stored)
        .ok_or_else(|| anyhow!("{} is unrooted; pass a root explicitly", path.display()))?;
    RootedGraph::new(graph, root).with_context(|| format!("bad root for {}", path.display()))
}

pub struct LoadedSpec {
    pub spec: ClassSpec,
    /// Hash of the spec text and every file it pulled in.
    pub fingerprint: String,
}

/// Parses a class spec; `list:` paths may be glob patterns, each match
/// holding one graph.
pub fn load_spec(text: &str) -> Result<LoadedSpec> {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let mut failure: Option<anyhow::Error> = None;
    let mut loader = |pattern: &str| -> Result<Vec<ListedGraph>, String> {
        let result = load_list(pattern, &mut hasher);
        result.map_err(|e| {
            let message = format!("{e:#}");
            failure = Some(e);
            message
        })
    };
    let spec = parse_spec(text, &mut loader).map_err(|e| match failure.take() {
        Some(inner) => inner.context(format!("spec column {}", e.column)),
        None => anyhow!("spec:1:{}: {}", e.column, e.message),
    })?;
    Ok(LoadedSpec {
        spec,
        fingerprint: hex::encode(hasher.finalize()),
    })
}

fn load_list(pattern: &str, hasher: &mut Sha256) -> Result<Vec<ListedGraph>> {
    let mut paths: Vec<PathBuf> = glob::glob(pattern)
        .with_context(|| format!("bad list pattern {pattern:?}"))?
        .collect::<Result<_, _>>()?;
    paths.sort();
    if paths.is_empty() {
        bail!("no files match {pattern:?}");
    }
    paths
        .iter()
        .map(|path| {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            hasher.update(path.to_string_lossy().as_bytes());
            hasher.update(text.as_bytes());
            let (graph, root) = read_graph(path)?;
            Ok(match root {
                Some(r) => ListedGraph::Rooted(RootedGraph::new(graph, r)?),
                None => ListedGraph::Unrooted(graph),
            })
        })
        .collect()
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

pub fn csv_string<T: serde::Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}
