use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use ballgraph::lowerbound::{
    build_gs, contradiction_table, iso_classify, least_contradiction, prefix_measure,
    spanning_path_uniqueness, NviCounter, PathDegree, PathUniqueness, PermutationPrefix,
};
use ballgraph::rooted_graph::{render_dot, render_graph};
use clap::{Args, Subcommand};
use num_rational::BigRational;
use serde::Serialize;

use crate::input::{csv_string, read_graph, write_file};
use crate::Outcome;

#[derive(Subcommand)]
pub enum LbCommand {
    /// Build G_s(i) from the first levels of s.
    Gs(GsArgs),
    /// Group all G_s(i) by isomorphism type.
    Iso(IsoArgs),
    /// Count the classes of G_s(i) that embed at host vertices.
    Count(CountArgs),
    /// Measure of the set of s matching some levels.
    Measure(MeasureArgs),
    /// Compare (epsilon/2)(2^i)! with delta^(5*2^i).
    Table(TableArgs),
}

pub fn run(cmd: LbCommand) -> Result<Outcome> {
    match cmd {
        LbCommand::Gs(a) => gs(a),
        LbCommand::Iso(a) => iso(a),
        LbCommand::Count(a) => count(a),
        LbCommand::Measure(a) => measure(a),
        LbCommand::Table(a) => table(a),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Levels separated by `;`, images within a level by `,`. With `free`,
/// a level written `*` stays unconstrained.
fn parse_levels(text: &str, free: bool) -> Result<Vec<Option<Vec<u64>>>> {
    text.split(';')
        .enumerate()
        .map(|(level, part)| {
            let part = part.trim();
            if free && part == "*" {
                return Ok(None);
            }
            part.split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map(Some)
                .with_context(|| format!("level {level}: expected comma-separated integers"))
        })
        .collect()
}

fn parse_prefix(text: &str) -> Result<PermutationPrefix> {
    let blocks = parse_levels(text, false)?.into_iter().flatten().collect();
    Ok(PermutationPrefix::new(blocks)?)
}

#[derive(Args)]
pub struct GsArgs {
    /// Images of s level by level, e.g. "2,1;4,3".
    #[arg(long)]
    prefix: String,
    /// Write the graph in the edge-list format, rooted at 0.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Write the graph in Graphviz format.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Serialize)]
struct GsOutput {
    i: usize,
    restriction: Vec<u64>,
    vertices: usize,
    edges: usize,
    /// Integer label of each vertex index.
    labels: Vec<i64>,
    spanning_paths: Vec<PathUniqueness>,
}

fn gs(args: GsArgs) -> Result<Outcome> {
    let prefix = parse_prefix(&args.prefix)?;
    let g = build_gs(&prefix)?;
    if let Some(path) = &args.graph {
        write_file(path, &render_graph(g.graph(), Some(g.zero())))?;
    }
    if let Some(path) = &args.dot {
        write_file(path, &render_dot(g.graph(), Some(g.zero())))?;
    }
    let output = GsOutput {
        i: g.i(),
        restriction: prefix.restriction(),
        vertices: g.graph().vertex_count(),
        edges: g.graph().edge_count(),
        labels: (0..g.graph().vertex_count()).map(|v| g.label(v)).collect(),
        spanning_paths: [PathDegree::Ambient, PathDegree::Induced]
            .into_iter()
            .map(|c| spanning_path_uniqueness(&g, c))
            .collect(),
    };
    print!("{}", json(&output)?);
    Ok(Outcome::Success)
}

#[derive(Args)]
pub struct IsoArgs {
    /// Number of levels.
    #[arg(long)]
    i: usize,
}

#[derive(Serialize)]
struct IsoOutput {
    i: usize,
    prefixes: usize,
    class_count: usize,
    orbit_count: usize,
    rule_holds: bool,
    /// Each class as the restrictions of its members.
    classes: Vec<Vec<Vec<u64>>>,
}

fn iso(args: IsoArgs) -> Result<Outcome> {
    let c = iso_classify(args.i)?;
    let output = IsoOutput {
        i: c.i,
        prefixes: c.prefixes.len(),
        class_count: c.classes.len(),
        orbit_count: c.orbit_count,
        rule_holds: c.rule_holds,
        classes: c
            .classes
            .iter()
            .map(|class| class.iter().map(|&k| c.prefixes[k].restriction()).collect())
            .collect(),
    };
    print!("{}", json(&output)?);
    Ok(if output.rule_holds {
        Outcome::Success
    } else {
        Outcome::Failed
    })
}

#[derive(Args)]
pub struct CountArgs {
    /// Host graph.
    #[arg(long)]
    host: PathBuf,
    /// Number of levels.
    #[arg(long, default_value_t = 1)]
    i: usize,
    /// Host vertices to test; all of them by default.
    #[arg(long = "vertex")]
    vertices: Vec<usize>,
    /// Also count embeddable prefixes one by one.
    #[arg(long)]
    census: bool,
}

fn count(args: CountArgs) -> Result<Outcome> {
    let (host, _) = read_graph(&args.host)?;
    let counter = NviCounter::new(args.i)?;
    let vertices = if args.vertices.is_empty() {
        (0..host.vertex_count()).collect()
    } else {
        args.vertices.clone()
    };
    let mut ok = true;
    let mut rows = Vec::with_capacity(vertices.len());
    for v in vertices {
        let report = counter.count(&host, v)?;
        ok &= report.within_bound;
        let mut row = serde_json::to_value(&report)?;
        if args.census {
            let census = counter.census(&host, v)?;
            ok &= census.within_factor_two;
            row["census"] = serde_json::to_value(&census)?;
        }
        rows.push(row);
    }
    print!("{}", json(&rows)?);
    Ok(if ok {
        Outcome::Success
    } else {
        Outcome::Failed
    })
}

#[derive(Args)]
pub struct MeasureArgs {
    /// Constrained levels separated by ';', with '*' for a free level,
    /// e.g. "*;4,3;*".
    #[arg(long)]
    levels: String,
}

#[derive(Serialize)]
struct MeasureOutput {
    measure: String,
}

fn measure(args: MeasureArgs) -> Result<Outcome> {
    let constraints = parse_levels(&args.levels, true)?;
    let m = prefix_measure(&constraints)?;
    print!(
        "{}",
        json(&MeasureOutput {
            measure: m.to_string()
        })?
    );
    Ok(Outcome::Success)
}

#[derive(Args)]
pub struct TableArgs {
    /// Maximum degree of the hypothetical host.
    #[arg(long)]
    delta: u64,
    /// Density of the prefixes that embed, as an integer or fraction.
    #[arg(long, default_value = "1")]
    epsilon: String,
    #[arg(long, default_value_t = 12)]
    imax: usize,
    /// Write the rows with log10 columns as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Serialize)]
struct TableRow {
    i: usize,
    delta: u64,
    lhs: String,
    rhs: String,
    verdict: bool,
    method: String,
}

#[derive(Serialize)]
struct TableOutput {
    delta: u64,
    epsilon: String,
    least_contradiction: Option<usize>,
    rows: Vec<TableRow>,
}

fn table(args: TableArgs) -> Result<Outcome> {
    let epsilon = BigRational::from_str(args.epsilon.trim())
        .map_err(|e| anyhow!("bad epsilon {:?}: {e}", args.epsilon))?;
    let rows = contradiction_table(args.delta, &epsilon, args.imax)?;
    if let Some(path) = &args.csv {
        write_file(path, &csv_string(&rows)?)?;
    }
    let output = TableOutput {
        delta: args.delta,
        epsilon: epsilon.to_string(),
        least_contradiction: least_contradiction(&rows),
        rows: rows
            .into_iter()
            .map(|r| TableRow {
                i: r.i,
                delta: r.delta,
                lhs: r.lhs,
                rhs: r.rhs,
                verdict: r.verdict,
                method: serde_json::to_value(r.method)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
            })
            .collect(),
    };
    print!("{}", json(&output)?);
    Ok(Outcome::Success)
}
