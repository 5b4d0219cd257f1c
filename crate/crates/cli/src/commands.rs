use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use ballgraph::amalgam::{
    degree_profile, nested_embedding_check, synthesize, verify_universality, AmalgamGraph,
};
use ballgraph::ball_tree::{branching_profile, build_tree, BallTree, BuildLimits, ExtensionCache};
use ballgraph::class_spec::random_degree_bounded_member;
use ballgraph::embed::{count_embeddings, find_embedding};
use ballgraph::rooted_graph::{render_dot, render_graph, rooted_distance};
use ballgraph::{ClassSpec, EnumLimits};
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cache::DiskCache;
use crate::input::{csv_string, load_spec, read_graph, read_rooted, write_file, LoadedSpec};
use crate::Outcome;

#[derive(Args)]
pub struct LimitArgs {
    /// Most new vertices per extension step.
    #[arg(long, default_value_t = EnumLimits::default().max_new_vertices)]
    max_new_vertices: usize,
    /// Most balls returned by one extension step.
    #[arg(long, default_value_t = EnumLimits::default().max_outputs)]
    max_outputs: usize,
    /// Most candidates examined by one extension step.
    #[arg(long, default_value_t = EnumLimits::default().max_candidates)]
    max_candidates: u64,
    /// Node budget for the whole tree.
    #[arg(long)]
    max_nodes: Option<usize>,
}

impl LimitArgs {
    fn limits(&self) -> Result<BuildLimits> {
        if self.max_new_vertices == 0 || self.max_outputs == 0 || self.max_candidates == 0 {
            bail!("limits must be positive");
        }
        if self.max_nodes == Some(0) {
            bail!("--max-nodes must be positive");
        }
        Ok(BuildLimits {
            per_ball: EnumLimits {
                max_new_vertices: self.max_new_vertices,
                max_outputs: self.max_outputs,
                max_candidates: self.max_candidates,
            },
            max_nodes: self.max_nodes,
        })
    }
}

/// Builds a tree, reusing cached extensions when `BALLGRAPH_CACHE_DIR` is set.
fn build(spec: &LoadedSpec, depth: usize, limits: &LimitArgs) -> Result<BallTree> {
    let limits = limits.limits()?;
    let cache = DiskCache::from_env(&spec.fingerprint);
    Ok(build_tree(
        &spec.spec,
        depth,
        &limits,
        cache.as_ref().map(|c| c as &dyn ExtensionCache),
    ))
}

fn report_truncation(t: &BallTree) {
    eprintln!(
        "truncated: {} of {} nodes hit a limit; raise the limits to complete the tree",
        t.truncated_count(),
        t.len()
    );
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

#[derive(Args)]
pub struct TreeArgs {
    /// Class spec, e.g. "degree<4", "growth:a=3,b=2", "list:dir/*.rg".
    #[arg(long)]
    spec: String,
    /// Largest ball radius.
    #[arg(long)]
    depth: usize,
    #[command(flatten)]
    limits: LimitArgs,
    /// Write the tree as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the branching profile as CSV (it is always printed).
    #[arg(long)]
    profile: Option<PathBuf>,
}

pub fn tree(args: TreeArgs) -> Result<Outcome> {
    let spec = load_spec(&args.spec)?;
    let t = build(&spec, args.depth, &args.limits)?;
    let profile = csv_string(&branching_profile(&t))?;
    print!("{profile}");
    if let Some(path) = &args.profile {
        write_file(path, &profile)?;
    }
    if let Some(path) = &args.out {
        write_file(path, &t.to_json())?;
    }
    if t.is_truncated() {
        report_truncation(&t);
        return Ok(Outcome::Truncated);
    }
    Ok(Outcome::Success)
}

#[derive(Args)]
pub struct SynthArgs {
    /// Class spec; required unless --tree is given.
    #[arg(long, required_unless_present = "tree", conflicts_with = "tree")]
    spec: Option<String>,
    /// Build radius.
    #[arg(long, required_unless_present = "tree", conflicts_with = "tree")]
    depth: Option<usize>,
    #[command(flatten)]
    limits: LimitArgs,
    /// Glue a tree previously written by `tree --out`.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Check every ball up to this radius.
    #[arg(long)]
    verify: Option<usize>,
    /// Write the amalgam in the edge-list format.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Write the amalgam in Graphviz format.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write, per vertex, the (tree node, ball vertex) pairs glued into it.
    #[arg(long)]
    provenance: Option<PathBuf>,
    /// Write the degree histogram as CSV.
    #[arg(long)]
    degrees: Option<PathBuf>,
    /// Write the per-ball verification report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Serialize)]
struct SynthSummary {
    spec: String,
    depth: usize,
    tree_nodes: usize,
    vertices: usize,
    edges: usize,
    root_degree: usize,
    max_degree: usize,
    max_degree_by_layer: Vec<usize>,
    verification: Option<VerifySummary>,
}

#[derive(Serialize)]
struct VerifySummary {
    r_check: usize,
    balls: usize,
    failures: usize,
    minimal_failure: Option<usize>,
}

#[derive(Serialize)]
struct DegreeRow {
    degree: usize,
    vertices: usize,
}

pub fn synth(args: SynthArgs) -> Result<Outcome> {
    let t = match (&args.tree, &args.spec, args.depth) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            BallTree::from_json(&text).with_context(|| format!("{}", path.display()))?
        }
        (None, Some(spec), Some(depth)) => build(&load_spec(spec)?, depth, &args.limits)?,
        _ => bail!("give either --tree or both --spec and --depth"),
    };
    if t.is_truncated() {
        report_truncation(&t);
        eprintln!("refusing to glue a truncated tree");
        return Ok(Outcome::Truncated);
    }
    let h = synthesize(&t)?;
    let verification = match args.verify {
        Some(r) => {
            let report = verify_universality(&h, &t, r)?;
            if let Some(path) = &args.report {
                write_file(path, &json(&report)?)?;
            }
            Some(VerifySummary {
                r_check: r,
                balls: report.checks.len(),
                failures: report.failures,
                minimal_failure: report.minimal_failure,
            })
        }
        None => None,
    };
    write_synth_files(&args, &h)?;

    let profile = degree_profile(&h);
    let summary = SynthSummary {
        spec: t.spec().to_string(),
        depth: t.depth(),
        tree_nodes: t.len(),
        vertices: h.vertex_count(),
        edges: h.graph().edge_count(),
        root_degree: h.graph().degree(h.root()),
        max_degree: profile.max_degree,
        max_degree_by_layer: profile.max_degree_by_layer,
        verification,
    };
    print!("{}", json(&summary)?);
    let failed = summary
        .verification
        .as_ref()
        .is_some_and(|v| v.failures > 0);
    Ok(if failed {
        Outcome::Failed
    } else {
        Outcome::Success
    })
}

fn write_synth_files(args: &SynthArgs, h: &AmalgamGraph) -> Result<()> {
    if let Some(path) = &args.graph {
        write_file(path, &render_graph(h.graph(), Some(h.root())))?;
    }
    if let Some(path) = &args.dot {
        write_file(path, &render_dot(h.graph(), Some(h.root())))?;
    }
    if let Some(path) = &args.provenance {
        write_file(path, &h.provenance_json())?;
    }
    if let Some(path) = &args.degrees {
        let rows: Vec<DegreeRow> = degree_profile(h)
            .histogram
            .into_iter()
            .map(|(degree, vertices)| DegreeRow { degree, vertices })
            .collect();
        write_file(path, &csv_string(&rows)?)?;
    }
    Ok(())
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Class spec the amalgam is built for.
    #[arg(long)]
    spec: String,
    /// Build radius.
    #[arg(long)]
    depth: usize,
    #[command(flatten)]
    limits: LimitArgs,
    /// Rooted guest graph files.
    #[arg(long = "graph")]
    graphs: Vec<PathBuf>,
    /// Also test this many random members (degree-bounded specs only).
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertex budget for random members.
    #[arg(long, default_value_t = 12)]
    max_vertices: usize,
    /// Largest radius checked; defaults to the build radius.
    #[arg(long)]
    rmax: Option<usize>,
}

#[derive(Serialize)]
struct GuestResult {
    guest: String,
    vertices: usize,
    member: bool,
    nested: bool,
    least_failure: Option<usize>,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyOutput {
    spec: String,
    depth: usize,
    rmax: usize,
    guests: usize,
    failures: usize,
    results: Vec<GuestResult>,
}

pub fn verify(args: VerifyArgs) -> Result<Outcome> {
    let rmax = args.rmax.unwrap_or(args.depth);
    if rmax > args.depth {
        bail!("--rmax {rmax} exceeds --depth {}", args.depth);
    }
    let spec = load_spec(&args.spec)?;
    let mut guests = Vec::new();
    for path in &args.graphs {
        guests.push((path.display().to_string(), read_rooted(path, None)?));
    }
    if args.random > 0 {
        let ClassSpec::DegreeBounded(d) = spec.spec else {
            bail!("--random needs a degree<d spec");
        };
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for k in 0..args.random {
            let g = random_degree_bounded_member(d, args.max_vertices, &mut rng);
            guests.push((format!("random#{k}"), g));
        }
    }
    if guests.is_empty() {
        bail!("nothing to verify; pass --graph or --random");
    }

    let t = build(&spec, args.depth, &args.limits)?;
    if t.is_truncated() {
        report_truncation(&t);
        return Ok(Outcome::Truncated);
    }
    let h = synthesize(&t)?;
    let mut results = Vec::with_capacity(guests.len());
    for (name, g) in &guests {
        let report = nested_embedding_check(g, &h, &spec.spec, rmax)?;
        results.push(GuestResult {
            guest: name.clone(),
            vertices: g.vertex_count(),
            member: report.membership.accepted,
            nested: report.nested,
            least_failure: report.least_failure,
            passed: report.passed(),
        });
    }
    let failures = results.iter().filter(|r| !r.passed).count();
    let output = VerifyOutput {
        spec: t.spec().to_string(),
        depth: args.depth,
        rmax,
        guests: results.len(),
        failures,
        results,
    };
    print!("{}", json(&output)?);
    Ok(if failures > 0 {
        Outcome::Failed
    } else {
        Outcome::Success
    })
}

#[derive(Args)]
pub struct EmbedArgs {
    /// Rooted guest graph.
    #[arg(long)]
    guest: PathBuf,
    /// Host graph; its root, if any, is ignored.
    #[arg(long)]
    host: PathBuf,
    /// Override the guest root.
    #[arg(long)]
    guest_root: Option<usize>,
    /// Host vertex the guest root must map to.
    #[arg(long)]
    pin: Option<usize>,
    /// Require an induced copy.
    #[arg(long)]
    strong: bool,
    /// Count all embeddings instead of finding one.
    #[arg(long)]
    count: bool,
}

pub fn embed(args: EmbedArgs) -> Result<Outcome> {
    let guest = read_rooted(&args.guest, args.guest_root)?;
    let (host, _) = read_graph(&args.host)?;
    if let Some(p) = args.pin {
        if p >= host.vertex_count() {
            bail!(
                "pin {p} is not a vertex of the host ({} vertices)",
                host.vertex_count()
            );
        }
    }
    if args.count {
        let n = count_embeddings(&guest, &host, args.pin, args.strong)?;
        println!("{n}");
        return Ok(Outcome::Success);
    }
    match find_embedding(&guest, &host, args.pin, args.strong)? {
        Some(witness) => print!("{}", json(&witness)?),
        None => println!("no embedding"),
    }
    Ok(Outcome::Success)
}

#[derive(Args)]
pub struct DistArgs {
    /// First rooted graph.
    #[arg(long)]
    a: PathBuf,
    /// Second rooted graph.
    #[arg(long)]
    b: PathBuf,
    /// Largest radius compared.
    #[arg(long)]
    rmax: usize,
}

pub fn dist(args: DistArgs) -> Result<Outcome> {
    let a = read_rooted(&args.a, None)?;
    let b = read_rooted(&args.b, None)?;
    let report = rooted_distance(&a, &b, args.rmax)?;
    print!("{}", json(&report)?);
    Ok(Outcome::Success)
}
