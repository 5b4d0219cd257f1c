//! `ballgraph`: build ball trees and amalgams, check embeddings, and print
//! the counting tables.
//!
//! Exit codes: 0 on success, 2 when a tree had to be truncated, 1 on any
//! error or failed check.

mod cache;
mod commands;
mod input;
mod lb;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ballgraph", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the tree of balls of a class and print its branching profile.
    Tree(commands::TreeArgs),
    /// Glue the balls of a tree into one graph.
    Synth(commands::SynthArgs),
    /// Check that class members embed into the amalgam with nested witnesses.
    Verify(commands::VerifyArgs),
    /// Search for a rooted embedding of one graph into another.
    Embed(commands::EmbedArgs),
    /// Ball-metric distance between two rooted graphs.
    Dist(commands::DistArgs),
    /// The path-plus-chords graphs and the counting bound.
    #[command(subcommand)]
    Lb(lb::LbCommand),
}

/// How a command finished, before mapping to an exit code.
pub enum Outcome {
    Success,
    Truncated,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tree(args) => commands::tree(args),
        Command::Synth(args) => commands::synth(args),
        Command::Verify(args) => commands::verify(args),
        Command::Embed(args) => commands::embed(args),
        Command::Dist(args) => commands::dist(args),
        Command::Lb(cmd) => lb::run(cmd),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Truncated) => ExitCode::from(2),
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
