//! cp1graft: classify Möbius maps, decompose index triples into an atomic
//! immersion plus a grafting multicurve, render circle configurations to
//! SVG, and verify hypergeometric monodromy traces.
//!
//! Every command prints one JSON report ("schema": "cp1graft/1") to stdout.
//! Exit codes: 0 success, 1 verification failed, 2 parse or schema error,
//! 3 invalid mathematics, 4 integer θ rejected.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod json;
mod parse;
mod svg;

use parse::Mode;
use svg::Chart;

/// A command failed; `code` is the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn parse(message: String) -> Self {
        Self { code: 2, message }
    }

    pub fn math(message: String) -> Self {
        Self { code: 3, message }
    }

    pub fn forbidden(message: String) -> Self {
        Self { code: 4, message }
    }

    pub fn from_core_math(e: cp1graft_core::Error) -> Self {
        Self::math(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "cp1graft",
    version,
    about = "Elliptic circle configurations and grafting on the Riemann sphere"
)]
struct Cli {
    /// Force one interpretation of numeric literals: `exact` accepts only
    /// pi-rational forms like 3/2pi, `float` reads everything as radians.
    #[arg(long, value_enum, global = true)]
    mode: Option<Mode>,

    /// Residual tolerance for verify.
    #[arg(long, global = true, default_value_t = 1e-5)]
    tol: f64,

    /// Output file (the SVG target for render).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a Möbius map given as a 2x2 complex matrix, e.g. "[[0,1],[-1,0]]".
    ClassifyMap {
        /// JSON matrix; entries are numbers or [re, im] pairs.
        matrix: String,
    },
    /// Split a cone-angle index triple into an atomic immersion and a multicurve.
    Decompose {
        /// First index, e.g. 9pi, 7/2pi, or 4.71 (radians).
        index_a: String,
        /// Second index.
        index_b: String,
        /// Third index.
        index_c: String,
    },
    /// Draw a circle configuration to SVG (requires --out).
    Render {
        /// Input JSON file; "-" or nothing reads stdin. Accepts either
        /// {"schema":"cp1graft/1","angles":[...]} or {... ,"circles":[{a,b,c},...]}.
        input: Option<String>,
        /// Chart to draw in: the plane, or a stereographic view of the sphere.
        #[arg(long, value_enum, default_value_t = Chart::Plane)]
        chart: Chart,
    },
    /// Integrate the hypergeometric monodromy for a θ triple and compare
    /// each trace against its closed form.
    Verify {
        /// θ at the first singular point, e.g. 1/2 or 0.37.
        theta_a: String,
        /// θ at the second singular point.
        theta_b: String,
        /// θ at the third singular point.
        theta_c: String,
    },
}

fn run(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::ClassifyMap { matrix } => commands::classify_map(matrix),
        Command::Decompose {
            index_a,
            index_b,
            index_c,
        } => commands::decompose_cmd(
            [index_a.as_str(), index_b.as_str(), index_c.as_str()],
            cli.mode,
        ),
        Command::Render { input, chart } => {
            commands::render_cmd(input.as_deref(), *chart, cli.out.as_deref(), cli.mode)
        }
        Command::Verify {
            theta_a,
            theta_b,
            theta_c,
        } => commands::verify_cmd(
            [theta_a.as_str(), theta_b.as_str(), theta_c.as_str()],
            cli.tol,
            cli.mode,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(failure) => {
            eprintln!("cp1graft: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
