//! `tiltcalc`: exact wall, bound and moduli queries for rank-two sheaves on
//! P3, the quadric X2 and the del Pezzo threefolds X4, X5.
//!
//! Exit codes: 0 success, 2 parse error, 3 domain rejection, 4 verification
//! failure.

mod args;
mod commands;

use args::{parse_window, Config};
use clap::{Parser, Subcommand, ValueEnum};
use commands::Report;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use tilt_core::walls::BetaWindow;

const SCHEMA_VERSION: &str = "1";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plot,
}

#[derive(Parser)]
#[command(name = "tiltcalc", version, about = "Exact tilt-stability walls, c3 bounds and moduli dimensions")]
struct Cli {
    /// key=value file with defaults for rank_max, beta_window, min_radius_sq, samples
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Numerical walls for a character given as r,c,d,e@VARIETY
    Walls {
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        rank_max: Option<i64>,
        /// lo:hi, e.g. --beta-window=-2:-1/2
        #[arg(long, value_parser = window_arg, allow_hyphen_values = true)]
        beta_window: Option<BetaWindow>,
        #[arg(long, allow_hyphen_values = true)]
        min_radius_sq: Option<String>,
        /// samples per wall in plot output
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Maximal c3 of rank-two semistable sheaves over a range of c2
    C3max {
        variety: String,
        #[arg(allow_hyphen_values = true)]
        c1: String,
        #[arg(long, default_value = "0:10")]
        c2_range: String,
        /// assume the general-type hypotheses needed on X4 and X5
        #[arg(long)]
        general_type: bool,
    },
    /// Dimension of the moduli component of an extension series, e.g. `dim D@X2 m=-1`
    Dim {
        series: String,
        /// k=, m=, n= assignments
        params: Vec<String>,
    },
    /// Moduli space with maximal c3 on the quadric, e.g. `classify -1 2 @X2`
    Classify {
        #[arg(allow_hyphen_values = true)]
        c1: String,
        #[arg(allow_hyphen_values = true)]
        c2: String,
        variety: Option<String>,
    },
    /// Check the destabilizing walls of the extremal characters
    Verify {
        /// `all` or a case c,d such as 0,-2
        #[arg(long, default_value = "all", allow_hyphen_values = true)]
        lemma: String,
        /// lowest ch2 coefficient used by `all`
        #[arg(long, default_value_t = commands::DEFAULT_D_MIN, allow_hyphen_values = true)]
        d_min: i64,
    },
}

fn window_arg(s: &str) -> Result<BetaWindow, String> {
    parse_window(s).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> tilt_core::Result<Report> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if cli.format == Format::Plot && !matches!(cli.cmd, Cmd::Walls { .. }) {
        return Err(tilt_core::Error::Parse("plot format is only available for `walls`".into()));
    }
    match cli.cmd {
        Cmd::Walls { v, rank_max, beta_window, min_radius_sq, samples } => commands::walls(
            commands::WallsArgs { v, rank_max, window: beta_window, min_radius_sq, samples },
            &cfg,
        ),
        Cmd::C3max { variety, c1, c2_range, general_type } => commands::c3max(&variety, &c1, &c2_range, general_type),
        Cmd::Dim { series, params } => commands::dim(&series, &params),
        Cmd::Classify { c1, c2, variety } => commands::classify(&c1, &c2, variety.as_deref()),
        Cmd::Verify { lemma, d_min } => commands::verify(&lemma, d_min),
    }
}

fn render(r: &Report, format: Format) -> Result<String, Box<dyn std::error::Error>> {
    Ok(match format {
        Format::Json => {
            let env = json!({
                "schema_version": SCHEMA_VERSION,
                "command": r.command,
                "inputs": r.inputs,
                "results": r.results,
                "warnings": r.warnings,
            });
            serde_json::to_string_pretty(&env)? + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            w.write_record(&r.header)?;
            for row in &r.rows {
                w.write_record(row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Plot => {
            let mut w = csv::Writer::from_writer(vec![]);
            w.write_record(["wall_id", "beta_approx", "alpha_approx"])?;
            for (id, b, a) in r.plot.as_deref().unwrap_or_default() {
                w.write_record([id.clone(), format!("{b:.6}"), format!("{a:.6}")])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_parse() { 2 } else { 3 });
        }
    };
    let text = match render(&report, format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if std::io::stdout().write_all(text.as_bytes()).is_err() {
        return ExitCode::from(1);
    }
    if format != Format::Json {
        for w in &report.warnings {
            eprintln!("warning: {w}");
        }
    }
    if report.failed {
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    }
}
