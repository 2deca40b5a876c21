use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use chasles::chasles::{extra_point, extra_point_via_eliminant, family_pq, is_chasles_configuration};
use chasles::classify::classify_planar_saturated_chasles;
use chasles::io::{
    parse_configuration, parse_points, parse_polynomial, parse_structure, ConfigurationJson, ExtraPointResponse,
    StructureJson,
};
use chasles::lattice::{mixed_volume, pick_counts};
use chasles::numeric::{count_torus_roots, solve_2d, SolverOptions};
use chasles::verify::{verify_paper, VerifyOptions};
use chasles::Error;

#[derive(Parser)]
#[command(name = "chasles", version, about = "Chasles configurations, extra points, and sparse root counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Tolerances {
    /// Relative residual a numeric root must reach.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Distance under which numeric roots are merged.
    #[arg(long, default_value_t = 1e-7)]
    cluster_tol: f64,
}

impl Tolerances {
    fn options(&self) -> SolverOptions {
        SolverOptions { tol: self.tol, cluster_tol: self.cluster_tol }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, volume, saturation, Pick counts and Chasles verdict of a configuration.
    Analyze {
        /// Configuration JSON file, or `-` for stdin.
        config: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Extra point from the product-of-roots formula (planar structures).
    ExtraPoint {
        /// Structure or single-configuration JSON file.
        structure: PathBuf,
        /// Points JSON file: `[["p/q", ...], ...]`.
        points: PathBuf,
    },
    /// Extra point read off eliminants (planar and three-dimensional structures).
    EliminantPoint { structure: PathBuf, points: PathBuf },
    /// Mixed volume of configurations, each repeated by its multiplicity.
    MixedVolume {
        configs: Vec<PathBuf>,
        /// Comma-separated multiplicities, one per configuration (default all 1).
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<usize>>,
    },
    /// Saturated planar Chasles configurations up to lattice equivalence.
    Classify {
        #[arg(long = "box", default_value_t = 4)]
        search_box: i64,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        /// Write the classes here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Torus roots of two planar polynomials, or root counts of random
    /// systems on two supports with `--supports`.
    Solve2d {
        first: PathBuf,
        second: PathBuf,
        /// Treat the inputs as configurations and count roots of random systems.
        #[arg(long)]
        supports: bool,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tolerances: Tolerances,
    },
    /// The quadrangle pair P_n, Q_n as a structure, with its mixed-volume check.
    Family { n: usize },
    /// Recomputes every published example and reports pass or fail.
    VerifyPaper {
        /// Comma-separated check names.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[command(flatten)]
        tolerances: Tolerances,
    },
}

enum Failure {
    Input(String),
    Degenerate(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_degeneracy() {
            Failure::Degenerate(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(s)
}

/// Writes a line to stdout; a closed pipe ends output quietly.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    say(&text);
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { config, json } => {
            let a = parse_configuration(&read(&config)?)?;
            let r = is_chasles_configuration(&a)?;
            let pick = if a.dim_ambient() == 2 { Some(pick_counts(&a)?) } else { None };
            if json {
                emit(&json!({
                    "d": r.dim,
                    "cardinality": r.cardinality,
                    "vol": r.vol,
                    "saturated": r.saturated,
                    "interior": pick.map(|p| p.0),
                    "boundary": pick.map(|p| p.1),
                    "chasles": r.is_chasles,
                    "N": r.n,
                }))?;
            } else {
                say(&format!("dim: {}", r.dim));
                say(&format!("points: {}", r.cardinality));
                say(&format!("vol: {}", r.vol));
                say(&format!("saturated: {}", yes_no(r.saturated)));
                if let Some((i, b)) = pick {
                    say(&format!("interior: {i}, boundary: {b}"));
                }
                if r.is_chasles {
                    say(&format!("Chasles: yes, N={}", r.n));
                } else {
                    say("Chasles: no");
                }
            }
        }
        Command::ExtraPoint { structure, points } => {
            let s = parse_structure(&read(&structure)?)?;
            let pts = parse_points(&read(&points)?)?;
            let r = extra_point(&s, &pts)?;
            if !r.certificates.iter().all(num_traits::Zero::is_zero) {
                return Err(Failure::Verification("certificate does not vanish".into()));
            }
            emit(&ExtraPointResponse::from(&r))?;
        }
        Command::EliminantPoint { structure, points } => {
            let s = parse_structure(&read(&structure)?)?;
            let pts = parse_points(&read(&points)?)?;
            let r = extra_point_via_eliminant(&s, &pts)?;
            if !r.certificates.iter().all(num_traits::Zero::is_zero) {
                return Err(Failure::Verification("certificate does not vanish".into()));
            }
            emit(&ExtraPointResponse::from(&r))?;
        }
        Command::MixedVolume { configs, partition } => {
            let cfgs =
                configs.iter().map(|p| Ok(parse_configuration(&read(p)?)?)).collect::<Result<Vec<_>, Failure>>()?;
            let mult = partition.unwrap_or_else(|| vec![1; cfgs.len()]);
            if mult.len() != cfgs.len() {
                return Err(Failure::Input(format!("{} multiplicities for {} configurations", mult.len(), cfgs.len())));
            }
            let entries: Vec<_> = cfgs.iter().zip(mult.iter().copied()).collect();
            emit(&json!({ "mixed_volume": mixed_volume(&entries)? }))?;
        }
        Command::Classify { search_box, max_vertices, out } => {
            if search_box < 1 || max_vertices < 3 {
                return Err(Failure::Input("need --box >= 1 and --max-vertices >= 3".into()));
            }
            let classes = classify_planar_saturated_chasles(search_box, max_vertices);
            let value = json!({
                "box": search_box,
                "max_vertices": max_vertices,
                "count": classes.len(),
                "classes": classes,
            });
            match out {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&value).map_err(|e| Failure::Input(e.to_string()))?;
                    std::fs::write(&path, text + "\n")
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    say(&format!("{} classes written to {}", classes.len(), path.display()));
                }
                None => emit(&value)?,
            }
        }
        Command::Solve2d { first, second, supports, trials, seed, tolerances } => {
            let opts = tolerances.options();
            if supports {
                let a = parse_configuration(&read(&first)?)?;
                let b = parse_configuration(&read(&second)?)?;
                emit(&count_torus_roots(&[&a, &b], trials, seed, &opts)?)?;
            } else {
                let f = parse_polynomial(&read(&first)?)?;
                let g = parse_polynomial(&read(&second)?)?;
                emit(&solve_2d(&f, &g, &opts)?)?;
            }
        }
        Command::Family { n } => {
            let s = family_pq(n)?;
            let report = s.check()?;
            let configs: Vec<ConfigurationJson> = s.configurations().iter().map(ConfigurationJson::from).collect();
            emit(&json!({
                "structure": StructureJson::from(&s),
                "lattice_points": configs.iter().map(|c| c.points.len()).collect::<Vec<_>>(),
                "report": report,
            }))?;
        }
        Command::VerifyPaper { only, json, seed, tolerances } => {
            let report = verify_paper(&VerifyOptions { seed, only, solver: tolerances.options() });
            if report.checks.is_empty() {
                return Err(Failure::Input("no check matches --only".into()));
            }
            if json {
                emit(&report)?;
            } else {
                say(report.render_text().trim_end());
            }
            if !report.all_passed() {
                return Err(Failure::Verification("some checks failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Degenerate(m)) => {
            eprintln!("degenerate: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(4)
        }
    }
}
