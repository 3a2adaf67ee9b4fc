use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fricke_cli::{
    embedded_golden_rows, graph_stats, orbit_dot, read_rows, rows_csv, search_table, verify_rows, OrbitRow,
    EXIT_MISMATCH, EXIT_SEARCH_FAILED,
};
use fricke_core::cosine_sums::{self, DenSpec};
use fricke_core::fricke_action::canonical_key;
use fricke_core::orbit_search::{cayley_orbit, full_search, golden_row, SearchOptions, SearchTables};
use fricke_core::parameter_maps::{
    apply_bt, apply_bt_omega, apply_word, omega_from_theta, omega_word, theta_candidates_for_omega, BtName, Theta,
};
use fricke_core::trig_field::{CosSum, RationalAngle};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "fricke", version, about = "Finite orbits of the braid-type action on the Fricke cubic")]
struct Cli {
    /// Worker threads for the search.
    #[arg(long, global = true, env = "FRICKE_THREADS")]
    threads: Option<usize>,
    /// Float tolerance for dictionary lookups.
    #[arg(long, global = true, default_value_t = 1e-8)]
    eps: f64,
    /// Skip the exact re-check of every float closure.
    #[arg(long, global = true)]
    no_exact_verify: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run the exhaustive search and print the orbit table.
    Search {
        /// Configuration classes to enumerate.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        classes: Vec<u8>,
    },
    /// Compare search results with the golden table; exit 2 on any difference.
    Verify {
        /// Golden rows (JSON array or search table); defaults to the embedded table.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Saved search table to check instead of running the search.
        #[arg(long)]
        results: Option<PathBuf>,
    },
    /// Orbit graph of a golden row, as DOT (default) or JSON statistics.
    Graph { id: usize },
    /// Irreducible vanishing cosine sums.
    Cosine {
        #[arg(long)]
        n: usize,
        /// All denominators up to this bound.
        #[arg(long, conflicts_with = "divisors_of")]
        den_bound: Option<i64>,
        /// Denominators dividing this number.
        #[arg(long)]
        divisors_of: Option<i64>,
        /// Sums of roots of unity instead of cosines.
        #[arg(long)]
        unity: bool,
        #[arg(long, default_value_t = cosine_sums::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Exponent tuples inducing the parameters of a golden row.
    Theta {
        #[arg(long)]
        orbit: usize,
        #[arg(long, default_value_t = 30)]
        max_den: i64,
    },
    /// Orbit on the Cayley cubic through `(-2cos pi(rY+rZ), 2cos pi rY, 2cos pi rZ)`.
    Cayley { ry: String, rz: String },
    /// Apply a Backlund transformation to an exponent tuple `a,b,c,d`.
    Bt {
        name: String,
        #[arg(allow_hyphen_values = true)]
        theta: String,
    },
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn parse_angle(s: &str) -> Result<RationalAngle> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    Ok(RationalAngle::new(n.trim().parse()?, d.trim().parse()?)?)
}

fn strs(v: &[CosSum]) -> Vec<String> {
    v.iter().map(|c| c.canonical().to_string()).collect()
}

fn search_opts(cli: &Cli, classes: Vec<u8>) -> Result<SearchOptions> {
    if cli.threads == Some(0) {
        bail!("--threads must be at least 1");
    }
    let tables = SearchTables::new();
    let gap = tables.dicts.iter().map(|d| d.min_gap()).fold(f64::INFINITY, f64::min);
    if !(cli.eps > 0.0 && cli.eps < gap / 2.0) {
        bail!("--eps must lie in (0, {}) (half the smallest dictionary gap)", gap / 2.0);
    }
    Ok(SearchOptions { threads: cli.threads, eps: cli.eps, exact_verify: !cli.no_exact_verify, classes })
}

fn cmd_search(cli: &Cli, classes: Vec<u8>) -> Result<Output> {
    let opts = search_opts(cli, classes)?;
    let report = full_search(&opts)?;
    let table = search_table(&report, opts.exact_verify)?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&table)?,
        Format::Csv => rows_csv(&table.orbits)?,
        Format::Dot => bail!("search has no DOT output"),
    };
    let failed = report.cap_exceeded() > 0 || !report.discrepancies.is_empty();
    Ok(Output { text, code: if failed { EXIT_SEARCH_FAILED as u8 } else { 0 } })
}

fn cmd_verify(cli: &Cli, golden: Option<&PathBuf>, results: Option<&PathBuf>) -> Result<Output> {
    let golden_rows = match golden {
        Some(p) => read_rows(&std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)?,
        None => embedded_golden_rows()?,
    };
    let found = match results {
        Some(p) => {
            let rows = read_rows(&std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)?;
            rows.iter()
                .map(|r| {
                    let orb = r.close()?;
                    Ok(canonical_key(&orb.points, &orb.omega))
                })
                .collect::<Result<Vec<_>>>()?
        }
        None => {
            let opts = search_opts(cli, vec![1, 2, 3, 4])?;
            let report = full_search(&opts)?;
            if report.cap_exceeded() > 0 || !report.discrepancies.is_empty() {
                return Ok(Output { text: pretty(&report.discrepancies)?, code: EXIT_SEARCH_FAILED as u8 });
            }
            report.orbits.into_iter().map(|o| o.key).collect()
        }
    };
    let rep = verify_rows(&golden_rows, &found)?;
    let code = if rep.ok() { 0 } else { EXIT_MISMATCH as u8 };
    Ok(Output { text: pretty(&rep)?, code })
}

fn golden(id: usize) -> Result<OrbitRow> {
    let row = golden_row(id).ok_or_else(|| anyhow!("no golden row {id} (rows are 1..=45)"))?;
    OrbitRow::from_golden(row)
}

fn cmd_graph(cli: &Cli, id: usize) -> Result<Output> {
    let orb = golden(id)?.close()?;
    match cli.format.unwrap_or(Format::Dot) {
        Format::Dot => Ok(Output::ok(orbit_dot(&orb, &format!("orbit {id}"))?)),
        Format::Json => Ok(Output::ok(pretty(&graph_stats(&orb)?)?)),
        Format::Csv => bail!("graph supports --format dot or json"),
    }
}

fn cmd_cosine(n: usize, den_bound: Option<i64>, divisors_of: Option<i64>, unity: bool, budget: u128) -> Result<Output> {
    let dens = match (den_bound, divisors_of) {
        (Some(b), None) => DenSpec::AtMost(b),
        (None, Some(m)) => DenSpec::DivisorsOf(m),
        _ => bail!("give exactly one of --den-bound and --divisors-of"),
    };
    if unity {
        let sums = cosine_sums::enumerate_unity_sums(n, dens, budget)?;
        let rows: Vec<_> = sums
            .iter()
            .map(|t| json!({"n": t.len(), "phis": t.iter().map(|p| format!("{}/{}", p.numer(), p.denom())).collect::<Vec<_>>()}))
            .collect();
        return Ok(Output::ok(pretty(&rows)?));
    }
    Ok(Output::ok(pretty(&cosine_sums::enumerate(n, dens, budget)?)?))
}

fn theta_strs(t: &Theta) -> Vec<String> {
    t.0.iter().map(|r| r.to_string()).collect()
}

fn cmd_theta(id: usize, max_den: i64) -> Result<Output> {
    let row = golden_row(id).ok_or_else(|| anyhow!("no golden row {id} (rows are 1..=45)"))?;
    let om = row.params()?;
    let sol = Theta::from_pairs(row.theta);
    // carry the listed exponents onto this row's parameters
    let mapped = omega_word(&omega_from_theta(&sol), &om).map(|w| apply_word(&w, &sol).normalized());
    let cands = theta_candidates_for_omega(&om, max_den);
    let rows: Vec<_> = cands
        .iter()
        .map(|t| {
            let mut v = json!({"theta": theta_strs(t)});
            if Some(*t) == mapped {
                v["solution"] = json!(id);
            }
            v
        })
        .collect();
    Ok(Output::ok(pretty(&rows)?))
}

fn cmd_cayley(ry: &str, rz: &str) -> Result<Output> {
    let orb = cayley_orbit(parse_angle(ry)?, parse_angle(rz)?)?;
    let residual_zero = orb.points.iter().all(|p| fricke_core::fricke_action::fricke_residual(p, &orb.omega).is_zero());
    let points: Vec<Vec<String>> = orb.points.iter().map(|p| strs(&p.0)).collect();
    Ok(Output::ok(pretty(&json!({
        "size": orb.len(),
        "omega": ["0", "0", "0"],
        "omega4_minus": "4",
        "points": points,
        "residuals_zero": residual_zero,
    }))?))
}

fn cmd_bt(name: &str, theta: &str) -> Result<Output> {
    let b: BtName = name.parse()?;
    let t: Theta = theta.parse()?;
    let img = apply_bt(b, &t);
    let om = omega_from_theta(&t);
    let om2 = apply_bt_omega(b, &om);
    Ok(Output::ok(pretty(&json!({
        "name": b.name(),
        "theta": theta_strs(&t),
        "image": theta_strs(&img),
        "omega": strs(&om.w),
        "omega_image": strs(&om2.w),
        "omega4": om.w4.canonical().to_string(),
    }))?))
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Search { classes } => cmd_search(cli, classes.clone()),
        Cmd::Verify { golden, results } => cmd_verify(cli, golden.as_ref(), results.as_ref()),
        Cmd::Graph { id } => cmd_graph(cli, *id),
        Cmd::Cosine { n, den_bound, divisors_of, unity, budget } => {
            cmd_cosine(*n, *den_bound, *divisors_of, *unity, *budget)
        }
        Cmd::Theta { orbit, max_den } => cmd_theta(*orbit, *max_den),
        Cmd::Cayley { ry, rz } => cmd_cayley(ry, rz),
        Cmd::Bt { name, theta } => cmd_bt(name, theta),
    }
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let out = run(&cli)?;
    match &cli.out {
        Some(p) => std::fs::write(p, &out.text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(out.text.as_bytes())?,
    }
    Ok(ExitCode::from(out.code))
}
