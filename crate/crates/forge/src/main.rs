use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use zmc_core::codim2::Immersion;
use zmc_core::decomp::Variant;
use zmc_core::wick::{self, Direction, WickReport, WickRule};
use zmc_core::{catalog, Error};
use zmc_forge::config::{GridSpec, CONFIG_ENV};
use zmc_forge::report::SCHEMA_VERSION;
use zmc_forge::suites::{self, SuiteOptions, SUITES};
use zmc_forge::sweep::{self, SweepTarget};
use zmc_forge::{classify, mesh, Config, ExitStatus, ForgeError, Result};

#[derive(Parser)]
#[command(name = "zmc-forge", version, about = "Verify, sample and sweep zero mean curvature surfaces")]
struct Cli {
    /// TOML config; defaults apply to every missing key.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite (or `all`) and write its JSON report.
    Verify {
        suite: String,
        /// Report file; a directory for `all`. Without it the JSON goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Only this decomposition variant: statement, proof or rederived.
        #[arg(long)]
        variant: Option<Variant>,
        /// With `thm4.1`, only this part (1 to 4).
        #[arg(long)]
        part: Option<u8>,
    },
    /// Sample a catalog surface into an OBJ mesh and a CSV sidecar.
    Sample {
        surface: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Convergence sweep of a series against its closed form.
    Sweep {
        /// er, thm3.1 or thm3.2
        target: SweepTarget,
        /// `a,b` for er, `x,y` for thm3.1, `y,z` for thm3.2
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        point: [f64; 2],
        #[arg(long)]
        theta: Option<f64>,
        /// Comma-separated pair counts; the config n_list by default.
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Arctangent pair series at (a, b) for N = 1, 2, 5, 10, ... up to n-max.
    ErSweep {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify a surface under the F, G or H immersion on a grid.
    Classify {
        #[arg(long)]
        immersion: Immersion,
        #[arg(long)]
        surface: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Grid CSV; the summary JSON is written next to it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a Wick rotation rule and report realness and residuals.
    Wick {
        #[arg(long)]
        from: String,
        /// 2.1, 2.2 or 2.3
        #[arg(long)]
        rule: WickRule,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Family angle for phi, psi and chi.
    #[arg(long)]
    theta: Option<f64>,
    /// `x_min,x_max,y_min,y_max`; the config grid by default.
    #[arg(long, value_parser = parse_bounds, allow_hyphen_values = true)]
    bounds: Option<[f64; 4]>,
    /// `nx,ny` or a single count for both.
    #[arg(long, value_parser = parse_counts)]
    grid: Option<[usize; 2]>,
    #[arg(long)]
    margin: Option<f64>,
}

impl GridArgs {
    fn resolve(&self, cfg: &Config) -> GridSpec {
        let mut g = cfg.grid;
        if let Some([x0, x1, y0, y1]) = self.bounds {
            (g.x_min, g.x_max, g.y_min, g.y_max) = (x0, x1, y0, y1);
        }
        if let Some([nx, ny]) = self.grid {
            (g.nx, g.ny) = (nx, ny);
        }
        if let Some(m) = self.margin {
            g.margin = m;
        }
        g
    }
}

fn floats(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| e.to_string())?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", v.len()));
    }
    Ok(v)
}

fn parse_pair(s: &str) -> std::result::Result<[f64; 2], String> {
    floats(s, 2).map(|v| [v[0], v[1]])
}

fn parse_bounds(s: &str) -> std::result::Result<[f64; 4], String> {
    floats(s, 4).map(|v| [v[0], v[1], v[2], v[3]])
}

fn parse_counts(s: &str) -> std::result::Result<[usize; 2], String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e: std::num::ParseIntError| e.to_string())?;
    match v[..] {
        [n] => Ok([n, n]),
        [nx, ny] => Ok([nx, ny]),
        _ => Err("expected n or nx,ny".into()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| ForgeError::io(path, e))
}

fn json_line<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn verify(cfg: &Config, suite: &str, out: Option<&Path>, variant: Option<Variant>) -> Result<ExitStatus> {
    let opts = SuiteOptions { variant };
    if suite != "all" {
        let rep = suites::run_suite(suite, cfg, &opts)?;
        match out {
            Some(p) => write_file(p, &rep.to_json()?)?,
            None => print!("{}", rep.to_json()?),
        }
        eprintln!("{}", rep.summary_line());
        for r in rep.failures().take(10) {
            eprintln!("  failed: {} gap {:e} tol {:e}", r.name, r.gap, r.tol);
        }
        return Ok(ExitStatus::from_pass(rep.pass));
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| ForgeError::io(dir, e))?;
    }
    let mut all_pass = true;
    // the thm4.1 alias would repeat its parts
    for id in SUITES.iter().filter(|s| **s != "thm4.1") {
        let rep = suites::run_suite(id, cfg, &opts)?;
        if let Some(dir) = out {
            write_file(&dir.join(format!("{id}.json")), &rep.to_json()?)?;
        }
        eprintln!("{}", rep.summary_line());
        all_pass &= rep.pass;
    }
    Ok(ExitStatus::from_pass(all_pass))
}

#[derive(Serialize)]
struct WickOutput<'a> {
    schema_version: &'static str,
    seed: u64,
    theta: Option<f64>,
    report: &'a WickReport,
}

fn wick_cmd(
    cfg: &Config,
    from: &str,
    rule: WickRule,
    inverse: bool,
    theta: Option<f64>,
    out: Option<&Path>,
) -> Result<ExitStatus> {
    let hf = catalog::by_id(from, theta)?;
    let dir = if inverse { Direction::Inverse } else { Direction::Forward };
    let probe = cfg.boxes.wick;
    // hypothesis failures are domain errors, a non-real result is a verification failure
    match wick::transform(&hf, rule, dir, &probe) {
        Err(Error::NotReal(_)) | Ok(_) => {}
        Err(e) => return Err(e.into()),
    }
    let n = cfg.sizes.wick_grid * cfg.sizes.wick_grid;
    let rep = wick::wick_report(&hf, rule, dir, &probe, n, cfg.seed, cfg.tolerances.wick_residual);
    let text = json_line(&WickOutput { schema_version: SCHEMA_VERSION, seed: cfg.seed, theta, report: &rep })?;
    match out {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    eprintln!(
        "{} wick {} {rule}{}: max |Im| {:.3e}, max residual {:.3e}",
        if rep.pass { "PASS" } else { "FAIL" },
        hf.id(),
        if inverse { " inverse" } else { "" },
        rep.max_imag,
        rep.max_residual
    );
    Ok(ExitStatus::from_pass(rep.pass))
}

fn run(cli: Cli) -> Result<ExitStatus> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    match cli.cmd {
        Cmd::Verify { suite, out, variant, part } => {
            let suite = match (suite.as_str(), part) {
                (_, None) => suite,
                ("thm4.1", Some(k @ 1..=4)) => format!("thm4.1-p{k}"),
                (_, Some(k)) => {
                    return Err(ForgeError::Config(format!("--part {k} needs suite thm4.1 and a part in 1..=4")))
                }
            };
            verify(&cfg, &suite, out.as_deref(), variant)
        }
        Cmd::Sample { surface, grid, out } => {
            let hf = catalog::by_id(&surface, grid.theta)?;
            let spec = grid.resolve(&cfg);
            let m = mesh::sample_mesh(&hf, &spec)?;
            let header =
                format!("{} on {spec:?}\n{} vertices, {} triangles", hf.id(), m.vertices.len(), m.triangles.len());
            let csv = mesh::write_mesh(&m, &out, &header)?;
            eprintln!(
                "wrote {} ({} vertices, {} triangles) and {}; max residual {:.3e}",
                out.display(),
                m.vertices.len(),
                m.triangles.len(),
                csv.display(),
                m.max_residual()
            );
            Ok(ExitStatus::Pass)
        }
        Cmd::Sweep { target, point, theta, n_list, out } => {
            let ns = n_list.unwrap_or_else(|| cfg.n_list.clone());
            let rows = sweep::sweep(target, point, theta, &ns)?;
            sweep::write_csv(&rows, &out)?;
            let ok = rows.iter().all(|r| r.gap <= r.tail_bound);
            eprintln!("wrote {} rows to {}; gap under tail bound: {ok}", rows.len(), out.display());
            Ok(ExitStatus::from_pass(ok))
        }
        Cmd::ErSweep { a, b, n_max, out } => {
            if n_max == 0 {
                return Err(ForgeError::Config("--n-max must be positive".into()));
            }
            let rows = sweep::sweep(SweepTarget::Er, [a, b], None, &sweep::decade_list(n_max))?;
            sweep::write_csv(&rows, &out)?;
            let ok = rows.iter().all(|r| r.gap <= r.tail_bound);
            eprintln!("wrote {} rows to {}; gap under tail bound: {ok}", rows.len(), out.display());
            Ok(ExitStatus::from_pass(ok))
        }
        Cmd::Classify { immersion, surface, grid, out } => {
            let hf = catalog::by_id(&surface, grid.theta)?;
            let (rows, summary) = classify::classify_grid(&hf, immersion, &grid.resolve(&cfg), cfg.tolerances.class)?;
            classify::write_csv(&rows, &out)?;
            let summary_path = out.with_extension("summary.json");
            write_file(&summary_path, &json_line(&summary)?)?;
            eprintln!("wrote {} and {}: {:?}", out.display(), summary_path.display(), summary.counts);
            Ok(ExitStatus::Pass)
        }
        Cmd::Wick { from, rule, inverse, theta, out } => wick_cmd(&cfg, &from, rule, inverse, theta, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = run(cli).unwrap_or_else(|e| {
        eprintln!("zmc-forge: {e}");
        ExitStatus::Error
    });
    ExitCode::from(status.code())
}
