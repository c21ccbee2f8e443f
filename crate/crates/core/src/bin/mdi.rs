//! Command-line harness: single runs, sweeps, power-law fits, table
//! reproduction and the MDI/STP equivalence check.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use mdi::bench::{
    emit_table, expand_family, fit_power_law, parse_csv, reproduce_table, run, sweep, sweep_parallel, table_ids, ConfigFile, Format, Method, RunConfig, SweepAxis,
    TestFamily,
};
use mdi::engine::Residual;
use mdi::quad::{Domain, GaussCounting, RuleKind};
use mdi::stp_equivalence_check;

#[derive(Parser)]
#[command(name = "mdi", version, about = "Multilevel dimension iteration quadrature benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one family (or --expr) with one method.
    Integrate,
    /// One run per value of a parameter.
    Sweep {
        /// Swept parameter: d, N or M.
        #[arg(long)]
        axis: SweepAxis,
        /// Comma-separated ascending values, or start:stop:step.
        #[arg(long)]
        values: String,
        /// Run rows concurrently; timings are flagged as contended.
        #[arg(long)]
        parallel_sweep: bool,
    },
    /// Least-squares fit of t = c x^p.
    Fit {
        /// CSV produced by `sweep`.
        #[arg(long, conflicts_with = "points")]
        input: Option<PathBuf>,
        /// Explicit points as `x:t,x:t,...`.
        #[arg(long)]
        points: Option<String>,
        /// Regressor column when reading CSV: d, N or M.
        #[arg(long, default_value = "d")]
        x: SweepAxis,
        /// Divide times by N^2 before fitting.
        #[arg(long)]
        fixed_n: Option<f64>,
    },
    /// Rerun a published table.
    Tables {
        id: Option<String>,
        /// List table ids.
        #[arg(long)]
        list: bool,
        /// Timed repetitions per row.
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
    },
    /// Compare MDI against the plain tensor-product sum.
    OracleCheck,
}

#[derive(Args, Default)]
struct Opts {
    /// Config file with `key = value` lines; CLI flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    method: Option<Method>,
    /// Named integrand (alt_exp, prod_rational, gauss, cos_sum, alt_exp_sq, exp_radial2, sin_phase2, exp_radial3, sin_phase3).
    #[arg(long, global = true, conflicts_with = "expr")]
    family: Option<TestFamily>,
    /// Integrand in the expression language, e.g. "exp(x1*x2) + x3^2".
    #[arg(long, global = true)]
    expr: Option<String>,
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Quadrature nodes per axis.
    #[arg(long = "N", global = true)]
    n: Option<usize>,
    /// Axes bound per iteration.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Rule: trap, simpson, gauss2, midpoint (or 1-4).
    #[arg(long, global = true)]
    r: Option<RuleKind>,
    /// Interval `a,b`; once for all axes or once per axis.
    #[arg(long, global = true, allow_hyphen_values = true)]
    domain: Vec<String>,
    #[arg(long, global = true)]
    samples: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Maximum number of monomials held at once.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true)]
    residual: Option<Residual>,
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// How N is read for gauss2: total points or panels.
    #[arg(long = "gauss-n", global = true)]
    gauss_n: Option<GaussCounting>,
}

type CliResult<T> = Result<T, String>;

fn pick<T: FromStr>(flag: Option<T>, file: &ConfigFile, key: &str) -> CliResult<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get_parsed(key).map_err(|e| e.to_string()),
    }
}

fn parse_interval(s: &str) -> CliResult<(f64, f64)> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("bad interval `{s}` (expected a,b)"))?;
    let a = a.trim().parse::<f64>().map_err(|e| format!("bad interval `{s}`: {e}"))?;
    let b = b.trim().parse::<f64>().map_err(|e| format!("bad interval `{s}`: {e}"))?;
    Ok((a, b))
}

struct Resolved {
    method: Method,
    family: TestFamily,
    d: Option<usize>,
    format: Format,
    out: Option<PathBuf>,
    cfg: RunConfig,
    intervals: Vec<(f64, f64)>,
}

impl Resolved {
    fn new(o: Opts) -> CliResult<Resolved> {
        let file = match &o.config {
            Some(p) => ConfigFile::load(p).map_err(|e| e.to_string())?,
            None => ConfigFile::default(),
        };
        let family = match (o.family, o.expr) {
            (Some(f), _) => f,
            (None, Some(e)) => TestFamily::Custom(e),
            (None, None) => match (file.get("family"), file.get("expr")) {
                (Some(f), _) => f.parse().map_err(|e: mdi::bench::BenchError| e.to_string())?,
                (None, Some(e)) => TestFamily::Custom(e.to_string()),
                (None, None) => TestFamily::AltExp,
            },
        };
        let domain_text: Vec<String> = if o.domain.is_empty() {
            file.get("domain").map(|s| s.split(';').map(str::to_string).collect()).unwrap_or_default()
        } else {
            o.domain
        };
        let intervals = domain_text.iter().map(|s| parse_interval(s)).collect::<CliResult<Vec<_>>>()?;
        let def = RunConfig::default();
        let cfg = RunConfig {
            n: pick(o.n, &file, "N")?.unwrap_or(def.n),
            m: pick(o.m, &file, "m")?.unwrap_or(def.m),
            rule: pick(o.r, &file, "r")?.unwrap_or(def.rule),
            samples: pick(o.samples, &file, "samples")?.unwrap_or(def.samples),
            seed: pick(o.seed, &file, "seed")?.unwrap_or(def.seed),
            max_monomials: pick(o.budget, &file, "budget")?.unwrap_or(def.max_monomials),
            residual: pick(o.residual, &file, "residual")?.unwrap_or(def.residual),
            gauss_counting: pick(o.gauss_n, &file, "gauss_n")?.unwrap_or(def.gauss_counting),
            ..def
        };
        Ok(Resolved {
            method: pick(o.method, &file, "method")?.unwrap_or(Method::Mdi),
            d: pick(o.d, &file, "d")?,
            format: pick(o.format, &file, "format")?.unwrap_or_default(),
            out: o.out.or_else(|| file.get("out").map(PathBuf::from)),
            family,
            cfg,
            intervals,
        })
    }

    fn dim(&self) -> CliResult<usize> {
        if let Some(d) = self.d.or(self.family.fixed_dim()) {
            return Ok(d);
        }
        if let TestFamily::Custom(src) = &self.family {
            let g = mdi::parse(src).map_err(|e| e.to_string())?;
            return Ok(g.max_var().map_or(1, |v| v.index() as usize));
        }
        if self.intervals.len() > 1 {
            return Ok(self.intervals.len());
        }
        Err(format!("--d is required for family `{}`", self.family))
    }

    fn config_for(&self, d: usize) -> CliResult<RunConfig> {
        let mut cfg = self.cfg.clone();
        cfg.domain = match self.intervals.len() {
            0 => None,
            1 => Some(Domain::new(vec![self.intervals[0]; d]).map_err(|e| e.to_string())?),
            k if k == d => Some(Domain::new(self.intervals.clone()).map_err(|e| e.to_string())?),
            k => return Err(format!("{k} --domain intervals given for d = {d}")),
        };
        Ok(cfg)
    }

    fn write(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn parse_values(s: &str) -> CliResult<Vec<u64>> {
    let bad = |e: std::num::ParseIntError| format!("bad value list `{s}`: {e}");
    if let [a, b, step] = s.split(':').collect::<Vec<_>>()[..] {
        let (a, b, step): (u64, u64, u64) = (a.parse().map_err(bad)?, b.parse().map_err(bad)?, step.parse().map_err(bad)?);
        if step == 0 {
            return Err("range step must be positive".into());
        }
        return Ok((a..=b).step_by(step as usize).collect());
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse().map_err(bad)).collect()
}

fn parse_points(s: &str) -> CliResult<Vec<(f64, f64)>> {
    s.split(',')
        .map(|p| {
            let (x, t) = p.split_once(':').ok_or_else(|| format!("bad point `{p}` (expected x:t)"))?;
            Ok((x.trim().parse().map_err(|e| format!("bad point `{p}`: {e}"))?, t.trim().parse().map_err(|e| format!("bad point `{p}`: {e}"))?))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<ExitCode> {
    let r = Resolved::new(cli.opts)?;
    match cli.command {
        Command::Integrate => {
            let d = r.dim()?;
            let report = run(r.method, &r.family, d, &r.config_for(d)?).map_err(|e| e.to_string())?;
            r.write(&emit_table(std::slice::from_ref(&report), r.format))?;
            if let mdi::bench::Status::Failed(why) = &report.status {
                eprintln!("run failed: {why}");
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Sweep { axis, values, parallel_sweep } => {
            let values = parse_values(&values)?;
            let d = if axis == SweepAxis::D { 0 } else { r.dim()? };
            let cfg = if axis == SweepAxis::D { r.cfg.clone() } else { r.config_for(d)? };
            let f = if parallel_sweep { sweep_parallel } else { sweep };
            let rows = f(r.method, &r.family, axis, &values, d, &cfg).map_err(|e| e.to_string())?;
            r.write(&emit_table(&rows, r.format))?;
        }
        Command::Fit { input, points, x, fixed_n } => {
            let pts = match (input, points) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    let rows = parse_csv(&text).map_err(|e| e.to_string())?;
                    rows.iter()
                        .filter(|row| !row.status.is_failed())
                        .map(|row| {
                            let xv = match x {
                                SweepAxis::D => Some(row.d as f64),
                                SweepAxis::N => row.n.map(|n| n as f64),
                                SweepAxis::M => row.samples.map(|m| m as f64),
                            };
                            xv.map(|xv| (xv, row.wall_seconds)).ok_or_else(|| "CSV row lacks the requested column".to_string())
                        })
                        .collect::<CliResult<Vec<_>>>()?
                }
                (None, Some(p)) => parse_points(&p)?,
                (None, None) => return Err("fit needs --input or --points".into()),
            };
            let fit = fit_power_law(&pts, fixed_n).map_err(|e| e.to_string())?;
            let text = match r.format {
                Format::Csv => format!("coefficient,exponent,r_square,fixed_n\n{},{},{},{}\n", fit.coefficient, fit.exponent, fit.r_square, fixed_n.map(|n| n.to_string()).unwrap_or_default()),
                Format::Markdown => {
                    let lead = fixed_n.map(|n| format!(" * {n}^2")).unwrap_or_default();
                    format!("t = {:.4e}{lead} * x^{:.4}  (R-square {:.4})\n", fit.coefficient, fit.exponent, fit.r_square)
                }
            };
            r.write(&text)?;
        }
        Command::Tables { id, list, repetitions } => {
            if list || id.is_none() {
                r.write(&format!("{}\n", table_ids().join("\n")))?;
                return Ok(ExitCode::SUCCESS);
            }
            let base = RunConfig {
                repetitions,
                ..r.cfg.clone()
            };
            let run = reproduce_table(id.as_deref().unwrap_or_default(), &base).map_err(|e| e.to_string())?;
            r.write(&run.render(r.format))?;
        }
        Command::OracleCheck => {
            let d = r.dim()?;
            let (g, default_domain) = expand_family(&r.family, d).map_err(|e| e.to_string())?;
            let domain = r.config_for(d)?.domain.unwrap_or(default_domain);
            let eq = stp_equivalence_check(&g, &domain, &r.cfg.mdi_config()).map_err(|e| e.to_string())?;
            let diff = (eq.mdi - eq.stp).abs();
            r.write(&format!("mdi,stp,abs_diff,passed\n{:e},{:e},{:e},{}\n", eq.mdi, eq.stp, diff, eq.passed))?;
            if !eq.passed {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
