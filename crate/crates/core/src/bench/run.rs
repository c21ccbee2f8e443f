use std::str::FromStr;
use std::time::Instant;

use super::family::{expand_family, TestFamily};
use super::report::{RunReport, Status};
use super::BenchError;
use crate::baselines::{mc_integrate, reference_integral, relative_error, stp_integrate_capped, McConfig, STP_CAP};
use crate::engine::{mdi_integrate, MdiConfig, Residual};
use crate::quad::{Domain, GaussCounting, RuleKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Mdi,
    Stp,
    Mc,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Mdi => "mdi",
            Method::Stp => "stp",
            Method::Mc => "mc",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mdi" => Ok(Method::Mdi),
            "stp" => Ok(Method::Stp),
            "mc" => Ok(Method::Mc),
            _ => Err(format!("unknown method `{s}` (expected mdi, stp or mc)")),
        }
    }
}

/// Settings shared by single runs and sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub m: usize,
    pub rule: RuleKind,
    pub samples: u64,
    pub seed: u64,
    pub max_monomials: usize,
    pub residual: Residual,
    pub gauss_counting: GaussCounting,
    /// Timed repetitions; the median is reported.
    pub repetitions: usize,
    /// Overrides the family's default domain.
    pub domain: Option<Domain>,
    pub stp_cap: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 11,
            m: 1,
            rule: RuleKind::Simpson,
            samples: 1_000_000,
            seed: 0,
            max_monomials: 100_000,
            residual: Residual::Iterate,
            gauss_counting: GaussCounting::Points,
            repetitions: 3,
            domain: None,
            stp_cap: STP_CAP,
        }
    }
}

impl RunConfig {
    pub fn mdi_config(&self) -> MdiConfig {
        MdiConfig {
            max_monomials: self.max_monomials,
            residual: self.residual,
            gauss_counting: self.gauss_counting,
            ..MdiConfig::new(self.n, self.m, self.rule)
        }
    }
}

struct Outcome {
    value: f64,
    peak_monomials: Option<usize>,
    eval_count: Option<u64>,
}

fn execute(method: Method, g: &crate::Expr, domain: &Domain, cfg: &RunConfig) -> Result<Outcome, String> {
    match method {
        Method::Mdi => {
            let (value, trace) = mdi_integrate(g, domain, &cfg.mdi_config()).map_err(|e| e.to_string())?;
            Ok(Outcome {
                value,
                peak_monomials: Some(trace.peak_monomials),
                eval_count: Some(trace.eval_count),
            })
        }
        Method::Stp => {
            let n = cfg.gauss_counting.total_nodes(cfg.rule, cfg.n);
            let rules = domain.rules(cfg.rule, n).map_err(|e| e.to_string())?;
            let value = stp_integrate_capped(g, &rules, cfg.stp_cap).map_err(|e| e.to_string())?;
            Ok(Outcome {
                value,
                peak_monomials: None,
                eval_count: Some((n as u64).pow(domain.dim() as u32)),
            })
        }
        Method::Mc => {
            let mc = McConfig {
                samples: cfg.samples,
                seed: cfg.seed,
            };
            let est = mc_integrate(g, domain, &mc).map_err(|e| e.to_string())?;
            Ok(Outcome {
                value: est.estimate,
                peak_monomials: None,
                eval_count: Some(cfg.samples),
            })
        }
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k == 0 {
        0.0
    } else if k % 2 == 1 {
        xs[k / 2]
    } else {
        0.5 * (xs[k / 2 - 1] + xs[k / 2])
    }
}

/// Runs one method on one family. Method failures (budget, cap, overflow)
/// become a `failed` status; only an invalid family or dimension is an error.
pub fn run(method: Method, family: &TestFamily, d: usize, cfg: &RunConfig) -> Result<RunReport, BenchError> {
    let (g, default_domain) = expand_family(family, d)?;
    let domain = cfg.domain.clone().unwrap_or(default_domain);
    if domain.dim() != d {
        return Err(BenchError::BadDimension {
            family: family.name().to_string(),
            d,
        });
    }
    let reference = reference_integral(family, d, &domain).ok();

    let mut times = Vec::new();
    let mut outcome = Err(String::new());
    for _ in 0..cfg.repetitions.max(1) {
        let start = Instant::now();
        outcome = execute(method, &g, &domain, cfg);
        times.push(start.elapsed().as_secs_f64());
        if outcome.is_err() {
            break;
        }
    }
    let wall_seconds = (median(times) * 1e6).round() / 1e6;

    let tensor = method != Method::Mc;
    let mut report = RunReport {
        method,
        family: family.name().to_string(),
        d,
        n: tensor.then_some(cfg.gauss_counting.total_nodes(cfg.rule, cfg.n)),
        samples: (!tensor).then_some(cfg.samples),
        m: (method == Method::Mdi).then_some(cfg.m),
        r: tensor.then_some(cfg.rule),
        value: None,
        reference: reference.map(|r| r.value),
        rel_error: None,
        wall_seconds,
        peak_monomials: None,
        eval_count: None,
        seed: (!tensor).then_some(cfg.seed),
        status: Status::Ok,
    };
    match outcome {
        Ok(o) => {
            report.value = Some(o.value);
            report.rel_error = reference.map(|r| relative_error(o.value, &r));
            report.peak_monomials = o.peak_monomials;
            report.eval_count = o.eval_count;
        }
        Err(why) => report.status = Status::Failed(why),
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    D,
    N,
    M,
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "d" => Ok(SweepAxis::D),
            "N" | "n" => Ok(SweepAxis::N),
            "M" => Ok(SweepAxis::M),
            _ => Err(format!("unknown sweep axis `{s}` (expected d, N or M)")),
        }
    }
}

fn row_config(axis: SweepAxis, value: u64, d: usize, base: &RunConfig) -> (usize, RunConfig) {
    let mut cfg = base.clone();
    match axis {
        SweepAxis::D => {
            cfg.domain = None;
            (value as usize, cfg)
        }
        SweepAxis::N => {
            cfg.n = value as usize;
            (d, cfg)
        }
        SweepAxis::M => {
            cfg.samples = value;
            (d, cfg)
        }
    }
}

fn check_sorted(values: &[u64]) -> Result<(), BenchError> {
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(BenchError::UnsortedValues);
    }
    Ok(())
}

/// One report per value of `axis`, in order. `d` is used when the axis is
/// not `D`. Row failures are recorded and the sweep continues.
pub fn sweep(method: Method, family: &TestFamily, axis: SweepAxis, values: &[u64], d: usize, base: &RunConfig) -> Result<Vec<RunReport>, BenchError> {
    check_sorted(values)?;
    values
        .iter()
        .map(|&v| {
            let (d, cfg) = row_config(axis, v, d, base);
            run(method, family, d, &cfg)
        })
        .collect()
}

/// Like [`sweep`] but runs rows on separate threads. Timings are marked
/// `contended`.
pub fn sweep_parallel(method: Method, family: &TestFamily, axis: SweepAxis, values: &[u64], d: usize, base: &RunConfig) -> Result<Vec<RunReport>, BenchError> {
    check_sorted(values)?;
    let rows: Vec<Result<RunReport, BenchError>> = std::thread::scope(|s| {
        let handles: Vec<_> = values
            .iter()
            .map(|&v| {
                let (d, cfg) = row_config(axis, v, d, base);
                s.spawn(move || run(method, family, d, &cfg))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep row panicked")).collect()
    });
    rows.into_iter()
        .map(|r| {
            r.map(|mut rep| {
                if rep.status == Status::Ok {
                    rep.status = Status::Contended;
                }
                rep
            })
        })
        .collect()
}
