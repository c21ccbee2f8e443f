//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.
//!
//! Run with `cargo test --release --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use mdi::baselines::{mc_integrate, reference_integral, relative_error, stp_integrate, McConfig};
use mdi::bench::{fit_power_law, run, sweep, Method, RunConfig, Status, SweepAxis, TestFamily};
use mdi::engine::{mdi_integrate, stp_equivalence_check, MdiConfig, MdiError};
use mdi::expr::parse;
use mdi::quad::{Domain, RuleKind};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// True when `got` agrees with `printed` to `digits` significant digits.
fn sig_digits(got: f64, printed: f64, digits: i32) -> bool {
    let ulp = 10f64.powi(printed.abs().log10().floor() as i32 - digits + 1);
    (got - printed).abs() <= 0.5 * ulp * (1.0 + 1e-9)
}

fn quick(n: usize, m: usize, rule: RuleKind) -> RunConfig {
    RunConfig {
        n,
        m,
        rule,
        repetitions: 1,
        ..RunConfig::default()
    }
}

fn err_of(method: Method, family: &TestFamily, d: usize, cfg: &RunConfig) -> Result<f64, String> {
    let r = run(method, family, d, cfg).map_err(|e| e.to_string())?;
    match (&r.status, r.rel_error) {
        (Status::Failed(why), _) => Err(why.clone()),
        (_, Some(e)) => Ok(e),
        _ => Err("no reference".into()),
    }
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let num: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    num / den
}

fn table1() -> Outcome {
    let start = Instant::now();
    let printed = [(21, 1.2146e-1), (41, 1.0222e-2), (81, 7.0238e-4), (161, 4.5031e-5), (201, 1.8502e-5), (321, 2.8328e-6)];
    let mut bad = Vec::new();
    for (n, p) in printed {
        for method in [Method::Mdi, Method::Stp] {
            match err_of(method, &TestFamily::ExpRadial2, 2, &quick(n, 1, RuleKind::Simpson)) {
                Ok(e) if sig_digits(e, p, 4) => {}
                Ok(e) => bad.push(format!("{} N={n}: {e:.5e} vs {p:.4e}", method.name())),
                Err(why) => bad.push(format!("{} N={n}: {why}", method.name())),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok(bad.is_empty() && secs < 10.0, format!("12 rows, {secs:.2} s {}", bad.join("; ")))
}

fn table55() -> Outcome {
    let printed = [(2, 1.5809e-6), (4, 3.1618e-6), (6, 4.7427e-6), (8, 6.3237e-6), (10, 7.9046e-6), (11, 8.6951e-6)];
    let mut bad = Vec::new();
    let mut slowest: f64 = 0.0;
    for (d, p) in printed {
        let start = Instant::now();
        let e = err_of(Method::Mdi, &TestFamily::Gauss, d, &quick(11, 1, RuleKind::Simpson));
        let secs = start.elapsed().as_secs_f64();
        slowest = slowest.max(secs);
        match e {
            Ok(e) if sig_digits(e, p, 4) && secs < 5.0 => {}
            Ok(e) => bad.push(format!("mdi d={d}: {e:.5e} vs {p:.4e} in {secs:.2} s")),
            Err(why) => bad.push(format!("mdi d={d}: {why}")),
        }
        if d <= 6 {
            match err_of(Method::Stp, &TestFamily::Gauss, d, &quick(11, 1, RuleKind::Simpson)) {
                Ok(e) if sig_digits(e, p, 4) => {}
                Ok(e) => bad.push(format!("stp d={d}: {e:.5e} vs {p:.4e}")),
                Err(why) => bad.push(format!("stp d={d}: {why}")),
            }
        }
    }
    ok(bad.is_empty(), format!("slowest MDI row {slowest:.3} s {}", bad.join("; ")))
}

fn table13() -> Outcome {
    let ns = [11, 21, 41, 81, 161, 321];
    let printed = [
        (5, [2.7744e-6, 1.7355e-7, 1.0849e-8, 6.7815e-10, 4.2384e-11, 2.6479e-12]),
        (10, [5.5489e-6, 3.4711e-7, 2.1699e-8, 1.3563e-9, 8.4768e-11, 5.2993e-12]),
    ];
    let mut bad = Vec::new();
    let mut slopes = Vec::new();
    for (d, ps) in printed {
        let mut pts = Vec::new();
        for (&n, &p) in ns.iter().zip(&ps) {
            match err_of(Method::Mdi, &TestFamily::AltExp, d, &quick(n, 1, RuleKind::Simpson)) {
                Ok(e) => {
                    if !sig_digits(e, p, 3) {
                        bad.push(format!("d={d} N={n}: {e:.4e} vs {p:.4e}"));
                    }
                    pts.push((((n - 1) as f64).ln(), e.ln()));
                }
                Err(why) => bad.push(format!("d={d} N={n}: {why}")),
            }
        }
        let s = slope(&pts);
        if (s + 4.0).abs() > 0.3 {
            bad.push(format!("d={d}: slope {s:.3}"));
        }
        slopes.push(format!("d={d} slope {s:.3}"));
    }
    ok(bad.is_empty(), format!("{} {}", slopes.join(", "), bad.join("; ")))
}

fn table17() -> Outcome {
    let start = Instant::now();
    let r = match run(Method::Mdi, &TestFamily::AltExp, 1000, &quick(7, 1, RuleKind::Simpson)) {
        Ok(r) => r,
        Err(e) => return ok(false, e.to_string()),
    };
    let secs = start.elapsed().as_secs_f64();
    let e = r.rel_error.unwrap_or(f64::NAN);
    let within = ((e - 4.2742e-3) / 4.2742e-3).abs() <= 0.01;
    ok(
        within && r.peak_monomials == Some(1) && secs < 60.0,
        format!("rel_error {e:.5e} (printed 4.2742e-3), peak {:?}, {secs:.3} s", r.peak_monomials),
    )
}

fn oracle_matrix() -> Outcome {
    let start = Instant::now();
    let families = [TestFamily::AltExp, TestFamily::ProdRational, TestFamily::Gauss, TestFamily::CosSum, TestFamily::AltExpSq];
    let mut checks = 0;
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for family in &families {
        for d in 2..=6 {
            let (g, domain) = mdi::bench::expand_family(family, d).unwrap();
            for rule in RuleKind::ALL {
                for n in (3..=11).filter(|&n| rule.accepts(n)) {
                    for m in 1..=3 {
                        match stp_equivalence_check(&g, &domain, &MdiConfig::new(n, m, rule)) {
                            Ok(eq) => {
                                checks += 1;
                                let rel = (eq.mdi - eq.stp).abs() / eq.stp.abs();
                                worst = worst.max(rel);
                                if rel > 1e-12 {
                                    bad.push(format!("{family} d={d} r={} N={n} m={m}: {rel:.2e}", rule.number()));
                                }
                            }
                            Err(e) => bad.push(format!("{family} d={d} r={} N={n} m={m}: {e}", rule.number())),
                        }
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok(
        bad.is_empty() && secs < 120.0,
        format!("{checks} checks, worst relative gap {worst:.2e}, {secs:.1} s {}", bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ")),
    )
}

fn m_invariance() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for family in [TestFamily::Gauss, TestFamily::ProdRational] {
        for d in [10, 30] {
            let (g, domain) = mdi::bench::expand_family(&family, d).unwrap();
            let vals: Vec<f64> = (1..=3).filter_map(|m| mdi_integrate(&g, &domain, &MdiConfig::new(11, m, RuleKind::Simpson)).ok().map(|(v, _)| v)).collect();
            if vals.len() != 3 {
                bad.push(format!("{family} d={d}: run failed"));
                continue;
            }
            for v in &vals[1..] {
                let rel = (v - vals[0]).abs() / vals[0].abs();
                worst = worst.max(rel);
                if rel > 1e-12 {
                    bad.push(format!("{family} d={d}: {rel:.2e}"));
                }
            }
        }
    }
    ok(bad.is_empty(), format!("worst relative gap {worst:.2e} {}", bad.join("; ")))
}

fn timing_fit(family: TestFamily, axis: SweepAxis, values: &[u64], d: usize, n: usize, rule: RuleKind) -> Result<mdi::bench::FitResult, String> {
    let cfg = RunConfig {
        n,
        rule,
        repetitions: 5,
        ..RunConfig::default()
    };
    let rows = sweep(Method::Mdi, &family, axis, values, d, &cfg).map_err(|e| e.to_string())?;
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| !r.status.is_failed())
        .map(|r| {
            let x = if axis == SweepAxis::D { r.d } else { r.n.unwrap_or(0) };
            (x as f64, r.wall_seconds.max(1e-6))
        })
        .collect();
    if pts.len() != values.len() {
        return Err("some sweep rows failed".into());
    }
    fit_power_law(&pts, None).map_err(|e| e.to_string())
}

fn scaling() -> Outcome {
    let ds: Vec<u64> = (1..=10).map(|k| 100 * k).collect();
    let alt = timing_fit(TestFamily::AltExp, SweepAxis::D, &ds, 0, 11, RuleKind::Simpson);
    let rat = timing_fit(TestFamily::ProdRational, SweepAxis::D, &ds, 0, 11, RuleKind::Trapezoid);
    let alt_n = timing_fit(TestFamily::AltExp, SweepAxis::N, &[11, 21, 41, 81, 161, 321], 10, 0, RuleKind::Simpson);
    match (alt, rat, alt_n) {
        (Ok(a), Ok(r), Ok(n)) => ok(
            a.exponent <= 3.5 && a.r_square >= 0.95 && r.exponent <= 1.5 && n.exponent <= 2.5,
            format!(
                "alt_exp d^{:.3} (R^2 {:.4}), prod_rational d^{:.3} (R^2 {:.4}), alt_exp N^{:.3} (R^2 {:.4})",
                a.exponent, a.r_square, r.exponent, r.r_square, n.exponent, n.r_square
            ),
        ),
        (a, r, n) => ok(false, format!("{:?} {:?} {:?}", a.err(), r.err(), n.err())),
    }
}

fn monte_carlo() -> Outcome {
    let family = TestFamily::ProdRational;
    let (g, domain) = mdi::bench::expand_family(&family, 10).unwrap();
    let reference = reference_integral(&family, 10, &domain).unwrap();
    let est = mc_integrate(&g, &domain, &McConfig { samples: 1_000_000, seed: 0 }).unwrap();
    let rel = relative_error(est.estimate, &reference);
    let rel_stderr = est.stderr / reference.value.abs();
    let single = rel < 10.0 * rel_stderr;

    let ms = [10_000u64, 100_000, 1_000_000, 10_000_000];
    let mut pts = Vec::new();
    for &m in &ms {
        let sq: f64 = (0..8u64)
            .map(|seed| {
                let e = mc_integrate(&g, &domain, &McConfig { samples: m, seed: 1000 + seed }).unwrap();
                relative_error(e.estimate, &reference).powi(2)
            })
            .sum();
        pts.push(((m as f64).ln(), (sq / 8.0).sqrt().ln()));
    }
    let s = slope(&pts);
    ok(
        single && (s + 0.5).abs() <= 0.15,
        format!("M=1e6: rel_error {rel:.3e}, rel stderr {rel_stderr:.3e}; RMS error slope {s:.3} over 8 seeds"),
    )
}

fn synthetic_fit() -> Outcome {
    let pts: Vec<(f64, f64)> = (1..=8).map(|x| (x as f64, 2.0 * (x as f64).powi(3))).collect();
    match fit_power_law(&pts, None) {
        Ok(f) => ok(
            (f.exponent - 3.0).abs() <= 1e-9 && (f.r_square - 1.0).abs() <= 1e-12,
            format!("p = {}, R^2 = {}, c = {}", f.exponent, f.r_square, f.coefficient),
        ),
        Err(e) => ok(false, e.to_string()),
    }
}

fn size_budget() -> Outcome {
    let g = parse("exp(x1*x2*x3*x4*x5*x6)").unwrap();
    let domain = Domain::unit(6);
    let mut cfg = MdiConfig::new(11, 1, RuleKind::Simpson);
    cfg.max_monomials = 1000;
    let raised = matches!(mdi_integrate(&g, &domain, &cfg), Err(MdiError::SizeBudgetExceeded { .. }));
    let stp = stp_integrate(&g, &domain, 11, RuleKind::Simpson).unwrap();
    let mc = mc_integrate(&g, &domain, &McConfig { samples: 1_000_000, seed: 0 }).unwrap();
    let gap = (stp - mc.estimate).abs();
    ok(
        raised && gap <= 4.0 * mc.stderr,
        format!("budget error raised: {raised}; STP {stp:.8}, MC {:.8} +- {:.2e} (gap {:.2} stderr)", mc.estimate, mc.stderr, gap / mc.stderr),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("exp_radial2 error table, MDI and STP, 4 digits", table1),
        ("Gaussian N=11 error table, 4 digits", table55),
        ("alt_exp N sweep, 3 digits and order 4", table13),
        ("alt_exp d=1000 N=7 spot check", table17),
        ("MDI versus STP equivalence matrix", oracle_matrix),
        ("m invariance", m_invariance),
        ("CPU time scaling exponents", scaling),
        ("Monte Carlo baseline", monte_carlo),
        ("power-law fit on t = 2x^3", synthetic_fit),
        ("size budget on an entangled integrand", size_budget),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let out = check();
        if !out.pass {
            failed += 1;
        }
        println!("{} [{:>2}] {name}: {}", if out.pass { "PASS" } else { "FAIL" }, i + 1, out.detail.trim_end());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
