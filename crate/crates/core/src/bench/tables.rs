//! Manifest of the published experiments and a driver that reruns them.
//!
//! Error tables list one row per (method, family, d, N, m, r) together with
//! the published relative error. Timing tables (`t20`, `t15`) list sweeps
//! whose wall times are fitted to a power law; their published exponents are
//! shown for comparison only, since absolute times are machine dependent.

use std::fmt::Write as _;

use super::fit::{fit_power_law, FitResult};
use super::report::{emit_table, Format, RunReport};
use super::run::{run, sweep, Method, RunConfig, SweepAxis};
use super::{BenchError, TestFamily};
use crate::quad::RuleKind;

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub method: Method,
    pub family: TestFamily,
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub rule: RuleKind,
    /// Published relative error, when the table prints one.
    pub published: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub family: TestFamily,
    pub rule: RuleKind,
    pub m: usize,
    pub axis: SweepAxis,
    /// Fixed dimension (N sweeps) or fixed N (d sweeps).
    pub fixed: usize,
    pub values: Vec<u64>,
    pub published_exponent: f64,
    pub published_r_square: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub id: &'static str,
    pub title: &'static str,
    pub rows: Vec<TableRow>,
    pub fits: Vec<FitRow>,
}

pub fn table_ids() -> &'static [&'static str] {
    &[
        "t1", "t2", "t3", "t4", "t55", "t5", "t6", "t7", "t66", "t77", "t17", "t16", "t12", "t100", "t10", "t21", "t11", "t13", "t14", "t19", "t20",
        "t15",
    ]
}

const MESH_2D: [usize; 7] = [21, 41, 81, 161, 201, 321, 641];
const N_SWEEP: [usize; 6] = [11, 21, 41, 81, 161, 321];
const D_PARAM: [usize; 6] = [10, 30, 50, 70, 90, 100];
const D_HIGH: [usize; 11] = [10, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000];
const D_MC: [usize; 8] = [5, 10, 20, 30, 35, 40, 80, 100];
const D_SAME: [usize; 6] = [5, 11, 15, 30, 40, 50];

const GAUSS_R1: [f64; 6] = [5.8935e-3, 1.7576e-2, 2.9122e-2, 4.0532e-2, 5.1808e-2, 5.7396e-2];
const GAUSS_R2: [f64; 6] = [7.9046e-6, 2.3714e-5, 3.9523e-5, 5.5333e-5, 7.1144e-5, 7.9049e-5];
const GAUSS_R4: [f64; 6] = [2.9593e-3, 8.9042e-3, 1.4884e-2, 2.0899e-2, 2.6951e-2, 2.9990e-2];
const RAT_R1: [f64; 6] = [1.2809e-2, 3.7939e-2, 6.2429e-2, 8.6296e-2, 1.0955e-1, 1.2096e-1];
const RAT_R2: [f64; 6] = [5.2504e-5, 1.5752e-4, 2.6254e-4, 3.6758e-4, 4.7263e-4, 5.2516e-4];
const RAT_R3: [f64; 6] = [3.5014e-5, 1.0503e-4, 1.7505e-4, 2.4507e-4, 3.1508e-4, 3.5008e-4];
const RAT_R4: [f64; 6] = [6.4658e-3, 1.9523e-2, 3.2750e-2, 4.6148e-2, 5.9720e-2, 6.6572e-2];

struct Rows(Vec<TableRow>);

impl Rows {
    fn new() -> Rows {
        Rows(Vec::new())
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, methods: &[Method], family: &TestFamily, d: usize, n: usize, m: usize, rule: RuleKind, published: Option<f64>) {
        for &method in methods {
            self.0.push(TableRow {
                method,
                family: family.clone(),
                d,
                n,
                m,
                rule,
                published: if method == Method::Mc { None } else { published },
            });
        }
    }

    /// Rows along `d` with fixed N.
    #[allow(clippy::too_many_arguments)]
    fn over_d(mut self, methods: &[Method], family: TestFamily, ds: &[usize], n: usize, m: usize, rule: RuleKind, published: &[f64]) -> Rows {
        for (i, &d) in ds.iter().enumerate() {
            self.push(methods, &family, d, n, m, rule, published.get(i).copied());
        }
        self
    }

    /// Rows along N with fixed d.
    fn over_n(mut self, methods: &[Method], family: TestFamily, d: usize, ns: &[usize], published: &[f64]) -> Rows {
        for (i, &n) in ns.iter().enumerate() {
            self.push(methods, &family, d, n, 1, RuleKind::Simpson, published.get(i).copied());
        }
        self
    }
}

const BOTH: &[Method] = &[Method::Stp, Method::Mdi];
const MDI: &[Method] = &[Method::Mdi];
const WITH_MC: &[Method] = &[Method::Mc, Method::Mdi];

fn spec(id: &str) -> Option<TableSpec> {
    use RuleKind::*;
    use TestFamily::*;
    let table = |id, title, rows: Rows| TableSpec {
        id,
        title,
        rows: rows.0,
        fits: Vec::new(),
    };
    let r = Rows::new;
    Some(match id {
        "t1" => table(
            "t1",
            "exp(5x1^2+5x2^2) on [0,2]^2, Simpson, m=1",
            r().over_n(BOTH, ExpRadial2, 2, &MESH_2D[..6], &[1.2146e-1, 1.0222e-2, 7.0238e-4, 4.5031e-5, 1.8502e-5, 2.8328e-6]),
        ),
        "t2" => table(
            "t2",
            "sin(2pi+10x1^2+5x2^2) on [0,2]^2, Simpson, m=1",
            r().over_n(BOTH, SinPhase2, 2, &MESH_2D, &[8.4038e-1, 1.2825e-2, 5.1928e-4, 2.9642e-5, 1.2014e-5, 1.8123e-6, 1.1213e-7]),
        ),
        "t3" => table(
            "t3",
            "exp(5|x|^2) on [0,2]^3, Simpson, m=1",
            r().over_n(BOTH, ExpRadial3, 3, &MESH_2D, &[1.8762e-1, 1.0222e-2, 7.0238e-4, 4.5031e-5, 1.8502e-5, 2.8328e-6, 2.6601e-7]),
        ),
        "t4" => table(
            "t4",
            "sin(2pi+10x1^2+5x2^2+20x3^2) on [0,2]^3, Simpson, m=1",
            r().over_n(BOTH, SinPhase3, 3, &MESH_2D, &[2.5789e-1, 3.0493e-1, 1.2800e-2, 4.9563e-4, 1.9345e-4, 2.8065e-5, 1.7128e-6]),
        ),
        "t55" => table(
            "t55",
            "Gaussian, N=11, Simpson, m=1",
            r().over_d(BOTH, Gauss, &[2, 4, 6, 8, 10, 11], 11, 1, Simpson, &[1.5809e-6, 3.1618e-6, 4.7427e-6, 6.3237e-6, 7.9046e-6, 8.6951e-6]),
        ),
        "t5" => table(
            "t5",
            "Gaussian, N=21, Simpson, m=1",
            r().over_d(BOTH, Gauss, &[2, 4, 6, 8, 9, 10], 21, 1, Simpson, &[9.8542e-8, 1.9708e-7, 2.9564e-7, 3.9149e-7, 4.4344e-7, 4.9271e-7]),
        ),
        "t6" => table(
            "t6",
            "rational product, MDI versus MC, N=11",
            r().over_d(WITH_MC, ProdRational, &D_MC, 11, 1, Simpson, &[2.6251e-5, 5.2504e-5, 1.0501e-4, 1.5752e-4, 1.8377e-4, 2.1003e-4, 4.2011e-4, 5.2516e-4]),
        ),
        "t7" => table(
            "t7",
            "Gaussian, MDI versus MC, N=11",
            r().over_d(WITH_MC, Gauss, &D_MC, 11, 1, Simpson, &[3.9523e-6, 7.9046e-6, 1.5809e-5, 2.3714e-5, 2.7666e-5, 3.1618e-5, 6.3238e-5, 7.9049e-5]),
        ),
        "t66" => table(
            "t66",
            "rational product, MDI versus MC at equal point counts",
            r().over_d(WITH_MC, ProdRational, &D_SAME, 11, 1, Simpson, &[2.6251e-5, 5.7754e-5, 7.8757e-5, 1.5752e-4, 2.1003e-4, 2.6254e-4]),
        ),
        "t77" => table(
            "t77",
            "Gaussian, MDI versus MC at equal point counts",
            r().over_d(WITH_MC, Gauss, &D_SAME, 11, 1, Simpson, &[3.9523e-6, 8.6951e-6, 1.1856e-5, 2.3714e-5, 3.1618e-5, 3.9523e-5]),
        ),
        "t17" => table(
            "t17",
            "alternating exponential, N=7, Simpson, m=1",
            r().over_d(
                MDI,
                AltExp,
                &D_HIGH,
                7,
                1,
                Simpson,
                &[4.2726e-5, 4.2734e-4, 8.5487e-4, 1.4386e-4, 1.7097e-3, 2.1371e-3, 2.8772e-3, 3.3566e-3, 3.5194e-3, 3.8467e-3, 4.2742e-3],
            ),
        ),
        "t16" => table(
            "t16",
            "rational product, N=7, Simpson, m=1",
            r().over_d(
                MDI,
                ProdRational,
                &D_HIGH,
                7,
                1,
                Simpson,
                &[4.0743e-4, 4.0818e-3, 8.1803e-3, 1.2295e-2, 1.6427e-2, 2.0576e-2, 2.4742e-2, 2.8925e-2, 3.3125e-2, 3.7342e-2, 4.1576e-2],
            ),
        ),
        "t12" => table(
            "t12",
            "Gaussian, rules 1, 2, 4, m=1",
            r().over_d(MDI, Gauss, &D_PARAM, 11, 1, Trapezoid, &GAUSS_R1)
                .over_d(MDI, Gauss, &D_PARAM, 11, 1, Simpson, &GAUSS_R2)
                .over_d(MDI, Gauss, &D_PARAM, 10, 1, Midpoint, &GAUSS_R4),
        ),
        "t100" => table(
            "t100",
            "alternating exponential, rules 1-4, m=1",
            r().over_d(MDI, AltExp, &D_PARAM, 11, 1, Trapezoid, &[8.3632e-3, 2.5300e-2, 4.2521e-2, 6.0032e-2, 7.7837e-2, 8.6851e-2])
                .over_d(MDI, AltExp, &D_PARAM, 11, 1, Simpson, &[5.5489e-6, 1.6646e-5, 2.7745e-5, 3.8843e-5, 4.9941e-5, 5.5491e-5])
                .over_d(MDI, AltExp, &[10, 30, 50, 60, 70], 6, 1, Gauss2, &[2.8477e-5, 8.5428e-5, 1.4237e-4, 2.8775e-5])
                .over_d(MDI, AltExp, &D_PARAM, 10, 1, Midpoint, &[4.1576e-3, 1.2421e-2, 2.0616e-2, 2.8743e-2, 3.6802e-2, 4.0807e-2]),
        ),
        "t10" => table(
            "t10",
            "rational product, rules 1-4, m=1",
            r().over_d(MDI, ProdRational, &D_PARAM, 11, 1, Trapezoid, &RAT_R1)
                .over_d(MDI, ProdRational, &D_PARAM, 11, 1, Simpson, &RAT_R2)
                .over_d(MDI, ProdRational, &D_PARAM, 10, 1, Gauss2, &RAT_R3)
                .over_d(MDI, ProdRational, &D_PARAM, 10, 1, Midpoint, &RAT_R4),
        ),
        "t21" => table(
            "t21",
            "rational product, Simpson, m=1,2,3",
            (1..=3).fold(r(), |acc, m| acc.over_d(MDI, ProdRational, &D_PARAM, 11, m, Simpson, &RAT_R2)),
        ),
        "t11" => table(
            "t11",
            "Gaussian, Simpson, m=1,2,3",
            (1..=3).fold(r(), |acc, m| acc.over_d(MDI, Gauss, &D_PARAM, 11, m, Simpson, &GAUSS_R2)),
        ),
        "t13" => table(
            "t13",
            "alternating exponential, d=5,10, N sweep",
            r().over_n(MDI, AltExp, 5, &N_SWEEP, &[2.7744e-6, 1.7355e-7, 1.0849e-8, 6.7815e-10, 4.2384e-11, 2.6479e-12])
                .over_n(MDI, AltExp, 10, &N_SWEEP, &[5.5489e-6, 3.4711e-7, 2.1699e-8, 1.3563e-9, 8.4768e-11, 5.2993e-12]),
        ),
        "t14" => table(
            "t14",
            "cosine of a sum, d=5,10, N sweep",
            r().over_n(MDI, CosSum, 5, &N_SWEEP, &[4.4657e-5, 2.7810e-6, 1.7366e-7, 1.0851e-8, 6.7818e-10, 4.2383e-11])
                .over_n(MDI, CosSum, 10, &N_SWEEP, &[8.9317e-5, 5.5621e-6, 3.4732e-7, 2.1703e-8, 1.3563e-9, 8.4768e-11]),
        ),
        "t19" => table(
            "t19",
            "rational product, d=5,10, N sweep",
            r().over_n(MDI, ProdRational, 5, &N_SWEEP, &[2.6251e-5, 1.6339e-6, 1.0200e-7, 6.3736e-9, 3.9832e-10, 2.4894e-11])
                .over_n(MDI, ProdRational, 10, &N_SWEEP, &[5.2504e-5, 3.2679e-6, 2.0401e-7, 1.2747e-8, 7.9664e-10, 4.9788e-11]),
        ),
        "t20" => {
            let n_values: Vec<u64> = N_SWEEP.iter().map(|&n| n as u64).collect();
            let fit = |family, d, p, r2| FitRow {
                family,
                rule: Simpson,
                m: 1,
                axis: SweepAxis::N,
                fixed: d,
                values: n_values.clone(),
                published_exponent: p,
                published_r_square: r2,
            };
            TableSpec {
                id: "t20",
                title: "CPU time versus N (fits t = c N^p)",
                rows: Vec::new(),
                fits: vec![
                    fit(AltExp, 5, 2.0, 0.9973),
                    fit(CosSum, 5, 2.0, 0.9914),
                    fit(ProdRational, 5, 1.0, 0.9963),
                    fit(AltExp, 10, 2.0, 0.9998),
                    fit(CosSum, 10, 2.0, 0.9997),
                    fit(ProdRational, 10, 1.267, 0.9971),
                ],
            }
        }
        "t15" => {
            let d_values: Vec<u64> = (1..=10).map(|k| 100 * k).collect();
            let fit = |family, rule, m, n, q, r2| FitRow {
                family,
                rule,
                m,
                axis: SweepAxis::D,
                fixed: n,
                values: d_values.clone(),
                published_exponent: q,
                published_r_square: r2,
            };
            TableSpec {
                id: "t15",
                title: "CPU time versus d (fits t = c N^2 d^q at fixed N)",
                rows: Vec::new(),
                fits: vec![
                    fit(AltExp, Trapezoid, 1, 11, 3.0, 0.9966),
                    fit(AltExp, Simpson, 1, 7, 3.0, 0.9961),
                    fit(AltExp, Simpson, 1, 11, 3.0, 0.9964),
                    fit(AltExp, Gauss2, 1, 3, 3.0, 0.9978),
                    fit(AltExp, Midpoint, 1, 10, 3.0, 0.9947),
                    fit(ProdRational, Trapezoid, 1, 11, 1.0, 0.9922),
                    fit(ProdRational, Simpson, 1, 7, 1.358, 0.9991),
                    fit(ProdRational, Simpson, 1, 11, 1.0, 0.9898),
                    fit(ProdRational, Simpson, 2, 11, 1.0, 0.9937),
                    fit(ProdRational, Simpson, 3, 11, 1.0, 0.9808),
                    fit(ProdRational, Gauss2, 1, 10, 3.0, 0.9932),
                    fit(ProdRational, Midpoint, 1, 10, 1.0, 0.9952),
                    fit(Gauss, Trapezoid, 1, 11, 3.0, 0.9977),
                    fit(Gauss, Simpson, 1, 11, 3.0, 0.9995),
                    fit(Gauss, Simpson, 2, 11, 3.0, 0.9929),
                    fit(Gauss, Simpson, 3, 11, 3.0, 0.9974),
                    fit(Gauss, Midpoint, 1, 10, 3.0, 0.9903),
                    fit(CosSum, Simpson, 1, 11, 3.0, 0.9990),
                    fit(CosSum, Simpson, 1, 21, 3.0, 0.9966),
                    fit(CosSum, Gauss2, 1, 3, 3.0, 1.0),
                    fit(AltExpSq, Simpson, 1, 11, 3.0, 0.9968),
                    fit(AltExpSq, Simpson, 1, 21, 3.0, 0.9994),
                ],
            }
        }
        _ => return None,
    })
}

impl TableSpec {
    pub fn get(id: &str) -> Result<TableSpec, BenchError> {
        spec(id).ok_or_else(|| BenchError::UnknownTable(id.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitOutcome {
    pub row: FitRow,
    /// Rule node count actually used (the nearest admissible one).
    pub nodes: usize,
    pub fit: Option<FitResult>,
    pub reports: Vec<RunReport>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRun {
    pub spec: TableSpec,
    pub reports: Vec<RunReport>,
    pub fits: Vec<FitOutcome>,
}

/// Reruns every row of table `id` with the budgets, seed and repetition count
/// of `base`.
pub fn reproduce_table(id: &str, base: &RunConfig) -> Result<TableRun, BenchError> {
    let spec = TableSpec::get(id)?;
    let mut reports = Vec::with_capacity(spec.rows.len());
    for row in &spec.rows {
        let cfg = RunConfig {
            n: row.n,
            m: row.m,
            rule: row.rule,
            domain: None,
            ..base.clone()
        };
        reports.push(run(row.method, &row.family, row.d, &cfg)?);
    }
    let mut fits = Vec::new();
    for row in &spec.fits {
        let nodes = row.rule.nearest_valid(if row.axis == SweepAxis::D { row.fixed } else { 3 });
        let cfg = RunConfig {
            n: nodes,
            m: row.m,
            rule: row.rule,
            domain: None,
            ..base.clone()
        };
        let d = if row.axis == SweepAxis::D { 0 } else { row.fixed };
        let rows = sweep(Method::Mdi, &row.family, row.axis, &row.values, d, &cfg)?;
        let points: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| !r.status.is_failed())
            .map(|r| {
                let x = if row.axis == SweepAxis::D { r.d } else { r.n.unwrap_or(0) };
                (x as f64, r.wall_seconds.max(1e-6))
            })
            .collect();
        let fixed_n = (row.axis == SweepAxis::D).then_some(nodes as f64);
        fits.push(FitOutcome {
            row: row.clone(),
            nodes,
            fit: fit_power_law(&points, fixed_n).ok(),
            reports: rows,
        });
    }
    Ok(TableRun { spec, reports, fits })
}

fn sci(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4e}")).unwrap_or_else(|| "-".into())
}

impl TableRun {
    /// CSV uses the standard report schema. Markdown adds the published
    /// values next to the reproduced ones.
    pub fn render(&self, format: Format) -> String {
        if format == Format::Csv {
            let mut all = self.reports.clone();
            all.extend(self.fits.iter().flat_map(|f| f.reports.iter().cloned()));
            return emit_table(&all, Format::Csv);
        }
        let mut s = format!("### {}: {}\n\n", self.spec.id, self.spec.title);
        if !self.reports.is_empty() {
            s.push_str("| method | d | N | m | r | relative error | published | CPU time (s) | peak monomials | status |\n");
            s.push_str("|---|---:|---:|---:|---:|---:|---:|---:|---:|---|\n");
            for (row, rep) in self.spec.rows.iter().zip(&self.reports) {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} | {} | {:.6} | {} | {} |",
                    rep.method.name(),
                    rep.d,
                    rep.n.map(|n| n.to_string()).or(rep.samples.map(|m| format!("M={m}"))).unwrap_or_default(),
                    rep.m.map(|m| m.to_string()).unwrap_or_default(),
                    rep.r.map(|r| r.number().to_string()).unwrap_or_default(),
                    sci(rep.rel_error),
                    sci(row.published),
                    rep.wall_seconds,
                    rep.peak_monomials.map(|p| p.to_string()).unwrap_or_default(),
                    match &rep.status {
                        super::Status::Failed(_) => "failed",
                        super::Status::Contended => "contended",
                        super::Status::Ok => "ok",
                    }
                );
            }
        }
        if !self.fits.is_empty() {
            s.push_str("| family | r | m | fixed | nodes used | fitted exponent | published | R^2 | published R^2 | coefficient |\n");
            s.push_str("|---|---:|---:|---|---:|---:|---:|---:|---:|---:|\n");
            for f in &self.fits {
                let fixed = match f.row.axis {
                    SweepAxis::D => format!("N={}", f.row.fixed),
                    _ => format!("d={}", f.row.fixed),
                };
                let (p, r2, c) = match &f.fit {
                    Some(fit) => (format!("{:.3}", fit.exponent), format!("{:.4}", fit.r_square), format!("{:.4e}", fit.coefficient)),
                    None => ("-".into(), "-".into(), "-".into()),
                };
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                    f.row.family, f.row.rule.number(), f.row.m, fixed, f.nodes, p, f.row.published_exponent, r2, f.row.published_r_square, c
                );
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_has_a_spec() {
        for id in table_ids() {
            let s = TableSpec::get(id).unwrap();
            assert!(!s.rows.is_empty() || !s.fits.is_empty(), "{id}");
        }
        assert!(TableSpec::get("t99").is_err());
    }

    #[test]
    fn manifest_shapes() {
        let t1 = TableSpec::get("t1").unwrap();
        assert_eq!(t1.rows.len(), 12);
        assert_eq!(t1.rows[1].method, Method::Mdi);
        assert_eq!(t1.rows[1].published, Some(1.2146e-1));
        let t21 = TableSpec::get("t21").unwrap();
        assert_eq!(t21.rows.len(), 18);
        assert_eq!(TableSpec::get("t15").unwrap().fits.len(), 22);
    }

    #[test]
    fn reproduces_small_table() {
        let base = RunConfig {
            repetitions: 1,
            ..RunConfig::default()
        };
        let run = reproduce_table("t1", &base).unwrap();
        for (row, rep) in run.spec.rows.iter().zip(&run.reports) {
            let (got, want) = (rep.rel_error.unwrap(), row.published.unwrap());
            assert!((got - want).abs() / want < 1e-3, "{rep:?}");
        }
        assert!(run.render(Format::Markdown).contains("1.2146e-1"));
    }
}
