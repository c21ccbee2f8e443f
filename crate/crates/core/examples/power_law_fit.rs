//! Time an MDI d-sweep and fit t = c d^p.

use mdi::bench::{fit_power_law, sweep, Method, RunConfig, SweepAxis, TestFamily};

fn main() {
    let ds: Vec<u64> = (1..=8).map(|k| 50 * k).collect();
    let rows = sweep(Method::Mdi, &TestFamily::Gauss, SweepAxis::D, &ds, 0, &RunConfig::default()).unwrap();
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.d as f64, r.wall_seconds.max(1e-6))).collect();
    for (d, t) in &pts {
        println!("d={d:<4} {t:.6} s");
    }
    let fit = fit_power_law(&pts, None).unwrap();
    println!("t = {:.3e} * d^{:.3}  (R-square {:.4})", fit.coefficient, fit.exponent, fit.r_square);

    let synthetic: Vec<(f64, f64)> = [11.0, 21.0, 41.0, 81.0].iter().map(|&n: &f64| (n, 0.001315 * n * n)).collect();
    let fit = fit_power_law(&synthetic, None).unwrap();
    println!("synthetic 0.001315 N^2: c = {:.6}, p = {:.9}", fit.coefficient, fit.exponent);
}
