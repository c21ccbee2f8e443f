//! Seeded Monte Carlo on the rational product and its M^-1/2 error decay.

use mdi::bench::{expand_family, TestFamily};
use mdi::{mc_integrate, reference_integral, relative_error, McConfig};

fn main() {
    let family = TestFamily::ProdRational;
    let (g, domain) = expand_family(&family, 10).unwrap();
    let reference = reference_integral(&family, 10, &domain).unwrap();
    for samples in [1_000u64, 10_000, 100_000, 1_000_000] {
        let est = mc_integrate(&g, &domain, &McConfig { samples, seed: 7 }).unwrap();
        println!(
            "M={samples:<8} estimate {:.8}  stderr {:.2e}  rel error {:.2e}",
            est.estimate,
            est.stderr,
            relative_error(est.estimate, &reference)
        );
    }
    let a = mc_integrate(&g, &domain, &McConfig { samples: 5000, seed: 42 }).unwrap();
    let b = mc_integrate(&g, &domain, &McConfig { samples: 5000, seed: 42 }).unwrap();
    println!("same seed, same bits: {}", a.estimate.to_bits() == b.estimate.to_bits());
}
