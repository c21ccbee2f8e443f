//! An entangled integrand exhausts the monomial budget; STP and MC still work.

use mdi::baselines::{mc_integrate, stp_integrate, McConfig};
use mdi::{mdi_integrate, parse, Domain, MdiConfig, MdiError, RuleKind};

fn main() {
    let g = parse("exp(x1*x2*x3*x4*x5*x6)").unwrap();
    let domain = Domain::unit(6);
    for budget in [100, 1000, 100_000] {
        let mut cfg = MdiConfig::new(11, 1, RuleKind::Simpson);
        cfg.max_monomials = budget;
        match mdi_integrate(&g, &domain, &cfg) {
            Ok((v, trace)) => println!("budget {budget:>6}: value {v:.10}, peak {} monomials", trace.peak_monomials),
            Err(e @ MdiError::SizeBudgetExceeded { .. }) => println!("budget {budget:>6}: {e}"),
            Err(e) => panic!("{e}"),
        }
    }
    let stp = stp_integrate(&g, &domain, 11, RuleKind::Simpson).unwrap();
    let mc = mc_integrate(&g, &domain, &McConfig { samples: 1_000_000, seed: 1 }).unwrap();
    println!("stp {stp:.10}, mc {:.10} +- {:.1e}", mc.estimate, mc.stderr);
}
