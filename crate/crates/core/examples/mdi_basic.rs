//! Integrate a 100-dimensional product with MDI and compare to its closed form.

use mdi::bench::{expand_family, TestFamily};
use mdi::{mdi_integrate, reference_integral, relative_error, MdiConfig, RuleKind};

fn main() {
    let d = 100;
    let family = TestFamily::AltExp;
    let (g, domain) = expand_family(&family, d).unwrap();
    let reference = reference_integral(&family, d, &domain).unwrap();
    for rule in RuleKind::ALL {
        let cfg = MdiConfig::new(rule.nearest_valid(11), 1, rule);
        let (value, trace) = mdi_integrate(&g, &domain, &cfg).unwrap();
        println!(
            "{rule:<9} N={:<3} value {value:.10e}  rel error {:.4e}  evals {}  peak monomials {}",
            cfg.n,
            relative_error(value, &reference),
            trace.eval_count,
            trace.peak_monomials
        );
    }
    println!("reference {:.10e} ({})", reference.value, reference.method.name());
}
