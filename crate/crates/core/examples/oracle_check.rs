//! MDI and the plain tensor-product sum are the same number up to rounding.

use mdi::bench::{expand_family, TestFamily};
use mdi::quad::RuleKind;
use mdi::{stp_equivalence_check, MdiConfig};

fn main() {
    for family in [TestFamily::AltExp, TestFamily::ProdRational, TestFamily::Gauss, TestFamily::CosSum, TestFamily::AltExpSq] {
        let (g, domain) = expand_family(&family, 4).unwrap();
        for m in 1..=3 {
            let eq = stp_equivalence_check(&g, &domain, &MdiConfig::new(9, m, RuleKind::Simpson)).unwrap();
            println!("{family:<14} m={m}  mdi {:.15e}  stp {:.15e}  passed {}", eq.mdi, eq.stp, eq.passed);
        }
    }
}
