//! Build the four composite rules and watch their observed order on exp(x).

use mdi::quad::{make_rule, RuleKind};

fn main() {
    let exact = std::f64::consts::E - 1.0;
    for kind in RuleKind::ALL {
        let mut prev: Option<(usize, f64)> = None;
        print!("{kind:<9} (order {})", kind.convergence_order());
        for target in [9, 17, 33, 65] {
            let n = kind.nearest_valid(target);
            let rule = make_rule(kind, n, (0.0, 1.0)).unwrap();
            let err = (rule.integrate(f64::exp) - exact).abs();
            if let Some((pn, pe)) = prev {
                print!("  N={n}: err {err:.2e}, observed order {:.2}", (pe / err).ln() / (n as f64 / pn as f64).ln());
            } else {
                print!("  N={n}: err {err:.2e}");
            }
            prev = Some((n, err));
        }
        println!();
    }
    let s = make_rule(RuleKind::Simpson, 5, (0.0, 1.0)).unwrap();
    println!("Simpson N=5 nodes {:?}", s.nodes);
    println!("Simpson N=5 weights {:?}", s.weights);
    println!("Simpson N=4: {}", make_rule(RuleKind::Simpson, 4, (0.0, 1.0)).unwrap_err());
}
