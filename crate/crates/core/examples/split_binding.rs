//! One binding step by hand: integrate out x1 and look at the residual integrand.

use mdi::quad::{make_rule, RuleKind};
use mdi::{bind_and_sum, parse, LinearForm};

fn main() {
    let rule = make_rule(RuleKind::Simpson, 11, (0.0, 1.0)).unwrap();
    for src in ["exp(x1 - x2 + x3)", "sin(2*pi + 10*x1^2 + 5*x2^2)", "cos(x1 + x2)*x3", "exp(x1*x2) + x1*x3"] {
        let g = parse(src).unwrap();
        let h = bind_and_sum(&g, std::slice::from_ref(&rule), 1).unwrap();
        println!("{src}");
        println!("  after binding x1: {h}");
        println!("  {} monomial(s) in the remaining variables", LinearForm::from_expr(&h).len());
    }
}
