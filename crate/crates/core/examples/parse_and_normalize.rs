//! Parse integrands and show their canonical forms.

use mdi::expr::{parse, LinearForm};

fn main() {
    for src in ["x2*3*x1*x2", "exp(x1 - x2 + x3)", "(x1 + x2)*(x1 - x2)", "sin(2*pi + 10*x1^2 + 5*x2^2)", "1/(0.81 + (x1 - 0.6)^2)"] {
        let e = parse(src).expect("valid expression");
        let lf = LinearForm::from_expr(&e);
        println!("{src:<34} -> {e}");
        println!("{:<34}    {} monomial(s), {} node(s), value at 0.5: {}", "", lf.len(), e.node_count(), e.eval(&[0.5; 3]).unwrap());
    }
    match parse("exp(x1") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error: {e}"),
    }
}
