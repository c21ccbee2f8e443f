//! Brute-force tensor-product summation over all `N^d` nodes.

use super::{check_dims, BaselineError};
use crate::expr::{EvalError, Expr, Program};
use crate::numeric::pairwise_sum;
use crate::quad::{Domain, Rule1D, RuleKind};

/// Default limit on the number of summands.
pub const STP_CAP: f64 = 1e8;

/// Tensor sum of `g` with the composite rule `kind` on `n` nodes per axis.
pub fn stp_integrate(g: &Expr, domain: &Domain, n: usize, kind: RuleKind) -> Result<f64, BaselineError> {
    let rules = domain.rules(kind, n)?;
    stp_integrate_capped(g, &rules, STP_CAP)
}

/// Tensor sum with explicit per-axis rules and summand cap.
pub fn stp_integrate_capped(g: &Expr, rules: &[Rule1D], cap: f64) -> Result<f64, BaselineError> {
    check_dims(g, rules.len())?;
    let summands: f64 = rules.iter().map(|r| r.len() as f64).product();
    if summands > cap {
        return Err(BaselineError::CapExceeded { summands, cap });
    }
    let value = tensor_sum(&Program::compile(g), rules, 0);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(EvalError::NonFiniteResult(value).into())
    }
}

/// Lexicographic nested sum; axis `j` of `rules` feeds coordinate
/// `x{offset+j+1}`. Each level is accumulated pairwise.
pub(crate) fn tensor_sum(prog: &Program, rules: &[Rule1D], offset: usize) -> f64 {
    let mut point = vec![0.0; (offset + rules.len()).max(prog.arity())];
    let mut stack = prog.stack();
    let mut scratch: Vec<Vec<f64>> = rules.iter().map(|r| vec![0.0; r.len()]).collect();
    level(prog, rules, offset, &mut point, &mut stack, &mut scratch)
}

fn level(prog: &Program, rules: &[Rule1D], slot: usize, point: &mut [f64], stack: &mut Vec<f64>, scratch: &mut [Vec<f64>]) -> f64 {
    let Some((rule, rest)) = rules.split_first() else {
        return prog.run(point, stack);
    };
    let (buf, inner) = scratch.split_first_mut().unwrap();
    for ((out, &x), &w) in buf.iter_mut().zip(&rule.nodes).zip(&rule.weights) {
        point[slot] = x;
        *out = w * level(prog, rest, slot + 1, point, stack, inner);
    }
    pairwise_sum(buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::quad::make_rule;

    #[test]
    fn constant_gives_volume() {
        for kind in RuleKind::ALL {
            let v = stp_integrate(&Expr::Constant(1.0), &Domain::cube(3, 0.0, 2.0), kind.nearest_valid(5), kind).unwrap();
            assert!((v - 8.0).abs() < 1e-13, "{kind}");
        }
    }

    #[test]
    fn simpson_exact_on_cubics() {
        let g = parse("x1^3*x2^2 - 2*x1*x2^3 + 1").unwrap();
        let dom = Domain::new(vec![(0.0, 2.0), (-1.0, 3.0)]).unwrap();
        let exact = 4.0 * 28.0 / 3.0 - 2.0 * 2.0 * 20.0 + 8.0;
        let v = stp_integrate(&g, &dom, 5, RuleKind::Simpson).unwrap();
        assert!((v - exact).abs() < 1e-12 * exact.abs());
    }

    #[test]
    fn matches_one_dimensional_rule() {
        let g = parse("exp(x1)").unwrap();
        let r = make_rule(RuleKind::Gauss2, 8, (0.0, 1.0)).unwrap();
        let direct = r.integrate(f64::exp);
        assert_eq!(stp_integrate(&g, &Domain::unit(1), 8, RuleKind::Gauss2).unwrap(), direct);
    }

    #[test]
    fn cap_and_dimension_errors() {
        let g = parse("x1").unwrap();
        let rules = Domain::unit(9).rules(RuleKind::Simpson, 11).unwrap();
        assert!(matches!(stp_integrate_capped(&g, &rules, STP_CAP), Err(BaselineError::CapExceeded { .. })));
        assert!(matches!(
            stp_integrate(&parse("x3").unwrap(), &Domain::unit(2), 3, RuleKind::Simpson),
            Err(BaselineError::DimensionMismatch { .. })
        ));
    }
}
