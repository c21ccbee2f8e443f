use thiserror::Error;

use super::{Expr, VarId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("no coordinate supplied for {0}")]
    MissingCoordinate(VarId),
    #[error("evaluation produced a non-finite value ({0})")]
    NonFiniteResult(f64),
}

impl Expr {
    /// Evaluates at `point`, where `point[i]` is the value of `x{i+1}`.
    pub fn eval(&self, point: &[f64]) -> Result<f64, EvalError> {
        let hi = self.meta().hi as usize;
        if hi > point.len() {
            return Err(EvalError::MissingCoordinate(VarId::new(hi as u32)));
        }
        finite(self.eval_with(&|v: VarId| point[v.slot()]))
    }

    /// Evaluates an expression that depends on `v` alone (or on nothing).
    pub fn eval_single(&self, v: VarId, value: f64) -> Result<f64, EvalError> {
        let m = self.meta();
        if m.lo != 0 && (m.lo != v.index() || m.hi != v.index()) {
            let missing = if m.lo != v.index() { m.lo } else { m.hi };
            return Err(EvalError::MissingCoordinate(VarId::new(missing)));
        }
        finite(self.eval_with(&|_| value))
    }

    pub(crate) fn eval_with(&self, env: &dyn Fn(VarId) -> f64) -> f64 {
        match self {
            Expr::Constant(c) => *c,
            Expr::Var(v) => env(*v),
            Expr::Sum(t) => t.iter().fold(0.0, |acc, e| acc + e.eval_with(env)),
            Expr::Product(t) => t.iter().fold(1.0, |acc, e| acc * e.eval_with(env)),
            Expr::Power(b, n) => b.eval_with(env).powi(*n),
            Expr::Exp(a) => a.eval_with(env).exp(),
            Expr::Sin(a) => a.eval_with(env).sin(),
            Expr::Cos(a) => a.eval_with(env).cos(),
        }
    }
}

fn finite(x: f64) -> Result<f64, EvalError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(EvalError::NonFiniteResult(x))
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Const(f64),
    Var(usize),
    Sum(usize),
    Product(usize),
    Pow(i32),
    Exp,
    Sin,
    Cos,
}

/// Postfix form of an expression for hot evaluation loops (tensor sums and
/// sampling). Produces the same bits as [`Expr::eval`]: operands are combined
/// in the same order.
#[derive(Clone, Debug)]
pub struct Program {
    ops: Vec<Op>,
    arity: usize,
    depth: usize,
}

impl Program {
    pub fn compile(e: &Expr) -> Program {
        fn emit(e: &Expr, ops: &mut Vec<Op>) {
            match e {
                Expr::Constant(c) => ops.push(Op::Const(*c)),
                Expr::Var(v) => ops.push(Op::Var(v.slot())),
                Expr::Sum(t) => {
                    t.iter().for_each(|c| emit(c, ops));
                    ops.push(Op::Sum(t.len()));
                }
                Expr::Product(t) => {
                    t.iter().for_each(|c| emit(c, ops));
                    ops.push(Op::Product(t.len()));
                }
                Expr::Power(b, n) => {
                    emit(b, ops);
                    ops.push(Op::Pow(*n));
                }
                Expr::Exp(a) => {
                    emit(a, ops);
                    ops.push(Op::Exp);
                }
                Expr::Sin(a) => {
                    emit(a, ops);
                    ops.push(Op::Sin);
                }
                Expr::Cos(a) => {
                    emit(a, ops);
                    ops.push(Op::Cos);
                }
            }
        }
        let mut ops = Vec::with_capacity(e.node_count());
        emit(e, &mut ops);
        let mut depth = 0usize;
        let mut max_depth = 0usize;
        for op in &ops {
            match op {
                Op::Const(_) | Op::Var(_) => depth += 1,
                Op::Sum(n) | Op::Product(n) => depth = depth + 1 - n,
                _ => {}
            }
            max_depth = max_depth.max(depth);
        }
        Program {
            ops,
            arity: e.meta().hi as usize,
            depth: max_depth,
        }
    }

    /// Number of coordinates the program reads (highest variable index).
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Scratch buffer sized for [`Program::run`].
    pub fn stack(&self) -> Vec<f64> {
        Vec::with_capacity(self.depth.max(1))
    }

    /// Evaluates without the finiteness check. `point.len()` must be at
    /// least [`Program::arity`].
    #[inline]
    pub fn run(&self, point: &[f64], stack: &mut Vec<f64>) -> f64 {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Const(c) => stack.push(c),
                Op::Var(i) => stack.push(point[i]),
                Op::Sum(n) => {
                    let base = stack.len() - n;
                    let mut acc = 0.0;
                    for &x in &stack[base..] {
                        acc += x;
                    }
                    stack.truncate(base);
                    stack.push(acc);
                }
                Op::Product(n) => {
                    let base = stack.len() - n;
                    let mut acc = 1.0;
                    for &x in &stack[base..] {
                        acc *= x;
                    }
                    stack.truncate(base);
                    stack.push(acc);
                }
                Op::Pow(n) => {
                    let top = stack.last_mut().unwrap();
                    *top = top.powi(n);
                }
                Op::Exp => {
                    let top = stack.last_mut().unwrap();
                    *top = top.exp();
                }
                Op::Sin => {
                    let top = stack.last_mut().unwrap();
                    *top = top.sin();
                }
                Op::Cos => {
                    let top = stack.last_mut().unwrap();
                    *top = top.cos();
                }
            }
        }
        stack[0]
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64, EvalError> {
        if point.len() < self.arity {
            return Err(EvalError::MissingCoordinate(VarId::new(self.arity as u32)));
        }
        let mut stack = self.stack();
        finite(self.run(point, &mut stack))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn exp_of_sum_at_origin() {
        assert_eq!(parse("exp(x1+x2)").unwrap().eval(&[0.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn sine_with_two_pi_phase() {
        let v = parse("sin(2*pi+2*x1)").unwrap().eval(&[0.25]).unwrap();
        let expected = (2.0 * std::f64::consts::PI + 0.5).sin();
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 0.479425538604203).abs() < 1e-14);
    }

    #[test]
    fn gaussian_at_origin() {
        // 1/sqrt(2*pi) needs a non-integer power, so the prefactor is built directly.
        let g = Expr::product(vec![
            Expr::Constant(1.0 / (2.0 * std::f64::consts::PI).sqrt()),
            parse("exp(-0.5*x1^2-0.5*x2^2-0.5*x3^2)").unwrap(),
        ]);
        assert_eq!(g.eval(&[0.0; 3]).unwrap(), 0.3989422804014327);
    }

    #[test]
    fn missing_coordinate() {
        let e = parse("x1*x3").unwrap();
        assert_eq!(e.eval(&[1.0, 2.0]), Err(EvalError::MissingCoordinate(VarId::new(3))));
    }

    #[test]
    fn overflow_is_an_error() {
        let e = parse("exp(1000*x1)").unwrap();
        assert!(matches!(e.eval(&[1.0]), Err(EvalError::NonFiniteResult(_))));
    }

    #[test]
    fn program_matches_tree_walk() {
        let e = parse("sin(x1*x2 - 3)^2 + exp(x3)/(1 + x1^2) - cos(2*x2)").unwrap();
        let p = Program::compile(&e);
        for pt in [[0.1, 0.2, 0.3], [1.5, -2.0, 0.7], [-0.4, 3.3, -1.1]] {
            assert_eq!(p.eval(&pt).unwrap().to_bits(), e.eval(&pt).unwrap().to_bits());
        }
    }
}
