use std::fmt;

use super::Expr;

fn write_constant(f: &mut fmt::Formatter<'_>, c: f64) -> fmt::Result {
    let a = c.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        write!(f, "{c:e}")
    } else {
        write!(f, "{c}")
    }
}

fn is_atom(e: &Expr) -> bool {
    match e {
        Expr::Constant(c) => *c >= 0.0 || c.is_nan(),
        Expr::Var(_) | Expr::Exp(_) | Expr::Sin(_) | Expr::Cos(_) => true,
        _ => false,
    }
}

/// Prints in the integrand DSL; the output parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Constant(c) => write_constant(f, *c),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Sum(t) => {
                for (i, e) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            Expr::Product(t) => {
                for (i, e) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    match e {
                        Expr::Sum(_) => write!(f, "({e})")?,
                        Expr::Constant(c) if i > 0 && *c < 0.0 => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            Expr::Power(b, n) => {
                if is_atom(b) {
                    write!(f, "{b}^{n}")
                } else {
                    write!(f, "({b})^{n}")
                }
            }
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Sin(a) => write!(f, "sin({a})"),
            Expr::Cos(a) => write!(f, "cos({a})"),
        }
    }
}
