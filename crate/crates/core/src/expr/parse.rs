//! Integrand DSL.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?          right-associative, integer exponent
//! atom    := number | 'pi' | var | func '(' expr ')' | '(' expr ')'
//! var     := 'x' [1-9][0-9]*
//! func    := 'exp' | 'sin' | 'cos'
//! number  := decimal or scientific literal, e.g. 2, 0.5, .5, 1e-3, 2.5E+4
//! ```
//!
//! `a/b` becomes `a * b^-1`. The exponent must fold to an integer constant.

use thiserror::Error;

use super::{Expr, VarId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("exponent at byte {offset} is not an integer constant")]
    NonIntegerExponent { offset: usize },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

/// Parses and normalizes an integrand.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> ParseError {
        ParseError::SyntaxError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(negate(self.term()?));
            } else {
                break;
            }
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat(b'*') {
                factors.push(self.unary()?);
            } else if self.eat(b'/') {
                factors.push(Expr::pow(self.unary()?, -1));
            } else {
                break;
            }
        }
        Ok(Expr::product(factors))
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(negate(self.unary()?));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let exponent = self.unary()?;
        match exponent {
            Expr::Constant(c) if c.fract() == 0.0 && c.abs() <= i32::MAX as f64 => Ok(Expr::pow(base, c as i32)),
            _ => Err(ParseError::NonIntegerExponent { offset: at }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(c) => Err(self.syntax(&format!("unexpected `{}`", c as char))),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
            i += 1;
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if j < bytes.len() && bytes[j].is_ascii_digit() {
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let lexeme = &self.src[start..i];
        match lexeme.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos = i;
                Ok(Expr::Constant(v))
            }
            _ => Err(self.syntax(&format!("malformed number `{lexeme}`"))),
        }
    }

    fn identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
            i += 1;
        }
        let name = &self.src[start..i];
        self.pos = i;
        let unknown = || ParseError::UnknownIdentifier {
            name: name.to_string(),
            offset: start,
        };
        match name {
            "pi" => Ok(Expr::Constant(std::f64::consts::PI)),
            "exp" | "sin" | "cos" => {
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(match name {
                    "exp" => Expr::exp(arg),
                    "sin" => Expr::sin(arg),
                    _ => Expr::cos(arg),
                })
            }
            _ => {
                let digits = name.strip_prefix('x').ok_or_else(unknown)?;
                if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(unknown());
                }
                let index: u32 = digits.parse().map_err(|_| unknown())?;
                Ok(Expr::Var(VarId::new(index)))
            }
        }
    }
}

fn negate(e: Expr) -> Expr {
    Expr::product(vec![Expr::Constant(-1.0), e])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_of_quadratic_sum() {
        let e = parse("exp(5*x1^2+5*x2^2)").unwrap();
        let quad = |i| Expr::product(vec![Expr::Constant(5.0), Expr::pow(Expr::var(i), 2)]);
        let expected = Expr::exp(Expr::sum(vec![quad(1), quad(2)]));
        assert_eq!(e, expected);
        let Expr::Exp(arg) = &e else { panic!() };
        let Expr::Sum(t) = arg.as_ref() else { panic!() };
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn zero() {
        assert_eq!(parse("0").unwrap(), Expr::Constant(0.0));
    }

    #[test]
    fn rational_factor() {
        let e = parse("1/(0.9^2+(x1-0.6)^2)").unwrap();
        let Expr::Power(base, -1) = &e else { panic!("{e:?}") };
        let Expr::Sum(t) = base.as_ref() else { panic!() };
        assert_eq!(t.as_slice()[0], Expr::Constant(0.9f64.powi(2)));
        for x in [0.0, 0.6, 1.5] {
            let direct = 1.0 / (0.9f64 * 0.9 + (x - 0.6) * (x - 0.6));
            let v = e.eval(&[x]).unwrap();
            assert!((v - direct).abs() <= 1e-15 * direct.abs());
        }
    }

    #[test]
    fn division_is_negative_power() {
        assert_eq!(parse("x1/x2").unwrap(), Expr::product(vec![Expr::var(1), Expr::pow(Expr::var(2), -1)]));
    }

    #[test]
    fn power_is_right_associative() {
        assert_eq!(parse("2^3^2").unwrap(), Expr::Constant(512.0));
        assert_eq!(parse("-x1^2").unwrap(), Expr::product(vec![Expr::Constant(-1.0), Expr::pow(Expr::var(1), 2)]));
        assert_eq!(parse("x1^-1").unwrap(), Expr::pow(Expr::var(1), -1));
    }

    #[test]
    fn scientific_literals() {
        assert_eq!(parse("2.5E+1 + .5 + 1e-1").unwrap(), Expr::Constant(25.0 + 0.5 + 0.1));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("x1^0.5"), Err(ParseError::NonIntegerExponent { offset: 3 })));
        assert!(matches!(parse("x1^x2"), Err(ParseError::NonIntegerExponent { .. })));
        assert!(matches!(parse("y+1"), Err(ParseError::UnknownIdentifier { offset: 0, .. })));
        assert!(matches!(parse("x0"), Err(ParseError::UnknownIdentifier { .. })));
        assert!(matches!(parse("tan(x1)"), Err(ParseError::UnknownIdentifier { .. })));
        assert!(matches!(parse("x1 + "), Err(ParseError::SyntaxError { offset: 5, .. })));
        assert!(matches!(parse("(x1"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse("x1 x2"), Err(ParseError::SyntaxError { offset: 3, .. })));
    }
}
