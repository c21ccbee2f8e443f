use std::collections::btree_map::{self, BTreeMap};

use super::{Expr, Terms};

/// Product of non-constant factors, kept in canonical order. The empty
/// monomial stands for the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(Terms);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Terms::empty())
    }

    pub(crate) fn from_terms(t: Terms) -> Monomial {
        debug_assert!(t.iter().all(|f| !f.is_constant() && !matches!(f, Expr::Product(_))));
        Monomial(t)
    }

    pub(crate) fn single(f: Expr) -> Monomial {
        Monomial::from_terms(Terms::from_sorted(vec![f]))
    }

    pub fn factors(&self) -> &[Expr] {
        self.0.as_slice()
    }

    pub(crate) fn terms(&self) -> &Terms {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.0.meta().nodes
    }

    pub fn to_expr(&self) -> Expr {
        Expr::product_of_view(self.0.clone())
    }

    /// Splits a normalized expression that is not a sum into coefficient and
    /// monomial.
    pub(crate) fn from_term(e: &Expr) -> (f64, Monomial) {
        match e {
            Expr::Constant(c) => (*c, Monomial::one()),
            Expr::Product(t) => match t.as_slice().first() {
                Some(Expr::Constant(c)) => (*c, Monomial(t.skip(1))),
                _ => (1.0, Monomial(t.clone())),
            },
            other => (1.0, Monomial::single(other.clone())),
        }
    }
}

/// A finite sum of `coefficient * monomial` with distinct monomials and
/// nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinearForm {
    terms: BTreeMap<Monomial, f64>,
}

impl LinearForm {
    pub fn new() -> LinearForm {
        LinearForm::default()
    }

    pub fn constant(c: f64) -> LinearForm {
        let mut f = LinearForm::new();
        f.add(Monomial::one(), c);
        f
    }

    /// Collects a normalized expression.
    pub fn from_expr(e: &Expr) -> LinearForm {
        let mut f = LinearForm::new();
        f.add_expr(e, 1.0);
        f
    }

    /// Adds `scale * e` for a normalized `e`.
    pub fn add_expr(&mut self, e: &Expr, scale: f64) {
        match e {
            Expr::Sum(t) => {
                for term in t.iter() {
                    let (c, m) = Monomial::from_term(term);
                    self.add(m, scale * c);
                }
            }
            other => {
                let (c, m) = Monomial::from_term(other);
                self.add(m, scale * c);
            }
        }
    }

    /// Accumulates `coeff` onto `m`. Entries that cancel to zero are dropped.
    pub fn add(&mut self, m: Monomial, coeff: f64) {
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(v) => {
                if coeff != 0.0 {
                    v.insert(coeff);
                }
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, f64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    /// Value when the form has no variables left.
    pub fn as_constant(&self) -> Option<f64> {
        match self.terms.len() {
            0 => Some(0.0),
            1 => self.terms.get(&Monomial::one()).copied(),
            _ => None,
        }
    }

    /// Total node count of all monomials plus one per term.
    pub fn node_count(&self) -> usize {
        self.terms.keys().map(|m| m.node_count() + 1).sum()
    }

    pub fn to_expr(&self) -> Expr {
        Expr::sum(
            self.terms
                .iter()
                .map(|(m, c)| {
                    if m.is_one() {
                        Expr::Constant(*c)
                    } else {
                        Expr::product(vec![Expr::Constant(*c), m.to_expr()])
                    }
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn collects_terms() {
        let e = parse("3*x1*x2 + exp(x1) - 2 + x1*x2").unwrap();
        let f = LinearForm::from_expr(&e);
        assert_eq!(f.len(), 3);
        let xy = Monomial::from_term(&parse("x1*x2").unwrap()).1;
        assert_eq!(f.coefficient(&xy), 4.0);
        assert_eq!(f.coefficient(&Monomial::one()), -2.0);
    }

    #[test]
    fn cancellation_removes_entry() {
        let mut f = LinearForm::from_expr(&parse("x1 + 2").unwrap());
        f.add(Monomial::single(Expr::var(1)), -1.0);
        assert_eq!(f.as_constant(), Some(2.0));
    }

    #[test]
    fn round_trip_pointwise() {
        let e = parse("0.5*sin(x1 + x2)*cos(x3) - exp(-x2)/(1 + x1^2) + 7").unwrap();
        let back = LinearForm::from_expr(&e).to_expr();
        for p in [[0.1, 0.2, 0.3], [1.0, -1.0, 2.0]] {
            assert!((e.eval(&p).unwrap() - back.eval(&p).unwrap()).abs() < 1e-14);
        }
    }
}
