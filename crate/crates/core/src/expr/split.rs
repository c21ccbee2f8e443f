//! Separation of an expression with respect to one coordinate.
//!
//! Every term of the result has the shape
//! `coeff * bound(v) * entangled(v, rest) * free(rest)`, where `bound` depends
//! on `v` alone and `free` does not mention `v`. Terms without entangled
//! factors can be summed over the nodes of `v` numerically and then collected
//! by their free monomial. The rewrites used:
//!
//! * product partition into `v`-only, `v`-free and mixed factors;
//! * `exp(a + b) = exp(a) * exp(b)` on the additive split of the argument;
//! * angle addition for `sin` and `cos` of a sum;
//! * distribution over a mixed `Sum` factor.
//!
//! Anything else that mixes `v` with other coordinates is reported as
//! entangled.

use super::{Expr, LinearForm, Monomial, Terms, VarId};

/// One term of a [`Split`].
#[derive(Clone, Debug, PartialEq)]
pub struct SplitTerm {
    pub coeff: f64,
    /// Factors that depend on the split variable only.
    pub bound: Vec<Expr>,
    /// Factors that mix the split variable with other coordinates.
    pub entangled: Vec<Expr>,
    /// Part free of the split variable.
    pub free: Monomial,
}

impl SplitTerm {
    pub fn is_entangled(&self) -> bool {
        !self.entangled.is_empty()
    }

    /// Product of the `v`-only factors (`1` when there are none).
    pub fn bound_expr(&self) -> Expr {
        Expr::product(self.bound.clone())
    }

    pub fn to_expr(&self) -> Expr {
        let mut factors = Vec::with_capacity(self.bound.len() + self.entangled.len() + 2);
        factors.push(Expr::Constant(self.coeff));
        factors.extend(self.bound.iter().cloned());
        factors.extend(self.entangled.iter().cloned());
        factors.push(self.free.to_expr());
        Expr::product(factors)
    }
}

/// Decomposition of an expression relative to one variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub var: VarId,
    pub terms: Vec<SplitTerm>,
}

impl Split {
    pub fn is_entangled(&self) -> bool {
        self.terms.iter().any(SplitTerm::is_entangled)
    }

    /// Reassembles the decomposition; pointwise equal to the input.
    pub fn to_expr(&self) -> Expr {
        Expr::sum(self.terms.iter().map(SplitTerm::to_expr).collect())
    }
}

/// Splits a normalized expression with respect to `v`.
pub fn split_for_binding(e: &Expr, v: VarId) -> Split {
    let form = LinearForm::from_expr(e);
    let terms = form.iter().flat_map(|(m, c)| split_term(c, m, v)).collect();
    Split { var: v, terms }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dep {
    Free,
    Only,
    Mixed,
}

fn dep(e: &Expr, v: VarId) -> Dep {
    let m = e.meta();
    if m.lo == 0 || !e.contains_var(v) {
        Dep::Free
    } else if m.lo == v.index() && m.hi == v.index() {
        Dep::Only
    } else {
        Dep::Mixed
    }
}

/// Separates operands that mention `v` (and constants) from those that do
/// not. When `v` is the lowest variable in the list the free operands form a
/// suffix and are returned as a shared view.
fn partition(t: &Terms, v: VarId) -> (Vec<Expr>, Terms) {
    let items = t.as_slice();
    let mut k = 0;
    while k < items.len() {
        let lo = items[k].meta().lo;
        if lo == 0 || lo == v.index() {
            k += 1;
        } else {
            break;
        }
    }
    let rest = t.skip(k);
    if rest.is_empty() || rest.meta().lo > v.index() {
        return (items[..k].to_vec(), rest);
    }
    let mut dependent = Vec::new();
    let mut free = Vec::new();
    for e in items {
        if e.is_constant() || dep(e, v) != Dep::Free {
            dependent.push(e.clone());
        } else {
            free.push(e.clone());
        }
    }
    (dependent, Terms::from_sorted(free))
}

/// Additive split of a function argument: (`v`-dependent summands including
/// constants, sum of the `v`-free summands).
fn additive_partition(arg: &Expr, v: VarId) -> (Vec<Expr>, Expr) {
    match arg {
        Expr::Sum(t) => {
            let (dependent, free) = partition(t, v);
            (dependent, Expr::sum_of_view(free))
        }
        Expr::Product(t) if t.len() == 2 => match (&t.as_slice()[0], &t.as_slice()[1]) {
            (Expr::Constant(c), Expr::Sum(s)) => {
                let expanded = Expr::sum(s.iter().map(|e| Expr::product(vec![Expr::Constant(*c), e.clone()])).collect());
                match expanded {
                    Expr::Sum(_) => additive_partition(&expanded, v),
                    other => (vec![other], Expr::Constant(0.0)),
                }
            }
            _ => (vec![arg.clone()], Expr::Constant(0.0)),
        },
        _ => (vec![arg.clone()], Expr::Constant(0.0)),
    }
}

#[derive(Clone, Debug)]
struct Partial {
    coeff: f64,
    bound: Vec<Expr>,
    entangled: Vec<Expr>,
    free: Vec<Expr>,
}

impl Partial {
    fn unit() -> Partial {
        Partial {
            coeff: 1.0,
            bound: Vec::new(),
            entangled: Vec::new(),
            free: Vec::new(),
        }
    }

    fn entangled(f: &Expr) -> Partial {
        Partial {
            entangled: vec![f.clone()],
            ..Partial::unit()
        }
    }

    fn push_dependent(&mut self, e: Expr, v: VarId) {
        match e {
            Expr::Constant(c) => self.coeff *= c,
            e if dep(&e, v) == Dep::Only => self.bound.push(e),
            e => self.entangled.push(e),
        }
    }

    fn push_free(&mut self, e: Expr) {
        match e {
            Expr::Constant(c) => self.coeff *= c,
            e => self.free.push(e),
        }
    }

    fn times(&self, other: &Partial) -> Partial {
        let cat = |a: &[Expr], b: &[Expr]| a.iter().chain(b).cloned().collect::<Vec<_>>();
        Partial {
            coeff: self.coeff * other.coeff,
            bound: cat(&self.bound, &other.bound),
            entangled: cat(&self.entangled, &other.entangled),
            free: cat(&self.free, &other.free),
        }
    }
}

/// Alternatives whose sum equals the mixed factor `f`.
fn decompose(f: &Expr, v: VarId) -> Vec<Partial> {
    match f {
        Expr::Exp(arg) => {
            let (dependent, free) = additive_partition(arg, v);
            let (only, mixed): (Vec<Expr>, Vec<Expr>) = dependent.into_iter().partition(|e| dep(e, v) != Dep::Mixed);
            if free.is_constant() && only.is_empty() {
                return vec![Partial::entangled(f)];
            }
            let mut p = Partial::unit();
            if !only.is_empty() {
                p.push_dependent(Expr::exp(Expr::sum(only)), v);
            }
            if !mixed.is_empty() {
                p.push_dependent(Expr::exp(Expr::sum(mixed)), v);
            }
            p.push_free(Expr::exp(free));
            vec![p]
        }
        Expr::Sin(arg) | Expr::Cos(arg) => {
            let (dependent, free) = additive_partition(arg, v);
            if free.is_constant() {
                return vec![Partial::entangled(f)];
            }
            let angle = Expr::sum(dependent);
            let term = |sign: f64, bound: Expr, rest: Expr| {
                let mut p = Partial {
                    coeff: sign,
                    ..Partial::unit()
                };
                p.push_dependent(bound, v);
                p.push_free(rest);
                p
            };
            let (sv, cv) = (Expr::sin(angle.clone()), Expr::cos(angle));
            let (sr, cr) = (Expr::sin(free.clone()), Expr::cos(free));
            if matches!(f, Expr::Sin(_)) {
                vec![term(1.0, sv, cr), term(1.0, cv, sr)]
            } else {
                vec![term(1.0, cv, cr), term(-1.0, sv, sr)]
            }
        }
        Expr::Sum(t) => {
            let mut alts = Vec::new();
            for e in t.iter() {
                let (c, m) = Monomial::from_term(e);
                for st in split_term(c, &m, v) {
                    alts.push(Partial {
                        coeff: st.coeff,
                        bound: st.bound,
                        entangled: st.entangled,
                        free: st.free.factors().to_vec(),
                    });
                }
            }
            alts
        }
        _ => vec![Partial::entangled(f)],
    }
}

/// Splits `coeff * m` with respect to `v`.
pub(crate) fn split_term(coeff: f64, m: &Monomial, v: VarId) -> Vec<SplitTerm> {
    let (dependent, free_base) = partition(m.terms(), v);
    let mut partials = vec![Partial {
        coeff,
        ..Partial::unit()
    }];
    for f in dependent {
        match dep(&f, v) {
            Dep::Free => partials.iter_mut().for_each(|p| p.push_free(f.clone())),
            Dep::Only => partials.iter_mut().for_each(|p| p.bound.push(f.clone())),
            Dep::Mixed => {
                let alts = decompose(&f, v);
                partials = partials.iter().flat_map(|p| alts.iter().map(move |a| p.times(a))).collect();
            }
        }
    }

    partials
        .into_iter()
        .map(|p| {
            let (scale, free) = if p.free.is_empty() {
                (1.0, Monomial::from_terms(free_base.clone()))
            } else {
                let mut factors: Vec<Expr> = free_base.iter().cloned().collect();
                factors.extend(p.free);
                Monomial::from_term(&Expr::product(factors))
            };
            SplitTerm {
                coeff: p.coeff * scale,
                bound: p.bound,
                entangled: p.entangled,
                free,
            }
        })
        .collect()
}
