//! Reference integrals used to compute relative errors.
//!
//! Every named family is a product of per-axis factors, possibly inside the
//! real or imaginary part of a complex phase, so the `d`-dimensional integral
//! reduces to 1-d integrals. Those are taken in closed form where one exists
//! and otherwise by composite Simpson on 20001 points with a Richardson
//! correction against 10001 points.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{stp, BaselineError};
use crate::bench::TestFamily;
use crate::expr::{parse, Program};
use crate::quad::{Domain, RuleKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceMethod {
    AnalyticProduct,
    HighRes1d,
    StpRichardson,
}

impl ReferenceMethod {
    pub fn name(self) -> &'static str {
        match self {
            ReferenceMethod::AnalyticProduct => "analytic-product",
            ReferenceMethod::HighRes1d => "high-res-1d",
            ReferenceMethod::StpRichardson => "stp-richardson",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub value: f64,
    pub method: ReferenceMethod,
    /// Estimated relative accuracy of `value`.
    pub est_accuracy: f64,
}

/// `|J - ref| / |ref|`, or the absolute error when `|ref| <= 1e-300`.
pub fn relative_error(j: f64, reference: &Reference) -> f64 {
    let diff = (j - reference.value).abs();
    if reference.value.abs() > 1e-300 {
        diff / reference.value.abs()
    } else {
        diff
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Factor {
    /// `exp(s*x)`
    Exp(f64),
    /// `exp(k*x^2)`
    ExpSq(f64),
    /// `1/(0.81 + (x - 0.6)^2)`
    Rational,
    /// `exp(i*k*x^p)`
    Phase(f64, i32),
}

impl Factor {
    fn eval(self, x: f64) -> Complex64 {
        match self {
            Factor::Exp(s) => (s * x).exp().into(),
            Factor::ExpSq(k) => (k * x * x).exp().into(),
            Factor::Rational => (1.0 / (0.81 + (x - 0.6) * (x - 0.6))).into(),
            Factor::Phase(k, p) => Complex64::from_polar(1.0, k * x.powi(p)),
        }
    }

    fn closed_form(self, a: f64, b: f64) -> Option<Complex64> {
        match self {
            Factor::Exp(s) => Some((((s * b).exp() - (s * a).exp()) / s).into()),
            Factor::ExpSq(k) if k < 0.0 => {
                let r = (-k).sqrt();
                Some((0.5 * (PI / -k).sqrt() * (libm::erf(r * b) - libm::erf(r * a))).into())
            }
            Factor::Rational => Some(Complex64::from((((b - 0.6) / 0.9).atan() - ((a - 0.6) / 0.9).atan()) / 0.9)),
            Factor::Phase(k, 1) => {
                let i = Complex64::i();
                Some(((i * k * b).exp() - (i * k * a).exp()) / (i * k))
            }
            _ => None,
        }
    }

    /// Simpson with 20001 nodes plus Richardson against 10001 nodes.
    /// Returns the value and an estimate of its relative error.
    fn high_res(self, a: f64, b: f64) -> (Complex64, f64) {
        let simpson = |n: usize| {
            let h = (b - a) / (n - 1) as f64;
            let terms: Vec<Complex64> = (0..n)
                .map(|i| {
                    let c = if i == 0 || i == n - 1 {
                        1.0
                    } else if i % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    self.eval(a + i as f64 * (b - a) / (n - 1) as f64) * c
                })
                .collect();
            let re: Vec<f64> = terms.iter().map(|z| z.re).collect();
            let im: Vec<f64> = terms.iter().map(|z| z.im).collect();
            Complex64::new(crate::numeric::pairwise_sum(&re), crate::numeric::pairwise_sum(&im)) * (h / 3.0)
        };
        let fine = simpson(20001);
        let coarse = simpson(10001);
        let value = fine + (fine - coarse) / 15.0;
        let est = ((fine - coarse).norm() / 15.0 / value.norm()).max(f64::EPSILON);
        (value, est)
    }
}

enum Part {
    Re,
    Im,
}

/// `Part(prefactor * prod_i integral(factors[i]))`.
struct Separable {
    prefactor: Complex64,
    factors: Vec<Factor>,
    part: Part,
}

fn separable(family: &TestFamily, d: usize) -> Option<Separable> {
    let alternating = |f: fn(f64) -> Factor| (1..=d).map(|i| f(if i % 2 == 1 { 1.0 } else { -1.0 })).collect();
    let real = |prefactor: f64, factors| Separable {
        prefactor: prefactor.into(),
        factors,
        part: Part::Re,
    };
    let phase = Complex64::from_polar(1.0, 2.0 * PI);
    Some(match family {
        TestFamily::AltExp => real(1.0, alternating(Factor::Exp)),
        TestFamily::ProdRational => real(1.0, vec![Factor::Rational; d]),
        TestFamily::Gauss => real(1.0 / (2.0 * PI).sqrt(), vec![Factor::ExpSq(-0.5); d]),
        TestFamily::AltExpSq => real(1.0, alternating(|s| Factor::ExpSq(5.0 * s))),
        TestFamily::ExpRadial2 | TestFamily::ExpRadial3 => real(1.0, vec![Factor::ExpSq(5.0); d]),
        TestFamily::CosSum => Separable {
            prefactor: phase,
            factors: vec![Factor::Phase(2.0, 1); d],
            part: Part::Re,
        },
        TestFamily::SinPhase2 | TestFamily::SinPhase3 => Separable {
            prefactor: phase,
            factors: [10.0, 5.0, 20.0][..d].iter().map(|&k| Factor::Phase(k, 2)).collect(),
            part: Part::Im,
        },
        TestFamily::Custom(_) => return None,
    })
}

/// Reference value for a family on `domain`, choosing the most accurate
/// available method.
pub fn reference_integral(family: &TestFamily, d: usize, domain: &Domain) -> Result<Reference, BaselineError> {
    reference_impl(family, d, domain, false)
}

/// Like [`reference_integral`] but with a forced method, for cross-checks.
/// Only `HighRes1d` can be forced on a family that has closed forms.
pub fn reference_integral_by(family: &TestFamily, d: usize, domain: &Domain, method: ReferenceMethod) -> Result<Reference, BaselineError> {
    match method {
        ReferenceMethod::HighRes1d => reference_impl(family, d, domain, true),
        _ => reference_integral(family, d, domain),
    }
}

fn reference_impl(family: &TestFamily, d: usize, domain: &Domain, force_quadrature: bool) -> Result<Reference, BaselineError> {
    if domain.dim() != d {
        return Err(BaselineError::DimensionMismatch {
            max_var: d as u32,
            dim: domain.dim(),
        });
    }
    let Some(sep) = separable(family, d) else {
        return custom_reference(family, domain);
    };

    // Per-axis integrals, cached by (factor, interval) since most axes repeat.
    // Entries hold the value, its error estimate and whether it is closed form.
    #[allow(clippy::type_complexity)]
    let mut cache: Vec<(Factor, (f64, f64), Complex64, f64, bool)> = Vec::new();
    let mut product = sep.prefactor;
    let mut rel_err = 0.0;
    let mut all_closed = true;
    for (factor, &(a, b)) in sep.factors.iter().zip(domain.intervals()) {
        let hit = cache.iter().find(|c| c.0 == *factor && c.1 == (a, b));
        let (value, est, closed) = match hit {
            Some(c) => (c.2, c.3, c.4),
            None => {
                let entry = match factor.closed_form(a, b).filter(|_| !force_quadrature) {
                    Some(v) => (v, f64::EPSILON, true),
                    None => {
                        let (v, e) = factor.high_res(a, b);
                        (v, e, false)
                    }
                };
                cache.push((*factor, (a, b), entry.0, entry.1, entry.2));
                entry
            }
        };
        product *= value;
        rel_err += est;
        all_closed &= closed;
    }
    let value = match sep.part {
        Part::Re => product.re,
        Part::Im => product.im,
    };
    let est_accuracy = if value != 0.0 {
        (product.norm() * (rel_err + d as f64 * f64::EPSILON)) / value.abs()
    } else {
        f64::INFINITY
    };
    Ok(Reference {
        value,
        method: if all_closed {
            ReferenceMethod::AnalyticProduct
        } else {
            ReferenceMethod::HighRes1d
        },
        est_accuracy,
    })
}

/// Custom integrands: Simpson tensor sum with Richardson extrapolation,
/// feasible up to three dimensions.
fn custom_reference(family: &TestFamily, domain: &Domain) -> Result<Reference, BaselineError> {
    let TestFamily::Custom(src) = family else {
        return Err(BaselineError::UnknownFamily(family.name().to_string()));
    };
    let n = match domain.dim() {
        1 => 20001,
        2 => 2001,
        3 => 201,
        _ => return Err(BaselineError::UnknownFamily(format!("custom `{src}` (no reference above d = 3)"))),
    };
    let g = parse(src).map_err(|e| BaselineError::UnknownFamily(format!("custom `{src}`: {e}")))?;
    super::check_dims(&g, domain.dim())?;
    let prog = Program::compile(&g);
    let fine = stp::tensor_sum(&prog, &domain.rules(RuleKind::Simpson, n)?, 0);
    let coarse = stp::tensor_sum(&prog, &domain.rules(RuleKind::Simpson, n.div_ceil(2))?, 0);
    let value = fine + (fine - coarse) / 15.0;
    Ok(Reference {
        value,
        method: ReferenceMethod::StpRichardson,
        est_accuracy: ((fine - coarse).abs() / 15.0 / value.abs()).max(f64::EPSILON),
    })
}
