use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::BenchError;
use crate::expr::{parse, Expr};
use crate::quad::Domain;

/// The integrand families of the benchmark suite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TestFamily {
    /// `exp(x1 - x2 + x3 - ...)`
    AltExp,
    /// `prod 1/(0.9^2 + (xi - 0.6)^2)`
    ProdRational,
    /// `exp(-|x|^2/2) / sqrt(2 pi)`
    Gauss,
    /// `cos(2 pi + 2 sum xi)`
    CosSum,
    /// `exp(5 (x1^2 - x2^2 + x3^2 - ...))`
    AltExpSq,
    /// `exp(5 x1^2 + 5 x2^2)` on `[0,2]^2`
    ExpRadial2,
    /// `sin(2 pi + 10 x1^2 + 5 x2^2)` on `[0,2]^2`
    SinPhase2,
    /// `exp(5 x1^2 + 5 x2^2 + 5 x3^2)` on `[0,2]^3`
    ExpRadial3,
    /// `sin(2 pi + 10 x1^2 + 5 x2^2 + 20 x3^2)` on `[0,2]^3`
    SinPhase3,
    /// Any integrand in the DSL, on `[0,1]^d`.
    Custom(String),
}

impl TestFamily {
    pub const NAMED: [TestFamily; 9] = [
        TestFamily::AltExp,
        TestFamily::ProdRational,
        TestFamily::Gauss,
        TestFamily::CosSum,
        TestFamily::AltExpSq,
        TestFamily::ExpRadial2,
        TestFamily::SinPhase2,
        TestFamily::ExpRadial3,
        TestFamily::SinPhase3,
    ];

    pub fn name(&self) -> &str {
        match self {
            TestFamily::AltExp => "alt_exp",
            TestFamily::ProdRational => "prod_rational",
            TestFamily::Gauss => "gauss",
            TestFamily::CosSum => "cos_sum",
            TestFamily::AltExpSq => "alt_exp_sq",
            TestFamily::ExpRadial2 => "exp_radial2",
            TestFamily::SinPhase2 => "sin_phase2",
            TestFamily::ExpRadial3 => "exp_radial3",
            TestFamily::SinPhase3 => "sin_phase3",
            TestFamily::Custom(_) => "custom",
        }
    }

    /// The only admissible dimension, for the fixed-dimension families.
    pub fn fixed_dim(&self) -> Option<usize> {
        match self {
            TestFamily::ExpRadial2 | TestFamily::SinPhase2 => Some(2),
            TestFamily::ExpRadial3 | TestFamily::SinPhase3 => Some(3),
            _ => None,
        }
    }

    pub fn default_domain(&self, d: usize) -> Domain {
        if self.fixed_dim().is_some() {
            Domain::cube(d, 0.0, 2.0)
        } else {
            Domain::unit(d)
        }
    }
}

impl fmt::Display for TestFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestFamily {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let alias = match s {
            "g1" => "alt_exp",
            "g2" => "prod_rational",
            "g3" => "gauss",
            "g4" => "cos_sum",
            "g5" => "alt_exp_sq",
            other => other,
        };
        TestFamily::NAMED
            .into_iter()
            .find(|f| f.name() == alias)
            .ok_or_else(|| BenchError::UnknownFamily(s.to_string()))
    }
}

fn x(i: usize) -> Expr {
    Expr::var(i as u32)
}

fn scaled(c: f64, e: Expr) -> Expr {
    Expr::product(vec![Expr::Constant(c), e])
}

fn sign(i: usize) -> f64 {
    if i % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// The integrand of `family` in `d` dimensions and its default domain.
pub fn expand_family(family: &TestFamily, d: usize) -> Result<(Expr, Domain), BenchError> {
    let bad = || BenchError::BadDimension {
        family: family.name().to_string(),
        d,
    };
    if d == 0 || family.fixed_dim().is_some_and(|k| k != d) {
        return Err(bad());
    }
    let axes = 1..=d;
    let sq = |i| Expr::pow(x(i), 2);
    let g = match family {
        TestFamily::AltExp => Expr::exp(Expr::sum(axes.map(|i| scaled(sign(i), x(i))).collect())),
        TestFamily::ProdRational => Expr::product(
            axes.map(|i| {
                let shifted = Expr::sum(vec![x(i), Expr::Constant(-0.6)]);
                Expr::pow(Expr::sum(vec![Expr::Constant(0.9f64.powi(2)), Expr::pow(shifted, 2)]), -1)
            })
            .collect(),
        ),
        TestFamily::Gauss => Expr::product(vec![
            Expr::Constant(1.0 / (2.0 * PI).sqrt()),
            Expr::exp(Expr::sum(axes.map(|i| scaled(-0.5, sq(i))).collect())),
        ]),
        TestFamily::CosSum => {
            let mut terms = vec![Expr::Constant(2.0 * PI)];
            terms.extend(axes.map(|i| scaled(2.0, x(i))));
            Expr::cos(Expr::sum(terms))
        }
        TestFamily::AltExpSq => Expr::exp(Expr::sum(axes.map(|i| scaled(5.0 * sign(i), sq(i))).collect())),
        TestFamily::ExpRadial2 | TestFamily::ExpRadial3 => Expr::exp(Expr::sum(axes.map(|i| scaled(5.0, sq(i))).collect())),
        TestFamily::SinPhase2 | TestFamily::SinPhase3 => {
            let mut terms = vec![Expr::Constant(2.0 * PI)];
            terms.extend(axes.zip([10.0, 5.0, 20.0]).map(|(i, k)| scaled(k, sq(i))));
            Expr::sin(Expr::sum(terms))
        }
        TestFamily::Custom(src) => {
            let g = parse(src)?;
            if g.max_var().is_some_and(|v| v.slot() >= d) {
                return Err(bad());
            }
            g
        }
    };
    Ok((g, family.default_domain(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_exponential() {
        let (g, dom) = expand_family(&TestFamily::AltExp, 3).unwrap();
        assert_eq!(g, parse("exp(x1 - x2 + x3)").unwrap());
        assert_eq!(dom, Domain::unit(3));
    }

    #[test]
    fn gaussian_prefactor() {
        let (g, _) = expand_family(&TestFamily::Gauss, 1).unwrap();
        let Expr::Product(t) = &g else { panic!() };
        assert_eq!(t.as_slice()[0], Expr::Constant(0.3989422804014327));
        assert_eq!(t.as_slice()[1], parse("exp(-0.5*x1^2)").unwrap());
    }

    #[test]
    fn rational_product_value() {
        let (g, _) = expand_family(&TestFamily::ProdRational, 2).unwrap();
        let v = g.eval(&[0.6, 0.6]).unwrap();
        assert!((v - 1.524157902758726).abs() < 1e-15);
        assert!((v - (1.0f64 / 0.81).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn free_variables_are_exactly_the_axes() {
        for f in TestFamily::NAMED {
            let d = f.fixed_dim().unwrap_or(6);
            let (g, dom) = expand_family(&f, d).unwrap();
            let vars: Vec<usize> = g.free_vars().into_iter().map(|v| v.index() as usize).collect();
            assert_eq!(vars, (1..=d).collect::<Vec<_>>(), "{f}");
            assert_eq!(dom.dim(), d);
        }
    }

    #[test]
    fn test_one_families() {
        let (g, dom) = expand_family(&TestFamily::SinPhase2, 2).unwrap();
        assert_eq!(g, parse("sin(2*pi+10*x1^2+5*x2^2)").unwrap());
        assert_eq!(dom.volume(), 4.0);
        assert!(matches!(expand_family(&TestFamily::ExpRadial2, 3), Err(BenchError::BadDimension { .. })));
        assert!(matches!(expand_family(&TestFamily::AltExp, 0), Err(BenchError::BadDimension { .. })));
    }

    #[test]
    fn names_round_trip() {
        for f in TestFamily::NAMED {
            assert_eq!(f.name().parse::<TestFamily>().unwrap(), f);
        }
        assert_eq!("g4".parse::<TestFamily>().unwrap(), TestFamily::CosSum);
        assert!("nope".parse::<TestFamily>().is_err());
    }
}
