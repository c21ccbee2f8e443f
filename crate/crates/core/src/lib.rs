//! Multilevel dimension iteration (MDI) for tensor-product quadrature.
//!
//! The integrand is held as a symbolic [`Expr`]. Each iteration sums one or
//! more leading coordinates against a composite 1-d rule and keeps the
//! partially summed function symbolic, so a separable integrand never
//! expands to the `N^d` terms of the plain tensor sum.
//!
//! ```
//! use mdi::{mdi_integrate, parse, Domain, MdiConfig, RuleKind};
//!
//! let g = parse("exp(x1 - x2 + x3)").unwrap();
//! let cfg = MdiConfig::new(11, 1, RuleKind::Simpson);
//! let (value, _trace) = mdi_integrate(&g, &Domain::unit(3), &cfg).unwrap();
//! let exact = (1f64.exp() - 1.0).powi(2) * (1.0 - (-1f64).exp());
//! assert!((value - exact).abs() / exact < 1e-5);
//! ```

pub mod baselines;
pub mod bench;
pub mod engine;
pub mod expr;
pub mod numeric;
pub mod quad;

pub use baselines::{mc_integrate, reference_integral, relative_error, stp_integrate, McConfig, Reference};
pub use engine::{bind_and_sum, mdi_integrate, stp_equivalence_check, MdiConfig, MdiError, ReductionTrace};
pub use expr::{parse, Expr, LinearForm, VarId};
pub use quad::{make_rule, Domain, RuleKind, Rule1D};
