//! The dimension-iteration driver.
//!
//! The integrand is kept as a [`LinearForm`]. One binding step takes the
//! leading unbound coordinate `v`, splits every monomial into a `v`-only part
//! and a `v`-free part, sums the `v`-only part over the rule's nodes and adds
//! the result into the coefficient of the `v`-free monomial. Monomials that
//! no rewrite separates are bound by substituting each node and collecting
//! the copies, guarded by a size budget.
//!
//! Internally variables are never renumbered: after `j` bindings the leading
//! free variable is `x{j+1}`. [`bind_and_sum`] renumbers its output so the
//! reduced function again starts at `x1`.

use std::time::Instant;

use thiserror::Error;

use crate::baselines::{self, BaselineError};
use crate::expr::{split_term, EvalError, Expr, LinearForm, Program, VarId};
use crate::numeric::{pairwise_sum, weighted_sum};
use crate::quad::{Domain, GaussCounting, QuadError, Rule1D, RuleKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MdiError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("integrand uses x{max_var} but the domain has {dim} axes")]
    DimensionMismatch { max_var: u32, dim: usize },
    #[error("size budget exceeded: {what} reached {size} (limit {limit})")]
    SizeBudgetExceeded { what: &'static str, size: usize, limit: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("oracle infeasible: d = {d}, N = {n} (needs d <= 6 and N^d <= 1e7)")]
    OracleInfeasible { d: usize, n: usize },
    #[error(transparent)]
    Baseline(#[from] BaselineError),
}

/// What happens once at most `m` coordinates remain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Residual {
    /// Keep binding symbolically until no variable is left.
    #[default]
    Iterate,
    /// Sum the residual low-dimensional integrand with a plain tensor loop.
    Direct,
}

impl std::str::FromStr for Residual {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iterate" => Ok(Residual::Iterate),
            "direct" => Ok(Residual::Direct),
            _ => Err(format!("unknown residual mode `{s}` (expected direct or iterate)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MdiConfig {
    /// Nodes per coordinate direction.
    pub n: usize,
    /// Coordinates bound per iteration, 1 to 3.
    pub m: usize,
    pub rule: RuleKind,
    pub max_monomials: usize,
    pub max_nodes_per_monomial: usize,
    pub residual: Residual,
    pub gauss_counting: GaussCounting,
}

impl MdiConfig {
    pub fn new(n: usize, m: usize, rule: RuleKind) -> MdiConfig {
        MdiConfig {
            n,
            m,
            rule,
            max_monomials: 100_000,
            max_nodes_per_monomial: 10_000,
            residual: Residual::Iterate,
            gauss_counting: GaussCounting::Points,
        }
    }

    /// Total nodes per axis after applying the Gauss counting convention.
    pub fn nodes_per_axis(&self) -> usize {
        self.gauss_counting.total_nodes(self.rule, self.n)
    }

    pub fn validate(&self) -> Result<(), MdiError> {
        if !(1..=3).contains(&self.m) {
            return Err(MdiError::InvalidConfig(format!("m must be 1, 2 or 3 (got {})", self.m)));
        }
        if self.max_monomials == 0 || self.max_nodes_per_monomial == 0 {
            return Err(MdiError::InvalidConfig("size budgets must be positive".into()));
        }
        if !self.rule.accepts(self.nodes_per_axis()) {
            return Err(MdiError::InvalidConfig(format!(
                "{} rule cannot use N = {} (nearest valid: {})",
                self.rule,
                self.nodes_per_axis(),
                self.rule.nearest_valid(self.nodes_per_axis())
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    /// Unbound coordinates left after this iteration.
    pub remaining: usize,
    pub monomial_count: usize,
    pub node_count: usize,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    /// Scalar evaluations of `v`-only factors plus node substitutions.
    pub eval_count: u64,
    pub peak_monomials: usize,
}

struct Budget {
    max_monomials: usize,
    max_nodes: usize,
}

impl Budget {
    fn of(cfg: &MdiConfig) -> Budget {
        Budget {
            max_monomials: cfg.max_monomials,
            max_nodes: cfg.max_nodes_per_monomial,
        }
    }

    fn check(&self, form: &LinearForm) -> Result<(), MdiError> {
        if form.len() > self.max_monomials {
            return Err(MdiError::SizeBudgetExceeded {
                what: "monomial count",
                size: form.len(),
                limit: self.max_monomials,
            });
        }
        Ok(())
    }

    fn check_monomial(&self, nodes: usize) -> Result<(), MdiError> {
        if nodes > self.max_nodes {
            return Err(MdiError::SizeBudgetExceeded {
                what: "monomial node count",
                size: nodes,
                limit: self.max_nodes,
            });
        }
        Ok(())
    }
}

const MEMO_SIZE: usize = 16;

/// Sums `form` over the nodes of `rule` in the coordinate `v`.
fn bind_axis(form: &LinearForm, v: VarId, rule: &Rule1D, budget: &Budget, evals: &mut u64) -> Result<LinearForm, MdiError> {
    let total_weight = pairwise_sum(&rule.weights);
    let mut out = LinearForm::new();
    let mut values = vec![0.0; rule.len()];
    // Recent bound factors and their sums; trig splits reuse the same pair.
    let mut memo: Vec<(Expr, f64)> = Vec::new();
    for (mono, coeff) in form.iter() {
        for st in split_term(coeff, mono, v) {
            if !st.is_entangled() {
                let bound = st.bound_expr();
                let s = match bound.as_constant() {
                    Some(c) => c * total_weight,
                    None => match memo.iter().find(|(e, _)| *e == bound) {
                        Some(&(_, s)) => s,
                        None => {
                            for (slot, &x) in values.iter_mut().zip(&rule.nodes) {
                                *slot = bound.eval_single(v, x)?;
                            }
                            *evals += rule.len() as u64;
                            let s = weighted_sum(&rule.weights, |i| values[i]);
                            if memo.len() == MEMO_SIZE {
                                memo.remove(0);
                            }
                            memo.push((bound, s));
                            s
                        }
                    },
                };
                out.add(st.free, st.coeff * s);
            } else {
                let mut joint = st.bound.clone();
                joint.extend(st.entangled.iter().cloned());
                let joint = Expr::product(joint);
                let free = st.free.to_expr();
                for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let bound_at = joint.substitute(v, x);
                    let term = Expr::product(vec![Expr::Constant(st.coeff * w), bound_at, free.clone()]);
                    budget.check_monomial(term.node_count())?;
                    out.add_expr(&term, 1.0);
                    budget.check(&out)?;
                }
                *evals += rule.len() as u64;
            }
        }
        budget.check(&out)?;
    }
    Ok(out)
}

/// Tensor sum of a form whose variables are `x{offset+1}..x{offset+rules.len()}`.
fn direct_residual(form: &LinearForm, rules: &[Rule1D], offset: usize, evals: &mut u64) -> Result<f64, MdiError> {
    let e = form.to_expr();
    let prog = Program::compile(&e);
    let count: usize = rules.iter().map(Rule1D::len).product();
    *evals += count as u64;
    let value = baselines::stp::tensor_sum(&prog, rules, offset);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(EvalError::NonFiniteResult(value).into())
    }
}

fn check_dims(g: &Expr, dim: usize) -> Result<(), MdiError> {
    match g.max_var() {
        Some(v) if v.slot() >= dim => Err(MdiError::DimensionMismatch { max_var: v.index(), dim }),
        _ => Ok(()),
    }
}

/// Integrates `g` over `domain` with the configured tensor-product rule.
///
/// Returns the value and a per-iteration trace.
pub fn mdi_integrate(g: &Expr, domain: &Domain, cfg: &MdiConfig) -> Result<(f64, ReductionTrace), MdiError> {
    cfg.validate()?;
    let d = domain.dim();
    check_dims(g, d)?;
    let rules = domain.rules(cfg.rule, cfg.nodes_per_axis())?;
    let budget = Budget::of(cfg);

    let mut form = LinearForm::from_expr(&g.normalize());
    budget.check(&form)?;
    let mut trace = ReductionTrace {
        peak_monomials: form.len(),
        ..ReductionTrace::default()
    };
    let mut bound = 0usize;
    while bound < d {
        let remaining = d - bound;
        let start = Instant::now();
        if cfg.residual == Residual::Direct && remaining <= cfg.m {
            let value = direct_residual(&form, &rules[bound..], bound, &mut trace.eval_count)?;
            form = LinearForm::constant(value);
            bound = d;
        } else {
            for _ in 0..cfg.m.min(remaining) {
                let v = VarId::new(bound as u32 + 1);
                form = bind_axis(&form, v, &rules[bound], &budget, &mut trace.eval_count)?;
                bound += 1;
            }
        }
        trace.peak_monomials = trace.peak_monomials.max(form.len());
        trace.steps.push(TraceStep {
            remaining: d - bound,
            monomial_count: form.len(),
            node_count: form.node_count(),
            wall_seconds: start.elapsed().as_secs_f64(),
        });
    }
    let value = match form.as_constant() {
        Some(c) => c,
        None => form.to_expr().eval(&vec![0.0; d])?,
    };
    if !value.is_finite() {
        return Err(EvalError::NonFiniteResult(value).into());
    }
    Ok((value, trace))
}

/// One reduction step: sums `g` over its `m` leading coordinates with
/// `rules[0..m]` and renumbers the remaining variables down by `m`.
pub fn bind_and_sum(g: &Expr, rules: &[Rule1D], m: usize) -> Result<Expr, MdiError> {
    if m == 0 || rules.len() < m {
        return Err(MdiError::InvalidConfig(format!("need {m} rules, got {}", rules.len())));
    }
    let budget = Budget {
        max_monomials: 100_000,
        max_nodes: 10_000,
    };
    let mut evals = 0;
    let mut form = LinearForm::from_expr(&g.normalize());
    for (j, rule) in rules[..m].iter().enumerate() {
        form = bind_axis(&form, VarId::new(j as u32 + 1), rule, &budget, &mut evals)?;
    }
    Ok(form.to_expr().shift_vars(m as u32))
}

/// Both values of an MDI versus brute-force comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence {
    pub mdi: f64,
    pub stp: f64,
    pub passed: bool,
}

/// Runs MDI and the plain tensor sum on the same rule and compares them to
/// `1e-12 * max(1, |stp|)`.
pub fn stp_equivalence_check(g: &Expr, domain: &Domain, cfg: &MdiConfig) -> Result<Equivalence, MdiError> {
    let d = domain.dim();
    let n = cfg.nodes_per_axis();
    if d > 6 || (n as f64).powi(d as i32) > 1e7 {
        return Err(MdiError::OracleInfeasible { d, n });
    }
    let (mdi, _) = mdi_integrate(g, domain, cfg)?;
    let stp = baselines::stp_integrate(g, domain, n, cfg.rule)?;
    Ok(Equivalence {
        mdi,
        stp,
        passed: (mdi - stp).abs() <= 1e-12 * stp.abs().max(1.0),
    })
}
