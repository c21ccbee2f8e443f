//! Composite 1-d base rules and box-shaped domains.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("{kind} rule cannot use {n} nodes: {reason}")]
    BadNodeCount { kind: RuleKind, n: usize, reason: &'static str },
    #[error("interval [{a}, {b}] is empty or not finite")]
    BadInterval { a: f64, b: f64 },
    #[error("unknown rule `{0}` (expected trap, simpson, gauss2, midpoint or 1-4)")]
    UnknownRule(String),
}

/// The four composite base rules, numbered 1 to 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Trapezoid = 1,
    Simpson = 2,
    Gauss2 = 3,
    Midpoint = 4,
}

impl RuleKind {
    pub const ALL: [RuleKind; 4] = [RuleKind::Trapezoid, RuleKind::Simpson, RuleKind::Gauss2, RuleKind::Midpoint];

    /// Algebraic rate `p` in `error = O(N^-p)`.
    pub fn convergence_order(self) -> u32 {
        match self {
            RuleKind::Trapezoid | RuleKind::Midpoint => 2,
            RuleKind::Simpson | RuleKind::Gauss2 => 4,
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(r: u8) -> Option<RuleKind> {
        RuleKind::ALL.into_iter().find(|k| k.number() == r)
    }

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Trapezoid => "trap",
            RuleKind::Simpson => "simpson",
            RuleKind::Gauss2 => "gauss2",
            RuleKind::Midpoint => "midpoint",
        }
    }

    /// Whether `n` total nodes is admissible.
    pub fn accepts(self, n: usize) -> bool {
        check_count(self, n).is_ok()
    }

    /// Smallest admissible node count `>= n`.
    pub fn nearest_valid(self, n: usize) -> usize {
        (n..).find(|&k| self.accepts(k)).unwrap()
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleKind {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "trap" | "trapezoid" => Ok(RuleKind::Trapezoid),
            "2" | "simpson" => Ok(RuleKind::Simpson),
            "3" | "gauss" | "gauss2" => Ok(RuleKind::Gauss2),
            "4" | "mid" | "midpoint" => Ok(RuleKind::Midpoint),
            _ => Err(QuadError::UnknownRule(s.to_string())),
        }
    }
}

/// How the node count of the two-point Gauss rule is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GaussCounting {
    /// `N` is the total number of nodes (two per panel).
    #[default]
    Points,
    /// `N` is the number of panels, giving `2N` nodes.
    Panels,
}

impl GaussCounting {
    /// Total node count for a requested `n`.
    pub fn total_nodes(self, kind: RuleKind, n: usize) -> usize {
        match (self, kind) {
            (GaussCounting::Panels, RuleKind::Gauss2) => 2 * n,
            _ => n,
        }
    }
}

impl FromStr for GaussCounting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "points" => Ok(GaussCounting::Points),
            "panels" => Ok(GaussCounting::Panels),
            _ => Err(format!("unknown node counting `{s}` (expected points or panels)")),
        }
    }
}

/// Nodes and weights of a composite rule on one interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1D {
    pub kind: RuleKind,
    pub interval: (f64, f64),
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule to a scalar function.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        crate::numeric::weighted_sum(&self.weights, |i| f(self.nodes[i]))
    }
}

fn check_count(kind: RuleKind, n: usize) -> Result<(), &'static str> {
    match kind {
        RuleKind::Trapezoid if n < 2 => Err("needs at least 2 nodes"),
        RuleKind::Simpson if n < 3 => Err("needs at least 3 nodes"),
        RuleKind::Simpson if n.is_multiple_of(2) => Err("needs an odd node count"),
        RuleKind::Midpoint if n < 1 => Err("needs at least 1 node"),
        RuleKind::Gauss2 if n < 2 => Err("needs at least 2 nodes"),
        RuleKind::Gauss2 if !n.is_multiple_of(2) => Err("needs an even node count (two per panel)"),
        _ => Ok(()),
    }
}

/// Composite rule with `n` total nodes over uniform panels of `[a, b]`.
pub fn make_rule(kind: RuleKind, n: usize, (a, b): (f64, f64)) -> Result<Rule1D, QuadError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadError::BadInterval { a, b });
    }
    check_count(kind, n).map_err(|reason| QuadError::BadNodeCount { kind, n, reason })?;
    let len = b - a;
    let grid = |i: usize, m: usize| if i == m { b } else { a + i as f64 * len / m as f64 };
    let (nodes, weights) = match kind {
        RuleKind::Trapezoid => {
            let h = len / (n - 1) as f64;
            let nodes = (0..n).map(|i| grid(i, n - 1)).collect();
            let weights = (0..n).map(|i| if i == 0 || i == n - 1 { h / 2.0 } else { h }).collect();
            (nodes, weights)
        }
        RuleKind::Simpson => {
            let h = len / (n - 1) as f64;
            let nodes = (0..n).map(|i| grid(i, n - 1)).collect();
            let weights = (0..n)
                .map(|i| {
                    let c = if i == 0 || i == n - 1 {
                        1.0
                    } else if i % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    c * h / 3.0
                })
                .collect();
            (nodes, weights)
        }
        RuleKind::Midpoint => {
            let h = len / n as f64;
            let nodes = (0..n).map(|i| a + (i as f64 + 0.5) * h).collect();
            (nodes, vec![h; n])
        }
        RuleKind::Gauss2 => {
            let panels = n / 2;
            let h = len / panels as f64;
            let off = 0.5 * h / 3f64.sqrt();
            let mut nodes = Vec::with_capacity(n);
            for p in 0..panels {
                let mid = a + (p as f64 + 0.5) * h;
                nodes.push(mid - off);
                nodes.push(mid + off);
            }
            (nodes, vec![h / 2.0; n])
        }
    };
    Ok(Rule1D {
        kind,
        interval: (a, b),
        nodes,
        weights,
    })
}

/// Axis-aligned box: one interval per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    intervals: Vec<(f64, f64)>,
}

impl Domain {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Domain, QuadError> {
        if let Some(&(a, b)) = intervals.iter().find(|(a, b)| !(a.is_finite() && b.is_finite() && a < b)) {
            return Err(QuadError::BadInterval { a, b });
        }
        Ok(Domain { intervals })
    }

    /// `[a, b]^d`. Panics on an empty interval.
    pub fn cube(d: usize, a: f64, b: f64) -> Domain {
        Domain::new(vec![(a, b); d]).expect("cube needs a < b")
    }

    /// `[0, 1]^d`.
    pub fn unit(d: usize) -> Domain {
        Domain::cube(d, 0.0, 1.0)
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn interval(&self, axis: usize) -> (f64, f64) {
        self.intervals[axis]
    }

    pub fn volume(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).product()
    }

    /// Per-axis rules, reusing one rule for repeated intervals.
    pub fn rules(&self, kind: RuleKind, n: usize) -> Result<Vec<Rule1D>, QuadError> {
        let mut out: Vec<Rule1D> = Vec::with_capacity(self.dim());
        for &iv in &self.intervals {
            match out.last() {
                Some(r) if r.interval == iv => out.push(r.clone()),
                _ => out.push(make_rule(kind, n, iv)?),
            }
        }
        Ok(out)
    }
}
