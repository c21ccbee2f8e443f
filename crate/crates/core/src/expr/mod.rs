//! Expression IR for integrands and partially summed (reduced) functions.
//!
//! Expressions are immutable trees with shared children. `Sum` and `Product`
//! hold their operands in a [`Terms`] list, which is a cheap suffix view over
//! a reference-counted array: dropping leading operands never copies. The
//! canonical operand order sorts first by the lowest variable index an operand
//! mentions, so every operand that depends on the lowest remaining variable
//! sits at the front of its list. The dimension-iteration engine relies on
//! this to peel one coordinate off an integrand in constant time.

mod eval;
mod linear;
mod parse;
mod print;
mod split;

pub use eval::{EvalError, Program};
pub use linear::{LinearForm, Monomial};
pub use parse::{parse, ParseError};
pub use split::{split_for_binding, Split, SplitTerm};

pub(crate) use split::split_term;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Coordinate index of a variable. `x1` has index 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(u32);

impl VarId {
    /// Panics if `index` is zero.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        VarId(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    /// Zero-based position in a coordinate vector.
    pub fn slot(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Cached summary of a subtree: lowest and highest variable index (0 when the
/// subtree has no variables) and the total node count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Meta {
    pub lo: u32,
    pub hi: u32,
    pub nodes: usize,
}

impl Meta {
    const EMPTY: Meta = Meta { lo: 0, hi: 0, nodes: 0 };

    fn merge(self, other: Meta) -> Meta {
        let lo = match (self.lo, other.lo) {
            (0, b) => b,
            (a, 0) => a,
            (a, b) => a.min(b),
        };
        Meta {
            lo,
            hi: self.hi.max(other.hi),
            nodes: self.nodes + other.nodes,
        }
    }
}

struct TermsData {
    items: Vec<Expr>,
    // suffix[i] summarizes items[i..]; one extra trailing EMPTY entry.
    suffix: Vec<Meta>,
}

/// Operand list of a `Sum` or `Product`: a suffix view over shared storage.
#[derive(Clone)]
pub struct Terms {
    data: Arc<TermsData>,
    start: usize,
}

impl Terms {
    /// Wraps operands that are already in canonical order.
    pub(crate) fn from_sorted(items: Vec<Expr>) -> Terms {
        let mut suffix = vec![Meta::EMPTY; items.len() + 1];
        for i in (0..items.len()).rev() {
            suffix[i] = items[i].meta().merge(suffix[i + 1]);
        }
        Terms {
            data: Arc::new(TermsData { items, suffix }),
            start: 0,
        }
    }

    pub fn empty() -> Terms {
        Terms::from_sorted(Vec::new())
    }

    pub fn as_slice(&self) -> &[Expr] {
        &self.data.items[self.start..]
    }

    pub fn len(&self) -> usize {
        self.data.items.len() - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Expr> {
        self.as_slice().iter()
    }

    /// View without the first `k` operands. O(1).
    pub fn skip(&self, k: usize) -> Terms {
        assert!(k <= self.len());
        Terms {
            data: Arc::clone(&self.data),
            start: self.start + k,
        }
    }

    pub(crate) fn meta(&self) -> Meta {
        self.data.suffix[self.start]
    }

    fn same_view(&self, other: &Terms) -> bool {
        Arc::ptr_eq(&self.data, &other.data) && self.start == other.start
    }
}

impl fmt::Debug for Terms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl PartialEq for Terms {
    fn eq(&self, other: &Terms) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Terms {}

impl PartialOrd for Terms {
    fn partial_cmp(&self, other: &Terms) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Terms {
    fn cmp(&self, other: &Terms) -> Ordering {
        if self.same_view(other) {
            return Ordering::Equal;
        }
        self.as_slice().cmp(other.as_slice())
    }
}

/// An integrand or reduced function.
#[derive(Clone, Debug)]
pub enum Expr {
    Constant(f64),
    Var(VarId),
    Sum(Terms),
    Product(Terms),
    /// Integer power; the exponent is never zero in normalized form.
    Power(Arc<Expr>, i32),
    Exp(Arc<Expr>),
    Sin(Arc<Expr>),
    Cos(Arc<Expr>),
}

impl Expr {
    pub fn var(index: u32) -> Expr {
        Expr::Var(VarId::new(index))
    }

    pub fn constant(value: f64) -> Expr {
        Expr::Constant(value)
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Expr::Constant(_) => 0,
            Expr::Var(_) => 1,
            Expr::Power(..) => 2,
            Expr::Product(_) => 3,
            Expr::Sum(_) => 4,
            Expr::Exp(_) => 5,
            Expr::Sin(_) => 6,
            Expr::Cos(_) => 7,
        }
    }

    pub(crate) fn meta(&self) -> Meta {
        match self {
            Expr::Constant(_) => Meta { lo: 0, hi: 0, nodes: 1 },
            Expr::Var(v) => Meta {
                lo: v.0,
                hi: v.0,
                nodes: 1,
            },
            Expr::Sum(t) | Expr::Product(t) => {
                let m = t.meta();
                Meta {
                    nodes: m.nodes + 1,
                    ..m
                }
            }
            Expr::Power(a, _) | Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) => {
                let m = a.meta();
                Meta {
                    nodes: m.nodes + 1,
                    ..m
                }
            }
        }
    }

    /// Total number of tree nodes (integer exponents are not nodes).
    pub fn node_count(&self) -> usize {
        self.meta().nodes
    }

    /// Lowest variable index mentioned, if any.
    pub fn min_var(&self) -> Option<VarId> {
        match self.meta().lo {
            0 => None,
            i => Some(VarId(i)),
        }
    }

    /// Highest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<VarId> {
        match self.meta().hi {
            0 => None,
            i => Some(VarId(i)),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.meta().lo == 0
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self {
            Expr::Constant(c) => Some(*c),
            _ => None,
        }
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        let m = self.meta();
        if m.lo == 0 || v.0 < m.lo || v.0 > m.hi {
            return false;
        }
        if v.0 == m.lo || v.0 == m.hi {
            return true;
        }
        match self {
            Expr::Constant(_) => false,
            Expr::Var(w) => *w == v,
            Expr::Sum(t) | Expr::Product(t) => t.iter().any(|e| e.contains_var(v)),
            Expr::Power(a, _) | Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) => a.contains_var(v),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<VarId> {
        fn walk(e: &Expr, out: &mut BTreeSet<VarId>) {
            match e {
                Expr::Constant(_) => {}
                Expr::Var(v) => {
                    out.insert(*v);
                }
                Expr::Sum(t) | Expr::Product(t) => t.iter().for_each(|c| walk(c, out)),
                Expr::Power(a, _) | Expr::Exp(a) | Expr::Sin(a) | Expr::Cos(a) => walk(a, out),
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    // ---- smart constructors (operands must already be normalized) ----

    /// Normalized sum of normalized operands.
    pub fn sum(items: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(items.len());
        for it in items {
            match it {
                Expr::Sum(t) => flat.extend(t.iter().cloned()),
                other => flat.push(other),
            }
        }
        flat.sort();

        let mut constant = 0.0;
        let mut saw_constant = false;
        // key -> coefficient, in first-seen order of the sorted operands
        let mut order: Vec<Expr> = Vec::new();
        let mut coeffs: BTreeMap<Expr, f64> = BTreeMap::new();
        for it in flat {
            match it {
                Expr::Constant(c) => {
                    constant += c;
                    saw_constant = true;
                }
                other => {
                    let (c, key) = split_coefficient(other);
                    match coeffs.get_mut(&key) {
                        Some(acc) => *acc += c,
                        None => {
                            coeffs.insert(key.clone(), c);
                            order.push(key);
                        }
                    }
                }
            }
        }

        let mut out = Vec::with_capacity(order.len() + 1);
        if saw_constant && constant != 0.0 {
            out.push(Expr::Constant(constant));
        }
        for key in order {
            let c = coeffs[&key];
            if c == 0.0 {
                continue;
            }
            out.push(scale(c, key));
        }
        out.sort();
        match out.len() {
            0 => Expr::Constant(if saw_constant { constant } else { 0.0 }),
            1 => out.pop().unwrap(),
            _ => Expr::Sum(Terms::from_sorted(out)),
        }
    }

    /// Normalized product of normalized operands.
    pub fn product(items: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(items.len());
        for it in items {
            match it {
                Expr::Product(t) => flat.extend(t.iter().cloned()),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        flat.sort();

        let mut coeff = 1.0;
        let mut order: Vec<Expr> = Vec::new();
        let mut powers: BTreeMap<Expr, i64> = BTreeMap::new();
        for it in flat {
            let (base, n) = match it {
                Expr::Constant(c) => {
                    coeff *= c;
                    continue;
                }
                Expr::Power(b, n) => ((*b).clone(), n as i64),
                other => (other, 1),
            };
            match powers.get_mut(&base) {
                Some(acc) => *acc += n,
                None => {
                    powers.insert(base.clone(), n);
                    order.push(base);
                }
            }
        }
        if coeff == 0.0 {
            return Expr::Constant(0.0);
        }

        let mut factors = Vec::with_capacity(order.len() + 1);
        for base in order {
            let n = powers[&base];
            if n == 0 {
                continue;
            }
            match i32::try_from(n) {
                Ok(n) => match Expr::pow(base, n) {
                    Expr::Constant(c) => coeff *= c,
                    Expr::Product(t) => factors.extend(t.iter().cloned()),
                    f => factors.push(f),
                },
                Err(_) => factors.push(Expr::Power(Arc::new(base), n.clamp(i32::MIN as i64, i32::MAX as i64) as i32)),
            }
        }
        if coeff == 0.0 {
            return Expr::Constant(0.0);
        }
        if factors.is_empty() {
            return Expr::Constant(coeff);
        }
        if coeff != 1.0 {
            factors.push(Expr::Constant(coeff));
        }
        factors.sort();
        if factors.len() == 1 {
            return factors.pop().unwrap();
        }
        Expr::Product(Terms::from_sorted(factors))
    }

    /// Normalized integer power of a normalized base.
    pub fn pow(base: Expr, n: i32) -> Expr {
        if n == 0 {
            return Expr::Constant(1.0);
        }
        if n == 1 {
            return base;
        }
        match base {
            Expr::Constant(c) => Expr::Constant(c.powi(n)),
            Expr::Power(b, k) => match k.checked_mul(n) {
                Some(kn) => Expr::pow((*b).clone(), kn),
                None => Expr::Power(Arc::new(Expr::Power(b, k)), n),
            },
            Expr::Product(t) => Expr::product(t.iter().map(|f| Expr::pow(f.clone(), n)).collect()),
            other => Expr::Power(Arc::new(other), n),
        }
    }

    pub fn exp(arg: Expr) -> Expr {
        match arg {
            Expr::Constant(c) => Expr::Constant(c.exp()),
            other => Expr::Exp(Arc::new(other)),
        }
    }

    pub fn sin(arg: Expr) -> Expr {
        match arg {
            Expr::Constant(c) => Expr::Constant(c.sin()),
            other => Expr::Sin(Arc::new(other)),
        }
    }

    pub fn cos(arg: Expr) -> Expr {
        match arg {
            Expr::Constant(c) => Expr::Constant(c.cos()),
            other => Expr::Cos(Arc::new(other)),
        }
    }

    /// Sum over a view taken from a normalized operand list that holds no
    /// constant and no like terms; skips re-normalization.
    pub(crate) fn sum_of_view(t: Terms) -> Expr {
        match t.len() {
            0 => Expr::Constant(0.0),
            1 => t.as_slice()[0].clone(),
            _ => Expr::Sum(t),
        }
    }

    /// Product over a view of non-constant, already collected factors.
    pub(crate) fn product_of_view(t: Terms) -> Expr {
        match t.len() {
            0 => Expr::Constant(1.0),
            1 => t.as_slice()[0].clone(),
            _ => Expr::Product(t),
        }
    }

    /// Brings an arbitrary tree into canonical form. Idempotent.
    pub fn normalize(&self) -> Expr {
        match self {
            Expr::Constant(_) | Expr::Var(_) => self.clone(),
            Expr::Sum(t) => Expr::sum(t.iter().map(Expr::normalize).collect()),
            Expr::Product(t) => Expr::product(t.iter().map(Expr::normalize).collect()),
            Expr::Power(b, n) => Expr::pow(b.normalize(), *n),
            Expr::Exp(a) => Expr::exp(a.normalize()),
            Expr::Sin(a) => Expr::sin(a.normalize()),
            Expr::Cos(a) => Expr::cos(a.normalize()),
        }
    }

    /// Replaces `v` by `value` and re-normalizes the touched paths.
    pub fn substitute(&self, v: VarId, value: f64) -> Expr {
        if !self.contains_var(v) {
            return self.clone();
        }
        match self {
            Expr::Constant(_) => self.clone(),
            Expr::Var(w) => {
                if *w == v {
                    Expr::Constant(value)
                } else {
                    self.clone()
                }
            }
            Expr::Sum(t) => Expr::sum(t.iter().map(|e| e.substitute(v, value)).collect()),
            Expr::Product(t) => Expr::product(t.iter().map(|e| e.substitute(v, value)).collect()),
            Expr::Power(b, n) => Expr::pow(b.substitute(v, value), *n),
            Expr::Exp(a) => Expr::exp(a.substitute(v, value)),
            Expr::Sin(a) => Expr::sin(a.substitute(v, value)),
            Expr::Cos(a) => Expr::cos(a.substitute(v, value)),
        }
    }

    /// Renames `x_j` to `x_{j - by}`. Panics if a variable would drop below x1.
    pub fn shift_vars(&self, by: u32) -> Expr {
        if by == 0 || self.is_constant() {
            return self.clone();
        }
        match self {
            Expr::Constant(_) => self.clone(),
            Expr::Var(w) => {
                assert!(w.0 > by, "cannot shift {w} down by {by}");
                Expr::Var(VarId(w.0 - by))
            }
            // Shifting preserves relative order, so operands stay sorted.
            Expr::Sum(t) => Expr::Sum(Terms::from_sorted(t.iter().map(|e| e.shift_vars(by)).collect())),
            Expr::Product(t) => Expr::Product(Terms::from_sorted(t.iter().map(|e| e.shift_vars(by)).collect())),
            Expr::Power(b, n) => Expr::Power(Arc::new(b.shift_vars(by)), *n),
            Expr::Exp(a) => Expr::Exp(Arc::new(a.shift_vars(by))),
            Expr::Sin(a) => Expr::Sin(Arc::new(a.shift_vars(by))),
            Expr::Cos(a) => Expr::Cos(Arc::new(a.shift_vars(by))),
        }
    }
}

/// Splits a normalized non-constant sum operand into (coefficient, key).
fn split_coefficient(e: Expr) -> (f64, Expr) {
    if let Expr::Product(t) = &e {
        if let Some(Expr::Constant(c)) = t.as_slice().first() {
            return (*c, Expr::product_of_view(t.skip(1)));
        }
    }
    (1.0, e)
}

fn scale(c: f64, key: Expr) -> Expr {
    if c == 1.0 {
        return key;
    }
    match key {
        Expr::Product(t) => {
            let mut items = Vec::with_capacity(t.len() + 1);
            items.push(Expr::Constant(c));
            items.extend(t.iter().cloned());
            Expr::Product(Terms::from_sorted(items))
        }
        other => Expr::Product(Terms::from_sorted(vec![Expr::Constant(c), other])),
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Expr {}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Expr) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Expr {
    /// Canonical order: lowest variable index (constants first), node kind,
    /// operands recursively, constant bit pattern.
    fn cmp(&self, other: &Expr) -> Ordering {
        let by_var = self.meta().lo.cmp(&other.meta().lo);
        if by_var != Ordering::Equal {
            return by_var;
        }
        let by_kind = self.kind_rank().cmp(&other.kind_rank());
        if by_kind != Ordering::Equal {
            return by_kind;
        }
        match (self, other) {
            (Expr::Constant(a), Expr::Constant(b)) => a.total_cmp(b),
            (Expr::Var(a), Expr::Var(b)) => a.cmp(b),
            (Expr::Sum(a), Expr::Sum(b)) | (Expr::Product(a), Expr::Product(b)) => a.cmp(b),
            (Expr::Power(a, n), Expr::Power(b, k)) => cmp_arc(a, b).then(n.cmp(k)),
            (Expr::Exp(a), Expr::Exp(b)) | (Expr::Sin(a), Expr::Sin(b)) | (Expr::Cos(a), Expr::Cos(b)) => cmp_arc(a, b),
            _ => unreachable!("kind ranks matched"),
        }
    }
}

fn cmp_arc(a: &Arc<Expr>, b: &Arc<Expr>) -> Ordering {
    if Arc::ptr_eq(a, b) {
        Ordering::Equal
    } else {
        a.as_ref().cmp(b.as_ref())
    }
}
