//! Plain Monte Carlo with a reproducible counter-style stream layout.
//!
//! Samples are drawn in blocks of [`BLOCK`]. Block `b` uses a ChaCha8
//! generator seeded with the run seed on stream `b`, so the estimate depends
//! only on the seed and the sample count. Block statistics are merged in
//! block order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_dims, BaselineError};
use crate::expr::{EvalError, Expr, Program};
use crate::quad::Domain;

pub const BLOCK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    /// `volume * sample_std / sqrt(M)`.
    pub stderr: f64,
}

#[derive(Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.n;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0.0 {
            return other;
        }
        if other.n == 0.0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + delta * other.n / n,
            m2: self.m2 + other.m2 + delta * delta * self.n * other.n / n,
        }
    }
}

pub fn mc_integrate(g: &Expr, domain: &Domain, cfg: &McConfig) -> Result<McEstimate, BaselineError> {
    if cfg.samples == 0 {
        return Err(BaselineError::NoSamples);
    }
    let d = domain.dim();
    check_dims(g, d)?;
    let prog = Program::compile(g);
    let mut point = vec![0.0; d.max(prog.arity())];
    let mut stack = prog.stack();
    let mut total = Moments::default();
    let blocks = cfg.samples.div_ceil(BLOCK);
    for b in 0..blocks {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(b);
        let count = BLOCK.min(cfg.samples - b * BLOCK);
        let mut block = Moments::default();
        for _ in 0..count {
            for (x, &(lo, hi)) in point.iter_mut().zip(domain.intervals()) {
                *x = lo + (hi - lo) * rng.gen::<f64>();
            }
            let y = prog.run(&point, &mut stack);
            if !y.is_finite() {
                return Err(EvalError::NonFiniteResult(y).into());
            }
            block.push(y);
        }
        total = total.merge(block);
    }
    let vol = domain.volume();
    let var = if total.n > 1.0 { total.m2 / (total.n - 1.0) } else { 0.0 };
    Ok(McEstimate {
        estimate: vol * total.mean,
        stderr: vol * (var / total.n).sqrt(),
    })
}
