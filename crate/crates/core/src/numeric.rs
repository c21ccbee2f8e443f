//! Small numeric helpers shared by the engine and the baselines.

/// Pairwise (cascade) summation. Rounding error grows with `log n` instead of `n`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 8;
    if xs.len() <= BLOCK {
        let mut acc = 0.0;
        for &x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `sum(w[i] * f(i))` for `i` ascending, accumulated pairwise.
pub fn weighted_sum(w: &[f64], mut f: impl FnMut(usize) -> f64) -> f64 {
    let terms: Vec<f64> = w.iter().enumerate().map(|(i, wi)| wi * f(i)).collect();
    pairwise_sum(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_exact_small_sums() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
        let xs: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 500500.0);
    }

    #[test]
    fn pairwise_beats_naive_on_tiny_increments() {
        let xs = vec![0.1; 1 << 20];
        let naive: f64 = xs.iter().sum();
        let exact = 0.1 * (1u64 << 20) as f64;
        assert!((pairwise_sum(&xs) - exact).abs() <= (naive - exact).abs());
    }
}
