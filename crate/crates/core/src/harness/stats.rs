//! Small-sample statistics for success rates.

/// Wilson score interval for a binomial proportion at the given z-value
/// (1.96 for 95%). Robust at small trial counts, unlike the normal interval.
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = p + z2 / (2.0 * n);
    let margin = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (
        ((centre - margin) / denom).max(0.0),
        ((centre + margin) / denom).min(1.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_basics() {
        let (lo, hi) = wilson_interval(95, 100, 1.96);
        assert!(lo > 0.88 && lo < 0.95);
        assert!(hi > 0.95 && hi < 1.0);
        let (lo, hi) = wilson_interval(0, 10, 1.96);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.35);
        let (lo, hi) = wilson_interval(10, 10, 1.96);
        assert!(lo > 0.65);
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn wilson_contains_point_estimate() {
        for s in 0..=20 {
            let (lo, hi) = wilson_interval(s, 20, 1.96);
            let p = s as f64 / 20.0;
            assert!(lo <= p + 1e-12 && p <= hi + 1e-12);
        }
    }
}
