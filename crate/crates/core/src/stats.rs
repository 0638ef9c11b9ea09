//! Small statistics helpers shared by the Monte Carlo harnesses.

/// A sample mean together with its standard error (sample stddev / √n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanStderr {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
}

impl MeanStderr {
    /// Mean and standard error of a sample. Requires at least two values for
    /// a nonzero standard error; a single value reports stderr 0.
    pub fn from_values(values: &[f64]) -> Self {
        let n = values.len();
        assert!(n >= 1, "empty sample");
        let mean = values.iter().sum::<f64>() / n as f64;
        let stderr = if n >= 2 {
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        MeanStderr { mean, stderr, n }
    }

    /// |mean − target| ≤ k·stderr.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.stderr
    }
}

/// Median of a sample (average of the central pair for even lengths).
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("NaN in sample"));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_stderr_matches_hand_computation() {
        let m = MeanStderr::from_values(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m.mean, 2.5);
        // sample variance 5/3, stderr = sqrt(5/12)
        assert!((m.stderr - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
