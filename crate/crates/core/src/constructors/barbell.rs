use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::WeightedGraph;

/// Closed-form Laplacian spectrum of a barbell graph, eigenvalues ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarbellSpectrum {
    pub alpha: f64,
    pub beta: f64,
    pub eigenvalues: [f64; 4],
    pub multiplicities: [usize; 4],
}

/// Two unit-weight `n`-cliques on vertices `0..n` and `n..2n`, joined by the
/// bridge `(n-1, n)` of weight `w`.
pub fn barbell_graph(n: usize, w: f64) -> Result<(WeightedGraph, BarbellSpectrum)> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("barbell needs n >= 3, got {n}")));
    }
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::InvalidParams(format!("bridge weight must be positive, got {w}")));
    }
    let mut edges = Vec::new();
    for offset in [0, n] {
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((offset + i, offset + j, 1.0));
            }
        }
    }
    edges.push((n - 1, n, w));
    let g = WeightedGraph::new(2 * n, edges)?;

    let b = 2.0 * w + n as f64 - 2.0;
    let root = (b * b + 4.0 * (n as f64 - 1.0)).sqrt();
    // Roots of x^2 + b x - (n - 1); the positive one in cancellation-free form.
    let alpha = 2.0 * (n as f64 - 1.0) / (b + root);
    let beta = (-b - root) / 2.0;
    let spectrum = BarbellSpectrum {
        alpha,
        beta,
        eigenvalues: [0.0, 1.0 - alpha, n as f64, 1.0 - beta],
        multiplicities: [1, 1, 2 * n - 3, 1],
    };
    Ok((g, spectrum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{spectrum_of, DEFAULT_GROUP_TOL};

    #[test]
    fn closed_form_matches_decomposition() {
        for (n, w) in [(3, 1.0), (4, 2.0), (5, 0.3)] {
            let (g, cf) = barbell_graph(n, w).unwrap();
            let s = spectrum_of(&g, DEFAULT_GROUP_TOL).unwrap();
            assert_eq!(s.multiplicities(), cf.multiplicities.to_vec());
            for (a, b) in s.eigenvalues().iter().zip(cf.eigenvalues) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn quadratic_and_limits() {
        let (_, cf) = barbell_graph(3, 1.0).unwrap();
        assert!((cf.alpha * cf.alpha + 3.0 * cf.alpha - 2.0).abs() < 1e-14);
        let (_, cf) = barbell_graph(3, 1e-8).unwrap();
        assert!((1.0 - cf.alpha).abs() <= 1e-7);
        assert!((1.0 - cf.beta - 3.0).abs() <= 3e-6);
        assert!(barbell_graph(2, 1.0).is_err());
        assert!(barbell_graph(3, 0.0).is_err());
    }
}
