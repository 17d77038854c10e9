//! Positively weighted and combinatorial k-graphical designs: verification,
//! LP search, exhaustive enumeration of minimal designs and the facet bound.
//!
//! Weight vectors are normalized to sum to one. Vertex labels are 0-based
//! here and 1-based in reports.

mod enumerate;

use nalgebra::{DMatrix, DVector};

pub use enumerate::{enumerate_minimal_designs, DesignEnumeration, EnumerationOptions, MinimalDesign};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, Stop};
use crate::spectral::{EigenspaceOrdering, SpectralData};

/// Entries above this value count as support.
pub const SUPPORT_TOL: f64 = 1e-9;
/// Default residual tolerance for accepting a design.
pub const DEFAULT_DESIGN_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct DesignVector {
    pub k: usize,
    pub ordering: EigenspaceOrdering,
    /// Nonnegative, summing to one.
    pub weights: Vec<f64>,
    /// Sorted 0-based labels with weight above [`SUPPORT_TOL`].
    pub support: Vec<usize>,
    /// Largest `|U a|` entry over the averaged eigenspaces.
    pub residual: f64,
    /// All support weights equal `1/|S|` within [`SUPPORT_TOL`].
    pub combinatorial: bool,
}

fn check_ordering(s: &SpectralData, ord: &EigenspaceOrdering) -> Result<()> {
    if ord.len() != s.m() {
        return Err(Error::InvalidOrdering(format!(
            "ordering has {} entries but there are {} eigenspaces",
            ord.len(),
            s.m()
        )));
    }
    Ok(())
}

fn check_k(s: &SpectralData, k: usize) -> Result<()> {
    let m = s.m();
    if k < 2 || k + 1 > m {
        return Err(Error::KOutOfRange {
            k,
            m,
            max: m.saturating_sub(1),
        });
    }
    Ok(())
}

fn check_common(s: &SpectralData, ord: &EigenspaceOrdering, k: usize) -> Result<()> {
    check_ordering(s, ord)?;
    check_k(s, k)?;
    if !s.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    Ok(())
}

// Stacked rows of the eigenspaces at ranks 2..=k.
pub(crate) fn averaging_rows(s: &SpectralData, ord: &EigenspaceOrdering, k: usize) -> DMatrix<f64> {
    let idx = ord.averaged(k);
    let dim: usize = idx.iter().map(|&i| s.space(i).nrows()).sum();
    let mut rows = DMatrix::zeros(dim, s.n());
    let mut r = 0;
    for &i in idx {
        let block = s.space(i);
        rows.rows_mut(r, block.nrows()).copy_from(block);
        r += block.nrows();
    }
    rows
}

/// `s_k`: the total dimension of the first `k` eigenspaces in the ordering.
/// No minimal positively weighted k-design has more vertices.
pub fn facet_bound(s: &SpectralData, ord: &EigenspaceOrdering, k: usize) -> Result<usize> {
    check_ordering(s, ord)?;
    check_k(s, k)?;
    Ok(ord.as_slice()[..k].iter().map(|&i| s.space(i).nrows()).sum())
}

/// Checks that `a` (any positive scaling) is a positively weighted k-design.
///
/// Entries may be negative down to `-tol` after normalization; those are
/// clamped to zero. The residual is measured on the clamped, normalized
/// vector and reported against the worst eigenspace (1-based index).
pub fn verify_design(
    s: &SpectralData,
    ord: &EigenspaceOrdering,
    k: usize,
    a: &[f64],
    tol: f64,
) -> Result<DesignVector> {
    check_common(s, ord, k)?;
    let n = s.n();
    if a.len() != n {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: n,
        });
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite weight".into()));
    }
    let total: f64 = a.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::InvalidInput("weights must have positive sum".into()));
    }
    let mut w: Vec<f64> = a.iter().map(|x| x / total).collect();
    if let Some((i, &v)) = w.iter().enumerate().find(|(_, &v)| v < -tol) {
        return Err(Error::NegativeWeight {
            vertex: i + 1,
            value: v,
        });
    }
    for x in w.iter_mut() {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    let clamped_total: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= clamped_total;
    }

    let v = DVector::from_column_slice(&w);
    let mut residual = 0.0f64;
    let mut worst = ord.at(1);
    for &i in ord.averaged(k) {
        let r = (s.space(i) * &v).amax();
        if r > residual {
            residual = r;
            worst = i;
        }
    }
    if residual > tol {
        return Err(Error::NotADesign {
            residual,
            eigenspace: worst + 1,
        });
    }

    let support: Vec<usize> = (0..n).filter(|&i| w[i] > SUPPORT_TOL).collect();
    let level = 1.0 / support.len() as f64;
    let combinatorial = w
        .iter()
        .all(|&x| x.abs() <= SUPPORT_TOL || (x - level).abs() <= SUPPORT_TOL);
    Ok(DesignVector {
        k,
        ordering: ord.clone(),
        weights: w,
        support,
        residual,
        combinatorial,
    })
}

/// A positively weighted k-design from the first basic feasible solution of
/// `U x = 0, 1^T x = 1, x >= 0`.
///
/// On that set `|x|_1 = 1`, so every feasible point minimizes the 1-norm and
/// the basic solution returned is also sparse (at most `s_k` vertices).
pub fn find_design_lp(s: &SpectralData, ord: &EigenspaceOrdering, k: usize) -> Result<DesignVector> {
    check_common(s, ord, k)?;
    let n = s.n();
    let u = averaging_rows(s, ord, k);
    let (a, b) = with_normalization(&u);
    let (a, b) = linalg::reduce_equalities(&a, &b, 1e-9).ok_or(Error::LpInfeasible { residual: f64::NAN })?;
    let sol = lp::minimize(&a, &b, &DVector::zeros(n), Stop::FirstFeasible)?;
    verify_design(s, ord, k, &sol.x, DEFAULT_DESIGN_TOL)
}

// Appends the row `1^T x = 1` to `U x = 0`.
fn with_normalization(u: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let (r, n) = u.shape();
    let mut a = DMatrix::zeros(r + 1, n);
    a.rows_mut(0, r).copy_from(u);
    a.row_mut(r).fill(1.0);
    let mut b = DVector::zeros(r + 1);
    b[r] = 1.0;
    (a, b)
}

/// Decides whether some design is supported exactly on `support`.
///
/// Solves `max t` over `x = y + t 1_S`, `y, t >= 0`, `x_i = 0` off `S` and
/// `U x = 0, 1^T x = 1`. Returns the witness `x` (length `n`) when the optimal
/// slack exceeds [`SUPPORT_TOL`].
pub(crate) fn strictly_supported(u: &DMatrix<f64>, support: &[usize]) -> Result<Option<Vec<f64>>> {
    let n = u.ncols();
    let size = support.len();
    let (full, rhs) = with_normalization(u);
    let mut a = DMatrix::zeros(full.nrows(), size + 1);
    for (c, &i) in support.iter().enumerate() {
        a.column_mut(c).copy_from(&full.column(i));
    }
    let sum_col: DVector<f64> = (0..size).map(|c| a.column(c).into_owned()).sum();
    a.column_mut(size).copy_from(&sum_col);

    let Some((a, b)) = linalg::reduce_equalities(&a, &rhs, 1e-9) else {
        return Ok(None);
    };
    let mut cost = DVector::zeros(size + 1);
    cost[size] = -1.0;
    let sol = match lp::minimize(&a, &b, &cost, Stop::Optimal) {
        Ok(sol) => sol,
        Err(Error::LpInfeasible { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let t = sol.x[size];
    if t <= SUPPORT_TOL {
        return Ok(None);
    }
    let mut x = vec![0.0; n];
    for (c, &i) in support.iter().enumerate() {
        x[i] = sol.x[c] + t;
    }
    Ok(Some(x))
}

fn indicator(n: usize, set: &[usize]) -> Result<Vec<f64>> {
    if set.is_empty() {
        return Err(Error::InvalidInput("vertex set must be nonempty".into()));
    }
    let mut a = vec![0.0; n];
    for &i in set {
        if i >= n {
            return Err(Error::InvalidInput(format!("vertex {} out of range 1..={n}", i + 1)));
        }
        a[i] = 1.0;
    }
    Ok(a)
}

/// True when the uniform weighting of `set` is a k-design.
pub fn is_combinatorial(s: &SpectralData, ord: &EigenspaceOrdering, k: usize, set: &[usize]) -> Result<bool> {
    let a = indicator(s.n(), set)?;
    match verify_design(s, ord, k, &a, DEFAULT_DESIGN_TOL) {
        Ok(_) => Ok(true),
        Err(Error::NotADesign { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether the complement of `set` is also a combinatorial k-design.
/// Meant for combinatorial designs `set`, where the answer is always yes.
pub fn complement_check(s: &SpectralData, ord: &EigenspaceOrdering, k: usize, set: &[usize]) -> Result<bool> {
    let marked = indicator(s.n(), set)?;
    let rest: Vec<usize> = (0..s.n()).filter(|&i| marked[i] == 0.0).collect();
    if rest.is_empty() {
        return Err(Error::InvalidInput(
            "set covers every vertex; its complement is empty".into(),
        ));
    }
    is_combinatorial(s, ord, k, &rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{spectrum_of, WeightedGraph, DEFAULT_GROUP_TOL};

    fn path3() -> SpectralData {
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        spectrum_of(&g, DEFAULT_GROUP_TOL).unwrap()
    }

    #[test]
    fn path_designs() {
        let s = path3();
        let ord = EigenspaceOrdering::ascending(3);
        let d = verify_design(&s, &ord, 2, &[1.0, 0.0, 1.0], 1e-12).unwrap();
        assert_eq!(d.support, vec![0, 2]);
        assert!(d.combinatorial);
        assert_eq!(d.weights, vec![0.5, 0.0, 0.5]);
        let err = verify_design(&s, &ord, 2, &[1.0, 0.0, 0.0], 1e-8).unwrap_err();
        assert!(matches!(err, Error::NotADesign { eigenspace: 2, .. }));
        // The middle vertex alone averages the antisymmetric eigenvector.
        assert!(is_combinatorial(&s, &ord, 2, &[1]).unwrap());
        assert!(complement_check(&s, &ord, 2, &[1]).unwrap());
        assert!(complement_check(&s, &ord, 2, &[0, 1, 2]).is_err());
        assert!(is_combinatorial(&s, &ord, 2, &[]).is_err());
    }

    #[test]
    fn range_and_sign_checks() {
        let s = path3();
        let ord = EigenspaceOrdering::ascending(3);
        assert!(matches!(facet_bound(&s, &ord, 1), Err(Error::KOutOfRange { .. })));
        assert!(matches!(facet_bound(&s, &ord, 3), Err(Error::KOutOfRange { .. })));
        assert_eq!(facet_bound(&s, &ord, 2).unwrap(), 2);
        assert!(matches!(
            verify_design(&s, &ord, 2, &[1.0, -0.5, 1.0], 1e-8),
            Err(Error::NegativeWeight { vertex: 2, .. })
        ));
        assert!(verify_design(&s, &ord, 2, &[0.0, 0.0, 0.0], 1e-8).is_err());
        assert!(matches!(
            verify_design(&s, &ord, 2, &[1.0, 1.0], 1e-8),
            Err(Error::SizeMismatch { .. })
        ));
        // Tiny negative entries within tolerance are clamped.
        let d = verify_design(&s, &ord, 2, &[1.0, -1e-12, 1.0], 1e-8).unwrap();
        assert_eq!(d.weights[1], 0.0);
    }

    #[test]
    fn lp_design_is_verified() {
        let s = path3();
        let ord = EigenspaceOrdering::ascending(3);
        let d = find_design_lp(&s, &ord, 2).unwrap();
        assert!(d.residual <= DEFAULT_DESIGN_TOL);
        assert!(d.support.len() <= 2);
    }

    #[test]
    fn strict_support_lp() {
        let s = path3();
        let ord = EigenspaceOrdering::ascending(3);
        let u = averaging_rows(&s, &ord, 2);
        assert!(strictly_supported(&u, &[0]).unwrap().is_none());
        let x = strictly_supported(&u, &[0, 2]).unwrap().unwrap();
        assert!((x[0] - 0.5).abs() < 1e-12 && x[1] == 0.0);
        assert!(strictly_supported(&u, &[0, 1, 2]).unwrap().is_some());
    }

    #[test]
    fn only_the_uniform_weighting_averages_everything() {
        let g = WeightedGraph::new(
            5,
            [
                (0, 1, 1.0),
                (1, 2, 2.0),
                (2, 3, 0.5),
                (3, 4, 1.5),
                (4, 0, 1.0),
                (0, 2, 0.7),
            ],
        )
        .unwrap();
        let s = spectrum_of(&g, DEFAULT_GROUP_TOL).unwrap();
        let m = s.m();
        let u = averaging_rows(&s, &EigenspaceOrdering::ascending(m), m);
        use itertools::Itertools;
        for size in 1..5 {
            for subset in (0..5).combinations(size) {
                assert!(strictly_supported(&u, &subset).unwrap().is_none(), "{subset:?}");
            }
        }
        let x = strictly_supported(&u, &[0, 1, 2, 3, 4]).unwrap().unwrap();
        assert!(x.iter().all(|v| (v - 0.2).abs() < 1e-9));
    }
}
