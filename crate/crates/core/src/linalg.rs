//! Small dense linear-algebra helpers shared by the spectral, polytope and
//! constructor modules. Everything here works on row-major conceptual data
//! stored in `nalgebra::DMatrix`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Singular values (descending) with the matching left and right singular
/// vectors. `vt` always has `ncols` rows, so the right null space is
/// available even for wide matrices.
pub(crate) struct FullSvd {
    pub values: Vec<f64>,
    pub u: DMatrix<f64>,
    pub vt: DMatrix<f64>,
}

pub(crate) fn full_svd(a: &DMatrix<f64>) -> FullSvd {
    let (rows, cols) = a.shape();
    // Pad wide matrices with zero rows so that V is square.
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.rows_mut(0, rows).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(true, true);
    let u = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap()
            .then(i.cmp(&j))
    });
    let values = order.iter().map(|&i| svd.singular_values[i]).collect();
    let u = DMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
    let vt = DMatrix::from_fn(order.len(), vt.ncols(), |r, c| vt[(order[r], c)]);
    FullSvd { values, u, vt }
}

/// Numerical rank with cutoff `rel_tol * sigma_max`.
pub(crate) fn rank_of(values: &[f64], rel_tol: f64) -> usize {
    let smax = values.first().copied().unwrap_or(0.0);
    if smax <= 0.0 {
        return 0;
    }
    values.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Orthonormal rows spanning the right null space of `a`.
pub fn kernel_rows(a: &DMatrix<f64>, rel_tol: f64) -> (usize, DMatrix<f64>) {
    let n = a.ncols();
    let svd = full_svd(a);
    let rank = rank_of(&svd.values, rel_tol);
    let kernel = svd.vt.rows(rank, n - rank).into_owned();
    (rank, kernel)
}

/// An equivalent full-row-rank system for `a x = b`.
///
/// Returns `None` when `b` is not (numerically) in the column space of `a`.
pub(crate) fn reduce_equalities(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    rel_tol: f64,
) -> Option<(DMatrix<f64>, DVector<f64>)> {
    let svd = a.clone().svd(true, true);
    let values = svd.singular_values.as_slice().to_vec();
    let u = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested V^T");
    let smax = values.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..values.len())
        .filter(|&i| smax > 0.0 && values[i] > rel_tol * smax)
        .collect();
    // Component of b outside range(a) must vanish.
    let mut projected = DVector::zeros(b.len());
    for &i in &keep {
        let coef = u.column(i).dot(b);
        projected += u.column(i) * coef;
    }
    let scale = b.norm().max(1.0);
    if (b - &projected).norm() > 1e-9 * scale {
        return None;
    }
    let rows = DMatrix::from_fn(keep.len(), a.ncols(), |r, c| vt[(keep[r], c)]);
    let rhs = DVector::from_iterator(keep.len(), keep.iter().map(|&i| u.column(i).dot(b) / values[i]));
    Some((rows, rhs))
}

/// Modified Gram-Schmidt on the rows of `m`, with a second pass whenever
/// orthogonality is lost beyond `1e-10`.
pub fn orthonormalize_rows(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (rows, cols) = m.shape();
    let mut q = m.clone();
    let scale = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1e-300);
    for i in 0..rows {
        for _pass in 0..2 {
            for j in 0..i {
                let proj: f64 = (0..cols).map(|c| q[(i, c)] * q[(j, c)]).sum();
                for c in 0..cols {
                    let v = q[(j, c)];
                    q[(i, c)] -= proj * v;
                }
            }
            let worst = (0..i)
                .map(|j| {
                    let norm: f64 = (0..cols).map(|c| q[(i, c)] * q[(i, c)]).sum::<f64>().sqrt();
                    let dot: f64 = (0..cols).map(|c| q[(i, c)] * q[(j, c)]).sum();
                    if norm > 0.0 {
                        (dot / norm).abs()
                    } else {
                        0.0
                    }
                })
                .fold(0.0, f64::max);
            if worst <= 1e-10 {
                break;
            }
        }
        let norm: f64 = (0..cols).map(|c| q[(i, c)] * q[(i, c)]).sum::<f64>().sqrt();
        if norm <= 1e-12 * scale {
            return Err(Error::RankDeficient {
                rank: i,
                expected: rows,
            });
        }
        for c in 0..cols {
            q[(i, c)] /= norm;
        }
    }
    Ok(q)
}

/// `max |B B^T - I|` over the rows of `b`.
pub fn orthonormality_error(b: &DMatrix<f64>) -> f64 {
    let gram = b * b.transpose();
    let mut worst = 0.0f64;
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[(i, j)] - target).abs());
        }
    }
    worst
}

/// Largest principal angle (radians) between the row spaces of two
/// matrices with orthonormal rows of equal count.
pub fn max_principal_angle(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    if a.nrows() != b.nrows() {
        return std::f64::consts::FRAC_PI_2;
    }
    if a.nrows() == 0 {
        return 0.0;
    }
    // Rows of `a` with their projection onto span(b) removed; the largest
    // singular value is the sine of the largest angle.
    let residual = a - (a * b.transpose()) * b;
    let s = residual.singular_values().iter().cloned().fold(0.0f64, f64::max);
    s.min(1.0).asin()
}

/// Flip the sign of a vector so that its largest-magnitude entry is
/// positive (lowest index wins ties).
pub(crate) fn sign_normalize(v: &mut [f64]) {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v.get(best).is_some_and(|x| *x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}
