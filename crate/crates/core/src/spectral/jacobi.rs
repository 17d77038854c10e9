//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub(crate) const MAX_SWEEPS: usize = 100;
pub(crate) const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigenvalues (unsorted) and eigenvectors as the columns of the returned
/// matrix.
pub(crate) fn symmetric_eigen(a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let mut m = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let frob = m.norm();
    let target = OFF_DIAGONAL_TOL * frob;

    let mut off = off_diagonal_norm(&m);
    let mut sweeps = 0;
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&m);
    }
    let values = (0..n).map(|i| m[(i, i)]).collect();
    Ok((values, v))
}

fn off_diagonal_norm(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

// Annihilates m[p][q] with a plane rotation (Rutishauser's formulation).
fn rotate(m: &mut DMatrix<f64>, v: &mut DMatrix<f64>, p: usize, q: usize) {
    let apq = m[(p, q)];
    if apq == 0.0 {
        return;
    }
    let app = m[(p, p)];
    let aqq = m[(q, q)];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = m.nrows();

    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = c * mkp - s * mkq;
        m[(k, q)] = s * mkp + c * mkq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = c * mpk - s * mqk;
        m[(q, k)] = s * mpk + c * mqk;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
