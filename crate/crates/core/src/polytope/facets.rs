use std::collections::BTreeSet;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::VectorConfiguration;
use crate::error::{Error, Result};
use crate::linalg;

/// Guards and tolerances for brute-force facet enumeration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FacetOptions {
    pub max_n: usize,
    pub max_dim: usize,
    /// On-hyperplane and side tolerance, relative to the largest centered
    /// point norm.
    pub tol: f64,
}

impl Default for FacetOptions {
    fn default() -> Self {
        Self {
            max_n: 20,
            max_dim: 8,
            tol: 1e-9,
        }
    }
}

// Subsets whose smallest spanning singular value falls below this fraction of
// the configuration scale are skipped as affinely dependent.
const INDEPENDENCE_TOL: f64 = 1e-7;

/// Facets of `conv(points)` as sets of point labels (0-based), sorted
/// lexicographically, together with the affine dimension of the hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetList {
    pub affine_dim: usize,
    pub facets: Vec<Vec<usize>>,
}

impl FacetList {
    /// Labels that lie on at least one facet.
    pub fn boundary(&self) -> BTreeSet<usize> {
        self.facets.iter().flatten().copied().collect()
    }
}

/// Coordinates of the centered points in an orthonormal basis of their
/// affine hull: returns the hull dimension and an `affine_dim x n` matrix.
pub fn affine_coordinates(c: &VectorConfiguration) -> (usize, DMatrix<f64>) {
    let centered = c.centered();
    let x = centered.columns();
    if x.nrows() == 0 {
        return (0, DMatrix::zeros(0, c.len()));
    }
    let svd = linalg::full_svd(x);
    let rank = linalg::rank_of(&svd.values, 1e-9);
    let basis = svd.u.view((0, 0), (x.nrows(), rank)).into_owned();
    (rank, basis.transpose() * x)
}

pub fn enumerate_facets(c: &VectorConfiguration, opts: &FacetOptions) -> Result<FacetList> {
    let n = c.len();
    if n > opts.max_n {
        return Err(Error::GuardExceeded {
            what: "points",
            value: n,
            limit: opts.max_n,
        });
    }
    let (d, y) = affine_coordinates(c);
    if d == 0 {
        return Err(Error::DegenerateConfiguration);
    }
    if d > opts.max_dim {
        return Err(Error::GuardExceeded {
            what: "affine dimension",
            value: d,
            limit: opts.max_dim,
        });
    }
    let scale = (0..n).map(|j| y.column(j).norm()).fold(0.0f64, f64::max);
    let tol = opts.tol * scale;

    let subsets: Vec<Vec<usize>> = (0..n).combinations(d).collect();
    let found: BTreeSet<Vec<usize>> = subsets
        .par_iter()
        .filter_map(|subset| supporting_facet(&y, subset, tol, scale))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    Ok(FacetList {
        affine_dim: d,
        facets: found.into_iter().collect(),
    })
}

// The labels on the hyperplane through `subset`, if that hyperplane supports
// the whole configuration.
fn supporting_facet(y: &DMatrix<f64>, subset: &[usize], tol: f64, scale: f64) -> Option<Vec<usize>> {
    let d = y.nrows();
    let p0 = y.column(subset[0]).into_owned();
    let normal: DVector<f64> = if d == 1 {
        DVector::from_element(1, 1.0)
    } else {
        let diffs = DMatrix::from_fn(d - 1, d, |r, c| y[(c, subset[r + 1])] - p0[c]);
        let svd = linalg::full_svd(&diffs);
        if svd.values[d - 2] <= INDEPENDENCE_TOL * scale {
            return None;
        }
        svd.vt.row(d - 1).transpose()
    };
    let offset = normal.dot(&p0);
    let dists: Vec<f64> = (0..y.ncols()).map(|j| normal.dot(&y.column(j)) - offset).collect();
    let below = dists.iter().all(|&t| t <= tol);
    let above = dists.iter().all(|&t| t >= -tol);
    if !(below || above) {
        return None;
    }
    Some(
        dists
            .iter()
            .enumerate()
            .filter(|(_, t)| t.abs() <= tol)
            .map(|(j, _)| j)
            .collect(),
    )
}

/// Labels lying on no facet, i.e. in the relative interior of the hull.
pub fn interior_vertices(c: &VectorConfiguration, opts: &FacetOptions) -> Result<Vec<usize>> {
    let facets = enumerate_facets(c, opts)?;
    let boundary = facets.boundary();
    Ok((0..c.len()).filter(|j| !boundary.contains(j)).collect())
}

/// Facet-set equality under the identity labeling.
pub fn combinatorially_equivalent(
    p: &VectorConfiguration,
    q: &VectorConfiguration,
    opts: &FacetOptions,
) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let fp = enumerate_facets(p, opts)?;
    let fq = enumerate_facets(q, opts)?;
    Ok(fp.affine_dim == fq.affine_dim && fp.facets == fq.facets)
}
