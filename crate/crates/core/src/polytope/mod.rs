//! Vector configurations and the V-polytopes they span: facet enumeration at
//! desk scale, interior points, combinatorial equivalence under the identity
//! labeling, and Gale dual bases.

mod facets;

use nalgebra::DMatrix;

pub use facets::{
    affine_coordinates, combinatorially_equivalent, enumerate_facets, interior_vertices, FacetList, FacetOptions,
};

use crate::error::{Error, Result};
use crate::linalg;

/// A finite list of labeled points in `R^dim`, stored as the columns of a
/// `dim x n` matrix. Labels are the column indices (0-based); repeated points
/// are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorConfiguration {
    columns: DMatrix<f64>,
}

impl VectorConfiguration {
    pub fn from_columns(columns: DMatrix<f64>) -> Result<Self> {
        if columns.ncols() == 0 {
            return Err(Error::InvalidInput("configuration needs at least one point".into()));
        }
        if columns.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        Ok(Self { columns })
    }

    pub fn from_points(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "point {} has {} coordinates, expected {dim}",
                i + 1,
                p.len()
            )));
        }
        Self::from_columns(DMatrix::from_fn(dim, points.len(), |r, c| points[c][r]))
    }

    pub fn dim(&self) -> usize {
        self.columns.nrows()
    }

    pub fn len(&self) -> usize {
        self.columns.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.ncols() == 0
    }

    pub fn columns(&self) -> &DMatrix<f64> {
        &self.columns
    }

    pub fn point(&self, j: usize) -> Vec<f64> {
        self.columns.column(j).iter().copied().collect()
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|j| self.point(j)).collect()
    }

    pub fn centroid(&self) -> Vec<f64> {
        let n = self.len() as f64;
        (0..self.dim())
            .map(|r| self.columns.row(r).iter().sum::<f64>() / n)
            .collect()
    }

    /// The configuration translated so that its centroid is the origin.
    pub fn centered(&self) -> Self {
        let c = self.centroid();
        let mut cols = self.columns.clone();
        for r in 0..self.dim() {
            for j in 0..self.len() {
                cols[(r, j)] -= c[r];
            }
        }
        Self { columns: cols }
    }
}

/// Orthonormal basis of the kernel of `[1; points]`, returned as a
/// configuration of dimension `n - dim - 1` (its rows are the basis vectors).
///
/// The input must be full-dimensional: `[1; points]` needs rank `dim + 1`.
pub fn gale_dual_basis(c: &VectorConfiguration) -> Result<VectorConfiguration> {
    let (dim, n) = (c.dim(), c.len());
    let mut stacked = DMatrix::zeros(dim + 1, n);
    stacked.row_mut(0).fill(1.0);
    stacked.rows_mut(1, dim).copy_from(c.columns());
    let (rank, kernel) = linalg::kernel_rows(&stacked, 1e-9);
    if rank < dim + 1 {
        return Err(Error::RankDeficient {
            rank,
            expected: dim + 1,
        });
    }
    Ok(VectorConfiguration { columns: kernel })
}
