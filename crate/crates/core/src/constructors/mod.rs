//! Graph constructions: positively weighted graphs with a prescribed
//! eigenspace structure, graphs with a prescribed eigenpolytope, and barbell
//! graphs with closed-form spectra.

mod barbell;
mod embed;

use nalgebra::{DMatrix, DVector};

pub use barbell::{barbell_graph, BarbellSpectrum};
pub use embed::{certify, graph_from_polytope, reduction, Certificate, Embedding, ReductionReport};

use crate::error::{Error, Result};
use crate::linalg;
use crate::spectral::WeightedGraph;

/// Default shrink factor applied to the largest safe perturbation radius.
pub const DEFAULT_ALPHA: f64 = 0.99;

// Off-diagonal entries of `-L` at or below this are not edges.
const EDGE_TOL: f64 = 1e-12;

/// An orthonormal basis of `R^n` (as rows) whose first row is the constant
/// vector, split into parts that are to become eigenspaces. The first part is
/// exactly `{0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionedBasis {
    rows: DMatrix<f64>,
    parts: Vec<Vec<usize>>,
}

impl PartitionedBasis {
    /// Validates the partition and orthonormality (to `1e-10`). The first row
    /// may deviate from `1/sqrt(n)` by `1e-8`; it is replaced by the exact
    /// constant vector.
    pub fn new(rows: DMatrix<f64>, parts: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.nrows();
        if rows.ncols() != n || n < 2 {
            return Err(Error::InvalidInput(format!(
                "basis must be square with n >= 2, got {}x{}",
                rows.nrows(),
                rows.ncols()
            )));
        }
        if parts.len() < 2 {
            return Err(Error::BadPartition("need at least two parts".into()));
        }
        if parts[0] != [0] {
            return Err(Error::BadPartition("the first part must be exactly {1}".into()));
        }
        let mut seen = vec![false; n];
        for part in &parts {
            if part.is_empty() {
                return Err(Error::BadPartition("empty part".into()));
            }
            for &i in part {
                if i >= n {
                    return Err(Error::BadPartition(format!("index {} out of range 1..={n}", i + 1)));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::BadPartition(format!("index {} appears twice", i + 1)));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::BadPartition(format!("index {} is in no part", i + 1)));
        }
        let c = 1.0 / (n as f64).sqrt();
        if let Some(dev) = rows.row(0).iter().map(|x| (x - c).abs()).reduce(f64::max) {
            if dev > 1e-8 {
                return Err(Error::InvalidInput(
                    "first basis row must be the constant vector".into(),
                ));
            }
        }
        let mut rows = rows;
        rows.row_mut(0).fill(c);
        let deviation = linalg::orthonormality_error(&rows);
        if deviation > 1e-10 {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { rows, parts })
    }

    pub fn n(&self) -> usize {
        self.rows.nrows()
    }

    pub fn rows(&self) -> &DMatrix<f64> {
        &self.rows
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// 1-based position of the part holding each row.
    fn part_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n()];
        for (k, part) in self.parts.iter().enumerate() {
            for &i in part {
                owner[i] = k + 1;
            }
        }
        owner
    }

    /// The rows of one part as a matrix.
    pub fn part_rows(&self, k: usize) -> DMatrix<f64> {
        let part = &self.parts[k];
        DMatrix::from_fn(part.len(), self.n(), |r, c| self.rows[(part[r], c)])
    }
}

/// Nonzero eigenvalues `λ_2..λ_n` (one per non-constant basis row) and the
/// cone they were checked against.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueAssignment {
    pub lambda: Vec<f64>,
    /// The perturbation radius, when the eigenvalues were derived from one.
    pub eps: Option<f64>,
    /// One row per vertex pair `i < j` (lexicographic), one column per
    /// non-constant basis row. `C λ` lists the resulting edge weights.
    pub cone_rows: DMatrix<f64>,
}

impl EigenvalueAssignment {
    /// Smallest entry of `C λ`, i.e. the lightest edge weight.
    pub fn min_constraint(&self) -> f64 {
        (&self.cone_rows * DVector::from_column_slice(&self.lambda)).min()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub graph: WeightedGraph,
    pub assignment: EigenvalueAssignment,
}

/// The rows `c_ij = (-φ_2(i)φ_2(j), ..., -φ_n(i)φ_n(j))` for all `i < j`.
pub fn constraint_matrix(pb: &PartitionedBasis) -> DMatrix<f64> {
    let n = pb.n();
    let b = pb.rows();
    let pairs = n * (n - 1) / 2;
    let mut c = DMatrix::zeros(pairs, n - 1);
    let mut row = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for r in 1..n {
                c[(row, r - 1)] = -b[(r, i)] * b[(r, j)];
            }
            debug_assert!((c.row(row).sum() - 1.0 / n as f64).abs() < 1e-9);
            row += 1;
        }
    }
    c
}

/// The largest radius around `1` guaranteed to stay inside the cone:
/// `min_c 1/(n |c|)`.
pub fn eps_bound(cone_rows: &DMatrix<f64>, n: usize) -> f64 {
    cone_rows
        .row_iter()
        .map(|c| 1.0 / (n as f64 * c.norm()))
        .fold(f64::INFINITY, f64::min)
}

/// A positively weighted graph whose Laplacian eigenspaces are the parts of
/// `pb`.
///
/// Without `eps` the radius is `alpha` times [`eps_bound`]. Part `k`
/// (1-based) receives eigenvalue `1 + sqrt(k) eps / n`. A caller-chosen
/// `eps` is accepted whenever every resulting edge weight is nonnegative.
pub fn graph_from_partitioned_basis(pb: &PartitionedBasis, eps: Option<f64>, alpha: f64) -> Result<Construction> {
    let n = pb.n();
    let cone_rows = constraint_matrix(pb);
    let eps = match eps {
        Some(e) if !(e > 0.0 && e.is_finite()) => {
            return Err(Error::InvalidParams(format!("eps must be positive, got {e}")))
        }
        Some(e) => e,
        None => {
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::InvalidParams(format!("alpha must lie in (0, 1), got {alpha}")));
            }
            alpha * eps_bound(&cone_rows, n)
        }
    };
    let owner = pb.part_of();
    let lambda: Vec<f64> = (1..n)
        .map(|r| 1.0 + (owner[r] as f64).sqrt() * eps / n as f64)
        .collect();
    let assignment = EigenvalueAssignment {
        lambda,
        eps: Some(eps),
        cone_rows,
    };
    let min_constraint = assignment.min_constraint();
    if min_constraint < -EDGE_TOL {
        return Err(Error::EpsilonTooLarge { eps, min_constraint });
    }
    finish(pb, assignment)
}

/// Like [`graph_from_partitioned_basis`] with explicit eigenvalues
/// `λ_2..λ_n`. They must be positive, constant on each part, distinct across
/// parts, and give nonnegative edge weights; zero weights (cone boundary)
/// produce non-complete graphs.
pub fn graph_from_partitioned_basis_with_lambda(pb: &PartitionedBasis, lambda: &[f64]) -> Result<Construction> {
    let n = pb.n();
    if lambda.len() != n - 1 {
        return Err(Error::InvalidEigenvalues(format!(
            "expected {} eigenvalues, got {}",
            n - 1,
            lambda.len()
        )));
    }
    if let Some(x) = lambda.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(Error::InvalidEigenvalues(format!("eigenvalue {x} is not positive")));
    }
    let scale = lambda.iter().cloned().fold(1.0, f64::max);
    let mut values = Vec::new();
    for part in &pb.parts()[1..] {
        let v = lambda[part[0] - 1];
        if part.iter().any(|&i| (lambda[i - 1] - v).abs() > 1e-12 * scale) {
            return Err(Error::InvalidEigenvalues("eigenvalues differ within a part".into()));
        }
        values.push(v);
    }
    for (a, x) in values.iter().enumerate() {
        if values[a + 1..].iter().any(|y| (x - y).abs() <= 1e-9 * scale) {
            return Err(Error::InvalidEigenvalues("two parts share an eigenvalue".into()));
        }
    }
    let assignment = EigenvalueAssignment {
        lambda: lambda.to_vec(),
        eps: None,
        cone_rows: constraint_matrix(pb),
    };
    let min_constraint = assignment.min_constraint();
    if min_constraint < -EDGE_TOL {
        return Err(Error::InvalidEigenvalues(format!(
            "outside the cone: smallest edge weight {min_constraint:e}"
        )));
    }
    finish(pb, assignment)
}

// Edge weights are the entries of C λ, which equal the off-diagonal of -L.
fn finish(pb: &PartitionedBasis, assignment: EigenvalueAssignment) -> Result<Construction> {
    let n = pb.n();
    let weights = &assignment.cone_rows * DVector::from_column_slice(&assignment.lambda);
    let mut edges = Vec::new();
    let mut row = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if weights[row] > EDGE_TOL {
                edges.push((i, j, weights[row]));
            }
            row += 1;
        }
    }
    let graph = WeightedGraph::new(n, edges)?;
    Ok(Construction { graph, assignment })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{build_laplacian, spectrum_of, DEFAULT_GROUP_TOL};

    fn small_basis() -> DMatrix<f64> {
        let s2 = 2f64.sqrt();
        let s6 = 6f64.sqrt();
        let s12 = 12f64.sqrt();
        DMatrix::from_row_slice(
            4,
            4,
            &[
                0.5,
                0.5,
                0.5,
                0.5, //
                1.0 / s2,
                -1.0 / s2,
                0.0,
                0.0, //
                1.0 / s6,
                1.0 / s6,
                -2.0 / s6,
                0.0, //
                1.0 / s12,
                1.0 / s12,
                1.0 / s12,
                -3.0 / s12,
            ],
        )
    }

    #[test]
    fn partition_validation() {
        let b = small_basis();
        assert!(matches!(
            PartitionedBasis::new(b.clone(), vec![vec![0, 1], vec![2, 3]]),
            Err(Error::BadPartition(_))
        ));
        assert!(matches!(
            PartitionedBasis::new(b.clone(), vec![vec![0], vec![1, 2]]),
            Err(Error::BadPartition(_))
        ));
        assert!(matches!(
            PartitionedBasis::new(b.clone(), vec![vec![0], vec![1, 1, 2, 3]]),
            Err(Error::BadPartition(_))
        ));
        let mut skewed = b.clone();
        skewed[(1, 0)] += 1e-6;
        assert!(matches!(
            PartitionedBasis::new(skewed, vec![vec![0], vec![1, 2, 3]]),
            Err(Error::NotOrthonormal { .. })
        ));
        assert!(PartitionedBasis::new(b, vec![vec![0], vec![1], vec![2, 3]]).is_ok());
    }

    #[test]
    fn constraint_rows_sum_to_one_over_n() {
        let pb = PartitionedBasis::new(small_basis(), vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        let c = constraint_matrix(&pb);
        assert_eq!(c.shape(), (6, 3));
        for row in c.row_iter() {
            assert!((row.sum() - 0.25).abs() < 1e-15);
        }
        assert!((c[(0, 0)] - 0.5).abs() < 1e-15);
        assert!((c[(0, 1)] + 1.0 / 6.0).abs() < 1e-15);
        assert!((eps_bound(&c, 4) - 3.0 / 41f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn trivial_partition_gives_uniform_complete_graph() {
        let pb = PartitionedBasis::new(small_basis(), vec![vec![0], vec![1, 2, 3]]).unwrap();
        let out = graph_from_partitioned_basis(&pb, None, DEFAULT_ALPHA).unwrap();
        assert_eq!(out.graph.edges().len(), 6);
        let w = out.graph.edges()[0].w;
        assert!(out.graph.edges().iter().all(|e| (e.w - w).abs() < 1e-14));
        let unit = graph_from_partitioned_basis_with_lambda(&pb, &[1.0, 1.0, 1.0]).unwrap();
        assert!(unit.graph.edges().iter().all(|e| (e.w - 0.25).abs() < 1e-15));
    }

    #[test]
    fn eigenspaces_follow_the_parts() {
        let pb = PartitionedBasis::new(small_basis(), vec![vec![0], vec![2, 3], vec![1]]).unwrap();
        let out = graph_from_partitioned_basis(&pb, None, DEFAULT_ALPHA).unwrap();
        let s = spectrum_of(&out.graph, DEFAULT_GROUP_TOL).unwrap();
        assert_eq!(s.multiplicities(), vec![1, 2, 1]);
        assert!(linalg::max_principal_angle(s.space(1), &pb.part_rows(1)) < 1e-6);
        assert!(linalg::max_principal_angle(s.space(2), &pb.part_rows(2)) < 1e-6);
        let l = build_laplacian(&out.graph);
        let m = DMatrix::from_diagonal(&DVector::from_iterator(
            4,
            std::iter::once(0.0).chain(out.assignment.lambda.iter().copied()),
        ));
        let expected = pb.rows().transpose() * m * pb.rows();
        assert!((l.matrix() - expected).amax() < 1e-14);
    }

    #[test]
    fn large_eps_can_leave_the_cone() {
        // Walsh basis of R^8; the pair (1, 8) has negative coefficients on
        // rows 4, 6 and 7, which are given the largest eigenvalues here.
        let walsh = DMatrix::from_fn(8, 8, |r, i| {
            let sign = if (r & i).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            sign / 8f64.sqrt()
        });
        let parts = vec![vec![0], vec![1], vec![2], vec![4], vec![7], vec![3], vec![5], vec![6]];
        let pb = PartitionedBasis::new(walsh, parts).unwrap();
        assert!(graph_from_partitioned_basis(&pb, Some(10.0), DEFAULT_ALPHA).is_ok());
        assert!(matches!(
            graph_from_partitioned_basis(&pb, Some(100.0), DEFAULT_ALPHA),
            Err(Error::EpsilonTooLarge { eps, .. }) if eps == 100.0
        ));
    }

    #[test]
    fn bad_parameters() {
        let pb = PartitionedBasis::new(small_basis(), vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        assert!(matches!(
            graph_from_partitioned_basis(&pb, Some(-1.0), DEFAULT_ALPHA),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            graph_from_partitioned_basis(&pb, None, 1.5),
            Err(Error::InvalidParams(_))
        ));
        for bad in [&[1.0, 2.0][..], &[1.0, 2.0, 3.0], &[2.0, 2.0, 2.0], &[-1.0, 1.0, 1.0]] {
            assert!(matches!(
                graph_from_partitioned_basis_with_lambda(&pb, bad),
                Err(Error::InvalidEigenvalues(_))
            ));
        }
    }
}
