//! Weighted graphs, their combinatorial Laplacian, and the grouped
//! Laplacian eigendecomposition every other module works from.

mod graph;
mod jacobi;
mod ordering;

use nalgebra::DMatrix;

pub use graph::{Edge, WeightedGraph};
pub use ordering::EigenspaceOrdering;

use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::VectorConfiguration;

/// Default relative tolerance for merging nearby eigenvalues.
pub const DEFAULT_GROUP_TOL: f64 = 1e-8;

/// `L = D - A` for a weighted graph.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianMatrix(DMatrix<f64>);

impl LaplacianMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }
}

pub fn build_laplacian(g: &WeightedGraph) -> LaplacianMatrix {
    let n = g.n();
    let mut l = DMatrix::zeros(n, n);
    for e in g.edges() {
        l[(e.i, e.j)] -= e.w;
        l[(e.j, e.i)] -= e.w;
        l[(e.i, e.i)] += e.w;
        l[(e.j, e.j)] += e.w;
    }
    LaplacianMatrix(l)
}

/// An orthonormal Laplacian eigenbasis grouped into eigenspaces.
///
/// Block `i` holds `dim(Λ_i)` orthonormal row vectors of length `n`. When the
/// graph is connected the first block is exactly `1/sqrt(n)` in every
/// coordinate and its eigenvalue is `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    n: usize,
    eigenvalues: Vec<f64>,
    spaces: Vec<DMatrix<f64>>,
    connected: bool,
}

impl SpectralData {
    /// Assembles spectral data from explicit blocks, e.g. after rotating a
    /// basis inside an eigenspace. The stacked rows must be orthonormal and
    /// the first block must be the constant vector.
    pub fn from_parts(eigenvalues: Vec<f64>, spaces: Vec<DMatrix<f64>>) -> Result<Self> {
        if eigenvalues.len() != spaces.len() || spaces.is_empty() {
            return Err(Error::InvalidInput("need one eigenvalue per eigenspace block".into()));
        }
        let n = spaces[0].ncols();
        if spaces.iter().any(|b| b.ncols() != n || b.nrows() == 0) {
            return Err(Error::InvalidInput(
                "eigenspace blocks must be non-empty with n columns".into(),
            ));
        }
        let total: usize = spaces.iter().map(|b| b.nrows()).sum();
        if total != n {
            return Err(Error::InvalidInput(format!(
                "blocks hold {total} vectors, expected {n}"
            )));
        }
        let data = Self {
            n,
            eigenvalues,
            spaces,
            connected: true,
        };
        let dev = linalg::orthonormality_error(&data.basis());
        if dev > 1e-8 {
            return Err(Error::NotOrthonormal { deviation: dev });
        }
        let first = &data.spaces[0];
        let c = 1.0 / (n as f64).sqrt();
        if first.nrows() != 1 || first.iter().any(|x| (x - c).abs() > 1e-8) {
            return Err(Error::InvalidInput(
                "first eigenspace must be spanned by the constant vector".into(),
            ));
        }
        Ok(data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct eigenspaces.
    pub fn m(&self) -> usize {
        self.spaces.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn spaces(&self) -> &[DMatrix<f64>] {
        &self.spaces
    }

    pub fn space(&self, i: usize) -> &DMatrix<f64> {
        &self.spaces[i]
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.spaces.iter().map(|b| b.nrows()).collect()
    }

    /// True when the zero eigenvalue is simple, i.e. the graph is connected.
    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// All basis rows stacked in eigenspace order (an `n x n` matrix).
    pub fn basis(&self) -> DMatrix<f64> {
        let mut b = DMatrix::zeros(self.n, self.n);
        let mut row = 0;
        for block in &self.spaces {
            b.rows_mut(row, block.nrows()).copy_from(block);
            row += block.nrows();
        }
        b
    }

    /// `B^T Λ B` with the grouped eigenvalues.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for (lambda, block) in self.eigenvalues.iter().zip(&self.spaces) {
            l += block.transpose() * block * *lambda;
        }
        l
    }

    /// Eigenspace index whose eigenvalue is closest to `lambda`.
    pub fn closest_eigenspace(&self, lambda: f64) -> usize {
        let mut best = 0;
        for (i, v) in self.eigenvalues.iter().enumerate() {
            if (v - lambda).abs() < (self.eigenvalues[best] - lambda).abs() {
                best = i;
            }
        }
        best
    }
}

/// Grouped eigendecomposition of a Laplacian.
///
/// Eigenvalues within `group_tol * max(1, |λ|)` of their neighbour are merged
/// into one eigenspace represented by the group mean. Each block is
/// re-orthonormalized and every row sign-normalized so its largest entry is
/// positive. With `require_connected`, a zero eigenvalue of multiplicity
/// greater than one is an error.
pub fn eigendecompose(l: &LaplacianMatrix, group_tol: f64, require_connected: bool) -> Result<SpectralData> {
    if group_tol.is_nan() || group_tol <= 0.0 {
        return Err(Error::InvalidParams("group_tol must be positive".into()));
    }
    let n = l.n();
    let (values, vectors) = jacobi::symmetric_eigen(l.matrix())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap().then(i.cmp(&j)));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        match groups.last_mut() {
            Some(g)
                if {
                    let prev = values[*g.last().unwrap()];
                    (values[idx] - prev).abs() <= group_tol * prev.abs().max(1.0)
                } =>
            {
                g.push(idx)
            }
            _ => groups.push(vec![idx]),
        }
    }

    let lambda_max = values.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    let zero_group_is_simple = {
        let first = &groups[0];
        let mean = first.iter().map(|&i| values[i]).sum::<f64>() / first.len() as f64;
        mean.abs() <= group_tol * lambda_max.max(1.0) && first.len() == 1
    };
    if require_connected && !zero_group_is_simple {
        return Err(Error::DisconnectedGraph);
    }

    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut spaces = Vec::with_capacity(groups.len());
    for (gi, group) in groups.iter().enumerate() {
        if gi == 0 && zero_group_is_simple {
            eigenvalues.push(0.0);
            spaces.push(DMatrix::from_element(1, n, 1.0 / (n as f64).sqrt()));
            continue;
        }
        let mean = group.iter().map(|&i| values[i]).sum::<f64>() / group.len() as f64;
        let raw = DMatrix::from_fn(group.len(), n, |r, c| vectors[(c, group[r])]);
        let mut block = linalg::orthonormalize_rows(&raw)?;
        for r in 0..block.nrows() {
            let mut row: Vec<f64> = block.row(r).iter().copied().collect();
            linalg::sign_normalize(&mut row);
            for (c, x) in row.into_iter().enumerate() {
                block[(r, c)] = x;
            }
        }
        eigenvalues.push(mean);
        spaces.push(block);
    }

    Ok(SpectralData {
        n,
        eigenvalues,
        spaces,
        connected: zero_group_is_simple,
    })
}

/// Laplacian plus grouped eigendecomposition, failing on disconnected input.
pub fn spectrum_of(g: &WeightedGraph, group_tol: f64) -> Result<SpectralData> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    eigendecompose(&build_laplacian(g), group_tol, true)
}

/// Reorders the eigenspaces so that position `p` holds eigenspace
/// `ord.at(p)`.
pub fn order_eigenspaces(s: &SpectralData, ord: &EigenspaceOrdering) -> Result<SpectralData> {
    if ord.len() != s.m() {
        return Err(Error::InvalidOrdering(format!(
            "ordering has {} entries but there are {} eigenspaces",
            ord.len(),
            s.m()
        )));
    }
    Ok(SpectralData {
        n: s.n,
        eigenvalues: ord.as_slice().iter().map(|&i| s.eigenvalues[i]).collect(),
        spaces: ord.as_slice().iter().map(|&i| s.spaces[i].clone()).collect(),
        connected: s.connected,
    })
}

/// The configuration of columns of the rows belonging to the eigenspaces in
/// `idx` (0-based), stacked in the order given.
pub fn submatrix_u(s: &SpectralData, idx: &[usize]) -> Result<VectorConfiguration> {
    if let Some(&bad) = idx.iter().find(|&&i| i >= s.m()) {
        return Err(Error::IndexOutOfRange {
            index: bad + 1,
            m: s.m(),
        });
    }
    let dim: usize = idx.iter().map(|&i| s.spaces[i].nrows()).sum();
    let mut rows = DMatrix::zeros(dim, s.n);
    let mut r = 0;
    for &i in idx {
        let block = &s.spaces[i];
        rows.rows_mut(r, block.nrows()).copy_from(block);
        r += block.nrows();
    }
    VectorConfiguration::from_columns(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j, 1.0));
            }
        }
        WeightedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn single_edge_laplacian() {
        let g = WeightedGraph::new(2, [(0, 1, 1.0)]).unwrap();
        let l = build_laplacian(&g);
        assert_eq!(l.matrix(), &DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]));
        let s = eigendecompose(&l, DEFAULT_GROUP_TOL, true).unwrap();
        assert_eq!(s.m(), 2);
        assert!((s.eigenvalues()[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn complete_graph_spectrum() {
        let s = spectrum_of(&complete(4), DEFAULT_GROUP_TOL).unwrap();
        assert_eq!(s.multiplicities(), vec![1, 3]);
        assert_eq!(s.eigenvalues()[0], 0.0);
        assert!((s.eigenvalues()[1] - 4.0).abs() < 1e-12);
        assert!(linalg::orthonormality_error(&s.basis()) < 1e-12);
    }

    #[test]
    fn disconnected_detection() {
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let l = build_laplacian(&g);
        assert!(matches!(
            eigendecompose(&l, DEFAULT_GROUP_TOL, true),
            Err(Error::DisconnectedGraph)
        ));
        let s = eigendecompose(&l, DEFAULT_GROUP_TOL, false).unwrap();
        assert!(!s.is_connected());
        assert_eq!(s.multiplicities()[0], 2);
        assert!(matches!(spectrum_of(&g, 1e-8), Err(Error::DisconnectedGraph)));
    }

    #[test]
    fn submatrix_of_constant_space() {
        let s = spectrum_of(&complete(3), DEFAULT_GROUP_TOL).unwrap();
        let c = submatrix_u(&s, &[0]).unwrap();
        assert_eq!(c.dim(), 1);
        for j in 0..3 {
            assert!((c.point(j)[0] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        assert!(matches!(
            submatrix_u(&s, &[2]),
            Err(Error::IndexOutOfRange { index: 3, m: 2 })
        ));
    }

    #[test]
    fn identity_ordering_is_noop() {
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
        let s = spectrum_of(&g, DEFAULT_GROUP_TOL).unwrap();
        let same = order_eigenspaces(&s, &EigenspaceOrdering::ascending(s.m())).unwrap();
        assert_eq!(same, s);
        let bad = EigenspaceOrdering::ascending(2);
        assert!(order_eigenspaces(&s, &bad).is_err());
    }

    #[test]
    fn from_parts_validates() {
        let s = spectrum_of(&complete(3), DEFAULT_GROUP_TOL).unwrap();
        let again = SpectralData::from_parts(s.eigenvalues().to_vec(), s.spaces().to_vec()).unwrap();
        assert_eq!(again, s);
        let mut broken = s.spaces().to_vec();
        broken[1][(0, 0)] += 0.1;
        assert!(SpectralData::from_parts(s.eigenvalues().to_vec(), broken).is_err());
    }

    #[test]
    fn rejects_nonpositive_group_tol() {
        let l = build_laplacian(&complete(3));
        assert!(eigendecompose(&l, 0.0, true).is_err());
    }
}
