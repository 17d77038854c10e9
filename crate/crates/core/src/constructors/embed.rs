use nalgebra::DMatrix;

use super::{graph_from_partitioned_basis, Construction, PartitionedBasis, DEFAULT_ALPHA};
use crate::designs::{enumerate_minimal_designs, DesignEnumeration, EnumerationOptions};
use crate::error::{Error, Result};
use crate::linalg;
use crate::polytope::{
    affine_coordinates, enumerate_facets, gale_dual_basis, FacetList, FacetOptions, VectorConfiguration,
};
use crate::spectral::{spectrum_of, submatrix_u, EigenspaceOrdering, SpectralData, DEFAULT_GROUP_TOL};

/// A graph built so that one of its eigenpolytopes is a given polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    pub construction: Construction,
    /// Rows: constant vector, the polytope's coordinates, then a Gale dual.
    pub basis: PartitionedBasis,
}

impl Embedding {
    /// Eigenvalue assigned to the polytope's coordinate space.
    pub fn polytope_eigenvalue(&self) -> f64 {
        self.construction.assignment.lambda[self.basis.parts()[1][0] - 1]
    }

    /// Eigenvalue assigned to the Gale dual space.
    pub fn dual_eigenvalue(&self) -> f64 {
        self.construction.assignment.lambda[self.basis.parts()[2][0] - 1]
    }

    /// Index of the polytope's eigenspace in `s` (the spectrum of the
    /// constructed graph).
    pub fn polytope_space(&self, s: &SpectralData) -> usize {
        s.closest_eigenspace(self.polytope_eigenvalue())
    }

    pub fn dual_space(&self, s: &SpectralData) -> usize {
        s.closest_eigenspace(self.dual_eigenvalue())
    }

    /// The eigenpolytope of the constructed graph on the polytope's space,
    /// recomputed from a fresh eigendecomposition.
    pub fn eigenpolytope(&self) -> Result<VectorConfiguration> {
        let s = spectrum_of(&self.construction.graph, DEFAULT_GROUP_TOL)?;
        submatrix_u(&s, &[self.polytope_space(&s)])
    }
}

/// Builds a connected positively weighted graph with an eigenpolytope
/// combinatorially equivalent to `conv(p)`.
///
/// The polytope must be full-dimensional in its ambient space and not a
/// simplex (`dim <= n - 2`), so that the Gale dual space is nonempty.
pub fn graph_from_polytope(p: &VectorConfiguration, eps: Option<f64>, alpha: f64) -> Result<Embedding> {
    let (n, d) = (p.len(), p.dim());
    let (rank, _) = affine_coordinates(p);
    if rank < d {
        return Err(Error::RankDeficient { rank, expected: d });
    }
    if d + 1 >= n {
        return Err(Error::SimplexInput { n, dim: d });
    }
    let centered = p.centered();
    let dual = gale_dual_basis(&centered)?;
    let mut u = DMatrix::zeros(n, n);
    u.row_mut(0).fill(1.0);
    u.rows_mut(1, d).copy_from(centered.columns());
    u.rows_mut(d + 1, n - d - 1).copy_from(dual.columns());
    let rows = linalg::orthonormalize_rows(&u)?;
    let parts = vec![vec![0], (1..=d).collect(), (d + 1..n).collect()];
    let basis = PartitionedBasis::new(rows, parts)?;
    let construction = graph_from_partitioned_basis(&basis, eps, alpha)?;
    Ok(Embedding { construction, basis })
}

/// Facet lists of the input and of the embedded eigenpolytope.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub equivalent: bool,
    pub facets_input: FacetList,
    pub facets_embedded: FacetList,
}

pub fn certify(p: &VectorConfiguration, e: &Embedding, opts: &FacetOptions) -> Result<Certificate> {
    let embedded = e.eigenpolytope()?;
    let facets_input = enumerate_facets(p, opts)?;
    let facets_embedded = enumerate_facets(&embedded, opts)?;
    Ok(Certificate {
        equivalent: facets_input == facets_embedded,
        facets_input,
        facets_embedded,
    })
}

/// Outcome of deciding simpliciality through minimal 2-designs.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub n: usize,
    pub dim: usize,
    /// Ordering used on the embedded graph: constant, dual, polytope space.
    pub ordering: EigenspaceOrdering,
    /// `s_2 = n - dim`.
    pub facet_bound: usize,
    pub designs: DesignEnumeration,
    pub smallest_design: usize,
    /// No minimal 2-design has fewer than `s_2` vertices.
    pub simplicial: bool,
    /// Sizes of the input polytope's facets, computed directly.
    pub input_facet_sizes: Vec<usize>,
    /// Every input facet has exactly `dim` vertices.
    pub simplicial_by_facets: bool,
}

impl ReductionReport {
    pub fn consistent(&self) -> bool {
        self.simplicial == self.simplicial_by_facets
    }
}

/// Embeds `p` and asks for small 2-designs averaging the Gale dual space:
/// their supports are the complements of the facets of `p`, so a design
/// below `n - dim` vertices exists exactly when some facet is not a simplex.
pub fn reduction(
    p: &VectorConfiguration,
    facet_opts: &FacetOptions,
    enum_opts: &EnumerationOptions,
) -> Result<ReductionReport> {
    let e = graph_from_polytope(p, None, DEFAULT_ALPHA)?;
    let s = spectrum_of(&e.construction.graph, DEFAULT_GROUP_TOL)?;
    if s.m() != 3 {
        return Err(Error::InvalidInput(format!(
            "embedded graph has {} eigenspaces, expected 3",
            s.m()
        )));
    }
    let ordering = EigenspaceOrdering::new(vec![0, e.dual_space(&s), e.polytope_space(&s)])?;
    let designs = enumerate_minimal_designs(&s, &ordering, 2, enum_opts)?;
    let facet_bound = designs.facet_bound;
    let smallest_design = designs.designs.iter().map(|d| d.support.len()).min().unwrap_or(0);
    let simplicial = designs.designs.iter().all(|d| d.support.len() >= facet_bound);
    let facets = enumerate_facets(p, facet_opts)?;
    let input_facet_sizes: Vec<usize> = facets.facets.iter().map(Vec::len).collect();
    let simplicial_by_facets = input_facet_sizes.iter().all(|&f| f == p.dim());
    Ok(ReductionReport {
        n: p.len(),
        dim: p.dim(),
        ordering,
        facet_bound,
        designs,
        smallest_design,
        simplicial,
        input_facet_sizes,
        simplicial_by_facets,
    })
}
