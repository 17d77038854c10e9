//! JSON file formats (1-based vertex labels throughout) and report types.
//!
//! Input files are parsed strictly into typed structs. Reports round every
//! float to 9 significant digits so that output is stable across platforms.
//! Graph files are written at full precision so they reload exactly.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::constructors::{BarbellSpectrum, Certificate, Construction, PartitionedBasis, ReductionReport};
use crate::designs::{DesignEnumeration, DesignVector};
use crate::error::{Error, Result};
use crate::polytope::{FacetList, VectorConfiguration};
use crate::spectral::{SpectralData, WeightedGraph};

/// Rounds to 9 significant digits (and maps `-0` to `0`).
pub fn round9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.8e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_all(v: &[f64]) -> Vec<f64> {
    v.iter().copied().map(round9).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn zero_based(v: &[usize], n: usize, what: &str) -> Result<Vec<usize>> {
    v.iter()
        .map(|&i| {
            if i == 0 || i > n {
                Err(Error::InvalidInput(format!("{what} label {i} out of range 1..={n}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

// ---------------------------------------------------------------- graphs

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl GraphFile {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().iter().map(|e| (e.i + 1, e.j + 1, e.w)).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(i, j, w) in &self.edges {
            if i == 0 || j == 0 {
                return Err(Error::InvalidGraph("vertex labels are 1-based".into()));
            }
            edges.push((i - 1, j - 1, w));
        }
        WeightedGraph::new(self.n, edges)
    }
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    serde_json::from_str::<GraphFile>(text)?.to_graph()
}

pub fn load_graph(path: &Path) -> Result<WeightedGraph> {
    read_json::<GraphFile>(path)?.to_graph()
}

// ------------------------------------------------------------- polytopes

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
}

impl PolytopeFile {
    pub fn to_configuration(&self) -> Result<VectorConfiguration> {
        VectorConfiguration::from_points(self.dim, &self.vertices)
    }
}

pub fn parse_polytope(text: &str) -> Result<VectorConfiguration> {
    serde_json::from_str::<PolytopeFile>(text)?.to_configuration()
}

pub fn load_polytope(path: &Path) -> Result<VectorConfiguration> {
    read_json::<PolytopeFile>(path)?.to_configuration()
}

// ---------------------------------------------------------------- bases

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
    pub partition: Vec<Vec<usize>>,
}

impl BasisFile {
    pub fn to_basis(&self) -> Result<PartitionedBasis> {
        let n = self.n;
        if self.rows.len() != n || self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!("basis must have {n} rows of length {n}")));
        }
        let rows = DMatrix::from_fn(n, n, |r, c| self.rows[r][c]);
        let parts = self
            .partition
            .iter()
            .map(|p| zero_based(p, n, "basis row"))
            .collect::<Result<Vec<_>>>()?;
        PartitionedBasis::new(rows, parts)
    }
}

pub fn parse_basis(text: &str) -> Result<PartitionedBasis> {
    serde_json::from_str::<BasisFile>(text)?.to_basis()
}

pub fn load_basis(path: &Path) -> Result<PartitionedBasis> {
    read_json::<BasisFile>(path)?.to_basis()
}

/// A bare JSON array of numbers, or an object holding one under `key`.
#[derive(Deserialize)]
#[serde(untagged)]
enum NumberList {
    Bare(Vec<f64>),
    Lambda { lambda: Vec<f64> },
    Weights { weights: Vec<f64> },
}

fn parse_numbers(text: &str, key: &str) -> Result<Vec<f64>> {
    match serde_json::from_str::<NumberList>(text)? {
        NumberList::Bare(v) => Ok(v),
        NumberList::Lambda { lambda } if key == "lambda" => Ok(lambda),
        NumberList::Weights { weights } if key == "weights" => Ok(weights),
        _ => Err(Error::InvalidInput(format!(
            "expected an array or an object with \"{key}\""
        ))),
    }
}

/// Eigenvalues `λ_2..λ_n`: `[..]` or `{"lambda": [..]}`.
pub fn parse_lambda(text: &str) -> Result<Vec<f64>> {
    parse_numbers(text, "lambda")
}

/// Vertex weights: `[..]` or `{"weights": [..]}`.
pub fn parse_weights(text: &str) -> Result<Vec<f64>> {
    parse_numbers(text, "weights")
}

/// Reads a comma-separated list of 1-based labels such as `1,4`.
pub fn parse_label_set(text: &str, n: usize) -> Result<Vec<usize>> {
    let labels = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad vertex label {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut set = zero_based(&labels, n, "vertex")?;
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

// --------------------------------------------------------------- reports

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub basis: Vec<Vec<f64>>,
}

impl SpectrumReport {
    pub fn new(s: &SpectralData) -> Self {
        let b = s.basis();
        Self {
            eigenvalues: round_all(s.eigenvalues()),
            multiplicities: s.multiplicities(),
            basis: b.row_iter().map(|r| r.iter().copied().map(round9).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetReport {
    pub affine_dim: usize,
    pub facets: Vec<Vec<usize>>,
}

impl FacetReport {
    pub fn new(f: &FacetList) -> Self {
        Self {
            affine_dim: f.affine_dim,
            facets: f.facets.iter().map(|s| one_based(s)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignReport {
    pub k: usize,
    pub ordering: Vec<usize>,
    pub support: Vec<usize>,
    pub weights: Vec<f64>,
    pub residual: f64,
    pub combinatorial: bool,
}

impl DesignReport {
    pub fn new(d: &DesignVector) -> Self {
        Self {
            k: d.k,
            ordering: d.ordering.to_one_based(),
            support: one_based(&d.support),
            weights: round_all(&d.weights),
            residual: round9(d.residual),
            combinatorial: d.combinatorial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalDesignReport {
    pub support: Vec<usize>,
    pub weights: Vec<f64>,
    pub combinatorial: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub k: usize,
    pub ordering: Vec<usize>,
    pub exhaustive: bool,
    pub facet_bound: usize,
    pub designs: Vec<MinimalDesignReport>,
}

impl EnumerationReport {
    pub fn new(e: &DesignEnumeration) -> Self {
        Self {
            k: e.k,
            ordering: e.ordering.to_one_based(),
            exhaustive: e.exhaustive,
            facet_bound: e.facet_bound,
            designs: e
                .designs
                .iter()
                .map(|d| MinimalDesignReport {
                    support: one_based(&d.support),
                    weights: round_all(&d.weights),
                    combinatorial: d.combinatorial,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub n: usize,
    pub constraint_rows: usize,
    pub eps: Option<f64>,
    pub lambda: Vec<f64>,
    pub min_edge_weight: f64,
    pub edge_count: usize,
    pub laplacian: Vec<Vec<f64>>,
}

impl ConstructionReport {
    pub fn new(c: &Construction) -> Self {
        let g = &c.graph;
        let l = crate::spectral::build_laplacian(g);
        Self {
            n: g.n(),
            constraint_rows: c.assignment.cone_rows.nrows(),
            eps: c.assignment.eps.map(round9),
            lambda: round_all(&c.assignment.lambda),
            min_edge_weight: round9(g.edges().iter().map(|e| e.w).fold(f64::INFINITY, f64::min)),
            edge_count: g.edges().len(),
            laplacian: l
                .matrix()
                .row_iter()
                .map(|r| r.iter().copied().map(round9).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub equivalent: bool,
    pub facets_input: FacetReport,
    pub facets_embedded: FacetReport,
}

impl CertificateReport {
    pub fn new(c: &Certificate) -> Self {
        Self {
            equivalent: c.equivalent,
            facets_input: FacetReport::new(&c.facets_input),
            facets_embedded: FacetReport::new(&c.facets_embedded),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedReport {
    pub construction: ConstructionReport,
    pub certificate: CertificateReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionSummary {
    pub n: usize,
    pub dim: usize,
    pub ordering: Vec<usize>,
    pub facet_bound: usize,
    pub design_supports: Vec<Vec<usize>>,
    pub smallest_design: usize,
    pub simplicial: bool,
    pub input_facet_sizes: Vec<usize>,
    pub simplicial_by_facets: bool,
    pub consistent: bool,
}

impl ReductionSummary {
    pub fn new(r: &ReductionReport) -> Self {
        Self {
            n: r.n,
            dim: r.dim,
            ordering: r.ordering.to_one_based(),
            facet_bound: r.facet_bound,
            design_supports: r.designs.designs.iter().map(|d| one_based(&d.support)).collect(),
            smallest_design: r.smallest_design,
            simplicial: r.simplicial,
            input_facet_sizes: r.input_facet_sizes.clone(),
            simplicial_by_facets: r.simplicial_by_facets,
            consistent: r.consistent(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarbellReport {
    pub n: usize,
    pub w: f64,
    pub alpha: f64,
    pub beta: f64,
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

impl BarbellReport {
    pub fn new(n: usize, w: f64, s: &BarbellSpectrum) -> Self {
        Self {
            n,
            w: round9(w),
            alpha: round9(s.alpha),
            beta: round9(s.beta),
            eigenvalues: round_all(&s.eigenvalues),
            multiplicities: s.multiplicities.to_vec(),
        }
    }
}
