//! C ABI for `graphdesign`.
//!
//! Graphs and spectra are opaque handles created by `gd_*_new` style calls
//! and released with the matching `gd_*_free`. Every fallible call returns a
//! [`GdStatus`]; on failure a message is available from [`gd_last_error`]
//! until the next failing call on the same thread. Vertex and eigenspace
//! indices are 0-based. Strings returned through `char **` are owned by the
//! caller and must be released with [`gd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use graphdesign::constructors::barbell_graph;
use graphdesign::designs::{self, EnumerationOptions};
use graphdesign::io::{self, EnumerationReport, GraphFile};
use graphdesign::spectral::{spectrum_of, EigenspaceOrdering, SpectralData, WeightedGraph};
use graphdesign::Error;

/// Result of a C API call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// Malformed input: bad graph, ordering, k, JSON, sizes.
    InvalidInput = 2,
    /// The weights are not a design (or have a negative entry).
    NotADesign = 3,
    /// A size guard refused the input.
    GuardExceeded = 4,
    /// Eigensolver, LP or orthonormality failure.
    Numerical = 5,
    /// The graph is not connected.
    Disconnected = 6,
    /// An internal panic was caught at the boundary.
    Panic = 7,
}

/// Opaque weighted graph.
pub struct GdGraph(WeightedGraph);

/// Opaque grouped Laplacian eigendecomposition.
pub struct GdSpectrum(SpectralData);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GdStatus {
    match e {
        Error::NotADesign { .. } | Error::NegativeWeight { .. } => GdStatus::NotADesign,
        Error::GuardExceeded { .. } => GdStatus::GuardExceeded,
        Error::NonConvergence { .. }
        | Error::LpInfeasible { .. }
        | Error::LpIterationLimit { .. }
        | Error::NotOrthonormal { .. } => GdStatus::Numerical,
        Error::DisconnectedGraph => GdStatus::Disconnected,
        _ => GdStatus::InvalidInput,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GdStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} must not be NULL"));
            GdStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            GdStatus::Panic
        }
    }
}

unsafe fn reference<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn array<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn write<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::Lib(Error::InvalidInput("string contains NUL".into())))
}

unsafe fn ordering(s: &SpectralData, perm: *const usize, len: usize) -> Result<EigenspaceOrdering, Failure> {
    if perm.is_null() {
        return Ok(EigenspaceOrdering::ascending(s.m()));
    }
    let perm = slice::from_raw_parts(perm, len).to_vec();
    Ok(EigenspaceOrdering::new(perm)?)
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a graph on `n` vertices from `edge_count` edges `(from[e], to[e])`
/// with weights `weight[e] > 0`.
///
/// # Safety
/// The three arrays must hold `edge_count` readable elements; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_new(
    n: usize,
    from: *const usize,
    to: *const usize,
    weight: *const f64,
    edge_count: usize,
    out: *mut *mut GdGraph,
) -> GdStatus {
    guard(|| {
        let from = array(from, edge_count, "from")?;
        let to = array(to, edge_count, "to")?;
        let weight = array(weight, edge_count, "weight")?;
        let edges = (0..edge_count).map(|e| (from[e], to[e], weight[e]));
        let g = WeightedGraph::new(n, edges)?;
        write(out, Box::into_raw(Box::new(GdGraph(g))), "out")
    })
}

/// Parses a graph file (`{"n": .., "edges": [[i, j, w], ..]}`, 1-based).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_from_json(json: *const c_char, out: *mut *mut GdGraph) -> GdStatus {
    guard(|| {
        let text = CStr::from_ptr(reference(json, "json")?)
            .to_str()
            .map_err(|_| Error::InvalidInput("graph JSON is not UTF-8".into()))?;
        let g = io::parse_graph(text)?;
        write(out, Box::into_raw(Box::new(GdGraph(g))), "out")
    })
}

/// Serializes a graph in the graph file format.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_to_json(g: *const GdGraph, out: *mut *mut c_char) -> GdStatus {
    guard(|| {
        let g = reference(g, "graph")?;
        let text = io::to_json(&GraphFile::from_graph(&g.0))?;
        write(out, into_c_string(text)?, "out")
    })
}

/// Two unit-weight `n`-cliques joined by one edge of weight `w`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_barbell_new(n: usize, w: f64, out: *mut *mut GdGraph) -> GdStatus {
    guard(|| {
        let (g, _) = barbell_graph(n, w)?;
        write(out, Box::into_raw(Box::new(GdGraph(g))), "out")
    })
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_vertex_count(g: *const GdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_edge_count(g: *const GdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edges().len())
}

/// # Safety
/// `g` must be NULL or a graph handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gd_graph_free(g: *mut GdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Grouped eigendecomposition of a connected graph's Laplacian.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gd_spectrum_new(g: *const GdGraph, group_tol: f64, out: *mut *mut GdSpectrum) -> GdStatus {
    guard(|| {
        let g = reference(g, "graph")?;
        let s = spectrum_of(&g.0, group_tol)?;
        write(out, Box::into_raw(Box::new(GdSpectrum(s))), "out")
    })
}

/// # Safety
/// `s` must be NULL or a spectrum handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gd_spectrum_free(s: *mut GdSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of distinct eigenspaces, or 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live spectrum handle.
#[no_mangle]
pub unsafe extern "C" fn gd_spectrum_space_count(s: *const GdSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.0.m())
}

/// Eigenvalue and multiplicity of eigenspace `index` (ascending order).
///
/// # Safety
/// `s` must be a live spectrum handle; `value` and `multiplicity` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gd_spectrum_eigenspace(
    s: *const GdSpectrum,
    index: usize,
    value: *mut f64,
    multiplicity: *mut usize,
) -> GdStatus {
    guard(|| {
        let s = &reference(s, "spectrum")?.0;
        if index >= s.m() {
            return Err(Error::IndexOutOfRange {
                index: index + 1,
                m: s.m(),
            }
            .into());
        }
        write(value, s.eigenvalues()[index], "value")?;
        write(multiplicity, s.space(index).nrows(), "multiplicity")
    })
}

/// Total dimension of the first `k` eigenspaces in the ordering. A NULL
/// `ordering` means ascending eigenvalues.
///
/// # Safety
/// `s` must be a live spectrum handle; `ordering` NULL or `ordering_len`
/// readable elements; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gd_facet_bound(
    s: *const GdSpectrum,
    ordering: *const usize,
    ordering_len: usize,
    k: usize,
    out: *mut usize,
) -> GdStatus {
    guard(|| {
        let s = &reference(s, "spectrum")?.0;
        let ord = self::ordering(s, ordering, ordering_len)?;
        write(out, designs::facet_bound(s, &ord, k)?, "out")
    })
}

/// Checks that `weights` (length `n`) is a positively weighted k-design at
/// tolerance `tol`. The residual is written whenever it could be computed.
///
/// # Safety
/// `s` live; `ordering` NULL or readable; `weights` readable for `n`
/// elements; `residual` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn gd_design_verify(
    s: *const GdSpectrum,
    ordering: *const usize,
    ordering_len: usize,
    k: usize,
    weights: *const f64,
    n: usize,
    tol: f64,
    residual: *mut f64,
) -> GdStatus {
    guard(|| {
        let s = &reference(s, "spectrum")?.0;
        let ord = self::ordering(s, ordering, ordering_len)?;
        let a = array(weights, n, "weights")?;
        let result = designs::verify_design(s, &ord, k, a, tol);
        let r = match &result {
            Ok(d) => Some(d.residual),
            Err(Error::NotADesign { residual, .. }) => Some(*residual),
            Err(_) => None,
        };
        if let (Some(r), false) = (r, residual.is_null()) {
            residual.write(r);
        }
        result.map(|_| ()).map_err(Failure::from)
    })
}

/// Writes a design found by linear programming into `weights_out` (length
/// `n`, the vertex count). Weights sum to one.
///
/// # Safety
/// `s` live; `ordering` NULL or readable; `weights_out` writable for `n`
/// elements.
#[no_mangle]
pub unsafe extern "C" fn gd_design_find(
    s: *const GdSpectrum,
    ordering: *const usize,
    ordering_len: usize,
    k: usize,
    weights_out: *mut f64,
    n: usize,
) -> GdStatus {
    guard(|| {
        let s = &reference(s, "spectrum")?.0;
        if n != s.n() {
            return Err(Error::SizeMismatch { left: n, right: s.n() }.into());
        }
        if weights_out.is_null() {
            return Err(Failure::Null("weights_out"));
        }
        let ord = self::ordering(s, ordering, ordering_len)?;
        let d = designs::find_design_lp(s, &ord, k)?;
        slice::from_raw_parts_mut(weights_out, n).copy_from_slice(&d.weights);
        Ok(())
    })
}

/// Enumerates all minimal k-designs and returns the JSON enumeration report
/// (1-based labels). `max_support == 0` searches up to the facet bound.
///
/// # Safety
/// `s` live; `ordering` NULL or readable; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gd_design_enumerate_json(
    s: *const GdSpectrum,
    ordering: *const usize,
    ordering_len: usize,
    k: usize,
    max_support: usize,
    out: *mut *mut c_char,
) -> GdStatus {
    guard(|| {
        let s = &reference(s, "spectrum")?.0;
        let ord = self::ordering(s, ordering, ordering_len)?;
        let opts = EnumerationOptions {
            max_support: (max_support > 0).then_some(max_support),
            ..Default::default()
        };
        let e = designs::enumerate_minimal_designs(s, &ord, k, &opts)?;
        write(out, into_c_string(io::to_json(&EnumerationReport::new(&e))?)?, "out")
    })
}
