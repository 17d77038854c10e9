use itertools::Itertools;
use rayon::prelude::*;

use super::{averaging_rows, check_common, facet_bound, is_combinatorial, strictly_supported};
use crate::error::{Error, Result};
use crate::spectral::{EigenspaceOrdering, SpectralData};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Largest support size searched; `None` means the facet bound `s_k`.
    pub max_support: Option<usize>,
    /// Refuse graphs with more vertices than this.
    pub max_n: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            max_support: None,
            max_n: 20,
        }
    }
}

/// One minimal design: its support (sorted, 0-based) and a witness weight
/// vector that is strictly positive exactly on the support.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalDesign {
    pub support: Vec<usize>,
    pub weights: Vec<f64>,
    /// The uniform weighting of the support is itself a design.
    pub combinatorial: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DesignEnumeration {
    /// Sorted lexicographically by support.
    pub designs: Vec<MinimalDesign>,
    pub k: usize,
    pub ordering: EigenspaceOrdering,
    /// True when every support size up to `s_k` was searched, so the list is
    /// complete.
    pub exhaustive: bool,
    pub facet_bound: usize,
}

impl DesignEnumeration {
    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.designs.iter().map(|d| d.support.clone()).collect()
    }
}

/// All minimal positively weighted k-designs, searched breadth-first by
/// support size. Candidates containing an accepted support are skipped, so
/// every reported support is minimal.
pub fn enumerate_minimal_designs(
    s: &SpectralData,
    ord: &EigenspaceOrdering,
    k: usize,
    opts: &EnumerationOptions,
) -> Result<DesignEnumeration> {
    check_common(s, ord, k)?;
    let n = s.n();
    if n > opts.max_n {
        return Err(Error::GuardExceeded {
            what: "vertices",
            value: n,
            limit: opts.max_n,
        });
    }
    let bound = facet_bound(s, ord, k)?;
    let max_support = opts.max_support.unwrap_or(bound).min(n);
    let u = averaging_rows(s, ord, k);

    let mut found: Vec<MinimalDesign> = Vec::new();
    for size in 1..=max_support {
        let candidates: Vec<Vec<usize>> = (0..n)
            .combinations(size)
            .filter(|c| !found.iter().any(|d| is_subset(&d.support, c)))
            .collect();
        let accepted: Vec<MinimalDesign> = candidates
            .into_par_iter()
            .map(|c| {
                let Some(weights) = strictly_supported(&u, &c)? else {
                    return Ok(None);
                };
                let combinatorial = is_combinatorial(s, ord, k, &c)?;
                Ok(Some(MinimalDesign {
                    support: c,
                    weights,
                    combinatorial,
                }))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        found.extend(accepted);
    }
    found.sort_by(|a, b| a.support.cmp(&b.support));

    Ok(DesignEnumeration {
        designs: found,
        k,
        ordering: ord.clone(),
        exhaustive: max_support >= bound.min(n),
        facet_bound: bound,
    })
}

// Both slices sorted ascending.
fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{spectrum_of, WeightedGraph, DEFAULT_GROUP_TOL};

    #[test]
    fn subset_test() {
        assert!(is_subset(&[1, 3], &[0, 1, 2, 3]));
        assert!(!is_subset(&[1, 4], &[0, 1, 2, 3]));
        assert!(is_subset(&[], &[0]));
    }

    #[test]
    fn path_has_two_minimal_designs() {
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let s = spectrum_of(&g, DEFAULT_GROUP_TOL).unwrap();
        let ord = EigenspaceOrdering::ascending(3);
        let e = enumerate_minimal_designs(&s, &ord, 2, &EnumerationOptions::default()).unwrap();
        assert_eq!(e.supports(), vec![vec![0, 2], vec![1]]);
        assert!(e.exhaustive);
        assert_eq!(e.facet_bound, 2);
        let short = EnumerationOptions {
            max_support: Some(1),
            ..Default::default()
        };
        let e = enumerate_minimal_designs(&s, &ord, 2, &short).unwrap();
        assert_eq!(e.supports(), vec![vec![1]]);
        assert!(!e.exhaustive);
        let tiny = EnumerationOptions {
            max_n: 2,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_minimal_designs(&s, &ord, 2, &tiny),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
