use std::fmt;

use crate::error::{Error, Result};

/// A total order on the eigenspaces, stored as a 0-based permutation:
/// position `p` holds the index of the eigenspace ranked `p`. The constant
/// eigenspace (index 0) is always first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenspaceOrdering {
    perm: Vec<usize>,
}

impl EigenspaceOrdering {
    pub fn ascending(m: usize) -> Self {
        Self { perm: (0..m).collect() }
    }

    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let m = perm.len();
        if m == 0 {
            return Err(Error::InvalidOrdering("empty ordering".into()));
        }
        if perm[0] != 0 {
            return Err(Error::InvalidOrdering(format!(
                "position 1 must be eigenspace 1, found {}",
                perm[0] + 1
            )));
        }
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || seen[p] {
                return Err(Error::InvalidOrdering(format!(
                    "{:?} is not a permutation of 1..={m}",
                    perm.iter().map(|x| x + 1).collect::<Vec<_>>()
                )));
            }
            seen[p] = true;
        }
        Ok(Self { perm })
    }

    /// From 1-based eigenspace labels, e.g. `[1, 3, 2, 4]`.
    pub fn from_one_based(labels: &[usize]) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::InvalidOrdering("labels are 1-based".into()));
        }
        Self::new(labels.iter().map(|x| x - 1).collect())
    }

    /// Parses `asc` or a comma-separated 1-based permutation of `1..=m`.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("asc") {
            return Ok(Self::ascending(m));
        }
        let labels = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidOrdering(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if labels.len() != m {
            return Err(Error::InvalidOrdering(format!(
                "ordering has {} entries but the graph has {m} eigenspaces",
                labels.len()
            )));
        }
        Self::from_one_based(&labels)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Eigenspace ranked at 0-based position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.perm[pos]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|x| x + 1).collect()
    }

    /// Eigenspaces averaged by a k-design beyond the constant one
    /// (ranks 2..=k).
    pub fn averaged(&self, k: usize) -> &[usize] {
        &self.perm[1..k]
    }

    /// The complement index set: the constant space plus ranks k+1..=m.
    pub fn complement(&self, k: usize) -> Vec<usize> {
        std::iter::once(self.perm[0])
            .chain(self.perm[k..].iter().copied())
            .collect()
    }
}

impl fmt::Display for EigenspaceOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.perm.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "{}", labels.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let o = EigenspaceOrdering::parse("1, 3,2,4", 4).unwrap();
        assert_eq!(o.as_slice(), &[0, 2, 1, 3]);
        assert_eq!(o.to_string(), "1,3,2,4");
        assert_eq!(EigenspaceOrdering::parse("asc", 3).unwrap().as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn rejects_invalid() {
        assert!(EigenspaceOrdering::parse("2,1,3", 3).is_err());
        assert!(EigenspaceOrdering::parse("1,2,2", 3).is_err());
        assert!(EigenspaceOrdering::parse("1,2", 3).is_err());
        assert!(EigenspaceOrdering::parse("1,x,3", 3).is_err());
        assert!(EigenspaceOrdering::from_one_based(&[0, 1]).is_err());
        assert!(EigenspaceOrdering::new(vec![0, 1, 5]).is_err());
    }

    #[test]
    fn index_sets() {
        let o = EigenspaceOrdering::from_one_based(&[1, 3, 2, 4]).unwrap();
        assert_eq!(o.averaged(2), &[2]);
        assert_eq!(o.complement(2), vec![0, 1, 3]);
        assert_eq!(o.averaged(3), &[2, 1]);
        assert_eq!(o.complement(3), vec![0, 3]);
    }
}
