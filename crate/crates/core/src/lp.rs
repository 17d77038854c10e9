//! Dense two-phase primal simplex for `min c^T x  s.t.  A x = b, x >= 0`.
//!
//! Pivoting follows Bland's rule (lowest eligible column enters, ties in the
//! ratio test go to the lowest basic variable), so the solver is cycle-free
//! and fully deterministic. Phase one uses one artificial variable per row.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-10;
const OPTIMALITY_TOL: f64 = 1e-11;
const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    /// Return the first basic feasible solution (end of phase one).
    FirstFeasible,
    /// Run phase two to optimality.
    Optimal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Basic structural columns, one per retained row.
    pub basis: Vec<usize>,
}

struct Tableau {
    rows: usize,
    cols: usize, // structural + artificial
    structural: usize,
    t: Vec<f64>, // rows x (cols + 1), last column is the rhs
    z: Vec<f64>, // reduced costs, last entry is -objective
    basis: Vec<usize>,
    pivots: usize,
    max_pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * (self.cols + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.cols + 1;
        let p = self.at(r, e);
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.t[i * w + e];
            if f != 0.0 {
                for j in 0..w {
                    self.t[i * w + j] -= f * self.t[r * w + j];
                }
                self.t[i * w + e] = 0.0;
            }
        }
        let f = self.z[e];
        if f != 0.0 {
            for j in 0..w {
                self.z[j] -= f * self.t[r * w + j];
            }
            self.z[e] = 0.0;
        }
        self.basis[r] = e;
        self.pivots += 1;
    }

    /// Bland's-rule iterations over columns `0..allowed`.
    fn run(&mut self, allowed: usize) -> Result<Outcome> {
        loop {
            if self.pivots > self.max_pivots {
                return Err(Error::LpIterationLimit {
                    iterations: self.pivots,
                });
            }
            let entering = (0..allowed).find(|&j| self.z[j] < -OPTIMALITY_TOL);
            let Some(e) = entering else {
                return Ok(Outcome::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, e);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i).max(0.0) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-12 * br.abs().max(1.0)
                                || ((ratio - br).abs() <= 1e-12 * br.abs().max(1.0) && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(Outcome::Unbounded),
                Some((r, _)) => self.pivot(r, e),
            }
        }
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.cols + 1;
        self.t.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.rows -= 1;
    }

    fn solution(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.structural {
                x[b] = self.rhs(i).max(0.0);
            }
        }
        x
    }
}

/// Solves `min c^T x` over `{x >= 0 : A x = b}`.
pub fn minimize(a: &DMatrix<f64>, b: &DVector<f64>, c: &DVector<f64>, stop: Stop) -> Result<LpSolution> {
    let (m, n) = a.shape();
    assert_eq!(b.len(), m, "rhs length");
    assert_eq!(c.len(), n, "cost length");
    let cols = n + m;
    let w = cols + 1;
    let mut t = vec![0.0; m * w];
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i * w + j] = sign * a[(i, j)];
        }
        t[i * w + n + i] = 1.0;
        t[i * w + cols] = sign * b[i];
    }
    // Phase-one reduced costs for the objective sum(artificials).
    let mut z = vec![0.0; w];
    for i in 0..m {
        for j in 0..n {
            z[j] -= t[i * w + j];
        }
        z[cols] -= t[i * w + cols];
    }
    let mut tab = Tableau {
        rows: m,
        cols,
        structural: n,
        t,
        z,
        basis: (n..n + m).collect(),
        pivots: 0,
        max_pivots: 50 * (m + n) + 1000,
    };

    tab.run(cols)?;
    let infeasibility = -tab.z[cols];
    let bscale = b.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    if infeasibility > FEASIBILITY_TOL * bscale {
        return Err(Error::LpInfeasible {
            residual: infeasibility,
        });
    }

    // Drive artificials out of the basis; rows where that is impossible are
    // redundant and dropped.
    let mut i = 0;
    while i < tab.rows {
        if tab.basis[i] >= n {
            let candidate = (0..n)
                .filter(|j| !tab.basis.contains(j))
                .find(|&j| tab.at(i, j).abs() > PIVOT_TOL);
            match candidate {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.remove_row(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    if stop == Stop::Optimal {
        let mut z = vec![0.0; w];
        z[..n].copy_from_slice(c.as_slice());
        for r in 0..tab.rows {
            let cb = if tab.basis[r] < n { c[tab.basis[r]] } else { 0.0 };
            if cb != 0.0 {
                for (j, zj) in z.iter_mut().enumerate() {
                    *zj -= cb * tab.at(r, j);
                }
            }
        }
        tab.z = z;
        if let Outcome::Unbounded = tab.run(n)? {
            return Err(Error::InvalidInput("linear program is unbounded".into()));
        }
    }

    let x = tab.solution();
    let objective = x.iter().zip(c.iter()).map(|(xi, ci)| xi * ci).sum();
    Ok(LpSolution {
        x,
        objective,
        basis: tab.basis.clone(),
    })
}
