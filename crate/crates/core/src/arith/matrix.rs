use std::fmt;

use super::{RatVector, Rational};
use crate::Error;

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from row vectors. `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: &[RatVector]) -> Result<Self, Error> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch {
                    what: "matrix row",
                    expected: cols,
                    found: r.dim(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[RatVector]) -> Result<Self, Error> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> RatVector {
        self.entries[r * self.cols..(r + 1) * self.cols]
            .to_vec()
            .into()
    }

    pub fn row_vectors(&self) -> Vec<RatVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RatVector) -> RatVector {
        assert_eq!(v.dim(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.entries[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss-Jordan elimination over the rationals.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for col in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead_row, p);
            let inv = m.get(lead_row, col).recip().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(lead_row, c) * &inv;
                m.set(lead_row, c, v);
            }
            for r in 0..m.rows {
                if r == lead_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(lead_row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            lead_row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of `{v : M v = 0}`, one vector per free column. Each basis
    /// vector has a 1 in its free column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<RatVector> {
        let Echelon { matrix, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, free);
                }
                RatVector::new(v)
            })
            .collect()
    }
}

/// Barycentric coordinates of `x` with respect to `points`.
///
/// Returns `Some(λ)` with `Σλ = 1` and `Σ λ_i p_i = x` when the points are
/// affinely independent and `x` lies in their affine hull, `None` otherwise.
pub fn solve_affine(points: &[RatVector], x: &RatVector) -> Result<Option<Vec<Rational>>, Error> {
    if points.is_empty() {
        return Err(Error::EmptyInput("points"));
    }
    let n = x.dim();
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                what: "points",
                expected: n,
                found: p.dim(),
            });
        }
    }
    let k = points.len();
    // Rows: coordinates then the affine row of ones; last column is the target.
    let mut aug = RatMatrix::zeros(n + 1, k + 1);
    for (j, p) in points.iter().enumerate() {
        for i in 0..n {
            aug.set(i, j, p[i].clone());
        }
        aug.set(n, j, Rational::one());
    }
    for i in 0..n {
        aug.set(i, k, x[i].clone());
    }
    aug.set(n, k, Rational::one());

    let Echelon { matrix, pivots } = aug.echelon();
    if pivots.contains(&k) {
        return Ok(None);
    }
    if pivots.len() < k {
        return Ok(None);
    }
    Ok(Some((0..k).map(|r| matrix.get(r, k).clone()).collect()))
}

/// True when the points are affinely independent.
pub fn affinely_independent(points: &[RatVector]) -> bool {
    let Some(first) = points.first() else {
        return true;
    };
    let n = first.dim();
    let diffs: Vec<RatVector> = points[1..].iter().map(|p| p - first).collect();
    RatMatrix::from_rows(n, &diffs)
        .map(|m| m.rank() == diffs.len())
        .unwrap_or(false)
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}
