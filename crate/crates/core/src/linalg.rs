//! Small dense matrices over the rationals.
//!
//! Everything here is exact. Entries are `Ratio<i128>`; the matrices that occur
//! (nilpotent representations of arcs, Euler forms of small lattices) have tiny
//! entries, so overflow would indicate a bug and is reported by a panic.

use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

pub type Q = Ratio<i128>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n as i128)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| q(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = checked_add(out[(i, j)], checked_mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            checked_add(self[(r, c)], other[(r, c)])
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(-Q::one()))
    }

    pub fn scale(&self, s: Q) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| checked_mul(self[(r, c)], s))
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Matrix {
        Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r])
    }

    /// Block `[[a, b], [c, d]]`; blocks must have compatible shapes.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        Matrix::from_fn(a.rows + c.rows, a.cols + b.cols, |r, col| {
            match (r < a.rows, col < a.cols) {
                (true, true) => a[(r, col)],
                (true, false) => b[(r, col - a.cols)],
                (false, true) => c[(r - a.rows, col)],
                (false, false) => d[(r - a.rows, col - a.cols)],
            }
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                m[(row, c)] = checked_mul(m[(row, c)], inv);
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)];
                    for c in col..m.cols {
                        let v = checked_mul(f, m[(row, c)]);
                        m[(r, c)] = checked_sub(m[(r, c)], v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}` as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)];
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, chosen among the original columns.
    pub fn column_space(&self) -> Vec<Vec<Q>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// A complement of the column space inside `Q^rows`, spanned by standard basis vectors.
    pub fn cokernel_complement(&self) -> Vec<usize> {
        let aug = Matrix::from_fn(self.rows, self.cols + self.rows, |r, c| {
            if c < self.cols {
                self[(r, c)]
            } else if c - self.cols == r {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (_, pivots) = aug.rref();
        pivots
            .into_iter()
            .filter(|&c| c >= self.cols)
            .map(|c| c - self.cols)
            .collect()
    }

    /// Solves `self * x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)]
            } else {
                b[r]
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = Matrix::block(
            self,
            &Matrix::identity(n),
            &Matrix::zeros(0, n),
            &Matrix::zeros(0, n),
        );
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red[(r, n + c)]))
    }

    pub fn to_ints(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| {
                        let v = self[(r, c)];
                        if v.is_integer() {
                            i64::try_from(*v.numer()).ok()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn in_column_space(&self, v: &[Q]) -> bool {
        self.solve(v).is_some()
    }

    pub fn max_abs_entry(&self) -> Q {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

fn checked_add(a: Q, b: Q) -> Q {
    a.checked_add(&b).expect("rational overflow")
}

fn checked_sub(a: Q, b: Q) -> Q {
    a.checked_sub(&b).expect("rational overflow")
}

fn checked_mul(a: Q, b: Q) -> Q {
    a.checked_mul(&b).expect("rational overflow")
}
