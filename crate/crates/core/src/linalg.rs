//! Dense exact linear algebra over Q.
//!
//! Row reduction is fraction-free: each row is scaled to integers and
//! eliminated with Bareiss' update, whose divisions are exact. The integer
//! echelon form is normalized to the reduced row-echelon form only at the end.
//! Pivots are chosen as the first nonzero entry in column order, scanning rows
//! top to bottom, so every result is deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type Vector = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a `rows × columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has the wrong length");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn echelon(&self) -> Echelon {
        let (int_rows, pivots) = self.fraction_free_echelon();
        // Normalize pivot rows and clear entries above each pivot.
        let mut rref = Matrix::zeros(self.rows, self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            let lead = Rational::from_integer(int_rows[r][p].clone());
            for (j, x) in int_rows[r].iter().enumerate() {
                if !x.is_zero() {
                    rref.set(r, j, Rational::from_integer(x.clone()) / &lead);
                }
            }
        }
        for (r, &p) in pivots.iter().enumerate().rev() {
            for above in 0..r {
                let factor = rref.get(above, p).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in p..self.cols {
                    let x = rref.get(r, j).clone();
                    if !x.is_zero() {
                        let y = rref.get(above, j) - &factor * x;
                        rref.set(above, j, y);
                    }
                }
            }
        }
        Echelon { rref, pivots }
    }

    /// Bareiss elimination on integer-scaled rows. Returns the echelon rows
    /// (only the first `pivots.len()` are meaningful) and the pivot columns.
    fn fraction_free_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                let lead = row[c].clone();
                for j in c + 1..self.cols {
                    let updated = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                    row[j] = updated / &prev;
                }
                row[c] = BigInt::zero();
            }
            // Entries left of the pivot in later rows are zero already;
            // rows above are untouched.
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.fraction_free_echelon().1.len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vector> {
        let Echelon { rref, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rref.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Columns forming a basis of the column space, taken greedily left to right.
    pub fn column_basis(&self) -> Vec<Vector> {
        self.fraction_free_echelon()
            .1
            .into_iter()
            .map(|j| self.column(j))
            .collect()
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Indices of `candidates` that extend `base` greedily to an independent set
/// spanning `span(base ∪ candidates)`. `base` is assumed independent.
pub fn extend_basis(dim: usize, base: &[Vector], candidates: &[Vector]) -> Vec<usize> {
    let columns: Vec<Vector> = base.iter().chain(candidates).cloned().collect();
    let m = Matrix::from_columns(dim, &columns);
    m.fraction_free_echelon()
        .1
        .into_iter()
        .filter(|&j| j >= base.len())
        .map(|j| j - base.len())
        .collect()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Solves `B x = v` for a fixed matrix `B` with independent columns.
///
/// Precomputes `E` with `E·B = [I; 0]`, so each query is a matrix-vector
/// product: `x = (E v)[..k]`, consistent iff `(E v)[k..] = 0`.
#[derive(Clone, Debug)]
pub struct Solver {
    dim: usize,
    rank: usize,
    elimination: Matrix,
}

impl Solver {
    pub fn new(dim: usize, columns: &[Vector]) -> Self {
        let k = columns.len();
        let mut aug = Matrix::zeros(dim, k + dim);
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                aug.set(i, j, x.clone());
            }
        }
        for i in 0..dim {
            aug.set(i, k + i, Rational::one());
        }
        let Echelon { rref, pivots } = aug.echelon();
        let rank = pivots.iter().filter(|&&p| p < k).count();
        assert_eq!(rank, k, "solver columns must be independent");
        let mut elimination = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                elimination.set(i, j, rref.get(i, k + j).clone());
            }
        }
        Solver {
            dim,
            rank,
            elimination,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficients expressing `v` in the columns, or `None` if `v` lies
    /// outside their span.
    pub fn solve(&self, v: &[Rational]) -> Option<Vector> {
        let ev = self.elimination.mul_vec(v);
        if !is_zero_vector(&ev[self.rank..]) {
            return None;
        }
        Some(ev[..self.rank].to_vec())
    }
}

/// A subquotient `Z / B` of `Q^dim` with `B ⊆ Z`, with a fixed basis of
/// representatives for `Z / B`.
#[derive(Clone, Debug)]
pub struct Quotient {
    representatives: Vec<Vector>,
    solver: Solver,
}

impl Quotient {
    /// `cycles` spans `Z`, `boundaries` spans `B`. Representatives are the
    /// cycle vectors picked greedily to extend a basis of `B`.
    pub fn new(dim: usize, cycles: &[Vector], boundaries: &[Vector]) -> Self {
        let b_basis = {
            let m = Matrix::from_columns(dim, boundaries);
            m.column_basis()
        };
        let picked = extend_basis(dim, &b_basis, cycles);
        let representatives: Vec<Vector> = picked.iter().map(|&i| cycles[i].clone()).collect();
        let columns: Vec<Vector> = representatives.iter().chain(&b_basis).cloned().collect();
        Quotient {
            representatives,
            solver: Solver::new(dim, &columns),
        }
    }

    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.representatives
    }

    /// Class coordinates of `v`, or `None` if `v ∉ Z`.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        self.solver
            .solve(v)
            .map(|x| x[..self.representatives.len()].to_vec())
    }
}
