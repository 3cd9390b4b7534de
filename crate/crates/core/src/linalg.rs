//! Exact linear algebra over the rationals.

use grassvar_poly::Rational;
use num_traits::{One, Zero};

/// An incrementally built row-echelon basis that remembers how each row is
/// expressed in terms of the vectors that were inserted.
#[derive(Clone, Debug, Default)]
pub struct EchelonSpan {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>, Vec<Rational>)>,
    generators: usize,
}

impl EchelonSpan {
    pub fn new(dim: usize) -> Self {
        EchelonSpan { dim, rows: Vec::new(), generators: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the rows, returning the remainder and the
    /// combination of generators that was subtracted.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem = v.to_vec();
        let mut combo = vec![Rational::zero(); self.generators];
        for (pivot, row, expr) in &self.rows {
            let c = rem[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in rem.iter_mut().zip(row) {
                *x -= &c * y;
            }
            for (k, e) in expr.iter().enumerate() {
                combo[k] += &c * e;
            }
        }
        (rem, combo)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).0.iter().all(Zero::is_zero)
    }

    /// Adds `v` as a new generator if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim);
        let (mut rem, combo) = self.reduce(v);
        let Some(pivot) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = rem[pivot].recip();
        for x in rem.iter_mut() {
            *x *= &inv;
        }
        let g = self.generators;
        self.generators += 1;
        for (_, _, expr) in self.rows.iter_mut() {
            expr.push(Rational::zero());
        }
        // rem = v - sum combo_k g_k, scaled so the pivot entry is 1.
        let mut expr: Vec<Rational> = combo.iter().map(|c| -c * &inv).collect();
        expr.push(inv);
        // Keep the basis fully reduced so later pivots stay clean.
        for (_, row, e) in self.rows.iter_mut() {
            let c = row[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&rem) {
                *x -= &c * y;
            }
            for (x, y) in e.iter_mut().zip(&expr) {
                *x -= &c * y;
            }
        }
        debug_assert_eq!(expr.len(), g + 1);
        self.rows.push((pivot, rem, expr));
        true
    }

    /// Coordinates of `v` with respect to the inserted generators, if `v`
    /// lies in their span.
    pub fn express(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (rem, combo) = self.reduce(v);
        rem.iter().all(Zero::is_zero).then_some(combo)
    }
}

/// Dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Matrix, c: &Rational) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += c * y;
        }
    }

    pub fn row_vec(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}
