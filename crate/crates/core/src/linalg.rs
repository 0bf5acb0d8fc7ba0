//! Dense linear algebra over F_p: elimination, rank, kernels, inverses.

use crate::ff::Prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: Prime) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: Prime) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod p. All rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<u64>>, cols: usize, p: Prime) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.into_iter().map(|v| p.reduce(v)));
        }
        Matrix {
            p,
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<u64>], nrows: usize, p: Prime) -> Self {
        let mut m = Self::zeros(nrows, cols.len(), p);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, p.reduce(v));
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

    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = Matrix::zeros(self.rows, other.cols, p);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b) % p.get();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + a * b) % self.p.get())
            })
            .collect()
    }

    /// In-place Gauss-Jordan elimination to reduced row echelon form.
    /// Returns the pivot column of each nonzero row.
    pub fn reduce(&mut self) -> Vec<usize> {
        let p = self.p;
        let q = p.get();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = p.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, p.mul(v, inv));
            }
            let (before, rest) = self.data.split_at_mut(r * self.cols);
            let (pivot_row, after) = rest.split_at_mut(self.cols);
            for other in before
                .chunks_mut(self.cols)
                .chain(after.chunks_mut(self.cols))
            {
                let f = other[c];
                if f == 0 {
                    continue;
                }
                let f = q - f;
                for j in c..self.cols {
                    other[j] = (other[j] + f * pivot_row[j]) % q;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(
            self.data
                .chunks(self.cols.max(1))
                .map(|r| r.to_vec())
                .collect(),
            self.cols,
            self.p,
        )
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.reduce();
        let p = self.p;
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.p);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n, self.p);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Some `x` with `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, self.p);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, self.p.reduce(bi));
        }
        let pivots = aug.reduce();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// Rank of a list of row vectors of length `cols`, by forward elimination
/// that keeps one reduced pivot row per leading column.
pub fn rank_of_rows(rows: Vec<Vec<u64>>, cols: usize, p: Prime) -> usize {
    let mut echelon = Echelon::new(cols, p);
    for r in rows {
        echelon.insert(r);
    }
    echelon.rank()
}

/// Incremental row echelon basis. Inserting a vector reports whether it was
/// independent of everything inserted before.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: Prime,
    cols: usize,
    // pivot column -> normalised row (pivot entry 1)
    pivot_of_col: Vec<Option<usize>>,
    basis: Vec<Vec<u64>>,
}

impl Echelon {
    pub fn new(cols: usize, p: Prime) -> Self {
        Echelon {
            p,
            cols,
            pivot_of_col: vec![None; cols],
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the current basis; returns the residue.
    pub fn residue(&self, mut v: Vec<u64>) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let q = self.p.get();
        for c in 0..self.cols {
            let x = v[c] % q;
            v[c] = x;
            if x == 0 {
                continue;
            }
            if let Some(bi) = self.pivot_of_col[c] {
                let f = q - x;
                let b = &self.basis[bi];
                for j in c..self.cols {
                    if b[j] != 0 {
                        v[j] = (v[j] + f * b[j]) % q;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<u64>) -> bool {
        self.residue(v).iter().all(|&x| x == 0)
    }

    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let mut r = self.residue(v);
        let Some(lead) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.p.inv(r[lead]).expect("nonzero");
        for x in r.iter_mut().skip(lead) {
            *x = self.p.mul(*x, inv);
        }
        self.pivot_of_col[lead] = Some(self.basis.len());
        self.basis.push(r);
        true
    }
}

/// `dim(span(a) ∩ span(b))` for two families of vectors in F_p^n.
pub fn intersection_dim(a: &[Vec<u64>], b: &[Vec<u64>], n: usize, p: Prime) -> usize {
    let ra = rank_of_rows(a.to_vec(), n, p);
    let rb = rank_of_rows(b.to_vec(), n, p);
    let sum = rank_of_rows(a.iter().chain(b.iter()).cloned().collect(), n, p);
    ra + rb - sum
}
