//! Dense linear algebra over a finite field.

use crate::field::{Fe, Field};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Fe>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Fe>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
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

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Row-reduces in place; returns pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = f.inv(self.get(r, c));
            for j in 0..self.cols {
                let x = self.get(r, j);
                self.set(r, j, f.mul(x, inv));
            }
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let x = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right null space `{x : self·x = 0}`.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0; self.cols];
                x[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(m.get(r, fc));
                }
                x
            })
            .collect()
    }

    /// Solves `self · X = rhs`, if solvable.
    pub fn solve(&self, f: &Field, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            for j in 0..rhs.cols {
                aug.set(i, n + j, rhs.get(i, j));
            }
        }
        let pivots = aug.rref(f);
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(n, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.get(r, n + j));
            }
        }
        Some(x)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(f, &Matrix::identity(self.rows))
    }

    /// Columns spanning the column space, chosen among the original columns.
    pub fn column_space_basis(&self, f: &Field) -> Vec<Vec<Fe>> {
        let pivots = self.clone().rref(f);
        pivots.iter().map(|&c| self.column(c)).collect()
    }
}

/// Extends linearly independent `basis` vectors of length `n` to a basis of
/// `F_q^n`; returns only the added vectors.
pub fn complete_basis(f: &Field, n: usize, basis: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let mut current: Vec<Vec<Fe>> = basis.to_vec();
    let mut added = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut cand = current.clone();
        cand.push(e.clone());
        if Matrix::from_columns(n, &cand).rank(f) == cand.len() {
            current.push(e.clone());
            added.push(e);
        }
    }
    added
}

/// All subspaces of `F_q^n`, each as a list of basis vectors in reduced
/// row-echelon form.
pub fn subspaces(f: &Field, n: usize) -> Vec<Vec<Vec<Fe>>> {
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free slots: (row r, column c) with c > pivot r and c not a pivot
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pr = pivots[r];
                    let piv = &pivots;
                    (pr + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let total = f.q().pow(slots.len() as u32);
            for code in 0..total {
                let mut rows = vec![vec![0 as Fe; n]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = 1;
                }
                let mut c = code;
                for &(r, col) in &slots {
                    rows[r][col] = (c % f.q()) as Fe;
                    c /= f.q();
                }
                out.push(rows);
            }
        }
    }
    out
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Iterates over all `F_q`-linear combinations of `basis` (`q^len` vectors).
pub fn span_elements<'a>(f: &'a Field, basis: &'a [Vec<Fe>], len: usize) -> impl Iterator<Item = Vec<Fe>> + 'a {
    let q = f.q();
    let total = q.checked_pow(basis.len() as u32).expect("span too large");
    (0..total).map(move |mut code| {
        let mut v = vec![0 as Fe; len];
        for b in basis {
            let c = (code % q) as Fe;
            code /= q;
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GroundParams;

    fn field(q: u32) -> Field {
        Field::new(GroundParams::new(q).unwrap()).unwrap()
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        // number of subspaces of F_q^n: n=2 → q+3, n=3 → 2(q^2+q+2)
        for q in [2u32, 3, 4] {
            let f = field(q);
            let qq = q as usize;
            assert_eq!(subspaces(&f, 0).len(), 1);
            assert_eq!(subspaces(&f, 1).len(), 2);
            assert_eq!(subspaces(&f, 2).len(), qq + 3);
            assert_eq!(subspaces(&f, 3).len(), 2 * (qq * qq + qq + 2));
        }
    }

    #[test]
    fn kernel_and_rank() {
        let f = field(3);
        let m = Matrix::from_rows(2, 3, vec![1, 2, 0, 2, 1, 0]);
        assert_eq!(m.rank(&f), 1);
        let ker = m.kernel(&f);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let x = Matrix::from_columns(3, std::slice::from_ref(v));
            assert!(m.mul(&f, &x).is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = field(5);
        let m = Matrix::from_rows(2, 2, vec![1, 2, 3, 4]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(2));
        assert!(Matrix::from_rows(2, 2, vec![1, 2, 2, 4]).inverse(&f).is_none());
    }

    #[test]
    fn completion_gives_full_basis() {
        let f = field(2);
        let b = vec![vec![1, 1, 0]];
        let ext = complete_basis(&f, 3, &b);
        assert_eq!(ext.len(), 2);
        let mut all = b.clone();
        all.extend(ext);
        assert_eq!(Matrix::from_columns(3, &all).rank(&f), 3);
    }
}
