//! Exact linear algebra over a field: reduced row echelon bases, kernels,
//! intersections and enumeration of subspaces of `F_p^n`.

use crate::algebra::{Field, Scalar};

/// A subspace of `K^n` stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    field: Field,
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn zero(field: Field, n: usize) -> RowSpace {
        RowSpace { field, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, n: usize) -> RowSpace {
        let rows = (0..n).map(|i| unit(field, n, i)).collect();
        RowSpace { field, n, rows, pivots: (0..n).collect() }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<Scalar>>>(field: Field, n: usize, rows: I) -> RowSpace {
        let mut s = RowSpace::zero(field, n);
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n, "vector length");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&c * r);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x = &*x - &(&c * r);
                    }
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    /// `{x : r·x = 0 for every row r}`.
    pub fn annihilator(&self) -> RowSpace {
        let mut out = RowSpace::zero(self.field, self.n);
        for f in 0..self.n {
            if self.pivots.contains(&f) {
                continue;
            }
            let mut x = vec![self.field.zero(); self.n];
            x[f] = self.field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = -&row[f];
            }
            out.insert(x);
        }
        out
    }

    pub fn intersect(&self, other: &RowSpace) -> RowSpace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Coordinates of `v` in terms of the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Kernel `{x : M x = 0}` of a matrix given by rows of length `ncols`.
pub fn kernel(field: Field, ncols: usize, rows: &[Vec<Scalar>]) -> RowSpace {
    RowSpace::from_rows(field, ncols, rows.iter().cloned()).annihilator()
}

/// One solution of `A x = b` (free variables set to zero), if any.
pub fn solve(field: Field, a: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let s = RowSpace::from_rows(field, ncols + 1, aug);
    if s.pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &p) in s.rows.iter().zip(&s.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if invertible.
pub fn inverse(field: Field, a: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    let aug: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(field, n, i));
            r
        })
        .collect();
    let s = RowSpace::from_rows(field, 2 * n, aug);
    if s.dim() != n || s.pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(s.rows.iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(a: &[Vec<Scalar>], x: &[Scalar], field: Field) -> Vec<Scalar> {
    a.iter()
        .map(|row| row.iter().zip(x).fold(field.zero(), |acc, (r, v)| &acc + &(r * v)))
        .collect()
}

/// Every `k`-dimensional subspace of `F_p^n`, each exactly once, in a fixed order.
pub fn subspaces(field: Field, n: usize, k: usize) -> Vec<RowSpace> {
    let elems = field.elements().expect("subspace enumeration needs a finite field");
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // free slots: (row i, column j) with j > pivot i and j not a pivot
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| ((p + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        let total = elems.len().pow(slots.len() as u32);
        for code in 0..total {
            let mut rows: Vec<Vec<Scalar>> = pivots.iter().map(|&p| unit(field, n, p)).collect();
            let mut c = code;
            for &(i, j) in &slots {
                rows[i][j] = elems[c % elems.len()].clone();
                c /= elems.len();
            }
            out.push(RowSpace { field, n, rows, pivots: pivots.clone() });
        }
    }
    out
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
