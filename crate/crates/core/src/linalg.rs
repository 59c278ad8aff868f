//! Exact linear algebra over [`Rational`]: a small dense matrix type and an
//! incremental sparse echelon space.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalars::Rational;

/// Sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
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
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
            cols,
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
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
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
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

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Stack `self` on top of `other`.
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

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form with least-index pivoting. Returns the
    /// reduced matrix and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = &f * m.get(r, j);
                    if !sub.is_zero() {
                        let v = m.get(i, j) - &sub;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut space = EchelonSpace::new(PivotPolicy::Max);
        for r in 0..self.rows {
            space.insert(dense_to_sparse(self.row(r)));
        }
        space.dim()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -r.get(i, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(&[b.to_vec()], self.rows));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the column space, chosen among the columns themselves.
    pub fn column_space(&self) -> Vec<Vec<Rational>> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

/// `a += c * b` on sparse vectors.
pub fn axpy(a: &mut SparseVec, c: &Rational, b: &SparseVec) {
    for (&i, x) in b {
        let e = a.entry(i).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            a.remove(&i);
        }
    }
}

/// Which coordinate of a new row becomes its pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotPolicy {
    /// Largest nonzero index. Reduction then leaves only the smallest
    /// coordinates in normal forms.
    Max,
    /// Smallest nonzero index.
    Min,
}

/// A subspace of a coordinate space, kept as echelon rows keyed by pivot.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    policy: PivotPolicy,
    rows: HashMap<usize, SparseVec>,
}

impl EchelonSpace {
    pub fn new(policy: PivotPolicy) -> Self {
        EchelonSpace {
            policy,
            rows: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Echelon rows in unspecified order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.values()
    }

    fn next_index(&self, v: &SparseVec, cursor: Option<usize>) -> Option<usize> {
        match (self.policy, cursor) {
            (PivotPolicy::Max, None) => v.keys().next_back().copied(),
            (PivotPolicy::Max, Some(c)) => v.range(..c).next_back().map(|(k, _)| *k),
            (PivotPolicy::Min, None) => v.keys().next().copied(),
            (PivotPolicy::Min, Some(c)) => v.range(c + 1..).next().map(|(k, _)| *k),
        }
    }

    /// Reduce `v` against all rows; the result has no pivot coordinates.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = None;
        while let Some(k) = self.next_index(&v, cursor) {
            if let Some(row) = self.rows.get(&k) {
                let c = -v[&k].clone();
                axpy(&mut v, &c, row);
            }
            cursor = Some(k);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Insert `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let pivot = match self.policy {
            PivotPolicy::Max => r.keys().next_back().copied(),
            PivotPolicy::Min => r.keys().next().copied(),
        };
        match pivot {
            None => false,
            Some(p) => {
                let inv = r[&p].recip();
                let r = r.into_iter().map(|(i, x)| (i, x * &inv)).collect();
                self.rows.insert(p, r);
                true
            }
        }
    }

    /// Fully reduced basis sorted by pivot: a canonical form of the span.
    pub fn canonical_basis(&self) -> Vec<SparseVec> {
        let mut pivots: Vec<usize> = self.rows.keys().copied().collect();
        pivots.sort_unstable();
        pivots
            .iter()
            .map(|p| {
                let row = &self.rows[p];
                let mut out = row.clone();
                for (&i, _) in row.iter() {
                    if i == *p {
                        continue;
                    }
                    if let Some(other) = self.rows.get(&i) {
                        if let Some(c) = out.get(&i).cloned() {
                            axpy(&mut out, &(-c), other);
                        }
                    }
                }
                // entries introduced by elimination may hit further pivots
                self.fully_reduce_except(out, *p)
            })
            .collect()
    }

    fn fully_reduce_except(&self, mut v: SparseVec, keep: usize) -> SparseVec {
        loop {
            let hit = v
                .keys()
                .copied()
                .find(|&i| i != keep && self.rows.contains_key(&i));
            match hit {
                None => return v,
                Some(i) => {
                    let c = -v[&i].clone();
                    axpy(&mut v, &c, &self.rows[&i]);
                }
            }
        }
    }

    pub fn same_span(&self, other: &EchelonSpace) -> bool {
        self.dim() == other.dim() && self.rows.values().all(|r| other.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rank_and_nullspace() {
        let m = Matrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Rational::is_zero));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(&[vec![1, 1], vec![1, -1]]);
        let x = m.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let s = Matrix::from_i64(&[vec![1, 1], vec![2, 2]]);
        assert!(s.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn echelon_max_policy_normal_forms() {
        let mut sp = EchelonSpace::new(PivotPolicy::Max);
        // span{e0 + e2}
        sp.insert(dense_to_sparse(&[q(1), q(0), q(1)]));
        let nf = sp.reduce(dense_to_sparse(&[q(0), q(0), q(5)]));
        assert_eq!(nf, dense_to_sparse(&[q(-5), q(0), q(0)]));
        assert!(!sp.insert(dense_to_sparse(&[q(2), q(0), q(2)])));
    }

    #[test]
    fn canonical_basis_is_span_invariant() {
        let mut a = EchelonSpace::new(PivotPolicy::Max);
        a.insert(dense_to_sparse(&[q(1), q(1), q(0)]));
        a.insert(dense_to_sparse(&[q(0), q(1), q(1)]));
        let mut b = EchelonSpace::new(PivotPolicy::Max);
        b.insert(dense_to_sparse(&[q(1), q(2), q(1)]));
        b.insert(dense_to_sparse(&[q(1), q(0), q(-1)]));
        assert!(a.same_span(&b));
        assert_eq!(a.canonical_basis(), b.canonical_basis());
    }
}
