//! Linear algebra over the prime field `F_p`.

use crate::linalg::int::Matrix;

pub type FpVec = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<u64>>,
}

pub fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![vec![0; cols]; rows] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i][i] = 1 % p;
        }
        m
    }

    pub fn from_int(m: &Matrix, p: u64) -> Self {
        FpMat {
            p,
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows()).map(|i| m.row(i).iter().map(|&x| reduce(x, p)).collect()).collect(),
        }
    }

    pub fn from_columns(p: u64, cols: &[FpVec], n: usize) -> Self {
        let mut m = Self::zeros(p, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i][j] = c[i] % p;
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> FpVec {
        (0..self.rows).map(|i| self.data[i][j]).collect()
    }

    pub fn columns(&self) -> Vec<FpVec> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn apply(&self, v: &[u64]) -> FpVec {
        debug_assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % self.p))
            .collect()
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] = (out.data[i][j] + a * other.data[k][j]) % self.p;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] = (self.data[i][j] + self.p - other.data[i][j]) % self.p;
            }
        }
        out
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] = (self.data[i][j] + other.data[i][j]) % self.p;
            }
        }
        out
    }

    pub fn hcat(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.rows, other.rows);
        let mut out = FpMat::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i][..self.cols].copy_from_slice(&self.data[i]);
            out.data[i][self.cols..].copy_from_slice(&other.data[i]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    /// Row-reduces in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.data[i][c] != 0) else { continue };
            self.data.swap(r, piv);
            let inv = inv_mod(self.data[r][c], p);
            for x in &mut self.data[r] {
                *x = *x * inv % p;
            }
            for i in 0..self.rows {
                if i != r && self.data[i][c] != 0 {
                    let f = self.data[i][c];
                    for j in 0..self.cols {
                        let sub = f * self.data[r][j] % p;
                        self.data[i][j] = (self.data[i][j] + p - sub) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Some solution of `self x = b`, if any.
    pub fn solve(&self, b: &[u64]) -> Option<FpVec> {
        let aug = self.hcat(&FpMat::from_columns(self.p, &[b.to_vec()], self.rows));
        let mut r = aug;
        let pivots = r.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[row][self.cols];
        }
        Some(x)
    }

    pub fn transpose(&self) -> FpMat {
        let mut t = FpMat::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j];
            }
        }
        t
    }

    /// Basis of `{x : self x = 0}`.
    pub fn kernel(&self) -> Vec<FpVec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m.data[r][f]) % p;
                }
                v
            })
            .collect()
    }
}

/// Subspace of `F_p^n` with an echelon basis for membership and coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub p: u64,
    pub n: usize,
    /// Independent spanning vectors, in insertion order.
    pub basis: Vec<FpVec>,
    echelon: Vec<(usize, FpVec)>,
}

impl Subspace {
    pub fn new(p: u64, n: usize) -> Self {
        Subspace { p, n, basis: Vec::new(), echelon: Vec::new() }
    }

    pub fn spanned_by(p: u64, n: usize, gens: &[FpVec]) -> Self {
        let mut s = Subspace::new(p, n);
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce_vec(&self, v: &[u64]) -> FpVec {
        let p = self.p;
        let mut w: FpVec = v.iter().map(|x| x % p).collect();
        for (pc, e) in &self.echelon {
            let f = w[*pc];
            if f != 0 {
                for j in 0..self.n {
                    w[j] = (w[j] + p - f * e[j] % p) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce_vec(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let w = self.reduce_vec(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else { return false };
        let p = self.p;
        let inv = inv_mod(w[pc], p);
        let w: FpVec = w.iter().map(|x| x * inv % p).collect();
        for (_, e) in &mut self.echelon {
            let f = e[pc];
            if f != 0 {
                for j in 0..self.n {
                    e[j] = (e[j] + p - f * w[j] % p) % p;
                }
            }
        }
        self.echelon.push((pc, w));
        self.basis.push(v.iter().map(|x| x % p).collect());
        true
    }

    /// Coordinates with respect to `basis`, if `v` is in the span.
    pub fn coords(&self, v: &[u64]) -> Option<FpVec> {
        if self.basis.is_empty() {
            return v.iter().all(|&x| x % self.p == 0).then(Vec::new);
        }
        let m = FpMat::from_columns(self.p, &self.basis, self.n);
        let aug = m.hcat(&FpMat::from_columns(self.p, &[v.to_vec()], self.n));
        let mut r = aug.clone();
        let pivots = r.rref();
        if pivots.contains(&self.basis.len()) {
            return None;
        }
        let mut c = vec![0; self.basis.len()];
        for (row, &pc) in pivots.iter().enumerate() {
            c[pc] = r.data[row][self.basis.len()];
        }
        Some(c)
    }
}

/// `outer / inner` for subspaces `inner ⊆ outer`: representatives and coordinates.
#[derive(Clone, Debug)]
pub struct FpQuotient {
    pub p: u64,
    pub n: usize,
    inner_dim: usize,
    combined: Subspace,
    pub reps: Vec<FpVec>,
}

impl FpQuotient {
    pub fn new(inner: &Subspace, outer_gens: &[FpVec]) -> Self {
        let mut combined = inner.clone();
        let mut reps = Vec::new();
        for g in outer_gens {
            if combined.insert(g) {
                reps.push(g.iter().map(|x| x % inner.p).collect());
            }
        }
        FpQuotient { p: inner.p, n: inner.n, inner_dim: inner.dim(), combined, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `v` (which must lie in `outer`).
    pub fn class_coords(&self, v: &[u64]) -> Option<FpVec> {
        self.combined.coords(v).map(|c| c[self.inner_dim..].to_vec())
    }
}
