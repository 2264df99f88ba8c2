//! Smith normal form over the integers with unimodular transforms.
//!
//! `left * a * right = diag(d_0, .., d_{r-1}, 0, ..)` with `d_i | d_{i+1}` and `d_i > 0`.
//! Entries are carried as `i128` with checked arithmetic; overflow is an error
//! rather than a wrong answer.

use crate::error::{Error, Result};
use crate::linalg::int::Matrix;

pub type Vec128 = Vec<i128>;

/// Dense `i128` matrix stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat128 {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<i128>>,
}

impl Mat128 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat128 { rows, cols, data: vec![vec![0; cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = 1;
        }
        m
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Mat128 {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows()).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect(),
        }
    }

    /// Matrix with the given columns, each of length `n`.
    pub fn from_columns(cols: &[Vec128], n: usize) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), n);
            for i in 0..n {
                m.data[i][j] = c[i];
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec128 {
        (0..self.rows).map(|i| self.data[i][j]).collect()
    }

    pub fn apply(&self, v: &[i128]) -> Result<Vec128> {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = vec![0i128; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: i128 = 0;
            for (a, b) in row.iter().zip(v) {
                if *a != 0 && *b != 0 {
                    acc = a
                        .checked_mul(*b)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow("matrix-vector product"))?;
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub diag: Vec<i128>,
    pub left: Mat128,
    pub left_inv: Mat128,
    pub right: Mat128,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

fn add_mul(a: i128, q: i128, b: i128) -> Result<i128> {
    // a - q * b
    q.checked_mul(b)
        .and_then(|p| a.checked_sub(p))
        .ok_or(Error::Overflow("Smith normal form"))
}

struct Work {
    a: Mat128,
    l: Mat128,
    linv: Mat128,
    r: Mat128,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.data.swap(i, j);
        self.l.data.swap(i, j);
        for row in &mut self.linv.data {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a.data {
            row.swap(i, j);
        }
        for row in &mut self.r.data {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: i128) -> Result<()> {
        for j in 0..self.a.cols {
            let v = self.a.data[t][j];
            if v != 0 {
                self.a.data[i][j] = add_mul(self.a.data[i][j], q, v)?;
            }
        }
        for j in 0..self.l.cols {
            let v = self.l.data[t][j];
            if v != 0 {
                self.l.data[i][j] = add_mul(self.l.data[i][j], q, v)?;
            }
        }
        // inverse: col_t += q * col_i
        for row in &mut self.linv.data {
            let v = row[i];
            if v != 0 {
                row[t] = add_mul(row[t], -q, v)?;
            }
        }
        Ok(())
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: i128) -> Result<()> {
        for row in &mut self.a.data {
            let v = row[t];
            if v != 0 {
                row[j] = add_mul(row[j], q, v)?;
            }
        }
        for row in &mut self.r.data {
            let v = row[t];
            if v != 0 {
                row[j] = add_mul(row[j], q, v)?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a.data[i] {
            *x = -*x;
        }
        for x in &mut self.l.data[i] {
            *x = -*x;
        }
        for row in &mut self.linv.data {
            row[i] = -row[i];
        }
    }
}

pub fn smith_normal_form(a: &Mat128) -> Result<Smith> {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work {
        a: a.clone(),
        l: Mat128::identity(m),
        linv: Mat128::identity(m),
        r: Mat128::identity(n),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize, i128)> = None;
        for i in t..m {
            for j in t..n {
                let v = w.a.data[i][j].abs();
                if v != 0 && best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((i, j, v));
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let v = w.a.data[i][t];
                if v != 0 {
                    let q = v / w.a.data[t][t];
                    w.row_sub(i, t, q)?;
                    if w.a.data[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                let v = w.a.data[t][j];
                if v != 0 {
                    let q = v / w.a.data[t][t];
                    w.col_sub(j, t, q)?;
                    if w.a.data[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move a smaller remainder into the pivot position
                let mut best = (t, t, w.a.data[t][t].abs());
                for i in t + 1..m {
                    let v = w.a.data[i][t].abs();
                    if v != 0 && v < best.2 {
                        best = (i, t, v);
                    }
                }
                for j in t + 1..n {
                    let v = w.a.data[t][j].abs();
                    if v != 0 && v < best.2 {
                        best = (t, j, v);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let p = w.a.data[t][t];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| w.a.data[i][j] % p != 0));
            match bad {
                Some(i) => {
                    w.row_sub(t, i, -1)?;
                }
                None => break,
            }
        }
        if w.a.data[t][t] < 0 {
            w.negate_row(t);
        }
        diag.push(w.a.data[t][t]);
        t += 1;
    }
    Ok(Smith { diag, left: w.l, left_inv: w.linv, right: w.r })
}

pub fn smith_of(a: &Matrix) -> Result<Smith> {
    smith_normal_form(&Mat128::from_matrix(a))
}

/// Rank over the rationals.
pub fn rank(a: &Matrix) -> Result<usize> {
    Ok(smith_of(a)?.rank())
}

/// Basis of the integer kernel `{x : a x = 0}` (saturated).
pub fn kernel(a: &Mat128) -> Result<Vec<Vec128>> {
    let s = smith_normal_form(a)?;
    Ok((s.rank()..a.cols).map(|j| s.right.col(j)).collect())
}

/// Integer solution of `a x = b`, if one exists.
pub fn solve(a: &Mat128, b: &[i128]) -> Result<Option<Vec128>> {
    smith_normal_form(a)?.solve(b)
}

impl Smith {
    /// Integer solution of `a x = b` for the matrix this form was computed from.
    pub fn solve(&self, b: &[i128]) -> Result<Option<Vec128>> {
        let y = self.left.apply(b)?;
        let mut z = vec![0i128; self.right.rows];
        for (i, &yi) in y.iter().enumerate() {
            if i < self.rank() {
                if yi % self.diag[i] != 0 {
                    return Ok(None);
                }
                z[i] = yi / self.diag[i];
            } else if yi != 0 {
                return Ok(None);
            }
        }
        Ok(Some(self.right.apply(&z)?))
    }
}

/// Integer solution of `a x = b` for an `i64` matrix.
pub fn solve_int(a: &Matrix, b: &[i64]) -> Result<Option<Vec<i64>>> {
    let m = Mat128::from_matrix(a);
    let rhs: Vec<i128> = b.iter().map(|&x| x as i128).collect();
    Ok(solve(&m, &rhs)?.map(|v| v.into_iter().map(|x| x as i64).collect()))
}

/// Integer `L` with `L a = I`, if `a` is injective with saturated image.
pub fn left_inverse(a: &Matrix) -> Result<Option<Matrix>> {
    let at = a.transpose();
    let mut rows = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let mut e = vec![0; a.cols()];
        e[j] = 1;
        match solve_int(&at, &e)? {
            Some(z) => rows.push(z),
            None => return Ok(None),
        }
    }
    Ok(Some(Matrix::from_rows_with_cols(&rows, a.rows())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &Mat128, b: &Mat128) -> Mat128 {
        let mut out = Mat128::zeros(a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                for j in 0..b.cols {
                    out.data[i][j] += a.data[i][k] * b.data[k][j];
                }
            }
        }
        out
    }

    #[test]
    fn smith_reconstructs_and_divides() {
        let a = Mat128 {
            rows: 3,
            cols: 4,
            data: vec![vec![2, 4, 4, 0], vec![-6, 6, 12, 3], vec![10, -4, -16, 9]],
        };
        let s = smith_normal_form(&a).unwrap();
        let d = mul(&mul(&s.left, &a), &s.right);
        for i in 0..3 {
            for j in 0..4 {
                let expect = if i == j && i < s.rank() { s.diag[i] } else { 0 };
                assert_eq!(d.data[i][j], expect);
            }
        }
        for w in s.diag.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        assert_eq!(mul(&s.left, &s.left_inv), Mat128::identity(3));
    }

    #[test]
    fn kernel_and_solve() {
        let a = Mat128 { rows: 1, cols: 3, data: vec![vec![2, 4, 6]] };
        let k = kernel(&a).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(a.apply(v).unwrap(), vec![0]);
        }
        assert!(solve(&a, &[3]).unwrap().is_none());
        let x = solve(&a, &[10]).unwrap().unwrap();
        assert_eq!(a.apply(&x).unwrap(), vec![10]);
    }
}
