//! Lattices over the localization `Z_(l)`, represented by integer generators.
//!
//! Prime-to-`l` elementary divisors are units here and are discarded.

use crate::error::{Error, Result};
use crate::linalg::smith::{smith_normal_form, Mat128, Vec128};

pub fn valuation(x: i128, ell: u64) -> u32 {
    debug_assert!(x != 0);
    let l = ell as i128;
    let mut x = x;
    let mut v = 0;
    while x % l == 0 {
        x /= l;
        v += 1;
    }
    v
}

/// `Z_(l)`-span of a set of integer vectors in `Z^n`.
#[derive(Clone, Debug)]
pub struct LocalLattice {
    pub n: usize,
    pub ell: u64,
    left: Mat128,
    left_inv: Mat128,
    vals: Vec<u32>,
}

impl LocalLattice {
    pub fn span(gens: &[Vec128], n: usize, ell: u64) -> Result<Self> {
        let m = Mat128::from_columns(gens, n);
        let s = smith_normal_form(&m)?;
        let vals = s.diag.iter().map(|&d| valuation(d, ell)).collect();
        Ok(LocalLattice { n, ell, left: s.left, left_inv: s.left_inv, vals })
    }

    pub fn rank(&self) -> usize {
        self.vals.len()
    }

    /// Basis vectors (integer representatives of a `Z_(l)`-basis).
    pub fn basis(&self) -> Vec<Vec128> {
        let l = self.ell as i128;
        (0..self.rank())
            .map(|i| {
                let f = l.pow(self.vals[i]);
                self.left_inv.col(i).into_iter().map(|x| x * f).collect()
            })
            .collect()
    }

    /// Coordinates in [`Self::basis`] if `v` lies in the lattice.
    pub fn coords(&self, v: &[i128]) -> Result<Option<Vec128>> {
        let y = self.left.apply(v)?;
        let l = self.ell as i128;
        let mut c = Vec::with_capacity(self.rank());
        for (i, &yi) in y.iter().enumerate() {
            if i < self.rank() {
                if yi == 0 {
                    c.push(0);
                    continue;
                }
                if valuation(yi, self.ell) < self.vals[i] {
                    return Ok(None);
                }
                c.push(yi / l.pow(self.vals[i]));
            } else if yi != 0 {
                return Ok(None);
            }
        }
        Ok(Some(c))
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        Ok(self.coords(v)?.is_some())
    }

    /// True when the cokernel `Z_(l)^n / self` has no torsion.
    pub fn is_saturated(&self) -> bool {
        self.vals.iter().all(|&v| v == 0)
    }
}

/// `F_l`-dimension and representatives of `outer / inner` for `inner ⊆ outer`.
#[derive(Clone, Debug)]
pub struct LocalQuotient {
    pub dim: usize,
    pub reps: Vec<Vec128>,
}

/// Computes `outer / span(inner_gens)` and insists that it is killed by `l`.
pub fn elementary_quotient(outer: &LocalLattice, inner_gens: &[Vec128]) -> Result<LocalQuotient> {
    let basis = outer.basis();
    let r = basis.len();
    let mut coord_cols = Vec::with_capacity(inner_gens.len());
    for g in inner_gens {
        let c = outer
            .coords(g)?
            .ok_or_else(|| Error::Internal("sub-lattice generator outside lattice".into()))?;
        coord_cols.push(c);
    }
    let c = Mat128::from_columns(&coord_cols, r);
    let s = smith_normal_form(&c)?;
    if s.rank() < r {
        return Err(Error::Internal(format!(
            "quotient has free rank {} (expected a torsion module)",
            r - s.rank()
        )));
    }
    let mut reps = Vec::new();
    for (j, &d) in s.diag.iter().enumerate() {
        let v = valuation(d, outer.ell);
        if v >= 2 {
            return Err(Error::Internal(format!("quotient not killed by l (divisor {d})")));
        }
        if v == 1 {
            let coeffs = s.left_inv.col(j);
            let mut rep = vec![0i128; outer.n];
            for (b, &k) in basis.iter().zip(&coeffs) {
                if k != 0 {
                    for (x, y) in rep.iter_mut().zip(b) {
                        *x = y
                            .checked_mul(k)
                            .and_then(|p| x.checked_add(p))
                            .ok_or(Error::Overflow("quotient representative"))?;
                    }
                }
            }
            reps.push(rep);
        }
    }
    Ok(LocalQuotient { dim: reps.len(), reps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_to_l_divisors_are_units() {
        // 3 Z inside Z is everything at l = 2, index 1
        let lat = LocalLattice::span(&[vec![3]], 1, 2).unwrap();
        assert!(lat.is_saturated());
        assert!(lat.contains(&[1]).unwrap());
        let lat = LocalLattice::span(&[vec![6]], 1, 2).unwrap();
        assert!(!lat.contains(&[1]).unwrap());
        assert!(lat.contains(&[2]).unwrap());
    }

    #[test]
    fn quotient_dimension() {
        let outer = LocalLattice::span(&[vec![1, 0], vec![0, 1]], 2, 3).unwrap();
        let q = elementary_quotient(&outer, &[vec![3, 0], vec![0, 2]]).unwrap();
        assert_eq!(q.dim, 1);
    }
}
