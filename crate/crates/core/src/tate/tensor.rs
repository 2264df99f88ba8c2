//! Tate cohomology of `V^{⊗l}` with Σ rotating the factors.
//!
//! The tensor power is handled on its monomial basis: Σ permutes monomials up
//! to a Koszul sign, so the module splits into orbits that are computed one by one.

use std::collections::HashMap;

use serde::Serialize;

use super::{tate_cohomology, Coeff, SigmaModule};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorPowerTate {
    pub dim_v: usize,
    pub ell: u64,
    pub coeff: Coeff,
    pub t0: usize,
    pub t1: usize,
    /// Diagonal monomials `v_i ⊗ .. ⊗ v_i` spanning `T^0`, by the index `i`.
    pub t0_basis: Vec<usize>,
    pub monomials: usize,
    pub free_orbits: usize,
    /// Frobenius-twist tag of `T^0`, relative to `V`.
    pub frob_twist: i64,
}

/// Rotation `v_1 ⊗ .. ⊗ v_l ↦ v_l ⊗ v_1 ⊗ .. ⊗ v_{l-1}` with its Koszul sign.
fn rotate(t: &[usize], parity: &[u8]) -> (Vec<usize>, i64) {
    let l = t.len();
    let last = parity[t[l - 1]] as u32;
    let rest: u32 = t[..l - 1].iter().map(|&i| parity[i] as u32).sum();
    let sign = if (last * rest) % 2 == 1 { -1 } else { 1 };
    let mut out = Vec::with_capacity(l);
    out.push(t[l - 1]);
    out.extend_from_slice(&t[..l - 1]);
    (out, sign)
}

fn index_of(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * d + i)
}

fn tuple_of(mut k: usize, d: usize, l: usize) -> Vec<usize> {
    let mut t = vec![0; l];
    for s in (0..l).rev() {
        t[s] = k % d;
        k /= d;
    }
    t
}

fn checked_power(d: usize, ell: u64, bound: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..ell {
        total = total
            .checked_mul(d)
            .filter(|&t| t <= bound)
            .ok_or_else(|| Error::Bound(format!("dim V^⊗{ell} exceeds the bound {bound}")))?;
    }
    Ok(total)
}

/// The whole tensor power as one Σ-module (signed permutation matrix), for checking.
pub fn tensor_power_module(parity: &[u8], ell: u64, coeff: Coeff, bound: usize) -> Result<SigmaModule> {
    let d = parity.len();
    let total = checked_power(d, ell, bound)?;
    let mut sigma = Matrix::zeros(total, total);
    for k in 0..total {
        let t = tuple_of(k, d, ell as usize);
        let (img, sign) = rotate(&t, parity);
        sigma[(index_of(&img, d), k)] = sign;
    }
    SigmaModule::free_on(coeff, ell, sigma)
}

/// `T^j(V^{⊗l})` for a (super) vector space `V` with the given basis parities.
pub fn tate_of_tensor_power(parity: &[u8], ell: u64, coeff: Coeff, bound: usize) -> Result<TensorPowerTate> {
    let d = parity.len();
    let l = ell as usize;
    let total = checked_power(d, ell, bound)?;
    let mut seen = vec![false; total];
    let mut cache: HashMap<Vec<i64>, (usize, usize)> = HashMap::new();
    let (mut t0, mut t1, mut free_orbits) = (0, 0, 0);
    let mut t0_basis = Vec::new();
    for k in 0..total {
        if seen[k] {
            continue;
        }
        let start = tuple_of(k, d, l);
        let mut orbit = vec![start.clone()];
        let mut signs = Vec::new();
        seen[k] = true;
        let mut cur = start.clone();
        loop {
            let (next, s) = rotate(&cur, parity);
            signs.push(s);
            if next == start {
                break;
            }
            seen[index_of(&next, d)] = true;
            orbit.push(next.clone());
            cur = next;
        }
        let key = signs.clone();
        let (a, b) = match cache.get(&key) {
            Some(&v) => v,
            None => {
                // basis vector i of the orbit goes to sign_i * vector i+1
                let m = orbit.len();
                let mut sigma = Matrix::zeros(m, m);
                for (i, &s) in signs.iter().enumerate() {
                    sigma[((i + 1) % m, i)] = s;
                }
                let module = SigmaModule::free_on(coeff, ell, sigma)?;
                let v = (tate_cohomology(&module, 0)?.dim, tate_cohomology(&module, 1)?.dim);
                cache.insert(key, v);
                v
            }
        };
        if orbit.len() > 1 {
            free_orbits += 1;
        } else if a > 0 {
            t0_basis.push(start[0]);
        }
        t0 += a;
        t1 += b;
    }
    Ok(TensorPowerTate { dim_v: d, ell, coeff, t0, t1, t0_basis, monomials: total, free_orbits, frob_twist: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(parity: &[u8], ell: u64, coeff: Coeff) -> (usize, usize) {
        let m = tensor_power_module(parity, ell, coeff, 100_000).unwrap();
        (tate_cohomology(&m, 0).unwrap().dim, tate_cohomology(&m, 1).unwrap().dim)
    }

    #[test]
    fn dimension_one() {
        let r = tate_of_tensor_power(&[0], 3, Coeff::Fl, 1000).unwrap();
        assert_eq!((r.t0, r.t1), (1, 1));
    }

    #[test]
    fn matches_full_permutation_module() {
        for (d, ell) in [(3usize, 3u64), (2, 2), (2, 3), (3, 2), (2, 5)] {
            let parity = vec![0u8; d];
            let r = tate_of_tensor_power(&parity, ell, Coeff::Fl, 100_000).unwrap();
            assert_eq!(r.t0, d);
            assert_eq!((r.t0, r.t1), brute(&parity, ell, Coeff::Fl), "d={d} l={ell}");
            let z = tate_of_tensor_power(&parity, ell, Coeff::Zl, 100_000).unwrap();
            assert_eq!((z.t0, z.t1), (d, 0));
            assert_eq!((z.t0, z.t1), brute(&parity, ell, Coeff::Zl));
        }
    }

    #[test]
    fn odd_classes_over_z2() {
        let parity = [0u8, 1];
        let z = tate_of_tensor_power(&parity, 2, Coeff::Zl, 1000).unwrap();
        assert_eq!((z.t0, z.t1), brute(&parity, 2, Coeff::Zl));
        assert_eq!((z.t0, z.t1), (1, 1));
        let f = tate_of_tensor_power(&parity, 2, Coeff::Fl, 1000).unwrap();
        assert_eq!((f.t0, f.t1), brute(&parity, 2, Coeff::Fl));
    }

    #[test]
    fn bound_enforced() {
        assert!(matches!(tate_of_tensor_power(&[0; 10], 5, Coeff::Fl, 1000), Err(Error::Bound(_))));
    }
}
