//! The norm character `f (sigma f) ... (sigma^{l-1} f)` and the Σ-sets behind it.

use std::collections::BTreeMap;

use serde::Serialize;

use super::CharacterElement;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootdata::Weight;
use crate::tate::{is_good, tate_cohomology, Coeff, SigmaModule};

fn check_sigma(f: &CharacterElement, sigma: &Matrix, ell: u64) -> Result<()> {
    let n = f.datum().rank();
    if sigma.rows() != n || sigma.cols() != n {
        return Err(Error::Shape(format!("sigma is {}x{}, lattice has rank {n}", sigma.rows(), sigma.cols())));
    }
    if !sigma.pow(ell).is_identity() {
        return Err(Error::Invalid(format!("sigma does not have order dividing {ell}")));
    }
    Ok(())
}

/// Character of `Nm(V)`; `sigma` acts on the character lattice of `f`.
pub fn norm_character(f: &CharacterElement, sigma: &Matrix, ell: u64) -> Result<CharacterElement> {
    check_sigma(f, sigma, ell)?;
    let mut acc = CharacterElement::one(f.datum_arc().clone(), f.ring()).with_frob_twist(f.frob_twist());
    let mut twisted = f.clone();
    for _ in 0..ell {
        acc = acc.multiply(&twisted)?;
        twisted = twisted.act(sigma)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitGoodness {
    /// Smallest weight of the σ-orbit of weights.
    pub weight: Weight,
    pub orbit_size: usize,
    pub tuples: usize,
    pub fixed_tuples: usize,
    /// `sum dim V_lambda` over `lambda` with `N lambda` equal to the weight.
    pub expected_fixed: usize,
    pub t0: usize,
    pub good: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormGoodness {
    pub all_good: bool,
    pub total_tuples: usize,
    pub weights: Vec<OrbitGoodness>,
}

/// Materializes the Σ-set of basis tuples of `V^{⊗l}` per σ-orbit of weights and tests goodness.
pub fn goodness_of_norm(f: &CharacterElement, sigma: &Matrix, ell: u64, bound: usize) -> Result<NormGoodness> {
    check_sigma(f, sigma, ell)?;
    let l = ell as usize;
    let mut basis: Vec<Weight> = Vec::new();
    for (w, &c) in f.terms() {
        if c < 0 {
            return Err(Error::Invalid("goodness_of_norm needs a character with nonnegative coefficients".into()));
        }
        basis.extend(std::iter::repeat_n(w.clone(), c as usize));
    }
    let b = basis.len();
    let mut total: usize = 1;
    for _ in 0..l {
        total = total
            .checked_mul(b)
            .filter(|&t| t <= bound)
            .ok_or_else(|| Error::Bound(format!("{b}^{ell} tuples exceed the bound {bound}")))?;
    }
    let powers: Vec<Matrix> = (0..l).map(|i| sigma.pow(i as u64)).collect();
    let twisted: Vec<Vec<Weight>> = powers.iter().map(|p| basis.iter().map(|w| p.apply(w)).collect()).collect();
    let orbit_key = |mu: &Weight| -> Weight {
        let mut best = mu.clone();
        let mut cur = mu.clone();
        for _ in 1..l {
            cur = sigma.apply(&cur);
            if cur < best {
                best = cur.clone();
            }
        }
        best
    };

    // group tuple indices (base-b digits, position 0 most significant) by weight orbit
    let mut groups: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    let n = f.datum().rank();
    for k in 0..total {
        let mut w = vec![0i64; n];
        let mut rest = k;
        for pos in (0..l).rev() {
            let idx = rest % b;
            rest /= b;
            for (x, y) in w.iter_mut().zip(&twisted[pos][idx]) {
                *x += y;
            }
        }
        groups.entry(orbit_key(&w)).or_default().push(k);
    }

    let mut weights = Vec::new();
    let mut all_good = true;
    for (key, tuples) in groups {
        let local: BTreeMap<usize, usize> = tuples.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        // rotation (b_0, .., b_{l-1}) -> (b_{l-1}, b_0, .., b_{l-2})
        let perm: Vec<usize> = tuples
            .iter()
            .map(|&k| {
                let last = k % b;
                let img = last * b.pow(ell as u32 - 1) + k / b;
                local[&img]
            })
            .collect();
        let fixed_tuples = perm.iter().enumerate().filter(|(i, &p)| *i == p).count();
        let module = SigmaModule::permutation(Coeff::Zl, ell, &perm)?;
        let good = is_good(&module)?.good;
        let t0 = tate_cohomology(&module, 0)?.dim;
        let mut orbit_size = 1;
        let mut cur = sigma.apply(&key);
        while cur != key {
            orbit_size += 1;
            cur = sigma.apply(&cur);
        }
        let norm_of = |w: &Weight| -> Weight {
            let mut s = vec![0; n];
            for p in &powers {
                for (x, y) in s.iter_mut().zip(p.apply(w)) {
                    *x += y;
                }
            }
            s
        };
        let expected_fixed =
            f.terms().iter().filter(|(w, _)| norm_of(w) == key).map(|(_, &c)| c as usize).sum();
        all_good &= good;
        weights.push(OrbitGoodness {
            weight: key,
            orbit_size,
            tuples: tuples.len(),
            fixed_tuples,
            expected_fixed,
            t0,
            good,
        });
    }
    Ok(NormGoodness { all_good, total_tuples: total, weights })
}
