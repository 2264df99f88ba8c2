//! Tate cohomology of deep-level Deligne–Lusztig induction as a multiset of
//! twisted characters indexed by Frobenius-fixed Weyl elements.

use serde::Serialize;

use crate::dualhom::{apply_qz, QZ};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootdata::{RootDatum, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DlTate {
    pub degree: u8,
    pub subgroup_order: usize,
    /// Reduced words (0-based) of the F-fixed elements, in enumeration order.
    pub fixed: Vec<Vec<usize>>,
    /// `theta^v` for the fixed `v`, sorted.
    pub characters: Vec<Vec<QZ>>,
}

/// `{theta^v : v in <gens>, F(v) = v}` with `F(v) = w vartheta(v) w^{-1}`.
///
/// `vartheta` is a lattice automorphism normalizing `W` (identity if `None`); `theta`
/// is a vector of `X^vee ⊗ Q/Z` on which `W` acts contragrediently.
pub fn dl_tate_multiset(
    d: &RootDatum,
    gens: &[WeylElement],
    w: &WeylElement,
    vartheta: Option<&Matrix>,
    theta: &[QZ],
    degree: u8,
    cap: usize,
) -> Result<DlTate> {
    if degree > 1 {
        return Err(Error::Invalid("Tate degree must be 0 or 1 (the groups are 2-periodic)".into()));
    }
    if theta.len() != d.rank() {
        return Err(Error::Shape(format!("theta must have length {}", d.rank())));
    }
    let n = d.rank();
    let vt = vartheta.cloned().unwrap_or_else(|| Matrix::identity(n));
    let vt_inv = vt.pow(order_of(&vt, 1000)? - 1);
    let w_inv = d.weyl_inverse(w);
    let frob = |v: &WeylElement| WeylElement { matrix: w.matrix.mul(&vt.mul(&v.matrix).mul(&vt_inv)).mul(&w_inv.matrix) };
    let elements = d.subgroup_elements(gens, cap)?;
    let mut fixed = Vec::new();
    let mut characters = Vec::new();
    for v in &elements {
        let fv = frob(v);
        if !d.is_weyl_element(&fv.matrix) {
            return Err(Error::Invalid("F does not preserve the Weyl group".into()));
        }
        if &fv == v {
            fixed.push(d.reduced_word(v)?);
            characters.push(apply_qz(&v.coaction(d), theta)?);
        }
    }
    characters.sort();
    Ok(DlTate { degree, subgroup_order: elements.len(), fixed, characters })
}

fn order_of(m: &Matrix, cap: u64) -> Result<u64> {
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Ok(k);
        }
        p = p.mul(m);
    }
    Err(Error::Bound(format!("twist has order above {cap}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(v: &[(i64, i64)]) -> Vec<QZ> {
        v.iter().map(|&(a, b)| QZ::new(a, b).unwrap()).collect()
    }

    #[test]
    fn a1_coxeter() {
        let d = RootDatum::from_label("A1").unwrap();
        let s = d.simple_reflection(0);
        let th = theta(&[(1, 5)]);
        let r0 = dl_tate_multiset(&d, std::slice::from_ref(&s), &s, None, &th, 0, 100).unwrap();
        let r1 = dl_tate_multiset(&d, std::slice::from_ref(&s), &s, None, &th, 1, 100).unwrap();
        assert_eq!(r0.characters.len(), 2);
        assert_eq!(r0.characters, r1.characters);
        assert!(r0.characters.contains(&th));
        assert!(r0.characters.contains(&theta(&[(4, 5)])));
    }

    #[test]
    fn a2_coxeter_and_trivial() {
        let d = RootDatum::from_label("A2").unwrap();
        let gens = vec![d.simple_reflection(0), d.simple_reflection(1)];
        let c = d.weyl_from_word(&[0, 1]).unwrap();
        let th = theta(&[(1, 7), (3, 7)]);
        let r = dl_tate_multiset(&d, &gens, &c, None, &th, 0, 100).unwrap();
        assert_eq!((r.subgroup_order, r.characters.len()), (6, 3));
        let triv = dl_tate_multiset(&d, &[], &c, None, &th, 0, 100).unwrap();
        assert_eq!(triv.characters, vec![th]);
    }
}
