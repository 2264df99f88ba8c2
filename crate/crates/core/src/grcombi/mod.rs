//! Combinatorics of affine Grassmannian strata, Deligne–Lusztig fixed sets
//! and fixed points on finite coset spaces.

mod coset;
mod dl;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{AutomorphismKind, DatumAutomorphism, RootDatum, Weight};

pub use coset::{
    coset_fixed_points, coset_library, failure_witness, Conjugation, CosetReport, Perm, PermGroup, MAX_GROUP_ORDER,
};
pub use dl::{dl_tate_multiset, DlTate};

/// Iwahori orbit `Gr_{G, lambda}` for a cocharacter `lambda` (any, not only dominant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumLabel<'a> {
    pub datum: &'a RootDatum,
    pub lambda: Weight,
}

impl<'a> StratumLabel<'a> {
    pub fn new(datum: &'a RootDatum, lambda: Weight) -> Result<Self> {
        if lambda.len() != datum.rank() {
            return Err(Error::Shape(format!("cocharacter {lambda:?} does not have length {}", datum.rank())));
        }
        Ok(StratumLabel { datum, lambda })
    }
}

/// `delta_alpha`: 0 on positive roots, 1 on negative roots.
fn delta(d: &RootDatum, r: usize) -> i64 {
    if d.is_positive(r) {
        0
    } else {
        1
    }
}

/// Affine root factors `(alpha, m)` with `delta_alpha <= m < <lambda, alpha>`.
pub fn affine_factors(d: &RootDatum, lambda: &[i64]) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for (r, root) in d.roots().iter().enumerate() {
        let top = d.pair(root, lambda);
        for m in delta(d, r)..top {
            out.push((r, m));
        }
    }
    out
}

pub fn iwahori_orbit_dimension(s: &StratumLabel) -> usize {
    affine_factors(s.datum, &s.lambda).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedStratum {
    /// The cocharacter of `H`.
    pub h_lambda: Weight,
    /// Dimension of `Gr_{H, lambda}` computed in `H`.
    pub dim: usize,
    /// Number of σ-fixed factors of the product decomposition, when the kind determines it.
    pub fixed_factors: Option<usize>,
}

/// Whether σ acts trivially on the root group of a σ-fixed root.
fn survives(a: &DatumAutomorphism, r: usize) -> Option<bool> {
    let d = &a.base;
    match &a.kind {
        AutomorphismKind::InnerTorsion { .. } => crate::rootdata::torsion_value(a, r).map(|t| t == 0),
        AutomorphismKind::Pinned { .. } | AutomorphismKind::BlockCyclic { .. } => {
            // a fixed root beta + sigma(beta) with sigma(beta) != beta carries the sign -1
            let root = &d.roots()[r];
            let doubled = d.roots().iter().any(|b| {
                let sb = a.matrix.apply(b);
                &sb != b && b.iter().zip(&sb).map(|(x, y)| x + y).collect::<Weight>() == *root
            });
            Some(!doubled)
        }
        AutomorphismKind::General => None,
    }
}

/// σ-fixed points of `Gr_{G, lambda}`: empty unless `sigma lambda = lambda`, else `Gr_{H, lambda}`.
pub fn fixed_stratum(s: &StratumLabel, a: &DatumAutomorphism) -> Result<Option<FixedStratum>> {
    if s.datum != &a.base {
        return Err(Error::Mismatch("stratum and automorphism live on different data".into()));
    }
    if !a.fixes_cocharacter(&s.lambda) {
        return Ok(None);
    }
    let h_lambda = a
        .to_fixed(&s.lambda)?
        .ok_or_else(|| Error::Internal("fixed cocharacter outside the embedded lattice".into()))?;
    let h = StratumLabel::new(&a.fixed_datum, h_lambda.clone())?;
    let dim = iwahori_orbit_dimension(&h);
    let fixed_factors = fixed_factor_count(s, a)?;
    Ok(Some(FixedStratum { h_lambda, dim, fixed_factors }))
}

/// Counts σ-orbits of factors `(alpha, m)`: free orbits contribute one, fixed roots contribute
/// when σ acts trivially on their root group.
pub fn fixed_factor_count(s: &StratumLabel, a: &DatumAutomorphism) -> Result<Option<usize>> {
    let d = s.datum;
    let factors = affine_factors(d, &s.lambda);
    let mut seen = std::collections::HashSet::new();
    let mut count = 0;
    for &(r, m) in &factors {
        if !seen.insert((r, m)) {
            continue;
        }
        let img = d
            .root_index(&a.matrix.apply(&d.roots()[r]))
            .ok_or_else(|| Error::Internal("automorphism does not permute roots".into()))?;
        if img == r {
            match survives(a, r) {
                Some(true) => count += 1,
                Some(false) => {}
                None => return Ok(None),
            }
        } else {
            let mut cur = img;
            while cur != r {
                seen.insert((cur, m));
                cur = d.root_index(&a.matrix.apply(&d.roots()[cur])).expect("root permutation");
            }
            count += 1;
        }
    }
    Ok(Some(count))
}

/// `<lambda, 2 rho> mod 2`.
pub fn pariversity(s: &StratumLabel) -> u8 {
    s.datum.coheight(&s.lambda).rem_euclid(2) as u8
}

/// `(<lambda, 2 rho_G> - <lambda, 2 rho_H>) mod 2` for σ-fixed `lambda`.
pub fn relative_pariversity(s: &StratumLabel, a: &DatumAutomorphism) -> Result<u8> {
    if !a.fixes_cocharacter(&s.lambda) {
        return Err(Error::NotInvariant(format!("{:?} is not fixed by sigma", s.lambda)));
    }
    let h_lambda = a
        .to_fixed(&s.lambda)?
        .ok_or_else(|| Error::Internal("fixed cocharacter outside the embedded lattice".into()))?;
    let g = s.datum.coheight(&s.lambda);
    let h = a.fixed_datum.coheight(&h_lambda);
    Ok((g - h).rem_euclid(2) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{block_cyclic_automorphism, inner_torsion_automorphism, pinned_automorphism};

    #[test]
    fn a1_coroot() {
        let d = RootDatum::from_label("A1").unwrap();
        let s = StratumLabel::new(&d, d.simple_coroot(0).clone()).unwrap();
        assert_eq!(iwahori_orbit_dimension(&s), 2);
        assert_eq!(iwahori_orbit_dimension(&StratumLabel::new(&d, vec![0]).unwrap()), 0);
        assert_eq!(pariversity(&s), 0);
        let a = inner_torsion_automorphism(&d, &[1], 3).unwrap();
        assert_eq!(relative_pariversity(&s, &a).unwrap(), 0);
        let f = fixed_stratum(&s, &a).unwrap().unwrap();
        assert_eq!((f.dim, f.fixed_factors), (0, Some(0)));
    }

    #[test]
    fn non_dominant_is_literal() {
        let d = RootDatum::from_label("A1").unwrap();
        // <-alpha^vee, -alpha> = 2: only the negative root contributes, m in [1, 2)
        let s = StratumLabel::new(&d, vec![-1]).unwrap();
        assert_eq!(iwahori_orbit_dimension(&s), 1);
    }

    #[test]
    fn base_change_strata() {
        let m = RootDatum::from_label("A1").unwrap();
        let a = block_cyclic_automorphism(&m, 3).unwrap();
        let d = a.base.clone();
        let off = StratumLabel::new(&d, vec![2, 0, 0]).unwrap();
        assert!(fixed_stratum(&off, &a).unwrap().is_none());
        let diag = StratumLabel::new(&d, vec![2, 2, 2]).unwrap();
        let f = fixed_stratum(&diag, &a).unwrap().unwrap();
        assert_eq!(f.dim, iwahori_orbit_dimension(&StratumLabel::new(&m, vec![2]).unwrap()));
        assert_eq!(f.fixed_factors, Some(f.dim));
    }

    #[test]
    fn a2_fold_fixed_dimension() {
        let d = RootDatum::from_label("A2").unwrap();
        let a = pinned_automorphism(&d, &[1, 0], 2).unwrap();
        for k in 0..5 {
            let lambda = vec![k, k];
            let s = StratumLabel::new(&d, lambda).unwrap();
            let f = fixed_stratum(&s, &a).unwrap().unwrap();
            assert_eq!(f.dim as i64, a.fixed_datum.coheight(&f.h_lambda));
            assert_eq!(f.fixed_factors, Some(f.dim));
            assert!(f.dim <= iwahori_orbit_dimension(&s));
        }
    }
}
