//! Sigma-dual homomorphisms as data: a map of torus lattices plus an
//! unramified Weyl cocycle, and toral parameters valued in `Q/Z`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::brauer::{SatakeMatrix, SatakeSetup};
use crate::charring::weyl_character_bounded;
use crate::error::{Error, Result};
use crate::linalg::{gcd, Matrix};
use crate::rootdata::{AutomorphismKind, RootDatum, Weight, WeylElement};

/// Element of `Q/Z` in lowest terms with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QZ {
    pub num: i64,
    pub den: i64,
}

impl QZ {
    pub fn new(num: i64, den: i64) -> Result<QZ> {
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(den);
        let g = gcd(num, den).max(1);
        Ok(QZ { num: num / g, den: den / g })
    }

    pub fn zero() -> QZ {
        QZ { num: 0, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn scale(&self, k: i64) -> QZ {
        let num = ((self.num as i128 * k as i128).rem_euclid(self.den as i128)) as i64;
        QZ::new(num, self.den).expect("nonzero denominator")
    }

    /// Additive order in `Q/Z`.
    pub fn order(&self) -> i64 {
        self.den
    }

    fn check_ell(&self, ell: u64) -> Result<()> {
        if self.den % ell as i64 == 0 {
            return Err(Error::Denominator { den: self.den, ell });
        }
        Ok(())
    }
}

impl PartialOrd for QZ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QZ {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128)
            .cmp(&(other.num as i128 * self.den as i128))
            .then(self.den.cmp(&other.den))
    }
}

/// `m v` for an integer matrix acting on a vector in `(Q/Z)^n`.
pub fn apply_qz(m: &Matrix, v: &[QZ]) -> Result<Vec<QZ>> {
    if m.cols() != v.len() {
        return Err(Error::Shape(format!("matrix has {} columns, vector has length {}", m.cols(), v.len())));
    }
    let den = v.iter().fold(1i64, |acc, q| acc / gcd(acc, q.den).max(1) * q.den);
    let ints: Vec<i64> = v.iter().map(|q| q.num * (den / q.den)).collect();
    (0..m.rows())
        .map(|i| {
            let s: i128 = m.row(i).iter().zip(&ints).map(|(&a, &b)| a as i128 * b as i128).sum();
            QZ::new(s.rem_euclid(den as i128) as i64, den)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualHomData {
    pub datum: Arc<RootDatum>,
    /// Character lattice map `X(G^vee) -> X(H^vee)`, i.e. the restriction to maximal tori.
    pub torus_map: Matrix,
    /// Image of Frobenius in `W`.
    pub cocycle: WeylElement,
    pub frob_twist: i64,
    pub elliptic: bool,
}

impl DualHomData {
    pub fn cocycle_word(&self) -> Result<Vec<usize>> {
        self.datum.reduced_word(&self.cocycle)
    }
}

/// `lambda ↦ N lambda` read in the fixed lattice.
pub fn sigma_dual_torus_map(s: &SatakeSetup) -> Matrix {
    s.n_map.clone()
}

/// Canonical embedding of the L-group of the torus twisted by `w`: identity on lattices, cocycle `w`.
pub fn canonical_embedding_cocycle(g: &Arc<RootDatum>, w: &WeylElement) -> Result<DualHomData> {
    g.reduced_word(w)?;
    Ok(DualHomData {
        datum: g.clone(),
        torus_map: Matrix::identity(g.rank()),
        cocycle: w.clone(),
        frob_twist: 0,
        elliptic: g.is_elliptic(w)?,
    })
}

/// Inner `sigma` with `H` a torus: the canonical embedding composed with `Fr_l`.
pub fn inner_case_dual_hom(s: &SatakeSetup, w: &WeylElement) -> Result<DualHomData> {
    if !matches!(s.auto.kind, AutomorphismKind::InnerTorsion { .. }) {
        return Err(Error::UnsupportedAutomorphism(format!("{} is not inner", s.auto.kind.name())));
    }
    if s.h_datum.semisimple_rank() != 0 {
        return Err(Error::Invalid("the fixed group is not a torus".into()));
    }
    s.check_hypothesis()?;
    let canonical = canonical_embedding_cocycle(&s.g_datum, w)?;
    Ok(DualHomData {
        torus_map: canonical.torus_map.scale(s.ell as i64),
        frob_twist: canonical.frob_twist + 1,
        ..canonical
    })
}

/// Unramified parameter, recorded by its value at Frobenius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramLParameter {
    pub datum: Arc<RootDatum>,
    /// Coordinates in `X^vee ⊗ Q/Z` of the target torus.
    pub torus_part: Vec<QZ>,
    pub weyl_part: WeylElement,
    pub frob_twist: i64,
    pub ell: u64,
}

/// File representation (`parameter.json`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterSpec {
    pub torus_part: Vec<QZ>,
    /// Reduced word, 1-based.
    pub weyl_part: Vec<usize>,
    pub frob_twist: i64,
}

impl UnramLParameter {
    pub fn to_spec(&self) -> Result<ParameterSpec> {
        Ok(ParameterSpec {
            torus_part: self.torus_part.clone(),
            weyl_part: self.datum.reduced_word(&self.weyl_part)?.into_iter().map(|i| i + 1).collect(),
            frob_twist: self.frob_twist,
        })
    }

    /// Lexicographically least `(v theta, reduced word of v w v^{-1})` over `v` in `W`.
    pub fn normal_form(&self, cap: usize) -> Result<(Vec<QZ>, Vec<usize>)> {
        let d = &self.datum;
        let mut best: Option<(Vec<QZ>, Vec<usize>)> = None;
        for v in d.weyl_elements(cap)? {
            let t = apply_qz(&v.coaction(d), &self.torus_part)?;
            let conj = v.compose(&self.weyl_part).compose(&d.weyl_inverse(&v));
            let cand = (t, d.reduced_word(&conj)?);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        best.ok_or_else(|| Error::Internal("empty Weyl group".into()))
    }

    /// Multiset of values of `theta` along the `w`-orbit of coordinates, sorted.
    pub fn orbit_invariant(&self) -> Result<Vec<Vec<QZ>>> {
        let d = &self.datum;
        let co = self.weyl_part.coaction(d);
        let mut cur = self.torus_part.clone();
        let mut orbit = Vec::new();
        loop {
            orbit.push(cur.clone());
            cur = apply_qz(&co, &cur)?;
            if cur == self.torus_part {
                break;
            }
        }
        orbit.sort();
        Ok(orbit)
    }
}

/// Transport `theta` (on `X^vee(H^vee)`) along the transpose of the torus map.
pub fn toral_parameter(theta: &[QZ], dh: &DualHomData, ell: u64) -> Result<UnramLParameter> {
    for q in theta {
        q.check_ell(ell)?;
    }
    let torus_part = apply_qz(&dh.torus_map.transpose(), theta)?;
    Ok(UnramLParameter {
        datum: dh.datum.clone(),
        torus_part,
        weyl_part: dh.cocycle.clone(),
        frob_twist: dh.frob_twist,
        ell,
    })
}

/// Parameter of the Frobenius twist: torus part times `l`, tag plus one.
pub fn frobenius_twist_parameter(rho: &UnramLParameter) -> UnramLParameter {
    UnramLParameter {
        torus_part: rho.torus_part.iter().map(|q| q.scale(rho.ell as i64)).collect(),
        frob_twist: rho.frob_twist + 1,
        ..rho.clone()
    }
}

/// Matrix on Weyl-character bases induced by the monomial action `e^lambda ↦ e^{torus_map lambda}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMatrix {
    pub columns: Vec<Weight>,
    pub rows: Vec<Weight>,
    pub entries: Vec<Vec<u64>>,
}

impl InducedMatrix {
    pub fn agrees_with(&self, m: &SatakeMatrix) -> bool {
        self.columns == m.columns && self.rows == m.rows && self.entries == m.entries
    }
}

pub fn induced_matrix(dh: &DualHomData, s: &SatakeSetup, weight_bound: i64) -> Result<InducedMatrix> {
    if dh.torus_map.rows() != s.h_datum.rank() || dh.torus_map.cols() != s.g_datum.rank() {
        return Err(Error::Shape("torus map does not match the setup".into()));
    }
    let columns = s.g_datum.dominant_weights(weight_bound, crate::brauer::CENTRAL_BOX)?;
    let ell = s.ell as i64;
    let mut cols: Vec<BTreeMap<Weight, i64>> = Vec::new();
    for mu in &columns {
        let chi = weyl_character_bounded(&s.g_datum, mu, s.ring(), i64::MAX)?;
        let image = chi.restrict_along(&dh.torus_map, s.h_datum.clone())?;
        cols.push(image.decompose()?.into_iter().collect());
    }
    let h = &s.h_datum;
    let mut rows: Vec<Weight> = cols.iter().flat_map(|c| c.keys().cloned()).collect();
    rows.sort_by(|a, b| h.height(a).cmp(&h.height(b)).then_with(|| a.cmp(b)));
    rows.dedup();
    let entries = rows
        .iter()
        .map(|r| cols.iter().map(|c| c.get(r).map_or(0, |&v| v.rem_euclid(ell) as u64)).collect())
        .collect();
    Ok(InducedMatrix { columns, rows, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::satake_matrix;
    use crate::rootdata::inner_torsion_automorphism;

    fn setup(label: &str, t: &[i64]) -> SatakeSetup {
        let g = RootDatum::from_label(label).unwrap();
        SatakeSetup::new(&inner_torsion_automorphism(&g, t, 3).unwrap()).unwrap()
    }

    #[test]
    fn qz_arithmetic() {
        let q = QZ::new(-1, 4).unwrap();
        assert_eq!(q, QZ { num: 3, den: 4 });
        assert_eq!(q.scale(3), QZ { num: 1, den: 4 });
        assert!(QZ::new(1, 3).unwrap().check_ell(3).is_err());
    }

    #[test]
    fn inner_matches_satake_matrix() {
        for (label, t) in [("A1:adjoint", vec![1]), ("A2:adjoint", vec![1, 1])] {
            let s = setup(label, &t);
            assert_eq!(sigma_dual_torus_map(&s), Matrix::scalar(s.g_datum.rank(), 3));
            let dh = inner_case_dual_hom(&s, &WeylElement::identity(s.g_datum.rank())).unwrap();
            let m = satake_matrix(&s, 8).unwrap();
            assert!(induced_matrix(&dh, &s, 8).unwrap().agrees_with(&m), "{label}");
        }
    }

    #[test]
    fn twist_compatibility() {
        let s = setup("A2:adjoint", &[1, 1]);
        let g = s.g_datum.clone();
        let c = g.weyl_from_word(&[0, 1]).unwrap();
        let theta = vec![QZ::new(1, 5).unwrap(), QZ::new(2, 7).unwrap()];
        let inner = toral_parameter(&theta, &inner_case_dual_hom(&s, &c).unwrap(), 3).unwrap();
        let canon = toral_parameter(&theta, &canonical_embedding_cocycle(&g, &c).unwrap(), 3).unwrap();
        assert_eq!(inner, frobenius_twist_parameter(&canon));
        assert!(canonical_embedding_cocycle(&g, &c).unwrap().elliptic);
    }

    #[test]
    fn normal_form_is_a_class_invariant() {
        let g = Arc::new(RootDatum::from_label("A2").unwrap());
        let w = g.weyl_from_word(&[0, 1]).unwrap();
        let theta = vec![QZ::new(1, 4).unwrap(), QZ::new(1, 2).unwrap()];
        let rho = toral_parameter(&theta, &canonical_embedding_cocycle(&g, &w).unwrap(), 3).unwrap();
        let nf = rho.normal_form(100).unwrap();
        for v in g.weyl_elements(100).unwrap() {
            let conj = UnramLParameter {
                torus_part: apply_qz(&v.coaction(&g), &rho.torus_part).unwrap(),
                weyl_part: v.compose(&w).compose(&g.weyl_inverse(&v)),
                ..rho.clone()
            };
            assert_eq!(conj.normal_form(100).unwrap(), nf);
            assert_eq!(conj.orbit_invariant().unwrap().len(), rho.orbit_invariant().unwrap().len());
        }
    }
}
