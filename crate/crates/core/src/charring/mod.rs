//! Finitely supported functions on a character lattice: the group algebra
//! `R[X]` with `R = Z` or `F_p`, Weyl characters and their decompositions.

mod freudenthal;
mod norm;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_prime, Matrix};
use crate::rootdata::{RootDatum, Weight};

pub use freudenthal::{
    dominant_multiplicities, weyl_character, weyl_character_bounded, weyl_dimension, DEFAULT_WEIGHT_BOUND,
};
pub use norm::{goodness_of_norm, norm_character, NormGoodness, OrbitGoodness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Z,
    Fp(u64),
}

impl Ring {
    pub fn fp(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::Fp(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn normalize(self, c: i64) -> i64 {
        match self {
            Ring::Z => c,
            Ring::Fp(p) => c.rem_euclid(p as i64),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Ring::Z => 0,
            Ring::Fp(p) => p,
        }
    }

    fn mul(self, a: i64, b: i64) -> i64 {
        match self {
            Ring::Z => a.checked_mul(b).expect("coefficient overflow"),
            Ring::Fp(p) => ((a as i128 * b as i128).rem_euclid(p as i128)) as i64,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => f.write_str("Z"),
            Ring::Fp(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Ring> {
        if s == "Z" {
            return Ok(Ring::Z);
        }
        let p = s
            .strip_prefix("F_")
            .or_else(|| s.strip_prefix('F'))
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Invalid(format!("unknown coefficient ring `{s}`")))?;
        Ring::fp(p)
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct CharacterElement {
    datum: Arc<RootDatum>,
    ring: Ring,
    terms: BTreeMap<Weight, i64>,
    invariant: bool,
    frob_twist: i64,
}

impl PartialEq for CharacterElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.frob_twist == other.frob_twist
            && self.terms == other.terms
            && same_datum(&self.datum, &other.datum)
    }
}

impl Eq for CharacterElement {}

fn same_datum(a: &Arc<RootDatum>, b: &Arc<RootDatum>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl CharacterElement {
    pub fn zero(datum: Arc<RootDatum>, ring: Ring) -> Self {
        CharacterElement { datum, ring, terms: BTreeMap::new(), invariant: true, frob_twist: 0 }
    }

    pub fn one(datum: Arc<RootDatum>, ring: Ring) -> Self {
        let n = datum.rank();
        Self::monomial(datum, ring, vec![0; n], 1)
    }

    /// `c e^lambda`.
    pub fn monomial(datum: Arc<RootDatum>, ring: Ring, lambda: Weight, c: i64) -> Self {
        let mut f = Self::zero(datum, ring);
        f.add_term(lambda, c);
        f.invariant = f.check_invariance();
        f
    }

    pub fn from_terms(datum: Arc<RootDatum>, ring: Ring, terms: impl IntoIterator<Item = (Weight, i64)>) -> Result<Self> {
        let mut f = Self::zero(datum, ring);
        for (w, c) in terms {
            if w.len() != f.datum.rank() {
                return Err(Error::Shape(format!("weight {w:?} does not have length {}", f.datum.rank())));
            }
            f.add_term(w, c);
        }
        f.invariant = f.check_invariance();
        Ok(f)
    }

    pub(crate) fn from_parts(datum: Arc<RootDatum>, ring: Ring, terms: BTreeMap<Weight, i64>, invariant: bool, frob_twist: i64) -> Self {
        let mut f = CharacterElement { datum, ring, terms: BTreeMap::new(), invariant, frob_twist };
        for (w, c) in terms {
            f.add_term(w, c);
        }
        f
    }

    fn add_term(&mut self, w: Weight, c: i64) {
        let ring = self.ring;
        let v = ring.normalize(self.coeff(&w).checked_add(c).expect("coefficient overflow"));
        if v == 0 {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, v);
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn frob_twist(&self) -> i64 {
        self.frob_twist
    }

    pub fn with_frob_twist(mut self, t: i64) -> Self {
        self.frob_twist = t;
        self
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn coeff(&self, w: &[i64]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the invariance certificate is set (it is only ever set after a check).
    pub fn is_certified_invariant(&self) -> bool {
        self.invariant
    }

    /// Coefficients constant along simple reflections, hence on Weyl orbits.
    pub fn check_invariance(&self) -> bool {
        let d = &self.datum;
        self.terms.iter().all(|(w, &c)| (0..d.semisimple_rank()).all(|i| self.coeff(&d.reflect(w, i)) == c))
    }

    /// Sum of coefficients (the dimension, for an actual character).
    pub fn dim(&self) -> i64 {
        self.ring.normalize(self.terms.values().sum())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Mismatch(format!("rings {} and {}", self.ring, other.ring)));
        }
        if self.frob_twist != other.frob_twist {
            return Err(Error::Mismatch(format!("Frobenius twists {} and {}", self.frob_twist, other.frob_twist)));
        }
        if !same_datum(&self.datum, &other.datum) {
            return Err(Error::Mismatch("characters live on different root data".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut f = self.clone();
        for (w, &c) in &other.terms {
            f.add_term(w.clone(), c);
        }
        f.invariant = self.invariant && other.invariant;
        Ok(f)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut f = CharacterElement { terms: BTreeMap::new(), ..self.clone() };
        for (w, &v) in &self.terms {
            f.add_term(w.clone(), self.ring.mul(v, c));
        }
        f
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let w: Weight = a.iter().zip(b).map(|(p, q)| p + q).collect();
                let e = acc.entry(w).or_insert(0);
                *e = self.ring.normalize(*e + self.ring.mul(x, y));
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(CharacterElement {
            datum: self.datum.clone(),
            ring: self.ring,
            terms: acc,
            invariant: self.invariant && other.invariant,
            frob_twist: self.frob_twist,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.datum.clone(), self.ring).with_frob_twist(self.frob_twist);
        for _ in 0..k {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Reduction of a `Z`-character modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        let ring = Ring::fp(p)?;
        if let Ring::Fp(q) = self.ring {
            if q != p {
                return Err(Error::Mismatch(format!("cannot reduce an F{q} character mod {p}")));
            }
        }
        Ok(Self::from_parts(self.datum.clone(), ring, self.terms.clone(), self.invariant, self.frob_twist))
    }

    /// Integer lift with coefficients in `[0, p)` (no-op over `Z`).
    pub fn lift_to_z(&self) -> Self {
        Self::from_parts(self.datum.clone(), Ring::Z, self.terms.clone(), self.invariant, self.frob_twist)
    }

    /// `e^lambda ↦ e^{M lambda}` onto another datum; invariance is re-checked there.
    pub fn restrict_along(&self, m: &Matrix, target: Arc<RootDatum>) -> Result<Self> {
        if m.cols() != self.datum.rank() || m.rows() != target.rank() {
            return Err(Error::Shape(format!(
                "lattice map is {}x{}, need {}x{}",
                m.rows(),
                m.cols(),
                target.rank(),
                self.datum.rank()
            )));
        }
        let mut terms = BTreeMap::new();
        for (w, &c) in &self.terms {
            let e = terms.entry(m.apply(w)).or_insert(0);
            *e = self.ring.normalize(*e + c);
        }
        let mut f = Self::from_parts(target, self.ring, terms, false, self.frob_twist);
        f.invariant = f.check_invariance();
        Ok(f)
    }

    /// Action of a lattice automorphism on the same datum.
    pub fn act(&self, m: &Matrix) -> Result<Self> {
        let mut f = self.restrict_along(m, self.datum.clone())?;
        f.invariant = f.check_invariance();
        Ok(f)
    }

    /// External product on the product datum `self.datum x other.datum`.
    pub fn boxtimes(&self, other: &Self, product: Arc<RootDatum>) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::Mismatch("rings differ".into()));
        }
        if product.rank() != self.datum.rank() + other.datum.rank() {
            return Err(Error::Shape("product datum has the wrong rank".into()));
        }
        let mut terms = BTreeMap::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                terms.insert(w, self.ring.mul(x, y));
            }
        }
        let mut f = Self::from_parts(product, self.ring, terms, false, self.frob_twist);
        f.invariant = f.check_invariance();
        Ok(f)
    }

    /// `f = sum_mu c_mu chi(mu)` by peeling off the highest dominant term.
    pub fn decompose(&self) -> Result<Vec<(Weight, i64)>> {
        if !self.check_invariance() {
            return Err(Error::NotInvariant("decompose needs a Weyl-invariant element".into()));
        }
        let d = self.datum.clone();
        let mut rest = self.clone();
        let mut out = Vec::new();
        while let Some((mu, c)) = rest
            .terms
            .iter()
            .filter(|(w, _)| d.is_dominant(w))
            .max_by(|(a, _), (b, _)| d.height(a).cmp(&d.height(b)).then_with(|| a.cmp(b)))
            .map(|(w, &c)| (w.clone(), c))
        {
            let chi = weyl_character_bounded(&d, &mu, self.ring, i64::MAX)?;
            rest = rest.sub(&chi.scale(c).with_frob_twist(rest.frob_twist))?;
            out.push((mu, c));
        }
        if !rest.is_zero() {
            return Err(Error::Internal("decomposition left a non-dominant remainder".into()));
        }
        out.sort_by(|(a, _), (b, _)| d.height(a).cmp(&d.height(b)).then_with(|| a.cmp(b)));
        Ok(out)
    }

    pub fn to_spec(&self, datum_ref: &str) -> CharacterSpec {
        CharacterSpec {
            datum_ref: datum_ref.to_string(),
            ring: self.ring,
            frob_twist: self.frob_twist,
            terms: self.terms.iter().map(|(w, &c)| Term { weight: w.clone(), coeff: c }).collect(),
        }
    }

    pub fn from_spec(spec: &CharacterSpec, datum: Arc<RootDatum>) -> Result<Self> {
        let f = Self::from_terms(datum, spec.ring, spec.terms.iter().map(|t| (t.weight.clone(), t.coeff)))?;
        Ok(f.with_frob_twist(spec.frob_twist))
    }
}

/// File representation (`character.json`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub datum_ref: String,
    pub ring: Ring,
    pub frob_twist: i64,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub weight: Weight,
    pub coeff: i64,
}

/// `sum_mu c_mu chi(mu)`.
pub fn combine(d: &Arc<RootDatum>, ring: Ring, parts: &[(Weight, i64)]) -> Result<CharacterElement> {
    let mut f = CharacterElement::zero(d.clone(), ring);
    for (mu, c) in parts {
        f = f.add(&weyl_character(d, mu, ring)?.scale(*c))?;
    }
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightClass {
    Minuscule,
    QuasiMinuscule,
    Neither,
}

/// Minuscule: one dominant weight in `V(mu)`; quasi-minuscule: the shortest dominant root.
pub fn classify_weight(d: &RootDatum, mu: &[i64]) -> Result<WeightClass> {
    if !d.is_dominant(mu) {
        return Err(Error::NotDominant(mu.to_vec()));
    }
    let dom = dominant_multiplicities(d, mu, i64::MAX)?;
    if dom.len() == 1 {
        return Ok(WeightClass::Minuscule);
    }
    let Some(r) = d.root_index(mu) else { return Ok(WeightClass::Neither) };
    // dominant roots of the simple factor containing mu
    let support: Vec<usize> = (0..d.semisimple_rank()).filter(|&i| d.root_coords(r)[i] != 0).collect();
    let comp = d.components().iter().find(|(_, nodes)| nodes.contains(&support[0])).map(|(_, n)| n.clone());
    let Some(nodes) = comp else { return Ok(WeightClass::Neither) };
    let len = |x: &[i64]| d.invariant_form(x, x);
    let shortest = d
        .positive_roots()
        .filter(|&i| d.is_dominant(&d.roots()[i]))
        .filter(|&i| (0..d.semisimple_rank()).all(|j| d.root_coords(i)[j] == 0 || nodes.contains(&j)))
        .map(|i| len(&d.roots()[i]))
        .min();
    Ok(if shortest == Some(len(mu)) { WeightClass::QuasiMinuscule } else { WeightClass::Neither })
}
