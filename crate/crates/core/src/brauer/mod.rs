//! Brauer homomorphisms on invariant group algebras `k[X]`, modelled through
//! Satake as Weyl-invariant characters of the dual groups.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::charring::{weyl_character_bounded, CharacterElement, Ring};
use crate::error::{Error, Result};
use crate::linalg::smith::left_inverse;
use crate::linalg::Matrix;
use crate::rootdata::{norm_matrix, DatumAutomorphism, RootDatum, Weight};

/// `sigma` on `X(G^vee) = X^vee(G)` together with the fixed datum on the dual side.
#[derive(Clone, Debug)]
pub struct SatakeSetup {
    pub auto: DatumAutomorphism,
    pub g_datum: Arc<RootDatum>,
    pub h_datum: Arc<RootDatum>,
    pub sigma: Matrix,
    /// `X(H^vee) -> X(G^vee)^sigma`.
    pub embedding: Matrix,
    left_inv: Matrix,
    /// `lambda ↦ E^{-1}(lambda + sigma lambda + .. + sigma^{l-1} lambda)`.
    pub n_map: Matrix,
    pub ell: u64,
}

impl SatakeSetup {
    pub fn new(auto: &DatumAutomorphism) -> Result<Self> {
        let ell = auto.ell();
        let sigma = auto.comatrix();
        let g_datum = Arc::new(auto.base.dual());
        let h_datum = Arc::new(auto.fixed_datum.dual());
        let embedding = auto.embedding.clone();
        let left_inv = left_inverse(&embedding)?
            .ok_or_else(|| Error::Invalid("embedding is not onto a saturated sublattice".into()))?;
        let nsum = norm_matrix(&sigma, ell);
        let n_map = left_inv.mul(&nsum);
        if embedding.mul(&n_map) != nsum {
            return Err(Error::Invalid("the image of N is not inside the embedded fixed lattice".into()));
        }
        if n_map.mul(&sigma) != n_map {
            return Err(Error::Internal("N o sigma != N".into()));
        }
        Ok(SatakeSetup { auto: auto.clone(), g_datum, h_datum, sigma, embedding, left_inv, n_map, ell })
    }

    pub fn ring(&self) -> Ring {
        Ring::Fp(self.ell)
    }

    /// The bad-prime hypothesis `l > b(G^vee), b(H^vee)`.
    pub fn hypothesis_bound(&self) -> u64 {
        self.g_datum.bad_prime_bound().max(self.h_datum.bad_prime_bound())
    }

    pub fn check_hypothesis(&self) -> Result<()> {
        let bound = self.hypothesis_bound();
        if self.ell <= bound {
            return Err(Error::Hypothesis { ell: self.ell, bound });
        }
        Ok(())
    }

    /// Fixed weight of `X(G^vee)` as a weight of `H^vee`.
    pub fn to_fixed(&self, lambda: &[i64]) -> Result<Weight> {
        let x = self.left_inv.apply(lambda);
        if self.embedding.apply(&x) != lambda {
            return Err(Error::Invalid(format!("{lambda:?} is not in the fixed sublattice")));
        }
        Ok(x)
    }

    pub fn is_fixed(&self, lambda: &[i64]) -> bool {
        self.sigma.apply(lambda) == lambda
    }

    fn on_g(&self, f: &CharacterElement) -> Result<()> {
        if f.datum() != &*self.g_datum {
            return Err(Error::Mismatch("character does not live on the dual group of the setup".into()));
        }
        Ok(())
    }

    fn over_fl(&self, f: &CharacterElement) -> Result<()> {
        if f.ring() != self.ring() {
            return Err(Error::Mismatch(format!("expected coefficients in F{}, got {}", self.ell, f.ring())));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BrauerRestriction {
    pub value: CharacterElement,
    /// Multiplicativity is only guaranteed in characteristic `l`.
    pub multiplicative: bool,
}

/// `Br`: keep the terms on `sigma`-fixed weights, reindexed to `X(H^vee)`.
pub fn brauer_restrict(f: &CharacterElement, s: &SatakeSetup) -> Result<BrauerRestriction> {
    s.on_g(f)?;
    if f.act(&s.sigma)?.terms() != f.terms() {
        return Err(Error::NotInvariant("Br needs a sigma-invariant element".into()));
    }
    let mut terms = BTreeMap::new();
    for (w, &c) in f.terms() {
        if s.is_fixed(w) {
            terms.insert(s.to_fixed(w)?, c);
        }
    }
    let value = CharacterElement::from_terms(s.h_datum.clone(), f.ring(), terms)?.with_frob_twist(f.frob_twist());
    Ok(BrauerRestriction { value, multiplicative: f.ring() == s.ring() })
}

/// `Nm(f)` together with its class in `T^0`, i.e. modulo the image of the norm.
#[derive(Clone, Debug, PartialEq)]
pub struct TateClass {
    pub value: CharacterElement,
    /// Coefficients on `sigma`-fixed weights; free orbits are norms and vanish.
    pub class: BTreeMap<Weight, i64>,
}

impl TateClass {
    fn of(value: CharacterElement, s: &SatakeSetup) -> Self {
        let class = value.terms().iter().filter(|(w, _)| s.is_fixed(w)).map(|(w, &c)| (w.clone(), c)).collect();
        TateClass { value, class }
    }

    pub fn same_class(&self, other: &TateClass) -> bool {
        self.class == other.class
    }

    pub fn multiply(&self, other: &TateClass, s: &SatakeSetup) -> Result<TateClass> {
        Ok(TateClass::of(self.value.multiply(&other.value)?, s))
    }
}

/// `a ↦ a (sigma a) .. (sigma^{l-1} a)`; Frobenius-semilinear, so the tag goes up by one.
pub fn tate_diagonal(f: &CharacterElement, s: &SatakeSetup) -> Result<TateClass> {
    s.on_g(f)?;
    s.over_fl(f)?;
    let value = crate::charring::norm_character(f, &s.sigma, s.ell)?;
    let tag = f.frob_twist() + 1;
    Ok(TateClass::of(value.with_frob_twist(tag), s))
}

/// `Nm^(1/l) = Nm o Frob^{-1}`: same values over `F_l`, tag one lower than `tate_diagonal`.
pub fn linearized_norm(f: &CharacterElement, s: &SatakeSetup) -> Result<TateClass> {
    let t = tate_diagonal(f, s)?;
    let tag = t.value.frob_twist() - 1;
    Ok(TateClass::of(t.value.with_frob_twist(tag), s))
}

/// `br = Br o Nm^(1/l)`.
pub fn normalized_brauer(f: &CharacterElement, s: &SatakeSetup) -> Result<CharacterElement> {
    s.on_g(f)?;
    s.over_fl(f)?;
    if !f.check_invariance() {
        return Err(Error::NotInvariant("br needs a W(G)-invariant element".into()));
    }
    let nm = linearized_norm(f, s)?;
    let out = brauer_restrict(&nm.value, s)?.value;
    if !out.check_invariance() {
        return Err(Error::Internal("br output is not W(H)-invariant".into()));
    }
    Ok(out)
}

/// `sum a_lambda e^lambda ↦ sum a_lambda e^{N lambda}`.
pub fn brauer_closed_form(f: &CharacterElement, s: &SatakeSetup) -> Result<CharacterElement> {
    s.on_g(f)?;
    f.restrict_along(&s.n_map, s.h_datum.clone())
}

fn fl(c: i64, ell: u64) -> u64 {
    c.rem_euclid(ell as i64) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftColumn {
    pub weight: Weight,
    pub decomposition: Vec<(Weight, i64)>,
    pub nonnegative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub all_nonnegative: bool,
    pub columns: Vec<LiftColumn>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatakeMatrix {
    pub ell: u64,
    pub weight_bound: i64,
    /// Dominant weights of `G^vee`.
    pub columns: Vec<Weight>,
    /// Dominant weights of `H^vee` that occur.
    pub rows: Vec<Weight>,
    /// `entries[i][j]` in `[0, l)`.
    pub entries: Vec<Vec<u64>>,
    pub liftability: LiftReport,
}

impl SatakeMatrix {
    /// Column as a sparse map row weight -> entry.
    pub fn column(&self, j: usize) -> BTreeMap<Weight, u64> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| self.entries[*i][j] != 0)
            .map(|(i, w)| (w.clone(), self.entries[i][j]))
            .collect()
    }
}

/// Central directions of non-semisimple dual groups are enumerated in this box.
pub const CENTRAL_BOX: i64 = 1;

fn columns_of(s: &SatakeSetup, weight_bound: i64) -> Result<Vec<Weight>> {
    if weight_bound < 0 {
        return Err(Error::Invalid("weight bound must be nonnegative".into()));
    }
    s.g_datum.dominant_weights(weight_bound, CENTRAL_BOX)
}

/// Matrix of `br` in the Weyl-character bases: column `mu` is `decompose_H(br(chi_G(mu)))`.
pub fn satake_matrix(s: &SatakeSetup, weight_bound: i64) -> Result<SatakeMatrix> {
    s.check_hypothesis()?;
    let cols = columns_of(s, weight_bound)?;
    let decomposed: Vec<Vec<(Weight, i64)>> = cols
        .par_iter()
        .map(|mu| {
            let chi = weyl_character_bounded(&s.g_datum, mu, s.ring(), i64::MAX)?;
            normalized_brauer(&chi, s)?.decompose().map_err(|e| match e {
                Error::NotInvariant(m) => Error::Internal(m),
                other => other,
            })
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<Weight> = decomposed.iter().flatten().map(|(w, _)| w.clone()).collect();
    let h = &s.h_datum;
    rows.sort_by(|a, b| h.height(a).cmp(&h.height(b)).then_with(|| a.cmp(b)));
    rows.dedup();
    let index: BTreeMap<&Weight, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut entries = vec![vec![0u64; cols.len()]; rows.len()];
    for (j, col) in decomposed.iter().enumerate() {
        for (w, c) in col {
            entries[index[w]][j] = fl(*c, s.ell);
        }
    }
    let liftability = char_zero_liftability(s, weight_bound)?;
    Ok(SatakeMatrix { ell: s.ell, weight_bound, columns: cols, rows, entries, liftability })
}

/// Lifts the closed form to `Z` and checks each column's decomposition for negative coefficients.
pub fn char_zero_liftability(s: &SatakeSetup, weight_bound: i64) -> Result<LiftReport> {
    s.check_hypothesis()?;
    let cols = columns_of(s, weight_bound)?;
    let columns: Vec<LiftColumn> = cols
        .par_iter()
        .map(|mu| {
            let chi = weyl_character_bounded(&s.g_datum, mu, Ring::Z, i64::MAX)?;
            let lifted = brauer_closed_form(&chi, s)?;
            let decomposition = lifted.decompose()?;
            let nonnegative = decomposition.iter().all(|(_, c)| *c >= 0);
            Ok(LiftColumn { weight: mu.clone(), decomposition, nonnegative })
        })
        .collect::<Result<_>>()?;
    Ok(LiftReport { all_nonnegative: columns.iter().all(|c| c.nonnegative), columns })
}

/// `sigma`-orbit sum of `e^lambda`.
pub fn orbit_sum(s: &SatakeSetup, ring: Ring, lambda: &[i64], c: i64) -> Result<CharacterElement> {
    let mut orbit = vec![lambda.to_vec()];
    let mut cur = s.sigma.apply(lambda);
    while cur != lambda {
        orbit.push(cur.clone());
        cur = s.sigma.apply(&cur);
    }
    CharacterElement::from_terms(s.g_datum.clone(), ring, orbit.into_iter().map(|w| (w, c)))
}

/// Random `sigma`-invariant element with `orbits` orbit sums of weights in `[-radius, radius]^n`.
pub fn random_sigma_invariant<R: Rng>(
    rng: &mut R,
    s: &SatakeSetup,
    ring: Ring,
    orbits: usize,
    radius: i64,
) -> Result<CharacterElement> {
    let n = s.g_datum.rank();
    let mut f = CharacterElement::zero(s.g_datum.clone(), ring);
    let span = match ring {
        Ring::Z => 4,
        Ring::Fp(p) => p as i64,
    };
    for _ in 0..orbits {
        let w: Weight = (0..n).map(|_| rng.gen_range(-radius..=radius)).collect();
        let c = rng.gen_range(1..=span.max(2) - 1) * if rng.gen_bool(0.5) { 1 } else { -1 };
        f = f.add(&orbit_sum(s, ring, &w, c)?)?;
    }
    Ok(f)
}

/// Random combination of Weyl characters `chi(mu)` with `<mu, 2 rho^vee> <= bound`.
pub fn random_weyl_invariant<R: Rng>(
    rng: &mut R,
    s: &SatakeSetup,
    ring: Ring,
    terms: usize,
    bound: i64,
) -> Result<CharacterElement> {
    let pool = s.g_datum.dominant_weights(bound, CENTRAL_BOX)?;
    let mut f = CharacterElement::zero(s.g_datum.clone(), ring);
    for _ in 0..terms {
        let mu = &pool[rng.gen_range(0..pool.len())];
        let c = rng.gen_range(-3i64..=3);
        f = f.add(&weyl_character_bounded(&s.g_datum, mu, ring, i64::MAX)?.scale(c))?;
    }
    Ok(f)
}

/// A witness that `Br` over `Z` is not multiplicative: `Br(fg) != Br(f) Br(g)`.
#[derive(Clone, Debug)]
pub struct CharZeroCounterexample {
    pub f: CharacterElement,
    pub g: CharacterElement,
    pub br_product: CharacterElement,
    pub product_of_br: CharacterElement,
}

/// Searches for a counterexample over `Z` using the setup's `sigma`; needs a free orbit.
pub fn char_zero_counterexample(s: &SatakeSetup) -> Result<Option<CharZeroCounterexample>> {
    let n = s.g_datum.rank();
    // a weight with a free orbit whose orbit sum squares onto a fixed weight
    for radius in 1..=2i64 {
        let mut w = vec![-radius; n];
        loop {
            if !s.is_fixed(&w) {
                let f = orbit_sum(s, Ring::Z, &w, 1)?;
                let neg: Weight = w.iter().map(|x| -x).collect();
                let g = orbit_sum(s, Ring::Z, &neg, 1)?;
                let lhs = brauer_restrict(&f.multiply(&g)?, s)?.value;
                let rhs = brauer_restrict(&f, s)?.value.multiply(&brauer_restrict(&g, s)?.value)?;
                if lhs != rhs {
                    return Ok(Some(CharZeroCounterexample { f, g, br_product: lhs, product_of_br: rhs }));
                }
            }
            // next vector in the box
            let mut i = 0;
            while i < n && w[i] == radius {
                w[i] = -radius;
                i += 1;
            }
            if i == n {
                break;
            }
            w[i] += 1;
        }
    }
    Ok(None)
}
