//! Weight multiplicities of Weyl modules by Freudenthal's recursion.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{CharacterElement, Ring};
use crate::error::{Error, Result};
use crate::linalg::vadd;
use crate::rootdata::{RootDatum, Weight};

pub const DEFAULT_WEIGHT_BOUND: i64 = 24;

/// Multiplicities of the dominant weights of `V(lambda)`, highest first.
pub fn dominant_multiplicities(d: &RootDatum, lambda: &[i64], bound: i64) -> Result<Vec<(Weight, i64)>> {
    if !d.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let top = d.height(lambda);
    if top > bound {
        return Err(Error::Bound(format!("<lambda, 2rho^vee> = {top} exceeds the weight bound {bound}")));
    }
    let pos: Vec<&Weight> = d.positive_roots().map(|i| &d.roots()[i]).collect();

    // dominant weights below lambda: close under mu -> dom(mu - k alpha), 0 < k <= <mu, alpha^vee>
    let mut dominant: Vec<Weight> = vec![lambda.to_vec()];
    let mut seen: std::collections::HashSet<Weight> = dominant.iter().cloned().collect();
    let mut i = 0;
    while i < dominant.len() {
        let mu = dominant[i].clone();
        for r in d.positive_roots() {
            let n = d.pair(&mu, &d.coroots()[r]);
            for k in 1..=n {
                let v: Weight = mu.iter().zip(&d.roots()[r]).map(|(a, b)| a - k * b).collect();
                let v = d.dominant_rep(&v);
                if seen.insert(v.clone()) {
                    dominant.push(v);
                }
            }
        }
        i += 1;
    }
    // process in order of increasing depth below lambda
    dominant.sort_by(|a, b| d.height(b).cmp(&d.height(a)).then_with(|| b.cmp(a)));

    let form = |x: &[i64], y: &[i64]| d.invariant_form(x, y) as i128;
    let two_rho = d.two_rho().clone();
    let shifted = |x: &[i64]| 4 * form(x, x) + 4 * form(x, &two_rho);
    let top_norm = shifted(lambda);

    let mut mult: HashMap<Weight, i64> = HashMap::new();
    mult.insert(lambda.to_vec(), 1);
    for mu in dominant.iter().skip(1) {
        // (|lambda+rho|^2 - |mu+rho|^2) m(mu) = 2 sum_{alpha>0} sum_{k>=1} (mu + k alpha, alpha) m(mu + k alpha)
        let lhs = top_norm - shifted(mu);
        let mut rhs: i128 = 0;
        for alpha in &pos {
            let mut v = vadd(mu, alpha);
            loop {
                let m = *mult.get(&d.dominant_rep(&v)).unwrap_or(&0);
                if m == 0 {
                    break;
                }
                rhs += 2 * form(&v, alpha) * m as i128;
                v = vadd(&v, alpha);
            }
        }
        // both sides carry the factor 4 from clearing rho's denominator
        let rhs = 4 * rhs;
        if lhs <= 0 || rhs % lhs != 0 {
            return Err(Error::Internal(format!("Freudenthal recursion is not integral at {mu:?}")));
        }
        let m = (rhs / lhs) as i64;
        if m > 0 {
            mult.insert(mu.clone(), m);
        }
    }
    Ok(dominant.into_iter().filter_map(|w| mult.get(&w).map(|&m| (w, m))).collect())
}

pub fn weyl_character(d: &Arc<RootDatum>, lambda: &[i64], ring: Ring) -> Result<CharacterElement> {
    weyl_character_bounded(d, lambda, ring, DEFAULT_WEIGHT_BOUND)
}

/// Character of the Weyl module `W(lambda)`, with a configurable height bound.
pub fn weyl_character_bounded(d: &Arc<RootDatum>, lambda: &[i64], ring: Ring, bound: i64) -> Result<CharacterElement> {
    if lambda.len() != d.rank() {
        return Err(Error::Shape(format!("weight {lambda:?} does not have length {}", d.rank())));
    }
    let dom = dominant_multiplicities(d, lambda, bound)?;
    let mut terms = BTreeMap::new();
    for (mu, m) in dom {
        for w in d.orbit(&mu) {
            terms.insert(w, m);
        }
    }
    Ok(CharacterElement::from_parts(d.clone(), ring, terms, true, 0))
}

/// Weyl dimension formula `prod_{alpha>0} <lambda+rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dimension(d: &RootDatum, lambda: &[i64]) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for r in d.positive_roots() {
        let c = &d.coroots()[r];
        let rho = d.pair(d.two_rho(), c) as i128;
        num *= 2 * d.pair(lambda, c) as i128 + rho;
        den *= rho;
    }
    (num / den) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_match_dimension_formula() {
        for label in ["A1", "A2", "A3", "B2", "C3", "G2", "B3", "D4", "A1xB2", "A2:adjoint"] {
            let d = Arc::new(RootDatum::from_label(label).unwrap());
            let n = d.rank();
            let mut weights = vec![vec![0; n]];
            for i in 0..n {
                for j in i..n {
                    let mut w = vec![0; n];
                    w[i] += 1;
                    w[j] += 1;
                    weights.push(w);
                }
                let mut w = vec![0; n];
                w[i] = 1;
                weights.push(w);
            }
            for w in weights {
                // only dominant weights of the simply connected lattice are of this form
                if !d.is_dominant(&w) || d.height(&w) > 16 {
                    continue;
                }
                let chi = weyl_character_bounded(&d, &w, Ring::Z, 16).unwrap();
                assert_eq!(chi.dim(), weyl_dimension(&d, &w), "{label} {w:?}");
                assert!(chi.check_invariance());
            }
        }
    }

    #[test]
    fn bound_and_dominance() {
        let d = Arc::new(RootDatum::from_label("A1").unwrap());
        assert!(matches!(weyl_character(&d, &[-1], Ring::Z), Err(Error::NotDominant(_))));
        assert!(matches!(weyl_character_bounded(&d, &[30], Ring::Z, 24), Err(Error::Bound(_))));
    }
}
