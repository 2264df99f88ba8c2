//! `(Gamma/K)^sigma` versus `Gamma^sigma / K^sigma` for finite permutation groups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::gcd;

pub const MAX_GROUP_ORDER: usize = 100_000;

/// Permutation of `0..n`; `p[i]` is the image of `i`.
pub type Perm = Vec<usize>;

/// `(p q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn identity(n: usize) -> Perm {
    (0..n).collect()
}

fn is_perm(p: &[usize], n: usize) -> bool {
    p.len() == n && p.iter().collect::<BTreeSet<_>>().len() == n && p.iter().all(|&i| i < n)
}

/// Finite permutation group with its explicit element list (sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    pub degree: usize,
    pub elements: Vec<Perm>,
    set: HashSet<Perm>,
}

impl PermGroup {
    pub fn generate(degree: usize, gens: &[Perm]) -> Result<PermGroup> {
        for g in gens {
            if !is_perm(g, degree) {
                return Err(Error::Invalid(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let id = identity(degree);
        let mut set = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(g, &x);
                if set.insert(y.clone()) {
                    if set.len() > MAX_GROUP_ORDER {
                        return Err(Error::Bound(format!("group exceeds {MAX_GROUP_ORDER} elements")));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = set.iter().cloned().collect();
        elements.sort();
        Ok(PermGroup { degree, elements, set })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.set.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|x| other.contains(x))
    }
}

/// `sigma(x) = s x s^{-1}` for a permutation `s` normalizing the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugation {
    pub by: Perm,
    pub ell: u64,
}

impl Conjugation {
    pub fn apply(&self, x: &[usize]) -> Perm {
        compose(&compose(&self.by, x), &inverse(&self.by))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetReport {
    pub gamma_order: usize,
    pub k_order: usize,
    pub ell: u64,
    pub coprime: bool,
    /// `|(Gamma/K)^sigma|`.
    pub fixed_cosets: usize,
    /// `|Gamma^sigma / K^sigma|`.
    pub fixed_quotient: usize,
    pub bijective: bool,
}

pub fn coset_fixed_points(gamma: &PermGroup, k: &PermGroup, sigma: &Conjugation) -> Result<CosetReport> {
    if !k.is_subgroup_of(gamma) {
        return Err(Error::Invalid("K is not a subgroup of Gamma".into()));
    }
    if !is_perm(&sigma.by, gamma.degree) {
        return Err(Error::Invalid("sigma is not given by a permutation of the right degree".into()));
    }
    for x in &gamma.elements {
        if !gamma.contains(&sigma.apply(x)) {
            return Err(Error::Invalid("sigma does not preserve Gamma".into()));
        }
        let mut y = x.clone();
        for _ in 0..sigma.ell {
            y = sigma.apply(&y);
        }
        if &y != x {
            return Err(Error::Invalid(format!("sigma^{} is not the identity on Gamma", sigma.ell)));
        }
    }
    if k.elements.iter().any(|x| !k.contains(&sigma.apply(x))) {
        return Err(Error::Invalid("K is not sigma-stable".into()));
    }
    // left cosets xK, each named by its smallest element
    let coset_of = |x: &Perm| -> Perm { k.elements.iter().map(|y| compose(x, y)).min().expect("K nonempty") };
    let cosets: BTreeSet<Perm> = gamma.elements.iter().map(coset_of).collect();
    let fixed_cosets: BTreeSet<Perm> = cosets.iter().filter(|c| coset_of(&sigma.apply(c)) == **c).cloned().collect();
    let gamma_fixed: Vec<&Perm> = gamma.elements.iter().filter(|x| sigma.apply(x) == **x).collect();
    let k_fixed = k.elements.iter().filter(|x| sigma.apply(x) == **x).count();
    let image: BTreeSet<Perm> = gamma_fixed.iter().map(|x| coset_of(x)).collect();
    let fixed_quotient = gamma_fixed.len() / k_fixed;
    Ok(CosetReport {
        gamma_order: gamma.order(),
        k_order: k.order(),
        ell: sigma.ell,
        coprime: gcd(k.order() as i64, sigma.ell as i64) == 1,
        fixed_cosets: fixed_cosets.len(),
        fixed_quotient,
        bijective: image.len() == fixed_cosets.len() && fixed_quotient == fixed_cosets.len(),
    })
}

fn cycle(n: usize, pts: &[usize]) -> Perm {
    let mut p = identity(n);
    for (i, &a) in pts.iter().enumerate() {
        p[a] = pts[(i + 1) % pts.len()];
    }
    p
}

fn permutation_order(p: &[usize]) -> u64 {
    let mut q = p.to_vec();
    let mut k = 1;
    while q != identity(p.len()) {
        q = compose(p, &q);
        k += 1;
    }
    k
}

/// Triples `(Gamma, K, sigma)` with `gcd(|K|, l) = 1`, `Gamma` a symmetric, alternating,
/// dihedral or cyclic group, `sigma` conjugation by an element of order `l` and `K`
/// generated by a σ-orbit of elements.
pub fn coset_library() -> Result<Vec<(String, PermGroup, PermGroup, Conjugation)>> {
    let mut out = Vec::new();
    let groups: Vec<(String, usize, Vec<Perm>)> = vec![
        ("S3".into(), 3, vec![cycle(3, &[0, 1]), cycle(3, &[0, 1, 2])]),
        ("S4".into(), 4, vec![cycle(4, &[0, 1]), cycle(4, &[0, 1, 2, 3])]),
        ("A4".into(), 4, vec![cycle(4, &[0, 1, 2]), cycle(4, &[1, 2, 3])]),
        ("S5".into(), 5, vec![cycle(5, &[0, 1]), cycle(5, &[0, 1, 2, 3, 4])]),
        ("A5".into(), 5, vec![cycle(5, &[0, 1, 2]), cycle(5, &[0, 1, 2, 3, 4])]),
        ("D5".into(), 5, vec![cycle(5, &[0, 1, 2, 3, 4]), vec![0, 4, 3, 2, 1]]),
        ("C6".into(), 6, vec![cycle(6, &[0, 1, 2, 3, 4, 5])]),
    ];
    for (name, n, gens) in groups {
        let gamma = PermGroup::generate(n, &gens)?;
        for ell in [2u64, 3, 5] {
            // conjugating elements of order l inside Gamma, smallest first
            let Some(s) = gamma.elements.iter().find(|x| permutation_order(x) == ell).cloned() else { continue };
            let sigma = Conjugation { by: s, ell };
            let mut seen = BTreeSet::new();
            for h in &gamma.elements {
                let mut orbit = vec![h.clone()];
                for _ in 1..ell {
                    orbit.push(sigma.apply(orbit.last().expect("nonempty")));
                }
                let k = PermGroup::generate(n, &orbit)?;
                if gcd(k.order() as i64, ell as i64) != 1 || !seen.insert(k.elements.clone()) {
                    continue;
                }
                out.push((format!("{name}/l={ell}/|K|={}", k.order()), gamma.clone(), k, sigma.clone()));
            }
        }
    }
    Ok(out)
}

/// `Gamma = S3`, `l = 3`, `K = A3`, sigma conjugation by a 3-cycle: not bijective.
pub fn failure_witness() -> Result<(PermGroup, PermGroup, Conjugation)> {
    let c = cycle(3, &[0, 1, 2]);
    let gamma = PermGroup::generate(3, &[cycle(3, &[0, 1]), c.clone()])?;
    let k = PermGroup::generate(3, std::slice::from_ref(&c))?;
    Ok((gamma, k, Conjugation { by: c, ell: 3 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_is_bijective() {
        let lib = coset_library().unwrap();
        assert!(lib.len() >= 20, "{}", lib.len());
        for (name, g, k, s) in &lib {
            let r = coset_fixed_points(g, k, s).unwrap();
            assert!(r.coprime && r.bijective, "{name}: {r:?}");
        }
    }

    #[test]
    fn witness_fails() {
        let (g, k, s) = failure_witness().unwrap();
        let r = coset_fixed_points(&g, &k, &s).unwrap();
        assert!(!r.coprime);
        assert_eq!((r.fixed_cosets, r.fixed_quotient, r.bijective), (2, 1, false));
    }

    #[test]
    fn s4_klein() {
        let g = PermGroup::generate(4, &[cycle(4, &[0, 1]), cycle(4, &[0, 1, 2, 3])]).unwrap();
        let v4 = PermGroup::generate(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        let s = Conjugation { by: cycle(4, &[1, 2, 3]), ell: 3 };
        let r = coset_fixed_points(&g, &v4, &s).unwrap();
        assert!(r.bijective);
        let triv = PermGroup::generate(4, &[]).unwrap();
        let r = coset_fixed_points(&g, &triv, &s).unwrap();
        assert_eq!(r.fixed_cosets, r.fixed_quotient);
    }
}
