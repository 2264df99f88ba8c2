//! Weyl group elements as integer matrices on `X`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::RootDatum;
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};

/// A Weyl group element, stored as its matrix on the character lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    pub matrix: Matrix,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { matrix: Matrix::identity(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix.apply(x)
    }

    /// Contragredient action on `X^vee`, i.e. `(w^{-1})^T`.
    pub fn coaction(&self, d: &RootDatum) -> Matrix {
        d.weyl_inverse(self).matrix.transpose()
    }
}

impl RootDatum {
    /// Matrix of `s_i` on `X`: `x - <x, alpha_i^vee> alpha_i`.
    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        let n = self.rank();
        let a = self.simple_root(i);
        let c = self.simple_coroot(i);
        let mut m = Matrix::identity(n);
        for r in 0..n {
            for s in 0..n {
                m[(r, s)] -= a[r] * c[s];
            }
        }
        WeylElement { matrix: m }
    }

    /// `s_{i_1} s_{i_2} ... s_{i_k}` for the word `[i_1, .., i_k]` (0-based).
    pub fn weyl_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = WeylElement::identity(self.rank());
        for &i in word {
            if i >= self.semisimple_rank() {
                return Err(Error::Invalid(format!("simple reflection s{} out of range", i + 1)));
            }
            w = w.compose(&self.simple_reflection(i));
        }
        Ok(w)
    }

    /// Parses words like `"s1 s2"`, `"s1s2"` or `"1 2"` (1-based); empty means identity.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',' || c == 's' || c == '*').filter(|t| !t.is_empty()) {
            let k: usize = tok.parse().map_err(|_| Error::Invalid(format!("bad Weyl word token `{tok}`")))?;
            if k == 0 || k > self.semisimple_rank() {
                return Err(Error::Invalid(format!("simple reflection s{k} out of range")));
            }
            out.push(k - 1);
        }
        Ok(out)
    }

    /// Image of every root under `w`, as root indices.
    fn root_images(&self, w: &WeylElement) -> Result<Vec<usize>> {
        self.roots()
            .iter()
            .map(|r| {
                self.root_index(&w.apply(r))
                    .ok_or_else(|| Error::Invalid("matrix does not permute the roots".into()))
            })
            .collect()
    }

    /// Number of positive roots sent to negative roots.
    pub fn weyl_length(&self, w: &WeylElement) -> Result<usize> {
        let img = self.root_images(w)?;
        Ok(self.positive_roots().filter(|&i| !self.is_positive(img[i])).count())
    }

    /// Lexicographically smallest reduced word (built from left descents).
    pub fn reduced_word(&self, w: &WeylElement) -> Result<Vec<usize>> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        loop {
            let img = self.root_images(&cur)?;
            // left descent i  <=>  cur^{-1}(alpha_i) < 0  <=>  the preimage of alpha_i is negative
            let mut pre = vec![usize::MAX; self.num_roots()];
            for (b, &j) in img.iter().enumerate() {
                pre[j] = b;
            }
            let desc = (0..self.semisimple_rank()).find(|&i| !self.is_positive(pre[self.simple_indices()[i]]));
            match desc {
                Some(i) => {
                    word.push(i);
                    cur = self.simple_reflection(i).compose(&cur);
                }
                None => break,
            }
        }
        if !cur.is_identity() {
            return Err(Error::Invalid("matrix is not in the Weyl group".into()));
        }
        Ok(word)
    }

    pub fn weyl_inverse(&self, w: &WeylElement) -> WeylElement {
        let mut word = self.reduced_word(w).expect("Weyl element");
        word.reverse();
        self.weyl_from_word(&word).expect("valid word")
    }

    /// Whether the element lies in the Weyl group (permutes roots and reduces to 1).
    pub fn is_weyl_element(&self, m: &Matrix) -> bool {
        m.rows() == self.rank()
            && m.cols() == self.rank()
            && self.reduced_word(&WeylElement { matrix: m.clone() }).is_ok()
    }

    /// All elements in breadth-first order of length; fails beyond `cap`.
    pub fn weyl_elements(&self, cap: usize) -> Result<Vec<WeylElement>> {
        self.subgroup_elements(&(0..self.semisimple_rank()).map(|i| self.simple_reflection(i)).collect::<Vec<_>>(), cap)
    }

    /// Subgroup generated by `gens`, breadth first from the identity.
    pub fn subgroup_elements(&self, gens: &[WeylElement], cap: usize) -> Result<Vec<WeylElement>> {
        let id = WeylElement::identity(self.rank());
        let mut seen = HashSet::new();
        seen.insert(id.clone());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in gens {
                let v = g.compose(&w);
                if seen.insert(v.clone()) {
                    if out.len() >= cap {
                        return Err(Error::Bound(format!("subgroup exceeds {cap} elements")));
                    }
                    out.push(v.clone());
                    queue.push_back(v);
                }
            }
        }
        Ok(out)
    }

    /// Order of the Weyl group from the type table.
    pub fn weyl_order(&self) -> u128 {
        use super::Family::*;
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        self.components()
            .iter()
            .map(|(t, _)| match t.family {
                A => fact(t.rank + 1),
                B | C => (1u128 << t.rank) * fact(t.rank),
                D => (1u128 << (t.rank - 1)) * fact(t.rank),
                E => match t.rank {
                    6 => 51_840,
                    7 => 2_903_040,
                    _ => 696_729_600,
                },
                F => 1152,
                G => 12,
                Torus => 1,
            })
            .product()
    }

    /// No nonzero fixed vector on `X ⊗ Q`.
    pub fn is_elliptic(&self, w: &WeylElement) -> Result<bool> {
        let n = self.rank();
        let m = w.matrix.sub(&Matrix::identity(n));
        Ok(crate::linalg::smith::rank(&m)? == n)
    }

    /// Reflection in the root with index `r`, as a matrix on `X`.
    pub fn root_reflection(&self, r: usize) -> WeylElement {
        let n = self.rank();
        let a = &self.roots()[r];
        let c = &self.coroots()[r];
        let mut m = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] -= a[i] * c[j];
            }
        }
        WeylElement { matrix: m }
    }

    /// Pairing check used by tests: `w` preserves `<x, y>` when acting by `(w, (w^{-1})^T)`.
    pub fn preserves_pairing(&self, w: &WeylElement, x: &[i64], y: &[i64]) -> bool {
        let wy = w.coaction(self).apply(y);
        dot(&w.apply(x), &wy) == dot(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(label: &str) -> RootDatum {
        RootDatum::from_label(label).unwrap()
    }

    #[test]
    fn b2_weyl_group_has_order_eight() {
        let d = datum("B2");
        assert_eq!(d.weyl_elements(1000).unwrap().len(), 8);
        assert_eq!(d.weyl_order(), 8);
    }

    #[test]
    fn enumerated_orders_match_table() {
        for l in ["A1", "A3", "C3", "D4", "G2", "A1xA2"] {
            let d = datum(l);
            assert_eq!(d.weyl_elements(100_000).unwrap().len() as u128, d.weyl_order(), "{l}");
        }
    }

    #[test]
    fn torus_weyl_group_is_trivial() {
        let d = datum("T3");
        assert_eq!(d.weyl_elements(10).unwrap().len(), 1);
    }

    #[test]
    fn reduced_words_round_trip() {
        let d = datum("A3");
        for w in d.weyl_elements(100).unwrap() {
            let word = d.reduced_word(&w).unwrap();
            assert_eq!(word.len(), d.weyl_length(&w).unwrap());
            assert_eq!(d.weyl_from_word(&word).unwrap(), w);
        }
    }

    #[test]
    fn coxeter_element_is_elliptic() {
        let d = datum("A2");
        let c = d.weyl_from_word(&[0, 1]).unwrap();
        assert!(d.is_elliptic(&c).unwrap());
        assert!(!d.is_elliptic(&d.simple_reflection(0)).unwrap());
    }

    #[test]
    fn coaction_preserves_pairing() {
        let d = datum("G2");
        let x = vec![3, -1];
        let y = vec![2, 5];
        for w in d.weyl_elements(100).unwrap() {
            assert!(d.preserves_pairing(&w, &x, &y));
        }
    }

    #[test]
    fn parse_words() {
        let d = datum("A2");
        assert_eq!(d.parse_word("s1 s2").unwrap(), vec![0, 1]);
        assert_eq!(d.parse_word("").unwrap(), Vec::<usize>::new());
        assert!(d.parse_word("s3").is_err());
    }
}
