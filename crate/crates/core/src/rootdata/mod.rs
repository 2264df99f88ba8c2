//! Based root data on the standard lattice `Z^rank`.
//!
//! The character lattice `X` and cocharacter lattice `X^vee` are both `Z^rank`
//! with the dot product as the perfect pairing. Roots live in `X`, coroots in
//! `X^vee`. All morphisms are integer matrices acting on column vectors.

mod automorphism;
mod cartan;
mod weyl;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::smith::{smith_normal_form, Mat128};
use crate::linalg::{dot, vadd, vsub, Matrix};

pub use automorphism::{
    block_cyclic_automorphism, folding_table, general_automorphism, norm_matrix, inner_torsion_automorphism,
    pinned_automorphism, pinned_automorphism_with_table, torsion_value, validate_fixed_datum, AutomorphismKind,
    AutomorphismSpec, Check, DatumAutomorphism, ValidationReport,
};
pub use cartan::{bad_prime_table, identify, CartanType, Family};
pub use weyl::WeylElement;

/// A vector in one of the lattices.
pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Isogeny {
    #[serde(rename = "sc", alias = "simply_connected", alias = "simply-connected")]
    SimplyConnected,
    #[serde(rename = "adjoint", alias = "ad")]
    Adjoint,
    #[serde(rename = "general")]
    General,
}

impl Isogeny {
    pub fn dual(self) -> Self {
        match self {
            Isogeny::SimplyConnected => Isogeny::Adjoint,
            Isogeny::Adjoint => Isogeny::SimplyConnected,
            Isogeny::General => Isogeny::General,
        }
    }
}

impl std::str::FromStr for Isogeny {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sc" | "simply_connected" | "simply-connected" => Ok(Isogeny::SimplyConnected),
            "adjoint" | "ad" => Ok(Isogeny::Adjoint),
            "general" | "-" => Ok(Isogeny::General),
            other => Err(Error::Invalid(format!("unknown isogeny `{other}`"))),
        }
    }
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Isogeny::SimplyConnected => "sc",
            Isogeny::Adjoint => "adjoint",
            Isogeny::General => "general",
        })
    }
}

/// File representation (`root_datum.json`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumSpec {
    pub rank: usize,
    pub roots: Vec<Weight>,
    pub coroots: Vec<Weight>,
    pub simple: Vec<usize>,
    pub isogeny: Isogeny,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Weight>,
    coroots: Vec<Weight>,
    simple: Vec<usize>,
    isogeny: Isogeny,
    /// simple-root coordinates of every root
    coords: Vec<Vec<i64>>,
    index: HashMap<Weight, usize>,
    two_rho: Weight,
    two_rho_check: Weight,
    components: Vec<(CartanType, Vec<usize>)>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.roots == other.roots
            && self.coroots == other.coroots
            && self.simple == other.simple
            && self.isogeny == other.isogeny
    }
}

impl Eq for RootDatum {}

const MAX_ROOTS: usize = 100_000;

fn axiom(axiom: &'static str, detail: impl Into<String>) -> Error {
    Error::Axiom { axiom, detail: detail.into() }
}

impl RootDatum {
    /// Validates the datum axioms and derives positivity data.
    pub fn new(
        rank: usize,
        roots: Vec<Weight>,
        coroots: Vec<Weight>,
        simple: Vec<usize>,
        isogeny: Isogeny,
    ) -> Result<Self> {
        if roots.len() != coroots.len() {
            return Err(axiom("shape", "roots and coroots differ in number"));
        }
        if let Some(v) = roots.iter().chain(&coroots).find(|v| v.len() != rank) {
            return Err(axiom("shape", format!("vector {v:?} does not have length {rank}")));
        }
        for (a, c) in roots.iter().zip(&coroots) {
            if dot(a, c) != 2 {
                return Err(axiom("pairing_two", format!("<{a:?}, {c:?}> != 2")));
            }
        }
        let mut index = HashMap::with_capacity(roots.len());
        for (i, r) in roots.iter().enumerate() {
            if index.insert(r.clone(), i).is_some() {
                return Err(axiom("distinct_roots", format!("root {r:?} repeated")));
            }
        }
        if let Some(&s) = simple.iter().find(|&&s| s >= roots.len()) {
            return Err(axiom("shape", format!("simple index {s} out of range")));
        }
        let simple_mat = Matrix::from_columns(&simple.iter().map(|&s| roots[s].clone()).collect::<Vec<_>>(), rank);
        let simple_comat = Matrix::from_columns(&simple.iter().map(|&s| coroots[s].clone()).collect::<Vec<_>>(), rank);
        if crate::linalg::smith::rank(&simple_mat)? != simple.len()
            || crate::linalg::smith::rank(&simple_comat)? != simple.len()
        {
            return Err(axiom("simple_independent", "simple roots or coroots are linearly dependent"));
        }

        // regenerate the root system from the simple roots by simple reflections
        let k = simple.len();
        let mut coords: Vec<Option<Vec<i64>>> = vec![None; roots.len()];
        let mut queue = Vec::new();
        for (pos, &s) in simple.iter().enumerate() {
            let mut e = vec![0; k];
            e[pos] = 1;
            if coords[s].is_some() {
                return Err(axiom("distinct_roots", "simple root listed twice"));
            }
            coords[s] = Some(e);
            queue.push(s);
        }
        let mut head = 0;
        while head < queue.len() {
            let b = queue[head];
            head += 1;
            for (pos, &s) in simple.iter().enumerate() {
                let n = dot(&roots[b], &coroots[s]);
                if n == 0 {
                    continue;
                }
                let img: Weight = roots[b].iter().zip(&roots[s]).map(|(x, y)| x - n * y).collect();
                let m = dot(&roots[s], &coroots[b]);
                let coimg: Weight = coroots[b].iter().zip(&coroots[s]).map(|(x, y)| x - m * y).collect();
                let Some(&j) = index.get(&img) else {
                    return Err(axiom("reflection_closure", format!("s_{} maps {:?} outside the roots", pos + 1, roots[b])));
                };
                if coroots[j] != coimg {
                    return Err(axiom("coroot_compatibility", format!("coroot of {img:?} should be {coimg:?}")));
                }
                if coords[j].is_none() {
                    let mut c = coords[b].clone().unwrap();
                    c[pos] -= n;
                    coords[j] = Some(c);
                    queue.push(j);
                    if queue.len() > MAX_ROOTS {
                        return Err(axiom("finite", "root system too large"));
                    }
                }
            }
        }
        let coords: Vec<Vec<i64>> = match coords.into_iter().collect::<Option<Vec<_>>>() {
            Some(c) => c,
            None => return Err(axiom("reflection_closure", "some roots are not reached from the simple roots")),
        };
        for (r, c) in roots.iter().zip(&coords) {
            if !(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) {
                return Err(axiom("positivity", format!("root {r:?} mixes signs in simple coordinates {c:?}")));
            }
        }
        // closed under every reflection, not just the simple ones
        for (a, ac) in roots.iter().zip(&coroots) {
            for (b, bc) in roots.iter().zip(&coroots) {
                let n = dot(b, ac);
                if n == 0 {
                    continue;
                }
                let img: Weight = b.iter().zip(a).map(|(x, y)| x - n * y).collect();
                let m = dot(a, bc);
                let coimg: Weight = bc.iter().zip(ac).map(|(x, y)| x - m * y).collect();
                match index.get(&img) {
                    Some(&j) if coroots[j] == coimg => {}
                    _ => return Err(axiom("reflection_closure", format!("s_{a:?} does not preserve the roots"))),
                }
            }
        }
        let mut two_rho = vec![0; rank];
        let mut two_rho_check = vec![0; rank];
        for ((r, c), co) in roots.iter().zip(&coroots).zip(&coords) {
            if co.iter().any(|&x| x > 0) {
                for i in 0..rank {
                    two_rho[i] += r[i];
                    two_rho_check[i] += c[i];
                }
            }
        }
        let cartan: Vec<Vec<i64>> = simple
            .iter()
            .map(|&i| simple.iter().map(|&j| dot(&roots[i], &coroots[j])).collect())
            .collect();
        let components = cartan::identify(&cartan)?;
        Ok(RootDatum { rank, roots, coroots, simple, isogeny, coords, index, two_rho, two_rho_check, components })
    }

    pub fn from_spec(spec: &RootDatumSpec) -> Result<Self> {
        RootDatum::new(spec.rank, spec.roots.clone(), spec.coroots.clone(), spec.simple.clone(), spec.isogeny)
    }

    pub fn to_spec(&self) -> RootDatumSpec {
        RootDatumSpec {
            rank: self.rank,
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            simple: self.simple.clone(),
            isogeny: self.isogeny,
        }
    }

    /// Simply connected or adjoint datum of a Cartan type; tori ignore the isogeny.
    pub fn build(ty: CartanType, isogeny: Isogeny) -> Result<Self> {
        if ty.family == Family::Torus {
            return RootDatum::new(ty.rank, vec![], vec![], vec![], Isogeny::General);
        }
        let c = ty.cartan_matrix();
        let n = ty.rank;
        let (simple_roots, simple_coroots): (Vec<Weight>, Vec<Weight>) = match isogeny {
            // X has the fundamental weights as basis, X^vee the simple coroots
            Isogeny::SimplyConnected => (
                (0..n).map(|i| c[i].clone()).collect(),
                (0..n).map(|i| unit(n, i)).collect(),
            ),
            // X has the simple roots as basis, X^vee the fundamental coweights
            Isogeny::Adjoint => (
                (0..n).map(|i| unit(n, i)).collect(),
                (0..n).map(|i| (0..n).map(|j| c[j][i]).collect()).collect(),
            ),
            Isogeny::General => {
                return Err(Error::Invalid("build needs an isogeny of sc or adjoint".into()));
            }
        };
        Self::from_simple(n, &simple_roots, &simple_coroots, isogeny)
    }

    /// Parses labels like `A2`, `B3:adjoint`, `T2`, `A1xA1:sc`.
    pub fn from_label(label: &str) -> Result<Self> {
        let (types, iso) = match label.split_once(':') {
            Some((t, i)) => (t, i.parse()?),
            None => (label, Isogeny::SimplyConnected),
        };
        let factors = types
            .split(['x', '*'])
            .map(|t| t.parse::<CartanType>().and_then(|ty| RootDatum::build(ty, iso)))
            .collect::<Result<Vec<_>>>()?;
        if factors.len() == 1 {
            Ok(factors.into_iter().next().unwrap())
        } else {
            RootDatum::product(&factors)
        }
    }

    fn from_simple(n: usize, simple_roots: &[Weight], simple_coroots: &[Weight], isogeny: Isogeny) -> Result<Self> {
        // closure under simple reflections, tracking (root, coroot, coords)
        let k = simple_roots.len();
        let mut found: Vec<(Weight, Weight, Vec<i64>)> = Vec::new();
        let mut seen: HashMap<Weight, usize> = HashMap::new();
        for i in 0..k {
            let e = unit(k, i);
            seen.insert(simple_roots[i].clone(), found.len());
            found.push((simple_roots[i].clone(), simple_coroots[i].clone(), e));
        }
        let mut head = 0;
        while head < found.len() {
            let (r, c, co) = found[head].clone();
            head += 1;
            for i in 0..k {
                let m = dot(&r, &simple_coroots[i]);
                if m == 0 {
                    continue;
                }
                let img: Weight = r.iter().zip(&simple_roots[i]).map(|(x, y)| x - m * y).collect();
                if seen.contains_key(&img) {
                    continue;
                }
                let p = dot(&simple_roots[i], &c);
                let coimg: Weight = c.iter().zip(&simple_coroots[i]).map(|(x, y)| x - p * y).collect();
                let mut cc = co.clone();
                cc[i] -= m;
                seen.insert(img.clone(), found.len());
                found.push((img, coimg, cc));
                if found.len() > MAX_ROOTS {
                    return Err(axiom("finite", "root system too large"));
                }
            }
        }
        // positive roots sorted by height then coordinates; negatives follow in the same order
        let mut positive: Vec<_> = found.into_iter().filter(|(_, _, co)| co.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.2.iter().sum();
            let hb: i64 = b.2.iter().sum();
            ha.cmp(&hb).then_with(|| b.2.cmp(&a.2))
        });
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        for (r, c, _) in &positive {
            roots.push(r.clone());
            coroots.push(c.clone());
        }
        for (r, c, _) in &positive {
            roots.push(r.iter().map(|x| -x).collect());
            coroots.push(c.iter().map(|x| -x).collect());
        }
        let simple = (0..k).collect();
        RootDatum::new(n, roots, coroots, simple, isogeny)
    }

    /// Direct product; lattices are concatenated.
    pub fn product(factors: &[RootDatum]) -> Result<Self> {
        let rank: usize = factors.iter().map(|d| d.rank).sum();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut simple = Vec::new();
        let mut offset = 0;
        for d in factors {
            let base = roots.len();
            let pad = |v: &Weight| {
                let mut w = vec![0; rank];
                w[offset..offset + d.rank].copy_from_slice(v);
                w
            };
            roots.extend(d.roots.iter().map(pad));
            coroots.extend(d.coroots.iter().map(pad));
            simple.extend(d.simple.iter().map(|s| s + base));
            offset += d.rank;
        }
        let iso = match factors.first().map(|d| d.isogeny) {
            Some(i) if factors.iter().all(|d| d.isogeny == i) => i,
            _ => Isogeny::General,
        };
        RootDatum::new(rank, roots, coroots, simple, iso)
    }

    /// Exchanges roots with coroots and lattice with co-lattice.
    pub fn dual(&self) -> RootDatum {
        RootDatum::new(self.rank, self.coroots.clone(), self.roots.clone(), self.simple.clone(), self.isogeny.dual())
            .expect("the dual of a valid root datum is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Weight] {
        &self.coroots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn isogeny(&self) -> Isogeny {
        self.isogeny
    }

    /// Indices (into `roots`) of the simple roots.
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn is_semisimple(&self) -> bool {
        self.simple.len() == self.rank
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.roots[self.simple[i]]
    }

    pub fn simple_coroot(&self, i: usize) -> &Weight {
        &self.coroots[self.simple[i]]
    }

    pub fn root_coords(&self, i: usize) -> &[i64] {
        &self.coords[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.coords[i].iter().any(|&x| x > 0)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.is_positive(i))
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn coroot_of(&self, r: &[i64]) -> Option<&Weight> {
        self.root_index(r).map(|i| &self.coroots[i])
    }

    /// Sum of the positive roots.
    pub fn two_rho(&self) -> &Weight {
        &self.two_rho
    }

    /// Sum of the positive coroots.
    pub fn two_rho_check(&self) -> &Weight {
        &self.two_rho_check
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|&i| self.simple.iter().map(|&j| dot(&self.roots[i], &self.coroots[j])).collect())
            .collect()
    }

    /// Simple factors with the positions (in simple order) they occupy.
    pub fn components(&self) -> &[(CartanType, Vec<usize>)] {
        &self.components
    }

    /// Maximum of the excluded-prime table over simple factors; 1 for a torus.
    pub fn bad_prime_bound(&self) -> u64 {
        self.components.iter().map(|(t, _)| t.bad_prime_bound()).max().unwrap_or(1)
    }

    /// Human label such as `A1xB2/sc` or `T2`.
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self.components.iter().map(|(t, _)| t.to_string()).collect();
        let central = self.rank - self.simple.len();
        if central > 0 {
            parts.push(format!("T{central}"));
        }
        if parts.is_empty() {
            parts.push("T0".into());
        }
        let body = parts.join("x");
        if self.simple.is_empty() {
            body
        } else {
            format!("{body}/{}", self.isogeny)
        }
    }

    /// Whether the coroots span `X^vee` (simply connected derived group, no torus).
    pub fn coroots_span_colattice(&self) -> Result<bool> {
        spans_lattice(&self.coroots, self.rank)
    }

    /// Whether the roots span `X`.
    pub fn roots_span_lattice(&self) -> Result<bool> {
        spans_lattice(&self.roots, self.rank)
    }

    /// Index of the root lattice in its saturation times the torsion-free part: `|X_tors / ZΦ|`
    /// when `Φ` spans over `Q`.
    pub fn root_lattice_index(&self) -> Result<Option<i128>> {
        lattice_index(&self.roots, self.rank)
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        dot(x, y)
    }

    /// `s_i(x) = x - <x, alpha_i^vee> alpha_i` on `X`.
    pub fn reflect(&self, x: &[i64], i: usize) -> Weight {
        let n = dot(x, self.simple_coroot(i));
        x.iter().zip(self.simple_root(i)).map(|(a, b)| a - n * b).collect()
    }

    /// Reflection in an arbitrary root (by index into `roots`).
    pub fn reflect_in_root(&self, x: &[i64], r: usize) -> Weight {
        let n = dot(x, &self.coroots[r]);
        x.iter().zip(&self.roots[r]).map(|(a, b)| a - n * b).collect()
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        (0..self.simple.len()).all(|i| dot(x, self.simple_coroot(i)) >= 0)
    }

    /// Dominant representative of the Weyl orbit of `x`.
    pub fn dominant_rep(&self, x: &[i64]) -> Weight {
        let mut w = x.to_vec();
        'outer: loop {
            for i in 0..self.simple.len() {
                if dot(&w, self.simple_coroot(i)) < 0 {
                    w = self.reflect(&w, i);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Weyl orbit of `x`, sorted.
    pub fn orbit(&self, x: &[i64]) -> Vec<Weight> {
        let start = self.dominant_rep(x);
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(w) = stack.pop() {
            for i in 0..self.simple.len() {
                if dot(&w, self.simple_coroot(i)) > 0 {
                    let v = self.reflect(&w, i);
                    if seen.insert(v.clone()) {
                        stack.push(v);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `<x, 2 rho^vee>`, the height functional on `X`.
    pub fn height(&self, x: &[i64]) -> i64 {
        dot(x, &self.two_rho_check)
    }

    /// `<2 rho, y>` for `y` in `X^vee`.
    pub fn coheight(&self, y: &[i64]) -> i64 {
        dot(&self.two_rho, y)
    }

    /// W-invariant integral form on `X`: `B(x, y) = sum_alpha <x, alpha^vee><y, alpha^vee>`.
    pub fn invariant_form(&self, x: &[i64], y: &[i64]) -> i64 {
        self.coroots.iter().map(|c| dot(x, c) * dot(y, c)).sum()
    }

    /// Difference `x - y` expressed as an integer combination of simple roots, if it is one.
    pub fn simple_root_coords(&self, x: &[i64]) -> Result<Option<Vec<i64>>> {
        let cols: Vec<Vec<i128>> =
            (0..self.simple.len()).map(|i| self.simple_root(i).iter().map(|&v| v as i128).collect()).collect();
        let m = Mat128::from_columns(&cols, self.rank);
        let b: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        Ok(crate::linalg::smith::solve(&m, &b)?.map(|v| v.into_iter().map(|c| c as i64).collect()))
    }

    /// Dominant weights with `<lambda, 2 rho^vee> <= bound`, sorted by height then
    /// coordinates; central directions are enumerated in the box `[-central_box, central_box]`.
    pub fn dominant_weights(&self, bound: i64, central_box: i64) -> Result<Vec<Weight>> {
        let r = self.semisimple_rank();
        let n = self.rank;
        let a = Matrix::from_rows_with_cols(&(0..r).map(|i| self.simple_coroot(i).clone()).collect::<Vec<_>>(), n)?;
        let a128 = Mat128::from_matrix(&a);
        let smith = smith_normal_form(&a128)?;
        let central: Vec<Weight> = crate::linalg::smith::kernel(&a128)?
            .into_iter()
            .map(|v| v.into_iter().map(|x| x as i64).collect())
            .collect();
        let mut shifts: Vec<Weight> = vec![vec![0; n]];
        for z in &central {
            let mut next = Vec::new();
            for s in &shifts {
                for k in -central_box..=central_box {
                    next.push(s.iter().zip(z).map(|(a, b)| a + k * b).collect());
                }
            }
            shifts = next;
        }
        let mut out = Vec::new();
        let mut c = vec![0i64; r];
        // each fundamental weight has height at least 1, so sum c_i <= bound
        fn rec(
            d: &RootDatum,
            i: usize,
            budget: i64,
            c: &mut Vec<i64>,
            smith: &crate::linalg::smith::Smith,
            shifts: &[Weight],
            bound: i64,
            out: &mut Vec<Weight>,
        ) -> Result<()> {
            if i == c.len() {
                let b: Vec<i128> = c.iter().map(|&x| x as i128).collect();
                if let Some(x) = smith.solve(&b)? {
                    let x: Weight = x.into_iter().map(|v| v as i64).collect();
                    if d.height(&x) <= bound {
                        for s in shifts {
                            out.push(vadd(&x, s));
                        }
                    }
                }
                return Ok(());
            }
            for v in 0..=budget {
                c[i] = v;
                rec(d, i + 1, budget - v, c, smith, shifts, bound, out)?;
            }
            c[i] = 0;
            Ok(())
        }
        rec(self, 0, bound.max(0), &mut c, &smith, &shifts, bound, &mut out)?;
        out.sort_by(|x, y| self.height(x).cmp(&self.height(y)).then_with(|| x.cmp(y)));
        out.dedup();
        Ok(out)
    }

    /// Whether `mu <= lambda` in the dominance order.
    pub fn dominates(&self, lambda: &[i64], mu: &[i64]) -> Result<bool> {
        Ok(self.simple_root_coords(&vsub(lambda, mu))?.is_some_and(|c| c.iter().all(|&x| x >= 0)))
    }
}

fn unit(n: usize, i: usize) -> Weight {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn spans_lattice(vs: &[Weight], n: usize) -> Result<bool> {
    let cols: Vec<Vec<i128>> = vs.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    let s = smith_normal_form(&Mat128::from_columns(&cols, n))?;
    Ok(s.rank() == n && s.diag.iter().all(|&d| d == 1))
}

fn lattice_index(vs: &[Weight], n: usize) -> Result<Option<i128>> {
    let cols: Vec<Vec<i128>> = vs.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
    let s = smith_normal_form(&Mat128::from_columns(&cols, n))?;
    if s.rank() < n {
        return Ok(None);
    }
    Ok(Some(s.diag.iter().product()))
}

impl Serialize for RootDatum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = RootDatumSpec::deserialize(d)?;
        RootDatum::from_spec(&spec).map_err(serde::de::Error::custom)
    }
}

/// Root datum of a Cartan type (`build_root_datum`).
pub fn build_root_datum(ty: CartanType, isogeny: Isogeny) -> Result<RootDatum> {
    RootDatum::build(ty, isogeny)
}

/// Langlands-dual root datum.
pub fn dual_datum(d: &RootDatum) -> RootDatum {
    d.dual()
}

pub fn bad_prime_bound(d: &RootDatum) -> u64 {
    d.bad_prime_bound()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(label: &str) -> RootDatum {
        RootDatum::from_label(label).unwrap()
    }

    #[test]
    fn a1_is_rank_one_with_two_roots() {
        let d = datum("A1");
        assert_eq!(d.rank(), 1);
        assert_eq!(d.num_roots(), 2);
        for (r, c) in d.roots().iter().zip(d.coroots()) {
            assert_eq!(dot(r, c), 2);
        }
    }

    #[test]
    fn root_counts_match_types() {
        for (l, n) in [("A3", 12), ("B2", 8), ("B3", 18), ("C3", 18), ("D4", 24), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240)] {
            assert_eq!(datum(l).num_roots(), n, "{l}");
        }
    }

    #[test]
    fn torus_has_no_roots() {
        let d = datum("T3");
        assert_eq!(d.rank(), 3);
        assert_eq!(d.num_roots(), 0);
        assert_eq!(d.bad_prime_bound(), 1);
        assert_eq!(d.label(), "T3");
    }

    #[test]
    fn dual_is_an_involution() {
        for l in ["A1", "A2:adjoint", "B3", "C2:adjoint", "G2", "D4", "A1xB2"] {
            let d = datum(l);
            assert_eq!(d.dual().dual(), d, "{l}");
        }
    }

    #[test]
    fn dual_of_sc_a1_is_adjoint() {
        let d = datum("A1");
        assert!(d.coroots_span_colattice().unwrap());
        assert!(!d.roots_span_lattice().unwrap());
        let e = d.dual();
        assert_eq!(e.isogeny(), Isogeny::Adjoint);
        assert!(e.roots_span_lattice().unwrap());
        assert_eq!(e.roots(), datum("A1:adjoint").roots());
    }

    #[test]
    fn dual_of_b2_swaps_long_and_short() {
        let d = datum("B2");
        let e = d.dual();
        assert_eq!(e.components()[0].0.to_string(), "C2");
        // long roots of B2 correspond to short coroots
        let len = |d: &RootDatum, r: &Weight| d.invariant_form(r, r);
        let max_b = d.roots().iter().map(|r| len(&d, r)).max().unwrap();
        for (i, r) in d.roots().iter().enumerate() {
            let long_in_b = len(&d, r) == max_b;
            let c = &e.roots()[i];
            let max_c = e.roots().iter().map(|r| len(&e, r)).max().unwrap();
            assert_eq!(long_in_b, len(&e, c) != max_c);
        }
    }

    #[test]
    fn two_rho_is_sum_of_positive_roots() {
        let d = datum("A2");
        // sc basis = fundamental weights: 2 rho = 2 omega_1 + 2 omega_2
        assert_eq!(d.two_rho(), &vec![2, 2]);
        assert_eq!(d.positive_roots().count(), 3);
    }

    #[test]
    fn corrupted_coroot_rejected() {
        let mut spec = datum("A2").to_spec();
        spec.coroots[0] = vec![2, 0];
        spec.coroots[0][1] = 1;
        assert!(RootDatum::from_spec(&spec).is_err());
    }

    #[test]
    fn bad_prime_bound_of_product_is_max() {
        let d = datum("C3xA2");
        assert_eq!(d.bad_prime_bound(), 3);
        let e = RootDatum::product(&[datum("B2"), datum("G2"), datum("T1")]).unwrap();
        assert_eq!(e.bad_prime_bound(), 3);
    }

    #[test]
    fn json_round_trip() {
        let d = datum("B2");
        let s = serde_json::to_string(&d).unwrap();
        let e: RootDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(d, e);
    }
}
