//! Order-`l` automorphisms of root data and their fixed root data.
//!
//! `matrix` acts on `X`; the induced action on `X^vee` is `(matrix^{-1})^T`.
//! The `embedding` is an `rank(G) x rank(H)` integer matrix sending `X^vee(H)`
//! isomorphically onto the fixed sublattice `X^vee(G)^sigma`; restriction of
//! characters is its transpose.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{CartanType, Family, Isogeny, RootDatum, Weight};
use crate::error::{Error, Result};
use crate::linalg::smith::{self, solve_int, Mat128};
use crate::linalg::{dot, is_prime, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutomorphismKind {
    /// Identity on the lattice; `t` gives values in `Z/l` on the simple roots.
    InnerTorsion { t: Vec<i64> },
    /// Diagram automorphism; `perm[i]` is the image of simple node `i`.
    Pinned { perm: Vec<usize> },
    /// Cyclic shift of `l` copies of a datum of the given rank.
    BlockCyclic { factor_rank: usize },
    General,
}

impl AutomorphismKind {
    pub fn name(&self) -> &'static str {
        match self {
            AutomorphismKind::InnerTorsion { .. } => "inner_torsion",
            AutomorphismKind::Pinned { .. } => "pinned",
            AutomorphismKind::BlockCyclic { .. } => "block_cyclic",
            AutomorphismKind::General => "general",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumAutomorphism {
    pub base: RootDatum,
    pub matrix: Matrix,
    pub order: u64,
    pub kind: AutomorphismKind,
    pub fixed_datum: RootDatum,
    pub embedding: Matrix,
}

/// File representation (`automorphism.json`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismSpec {
    pub kind: String,
    pub matrix: Vec<Vec<i64>>,
    pub order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_datum: Option<super::RootDatumSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<Vec<i64>>>,
}

fn check_prime(ell: u64) -> Result<()> {
    if is_prime(ell) {
        Ok(())
    } else {
        Err(Error::NotPrime(ell))
    }
}

impl DatumAutomorphism {
    pub fn ell(&self) -> u64 {
        self.order
    }

    /// Action on `X^vee`: `(M^{-1})^T = (M^{l-1})^T`.
    pub fn comatrix(&self) -> Matrix {
        self.matrix.pow(self.order - 1).transpose()
    }

    /// `1 + M + .. + M^{l-1}` on `X`.
    pub fn norm_matrix(&self) -> Matrix {
        norm_matrix(&self.matrix, self.order)
    }

    /// Restriction `X(G) -> X(H)`, the transpose of the embedding.
    pub fn restrict(&self, x: &[i64]) -> Weight {
        self.embedding.transpose().apply(x)
    }

    /// Preimage of a fixed cocharacter under the embedding.
    pub fn to_fixed(&self, y: &[i64]) -> Result<Option<Weight>> {
        solve_int(&self.embedding, y)
    }

    /// Whether `y` in `X^vee(G)` is fixed.
    pub fn fixes_cocharacter(&self, y: &[i64]) -> bool {
        self.comatrix().apply(y) == y
    }

    pub fn to_spec(&self) -> AutomorphismSpec {
        let (t, perm) = match &self.kind {
            AutomorphismKind::InnerTorsion { t } => (Some(t.clone()), None),
            AutomorphismKind::Pinned { perm } => (None, Some(perm.clone())),
            _ => (None, None),
        };
        let general = self.kind == AutomorphismKind::General;
        AutomorphismSpec {
            kind: self.kind.name().into(),
            matrix: self.matrix.to_rows(),
            order: self.order,
            t,
            perm,
            fixed_datum: general.then(|| self.fixed_datum.to_spec()),
            embedding: general.then(|| self.embedding.to_rows()),
        }
    }

    /// Rebuilds from the file format against a given base datum; the stored
    /// matrix must agree with the one the kind determines.
    pub fn from_spec(base: &RootDatum, spec: &AutomorphismSpec) -> Result<Self> {
        check_prime(spec.order)?;
        let n = base.rank();
        let matrix = Matrix::from_rows_with_cols(&spec.matrix, n)?;
        if matrix.rows() != n {
            return Err(Error::Shape(format!("automorphism matrix must be {n}x{n}")));
        }
        let a = match spec.kind.as_str() {
            "inner_torsion" => {
                let t = spec.t.clone().ok_or_else(|| Error::Invalid("inner_torsion needs `t`".into()))?;
                inner_torsion_automorphism(base, &t, spec.order)?
            }
            "pinned" => {
                let perm = spec.perm.clone().ok_or_else(|| Error::Invalid("pinned needs `perm`".into()))?;
                pinned_automorphism(base, &perm, spec.order)?
            }
            "block_cyclic" => {
                let ell = spec.order as usize;
                if !n.is_multiple_of(ell) || !base.num_roots().is_multiple_of(ell) || !base.semisimple_rank().is_multiple_of(ell) {
                    return Err(Error::Invalid("base is not an l-fold product".into()));
                }
                let r = n / ell;
                let k = base.num_roots() / ell;
                let trunc = |v: &Weight| v[..r].to_vec();
                let factor = RootDatum::new(
                    r,
                    base.roots()[..k].iter().map(trunc).collect(),
                    base.coroots()[..k].iter().map(trunc).collect(),
                    base.simple_indices()[..base.semisimple_rank() / ell].to_vec(),
                    base.isogeny(),
                )?;
                let a = block_cyclic_automorphism(&factor, spec.order)?;
                if &a.base != base {
                    return Err(Error::Invalid("base is not the l-fold power of its first block".into()));
                }
                a
            }
            "general" => {
                let fixed = spec
                    .fixed_datum
                    .as_ref()
                    .ok_or_else(|| Error::Invalid("general automorphism needs `fixed_datum`".into()))?;
                let fixed = RootDatum::from_spec(fixed)?;
                let emb = spec
                    .embedding
                    .as_ref()
                    .ok_or_else(|| Error::Invalid("general automorphism needs `embedding`".into()))?;
                let emb = Matrix::from_rows_with_cols(emb, fixed.rank())?;
                general_automorphism(base, matrix.clone(), spec.order, fixed, emb)?
            }
            other => return Err(Error::Invalid(format!("unknown automorphism kind `{other}`"))),
        };
        if a.matrix != matrix {
            return Err(Error::Invalid(format!("matrix does not match the {} automorphism", spec.kind)));
        }
        Ok(a)
    }
}

impl Serialize for DatumAutomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

pub fn norm_matrix(m: &Matrix, ell: u64) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    let mut p = Matrix::identity(n);
    for _ in 0..ell {
        acc = acc.add(&p);
        p = m.mul(&p);
    }
    acc
}


fn infer_isogeny(rank: usize, roots: &[Weight], coroots: &[Weight]) -> Result<Isogeny> {
    if roots.is_empty() {
        return Ok(Isogeny::General);
    }
    let spans = |vs: &[Weight]| -> Result<bool> {
        let cols: Vec<Vec<i128>> = vs.iter().map(|v| v.iter().map(|&x| x as i128).collect()).collect();
        let s = smith::smith_normal_form(&Mat128::from_columns(&cols, rank))?;
        Ok(s.rank() == rank && s.diag.iter().all(|&d| d == 1))
    };
    Ok(if spans(coroots)? {
        Isogeny::SimplyConnected
    } else if spans(roots)? {
        Isogeny::Adjoint
    } else {
        Isogeny::General
    })
}

/// Sub-datum on the roots selected by `keep`, same lattices.
fn sub_datum(d: &RootDatum, keep: impl Fn(usize) -> bool) -> Result<RootDatum> {
    let idx: Vec<usize> = (0..d.num_roots()).filter(|&i| keep(i)).collect();
    let roots: Vec<Weight> = idx.iter().map(|&i| d.roots()[i].clone()).collect();
    let coroots: Vec<Weight> = idx.iter().map(|&i| d.coroots()[i].clone()).collect();
    let pos: Vec<usize> = (0..idx.len()).filter(|&k| d.is_positive(idx[k])).collect();
    let pos_set: BTreeSet<&Weight> = pos.iter().map(|&k| &roots[k]).collect();
    // simple roots of the subsystem: positive roots that are not sums of two positive ones
    let simple: Vec<usize> = pos
        .iter()
        .copied()
        .filter(|&k| {
            !pos.iter().any(|&a| {
                let diff: Weight = roots[k].iter().zip(&roots[a]).map(|(x, y)| x - y).collect();
                pos_set.contains(&diff)
            })
        })
        .collect();
    let iso = infer_isogeny(d.rank(), &roots, &coroots)?;
    RootDatum::new(d.rank(), roots, coroots, simple, iso)
}

/// Identity on the lattice with torsion element given by its values `t` on the simple roots.
pub fn inner_torsion_automorphism(d: &RootDatum, t: &[i64], ell: u64) -> Result<DatumAutomorphism> {
    check_prime(ell)?;
    if t.len() != d.semisimple_rank() {
        return Err(Error::Shape(format!(
            "t has {} entries but the datum has {} simple roots",
            t.len(),
            d.semisimple_rank()
        )));
    }
    let l = ell as i64;
    let t: Vec<i64> = t.iter().map(|x| x.rem_euclid(l)).collect();
    let value = |i: usize| dot(d.root_coords(i), &t).rem_euclid(l);
    let fixed = sub_datum(d, |i| value(i) == 0)?;
    Ok(DatumAutomorphism {
        base: d.clone(),
        matrix: Matrix::identity(d.rank()),
        order: ell,
        kind: AutomorphismKind::InnerTorsion { t },
        fixed_datum: fixed,
        embedding: Matrix::identity(d.rank()),
    })
}

/// Value `t(alpha) mod l` of an inner automorphism on a root.
pub fn torsion_value(a: &DatumAutomorphism, root: usize) -> Option<i64> {
    match &a.kind {
        AutomorphismKind::InnerTorsion { t } => {
            Some(dot(a.base.root_coords(root), t).rem_euclid(a.order as i64))
        }
        _ => None,
    }
}

/// Type of the fixed datum of a diagram automorphism of order `ell`, per the folding table.
pub fn folding_table(ty: CartanType, ell: u64) -> Option<CartanType> {
    let n = ty.rank;
    let t = |f, r| CartanType::new(f, r).ok();
    match (ty.family, ell) {
        (Family::A, 2) if n >= 2 && n.is_multiple_of(2) => {
            if n == 2 {
                t(Family::A, 1)
            } else {
                t(Family::B, n / 2)
            }
        }
        (Family::A, 2) if n >= 3 => t(Family::C, n.div_ceil(2)),
        (Family::D, 2) => t(Family::B, n - 1),
        (Family::D, 3) if n == 4 => t(Family::G, 2),
        (Family::E, 2) if n == 6 => t(Family::F, 4),
        _ => None,
    }
}

/// Diagram automorphism of a simply connected simple datum.
pub fn pinned_automorphism(d: &RootDatum, perm: &[usize], ell: u64) -> Result<DatumAutomorphism> {
    pinned_automorphism_with_table(d, perm, ell, folding_table)
}

/// As [`pinned_automorphism`] with a caller-supplied folding table (used by negative controls).
pub fn pinned_automorphism_with_table(
    d: &RootDatum,
    perm: &[usize],
    ell: u64,
    table: impl Fn(CartanType, u64) -> Option<CartanType>,
) -> Result<DatumAutomorphism> {
    check_prime(ell)?;
    let k = d.semisimple_rank();
    if perm.len() != k || (0..k).any(|i| !perm.contains(&i)) {
        return Err(Error::Invalid(format!("{perm:?} is not a permutation of the {k} simple nodes")));
    }
    let c = d.cartan_matrix();
    for i in 0..k {
        for j in 0..k {
            if c[perm[i]][perm[j]] != c[i][j] {
                return Err(Error::Invalid(format!("{perm:?} is not a Dynkin diagram automorphism")));
            }
        }
    }
    let mut p = (0..k).collect::<Vec<_>>();
    let mut ord = 0u64;
    loop {
        p = p.iter().map(|&i| perm[i]).collect();
        ord += 1;
        if p.iter().enumerate().all(|(i, &x)| i == x) {
            break;
        }
    }
    if ord != ell {
        return Err(Error::Invalid(format!("diagram permutation has order {ord}, expected {ell}")));
    }
    if !d.is_semisimple() || d.components().len() != 1 {
        return Err(Error::UnsupportedAutomorphism("pinned folding needs a simple datum".into()));
    }
    if !d.coroots_span_colattice()? {
        return Err(Error::UnsupportedAutomorphism("pinned folding needs a simply connected datum".into()));
    }
    let ty = d.components()[0].0;
    let expected = table(ty, ell)
        .ok_or_else(|| Error::UnsupportedAutomorphism(format!("no folding of {ty} by a permutation of order {ell}")))?;

    // X^vee has the simple coroots as a basis; sigma permutes them
    let n = d.rank();
    let simple_co: Vec<Weight> = (0..k).map(|i| d.simple_coroot(i).clone()).collect();
    let cmat = Matrix::from_columns(&simple_co, n);
    let permuted: Vec<Weight> = (0..k).map(|i| simple_co[perm[i]].clone()).collect();
    let pmat = Matrix::from_columns(&permuted, n);
    // P_vee = pmat * cmat^{-1}
    let mut cinv_cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        cinv_cols.push(solve_int(&cmat, &e)?.ok_or_else(|| Error::Internal("coroot basis not unimodular".into()))?);
    }
    let cinv = Matrix::from_columns(&cinv_cols, n);
    let p_vee = pmat.mul(&cinv);
    let matrix = p_vee.pow(ell - 1).transpose();

    // fixed sublattice of X^vee: orbit sums of simple coroots, orbits ordered by smallest node
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; k];
    for i in 0..k {
        if seen[i] {
            continue;
        }
        let mut o = vec![i];
        seen[i] = true;
        let mut j = perm[i];
        while j != i {
            o.push(j);
            seen[j] = true;
            j = perm[j];
        }
        orbits.push(o);
    }
    let emb_cols: Vec<Weight> = orbits
        .iter()
        .map(|o| {
            let mut v = vec![0; n];
            for &j in o {
                for (x, y) in v.iter_mut().zip(&simple_co[j]) {
                    *x += y;
                }
            }
            v
        })
        .collect();
    let embedding = Matrix::from_columns(&emb_cols, n);
    let proto = DatumAutomorphism {
        base: d.clone(),
        matrix,
        order: ell,
        kind: AutomorphismKind::Pinned { perm: perm.to_vec() },
        fixed_datum: d.clone(),
        embedding,
    };
    let simple_orbit_reps: Vec<usize> = orbits.iter().map(|o| d.simple_indices()[o[0]]).collect();
    let fixed = fold_datum(&proto, &simple_orbit_reps)?;
    let got: Vec<CartanType> = fixed.components().iter().map(|(t, _)| *t).collect();
    if got != vec![expected] {
        return Err(Error::Internal(format!(
            "fold_table: folding {ty} by order {ell} produced {got:?}, table says {expected}"
        )));
    }
    Ok(DatumAutomorphism { fixed_datum: fixed, ..proto })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OrbitShape {
    /// pairwise orthogonal roots; coroot is the sum of coroots
    Orthogonal,
    /// `{a, sigma a}` with `<a, (sigma a)^vee> = -1`; coroot is twice the sum
    A2Pair,
    /// fixed root `a + sigma a` coming from an A2 pair; not a root of the fold
    Doubled,
    Other,
}

struct RootOrbit {
    members: Vec<usize>,
    shape: OrbitShape,
}

fn root_orbits(a: &DatumAutomorphism) -> Result<Vec<RootOrbit>> {
    let d = &a.base;
    let mut seen = vec![false; d.num_roots()];
    let mut out = Vec::new();
    for i in 0..d.num_roots() {
        if seen[i] {
            continue;
        }
        let mut members = vec![i];
        seen[i] = true;
        let mut cur = a.matrix.apply(&d.roots()[i]);
        loop {
            let j = d
                .root_index(&cur)
                .ok_or_else(|| Error::Invalid("matrix does not permute the roots".into()))?;
            if j == i {
                break;
            }
            if members.len() as u64 > a.order {
                return Err(Error::Invalid("root orbit longer than the order".into()));
            }
            members.push(j);
            seen[j] = true;
            cur = a.matrix.apply(&d.roots()[j]);
        }
        out.push(RootOrbit { members, shape: OrbitShape::Other });
    }
    let pairs: BTreeSet<Weight> = out
        .iter()
        .filter(|o| o.members.len() == 2 && dot(&d.roots()[o.members[0]], &d.coroots()[o.members[1]]) == -1)
        .map(|o| {
            d.roots()[o.members[0]].iter().zip(&d.roots()[o.members[1]]).map(|(x, y)| x + y).collect()
        })
        .collect();
    for o in &mut out {
        let m = &o.members;
        let orth = m
            .iter()
            .all(|&x| m.iter().all(|&y| x == y || dot(&d.roots()[x], &d.coroots()[y]) == 0));
        o.shape = if m.len() == 1 && pairs.contains(&d.roots()[m[0]]) {
            OrbitShape::Doubled
        } else if orth {
            OrbitShape::Orthogonal
        } else if m.len() == 2 && dot(&d.roots()[m[0]], &d.coroots()[m[1]]) == -1 {
            OrbitShape::A2Pair
        } else {
            OrbitShape::Other
        };
    }
    Ok(out)
}

fn orbit_coroot(d: &RootDatum, o: &RootOrbit) -> Option<Weight> {
    let mut v = vec![0; d.rank()];
    for &m in &o.members {
        for (x, y) in v.iter_mut().zip(&d.coroots()[m]) {
            *x += y;
        }
    }
    match o.shape {
        OrbitShape::Orthogonal => Some(v),
        OrbitShape::A2Pair => Some(v.iter().map(|x| 2 * x).collect()),
        _ => None,
    }
}

/// Fixed datum from restricted roots and orbit-sum coroots.
fn fold_datum(a: &DatumAutomorphism, simple_reps: &[usize]) -> Result<RootDatum> {
    let d = &a.base;
    let r = a.embedding.cols();
    let orbits = root_orbits(a)?;
    let mut by_member = vec![usize::MAX; d.num_roots()];
    for (k, o) in orbits.iter().enumerate() {
        for &m in &o.members {
            by_member[m] = k;
        }
    }
    let mut pos = Vec::new();
    let mut found: BTreeMap<Weight, Weight> = BTreeMap::new();
    for o in &orbits {
        if o.shape == OrbitShape::Doubled || !d.is_positive(o.members[0]) {
            continue;
        }
        let c = orbit_coroot(d, o)
            .ok_or_else(|| Error::Internal("root orbit of unsupported shape in a fold".into()))?;
        let root = a.restrict(&d.roots()[o.members[0]]);
        let co = a
            .to_fixed(&c)?
            .ok_or_else(|| Error::Internal("orbit coroot outside the fixed sublattice".into()))?;
        if let Some(prev) = found.insert(root.clone(), co.clone()) {
            if prev != co {
                return Err(Error::Internal("restricted root with two coroots".into()));
            }
            continue;
        }
        pos.push((o.members[0], root, co));
    }
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for (_, x, c) in &pos {
        roots.push(x.clone());
        coroots.push(c.clone());
    }
    for (_, x, c) in &pos {
        roots.push(x.iter().map(|v| -v).collect());
        coroots.push(c.iter().map(|v| -v).collect());
    }
    let mut simple = Vec::new();
    for &s in simple_reps {
        let k = by_member[s];
        let idx = pos
            .iter()
            .position(|(m, _, _)| by_member[*m] == k)
            .ok_or_else(|| Error::Internal("simple orbit lost in the fold".into()))?;
        simple.push(idx);
    }
    let iso = infer_isogeny(r, &roots, &coroots)?;
    RootDatum::new(r, roots, coroots, simple, iso)
}

/// Cyclic shift on `l` copies of `m`; fixed datum `m` embedded diagonally.
pub fn block_cyclic_automorphism(m: &RootDatum, ell: u64) -> Result<DatumAutomorphism> {
    check_prime(ell)?;
    let l = ell as usize;
    let base = RootDatum::product(&vec![m.clone(); l])?;
    let r = m.rank();
    let perm: Vec<usize> = (0..l * r).map(|j| (j + r) % (l * r)).collect();
    let matrix = Matrix::permutation(&perm);
    let mut emb = Matrix::zeros(l * r, r);
    for b in 0..l {
        for i in 0..r {
            emb[(b * r + i, i)] = 1;
        }
    }
    Ok(DatumAutomorphism {
        base,
        matrix,
        order: ell,
        kind: AutomorphismKind::BlockCyclic { factor_rank: r },
        fixed_datum: m.clone(),
        embedding: emb,
    })
}

/// User-supplied automorphism and fixed datum; nothing beyond shapes is checked here.
pub fn general_automorphism(
    base: &RootDatum,
    matrix: Matrix,
    ell: u64,
    fixed_datum: RootDatum,
    embedding: Matrix,
) -> Result<DatumAutomorphism> {
    check_prime(ell)?;
    let n = base.rank();
    if matrix.rows() != n || matrix.cols() != n {
        return Err(Error::Shape(format!("automorphism matrix must be {n}x{n}")));
    }
    if embedding.rows() != n || embedding.cols() != fixed_datum.rank() {
        return Err(Error::Shape(format!("embedding must be {n}x{}", fixed_datum.rank())));
    }
    Ok(DatumAutomorphism { base: base.clone(), matrix, order: ell, kind: AutomorphismKind::General, fixed_datum, embedding })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

/// Checks every axiom separately and reports all failures.
pub fn validate_fixed_datum(a: &DatumAutomorphism) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, res: std::result::Result<(), String>| {
        checks.push(Check { name, passed: res.is_ok(), detail: res.err().unwrap_or_default() });
    };
    let d = &a.base;
    let h = &a.fixed_datum;
    let n = d.rank();
    let ell = a.order;
    let inner = matches!(a.kind, AutomorphismKind::InnerTorsion { .. });

    let order_ok = a.matrix.pow(ell).is_identity();
    push(
        "matrix_order",
        if !order_ok {
            Err(format!("matrix^{ell} is not the identity"))
        } else if a.matrix.is_identity() && !inner {
            Err("matrix is the identity but kind is not inner_torsion".into())
        } else if inner && !a.matrix.is_identity() {
            Err("inner_torsion matrix must be the identity".into())
        } else {
            Ok(())
        },
    );
    if !order_ok {
        return ValidationReport { passed: false, checks };
    }
    let co = a.comatrix();

    let mut permutes = Ok(());
    for (r, c) in d.roots().iter().zip(d.coroots()) {
        let img = a.matrix.apply(r);
        match d.coroot_of(&img) {
            Some(ci) if *ci == co.apply(c) => {}
            Some(_) => {
                permutes = Err(format!("coroot of sigma({r:?}) is not sigma of the coroot"));
                break;
            }
            None => {
                permutes = Err(format!("sigma({r:?}) = {img:?} is not a root"));
                break;
            }
        }
    }
    let permutes_ok = permutes.is_ok();
    push("permutes_roots", permutes);

    if let AutomorphismKind::Pinned { perm } = &a.kind {
        let bad = (0..d.semisimple_rank()).find(|&i| a.matrix.apply(d.simple_root(i)) != *d.simple_root(perm[i]));
        push(
            "pinned_simple",
            match bad {
                Some(i) => Err(format!("simple root {} is not sent to simple root {}", i + 1, perm[i] + 1)),
                None => Ok(()),
            },
        );
    }

    // image of the embedding equals the fixed sublattice
    let emb = &a.embedding;
    let emb_check = (|| -> std::result::Result<(), String> {
        if emb.rows() != n || emb.cols() != h.rank() {
            return Err(format!("embedding has shape {}x{}", emb.rows(), emb.cols()));
        }
        for (j, col) in emb.columns().iter().enumerate() {
            if co.apply(col) != *col {
                return Err(format!("embedding column {j} is not sigma-fixed"));
            }
        }
        let fix = co.sub(&Matrix::identity(n));
        let ker = smith::kernel(&Mat128::from_matrix(&fix)).map_err(|e| e.to_string())?;
        if ker.len() != h.rank() {
            return Err(format!("fixed sublattice has rank {}, fixed datum has rank {}", ker.len(), h.rank()));
        }
        for v in &ker {
            let v: Vec<i64> = v.iter().map(|&x| x as i64).collect();
            match solve_int(emb, &v) {
                Ok(Some(_)) => {}
                _ => return Err(format!("fixed cocharacter {v:?} is not in the image of the embedding")),
            }
        }
        if smith::rank(emb).map_err(|e| e.to_string())? != h.rank() {
            return Err("embedding is not injective".into());
        }
        Ok(())
    })();
    let emb_ok = emb_check.is_ok();
    push("embedding_image", emb_check);

    if !(permutes_ok && emb_ok) {
        push("root_restriction", Err("skipped: lattice checks failed".into()));
        push("coroot_pairing", Err("skipped: lattice checks failed".into()));
        push("weyl_centralizer", Err("skipped: lattice checks failed".into()));
        let passed = checks.iter().all(|c| c.passed);
        return ValidationReport { passed, checks };
    }
    let orbits = match root_orbits(a) {
        Ok(o) => o,
        Err(e) => {
            push("root_restriction", Err(e.to_string()));
            return ValidationReport { passed: false, checks };
        }
    };
    // restriction of each orbit, for matching fixed-datum roots
    let mut by_restriction: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (k, o) in orbits.iter().enumerate() {
        by_restriction.entry(a.restrict(&d.roots()[o.members[0]])).or_default().push(k);
    }

    let mut restr = Ok(());
    let mut pairing = Ok(());
    let mut matched: Vec<Option<usize>> = vec![None; h.num_roots()];
    for (i, (r, c)) in h.roots().iter().zip(h.coroots()).enumerate() {
        let Some(cands) = by_restriction.get(r) else {
            if restr.is_ok() {
                restr = Err(format!("fixed-datum root {r:?} is not the restriction of a root"));
            }
            continue;
        };
        let ec = emb.apply(c);
        let hit = cands.iter().find(|&&k| orbit_coroot(d, &orbits[k]).as_ref() == Some(&ec));
        match hit {
            Some(&k) => matched[i] = Some(k),
            None => {
                if pairing.is_ok() {
                    pairing = Err(format!("coroot {c:?} of fixed-datum root {r:?} is not an orbit coroot"));
                }
            }
        }
    }
    if let (Ok(()), AutomorphismKind::InnerTorsion { .. }) = (&restr, &a.kind) {
        let expect: BTreeSet<&Weight> = (0..d.num_roots())
            .filter(|&i| torsion_value(a, i) == Some(0))
            .map(|i| &d.roots()[i])
            .collect();
        let got: BTreeSet<&Weight> = h.roots().iter().collect();
        if expect != got {
            restr = Err("roots differ from {alpha : t(alpha) = 0 mod l}".into());
        }
    }
    push("root_restriction", restr);
    push("coroot_pairing", pairing);

    // each simple reflection of H is realised by a sigma-centralising Weyl element of G
    let mut cent = Ok(());
    for s in 0..h.semisimple_rank() {
        let Some(k) = matched[h.simple_indices()[s]] else {
            cent = Err(format!("simple root {} of the fixed datum has no orbit", s + 1));
            break;
        };
        let o = &orbits[k];
        let refl = |m: usize| {
            let mut r = Matrix::identity(n);
            let (x, y) = (&d.coroots()[m], &d.roots()[m]);
            for i in 0..n {
                for j in 0..n {
                    r[(i, j)] -= x[i] * y[j];
                }
            }
            r
        };
        let w = match o.shape {
            OrbitShape::Orthogonal => o.members.iter().fold(Matrix::identity(n), |acc, &m| acc.mul(&refl(m))),
            OrbitShape::A2Pair => refl(o.members[0]).mul(&refl(o.members[1])).mul(&refl(o.members[0])),
            _ => {
                cent = Err("orbit of unsupported shape".into());
                break;
            }
        };
        if w.mul(&co) != co.mul(&w) {
            cent = Err(format!("lift of simple reflection {} does not commute with sigma", s + 1));
            break;
        }
        // compare on the fixed sublattice: w E = E s_H
        let hr = h.simple_root(s);
        let hc = h.simple_coroot(s);
        let mut sh = Matrix::identity(h.rank());
        for i in 0..h.rank() {
            for j in 0..h.rank() {
                sh[(i, j)] -= hc[i] * hr[j];
            }
        }
        if w.mul(emb) != emb.mul(&sh) {
            cent = Err(format!("simple reflection {} of the fixed datum is not a restricted Weyl element", s + 1));
            break;
        }
    }
    push("weyl_centralizer", cent);
    let passed = checks.iter().all(|c| c.passed);
    ValidationReport { passed, checks }
}
