//! The six-term periodic long exact sequence of Tate cohomology over `F_l`.

use rand::Rng;
use serde::Serialize;

use super::{fl_homology, Coeff, SigmaModule};
use crate::error::{Error, Result};
use crate::linalg::fp::{reduce, FpMat, FpQuotient, FpVec, Subspace};
use crate::linalg::Matrix;

/// `0 -> sub --inc--> mid --proj--> quot -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub sub: SigmaModule,
    pub mid: SigmaModule,
    pub quot: SigmaModule,
    pub inc: Matrix,
    pub proj: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessSpot {
    pub position: &'static str,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub exact: bool,
    pub spots: Vec<ExactnessSpot>,
    /// Whether each connecting map (`T^0 -> T^1`, `T^1 -> T^0`) vanishes.
    pub connecting_zero: [bool; 2],
}

const POSITIONS: [&str; 6] = ["T0(M')", "T0(M)", "T0(M'')", "T1(M')", "T1(M)", "T1(M'')"];

fn fv(v: &[i64], p: u64) -> FpVec {
    v.iter().map(|&x| reduce(x, p)).collect()
}

fn span(m: &Matrix, p: u64) -> Subspace {
    Subspace::spanned_by(p, m.rows(), &m.columns().iter().map(|c| fv(c, p)).collect::<Vec<_>>())
}

fn tate_pair(m: &SigmaModule) -> [FpQuotient; 2] {
    let p = &m.presentation;
    [
        fl_homology(m.ell, p, &m.one_minus_sigma(), p, &m.norm()),
        fl_homology(m.ell, p, &m.norm(), p, &m.one_minus_sigma()),
    ]
}

fn as_fp(m: &Matrix, p: u64) -> FpMat {
    FpMat::from_int(m, p)
}

/// Matrix of `v ↦ f v` between quotients, in representative coordinates.
fn induced(f: &FpMat, src: &FpQuotient, dst: &FpQuotient) -> Result<FpMat> {
    let p = f.p;
    let cols: Vec<FpVec> = src
        .reps
        .iter()
        .map(|r| {
            dst.class_coords(&f.apply(r))
                .ok_or_else(|| Error::Internal("induced map leaves the cycles".into()))
        })
        .collect::<Result<_>>()?;
    Ok(FpMat::from_columns(p, &cols, dst.dim()))
}

/// `x` with `a x ≡ b` modulo the span of `rel`.
fn solve_mod(a: &FpMat, rel: &Matrix, b: &[u64]) -> Option<FpVec> {
    let r = as_fp(rel, a.p);
    let aug = if r.cols == 0 { a.clone() } else { a.hcat(&r) };
    aug.solve(b).map(|x| x[..a.cols].to_vec())
}

fn connecting(
    s: &ShortExactSequence,
    op: &FpMat,
    src: &FpQuotient,
    dst: &FpQuotient,
) -> Result<FpMat> {
    let p = s.mid.ell;
    let proj = as_fp(&s.proj, p);
    let inc = as_fp(&s.inc, p);
    let mut cols = Vec::with_capacity(src.dim());
    for r in &src.reps {
        let x = solve_mod(&proj, &s.quot.presentation, r)
            .ok_or_else(|| Error::Internal("projection is not surjective".into()))?;
        let y = op.apply(&x);
        let y1 = solve_mod(&inc, &s.mid.presentation, &y)
            .ok_or_else(|| Error::Internal("boundary does not come from the submodule".into()))?;
        cols.push(
            dst.class_coords(&y1)
                .ok_or_else(|| Error::Internal("connecting image is not a cycle".into()))?,
        );
    }
    Ok(FpMat::from_columns(p, &cols, dst.dim()))
}

fn check_sequence(s: &ShortExactSequence) -> Result<()> {
    let (a, b, c) = (&s.sub, &s.mid, &s.quot);
    if [a, b, c].iter().any(|m| m.coeff != Coeff::Fl) {
        return Err(Error::Invalid("long exact sequences are computed over F_l".into()));
    }
    let p = b.ell;
    if a.ell != p || c.ell != p {
        return Err(Error::Mismatch("modules over different primes".into()));
    }
    if s.inc.rows() != b.generators() || s.inc.cols() != a.generators() {
        return Err(Error::Shape("inclusion has the wrong shape".into()));
    }
    if s.proj.rows() != c.generators() || s.proj.cols() != b.generators() {
        return Err(Error::Shape("projection has the wrong shape".into()));
    }
    let rel_b = span(&b.presentation, p);
    let rel_c = span(&c.presentation, p);
    let maps_ok = |f: &Matrix, src: &SigmaModule, dst: &SigmaModule, rel: &Subspace| {
        let f_rel = f.mul(&src.presentation);
        let comm = f.mul(&src.sigma).sub(&dst.sigma.mul(f));
        f_rel.columns().iter().chain(comm.columns().iter()).all(|v| rel.contains(&fv(v, p)))
    };
    if !maps_ok(&s.inc, a, b, &rel_b) || !maps_ok(&s.proj, b, c, &rel_c) {
        return Err(Error::NotExact("maps are not Σ-equivariant module maps".into()));
    }
    let pi = s.proj.mul(&s.inc);
    if !pi.columns().iter().all(|v| rel_c.contains(&fv(v, p))) {
        return Err(Error::NotExact("proj ∘ inc ≠ 0".into()));
    }
    // injectivity: {x : inc x ∈ rel_b} has dimension dim rel_a
    let kernel_dim = |f: &Matrix, rel_tgt: &Matrix, n: usize| -> usize {
        let q = fl_homology(p, &Matrix::zeros(n, 0), f, rel_tgt, &Matrix::zeros(n, 0));
        q.dim()
    };
    let rel_a_dim = span(&a.presentation, p).dim();
    if kernel_dim(&s.inc, &b.presentation, a.generators()) != rel_a_dim {
        return Err(Error::NotExact("inclusion is not injective".into()));
    }
    let mut img = rel_c.clone();
    for v in s.proj.columns() {
        img.insert(&fv(&v, p));
    }
    if img.dim() != c.generators() {
        return Err(Error::NotExact("projection is not surjective".into()));
    }
    let mut inc_img = rel_b.clone();
    for v in s.inc.columns() {
        inc_img.insert(&fv(&v, p));
    }
    if kernel_dim(&s.proj, &c.presentation, b.generators()) != inc_img.dim() {
        return Err(Error::NotExact("not exact in the middle".into()));
    }
    Ok(())
}

/// Computes all six maps (connecting maps explicitly) and checks exactness at each group.
pub fn les_check(s: &ShortExactSequence) -> Result<LesReport> {
    check_sequence(s)?;
    let p = s.mid.ell;
    let [a0, a1] = tate_pair(&s.sub);
    let [b0, b1] = tate_pair(&s.mid);
    let [c0, c1] = tate_pair(&s.quot);
    let inc = as_fp(&s.inc, p);
    let proj = as_fp(&s.proj, p);
    let maps = [
        induced(&inc, &a0, &b0)?,
        induced(&proj, &b0, &c0)?,
        connecting(s, &as_fp(&s.mid.one_minus_sigma(), p), &c0, &a1)?,
        induced(&inc, &a1, &b1)?,
        induced(&proj, &b1, &c1)?,
        connecting(s, &as_fp(&s.mid.norm(), p), &c1, &a0)?,
    ];
    let groups = [&a0, &b0, &c0, &a1, &b1, &c1];
    let mut spots = Vec::with_capacity(6);
    for k in 0..6 {
        let f_in = &maps[(k + 5) % 6];
        let f_out = &maps[k];
        let composite_zero = f_out.mul(f_in).is_zero();
        let (ri, ro) = (f_in.rank(), f_out.rank());
        let dim = groups[k].dim();
        spots.push(ExactnessSpot {
            position: POSITIONS[k],
            dim,
            rank_in: ri,
            rank_out: ro,
            exact: composite_zero && ri + ro == dim,
        });
    }
    Ok(LesReport {
        exact: spots.iter().all(|s| s.exact),
        spots,
        connecting_zero: [maps[2].is_zero(), maps[5].is_zero()],
    })
}

fn fp_inverse(m: &FpMat) -> Option<FpMat> {
    let n = m.rows;
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let e: FpVec = (0..n).map(|j| u64::from(i == j)).collect();
        cols.push(m.solve(&e)?);
    }
    Some(FpMat::from_columns(m.p, &cols, n))
}

fn to_int(m: &FpMat) -> Matrix {
    let mut out = Matrix::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out[(i, j)] = m.data[i][j] as i64;
        }
    }
    out
}

/// Random `F_l[Σ]`-module of dimension `dim`: Jordan blocks of size `<= l`, conjugated.
pub fn random_fl_sigma<R: Rng>(rng: &mut R, ell: u64, dim: usize) -> Matrix {
    let mut blocks = Vec::new();
    let mut left = dim;
    while left > 0 {
        let k = rng.gen_range(1..=left.min(ell as usize));
        let mut j = Matrix::identity(k);
        for i in 0..k.saturating_sub(1) {
            j[(i + 1, i)] = 1;
        }
        blocks.push(j);
        left -= k;
    }
    let s = FpMat::from_int(&Matrix::block_diag(&blocks), ell);
    let g = loop {
        let mut g = FpMat::zeros(ell, dim, dim);
        for row in &mut g.data {
            for x in row.iter_mut() {
                *x = rng.gen_range(0..ell);
            }
        }
        if g.rank() == dim {
            break g;
        }
    };
    let gi = fp_inverse(&g).expect("invertible");
    to_int(&g.mul(&s).mul(&gi))
}

/// Random short exact sequence; the middle term carries one extra relation
/// coordinate so that presentations are exercised.
pub fn random_short_exact_sequence<R: Rng>(rng: &mut R, ell: u64, max_dim: usize) -> Result<ShortExactSequence> {
    let n = rng.gen_range(1..=max_dim.max(1));
    let base = random_fl_sigma(rng, ell, n);
    // ambient F^{n+1}; the last coordinate is a relation, junk is allowed in its row
    let mut sigma = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            sigma[(i, j)] = base[(i, j)];
        }
        sigma[(n, i)] = rng.gen_range(0..ell as i64);
    }
    sigma[(n, n)] = 1;
    let mut e = vec![0; n + 1];
    e[n] = 1;
    let pres = Matrix::from_columns(&[e], n + 1);
    let mid = SigmaModule::new(Coeff::Fl, ell, pres.clone(), sigma.clone())?;

    // Σ-stable subspace of the first n coordinates generated by a few random vectors
    let sig_n = FpMat::from_int(&base, ell);
    let mut sub = Subspace::new(ell, n);
    for _ in 0..rng.gen_range(0..=2) {
        let mut v: FpVec = (0..n).map(|_| rng.gen_range(0..ell)).collect();
        for _ in 0..ell {
            sub.insert(&v);
            v = sig_n.apply(&v);
        }
    }
    let basis = sub.basis.clone();
    let k = basis.len();
    let mut sub_sigma = Matrix::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let c = sub.coords(&sig_n.apply(b)).ok_or_else(|| Error::Internal("subspace not stable".into()))?;
        for i in 0..k {
            sub_sigma[(i, j)] = c[i] as i64;
        }
    }
    let submodule = SigmaModule::free_on(Coeff::Fl, ell, sub_sigma)?;
    let mut inc = Matrix::zeros(n + 1, k);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            inc[(i, j)] = b[i] as i64;
        }
        inc[(n, j)] = rng.gen_range(0..ell as i64);
    }
    let quot = SigmaModule::new(Coeff::Fl, ell, pres.hcat(&inc), sigma)?;
    Ok(ShortExactSequence { sub: submodule, mid, quot, inc, proj: Matrix::identity(n + 1) })
}

/// `0 -> A -> A ⊕ B -> B -> 0`.
pub fn split_sequence(a: &SigmaModule, b: &SigmaModule) -> Result<ShortExactSequence> {
    let mid = SigmaModule::direct_sum(&[a.clone(), b.clone()])?;
    let (na, nb) = (a.generators(), b.generators());
    let mut inc = Matrix::zeros(na + nb, na);
    for i in 0..na {
        inc[(i, i)] = 1;
    }
    let mut proj = Matrix::zeros(nb, na + nb);
    for i in 0..nb {
        proj[(i, na + i)] = 1;
    }
    Ok(ShortExactSequence { sub: a.clone(), mid, quot: b.clone(), inc, proj })
}

/// `0 -> I -> F_l[Σ] -> k -> 0` with `I = F_l[Σ]/(N)` embedded by `1 - sigma`.
pub fn augmentation_sequence(ell: u64) -> Result<ShortExactSequence> {
    let sub = SigmaModule::augmentation_ideal(Coeff::Fl, ell)?;
    let mid = SigmaModule::regular(Coeff::Fl, ell)?;
    let quot = SigmaModule::trivial(Coeff::Fl, ell)?;
    let inc = mid.one_minus_sigma();
    let proj = Matrix::from_rows(&[vec![1; ell as usize]])?;
    Ok(ShortExactSequence { sub, mid, quot, inc, proj })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn split_sequences_have_zero_connecting_maps() {
        let a = SigmaModule::trivial(Coeff::Fl, 3).unwrap();
        let b = SigmaModule::augmentation_ideal(Coeff::Fl, 3).unwrap();
        let r = les_check(&split_sequence(&a, &b).unwrap()).unwrap();
        assert!(r.exact);
        assert_eq!(r.connecting_zero, [true, true]);
    }

    #[test]
    fn augmentation_sequence_has_nonzero_connecting_map() {
        let r = les_check(&augmentation_sequence(3).unwrap()).unwrap();
        assert!(r.exact, "{r:?}");
        assert!(!r.connecting_zero[0] || !r.connecting_zero[1]);
    }

    #[test]
    fn random_sequences_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ell in [2, 3, 5] {
            for _ in 0..20 {
                let s = random_short_exact_sequence(&mut rng, ell, 6).unwrap();
                let r = les_check(&s).unwrap();
                assert!(r.exact, "{r:?}");
            }
        }
    }

    #[test]
    fn non_exact_input_rejected() {
        let mut s = augmentation_sequence(3).unwrap();
        s.proj = Matrix::zeros(1, 3);
        assert!(les_check(&s).is_err());
    }
}
