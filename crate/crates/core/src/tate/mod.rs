//! Tate cohomology of modules and bounded complexes over `Z_(l)[Σ]` and `F_l[Σ]`.
//!
//! A module is the cokernel of an integer presentation matrix `P` (`n x m`,
//! relations as columns) together with an `n x n` integer matrix `sigma` that
//! descends to the cokernel. Over `Z_(l)` prime-to-`l` elementary divisors are
//! units; over `F_l` everything is reduced mod `l`.

mod les;
mod tensor;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::fp::{reduce, FpMat, FpQuotient, FpVec, Subspace};
use crate::linalg::local::{elementary_quotient, valuation, LocalLattice};
use crate::linalg::smith::{self, Mat128, Vec128};
use crate::linalg::{is_prime, Matrix};

pub use les::{
    augmentation_sequence, les_check, random_fl_sigma, random_short_exact_sequence, split_sequence, ExactnessSpot,
    LesReport, ShortExactSequence,
};
pub use tensor::{tate_of_tensor_power, tensor_power_module, TensorPowerTate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coeff {
    #[serde(rename = "Fl")]
    Fl,
    #[serde(rename = "Zl")]
    Zl,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaModule {
    pub coeff: Coeff,
    pub ell: u64,
    pub presentation: Matrix,
    pub sigma: Matrix,
}

/// File representation (`sigma_module.json`); `presentation` is given by rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaModuleSpec {
    pub coeff: Coeff,
    pub ell: u64,
    pub presentation: Vec<Vec<i64>>,
    pub sigma: Vec<Vec<i64>>,
}

/// `N = 1 + sigma + .. + sigma^{l-1}` as a matrix.
pub fn norm_element(sigma: &Matrix, ell: u64) -> Matrix {
    crate::rootdata::norm_matrix(sigma, ell)
}

fn to128(v: &[i64]) -> Vec128 {
    v.iter().map(|&x| x as i128).collect()
}

fn from128(v: &[i128]) -> Result<Vec<i64>> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("basis vector")))
        .collect()
}

fn fp_vec(v: &[i64], p: u64) -> FpVec {
    v.iter().map(|&x| reduce(x, p)).collect()
}

/// Whether every column of `vs` lies in the span of the columns of `gens`.
fn columns_in_span(coeff: Coeff, ell: u64, gens: &Matrix, vs: &Matrix) -> Result<bool> {
    let n = gens.rows();
    match coeff {
        Coeff::Fl => {
            let s = Subspace::spanned_by(ell, n, &gens.columns().iter().map(|c| fp_vec(c, ell)).collect::<Vec<_>>());
            Ok(vs.columns().iter().all(|v| s.contains(&fp_vec(v, ell))))
        }
        Coeff::Zl => {
            if gens.cols() == 0 {
                return Ok(vs.is_zero());
            }
            let lat = LocalLattice::span(&gens.columns().iter().map(|c| to128(c)).collect::<Vec<_>>(), n, ell)?;
            for v in vs.columns() {
                if !lat.contains(&to128(&v))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

impl SigmaModule {
    pub fn new(coeff: Coeff, ell: u64, presentation: Matrix, sigma: Matrix) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        let n = sigma.rows();
        if !sigma.is_square() || presentation.rows() != n {
            return Err(Error::Shape(format!(
                "sigma is {}x{}, presentation has {} rows",
                sigma.rows(),
                sigma.cols(),
                presentation.rows()
            )));
        }
        let m = SigmaModule { coeff, ell, presentation, sigma };
        if !columns_in_span(coeff, ell, &m.presentation, &m.sigma.mul(&m.presentation))? {
            return Err(Error::Invalid("sigma does not preserve the relations".into()));
        }
        let defect = m.sigma.pow(ell).sub(&Matrix::identity(n));
        if !columns_in_span(coeff, ell, &m.presentation, &defect)? {
            return Err(Error::Invalid(format!("sigma^{ell} is not the identity on the module")));
        }
        Ok(m)
    }

    pub fn from_spec(spec: &SigmaModuleSpec) -> Result<Self> {
        let sigma = Matrix::from_rows(&spec.sigma)?;
        let n = sigma.rows();
        let cols = spec.presentation.first().map_or(0, |r| r.len());
        let presentation = if spec.presentation.is_empty() {
            Matrix::zeros(n, 0)
        } else {
            Matrix::from_rows_with_cols(&spec.presentation, cols)?
        };
        SigmaModule::new(spec.coeff, spec.ell, presentation, sigma)
    }

    pub fn to_spec(&self) -> SigmaModuleSpec {
        SigmaModuleSpec {
            coeff: self.coeff,
            ell: self.ell,
            presentation: self.presentation.to_rows(),
            sigma: self.sigma.to_rows(),
        }
    }

    /// Number of generators `n`.
    pub fn generators(&self) -> usize {
        self.sigma.rows()
    }

    /// `(Z_(l) or F_l)^n` with the given action and no relations.
    pub fn free_on(coeff: Coeff, ell: u64, sigma: Matrix) -> Result<Self> {
        let n = sigma.rows();
        SigmaModule::new(coeff, ell, Matrix::zeros(n, 0), sigma)
    }

    pub fn trivial(coeff: Coeff, ell: u64) -> Result<Self> {
        Self::free_on(coeff, ell, Matrix::identity(1))
    }

    /// The group ring `Λ[Σ]` with `sigma` the cyclic shift.
    pub fn regular(coeff: Coeff, ell: u64) -> Result<Self> {
        let l = ell as usize;
        Self::free_on(coeff, ell, Matrix::permutation(&(0..l).map(|i| (i + 1) % l).collect::<Vec<_>>()))
    }

    /// Augmentation ideal, presented as `Λ[Σ] / (N)`.
    pub fn augmentation_ideal(coeff: Coeff, ell: u64) -> Result<Self> {
        let l = ell as usize;
        let sigma = Matrix::permutation(&(0..l).map(|i| (i + 1) % l).collect::<Vec<_>>());
        SigmaModule::new(coeff, ell, Matrix::from_columns(&[vec![1; l]], l), sigma)
    }

    /// Permutation module on a finite Σ-set; `perm[i]` is `sigma(i)`.
    pub fn permutation(coeff: Coeff, ell: u64, perm: &[usize]) -> Result<Self> {
        Self::free_on(coeff, ell, Matrix::permutation(perm))
    }

    pub fn direct_sum(parts: &[SigmaModule]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        if parts.iter().any(|p| p.coeff != first.coeff || p.ell != first.ell) {
            return Err(Error::Mismatch("direct sum of modules over different rings".into()));
        }
        let pres: Vec<Matrix> = parts.iter().map(|p| p.presentation.clone()).collect();
        let sig: Vec<Matrix> = parts.iter().map(|p| p.sigma.clone()).collect();
        Ok(SigmaModule {
            coeff: first.coeff,
            ell: first.ell,
            presentation: Matrix::block_diag(&pres),
            sigma: Matrix::block_diag(&sig),
        })
    }

    pub fn norm(&self) -> Matrix {
        norm_element(&self.sigma, self.ell)
    }

    pub fn one_minus_sigma(&self) -> Matrix {
        Matrix::identity(self.generators()).sub(&self.sigma)
    }

    /// The same `F_l`-module presented over `Z_(l)` by adding `l` times the identity.
    pub fn as_zl(&self) -> SigmaModule {
        match self.coeff {
            Coeff::Zl => self.clone(),
            Coeff::Fl => {
                let n = self.generators();
                SigmaModule {
                    coeff: Coeff::Zl,
                    ell: self.ell,
                    presentation: self.presentation.hcat(&Matrix::scalar(n, self.ell as i64)),
                    sigma: self.sigma.clone(),
                }
            }
        }
    }

    /// `k ⊗ M`: reduction mod `l`.
    pub fn reduce_mod_l(&self) -> SigmaModule {
        SigmaModule { coeff: Coeff::Fl, ..self.clone() }
    }

    /// `Z_(l)`-rank when the module is a lattice.
    pub fn lattice_rank(&self) -> Result<usize> {
        if self.coeff != Coeff::Zl {
            return Err(Error::NotLattice("module is not over Z_(l)".into()));
        }
        let s = smith::smith_of(&self.presentation)?;
        if s.diag.iter().any(|&d| valuation(d, self.ell) > 0) {
            return Err(Error::NotLattice("presentation has l-torsion".into()));
        }
        Ok(self.generators() - s.rank())
    }

    /// Dimension over `F_l` of the module, for `F_l`-modules.
    pub fn fl_dim(&self) -> usize {
        let p = self.ell;
        self.generators() - FpMat::from_int(&self.presentation, p).rank()
    }
}

/// A Tate cohomology group: an `F_l`-vector space with integer representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateGroup {
    pub degree: u8,
    pub dim: usize,
    pub basis: Vec<Vec<i64>>,
}

/// `{x : out x ∈ span(out_rel)} / (im incoming + span(rel))`.
pub(crate) fn homology(
    coeff: Coeff,
    ell: u64,
    rel: &Matrix,
    out: &Matrix,
    out_rel: &Matrix,
    incoming: &Matrix,
) -> Result<(usize, Vec<Vec<i64>>)> {
    let n = out.cols();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    match coeff {
        Coeff::Fl => {
            let q = fl_homology(ell, rel, out, out_rel, incoming);
            let reps = q.reps.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
            Ok((q.dim(), reps))
        }
        Coeff::Zl => {
            let stacked = out.hcat(out_rel);
            let ker = smith::kernel(&Mat128::from_matrix(&stacked))?;
            let cycles: Vec<Vec128> = ker.iter().map(|v| v[..n].to_vec()).collect();
            if cycles.iter().all(|c| c.iter().all(|&x| x == 0)) {
                return Ok((0, Vec::new()));
            }
            let outer = LocalLattice::span(&cycles, n, ell)?;
            let mut inner: Vec<Vec128> = incoming.columns().iter().map(|c| to128(c)).collect();
            inner.extend(rel.columns().iter().map(|c| to128(c)));
            let q = elementary_quotient(&outer, &inner)?;
            let reps = q.reps.iter().map(|r| from128(r)).collect::<Result<Vec<_>>>()?;
            Ok((q.dim, reps))
        }
    }
}

/// `F_l` version of [`homology`], returning the quotient for further use.
pub(crate) fn fl_homology(ell: u64, rel: &Matrix, out: &Matrix, out_rel: &Matrix, incoming: &Matrix) -> FpQuotient {
    let n = out.cols();
    let m_out = out.rows();
    // rows annihilating span(out_rel): kernel of out_rel^T
    let ann: Vec<FpVec> = if out_rel.cols() == 0 {
        (0..m_out).map(|i| (0..m_out).map(|j| u64::from(i == j)).collect()).collect()
    } else {
        FpMat::from_int(&out_rel.transpose(), ell).kernel()
    };
    let outf = FpMat::from_int(out, ell);
    let cycles: Vec<FpVec> = if ann.is_empty() {
        (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
    } else {
        let l = FpMat { p: ell, rows: ann.len(), cols: m_out, data: ann };
        l.mul(&outf).kernel()
    };
    let mut bound_gens: Vec<FpVec> = incoming.columns().iter().map(|c| fp_vec(c, ell)).collect();
    bound_gens.extend(rel.columns().iter().map(|c| fp_vec(c, ell)));
    let inner = Subspace::spanned_by(ell, n, &bound_gens);
    FpQuotient::new(&inner, &cycles)
}

/// `T^j(M)`: `T^0 = ker(1 - sigma) / im N`, `T^1 = ker N / im(1 - sigma)`.
pub fn tate_cohomology(m: &SigmaModule, j: i64) -> Result<TateGroup> {
    let (out, inc) = if j.rem_euclid(2) == 0 {
        (m.one_minus_sigma(), m.norm())
    } else {
        (m.norm(), m.one_minus_sigma())
    };
    let (dim, basis) = homology(m.coeff, m.ell, &m.presentation, &out, &m.presentation, &inc)?;
    Ok(TateGroup { degree: j.rem_euclid(2) as u8, dim, basis })
}

/// Bounded cochain complex `C^low -> .. -> C^{low + len - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaComplex {
    pub low: i64,
    pub terms: Vec<SigmaModule>,
    /// `diffs[i] : terms[i] -> terms[i + 1]`
    pub diffs: Vec<Matrix>,
}

impl SigmaComplex {
    pub fn new(low: i64, terms: Vec<SigmaModule>, diffs: Vec<Matrix>) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::Invalid("complex has no terms".into()))?;
        let (coeff, ell) = (first.coeff, first.ell);
        if terms.iter().any(|t| t.coeff != coeff || t.ell != ell) {
            return Err(Error::Mismatch("complex terms over different rings".into()));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(Error::Shape(format!("{} terms need {} differentials", terms.len(), terms.len() - 1)));
        }
        for (i, d) in diffs.iter().enumerate() {
            let (src, dst) = (&terms[i], &terms[i + 1]);
            if d.cols() != src.generators() || d.rows() != dst.generators() {
                return Err(Error::Shape(format!("differential {i} has the wrong shape")));
            }
            if !columns_in_span(coeff, ell, &dst.presentation, &d.mul(&src.presentation))? {
                return Err(Error::NotComplex(format!("differential {i} does not respect relations")));
            }
            let comm = d.mul(&src.sigma).sub(&dst.sigma.mul(d));
            if !columns_in_span(coeff, ell, &dst.presentation, &comm)? {
                return Err(Error::NotComplex(format!("differential {i} does not commute with sigma")));
            }
            if i + 1 < diffs.len() {
                let dd = diffs[i + 1].mul(d);
                if !columns_in_span(coeff, ell, &terms[i + 2].presentation, &dd)? {
                    return Err(Error::NotComplex(format!("d∘d ≠ 0 at degree {}", low + i as i64)));
                }
            }
        }
        Ok(SigmaComplex { low, terms, diffs })
    }

    pub fn concentrated(m: SigmaModule, degree: i64) -> Self {
        SigmaComplex { low: degree, terms: vec![m], diffs: vec![] }
    }

    pub fn coeff(&self) -> Coeff {
        self.terms[0].coeff
    }

    pub fn ell(&self) -> u64 {
        self.terms[0].ell
    }

    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    /// `C[k]^i = C^{i+k}` with differentials multiplied by `(-1)^k`.
    pub fn shift(&self, k: i64) -> SigmaComplex {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        SigmaComplex {
            low: self.low - k,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(sign)).collect(),
        }
    }

    fn tot_relations(&self) -> Matrix {
        Matrix::block_diag(&self.terms.iter().map(|t| t.presentation.clone()).collect::<Vec<_>>())
    }

    /// Differential `Tot^n -> Tot^{n+1}` of the totalisation against the complete resolution.
    fn tot_differential(&self, n: i64) -> Matrix {
        let sizes: Vec<usize> = self.terms.iter().map(|t| t.generators()).collect();
        let offs: Vec<usize> = sizes.iter().scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        }).collect();
        let total: usize = sizes.iter().sum();
        let mut d = Matrix::zeros(total, total);
        for (i, t) in self.terms.iter().enumerate() {
            let p = n - (self.low + i as i64);
            let h = if p.rem_euclid(2) == 0 { t.one_minus_sigma() } else { t.norm() };
            for r in 0..sizes[i] {
                for c in 0..sizes[i] {
                    d[(offs[i] + r, offs[i] + c)] = h[(r, c)];
                }
            }
            if i + 1 < self.terms.len() {
                let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
                let di = &self.diffs[i];
                for r in 0..sizes[i + 1] {
                    for c in 0..sizes[i] {
                        d[(offs[i + 1] + r, offs[i] + c)] = sign * di[(r, c)];
                    }
                }
            }
        }
        d
    }
}

/// `T^n(C)`, computed as the cohomology of the (finite in each degree) total complex.
pub fn tate_of_complex(c: &SigmaComplex, n: i64) -> Result<TateGroup> {
    let rel = c.tot_relations();
    let out = c.tot_differential(n);
    let inc = c.tot_differential(n - 1);
    let (dim, basis) = homology(c.coeff(), c.ell(), &rel, &out, &rel, &inc)?;
    Ok(TateGroup { degree: n.rem_euclid(2) as u8, dim, basis })
}

/// Ordinary cohomology `H^i(C)` of the complex (over its own ring, as an `F_l`-dimension
/// for `F_l` coefficients).
pub fn complex_cohomology_dim(c: &SigmaComplex, i: i64) -> Result<usize> {
    if c.coeff() != Coeff::Fl {
        return Err(Error::Invalid("cohomology dimension needs F_l coefficients".into()));
    }
    let k = i - c.low;
    if k < 0 || k as usize >= c.terms.len() {
        return Ok(0);
    }
    let k = k as usize;
    let t = &c.terms[k];
    let n = t.generators();
    let (out, out_rel) = if k + 1 < c.terms.len() {
        (c.diffs[k].clone(), c.terms[k + 1].presentation.clone())
    } else {
        (Matrix::zeros(0, n), Matrix::zeros(0, 0))
    };
    let inc = if k > 0 { c.diffs[k - 1].clone() } else { Matrix::zeros(n, 0) };
    Ok(fl_homology(c.ell(), &t.presentation, &out, &out_rel, &inc).dim())
}

/// Diederichsen–Reiner multiplicities `(a, b, c)` of trivial, augmentation and regular summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDecomposition {
    pub trivial: usize,
    pub augmentation: usize,
    pub regular: usize,
}

pub fn decompose_lattice(m: &SigmaModule) -> Result<LatticeDecomposition> {
    let rank = m.lattice_rank()? as i64;
    let a = tate_cohomology(m, 0)?.dim as i64;
    let b = tate_cohomology(m, 1)?.dim as i64;
    let l = m.ell as i64;
    let rest = rank - a - b * (l - 1);
    if rest < 0 || rest % l != 0 {
        return Err(Error::InconsistentRanks(format!("rank {rank}, dim T0 {a}, dim T1 {b}, l = {l}")));
    }
    Ok(LatticeDecomposition { trivial: a as usize, augmentation: b as usize, regular: (rest / l) as usize })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Goodness {
    pub good: bool,
    pub certificate: LatticeDecomposition,
}

/// Good lattices are exactly those without augmentation-ideal summands.
pub fn is_good(m: &SigmaModule) -> Result<Goodness> {
    let d = decompose_lattice(m)?;
    Ok(Goodness { good: d.augmentation == 0, certificate: d })
}

/// Direct sum of `a` trivial, `b` augmentation and `c` regular lattices.
pub fn standard_lattice(ell: u64, a: usize, b: usize, c: usize) -> Result<SigmaModule> {
    let mut parts = Vec::new();
    for _ in 0..a {
        parts.push(SigmaModule::trivial(Coeff::Zl, ell)?);
    }
    for _ in 0..b {
        parts.push(SigmaModule::augmentation_ideal(Coeff::Zl, ell)?);
    }
    for _ in 0..c {
        parts.push(SigmaModule::regular(Coeff::Zl, ell)?);
    }
    if parts.is_empty() {
        return SigmaModule::new(Coeff::Zl, ell, Matrix::zeros(0, 0), Matrix::zeros(0, 0));
    }
    SigmaModule::direct_sum(&parts)
}

/// Random bounded complex over `F_l`: one module `M` in every degree with differentials
/// `c (1 - sigma)^a`, exponents of consecutive maps summing to at least `l`.
pub fn random_complex<R: rand::Rng>(rng: &mut R, ell: u64, max_len: usize, max_dim: usize) -> Result<SigmaComplex> {
    let dim = rng.gen_range(1..=max_dim.max(1));
    let sigma = random_fl_sigma(rng, ell, dim);
    let m = SigmaModule::free_on(Coeff::Fl, ell, sigma)?;
    let len = rng.gen_range(1..=max_len.max(1));
    let one_minus = m.one_minus_sigma();
    let l = ell;
    let mut diffs = Vec::new();
    let mut prev: u64 = l;
    for _ in 1..len {
        let a = l.saturating_sub(prev) + rng.gen_range(0..=1);
        let c = rng.gen_range(1..ell as i64);
        let d = one_minus.pow(a).scale(c);
        diffs.push(Matrix::from_rows_with_cols(
            &d.to_rows().iter().map(|r| r.iter().map(|x| x.rem_euclid(ell as i64)).collect()).collect::<Vec<_>>(),
            dim,
        )?);
        prev = a;
    }
    let low = rng.gen_range(-2..=2);
    SigmaComplex::new(low, vec![m; len], diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_module_tate() {
        for ell in [2, 3, 5] {
            let k = SigmaModule::trivial(Coeff::Fl, ell).unwrap();
            assert_eq!(tate_cohomology(&k, 0).unwrap().dim, 1);
            assert_eq!(tate_cohomology(&k, 1).unwrap().dim, 1);
            let z = SigmaModule::trivial(Coeff::Zl, ell).unwrap();
            assert_eq!(tate_cohomology(&z, 0).unwrap().dim, 1);
            assert_eq!(tate_cohomology(&z, 1).unwrap().dim, 0);
        }
    }

    #[test]
    fn regular_module_is_acyclic() {
        for ell in [2, 3, 5] {
            for coeff in [Coeff::Fl, Coeff::Zl] {
                let r = SigmaModule::regular(coeff, ell).unwrap();
                assert_eq!(tate_cohomology(&r, 0).unwrap().dim, 0);
                assert_eq!(tate_cohomology(&r, 1).unwrap().dim, 0);
            }
            // explicit circulant: N has rank 1 over F_l
            let r = SigmaModule::regular(Coeff::Fl, ell).unwrap();
            assert_eq!(FpMat::from_int(&r.norm(), ell).rank(), 1);
        }
    }

    #[test]
    fn norm_on_trivial_modules() {
        let n = norm_element(&Matrix::identity(1), 3);
        assert_eq!(n[(0, 0)], 3);
        assert_eq!(reduce(n[(0, 0)], 3), 0);
    }

    #[test]
    fn fl_agrees_with_zl_presentation() {
        let m = SigmaModule::augmentation_ideal(Coeff::Fl, 3).unwrap();
        for j in 0..2 {
            assert_eq!(tate_cohomology(&m, j).unwrap().dim, tate_cohomology(&m.as_zl(), j).unwrap().dim);
        }
    }

    #[test]
    fn lattice_decompositions() {
        let r = SigmaModule::regular(Coeff::Zl, 3).unwrap();
        assert_eq!(decompose_lattice(&r).unwrap(), LatticeDecomposition { trivial: 0, augmentation: 0, regular: 1 });
        let i = SigmaModule::augmentation_ideal(Coeff::Zl, 3).unwrap();
        assert_eq!(decompose_lattice(&i).unwrap(), LatticeDecomposition { trivial: 0, augmentation: 1, regular: 0 });
        assert!(!is_good(&i).unwrap().good);
        let s = standard_lattice(5, 1, 0, 1).unwrap();
        assert_eq!(decompose_lattice(&s).unwrap(), LatticeDecomposition { trivial: 1, augmentation: 0, regular: 1 });
    }

    #[test]
    fn torsion_presentation_is_not_a_lattice() {
        let m = SigmaModule::new(Coeff::Zl, 3, Matrix::from_columns(&[vec![3]], 1), Matrix::identity(1)).unwrap();
        assert!(matches!(decompose_lattice(&m), Err(Error::NotLattice(_))));
    }

    #[test]
    fn complexes_of_trivial_modules() {
        let k = SigmaComplex::concentrated(SigmaModule::trivial(Coeff::Fl, 3).unwrap(), 0);
        for n in -3..3 {
            assert_eq!(tate_of_complex(&k, n).unwrap().dim, 1);
        }
        let z = SigmaComplex::concentrated(SigmaModule::trivial(Coeff::Zl, 3).unwrap(), 0);
        assert_eq!(tate_of_complex(&z, 0).unwrap().dim, 1);
        assert_eq!(tate_of_complex(&z, 1).unwrap().dim, 0);
        assert_eq!(tate_of_complex(&z, 2).unwrap().dim, 1);
    }

    #[test]
    fn trivial_action_complex_sums_cohomology() {
        // F_3 --(0)--> F_3^2 --([1 0])--> F_3 : H^0 = 1, H^1 = 1, H^2 = 0
        let t = |n| SigmaModule::free_on(Coeff::Fl, 3, Matrix::identity(n)).unwrap();
        let c = SigmaComplex::new(
            0,
            vec![t(1), t(2), t(1)],
            vec![Matrix::zeros(2, 1), Matrix::from_rows(&[vec![1, 0]]).unwrap()],
        )
        .unwrap();
        let total: usize = (0..3).map(|i| complex_cohomology_dim(&c, i).unwrap()).sum();
        assert_eq!(total, 2);
        assert_eq!(tate_of_complex(&c, 0).unwrap().dim, 2);
        assert_eq!(tate_of_complex(&c, 1).unwrap().dim, 2);
        assert_eq!(tate_of_complex(&c.shift(2), 1).unwrap().dim, 2);
    }

    #[test]
    fn random_complexes_are_two_periodic() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for ell in [2u64, 3, 5] {
            for _ in 0..10 {
                let c = random_complex(&mut rng, ell, 4, 4).unwrap();
                for n in c.low - 2..=c.high() + 1 {
                    assert_eq!(tate_of_complex(&c, n).unwrap().dim, tate_of_complex(&c, n + 2).unwrap().dim);
                }
            }
        }
    }

    #[test]
    fn d_squared_nonzero_rejected() {
        let t = |n| SigmaModule::free_on(Coeff::Fl, 3, Matrix::identity(n)).unwrap();
        let r = SigmaComplex::new(0, vec![t(1), t(1), t(1)], vec![Matrix::identity(1), Matrix::identity(1)]);
        assert!(matches!(r, Err(Error::NotComplex(_))));
    }
}
