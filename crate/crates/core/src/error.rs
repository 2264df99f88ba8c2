use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("inadmissible Cartan type {family}{rank}")]
    InadmissibleRank { family: String, rank: usize },

    #[error("root datum axiom `{axiom}` violated: {detail}")]
    Axiom { axiom: &'static str, detail: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unsupported automorphism: {0}")]
    UnsupportedAutomorphism(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("weight is not dominant: {0:?}")]
    NotDominant(Vec<i64>),

    #[error("character is not invariant: {0}")]
    NotInvariant(String),

    #[error("incompatible operands: {0}")]
    Mismatch(String),

    #[error("size bound exceeded: {0}")]
    Bound(String),

    #[error("not a lattice: {0}")]
    NotLattice(String),

    #[error("inconsistent ranks: {0}")]
    InconsistentRanks(String),

    #[error("not a complex: {0}")]
    NotComplex(String),

    #[error("not a short exact sequence: {0}")]
    NotExact(String),

    #[error(
        "hypothesis violated: l = {ell} must exceed the excluded-prime bound {bound} \
         (A_n:1, B_n/D_n:2, C_n:n, G2/F4/E6:3, E7:19, E8:31)"
    )]
    Hypothesis { ell: u64, bound: u64 },

    #[error("denominator {den} is divisible by l = {ell}")]
    Denominator { den: i64, ell: u64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

