//! Input file formats and small argument parsers.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use modsat::dualhom::QZ;
use modsat::rootdata::{
    block_cyclic_automorphism, inner_torsion_automorphism, pinned_automorphism, AutomorphismSpec, DatumAutomorphism,
    RootDatum, RootDatumSpec,
};

use crate::CliError;

/// A root datum given by label (`"B3:adjoint"`) or in full.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DatumInput {
    Label(String),
    Labelled { label: String },
    Full(RootDatumSpec),
}

impl DatumInput {
    pub fn build(&self) -> Result<RootDatum, CliError> {
        Ok(match self {
            DatumInput::Label(l) | DatumInput::Labelled { label: l } => RootDatum::from_label(l)?,
            DatumInput::Full(s) => RootDatum::from_spec(s)?,
        })
    }
}

/// An automorphism in full (`automorphism.json`) or as a recipe without the matrix.
///
/// For a `block_cyclic` recipe the accompanying datum is the factor, not the product.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AutoInput {
    Full(AutomorphismSpec),
    Recipe {
        kind: String,
        order: u64,
        #[serde(default)]
        t: Option<Vec<i64>>,
        #[serde(default)]
        perm: Option<Vec<usize>>,
    },
}

impl AutoInput {
    pub fn build(&self, d: &RootDatum) -> Result<DatumAutomorphism, CliError> {
        match self {
            AutoInput::Full(spec) => Ok(DatumAutomorphism::from_spec(d, spec)?),
            AutoInput::Recipe { kind, order, t, perm } => {
                let missing = |f: &str| CliError::input(format!("{kind} needs `{f}`"));
                Ok(match kind.as_str() {
                    "inner_torsion" => inner_torsion_automorphism(d, t.as_ref().ok_or_else(|| missing("t"))?, *order)?,
                    "pinned" => pinned_automorphism(d, perm.as_ref().ok_or_else(|| missing("perm"))?, *order)?,
                    "block_cyclic" => block_cyclic_automorphism(d, *order)?,
                    "general" => return Err(CliError::input("a general automorphism needs its matrix, fixed_datum and embedding")),
                    other => return Err(CliError::input(format!("unknown automorphism kind `{other}`"))),
                })
            }
        }
    }
}

/// `setup.json`.
#[derive(Clone, Debug, Deserialize)]
pub struct SetupInput {
    pub group: DatumInput,
    pub automorphism: AutoInput,
}

/// `theta.json`: a point of `X^vee ⊗ Q/Z` together with its datum.
#[derive(Clone, Debug, Deserialize)]
pub struct ThetaInput {
    pub datum: DatumInput,
    pub theta: Vec<QZ>,
}

impl ThetaInput {
    pub fn normalized(&self) -> Result<Vec<QZ>, CliError> {
        self.theta.iter().map(|q| Ok(QZ::new(q.num, q.den)?)).collect()
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Datum from a file holding a label or a full spec, or from a bare label.
pub fn datum_arg(arg: &str) -> Result<RootDatum, CliError> {
    let p = Path::new(arg);
    if p.exists() {
        read_json::<DatumInput>(p)?.build()
    } else {
        Ok(RootDatum::from_label(arg)?)
    }
}

/// `"1,0,-2"` or `"1 0 -2"`.
pub fn parse_ints(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| CliError::input(format!("`{t}` is not an integer"))))
        .collect()
}

/// Weyl word `"s1 s2"` (also `"1,2"`), 1-based on input, 0-based on output.
pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let k: usize = t
                .trim_start_matches('s')
                .parse()
                .map_err(|_| CliError::input(format!("`{t}` is not a simple reflection")))?;
            if k == 0 || k > rank {
                return Err(CliError::input(format!("s{k} out of range 1..={rank}")));
            }
            Ok(k - 1)
        })
        .collect()
}

/// Generators separated by `;`, each a word: `"s1; s2 s1 s2"`.
pub fn parse_words(s: &str, rank: usize) -> Result<Vec<Vec<usize>>, CliError> {
    s.split(';').filter(|w| !w.trim().is_empty()).map(|w| parse_word(w, rank)).collect()
}
