//! Cartan types, Cartan matrices (Bourbaki numbering) and the excluded-prime table.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    Torus,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::Torus => "T",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "T" | "Torus" | "torus" => Family::Torus,
            other => return Err(Error::Invalid(format!("unknown Cartan family `{other}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let family: Family = s[..split].parse()?;
        let rank = s[split..]
            .parse()
            .map_err(|_| Error::Invalid(format!("bad rank in Cartan label `{s}`")))?;
        CartanType::new(family, rank)
    }
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::Torus => true,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InadmissibleRank { family: family.to_string(), rank })
        }
    }

    /// Excluded-prime bound b(Φ) of a simple type; 1 for a torus.
    pub fn bad_prime_bound(&self) -> u64 {
        match self.family {
            Family::A | Family::Torus => 1,
            Family::B | Family::D => 2,
            Family::C => self.rank as u64,
            Family::G | Family::F => 3,
            Family::E => match self.rank {
                6 => 3,
                7 => 19,
                _ => 31,
            },
        }
    }

    /// Semisimple rank (0 for a torus).
    pub fn semisimple_rank(&self) -> usize {
        if self.family == Family::Torus {
            0
        } else {
            self.rank
        }
    }

    /// `c[i][j] = <alpha_i, alpha_j^vee>`, Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.semisimple_rank();
        // symmetric Gram matrix (alpha_i, alpha_j) with short roots of square length 2
        let mut gram = vec![vec![0i64; n]; n];
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            Family::Torus => {}
            Family::A => {
                for i in 0..n {
                    gram[i][i] = 2;
                }
                for i in 0..n.saturating_sub(1) {
                    link(&mut gram, i, i + 1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    gram[i][i] = 4;
                }
                gram[n - 1][n - 1] = 2;
                for i in 0..n - 1 {
                    link(&mut gram, i, i + 1, -2);
                }
            }
            Family::C => {
                for i in 0..n - 1 {
                    gram[i][i] = 2;
                }
                gram[n - 1][n - 1] = 4;
                for i in 0..n - 2 {
                    link(&mut gram, i, i + 1, -1);
                }
                link(&mut gram, n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n {
                    gram[i][i] = 2;
                }
                for i in 0..n - 2 {
                    link(&mut gram, i, i + 1, -1);
                }
                link(&mut gram, n - 3, n - 1, -1);
            }
            Family::E => {
                for i in 0..n {
                    gram[i][i] = 2;
                }
                link(&mut gram, 0, 2, -1);
                link(&mut gram, 1, 3, -1);
                for i in 2..n - 1 {
                    link(&mut gram, i, i + 1, -1);
                }
            }
            Family::F => {
                gram[0][0] = 4;
                gram[1][1] = 4;
                gram[2][2] = 2;
                gram[3][3] = 2;
                link(&mut gram, 0, 1, -2);
                link(&mut gram, 1, 2, -2);
                link(&mut gram, 2, 3, -1);
            }
            Family::G => {
                gram[0][0] = 2;
                gram[1][1] = 6;
                link(&mut gram, 0, 1, -3);
            }
        }
        (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect()
    }
}

/// Identifies the simple factors of a Cartan matrix (`c[i][j] = <alpha_i, alpha_j^vee>`).
///
/// Returns each factor's type with the simple-root indices it occupies, ordered
/// by smallest index. Rank-2 doubly-laced factors are labelled `B2` when the
/// first node is long and `C2` otherwise.
pub fn identify(cartan: &[Vec<i64>]) -> Result<Vec<(CartanType, Vec<usize>)>> {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push((identify_connected(cartan, &comp)?, comp));
    }
    Ok(out)
}

fn identify_connected(c: &[Vec<i64>], nodes: &[usize]) -> Result<CartanType> {
    let k = nodes.len();
    let bad = || Error::Axiom { axiom: "finite_type", detail: format!("unrecognised Dynkin diagram on nodes {nodes:?}") };
    let mut degree = vec![0usize; k];
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let (i, j) = (nodes[a], nodes[b]);
            let m = c[i][j] * c[j][i];
            if m != 0 {
                degree[a] += 1;
                degree[b] += 1;
                edges.push((a, b, m));
            }
        }
    }
    if edges.len() != k.saturating_sub(1) || edges.iter().any(|e| e.2 > 3) {
        return Err(bad());
    }
    // `long(a)`: node a is the longer end of a multiple bond to b
    let longer = |a: usize, b: usize| c[nodes[a]][nodes[b]].abs() > c[nodes[b]][nodes[a]].abs();
    if k == 1 {
        return CartanType::new(Family::A, 1);
    }
    let multi: Vec<_> = edges.iter().filter(|e| e.2 > 1).collect();
    match multi.len() {
        0 => {}
        1 => {
            let &&(a, b, m) = multi.first().unwrap();
            if m == 3 {
                return if k == 2 { CartanType::new(Family::G, 2) } else { Err(bad()) };
            }
            if degree.iter().any(|&d| d > 2) {
                return Err(bad());
            }
            if k == 2 {
                return CartanType::new(if longer(0, 1) { Family::B } else { Family::C }, 2);
            }
            let (end, other) = if degree[a] == 1 {
                (a, b)
            } else if degree[b] == 1 {
                (b, a)
            } else {
                return if k == 4 { CartanType::new(Family::F, 4) } else { Err(bad()) };
            };
            return CartanType::new(if longer(end, other) { Family::C } else { Family::B }, k);
        }
        _ => return Err(bad()),
    }
    let branch: Vec<usize> = (0..k).filter(|&a| degree[a] >= 3).collect();
    match branch.as_slice() {
        [] => CartanType::new(Family::A, k),
        [center] if degree[*center] == 3 => {
            let mut arms = Vec::new();
            for &(a, b, _) in &edges {
                let nb = if a == *center {
                    b
                } else if b == *center {
                    a
                } else {
                    continue;
                };
                // walk outward
                let (mut prev, mut cur, mut len) = (*center, nb, 1);
                loop {
                    let next = edges.iter().find_map(|&(x, y, _)| {
                        if x == cur && y != prev {
                            Some(y)
                        } else if y == cur && x != prev {
                            Some(x)
                        } else {
                            None
                        }
                    });
                    match next {
                        Some(nx) => {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => CartanType::new(Family::D, k),
                [1, 2, 2] => CartanType::new(Family::E, 6),
                [1, 2, 3] => CartanType::new(Family::E, 7),
                [1, 2, 4] => CartanType::new(Family::E, 8),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// The excluded-prime table as printed: one row per family group.
pub fn bad_prime_table() -> Vec<(&'static str, &'static str)> {
    vec![
        ("A_n", "1"),
        ("B_n, D_n", "2"),
        ("C_n", "n"),
        ("G_2, F_4, E_6", "3"),
        ("E_7", "19"),
        ("E_8", "31"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_type_identifies_as_itself() {
        let labels = ["A1", "A4", "B2", "B3", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"];
        for l in labels {
            let t: CartanType = l.parse().unwrap();
            let c = t.cartan_matrix();
            let id = identify(&c).unwrap();
            assert_eq!(id.len(), 1, "{l}");
            assert_eq!(id[0].0, t, "{l}");
        }
    }

    #[test]
    fn inadmissible_rank_rejected() {
        assert!(matches!("E9".parse::<CartanType>(), Err(Error::InadmissibleRank { .. })));
        assert!("D3".parse::<CartanType>().is_err());
        assert!("G3".parse::<CartanType>().is_err());
    }

    #[test]
    fn bad_primes_match_table() {
        let b = |s: &str| s.parse::<CartanType>().unwrap().bad_prime_bound();
        assert_eq!(b("A5"), 1);
        assert_eq!(b("C4"), 4);
        assert_eq!(b("B7"), 2);
        assert_eq!(b("D6"), 2);
        assert_eq!(b("G2"), 3);
        assert_eq!(b("F4"), 3);
        assert_eq!(b("E6"), 3);
        assert_eq!(b("E7"), 19);
        assert_eq!(b("E8"), 31);
        assert_eq!(b("T3"), 1);
    }

    #[test]
    fn b2_cartan_entries() {
        let c = "B2".parse::<CartanType>().unwrap().cartan_matrix();
        assert_eq!(c, vec![vec![2, -2], vec![-1, 2]]);
    }
}
