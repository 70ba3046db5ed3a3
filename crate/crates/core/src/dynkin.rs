//! Classification of Cartan matrices into simple Dynkin types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub fn as_char(self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => TypeLabel::A,
            'B' => TypeLabel::B,
            'C' => TypeLabel::C,
            'D' => TypeLabel::D,
            'E' => TypeLabel::E,
            'F' => TypeLabel::F,
            'G' => TypeLabel::G,
            _ => return None,
        })
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                TypeLabel::from_char(c).ok_or_else(|| Error::UnknownLabel(s.to_owned()))
            }
            _ => Err(Error::UnknownLabel(s.to_owned())),
        }
    }
}

/// Largest rank accepted for the classical series.
pub const MAX_RANK: usize = 24;

/// A simple type such as `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub label: TypeLabel,
    pub rank: usize,
}

impl CartanType {
    pub fn new(label: TypeLabel, rank: usize) -> Result<Self> {
        let constraint = match label {
            TypeLabel::A if rank < 1 => Some("A requires rank >= 1".to_owned()),
            TypeLabel::B if rank < 2 => Some("B requires rank >= 2".to_owned()),
            TypeLabel::C if rank < 2 => Some("C requires rank >= 2".to_owned()),
            TypeLabel::D if rank < 3 => Some("D requires rank >= 3".to_owned()),
            TypeLabel::E if !(6..=8).contains(&rank) => Some("E requires rank 6, 7 or 8".to_owned()),
            TypeLabel::F if rank != 4 => Some("F requires rank 4".to_owned()),
            TypeLabel::G if rank != 2 => Some("G requires rank 2".to_owned()),
            _ if rank > MAX_RANK => Some(format!("rank is capped at {MAX_RANK}")),
            _ => None,
        };
        if let Some(constraint) = constraint {
            return Err(Error::InvalidType {
                label: label.as_char(),
                rank,
                constraint,
            });
        }
        Ok(CartanType { label, rank })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Accepts `"E8"`, `"e8"`, `"A_2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let first = chars
            .next()
            .ok_or_else(|| Error::parse("group", s, "empty"))?;
        let label = TypeLabel::from_char(first).ok_or_else(|| Error::UnknownLabel(s.to_owned()))?;
        let rest = chars.as_str();
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        if rest.is_empty() || rest.len() > 4 || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse("group", s, "expected a type letter followed by a rank"));
        }
        let rank: usize = rest
            .parse()
            .map_err(|_| Error::parse("group", s, "rank is not a number"))?;
        CartanType::new(label, rank)
    }
}

/// Split a Cartan matrix into connected components and classify each.
/// Returned types are sorted; a rank-2 double bond is reported as `C2`.
pub fn classify(cartan: &[Vec<i64>]) -> Result<Vec<CartanType>> {
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
        let sub: Vec<Vec<i64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| cartan[i][j]).collect())
            .collect();
        out.push(classify_connected(&sub)?);
    }
    out.sort();
    Ok(out)
}

fn classify_connected(c: &[Vec<i64>]) -> Result<CartanType> {
    let n = c.len();
    let fail = || Error::Internal(format!("Cartan matrix {c:?} is not of finite type"));
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && c[i][j] != 0).collect())
        .collect();
    let edges: usize = nbrs.iter().map(Vec::len).sum::<usize>() / 2;
    if edges + 1 != n {
        return Err(fail());
    }
    // bond multiplicity between i and j is c[i][j] * c[j][i]
    let mut multi = None;
    for i in 0..n {
        for &j in &nbrs[i] {
            let m = c[i][j] * c[j][i];
            if m > 1 && i < j {
                if multi.is_some() {
                    return Err(fail());
                }
                multi = Some((i, j, m));
            }
        }
    }
    let label_rank = |l, r| CartanType { label: l, rank: r };
    let Some((i, j, m)) = multi else {
        let branches: Vec<usize> = (0..n).filter(|&v| nbrs[v].len() >= 3).collect();
        return match branches.as_slice() {
            [] => Ok(label_rank(TypeLabel::A, n)),
            [b] if nbrs[*b].len() == 3 => {
                let mut arms: Vec<usize> = nbrs[*b]
                    .iter()
                    .map(|&s| arm_length(&nbrs, *b, s))
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => Ok(label_rank(TypeLabel::D, n)),
                    [1, 2, 2] => Ok(label_rank(TypeLabel::E, 6)),
                    [1, 2, 3] => Ok(label_rank(TypeLabel::E, 7)),
                    [1, 2, 4] => Ok(label_rank(TypeLabel::E, 8)),
                    _ => Err(fail()),
                }
            }
            _ => Err(fail()),
        };
    };
    if nbrs.iter().any(|v| v.len() > 2) {
        return Err(fail());
    }
    match m {
        3 if n == 2 => Ok(label_rank(TypeLabel::G, 2)),
        2 if n == 2 => Ok(label_rank(TypeLabel::C, 2)),
        2 => {
            let (end, other) = if nbrs[i].len() == 1 {
                (i, j)
            } else if nbrs[j].len() == 1 {
                (j, i)
            } else if n == 4 {
                return Ok(label_rank(TypeLabel::F, 4));
            } else {
                return Err(fail());
            };
            // c[end][other] = -2 means the end root is short
            if c[end][other] == -2 {
                Ok(label_rank(TypeLabel::B, n))
            } else {
                Ok(label_rank(TypeLabel::C, n))
            }
        }
        _ => Err(fail()),
    }
}

fn arm_length(nbrs: &[Vec<usize>], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = nbrs[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [nx] => {
                prev = cur;
                cur = *nx;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_groups() {
        assert_eq!(
            "e8".parse::<CartanType>().unwrap(),
            CartanType { label: TypeLabel::E, rank: 8 }
        );
        assert_eq!("A_2".parse::<CartanType>().unwrap().to_string(), "A2");
        assert!("E9".parse::<CartanType>().is_err());
        assert!("D2".parse::<CartanType>().is_err());
        assert!("X3".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
        assert!("A99999".parse::<CartanType>().is_err());
    }

    #[test]
    fn classify_small() {
        let a1a1 = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(classify(&a1a1).unwrap().len(), 2);
        let b3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]];
        assert_eq!(classify(&b3).unwrap()[0].to_string(), "B3");
        let c3 = vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]];
        assert_eq!(classify(&c3).unwrap()[0].to_string(), "C3");
        let g2 = vec![vec![2, -1], vec![-3, 2]];
        assert_eq!(classify(&g2).unwrap()[0].to_string(), "G2");
        let b2 = vec![vec![2, -2], vec![-1, 2]];
        assert_eq!(classify(&b2).unwrap()[0].to_string(), "C2");
    }
}
