//! Exact rational scalars and vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type QVec = Vec<Q>;

/// Longest rational literal the parser will look at.
pub const MAX_LITERAL_LEN: usize = 4096;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

pub fn zeros(n: usize) -> QVec {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Q]) -> QVec {
    a.iter().map(|x| -x).collect()
}

/// `a + c*b`
pub fn axpy(a: &[Q], c: &Q, b: &[Q]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

/// Linear combination `sum_i c[i] * vs[i]`; `dim` is used when `vs` is empty.
pub fn combine(c: &[Q], vs: &[QVec], dim: usize) -> QVec {
    let mut out = zeros(dim);
    for (ci, v) in c.iter().zip(vs) {
        if ci.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += ci * x;
        }
    }
    out
}

pub fn is_integral(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

/// Least common multiple of all denominators.
pub fn common_denominator(v: &[Q]) -> BigInt {
    v.iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Render as `"p/q"`; integers become `"n/1"`.
pub fn render(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short human form: integers without a denominator.
pub fn render_short(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        render(x)
    }
}

pub fn render_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(render_short).collect();
    format!("({})", parts.join(", "))
}

fn parse_int(s: &str, input: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse("rational", input, "expected decimal digits"));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::parse("rational", input, e.to_string()))
}

/// First few characters of `s`, for diagnostics.
pub fn clip(s: &str) -> String {
    s.chars().take(32).collect()
}

/// Parse `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(input: &str) -> Result<Q> {
    if input.len() > MAX_LITERAL_LEN {
        return Err(Error::parse("rational", &clip(input), "literal too long"));
    }
    let s = input.trim();
    match s.split_once('/') {
        None => Ok(Q::from_integer(parse_int(s, input)?)),
        Some((p, q)) => {
            let p = parse_int(p.trim(), input)?;
            let q = parse_int(q.trim(), input)?;
            if q.is_zero() {
                return Err(Error::parse("rational", input, "zero denominator"));
            }
            Ok(Q::new(p, q))
        }
    }
}

/// Parse a comma separated list, optionally wrapped in `()` or `[]`.
pub fn parse_rational_vec(input: &str) -> Result<QVec> {
    let s = input.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .or_else(|| s.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
        .unwrap_or(s);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_rational).collect()
}

/// Solve `sum_j a[j] * x_j = b` for vectors `a[j]` (columns), returning the
/// unique solution when the columns are independent and `b` lies in their span.
pub fn solve_in_span(cols: &[QVec], b: &[Q]) -> Option<QVec> {
    let n = cols.len();
    let m = b.len();
    if cols.iter().any(|c| c.len() != m) {
        return None;
    }
    // augmented m x (n+1)
    let mut rows: Vec<QVec> = (0..m)
        .map(|i| {
            let mut r: QVec = cols.iter().map(|c| c[i].clone()).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let Some(p) = (pivot_row..m).find(|&i| !rows[i][col].is_zero()) else {
            return None; // dependent columns
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let prow = rows[pivot_row].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != pivot_row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, y) in r.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&i| rows[i][n].clone()).collect())
}

/// Inverse of a square matrix (row-major), if it exists.
pub fn inverse(a: &[QVec]) -> Option<Vec<QVec>> {
    let n = a.len();
    let cols: Vec<QVec> = (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect();
    let mut inv_cols = Vec::with_capacity(n);
    for i in 0..n {
        inv_cols.push(solve_in_span(&cols, &unit(n, i))?);
    }
    Some((0..n).map(|i| inv_cols.iter().map(|c| c[i].clone()).collect()).collect())
}

pub fn gram(vs: &[QVec]) -> Vec<QVec> {
    vs.iter().map(|a| vs.iter().map(|b| dot(a, b)).collect()).collect()
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Serde adapters rendering rationals as `"p/q"` strings.
pub mod serde_q {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&render(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

pub mod serde_qvec {
    use super::*;
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&render(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<QVec, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect()
    }
}

pub mod serde_qmat {
    use super::*;
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[QVec], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let r: Vec<String> = row.iter().map(render).collect();
            seq.serialize_element(&r)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<QVec>, D::Error> {
        let m = Vec::<Vec<String>>::deserialize(d)?;
        m.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s).map_err(de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert_eq!(render(&frac(-2, 4)), "-1/2");
        assert_eq!(render(&int(3)), "3/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/").is_err());
        assert!(parse_rational("--1").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(
            parse_rational_vec("[1/2, -1]").unwrap(),
            vec![frac(1, 2), int(-1)]
        );
    }

    #[test]
    fn solve_basic() {
        let cols = vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]];
        let x = solve_in_span(&cols, &[int(2), int(3), int(5)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert!(solve_in_span(&cols, &[int(2), int(3), int(4)]).is_none());
        let inv = inverse(&[vec![int(2), int(-1)], vec![int(-1), int(2)]]).unwrap();
        assert_eq!(inv[0], vec![frac(2, 3), frac(1, 3)]);
    }
}
