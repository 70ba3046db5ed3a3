//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZMat = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    /// `u * a * v == d`
    pub u: ZMat,
    pub v: ZMat,
    pub d: ZMat,
}

impl Smith {
    /// Diagonal entries of `d`, including zeros, length `min(rows, cols)`.
    pub fn invariants(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn from_i64(a: &[Vec<i64>]) -> ZMat {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mat_mul(a: &ZMat, b: &ZMat) -> ZMat {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, br)| x * &br[j]).sum())
                .collect()
        })
        .collect()
}

fn swap_cols(a: &mut ZMat, i: usize, j: usize) {
    for r in a.iter_mut() {
        r.swap(i, j);
    }
}

/// row[dst] -= f * row[src]
fn row_sub(a: &mut ZMat, dst: usize, src: usize, f: &BigInt) {
    let s = a[src].clone();
    for (x, y) in a[dst].iter_mut().zip(&s) {
        *x -= f * y;
    }
}

fn col_sub(a: &mut ZMat, dst: usize, src: usize, f: &BigInt) {
    for r in a.iter_mut() {
        let y = r[src].clone();
        r[dst] -= f * y;
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith(a: &ZMat) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { u, v, d };
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if !d[i][t].is_zero() {
                    let f = d[i][t].div_floor(&d[t][t]);
                    row_sub(&mut d, i, t, &f);
                    row_sub(&mut u, i, t, &f);
                    clean &= d[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !d[t][j].is_zero() {
                    let f = d[t][j].div_floor(&d[t][t]);
                    col_sub(&mut d, j, t, &f);
                    col_sub(&mut v, j, t, &f);
                    clean &= d[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[i][j].is_multiple_of(&d[t][t]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::from(-1);
                    row_sub(&mut d, t, i, &one);
                    row_sub(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    Smith { u, v, d }
}

/// Inverse of a unimodular matrix, via the adjugate-free route of solving
/// with rational arithmetic and checking integrality.
pub fn unimodular_inverse(a: &ZMat) -> Option<ZMat> {
    use crate::exact::{inverse, Q};
    let qa: Vec<Vec<Q>> = a
        .iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect();
    let inv = inverse(&qa)?;
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

/// Index of the row lattice of a full-rank square integer matrix in `Z^n`.
pub fn index_in_full(a: &ZMat) -> BigInt {
    let s = smith(a);
    s.invariants().into_iter().fold(BigInt::one(), |acc, d| acc * d)
}
