//! Simple root systems in Bourbaki realizations, Weyl words, marks and the
//! centre `P(R∨)/Q(R∨)`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dynkin::{CartanType, TypeLabel};
use crate::error::{Error, Result};
use crate::exact::{self, dot, frac, int, QVec, Q};
use crate::lattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub ambient_dim: usize,
    #[serde(with = "exact::serde_qmat")]
    pub simple_roots: Vec<QVec>,
    #[serde(with = "exact::serde_qmat")]
    pub positive_roots: Vec<QVec>,
    /// Coefficients of each positive root in the simple roots.
    pub positive_root_coords: Vec<Vec<i64>>,
    #[serde(with = "exact::serde_qvec")]
    pub highest_root: QVec,
    #[serde(with = "exact::serde_qvec")]
    pub minimal_root: QVec,
    /// Simple coroots, `2α/(α,α)`.
    #[serde(with = "exact::serde_qmat")]
    pub coroots: Vec<QVec>,
    pub cartan_matrix: Vec<Vec<i64>>,
    #[serde(with = "exact::serde_qmat")]
    pub fundamental_coweights: Vec<QVec>,
    #[serde(with = "exact::serde_qmat")]
    pub coroot_lattice_basis: Vec<QVec>,
    #[serde(with = "exact::serde_qmat")]
    pub coweight_lattice_basis: Vec<QVec>,
}

/// Generator of `P(R∨)/Q(R∨)` of the given order, in fundamental-coweight
/// coordinates and as an ambient vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterGenerator {
    pub order: u64,
    pub coweight_coords: Vec<i64>,
    #[serde(with = "exact::serde_qvec")]
    pub vector: QVec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterStructure {
    pub order: u64,
    /// Nontrivial invariant factors of the Cartan matrix.
    pub invariants: Vec<u64>,
    pub generators: Vec<CenterGenerator>,
    pub w0_word: Vec<usize>,
}

fn e(n: usize, i: usize) -> QVec {
    exact::unit(n, i)
}

fn vsum(parts: &[(i64, i64, usize)], n: usize) -> QVec {
    let mut v = exact::zeros(n);
    for &(p, q, i) in parts {
        v[i] += frac(p, q);
    }
    v
}

fn simple_roots_for(t: CartanType) -> (usize, Vec<QVec>) {
    let r = t.rank;
    match t.label {
        TypeLabel::A => {
            let n = r + 1;
            (n, (0..r).map(|i| vsum(&[(1, 1, i), (-1, 1, i + 1)], n)).collect())
        }
        TypeLabel::B | TypeLabel::C | TypeLabel::D => {
            let n = r;
            let mut roots: Vec<QVec> = (0..r - 1)
                .map(|i| vsum(&[(1, 1, i), (-1, 1, i + 1)], n))
                .collect();
            roots.push(match t.label {
                TypeLabel::B => e(n, r - 1),
                TypeLabel::C => exact::scale(&int(2), &e(n, r - 1)),
                _ => vsum(&[(1, 1, r - 2), (1, 1, r - 1)], n),
            });
            (n, roots)
        }
        TypeLabel::E => {
            let n = 8;
            let mut a1 = vec![frac(-1, 2); 8];
            a1[0] = frac(1, 2);
            a1[7] = frac(1, 2);
            let mut roots = vec![a1, vsum(&[(1, 1, 0), (1, 1, 1)], n)];
            for i in 0..6 {
                roots.push(vsum(&[(-1, 1, i), (1, 1, i + 1)], n));
            }
            roots.truncate(r);
            (n, roots)
        }
        TypeLabel::F => {
            let n = 4;
            (
                n,
                vec![
                    vsum(&[(1, 1, 1), (-1, 1, 2)], n),
                    vsum(&[(1, 1, 2), (-1, 1, 3)], n),
                    e(n, 3),
                    vsum(&[(1, 2, 0), (-1, 2, 1), (-1, 2, 2), (-1, 2, 3)], n),
                ],
            )
        }
        TypeLabel::G => {
            let n = 3;
            (
                n,
                vec![
                    vsum(&[(1, 1, 0), (-1, 1, 1)], n),
                    vsum(&[(-2, 1, 0), (1, 1, 1), (1, 1, 2)], n),
                ],
            )
        }
    }
}

pub fn coroot_of(alpha: &[Q]) -> QVec {
    let c = int(2) / dot(alpha, alpha);
    exact::scale(&c, alpha)
}

/// Reflection `v − (α,v)α∨`.
pub fn reflect_in(alpha: &[Q], v: &[Q]) -> QVec {
    let c = int(2) * dot(alpha, v) / dot(alpha, alpha);
    exact::axpy(v, &-c, alpha)
}

impl RootDatum {
    pub fn build(label: TypeLabel, rank: usize) -> Result<RootDatum> {
        Self::from_type(CartanType::new(label, rank)?)
    }

    pub fn from_type(t: CartanType) -> Result<RootDatum> {
        let (ambient_dim, simple_roots) = simple_roots_for(t);
        let r = t.rank;
        let coroots: Vec<QVec> = simple_roots.iter().map(|a| coroot_of(a)).collect();
        let mut cartan_matrix = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let v = dot(&simple_roots[j], &coroots[i]);
                cartan_matrix[i][j] = exact::to_i64(&v)
                    .ok_or_else(|| Error::Internal("non-integral Cartan entry".into()))?;
            }
        }

        // reflection closure in simple-root coordinates
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut c = vec![0; r];
            c[i] = 1;
            seen.insert(c.clone());
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| c[j] * cartan_matrix[i][j]).sum();
                let mut d = c.clone();
                d[i] -= pairing;
                if seen.insert(d.clone()) {
                    queue.push_back(d);
                }
            }
        }
        let mut positive_root_coords: Vec<Vec<i64>> =
            seen.into_iter().filter(|c| c.iter().all(|&x| x >= 0)).collect();
        positive_root_coords.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let to_ambient = |c: &[i64]| {
            let cq: QVec = c.iter().map(|&x| int(x)).collect();
            exact::combine(&cq, &simple_roots, ambient_dim)
        };
        let positive_roots: Vec<QVec> = positive_root_coords.iter().map(|c| to_ambient(c)).collect();
        let highest_root = positive_roots
            .last()
            .cloned()
            .ok_or_else(|| Error::Internal("empty root system".into()))?;
        let minimal_root = exact::neg(&highest_root);

        let g = exact::gram(&simple_roots);
        let ginv = exact::inverse(&g).ok_or_else(|| Error::Internal("singular Gram".into()))?;
        let fundamental_coweights: Vec<QVec> = (0..r)
            .map(|j| {
                let c: QVec = (0..r).map(|k| ginv[k][j].clone()).collect();
                exact::combine(&c, &simple_roots, ambient_dim)
            })
            .collect();

        Ok(RootDatum {
            type_label: t.label,
            rank: r,
            ambient_dim,
            coroot_lattice_basis: coroots.clone(),
            coweight_lattice_basis: fundamental_coweights.clone(),
            simple_roots,
            positive_roots,
            positive_root_coords,
            highest_root,
            minimal_root,
            coroots,
            cartan_matrix,
            fundamental_coweights,
        })
    }

    /// Decode a JSON datum and check that it agrees with the canonical one.
    pub fn from_json(s: &str) -> Result<RootDatum> {
        let d: RootDatum = serde_json::from_str(s)
            .map_err(|e| Error::parse("root datum", &exact::clip(s), e.to_string()))?;
        let canon = RootDatum::build(d.type_label, d.rank)?;
        if canon != d {
            return Err(Error::Mismatch(format!("{}{}", d.type_label, d.rank)));
        }
        Ok(d)
    }

    pub fn cartan_type(&self) -> CartanType {
        CartanType {
            label: self.type_label,
            rank: self.rank,
        }
    }

    pub fn name(&self) -> String {
        self.cartan_type().to_string()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// `dim K = rank + |R|`.
    pub fn dim_group(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    /// Coefficients `a_i` of the highest root in the simple roots.
    pub fn highest_root_coeffs(&self) -> &[i64] {
        self.positive_root_coords.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn check_dim(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `(α_i, v)` for all simple roots (fundamental-coweight coordinates).
    pub fn coweight_coords(&self, v: &[Q]) -> QVec {
        self.simple_roots.iter().map(|a| dot(a, v)).collect()
    }

    /// Whether `v` lies in the real span of the roots.
    pub fn in_span(&self, v: &[Q]) -> bool {
        let back = exact::combine(&self.coweight_coords(v), &self.fundamental_coweights, self.ambient_dim);
        back == v
    }

    /// Coordinates of `v` (in the root span) in the basis of simple coroots.
    pub fn coroot_coords(&self, v: &[Q]) -> Option<QVec> {
        exact::solve_in_span(&self.coroots, v)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(Error::ReflectionIndex {
                index: i,
                rank: self.rank,
            });
        }
        Ok(())
    }

    /// Simple reflection `s_i`, 1-based.
    pub fn reflect(&self, i: usize, v: &[Q]) -> QVec {
        let a = &self.simple_roots[i - 1];
        exact::axpy(v, &-dot(a, v), &self.coroots[i - 1])
    }

    /// Apply `word` successively: `[i1, i2]` maps `v` to `s_i2(s_i1(v))`.
    pub fn apply_weyl_word(&self, word: &[usize], v: &[Q]) -> Result<QVec> {
        self.check_dim(v)?;
        for &i in word {
            self.check_index(i)?;
        }
        Ok(self.apply_word_unchecked(word, v))
    }

    pub(crate) fn apply_word_unchecked(&self, word: &[usize], v: &[Q]) -> QVec {
        word.iter().fold(v.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    /// `ρ∨`, the sum of the fundamental coweights.
    pub fn rho_check(&self) -> QVec {
        let ones = vec![Q::one(); self.rank];
        exact::combine(&ones, &self.fundamental_coweights, self.ambient_dim)
    }

    /// Reduced word for the Weyl element `w` with `w(ρ∨) = image`.
    pub fn word_from_rho_image(&self, image: &[Q]) -> Vec<usize> {
        let mut v = image.to_vec();
        let mut recorded = Vec::new();
        while let Some(i) = (1..=self.rank).find(|&i| dot(&self.simple_roots[i - 1], &v).is_negative()) {
            v = self.reflect(i, &v);
            recorded.push(i);
        }
        recorded.reverse();
        recorded
    }

    /// Reduced form of an arbitrary word.
    pub fn reduce_word(&self, word: &[usize]) -> Vec<usize> {
        let img = self.apply_word_unchecked(word, &self.rho_check());
        self.word_from_rho_image(&img)
    }

    pub fn w0_word(&self) -> Vec<usize> {
        self.word_from_rho_image(&exact::neg(&self.rho_check()))
    }

    /// Marks `m_1..m_r` of `θ∨` in the simple coroots, with `m_{r+1} = 1`.
    pub fn extended_marks(&self) -> Result<Vec<i64>> {
        let theta_check = coroot_of(&self.highest_root);
        let m = exact::solve_in_span(&self.coroots, &theta_check)
            .ok_or_else(|| Error::Internal("θ∨ not in the coroot span".into()))?;
        let mut out: Vec<i64> = m
            .iter()
            .map(|x| {
                exact::to_i64(x)
                    .filter(|&v| v > 0)
                    .ok_or_else(|| Error::Internal(format!("non-integral mark {x}")))
            })
            .collect::<Result<_>>()?;
        out.push(1);
        Ok(out)
    }

    /// Cartan matrix as a big-integer matrix.
    fn cartan_z(&self) -> lattice::ZMat {
        lattice::from_i64(&self.cartan_matrix)
    }

    pub fn center_structure(&self) -> Result<CenterStructure> {
        // rows of C are the simple coroots in fundamental-coweight coordinates
        let s = lattice::smith(&self.cartan_z());
        let vinv = lattice::unimodular_inverse(&s.v)
            .ok_or_else(|| Error::Internal("Smith transform not unimodular".into()))?;
        let inv = s.invariants();
        let mut order = BigInt::one();
        let mut invariants = Vec::new();
        let mut generators = Vec::new();
        for (k, d) in inv.iter().enumerate() {
            if d.is_zero() {
                return Err(Error::Internal("singular Cartan matrix".into()));
            }
            order *= d;
            if d > &BigInt::one() {
                let d64 = d.to_u64().ok_or_else(|| Error::Internal("huge invariant".into()))?;
                invariants.push(d64);
                let coords: Vec<i64> = vinv[k]
                    .iter()
                    .map(|x| x.to_i64().ok_or_else(|| Error::Internal("huge coordinate".into())))
                    .collect::<Result<_>>()?;
                let cq: QVec = coords.iter().map(|&x| int(x)).collect();
                generators.push(CenterGenerator {
                    order: d64,
                    vector: exact::combine(&cq, &self.fundamental_coweights, self.ambient_dim),
                    coweight_coords: coords,
                });
            }
        }
        Ok(CenterStructure {
            order: order.to_u64().ok_or_else(|| Error::Internal("huge centre".into()))?,
            invariants,
            generators,
            w0_word: self.w0_word(),
        })
    }

    /// Class of a coweight `v ∈ P(R∨)` in `P(R∨)/Q(R∨)`, as residues modulo
    /// the nontrivial invariant factors. `None` if `v` is not a coweight.
    pub fn center_class(&self, v: &[Q]) -> Option<Vec<u64>> {
        let z = self.coweight_coords(v);
        if !exact::is_integral(&z) {
            return None;
        }
        let s = lattice::smith(&self.cartan_z());
        let zi: Vec<BigInt> = z.iter().map(|x| x.to_integer()).collect();
        let inv = s.invariants();
        let mut out = Vec::new();
        for (k, d) in inv.iter().enumerate() {
            if d > &BigInt::one() {
                let c: BigInt = (0..self.rank).map(|i| &zi[i] * &s.v[i][k]).sum();
                out.push(c.mod_floor(d).to_u64()?);
            }
        }
        Some(out)
    }

    /// All roots, positive first then their negatives.
    pub fn all_roots(&self) -> Vec<QVec> {
        let mut out = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|r| exact::neg(r)));
        out
    }

    /// Whether every root is integral at `v` (i.e. `exp v` is central).
    pub fn is_central(&self, v: &[Q]) -> bool {
        self.simple_roots.iter().all(|a| dot(a, v).is_integer())
    }

    /// Set of positive-root indices, used for quick comparisons.
    pub fn root_index(&self, root: &[Q]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.as_slice() == root)
    }

    /// Inner product matrix of the simple roots.
    pub fn gram(&self) -> Vec<QVec> {
        exact::gram(&self.simple_roots)
    }

    /// Positive roots that are integral at `x`, with their values.
    pub fn integral_roots_at(&self, x: &[Q]) -> Vec<(usize, i64)> {
        self.positive_roots
            .iter()
            .enumerate()
            .filter_map(|(k, r)| {
                let v = dot(r, x);
                v.is_integer().then(|| (k, v.to_integer().to_i64().unwrap_or(i64::MAX)))
            })
            .collect()
    }

    pub fn positive_root_set(&self) -> BTreeSet<Vec<i64>> {
        self.positive_root_coords.iter().cloned().collect()
    }
}

/// Parse a Weyl word such as `"[1,2,1]"`, `"1 2 1"` or `"[]"`.
pub fn parse_weyl_word(input: &str) -> Result<Vec<usize>> {
    if input.len() > exact::MAX_LITERAL_LEN {
        return Err(Error::parse("Weyl word", &exact::clip(input), "too long"));
    }
    let s = input.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(s);
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| Error::parse("Weyl word", &exact::clip(input), e.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::from_type(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn counts() {
        for (t, n) in [
            ("A1", 1),
            ("A2", 3),
            ("B3", 9),
            ("C4", 16),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            assert_eq!(datum(t).num_positive_roots(), n, "{t}");
        }
    }

    #[test]
    fn a2_cartan() {
        assert_eq!(datum("A2").cartan_matrix, vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn c2_realization() {
        let d = datum("C2");
        assert_eq!(d.simple_roots[0], vec![int(1), int(-1)]);
        assert_eq!(d.simple_roots[1], vec![int(0), int(2)]);
        assert_eq!(d.minimal_root, vec![int(-2), int(0)]);
    }

    #[test]
    fn marks() {
        assert_eq!(datum("G2").extended_marks().unwrap(), vec![1, 2, 1]);
        assert_eq!(datum("F4").extended_marks().unwrap(), vec![2, 3, 2, 1, 1]);
        assert_eq!(datum("E8").extended_marks().unwrap(), vec![2, 3, 4, 6, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn centres() {
        assert_eq!(datum("A2").center_structure().unwrap().order, 3);
        assert_eq!(datum("C2").center_structure().unwrap().order, 2);
        assert_eq!(datum("E8").center_structure().unwrap().order, 1);
        assert_eq!(datum("D4").center_structure().unwrap().invariants, vec![2, 2]);
    }

    #[test]
    fn words() {
        let d = datum("A1");
        let half = exact::scale(&frac(1, 2), &d.simple_roots[0]);
        assert_eq!(d.apply_weyl_word(&[1], &half).unwrap(), exact::neg(&half));
        assert!(d.apply_weyl_word(&[2], &half).is_err());
        assert_eq!(parse_weyl_word("[1, 2,1]").unwrap(), vec![1, 2, 1]);
        assert_eq!(parse_weyl_word("[]").unwrap(), Vec::<usize>::new());
        assert!(parse_weyl_word("[a]").is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = datum("G2");
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(RootDatum::from_json(&s).unwrap(), d);
        let tampered = s.replacen("\"1/1\"", "\"2/1\"", 1);
        assert!(RootDatum::from_json(&tampered).is_err());
    }
}
