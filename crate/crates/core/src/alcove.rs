//! Faces of the fundamental alcove, their centralizer root data, reduction
//! into the closed alcove by the affine Weyl group, and toric-cut data.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dynkin::{self, CartanType};
use crate::error::{Error, Result};
use crate::exact::{self, dot, int, QVec, Q};
use crate::lattice;
use crate::rootsys::{coroot_of, RootDatum};

/// Faces are only enumerated up to this rank (2^17 − 1 faces).
pub const MAX_FACE_RANK: usize = 16;

/// A relatively open face of the alcove, named by the walls containing it.
/// Walls `1..=rank` are `α_i = 0`; wall `rank+1` is `θ = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveFace {
    pub id: String,
    pub wall_set: Vec<usize>,
    pub dim: usize,
    /// Labels of the closure vertices: 0 is the origin, `j` is opposite wall `j`.
    pub vertex_ids: Vec<usize>,
    #[serde(with = "exact::serde_qvec")]
    pub interior_point: QVec,
}

impl AlcoveFace {
    /// `σ ≤ τ`: `self` lies in the closure of `other`.
    pub fn leq(&self, other: &AlcoveFace) -> bool {
        other.wall_set.iter().all(|w| self.wall_set.contains(w))
    }

    pub fn is_vertex(&self) -> bool {
        self.dim == 0
    }

    pub fn is_open(&self) -> bool {
        self.wall_set.is_empty()
    }
}

impl fmt::Display for AlcoveFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// Render a wall set as `"w1.w3"`; the empty set is `"open"`.
pub fn face_id(walls: &[usize]) -> String {
    if walls.is_empty() {
        return "open".to_owned();
    }
    walls
        .iter()
        .map(|w| format!("w{w}"))
        .collect::<Vec<_>>()
        .join(".")
}

/// Inverse of [`face_id`]. Walls must be strictly increasing.
pub fn parse_face_id(input: &str) -> Result<Vec<usize>> {
    let s = input.trim();
    if s == "open" {
        return Ok(Vec::new());
    }
    if s.len() > exact::MAX_LITERAL_LEN {
        return Err(Error::parse("face id", &exact::clip(s), "too long"));
    }
    let mut out: Vec<usize> = Vec::new();
    for part in s.split('.') {
        let n = part
            .strip_prefix('w')
            .filter(|d| !d.is_empty() && d.len() <= 4 && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| Error::parse("face id", &exact::clip(s), "expected w<number> parts"))?;
        let w: usize = n
            .parse()
            .map_err(|_| Error::parse("face id", &exact::clip(s), "bad wall number"))?;
        if w == 0 || out.last().is_some_and(|&p| p >= w) {
            return Err(Error::parse("face id", &exact::clip(s), "walls must be increasing and positive"));
        }
        out.push(w);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub vertex_id: usize,
    #[serde(with = "exact::serde_qvec")]
    pub coordinates: QVec,
    pub is_central: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRootData {
    pub face_id: String,
    /// Positive roots integral on the face.
    #[serde(with = "exact::serde_qmat")]
    pub r_sigma: Vec<QVec>,
    /// Values `α(σ) ∈ {0, 1}` of the roots in `r_sigma`.
    pub alpha_sigma_values: Vec<i64>,
    /// `|R_σ|` counting both signs.
    pub r_sigma_size: usize,
    #[serde(with = "exact::serde_qmat")]
    pub b_sigma: Vec<QVec>,
    pub component_types: Vec<CartanType>,
    pub dim_k_sigma: usize,
    pub dim_commutator: usize,
    pub central_torus_dim: usize,
}

impl FaceRootData {
    pub fn type_string(&self) -> String {
        type_string(&self.component_types)
    }
}

pub fn type_string(types: &[CartanType]) -> String {
    if types.is_empty() {
        return "1".to_owned();
    }
    types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("x")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaShift {
    pub gamma_order: u64,
    pub g_sigma_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricData {
    pub weights_m: Vec<i64>,
    pub labels: Vec<i64>,
    pub lcm_m: i64,
    pub l_coefficients: Vec<i64>,
    pub is_standard_projective: bool,
}

/// Affine map `x ↦ w(x) + t` with `w` a reduced Weyl word and `t ∈ Q(R∨)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineWord {
    pub linear_word: Vec<usize>,
    #[serde(with = "exact::serde_qvec")]
    pub translation: QVec,
    /// `t` in simple-coroot coordinates.
    pub translation_coroot_coords: Vec<i64>,
}

impl AffineWord {
    pub fn apply(&self, datum: &RootDatum, x: &[Q]) -> Result<QVec> {
        let w = datum.apply_weyl_word(&self.linear_word, x)?;
        Ok(exact::add(&w, &self.translation))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    #[serde(with = "exact::serde_qvec")]
    pub xi_reduced: QVec,
    pub affine_word: AffineWord,
    /// Number of reflections performed after the initial translation.
    pub steps: usize,
}

/// The fundamental alcove of a root datum with cached vertex data.
#[derive(Debug, Clone)]
pub struct Alcove {
    pub datum: RootDatum,
    vertices: Vec<Vertex>,
    theta_check: QVec,
    s_theta_word: Vec<usize>,
}

impl Alcove {
    pub fn new(datum: RootDatum) -> Alcove {
        let r = datum.rank;
        let a = datum.highest_root_coeffs().to_vec();
        let mut vertices = vec![Vertex {
            vertex_id: 0,
            coordinates: exact::zeros(datum.ambient_dim),
            is_central: true,
        }];
        for j in 1..=r {
            let c = Q::new(BigInt::one(), BigInt::from(a[j - 1]));
            let v = exact::scale(&c, &datum.fundamental_coweights[j - 1]);
            vertices.push(Vertex {
                vertex_id: j,
                is_central: datum.is_central(&v),
                coordinates: v,
            });
        }
        let theta_check = coroot_of(&datum.highest_root);
        let rho = datum.rho_check();
        let s_theta_rho = exact::axpy(&rho, &-dot(&datum.highest_root, &rho), &theta_check);
        let s_theta_word = datum.word_from_rho_image(&s_theta_rho);
        Alcove {
            datum,
            vertices,
            theta_check,
            s_theta_word,
        }
    }

    pub fn build(t: CartanType) -> Result<Alcove> {
        Ok(Alcove::new(RootDatum::from_type(t)?))
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn vertices_and_centrality(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id]
    }

    /// Reduced word of the reflection in `θ`.
    pub fn s_theta_word(&self) -> &[usize] {
        &self.s_theta_word
    }

    fn vertex_for_wall(&self, w: usize) -> usize {
        if w == self.rank() + 1 {
            0
        } else {
            w
        }
    }

    /// Face with the given wall set.
    pub fn face(&self, walls: &[usize]) -> Result<AlcoveFace> {
        let r = self.rank();
        let mut ws = walls.to_vec();
        ws.sort_unstable();
        ws.dedup();
        if ws.len() != walls.len() || ws.len() > r || ws.iter().any(|&w| w == 0 || w > r + 1) {
            return Err(Error::InvalidFace(walls.to_vec()));
        }
        let mut vertex_ids: Vec<usize> = (1..=r + 1)
            .filter(|w| !ws.contains(w))
            .map(|w| self.vertex_for_wall(w))
            .collect();
        vertex_ids.sort_unstable();
        let pts: Vec<QVec> = vertex_ids
            .iter()
            .map(|&v| self.vertices[v].coordinates.clone())
            .collect();
        let ones = vec![Q::one(); pts.len()];
        let sum = exact::combine(&ones, &pts, self.datum.ambient_dim);
        let interior_point = exact::scale(&Q::new(BigInt::one(), BigInt::from(pts.len())), &sum);
        Ok(AlcoveFace {
            id: face_id(&ws),
            dim: r - ws.len(),
            wall_set: ws,
            vertex_ids,
            interior_point,
        })
    }

    pub fn face_by_id(&self, id: &str) -> Result<AlcoveFace> {
        self.face(&parse_face_id(id)?)
    }

    pub fn open_face(&self) -> AlcoveFace {
        self.face(&[]).expect("open face")
    }

    /// Vertex face with the given label.
    pub fn vertex_face(&self, id: usize) -> Result<AlcoveFace> {
        let r = self.rank();
        if id > r {
            return Err(Error::InvalidFace(vec![id]));
        }
        let missing = if id == 0 { r + 1 } else { id };
        let walls: Vec<usize> = (1..=r + 1).filter(|&w| w != missing).collect();
        self.face(&walls)
    }

    /// The face spanned by the given vertex labels.
    pub fn face_from_vertices(&self, ids: &[usize]) -> Result<AlcoveFace> {
        let r = self.rank();
        let walls: Vec<usize> = (1..=r + 1)
            .filter(|&w| !ids.contains(&self.vertex_for_wall(w)))
            .collect();
        self.face(&walls)
    }

    /// All `2^{r+1} − 1` faces, ordered by dimension then vertex labels.
    pub fn enumerate_faces(&self) -> Result<Vec<AlcoveFace>> {
        let r = self.rank();
        if r > MAX_FACE_RANK {
            return Err(Error::InvalidType {
                label: self.datum.type_label.as_char(),
                rank: r,
                constraint: format!("face enumeration is limited to rank <= {MAX_FACE_RANK}"),
            });
        }
        let full = (1u64 << (r + 1)) - 1;
        let mut faces = Vec::with_capacity(full as usize);
        for mask in 0..full {
            let walls: Vec<usize> = (0..=r).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            faces.push(self.face(&walls)?);
        }
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertex_ids.cmp(&b.vertex_ids)));
        Ok(faces)
    }

    /// Walls active at a point of the closed alcove.
    pub fn walls_at(&self, x: &[Q]) -> Result<Vec<usize>> {
        if !self.in_closed_alcove(x) {
            return Err(Error::Internal(format!(
                "point {} is outside the closed alcove",
                exact::render_vec(x)
            )));
        }
        let mut walls: Vec<usize> = (1..=self.rank())
            .filter(|&i| dot(&self.datum.simple_roots[i - 1], x).is_zero())
            .collect();
        if dot(&self.datum.highest_root, x) == Q::one() {
            walls.push(self.rank() + 1);
        }
        Ok(walls)
    }

    pub fn face_containing(&self, x: &[Q]) -> Result<AlcoveFace> {
        self.face(&self.walls_at(x)?)
    }

    pub fn in_closed_alcove(&self, x: &[Q]) -> bool {
        self.datum.in_span(x)
            && self
                .datum
                .simple_roots
                .iter()
                .all(|a| !dot(a, x).is_negative())
            && dot(&self.datum.highest_root, x) <= Q::one()
    }

    /// Reduce `xi` into the closed alcove by the affine Weyl group.
    ///
    /// After translating by `−Σ ⌊c_i⌋ α_i∨` (with `c` the coroot coordinates)
    /// the loop reflects across the most violated wall, either a simple wall
    /// or the affine wall `θ = 1`. Termination: the potential
    /// `N(x) = #{(α, n) : α ∈ R₊, n ∈ Z, H_{α,n} separates x from the alcove}`
    /// is a nonnegative integer and each reflection across a separating
    /// wall of the alcove lowers it by at least one.
    pub fn reduce_to_alcove(&self, xi: &[Q]) -> Result<Reduction> {
        let d = &self.datum;
        d.check_dim(xi)?;
        if !d.in_span(xi) {
            return Err(Error::Mismatch(format!(
                "{} is not in the span of the roots",
                exact::render_vec(xi)
            )));
        }
        if self.in_closed_alcove(xi) {
            return Ok(Reduction {
                xi_reduced: xi.to_vec(),
                affine_word: AffineWord {
                    linear_word: Vec::new(),
                    translation: exact::zeros(d.ambient_dim),
                    translation_coroot_coords: vec![0; d.rank],
                },
                steps: 0,
            });
        }
        let c = d
            .coroot_coords(xi)
            .ok_or_else(|| Error::Internal("coroot coordinates".into()))?;
        let shift: QVec = c.iter().map(|x| -Q::from_integer(x.floor().to_integer())).collect();
        let mut t = exact::combine(&shift, &d.coroots, d.ambient_dim);
        let mut x = exact::add(xi, &t);
        let mut word: Vec<usize> = Vec::new();
        let mut steps = 0;
        loop {
            let mut worst: Option<(usize, Q)> = None;
            for i in 1..=d.rank {
                let v = dot(&d.simple_roots[i - 1], &x);
                if v.is_negative() && worst.as_ref().is_none_or(|(_, w)| -&v > *w) {
                    worst = Some((i, -v));
                }
            }
            let excess = dot(&d.highest_root, &x) - Q::one();
            if excess.is_positive() && worst.as_ref().is_none_or(|(_, w)| excess > *w) {
                worst = Some((d.rank + 1, excess));
            }
            let Some((wall, _)) = worst else { break };
            steps += 1;
            if wall <= d.rank {
                x = d.reflect(wall, &x);
                t = d.reflect(wall, &t);
                word.push(wall);
            } else {
                x = self.affine_reflect(&x);
                t = self.affine_reflect(&t);
                word.extend_from_slice(&self.s_theta_word);
            }
        }
        let linear_word = d.reduce_word(&word);
        let coords = d
            .coroot_coords(&t)
            .ok_or_else(|| Error::Internal("translation outside coroot span".into()))?;
        let translation_coroot_coords = coords
            .iter()
            .map(|q| exact::to_i64(q).ok_or_else(|| Error::Internal("translation not in Q(R∨)".into())))
            .collect::<Result<_>>()?;
        Ok(Reduction {
            xi_reduced: x,
            affine_word: AffineWord {
                linear_word,
                translation: t,
                translation_coroot_coords,
            },
            steps,
        })
    }

    /// `x ↦ s_θ(x) + θ∨`, the reflection in the wall `θ = 1`.
    fn affine_reflect(&self, x: &[Q]) -> QVec {
        let d = &self.datum;
        let s = exact::axpy(x, &-dot(&d.highest_root, x), &self.theta_check);
        exact::add(&s, &self.theta_check)
    }

    /// `B_σ`: simple roots of the walls of `σ`, plus `−θ` when `σ` lies on `θ = 1`.
    pub fn b_sigma(&self, face: &AlcoveFace) -> Vec<QVec> {
        let d = &self.datum;
        face.wall_set
            .iter()
            .map(|&w| {
                if w <= d.rank {
                    d.simple_roots[w - 1].clone()
                } else {
                    d.minimal_root.clone()
                }
            })
            .collect()
    }

    pub fn face_root_data(&self, face: &AlcoveFace) -> Result<FaceRootData> {
        let d = &self.datum;
        let integral = d.integral_roots_at(&face.interior_point);
        let r_sigma: Vec<QVec> = integral.iter().map(|&(k, _)| d.positive_roots[k].clone()).collect();
        let alpha_sigma_values: Vec<i64> = integral.iter().map(|&(_, v)| v).collect();
        if alpha_sigma_values.iter().any(|&v| !(0..=1).contains(&v)) {
            return Err(Error::Internal(format!("face {} is outside the alcove", face.id)));
        }
        let b_sigma = self.b_sigma(face);
        // base check: every element of R_σ is an integer combination of B_σ
        // with coefficients of a single sign
        for root in &r_sigma {
            let coeffs = exact::solve_in_span(&b_sigma, root).ok_or_else(|| {
                Error::Internal(format!(
                    "root {} not in the span of B_σ at {}",
                    exact::render_vec(root),
                    face.id
                ))
            })?;
            let ok = exact::is_integral(&coeffs)
                && (coeffs.iter().all(|c| !c.is_negative()) || coeffs.iter().all(|c| !c.is_positive()));
            if !ok {
                return Err(Error::Internal(format!("B_σ is not a base at {}", face.id)));
            }
        }
        let k = b_sigma.len();
        let mut cartan = vec![vec![0i64; k]; k];
        for i in 0..k {
            let ci = coroot_of(&b_sigma[i]);
            for j in 0..k {
                cartan[i][j] = exact::to_i64(&dot(&b_sigma[j], &ci))
                    .ok_or_else(|| Error::Internal("non-integral Cartan entry".into()))?;
            }
        }
        let component_types = dynkin::classify(&cartan)?;
        let r_sigma_size = 2 * r_sigma.len();
        Ok(FaceRootData {
            face_id: face.id.clone(),
            dim_k_sigma: d.rank + r_sigma_size,
            dim_commutator: k + r_sigma_size,
            central_torus_dim: face.dim,
            r_sigma,
            alpha_sigma_values,
            r_sigma_size,
            b_sigma,
            component_types,
        })
    }

    /// Order of `Γ_σ` and whether `g_σ` may be taken to be 1.
    ///
    /// With `t_s = span B_σ∨`, `Γ_σ ≅ proj(Q(R∨)) / (Q(R∨) ∩ t_s)` where
    /// `proj` is orthogonal projection onto `t_s`. Both lattices are written
    /// in `β∨` coordinates and their covolumes come from Smith forms.
    pub fn gamma_and_shift(&self, face: &AlcoveFace) -> Result<GammaShift> {
        let d = &self.datum;
        let b = self.b_sigma(face);
        let k = b.len();
        if k == 0 {
            return Ok(GammaShift {
                gamma_order: 1,
                g_sigma_trivial: true,
            });
        }
        let bc: Vec<QVec> = b.iter().map(|x| coroot_of(x)).collect();
        // β∨ in simple-coroot coordinates, k x r integer matrix
        let mut bmat = Vec::with_capacity(k);
        for v in &bc {
            let c = d
                .coroot_coords(v)
                .ok_or_else(|| Error::Internal("coroot outside span".into()))?;
            let row: Option<Vec<BigInt>> = c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect();
            bmat.push(row.ok_or_else(|| Error::Internal("β∨ not in Q(R∨)".into()))?);
        }
        let sb = lattice::smith(&bmat);
        let det_inter: BigInt = sb.invariants().iter().fold(BigInt::one(), |a, x| a * x);

        let g = exact::gram(&bc);
        let ginv = exact::inverse(&g).ok_or_else(|| Error::Internal("dependent B_σ".into()))?;
        let project = |v: &[Q]| -> QVec {
            let rhs: QVec = bc.iter().map(|x| dot(x, v)).collect();
            (0..k).map(|i| dot(&ginv[i], &rhs)).collect()
        };
        let proj: Vec<QVec> = d.coroots.iter().map(|a| project(a)).collect();
        let all: QVec = proj.iter().flatten().cloned().collect();
        let l = exact::common_denominator(&all);
        let lq = Q::from_integer(l.clone());
        let pmat: lattice::ZMat = proj
            .iter()
            .map(|row| row.iter().map(|x| (x * &lq).to_integer()).collect())
            .collect();
        let sp = lattice::smith(&pmat);
        let inv_p = sp.invariants();
        if inv_p.iter().any(|x| x.is_zero()) {
            return Err(Error::Internal("projected lattice is degenerate".into()));
        }
        let det_proj: BigInt = inv_p.iter().fold(BigInt::one(), |a, x| a * x);
        let lk = num_traits::pow(l.clone(), k);
        let denom = &det_inter * &det_proj;
        if !lk.is_multiple_of(&denom) {
            return Err(Error::Internal("non-integral Γ_σ order".into()));
        }
        let gamma_order = (lk / denom)
            .to_u64()
            .ok_or_else(|| Error::Internal("huge Γ_σ".into()))?;

        // membership of the projected interior point in proj(Q(R∨))
        let xi = project(&face.interior_point);
        let scaled: QVec = xi.iter().map(|x| x * &lq).collect();
        let g_sigma_trivial = exact::is_integral(&scaled) && {
            let z: Vec<BigInt> = scaled.iter().map(|x| x.to_integer()).collect();
            (0..k).all(|j| {
                let w: BigInt = (0..k).map(|i| &z[i] * &sp.v[i][j]).sum();
                w.is_multiple_of(&inv_p[j])
            })
        };
        Ok(GammaShift {
            gamma_order,
            g_sigma_trivial,
        })
    }

    pub fn toric_cut_data(&self) -> Result<ToricData> {
        let m = self.datum.extended_marks()?;
        let lcm = m.iter().fold(1i64, |a, &x| a.lcm(&x));
        Ok(ToricData {
            labels: vec![1; m.len()],
            lcm_m: lcm,
            l_coefficients: m.iter().map(|&x| lcm / x).collect(),
            is_standard_projective: m.iter().all(|&x| x == 1),
            weights_m: m,
        })
    }

    /// Barycenter of the alcove.
    pub fn barycenter(&self) -> QVec {
        self.open_face().interior_point
    }

    /// `θ∨` as an ambient vector.
    pub fn theta_check(&self) -> &[Q] {
        &self.theta_check
    }
}

/// Convenience: values of `int` as rationals.
pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn alcove(s: &str) -> Alcove {
        Alcove::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn face_ids() {
        assert_eq!(face_id(&[1, 3]), "w1.w3");
        assert_eq!(face_id(&[]), "open");
        assert_eq!(parse_face_id("w1.w3").unwrap(), vec![1, 3]);
        assert_eq!(parse_face_id("open").unwrap(), Vec::<usize>::new());
        assert!(parse_face_id("w3.w1").is_err());
        assert!(parse_face_id("w0").is_err());
        assert!(parse_face_id("w1..w2").is_err());
        assert!(parse_face_id("").is_err());
    }

    #[test]
    fn c2_vertices() {
        let a = alcove("C2");
        let v = a.vertices_and_centrality();
        assert_eq!(v[1].coordinates, vec![frac(1, 2), int(0)]);
        assert!(!v[1].is_central);
        assert_eq!(v[2].coordinates, vec![frac(1, 2), frac(1, 2)]);
        assert!(v[2].is_central);
    }

    #[test]
    fn a1_reduction() {
        let a = alcove("A1");
        // α(xi) = 3/2
        let xi = vec![frac(3, 4), frac(-3, 4)];
        let red = a.reduce_to_alcove(&xi).unwrap();
        assert_eq!(dot(&a.datum.simple_roots[0], &red.xi_reduced), frac(1, 2));
        assert_eq!(red.affine_word.apply(&a.datum, &xi).unwrap(), red.xi_reduced);
    }

    #[test]
    fn open_face_data() {
        let a = alcove("B3");
        let fd = a.face_root_data(&a.open_face()).unwrap();
        assert!(fd.r_sigma.is_empty() && fd.b_sigma.is_empty());
        assert_eq!(fd.dim_k_sigma, 3);
    }

    #[test]
    fn toric() {
        let t = alcove("F4").toric_cut_data().unwrap();
        assert_eq!(t.l_coefficients, vec![3, 2, 3, 6, 6]);
        assert!(alcove("A3").toric_cut_data().unwrap().is_standard_projective);
    }
}
