//! Strata of the universal imploded cross-section, removability, the centre
//! and duality symmetries of the alcove, and root-level checks.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::alcove::{Alcove, AlcoveFace, FaceRootData, GammaShift};
use crate::dynkin::{CartanType, TypeLabel};
use crate::error::{Error, Result};
use crate::exact::{self, QVec};
use crate::rootsys::RootDatum;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessVerdict {
    pub removable: bool,
    /// Every component of `B_σ` is of type A1.
    pub all_components_a1: bool,
    /// Some vertex in the closure of the face is central.
    pub has_central_vertex: bool,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub face_id: String,
    pub vertex_ids: Vec<usize>,
    pub face_dim: usize,
    pub stratum_dim: usize,
    pub commutator_type: Vec<CartanType>,
    pub type_string: String,
    pub dim_commutator: usize,
    pub is_point: bool,
    pub is_removable: bool,
    pub smoothness: SmoothnessVerdict,
    pub orbit_under_center: Vec<String>,
    pub dual_face_id: String,
    pub gamma_order: u64,
    pub g_sigma_trivial: bool,
}

/// One element of the centre, represented by a central vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterElement {
    pub class: Vec<u64>,
    pub vertex_id: usize,
    #[serde(with = "exact::serde_qvec")]
    pub vertex: QVec,
    /// Linear part `ζ(c)` of the affine map sending the alcove to itself.
    pub zeta_word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaGenerator {
    pub order: u64,
    pub coweight_coords: Vec<i64>,
    pub vertex_id: usize,
    pub zeta_word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub generators: Vec<ZetaGenerator>,
    pub elements: Vec<CenterElement>,
    pub homomorphism: bool,
    pub injective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacePermutation {
    pub vertex_id: usize,
    pub class: Vec<u64>,
    /// `images[i]` is the index of the image of face `i`.
    pub images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetries {
    pub face_ids: Vec<String>,
    pub center_face_permutations: Vec<FacePermutation>,
    pub duality_face_permutation: Vec<usize>,
    pub poset_automorphisms: bool,
    pub group_closed: bool,
    pub duality_involution: bool,
    pub duality_inverts_center: bool,
    pub dims_invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCheck {
    pub face_id: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub faces: Vec<FaceCheck>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleResult {
    /// 1-based simple root indices.
    pub roots: [usize; 3],
    pub marks: [i64; 3],
    /// Orders of `G_α, G_β, G_γ` in `Q/Z`.
    pub orders: [i64; 3],
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    pub reading: String,
    pub triples: Vec<TripleResult>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternResult {
    pub support: Vec<usize>,
    pub blocks: Vec<usize>,
    pub expected: Vec<CartanType>,
    pub face_id: String,
    pub found: Vec<CartanType>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternReport {
    pub n: usize,
    pub patterns: Vec<PatternResult>,
    pub pass: bool,
}

/// Alcove faces together with their root data.
#[derive(Debug, Clone)]
pub struct Implosion {
    pub alcove: Alcove,
    pub faces: Vec<AlcoveFace>,
    pub data: Vec<FaceRootData>,
    index: HashMap<Vec<usize>, usize>,
}

impl Implosion {
    pub fn new(alcove: Alcove) -> Result<Implosion> {
        let faces = alcove.enumerate_faces()?;
        let data = faces
            .iter()
            .map(|f| alcove.face_root_data(f))
            .collect::<Result<Vec<_>>>()?;
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.wall_set.clone(), i))
            .collect();
        Ok(Implosion {
            alcove,
            faces,
            data,
            index,
        })
    }

    pub fn build(t: CartanType) -> Result<Implosion> {
        Implosion::new(Alcove::build(t)?)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.alcove.datum
    }

    pub fn face_index(&self, walls: &[usize]) -> Option<usize> {
        self.index.get(walls).copied()
    }

    pub fn index_of_id(&self, id: &str) -> Result<usize> {
        let walls = crate::alcove::parse_face_id(id)?;
        self.face_index(&walls).ok_or(Error::InvalidFace(walls))
    }

    pub fn stratum_dim(&self, i: usize) -> usize {
        self.datum().dim_group() - self.data[i].dim_commutator + self.faces[i].dim
    }

    pub fn smoothness_check(&self, i: usize) -> SmoothnessVerdict {
        let fd = &self.data[i];
        let face = &self.faces[i];
        let all_components_a1 = fd
            .component_types
            .iter()
            .all(|t| t.label == TypeLabel::A && t.rank == 1);
        let verts = self.alcove.vertices_and_centrality();
        let has_central_vertex = face.vertex_ids.iter().any(|&v| verts[v].is_central);
        let mut reasons = Vec::new();
        if !all_components_a1 {
            reasons.push(format!("commutator type {} is not a product of A1", fd.type_string()));
        }
        if !has_central_vertex {
            reasons.push("no central vertex in the closure".to_owned());
        }
        SmoothnessVerdict {
            removable: all_components_a1 && has_central_vertex,
            all_components_a1,
            has_central_vertex,
            reasons,
        }
    }

    /// Centre elements, one per central vertex.
    pub fn center_elements(&self) -> Result<Vec<CenterElement>> {
        let d = self.datum();
        let bary = self.alcove.barycenter();
        let mut out = Vec::new();
        for v in self.alcove.vertices_and_centrality().iter().filter(|v| v.is_central) {
            let class = d
                .center_class(&v.coordinates)
                .ok_or_else(|| Error::Internal("central vertex is not a coweight".into()))?;
            let red = self.alcove.reduce_to_alcove(&exact::add(&v.coordinates, &bary))?;
            if red.xi_reduced != bary {
                return Err(Error::Internal(format!(
                    "centre element at vertex {} does not fix the barycenter",
                    v.vertex_id
                )));
            }
            out.push(CenterElement {
                class,
                vertex_id: v.vertex_id,
                vertex: v.coordinates.clone(),
                zeta_word: red.affine_word.linear_word,
            });
        }
        Ok(out)
    }

    fn element_for_class<'a>(&self, elems: &'a [CenterElement], class: &[u64]) -> Option<&'a CenterElement> {
        elems.iter().find(|e| e.class == class)
    }

    fn class_product(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let inv = self.center_invariants();
        a.iter()
            .zip(b)
            .zip(&inv)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    fn class_inverse(&self, a: &[u64]) -> Vec<u64> {
        let inv = self.center_invariants();
        a.iter().zip(&inv).map(|(x, d)| (d - x) % d).collect()
    }

    fn center_invariants(&self) -> Vec<u64> {
        let d = self.datum();
        let s = crate::lattice::smith(&crate::lattice::from_i64(&d.cartan_matrix));
        s.invariants()
            .iter()
            .filter_map(num_traits::ToPrimitive::to_u64)
            .filter(|&x| x > 1)
            .collect()
    }

    fn same_linear(&self, a: &[usize], b: &[usize]) -> bool {
        let d = self.datum();
        (0..d.ambient_dim).all(|i| {
            let e = exact::unit(d.ambient_dim, i);
            d.apply_word_unchecked(a, &e) == d.apply_word_unchecked(b, &e)
        })
    }

    pub fn zeta_homomorphism(&self) -> Result<ZetaReport> {
        let d = self.datum();
        let elements = self.center_elements()?;
        let mut homomorphism = true;
        for a in &elements {
            for b in &elements {
                let ab = self.class_product(&a.class, &b.class);
                let Some(c) = self.element_for_class(&elements, &ab) else {
                    homomorphism = false;
                    continue;
                };
                // apply ζ(b) first, then ζ(a)
                let composed: Vec<usize> = b.zeta_word.iter().chain(&a.zeta_word).copied().collect();
                homomorphism &= self.same_linear(&composed, &c.zeta_word);
            }
        }
        let rho = d.rho_check();
        let images: BTreeSet<QVec> = elements
            .iter()
            .map(|e| d.apply_word_unchecked(&e.zeta_word, &rho))
            .collect();
        let injective = images.len() == elements.len();
        let cs = d.center_structure()?;
        let mut generators = Vec::new();
        for g in &cs.generators {
            let class = d
                .center_class(&g.vector)
                .ok_or_else(|| Error::Internal("generator is not a coweight".into()))?;
            let e = self
                .element_for_class(&elements, &class)
                .ok_or_else(|| Error::Internal("no central vertex for a centre generator".into()))?;
            generators.push(ZetaGenerator {
                order: g.order,
                coweight_coords: g.coweight_coords.clone(),
                vertex_id: e.vertex_id,
                zeta_word: e.zeta_word.clone(),
            });
        }
        Ok(ZetaReport {
            generators,
            elements,
            homomorphism,
            injective,
        })
    }

    fn image_index(&self, x: &[exact::Q]) -> Result<usize> {
        let red = self.alcove.reduce_to_alcove(x)?;
        let walls = self.alcove.walls_at(&red.xi_reduced)?;
        self.face_index(&walls)
            .ok_or_else(|| Error::Internal("image face missing".into()))
    }

    /// Face permutation induced by `x ↦ reduce(x + v)`.
    ///
    /// On the closed alcove this map is a single affine transformation, read
    /// off from the reduction of the barycenter and then applied to every
    /// face's interior point.
    pub fn center_permutation(&self, v: &[exact::Q]) -> Result<Vec<usize>> {
        let d = self.datum();
        let base = exact::add(&self.alcove.barycenter(), v);
        let red = self.alcove.reduce_to_alcove(&base)?;
        let word = red.affine_word.linear_word;
        let offset = exact::sub(&red.xi_reduced, &d.apply_word_unchecked(&word, &base));
        self.faces
            .iter()
            .map(|f| {
                let y = d.apply_word_unchecked(&word, &exact::add(&f.interior_point, v));
                let walls = self.alcove.walls_at(&exact::add(&y, &offset))?;
                self.face_index(&walls)
                    .ok_or_else(|| Error::Internal("image face missing".into()))
            })
            .collect()
    }

    /// Face permutation induced by `ξ ↦ −w₀ξ`.
    pub fn duality_permutation(&self) -> Result<Vec<usize>> {
        let d = self.datum();
        let w0 = d.w0_word();
        self.faces
            .iter()
            .map(|f| {
                let y = exact::neg(&d.apply_word_unchecked(&w0, &f.interior_point));
                self.image_index(&y)
            })
            .collect()
    }

    fn vertex_induced(&self, perm: &[usize]) -> bool {
        let vmap: HashMap<usize, usize> = self
            .faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_vertex())
            .filter_map(|(i, f)| {
                let img = &self.faces[perm[i]];
                img.is_vertex().then(|| (f.vertex_ids[0], img.vertex_ids[0]))
            })
            .collect();
        if vmap.len() != self.alcove.rank() + 1 {
            return false;
        }
        self.faces.iter().enumerate().all(|(i, f)| {
            let mut mapped: Vec<usize> = f.vertex_ids.iter().map(|v| vmap[v]).collect();
            mapped.sort_unstable();
            mapped == self.faces[perm[i]].vertex_ids
        })
    }

    pub fn alcove_symmetries(&self) -> Result<Symmetries> {
        let elements = self.center_elements()?;
        let mut perms = Vec::new();
        for e in &elements {
            perms.push(FacePermutation {
                vertex_id: e.vertex_id,
                class: e.class.clone(),
                images: self.center_permutation(&e.vertex)?,
            });
        }
        let duality = self.duality_permutation()?;
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..p.len()).map(|i| p[q[i]]).collect() };
        let find = |class: &[u64]| perms.iter().find(|p| p.class == class);

        let mut group_closed = true;
        let mut duality_inverts_center = true;
        for a in &perms {
            for b in &perms {
                let ab = self.class_product(&a.class, &b.class);
                group_closed &= find(&ab).is_some_and(|c| compose(&a.images, &b.images) == c.images);
            }
            let inv = self.class_inverse(&a.class);
            duality_inverts_center &= find(&inv)
                .is_some_and(|c| compose(&duality, &a.images) == compose(&c.images, &duality));
        }
        let identity: Vec<usize> = (0..self.faces.len()).collect();
        let duality_involution = compose(&duality, &duality) == identity;
        let poset_automorphisms =
            perms.iter().all(|p| self.vertex_induced(&p.images)) && self.vertex_induced(&duality);
        let dims_invariant = perms.iter().all(|p| {
            (0..self.faces.len()).all(|i| self.stratum_dim(i) == self.stratum_dim(p.images[i]))
        });
        Ok(Symmetries {
            face_ids: self.faces.iter().map(|f| f.id.clone()).collect(),
            center_face_permutations: perms,
            duality_face_permutation: duality,
            poset_automorphisms,
            group_closed,
            duality_involution,
            duality_inverts_center,
            dims_invariant,
        })
    }

    pub fn gamma_and_shift(&self, i: usize) -> Result<GammaShift> {
        self.alcove.gamma_and_shift(&self.faces[i])
    }

    pub fn strata_table(&self) -> Result<Vec<StratumRecord>> {
        let sym = self.alcove_symmetries()?;
        let mut out = Vec::with_capacity(self.faces.len());
        for (i, f) in self.faces.iter().enumerate() {
            let fd = &self.data[i];
            let smooth = self.smoothness_check(i);
            let gs = self.gamma_and_shift(i)?;
            let orbit: BTreeSet<usize> = sym.center_face_permutations.iter().map(|p| p.images[i]).collect();
            let stratum_dim = self.stratum_dim(i);
            out.push(StratumRecord {
                face_id: f.id.clone(),
                vertex_ids: f.vertex_ids.clone(),
                face_dim: f.dim,
                stratum_dim,
                commutator_type: fd.component_types.clone(),
                type_string: fd.type_string(),
                dim_commutator: fd.dim_commutator,
                is_point: stratum_dim == 0,
                is_removable: smooth.removable,
                smoothness: smooth,
                orbit_under_center: orbit.iter().map(|&j| self.faces[j].id.clone()).collect(),
                dual_face_id: self.faces[sym.duality_face_permutation[i]].id.clone(),
                gamma_order: gs.gamma_order,
                g_sigma_trivial: gs.g_sigma_trivial,
            });
        }
        Ok(out)
    }

    fn root_set(&self, i: usize) -> BTreeSet<QVec> {
        self.data[i].r_sigma.iter().cloned().collect()
    }

    /// `R_τ = ∩_{σ<τ} R_σ` for every face of dimension at least two.
    pub fn centralizer_intersection_check(&self) -> IntersectionReport {
        let mut faces = Vec::new();
        for (t, tau) in self.faces.iter().enumerate().filter(|(_, f)| f.dim >= 2) {
            let mut inter: Option<BTreeSet<QVec>> = None;
            for (s, sigma) in self.faces.iter().enumerate() {
                if s != t && sigma.leq(tau) {
                    let rs = self.root_set(s);
                    inter = Some(match inter {
                        None => rs,
                        Some(acc) => acc.intersection(&rs).cloned().collect(),
                    });
                }
            }
            let pass = inter.is_some_and(|i| i == self.root_set(t));
            faces.push(FaceCheck {
                face_id: tau.id.clone(),
                pass,
            });
        }
        let pass = faces.iter().all(|f| f.pass);
        IntersectionReport { faces, pass }
    }
}

/// Order of `(Z + Z·p/q) ∩ (Z + Z·p'/q')` in `Q/Z`.
fn cyclic_intersection_order(num: i64, den1: i64, den2: i64) -> i64 {
    let o1 = den1 / num.gcd(&den1);
    let o2 = den2 / num.gcd(&den2);
    o1.gcd(&o2)
}

/// For every triple of distinct simple roots, at least one of
/// `G_α = (Z + Z m_α/m_β) ∩ (Z + Z m_α/m_γ)` (mod Z) and its cyclic
/// companions must be trivial.
pub fn integrality_triple_check(datum: &RootDatum) -> Result<TripleReport> {
    let marks = datum.extended_marks()?;
    let r = datum.rank;
    let mut triples = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            for c in b + 1..r {
                let (ma, mb, mc) = (marks[a], marks[b], marks[c]);
                let orders = [
                    cyclic_intersection_order(ma, mb, mc),
                    cyclic_intersection_order(mb, ma, mc),
                    cyclic_intersection_order(mc, ma, mb),
                ];
                triples.push(TripleResult {
                    roots: [a + 1, b + 1, c + 1],
                    marks: [ma, mb, mc],
                    pass: orders.contains(&1),
                    orders,
                });
            }
        }
    }
    let pass = triples.iter().all(|t| t.pass);
    Ok(TripleReport {
        reading: "Z(x,y) read as the additive group Zx + Zy".to_owned(),
        triples,
        pass,
    })
}

/// Compare the SU(n) stabilizer block pattern with the commutator types of
/// the corresponding faces of the A_{n-1} alcove.
pub fn su_stabilizer_pattern_check(n: usize) -> Result<PatternReport> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidType {
            label: 'A',
            rank: n.saturating_sub(1),
            constraint: "stabilizer pattern check needs 2 <= n <= 8".to_owned(),
        });
    }
    let imp = Implosion::build(CartanType::new(TypeLabel::A, n - 1)?)?;
    let mut patterns = Vec::new();
    for mask in 1u32..(1 << n) {
        let support: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let s = support.len();
        let mut blocks = vec![n + support[0] - support[s - 1]];
        blocks.extend(support.windows(2).map(|w| w[1] - w[0]));
        let mut expected: Vec<CartanType> = blocks
            .iter()
            .filter(|&&b| b > 1)
            .map(|&b| CartanType {
                label: TypeLabel::A,
                rank: b - 1,
            })
            .collect();
        expected.sort();
        let walls: Vec<usize> = (1..=n).filter(|i| !support.contains(i)).collect();
        let idx = imp.face_index(&walls).ok_or_else(|| Error::InvalidFace(walls.clone()))?;
        let found = imp.data[idx].component_types.clone();
        patterns.push(PatternResult {
            pass: found == expected,
            support,
            blocks,
            expected,
            face_id: imp.faces[idx].id.clone(),
            found,
        });
    }
    let pass = patterns.iter().all(|p| p.pass);
    Ok(PatternReport { n, patterns, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn imp(s: &str) -> Implosion {
        Implosion::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_dims() {
        let i = imp("A2");
        let mut dims: Vec<usize> = (0..i.faces.len()).map(|k| i.stratum_dim(k)).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![0, 0, 0, 6, 6, 6, 10]);
    }

    #[test]
    fn triple_orders() {
        assert_eq!(cyclic_intersection_order(6, 3, 4), 1);
        assert_eq!(cyclic_intersection_order(4, 3, 3), 3);
        assert_eq!(cyclic_intersection_order(3, 4, 3), 1);
    }

    #[test]
    fn trivial_center_has_one_element() {
        let z = imp("G2").zeta_homomorphism().unwrap();
        assert!(z.generators.is_empty());
        assert_eq!(z.elements.len(), 1);
    }

    #[test]
    fn center_permutation_matches_pointwise_reduction() {
        for t in ["A3", "B3", "C3", "D4", "E6"] {
            let i = imp(t);
            for e in i.center_elements().unwrap() {
                let direct: Vec<usize> = i
                    .faces
                    .iter()
                    .map(|f| i.image_index(&exact::add(&f.interior_point, &e.vertex)).unwrap())
                    .collect();
                assert_eq!(i.center_permutation(&e.vertex).unwrap(), direct, "{t}");
            }
        }
    }
}
