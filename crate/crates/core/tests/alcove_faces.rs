mod common;

use common::*;
use qhimpl_core::alcove::parse_face_id;
use qhimpl_core::exact::{self, dot, int, Q};
use qhimpl_core::Alcove;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn face_census() {
    for t in ["A1", "A2", "A3", "B3", "C2", "C4", "D4", "G2", "F4", "E6"] {
        let a = alcove(t);
        let r = a.rank();
        let faces = a.enumerate_faces().unwrap();
        assert_eq!(faces.len(), (1 << (r + 1)) - 1, "{t}");
        for k in 0..=r {
            assert_eq!(faces.iter().filter(|f| f.dim == k).count(), binom(r + 1, k + 1));
        }
        assert_eq!(faces.iter().filter(|f| f.is_open()).count(), 1);
        for f in &faces {
            assert_eq!(f.vertex_ids.len(), f.dim + 1);
            assert_eq!(parse_face_id(&f.id).unwrap(), f.wall_set);
        }
    }
}

#[test]
fn a1_faces() {
    let faces = alcove("A1").enumerate_faces().unwrap();
    assert_eq!(faces.len(), 3);
    assert_eq!(faces.iter().filter(|f| f.is_vertex()).count(), 2);
}

#[test]
fn interior_points_satisfy_face_inequalities() {
    for t in ["A3", "B3", "C3", "G2", "F4"] {
        let a = alcove(t);
        let d = &a.datum;
        for f in a.enumerate_faces().unwrap() {
            let x = &f.interior_point;
            for i in 1..=d.rank {
                let v = dot(&d.simple_roots[i - 1], x);
                assert_eq!(v == int(0), f.wall_set.contains(&i), "{t} {}", f.id);
                assert!(v >= int(0));
            }
            let th = dot(&d.highest_root, x);
            assert_eq!(th == int(1), f.wall_set.contains(&(d.rank + 1)));
            assert!(th <= int(1));
            assert_eq!(a.walls_at(x).unwrap(), f.wall_set);
        }
    }
}

#[test]
fn poset_is_simplex_face_lattice() {
    let a = alcove("B3");
    let faces = a.enumerate_faces().unwrap();
    for s in &faces {
        for t in &faces {
            let by_vertices = s.vertex_ids.iter().all(|v| t.vertex_ids.contains(v));
            assert_eq!(s.leq(t), by_vertices);
        }
    }
}

#[test]
fn su3_vertices_all_central() {
    let a = alcove("A2");
    assert!(a.vertices_and_centrality().iter().all(|v| v.is_central));
    // vertex j is σ_j = ε_1 + .. + ε_j − j/3 Σ ε
    let v1 = &a.vertex(1).coordinates;
    assert_eq!(v1, &vec![q(2, 3), q(-1, 3), q(-1, 3)]);
}

#[test]
fn c2_vertex_centrality() {
    let a = alcove("C2");
    let v = a.vertices_and_centrality();
    assert!(v[0].is_central);
    assert_eq!(v[0].coordinates, vec![int(0), int(0)]);
    let half = v.iter().find(|x| x.coordinates == vec![q(1, 2), q(1, 2)]).unwrap();
    assert!(half.is_central);
    let edge = v.iter().find(|x| x.coordinates == vec![q(1, 2), int(0)]).unwrap();
    assert!(!edge.is_central);
}

#[test]
fn central_vertex_count_is_center_order() {
    for t in [
        "A1", "A4", "A7", "B2", "B5", "C3", "C6", "D4", "D5", "D8", "E6", "E7", "E8", "F4", "G2",
    ] {
        let a = alcove(t);
        let n = a.vertices_and_centrality().iter().filter(|v| v.is_central).count();
        assert_eq!(n as u64, a.datum.center_structure().unwrap().order, "{t}");
    }
}

#[test]
fn reduce_interior_is_identity() {
    let a = alcove("A2");
    let b = a.barycenter();
    let red = a.reduce_to_alcove(&b).unwrap();
    assert_eq!(red.xi_reduced, b);
    assert!(red.affine_word.linear_word.is_empty());
    assert!(red.affine_word.translation.iter().all(|x| *x == int(0)));
}

#[test]
fn a1_reduction_by_brute_force() {
    // the affine Weyl group of A1 acts on t = α(x) by t ↦ ±t + 2n
    let a = alcove("A1");
    let alpha = a.datum.simple_roots[0].clone();
    for num in -40..=40i64 {
        let t = q(num, 4);
        let xi = exact::scale(&(t.clone() / int(2)), &alpha);
        let red = a.reduce_to_alcove(&xi).unwrap();
        let got = dot(&alpha, &red.xi_reduced);
        let mut best = None;
        for sign in [1i64, -1] {
            for n in -12..=12i64 {
                let c = int(sign) * &t + int(2 * n);
                if c >= int(0) && c <= int(1) {
                    best = Some(c);
                }
            }
        }
        assert_eq!(Some(got), best, "t = {t}");
    }
    let xi = vec![q(3, 4), q(-3, 4)];
    let red = a.reduce_to_alcove(&xi).unwrap();
    assert_eq!(dot(&alpha, &red.xi_reduced), q(1, 2));
}

#[test]
fn a2_center_example() {
    let a = alcove("A2");
    let x = exact::add(&a.vertex(1).coordinates, &a.barycenter());
    let red = a.reduce_to_alcove(&x).unwrap();
    assert_eq!(red.xi_reduced, a.barycenter());
    let d = &a.datum;
    let probe = vec![int(1), int(2), int(4)];
    let img = d.apply_weyl_word(&red.affine_word.linear_word, &probe).unwrap();
    assert_eq!(img, vec![int(4), int(1), int(2)]);
}

#[test]
fn reduction_is_affine_weyl_invariant() {
    for t in ["A3", "C3", "G2", "B2"] {
        let a = alcove(t);
        let d = &a.datum;
        let xi = exact::combine(
            &[q(7, 3), q(-5, 2), q(11, 7)][..d.rank.min(3)],
            &d.fundamental_coweights,
            d.ambient_dim,
        );
        let base = a.reduce_to_alcove(&xi).unwrap();
        assert!(a.in_closed_alcove(&base.xi_reduced));
        assert_eq!(base.affine_word.apply(d, &xi).unwrap(), base.xi_reduced);
        let again = a.reduce_to_alcove(&base.xi_reduced).unwrap();
        assert_eq!(again.xi_reduced, base.xi_reduced);
        for word in [vec![1], vec![2, 1], vec![1, 2, 1, 2]] {
            let moved = d.apply_weyl_word(&word, &xi).unwrap();
            let shifted = exact::add(&moved, &exact::scale(&int(-3), &d.coroots[0]));
            assert_eq!(a.reduce_to_alcove(&shifted).unwrap().xi_reduced, base.xi_reduced);
        }
    }
}

#[test]
fn reduce_rejects_bad_input() {
    let a = alcove("A2");
    assert!(a.reduce_to_alcove(&[int(1), int(0)]).is_err());
    assert!(a.reduce_to_alcove(&[int(1), int(1), int(1)]).is_err());
}

fn face_by_coords(a: &Alcove, pts: &[Vec<Q>]) -> qhimpl_core::AlcoveFace {
    let ids: Vec<usize> = pts
        .iter()
        .map(|p| {
            a.vertices_and_centrality()
                .iter()
                .find(|v| &v.coordinates == p)
                .unwrap()
                .vertex_id
        })
        .collect();
    a.face_from_vertices(&ids).unwrap()
}

#[test]
fn sp2_centralizer_table() {
    let a = alcove("C2");
    let s0 = vec![int(0), int(0)];
    let s1 = vec![q(1, 2), q(1, 2)];
    let s2 = vec![q(1, 2), int(0)];
    // (face, dim K_σ, type of [K_σ,K_σ], dim [K_σ,K_σ])
    let rows: Vec<(Vec<Vec<Q>>, usize, &str, usize)> = vec![
        (vec![s0.clone(), s1.clone(), s2.clone()], 2, "1", 0),
        (vec![s0.clone(), s1.clone()], 4, "A1", 3),
        (vec![s0.clone(), s2.clone()], 4, "A1", 3),
        (vec![s1.clone(), s2.clone()], 4, "A1", 3),
        (vec![s0.clone()], 10, "C2", 10),
        (vec![s1.clone()], 10, "C2", 10),
        (vec![s2.clone()], 6, "A1xA1", 6),
    ];
    for (pts, dim_k, ty, dim_c) in rows {
        let f = face_by_coords(&a, &pts);
        let fd = a.face_root_data(&f).unwrap();
        assert_eq!(fd.dim_k_sigma, dim_k, "{}", f.id);
        assert_eq!(fd.type_string(), ty, "{}", f.id);
        assert_eq!(fd.dim_commutator, dim_c, "{}", f.id);
    }
}

#[test]
fn su3_edges_are_a1() {
    let a = alcove("A2");
    for f in a.enumerate_faces().unwrap().iter().filter(|f| f.dim == 1) {
        let fd = a.face_root_data(f).unwrap();
        assert_eq!(fd.type_string(), "A1");
        assert_eq!(fd.dim_commutator, 3);
        assert_eq!(fd.b_sigma.len(), 1);
    }
}

#[test]
fn face_base_and_closure_properties() {
    for t in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
        let a = alcove(t);
        let d = &a.datum;
        let all = d.all_roots();
        let faces = a.enumerate_faces().unwrap();
        let data: Vec<_> = faces.iter().map(|f| a.face_root_data(f).unwrap()).collect();
        for (f, fd) in faces.iter().zip(&data) {
            assert_eq!(fd.b_sigma.len() + f.dim, d.rank, "{t} {}", f.id);
            // closed under addition within R
            for x in &fd.r_sigma {
                for y in &fd.r_sigma {
                    for s in [exact::add(x, y), exact::sub(x, y)] {
                        if all.contains(&s) {
                            let pos = if d.root_index(&s).is_some() { s.clone() } else { exact::neg(&s) };
                            assert!(fd.r_sigma.contains(&pos), "{t} {}", f.id);
                        }
                    }
                }
            }
            // integer combination of B_σ with one sign
            for x in &fd.r_sigma {
                let c = exact::solve_in_span(&fd.b_sigma, x).unwrap();
                assert!(exact::is_integral(&c));
                let nonneg = c.iter().all(|v| *v >= int(0));
                let nonpos = c.iter().all(|v| *v <= int(0));
                assert!(nonneg || nonpos);
            }
        }
        // monotonicity: σ ≤ τ ⇒ R_τ ⊆ R_σ
        for (s, ds) in faces.iter().zip(&data) {
            for (u, du) in faces.iter().zip(&data) {
                if s.leq(u) {
                    assert!(du.r_sigma.iter().all(|r| ds.r_sigma.contains(r)));
                }
            }
        }
    }
}

#[test]
fn gamma_trivial_cases() {
    for t in ["A3", "C3", "G2"] {
        let a = alcove(t);
        let v0 = a.vertex_face(0).unwrap();
        assert_eq!(a.gamma_and_shift(&v0).unwrap().gamma_order, 1);
        assert_eq!(a.gamma_and_shift(&a.open_face()).unwrap().gamma_order, 1);
    }
}

#[test]
fn gamma_a3_edge() {
    let a = alcove("A3");
    let f = a.face_from_vertices(&[0, 2]).unwrap();
    assert_eq!(f.wall_set, vec![1, 3]);
    assert_eq!(a.gamma_and_shift(&f).unwrap().gamma_order, 2);
    assert_eq!(gamma_by_enumeration(&a, &f).0, 2);
}

#[test]
fn gamma_matches_enumeration() {
    for t in ["A2", "A3", "A4", "A5", "B2", "B3", "C3", "C4", "D4", "D5", "G2", "F4"] {
        let a = alcove(t);
        for f in a.enumerate_faces().unwrap() {
            let gs = a.gamma_and_shift(&f).unwrap();
            let (order, member) = gamma_by_enumeration(&a, &f);
            assert_eq!(gs.gamma_order as usize, order, "{t} {}", f.id);
            assert_eq!(gs.g_sigma_trivial, member, "{t} {}", f.id);
        }
    }
}

#[test]
fn toric_data() {
    let g2 = alcove("G2").toric_cut_data().unwrap();
    assert_eq!(g2.weights_m, vec![1, 2, 1]);
    assert_eq!(g2.l_coefficients, vec![2, 1, 2]);
    assert_eq!(g2.labels, vec![1, 1, 1]);
    let f4 = alcove("F4").toric_cut_data().unwrap();
    assert_eq!(f4.weights_m, vec![2, 3, 2, 1, 1]);
    assert_eq!(f4.l_coefficients, vec![3, 2, 3, 6, 6]);
    assert_eq!(f4.lcm_m, 6);
    for r in 1..6 {
        assert!(alcove(&format!("A{r}")).toric_cut_data().unwrap().is_standard_projective);
    }
    assert!(!alcove("B3").toric_cut_data().unwrap().is_standard_projective);
}
