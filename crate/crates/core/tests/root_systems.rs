mod common;

use common::*;
use qhimpl_core::exact::{self, int, Q};
use qhimpl_core::{CartanType, RootDatum, TypeLabel};

const ALL_SMALL: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "C2",
    "C3", "C4", "C5", "C6", "C7", "C8", "D3", "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8", "F4",
    "G2",
];

#[test]
fn positive_roots_match_reflection_closure() {
    for t in ALL_SMALL {
        let d = datum(t);
        let all = roots_by_closure(&d.simple_roots);
        assert_eq!(all.len(), 2 * d.num_positive_roots(), "{t}");
        for r in &d.positive_roots {
            assert!(all.contains(r), "{t}");
            assert!(all.contains(&exact::neg(r)), "{t}");
        }
    }
}

#[test]
fn cartan_entries_and_diagonal() {
    for t in ALL_SMALL {
        let d = datum(t);
        for i in 0..d.rank {
            assert_eq!(d.cartan_matrix[i][i], 2);
            for j in 0..d.rank {
                if i != j {
                    assert!((-3..=0).contains(&d.cartan_matrix[i][j]), "{t}");
                }
            }
        }
    }
}

#[test]
fn simple_reflection_permutes_other_positive_roots() {
    for t in ALL_SMALL {
        let d = datum(t);
        for i in 1..=d.rank {
            let alpha = &d.simple_roots[i - 1];
            let others: std::collections::BTreeSet<_> = d
                .positive_roots
                .iter()
                .filter(|r| *r != alpha)
                .cloned()
                .collect();
            let images: std::collections::BTreeSet<_> =
                others.iter().map(|r| d.reflect(i, r)).collect();
            assert_eq!(others, images, "{t} s_{i}");
        }
    }
}

#[test]
fn highest_root_dominates() {
    for t in ALL_SMALL {
        let d = datum(t);
        let top = d.highest_root_coeffs();
        for c in &d.positive_root_coords {
            assert!(c.iter().zip(top).all(|(x, y)| x <= y), "{t}");
        }
        assert_eq!(d.minimal_root, exact::neg(&d.highest_root));
    }
}

#[test]
fn marks_table() {
    fn series(t: &str) -> Vec<i64> {
        datum(t).extended_marks().unwrap()
    }
    for r in 1..=8 {
        assert_eq!(series(&format!("A{r}")), vec![1; r + 1]);
    }
    for r in 2..=8 {
        let mut b = vec![1];
        b.extend(vec![2; r - 2]);
        b.extend([1, 1]);
        assert_eq!(series(&format!("B{r}")), b, "B{r}");
        assert_eq!(series(&format!("C{r}")), vec![1; r + 1], "C{r}");
    }
    for r in 4..=8 {
        let mut dd = vec![1];
        dd.extend(vec![2; r - 3]);
        dd.extend([1, 1, 1]);
        assert_eq!(series(&format!("D{r}")), dd, "D{r}");
    }
    assert_eq!(series("E6"), vec![1, 2, 2, 3, 2, 1, 1]);
    assert_eq!(series("E7"), vec![2, 2, 3, 4, 3, 2, 1, 1]);
    assert_eq!(series("E8"), vec![2, 3, 4, 6, 5, 4, 3, 2, 1]);
    assert_eq!(series("F4"), vec![2, 3, 2, 1, 1]);
    assert_eq!(series("G2"), vec![1, 2, 1]);
}

#[test]
fn marks_reproduce_highest_coroot() {
    for t in ALL_SMALL {
        let d = datum(t);
        let m = d.extended_marks().unwrap();
        let mq: Vec<Q> = m[..d.rank].iter().map(|&x| int(x)).collect();
        let sum = exact::combine(&mq, &d.coroots, d.ambient_dim);
        assert_eq!(sum, qhimpl_core::rootsys::coroot_of(&d.highest_root), "{t}");
        let g = m[..d.rank].iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
        assert_eq!(g, 1);
    }
}

#[test]
fn center_order_is_cartan_determinant() {
    let expected = [
        ("A1", 2),
        ("A2", 3),
        ("A5", 6),
        ("B3", 2),
        ("C4", 2),
        ("D4", 4),
        ("D5", 4),
        ("E6", 3),
        ("E7", 2),
        ("E8", 1),
        ("F4", 1),
        ("G2", 1),
    ];
    for (t, n) in expected {
        let d = datum(t);
        let cs = d.center_structure().unwrap();
        assert_eq!(cs.order, n, "{t}");
        let prod: u64 = cs.generators.iter().map(|g| g.order).product();
        assert_eq!(prod, n);
        for g in &cs.generators {
            assert!(d.center_class(&g.vector).is_some());
            // g has exact order g.order modulo Q(R∨)
            for k in 1..g.order {
                let v = exact::scale(&int(k as i64), &g.vector);
                assert!(!exact::is_integral(&d.coroot_coords(&v).unwrap()));
            }
            let v = exact::scale(&int(g.order as i64), &g.vector);
            assert!(exact::is_integral(&d.coroot_coords(&v).unwrap()));
        }
    }
}

#[test]
fn weyl_group_orders_by_brute_force() {
    for (t, n) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("C3", 48), ("G2", 12)] {
        assert_eq!(weyl_group(&datum(t)).len(), n, "{t}");
    }
}

#[test]
fn w0_matches_brute_force() {
    for t in ["A2", "A3", "B3", "C2", "G2", "D3"] {
        let d = datum(t);
        let rho = d.rho_check();
        let w0: Vec<_> = weyl_group(&d)
            .into_iter()
            .filter(|e| e.image == exact::neg(&rho))
            .collect();
        assert_eq!(w0.len(), 1);
        let word = d.w0_word();
        assert_eq!(word.len(), d.num_positive_roots(), "{t}");
        for v in &d.simple_roots {
            assert_eq!(d.apply_weyl_word(&word, v).unwrap(), act(&d, &w0[0].word, v));
        }
    }
}

#[test]
fn a2_longest_word_on_first_coweight() {
    let d = datum("A2");
    let w0 = d.w0_word();
    let img = d.apply_weyl_word(&w0, &d.fundamental_coweights[0]).unwrap();
    assert_eq!(img, exact::neg(&d.fundamental_coweights[1]));
}

#[test]
fn w0_is_an_involution() {
    for t in ALL_SMALL {
        let d = datum(t);
        let w0 = d.w0_word();
        for a in &d.simple_roots {
            let twice = d.apply_weyl_word(&w0, &d.apply_weyl_word(&w0, a).unwrap()).unwrap();
            assert_eq!(&twice, a, "{t}");
        }
    }
}

#[test]
fn c2_example_realization() {
    let d = datum("C2");
    // simple roots x1 - x2 and 2 x2, minimal root -2 x1
    assert_eq!(d.simple_roots, vec![vec![int(1), int(-1)], vec![int(0), int(2)]]);
    assert_eq!(d.minimal_root, vec![int(-2), int(0)]);
}

#[test]
fn rejects_invalid_types() {
    for (l, r) in [
        (TypeLabel::B, 1),
        (TypeLabel::C, 1),
        (TypeLabel::D, 2),
        (TypeLabel::E, 5),
        (TypeLabel::E, 9),
        (TypeLabel::F, 3),
        (TypeLabel::G, 3),
        (TypeLabel::A, 0),
        (TypeLabel::A, 25),
    ] {
        let err = RootDatum::build(l, r).unwrap_err().to_string();
        assert!(err.contains("requires") || err.contains("capped"), "{err}");
    }
    assert!("Z3".parse::<CartanType>().is_err());
}

#[test]
fn weyl_word_index_errors() {
    let d = datum("A2");
    let v = d.rho_check();
    assert!(d.apply_weyl_word(&[0], &v).is_err());
    assert!(d.apply_weyl_word(&[3], &v).is_err());
    assert!(d.apply_weyl_word(&[1], &v[..2]).is_err());
    assert_eq!(d.apply_weyl_word(&[], &v).unwrap(), v);
}
