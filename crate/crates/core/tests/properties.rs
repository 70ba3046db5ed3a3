use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use qhimpl_core::exact::{self, frac, Q};
use qhimpl_core::lattice::{from_i64, mat_mul, smith};
use qhimpl_core::{Alcove, CartanType, RootDatum};

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"];

fn datum(t: &str) -> RootDatum {
    RootDatum::from_type(t.parse::<CartanType>().unwrap()).unwrap()
}

/// A point of the coroot span with small rational coroot coordinates.
fn point(d: &RootDatum, c: &[(i64, i64)]) -> Vec<Q> {
    let coeffs: Vec<Q> = c.iter().take(d.rank).map(|&(p, q)| frac(p, q)).collect();
    exact::combine(&coeffs, &d.coroots[..coeffs.len()], d.ambient_dim)
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-40i64..40, 1i64..9), 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_words_are_isometries(
        ti in 0..TYPES.len(),
        c in coords(),
        e in coords(),
        raw in prop::collection::vec(1usize..9, 0..12),
    ) {
        let d = datum(TYPES[ti]);
        let word: Vec<usize> = raw.iter().map(|i| (i - 1) % d.rank + 1).collect();
        let (x, y) = (point(&d, &c), point(&d, &e));
        let wx = d.apply_weyl_word(&word, &x).unwrap();
        let wy = d.apply_weyl_word(&word, &y).unwrap();
        prop_assert_eq!(exact::dot(&wx, &wy), exact::dot(&x, &y));
        // the reduced word acts the same way
        let red = d.reduce_word(&word);
        prop_assert!(red.len() <= word.len());
        prop_assert_eq!(d.apply_weyl_word(&red, &x).unwrap(), wx);
    }

    #[test]
    fn reduction_lands_in_alcove_and_is_stable(
        ti in 0..TYPES.len(),
        c in coords(),
        raw in prop::collection::vec(1usize..9, 0..6),
        shift in prop::collection::vec(-3i64..4, 8),
    ) {
        let d = datum(TYPES[ti]);
        let a = Alcove::new(d.clone());
        let x = point(&d, &c);
        let red = a.reduce_to_alcove(&x).unwrap();
        prop_assert!(a.in_closed_alcove(&red.xi_reduced));
        prop_assert_eq!(red.affine_word.apply(&d, &x).unwrap(), red.xi_reduced.clone());
        let again = a.reduce_to_alcove(&red.xi_reduced).unwrap();
        prop_assert_eq!(&again.xi_reduced, &red.xi_reduced);
        prop_assert_eq!(again.steps, 0);

        // moving x by the affine Weyl group does not change the result
        let word: Vec<usize> = raw.iter().map(|i| (i - 1) % d.rank + 1).collect();
        let lin = d.apply_weyl_word(&word, &x).unwrap();
        let ints: Vec<Q> = shift.iter().take(d.rank).map(|&k| frac(k, 1)).collect();
        let moved = exact::add(&lin, &exact::combine(&ints, &d.coroots, d.ambient_dim));
        prop_assert_eq!(a.reduce_to_alcove(&moved).unwrap().xi_reduced, red.xi_reduced);
    }

    #[test]
    fn rational_roundtrip(p in any::<i64>(), q in 1i64..i64::MAX) {
        let x = frac(p, q);
        prop_assert_eq!(exact::parse_rational(&exact::render(&x)).unwrap(), x);
    }

    #[test]
    fn rational_parser_total(s in "\\PC{0,40}") {
        let _ = exact::parse_rational(&s);
        let _ = exact::parse_rational_vec(&s);
    }

    #[test]
    fn smith_form(
        rows in 1usize..5,
        cols in 1usize..5,
        entries in prop::collection::vec(-9i64..10, 16),
    ) {
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect())
            .collect();
        let a = from_i64(&a);
        let s = smith(&a);
        prop_assert_eq!(mat_mul(&mat_mul(&s.u, &a), &s.v), s.d.clone());
        for (i, row) in s.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                prop_assert!(i == j || x.is_zero());
            }
        }
        let inv = s.invariants();
        for w in inv.windows(2) {
            prop_assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert_eq!(&w[1], &BigInt::zero());
            }
        }
    }
}
