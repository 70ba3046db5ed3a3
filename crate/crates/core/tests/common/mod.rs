//! Independent brute-force oracles used by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use qhimpl_core::exact::{self, Q, QVec};
use qhimpl_core::{Alcove, AlcoveFace, CartanType, RootDatum};

pub fn datum(s: &str) -> RootDatum {
    RootDatum::from_type(s.parse::<CartanType>().unwrap()).unwrap()
}

pub fn alcove(s: &str) -> Alcove {
    Alcove::new(datum(s))
}

pub fn q(p: i64, d: i64) -> Q {
    exact::frac(p, d)
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Q::zero(), |s, t| s + t)
}

pub fn reflect(alpha: &[Q], v: &[Q]) -> QVec {
    let c = Q::from_integer(2.into()) * dot(alpha, v) / dot(alpha, alpha);
    v.iter().zip(alpha).map(|(x, a)| x - &c * a).collect()
}

/// All roots by closing the simple roots under reflections, in ambient
/// coordinates.
pub fn roots_by_closure(simple: &[QVec]) -> HashSet<QVec> {
    let mut set: HashSet<QVec> = simple.iter().cloned().collect();
    let mut frontier: Vec<QVec> = simple.to_vec();
    while let Some(v) = frontier.pop() {
        for a in simple {
            let w = reflect(a, &v);
            if set.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    set
}

/// A Weyl group element as a successive word plus its image of a regular
/// vector.
#[derive(Clone, Debug)]
pub struct Element {
    pub word: Vec<usize>,
    pub image: QVec,
}

/// All Weyl group elements by breadth-first search; rank at most 3.
pub fn weyl_group(d: &RootDatum) -> Vec<Element> {
    assert!(d.rank <= 3, "brute-force enumeration is limited to rank <= 3");
    let rho = d.rho_check();
    let mut seen: HashSet<QVec> = HashSet::new();
    seen.insert(rho.clone());
    let mut out = vec![Element { word: vec![], image: rho }];
    let mut k = 0;
    while k < out.len() {
        let e = out[k].clone();
        for i in 1..=d.rank {
            let image = reflect(&d.simple_roots[i - 1], &e.image);
            if seen.insert(image.clone()) {
                let mut word = e.word.clone();
                word.push(i);
                out.push(Element { word, image });
            }
        }
        k += 1;
    }
    out
}

pub fn act(d: &RootDatum, word: &[usize], v: &[Q]) -> QVec {
    word.iter()
        .fold(v.to_vec(), |acc, &i| reflect(&d.simple_roots[i - 1], &acc))
}

/// Order of Γ_σ by closing the images of the simple coroots, projected onto
/// span(B_σ∨) and read modulo the coroot lattice, under addition in
/// (Q/Z)^r. Also reports whether the projected interior point is one of the
/// classes.
pub fn gamma_by_enumeration(a: &Alcove, face: &AlcoveFace) -> (usize, bool) {
    let d = &a.datum;
    let b = a.b_sigma(face);
    if b.is_empty() {
        return (1, true);
    }
    let bc: Vec<QVec> = b
        .iter()
        .map(|x| {
            let c = Q::from_integer(2.into()) / dot(x, x);
            x.iter().map(|y| &c * y).collect()
        })
        .collect();
    // orthogonal projection onto span(bc) via normal equations
    let g = exact::gram(&bc);
    let ginv = exact::inverse(&g).unwrap();
    let project = |v: &[Q]| -> QVec {
        let rhs: QVec = bc.iter().map(|x| dot(x, v)).collect();
        let c: QVec = (0..bc.len()).map(|i| dot(&ginv[i], &rhs)).collect();
        exact::combine(&c, &bc, d.ambient_dim)
    };
    let frac_part = |c: Vec<BigRational>| -> Vec<BigRational> {
        c.iter().map(|x| x - x.floor()).collect()
    };
    let key = |p: &[Q]| frac_part(d.coroot_coords(p).unwrap());
    let gens: Vec<Vec<BigRational>> = d.coroots.iter().map(|c| key(&project(c))).collect();
    let mut classes: BTreeSet<Vec<BigRational>> = BTreeSet::new();
    let zero = vec![Q::zero(); d.rank];
    classes.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = frac_part(x.iter().zip(g).map(|(a, b)| a + b).collect());
            if classes.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let xi = key(&project(&face.interior_point));
    (classes.len(), classes.contains(&xi))
}

pub fn one() -> Q {
    Q::one()
}
