mod common;

use common::{s3_system, s3_table, S3};
use whitefact_core::{FactorGroup, FactorMap, Payload};

#[test]
fn s3_products_match_permutation_composition() {
    let s = s3_system();
    let p = |i: u32| s.element(0, Payload::Index(i)).unwrap();
    // (12)·(13) = (132)
    assert_eq!(s.fg_mul(&p(1), &p(2)).unwrap(), p(5));
    for a in 0..6u32 {
        for b in 0..6u32 {
            let ab = s.fg_mul(&p(a), &p(b)).unwrap();
            let (pa, pb) = (S3[a as usize], S3[b as usize]);
            let expect = [pa[pb[0]], pa[pb[1]], pa[pb[2]]];
            let Payload::Index(i) = ab.payload() else { unreachable!() };
            assert_eq!(S3[*i as usize], expect);
        }
    }
}

#[test]
fn s3_conjugation_by_a_transposition() {
    let s = s3_system();
    let p = |i: u32| s.element(0, Payload::Index(i)).unwrap();
    let phi = s.conjugation_auto(&p(1));
    // (12)(13)(12) = (23)
    assert_eq!(s.fg_apply_auto(&phi, &p(2)).unwrap(), p(3));
    assert!(s.validate_auto(&phi).is_ok());
}

#[test]
fn finite_backends_satisfy_group_laws() {
    for g in [FactorGroup::cyclic(2), FactorGroup::cyclic(7), FactorGroup::cyclic(12), FactorGroup::Table(s3_table())] {
        let els = g.elements().unwrap();
        let e = g.identity();
        for a in &els {
            assert_eq!(g.mul(&e, a), *a);
            assert_eq!(g.mul(a, &e), *a);
            assert!(g.is_identity(&g.mul(a, &g.inv(a))));
            for b in &els {
                for c in &els {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
            }
        }
    }
}

#[test]
fn automorphisms_are_bijections() {
    for g in [FactorGroup::cyclic(9), FactorGroup::Table(s3_table())] {
        let els = g.elements().unwrap();
        for m in g.all_automorphisms().unwrap() {
            let mut img: Vec<_> = els.iter().map(|x| g.apply_map(&m, x)).collect();
            img.sort();
            let mut sorted = els.clone();
            sorted.sort();
            assert_eq!(img, sorted);
            assert!(g.is_identity(&g.apply_map(&m, &g.identity())));
        }
    }
}

#[test]
fn homomorphism_check_accepts_exactly_the_automorphisms() {
    // Over all 720 permutations of S3's six elements, exactly |Aut(S3)| = 6
    // pass, and these are the inner automorphisms.
    let g = FactorGroup::Table(s3_table());
    let auts = g.all_automorphisms().unwrap();
    assert_eq!(auts.len(), 6);
    let mut inner: Vec<_> = g.elements().unwrap().iter().map(|b| g.conjugation(b)).collect();
    inner.sort();
    inner.dedup();
    assert_eq!(auts, inner);
    assert!(g.validate_map(&FactorMap::Perm(vec![0, 2, 1, 3, 4, 5])).is_err());
    let z = FactorGroup::InfiniteCyclic;
    assert!(z.validate_map(&FactorMap::Sign(true)).is_ok());
    assert!(FactorGroup::cyclic(6).validate_map(&FactorMap::Mult(2)).is_err());
}
