mod common;

use common::{all_systems, k3, rng, s3_system, z3z4z2};
use rand::Rng;
use whitefact_core::{sample, FactorAutoPart, FactorSystem, PureSymmetricAuto, WhiteheadAuto};

fn factor_autos(s: &FactorSystem) -> Vec<Vec<FactorAutoPart>> {
    let mut out: Vec<Vec<FactorAutoPart>> = vec![vec![]];
    for k in 0..s.rank() {
        let maps = s.factor(k).all_automorphisms().unwrap();
        out = out
            .into_iter()
            .flat_map(|p| {
                maps.iter().map(move |m| {
                    let mut q = p.clone();
                    q.push(FactorAutoPart { factor: k, map: m.clone() });
                    q
                })
            })
            .collect();
    }
    out
}

fn single_target_whiteheads(s: &FactorSystem) -> Vec<WhiteheadAuto> {
    let mut out = Vec::new();
    for i in 0..s.rank() {
        for x in s.nontrivial_elements(i).unwrap() {
            for j in (0..s.rank()).filter(|&j| j != i) {
                out.push(s.whitehead(&[j], x.clone()).unwrap());
            }
        }
    }
    out
}

fn agree_on_generators(s: &FactorSystem, a: &PureSymmetricAuto, b: &PureSymmetricAuto) -> bool {
    (0..s.rank()).all(|k| s.test_set(k).iter().all(|e| s.apply(a, &s.letter(e)) == s.apply(b, &s.letter(e))))
}

#[test]
fn apply_is_a_homomorphism() {
    for s in all_systems() {
        let mut r = rng(30);
        for _ in 0..50 {
            let psi = sample::automorphism(&s, &mut r, 4);
            let (u, v) = (sample::word(&s, &mut r, 4, None), sample::word(&s, &mut r, 3, None));
            assert_eq!(s.apply(&psi, &s.mul(&u, &v)), s.mul(&s.apply(&psi, &u), &s.apply(&psi, &v)));
        }
    }
}

#[test]
fn composition_and_inverse_laws() {
    for s in all_systems() {
        let mut r = rng(31);
        for _ in 0..40 {
            let f = sample::automorphism(&s, &mut r, 4);
            let g = sample::automorphism(&s, &mut r, 4);
            let w = sample::word(&s, &mut r, 5, None);
            assert_eq!(s.apply(&s.compose(&f, &g), &w), s.apply(&f, &s.apply(&g, &w)));
            let fi = s.invert(&f).unwrap();
            assert_eq!(s.compose(&f, &fi), s.identity_psa());
            assert_eq!(s.compose(&fi, &f), s.identity_psa());
            assert_eq!(s.apply(&fi, &s.apply(&f, &w)), w);
        }
    }
}

#[test]
fn factorize_round_trip() {
    for s in all_systems() {
        let mut r = rng(32);
        for _ in 0..60 {
            let psi = sample::automorphism(&s, &mut r, 6);
            let f = s.factorize(&psi).unwrap();
            assert!(s.verify_factorization(&psi, &f));
            let vol = s.volume(&s.alpha_label(psi.conj().to_vec()).unwrap(), &s.one());
            assert!(f.whitehead.len() <= (vol - s.rank()) / 2);
            assert!(f.whitehead.iter().all(|w| w.targets().len() == 1));
            assert_eq!(s.factorization_psa(&f).unwrap(), psi);
        }
    }
}

#[test]
fn inner_automorphisms() {
    for s in all_systems() {
        let mut r = rng(33);
        for _ in 0..50 {
            let len = r.gen_range(0..6);
            let h = sample::word(&s, &mut r, len, None);
            let iota = s.inner_psa(&h);
            assert_eq!(s.is_inner(&iota), Some(h.clone()));
            let f = s.factorize(&iota).unwrap();
            assert!(f.whitehead.is_empty());
            assert!(s.verify_factorization(&iota, &f));
            let w = sample::word(&s, &mut r, 3, None);
            assert_eq!(s.apply(&iota, &w), s.conj(&w, &h));
            // Conjugating an inner automorphism by anything stays inner.
            let psi = sample::automorphism(&s, &mut r, 3);
            let conj = s.compose_all(&[&psi, &iota, &s.invert(&psi).unwrap()]);
            assert!(s.is_inner(&conj).is_some());
        }
    }
}

#[test]
fn whiteheads_fix_their_operating_factor() {
    for s in [k3(), z3z4z2(), s3_system()] {
        let mut r = rng(34);
        for _ in 0..50 {
            let w = sample::whitehead(&s, &mut r);
            let psa = s.whitehead_psa(&w);
            for e in s.nontrivial_elements(w.operating()).unwrap() {
                assert_eq!(s.apply(&psa, &s.letter(&e)), s.letter(&e));
            }
        }
    }
}

/// `(Y, x)` and `(Y', x')` agree up to an inner automorphism exactly when
/// they are equal, or when `Y` and `Y'` split the other factors between
/// them, `x' = x^-1`, and `x` is central in its factor (then their quotient
/// is conjugation by `x`).
fn same_outer_class(s: &FactorSystem, w1: &WhiteheadAuto, w2: &WhiteheadAuto) -> bool {
    if w1 == w2 {
        return true;
    }
    let i = w1.operating();
    let mut all: Vec<usize> = w1.targets().iter().chain(w2.targets()).copied().collect();
    all.sort_unstable();
    let others: Vec<usize> = (0..s.rank()).filter(|&k| k != i).collect();
    w2.operating() == i && *w2.x() == s.fg_inv(w1.x()) && all == others && s.factor(i).is_abelian()
}

#[test]
fn whitehead_outer_classes() {
    for s in [k3(), z3z4z2(), FactorSystem::cyclic(&[3, 4, 2, 2]).unwrap()] {
        let ws = single_target_whiteheads(&s);
        for w1 in &ws {
            for w2 in &ws {
                let q = s.compose(&s.whitehead_psa(w1), &s.invert(&s.whitehead_psa(w2)).unwrap());
                assert_eq!(s.is_inner(&q).is_some(), same_outer_class(&s, w1, w2), "{w1:?} {w2:?}");
                if s.rank() > 3 {
                    assert_eq!(s.is_inner(&q).is_some(), w1 == w2);
                }
            }
        }
    }
}

#[test]
fn stabiliser_classification_is_exact() {
    let s = k3();
    let factors = factor_autos(&s);
    let whiteheads = single_target_whiteheads(&s);
    let mut cases: Vec<(PureSymmetricAuto, Option<usize>)> = Vec::new();
    for phi in &factors {
        cases.push((s.factor_psa(phi), None));
    }
    for w in &whiteheads {
        cases.push((s.whitehead_psa(w), Some(w.operating())));
    }
    for (psi, operating) in &cases {
        for i in 0..s.rank() {
            let expected = operating.is_none_or(|op| op == i);
            let got = s.decompose_a_stabiliser(psi, i);
            assert_eq!(got.is_ok(), expected);
            if let Ok(f) = got {
                assert!(s.verify_factorization(psi, &f));
                assert!(f.whitehead.iter().all(|w| w.operating() == i));
            }
        }
        let got = s.decompose_alpha_stabiliser(psi);
        assert_eq!(got.is_ok(), operating.is_none());
    }
    // Factor autos composed with inners are exactly the α-stabiliser.
    let mut r = rng(35);
    for phi in &factors {
        let h = sample::word(&s, &mut r, 3, None);
        let psi = s.compose(&s.factor_psa(phi), &s.inner_psa(&h));
        let f = s.decompose_alpha_stabiliser(&psi).unwrap();
        assert!(s.verify_factorization(&psi, &f));
    }
}

#[test]
fn stabiliser_decompositions_recompose_on_s3() {
    let s = s3_system();
    let mut r = rng(36);
    for _ in 0..100 {
        let i = r.gen_range(0..s.rank());
        let phi = sample::factor_auto(&s, &mut r);
        let mut psi = s.factor_psa(&phi);
        for _ in 0..3 {
            let x = sample::element(&s, &mut r, i);
            let j = (i + r.gen_range(1..s.rank())) % s.rank();
            psi = s.compose(&s.whitehead_psa(&s.whitehead(&[j], x).unwrap()), &psi);
        }
        let h = sample::word(&s, &mut r, 2, None);
        let psi = s.compose(&psi, &s.inner_psa(&h));
        let f = s.decompose_a_stabiliser(&psi, i).unwrap();
        assert!(s.verify_factorization(&psi, &f));
    }
}

#[test]
fn verification_detects_mutations() {
    let s = z3z4z2();
    let mut r = rng(37);
    let mut checked = 0;
    while checked < 30 {
        let psi = sample::automorphism(&s, &mut r, 5);
        let f = s.factorize(&psi).unwrap();
        if f.whitehead.is_empty() {
            continue;
        }
        let k = r.gen_range(0..f.whitehead.len());
        let mut deleted = f.clone();
        deleted.whitehead.remove(k);
        assert!(!s.verify_factorization(&psi, &deleted));
        let mut inner = f.clone();
        inner.inner = s.mul(&inner.inner, &s.word(&[(2, 1)]));
        assert!(!s.verify_factorization(&psi, &inner));
        checked += 1;
    }
    assert!(agree_on_generators(&s, &s.identity_psa(), &s.identity_psa()));
}
