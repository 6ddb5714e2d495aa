mod common;

use common::{all_systems, finite_systems, k3, z3z4z2};
use proptest::prelude::*;
use whitefact_core::{FactorElement, FactorSystem, Word};

/// Letters `(factor, value)` valid in every test system: values are taken
/// modulo small orders (and used raw for infinite factors).
fn letters() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..3, -6i64..7), 0..12)
}

fn to_elems(s: &FactorSystem, ls: &[(usize, i64)]) -> Vec<FactorElement> {
    ls.iter()
        .map(|&(f, v)| match s.factor(f).order() {
            Some(m) => s.elem(f, v.rem_euclid(m as i64)),
            None => s.elem(f, v),
        })
        .collect()
}

fn word(s: &FactorSystem, ls: &[(usize, i64)]) -> Word {
    s.reduce(to_elems(s, ls).iter()).unwrap()
}

/// Reference reduction: repeatedly merge the first adjacent same-factor
/// pair and drop identities until nothing changes.
fn naive_reduce(s: &FactorSystem, mut xs: Vec<FactorElement>) -> Vec<FactorElement> {
    loop {
        xs.retain(|x| !s.fg_is_identity(x));
        match (1..xs.len()).find(|&k| xs[k - 1].factor() == xs[k].factor()) {
            None => return xs,
            Some(k) => {
                let p = s.fg_mul(&xs[k - 1], &xs[k]).unwrap();
                xs.splice(k - 1..=k, [p]);
            }
        }
    }
}

proptest! {
    #[test]
    fn reduce_agrees_with_naive_rewriting(ls in letters()) {
        for s in all_systems() {
            let xs = to_elems(&s, &ls);
            let fast = s.reduce(xs.iter()).unwrap();
            let slow = naive_reduce(&s, xs);
            prop_assert_eq!(fast.syllables(), slow.as_slice());
        }
    }

    #[test]
    fn normal_form_is_alternating(ls in letters()) {
        for s in all_systems() {
            let w = word(&s, &ls);
            prop_assert!(w.syllables().iter().all(|x| !s.fg_is_identity(x)));
            prop_assert!(w.syllables().windows(2).all(|p| p[0].factor() != p[1].factor()));
            let again = s.reduce(w.syllables().iter()).unwrap();
            prop_assert_eq!(&again, &w);
        }
    }

    #[test]
    fn product_is_reduction_of_concatenation(u in letters(), v in letters()) {
        for s in all_systems() {
            let (a, b) = (word(&s, &u), word(&s, &v));
            let cat: Vec<_> = a.syllables().iter().chain(b.syllables()).cloned().collect();
            let prod = s.mul(&a, &b);
            prop_assert_eq!(&s.reduce(cat.iter()).unwrap(), &prod);
            prop_assert!(prod.len() <= a.len() + b.len());
        }
    }

    #[test]
    fn group_laws(u in letters(), v in letters(), w in letters()) {
        for s in all_systems() {
            let (a, b, c) = (word(&s, &u), word(&s, &v), word(&s, &w));
            prop_assert_eq!(s.mul(&s.mul(&a, &b), &c), s.mul(&a, &s.mul(&b, &c)));
            prop_assert!(s.mul(&a, &s.inv(&a)).is_empty());
            prop_assert!(s.mul(&s.inv(&a), &a).is_empty());
            prop_assert_eq!(&s.mul(&a, &s.one()), &a);
            prop_assert_eq!(&s.inv(&s.mul(&a, &b)), &s.mul(&s.inv(&b), &s.inv(&a)));
        }
    }

    #[test]
    fn double_coset_core_decides_membership(u in letters(), v in letters()) {
        // w ∈ G_2 · G_1 exactly when the (G_2, G_1) core is empty, and the
        // split multiplies back to w.
        for s in all_systems() {
            let w = word(&s, &u);
            let d = s.double_coset_split(&w, 1, 0);
            let back = s.mul_all(&[&s.opt_letter(&d.left), &d.core, &s.opt_letter(&d.right)]);
            prop_assert_eq!(&back, &w);
            let in_product = match w.syllables() {
                [] => true,
                [x] => x.factor() <= 1,
                [x, y] => x.factor() == 1 && y.factor() == 0,
                _ => false,
            };
            prop_assert_eq!(d.core.is_empty(), in_product);
            // Same double coset as v·w·u for v ∈ G_2, u ∈ G_1.
            let x = word(&s, &v);
            let pick = |f: usize| x.syllables().iter().find(|e| e.factor() == f).map_or(s.one(), |e| s.letter(e));
            let moved = s.mul_all(&[&pick(1), &w, &pick(0)]);
            prop_assert_eq!(s.double_coset_split(&moved, 1, 0).core, d.core);
        }
    }
}

#[test]
fn enumeration_matches_product_formula() {
    // Words of length L correspond to alternating factor sequences, each
    // contributing Π (|G_k| - 1).
    for s in finite_systems() {
        let sizes: Vec<u64> = s.factors().iter().map(|g| g.order().unwrap() - 1).collect();
        for len in 0..=4usize {
            let mut counts = vec![1u64; s.rank()];
            let mut total = if len == 0 { 1 } else { 0 };
            if len > 0 {
                counts = sizes.clone();
                for _ in 1..len {
                    let sum: u64 = counts.iter().sum();
                    counts = (0..s.rank()).map(|k| (sum - counts[k]) * sizes[k]).collect();
                }
                total = counts.iter().sum();
            }
            let words = s.words_of_length(len, None).unwrap();
            assert_eq!(words.len() as u64, total);
            let mut dedup = words.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), words.len());
        }
    }
}

#[test]
fn enumeration_matches_brute_force_products() {
    // Every product of at most 3 letters, reduced, lands in the enumeration
    // up to length 3, and every enumerated word arises this way.
    for s in [k3(), z3z4z2()] {
        let mut letters: Vec<FactorElement> = Vec::new();
        for k in 0..s.rank() {
            letters.extend(s.nontrivial_elements(k).unwrap());
        }
        let mut seen = vec![s.one()];
        for a in &letters {
            seen.push(s.letter(a));
            for b in &letters {
                seen.push(s.reduce([a, b]).unwrap());
                for c in &letters {
                    seen.push(s.reduce([a, b, c]).unwrap());
                }
            }
        }
        seen.sort();
        seen.dedup();
        let mut enumerated = s.words_up_to(3).unwrap();
        enumerated.sort();
        assert_eq!(seen, enumerated);
    }
}
