//! Property-based tests: cyclotomic ring laws, abelian duality against a
//! brute-force pairing, group-file round trips and corpus determinism.

use std::collections::BTreeSet;

use proptest::prelude::*;

use vanishing::abelian::{AbElement, AbSubgroup, AbelianGroup, DualCharacter};
use vanishing::character::proportion;
use vanishing::constructions::{random_corpus, CorpusCaps};
use vanishing::cyclotomic::{root_sum_is_zero, Cyclo};
use vanishing::groupfile::GroupFile;

const ORDERS: [u64; 10] = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15];

fn cyclo(n: u64, coeffs: &[i64]) -> Cyclo {
    Cyclo::from_i64_coeffs(n, coeffs)
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    let scale = 1.0 + a.0.abs() + a.1.abs();
    (a.0 - b.0).abs() < 1e-8 * scale && (a.1 - b.1).abs() < 1e-8 * scale
}

fn coeffs() -> impl Strategy<Value = (u64, Vec<i64>, Vec<i64>, Vec<i64>)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|n| {
        let v = prop::collection::vec(-6i64..=6, n as usize);
        (Just(n), v.clone(), v.clone(), v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cyclotomic_ring_laws((n, a, b, c) in coeffs()) {
        let (a, b, c) = (cyclo(n, &a), cyclo(n, &b), cyclo(n, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), Cyclo::zero(n));
        prop_assert_eq!(&a * &Cyclo::one(), a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.lift(n * 2), a.clone());
    }

    #[test]
    fn cyclotomic_values_match_complex_numbers((n, a, b, _) in coeffs()) {
        let (x, y) = (cyclo(n, &a), cyclo(n, &b));
        // direct evaluation of Σ a_k e^{2πik/n}
        let eval = |v: &[i64]| {
            v.iter().enumerate().fold((0.0, 0.0), |acc, (k, &c)| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                (acc.0 + c as f64 * t.cos(), acc.1 + c as f64 * t.sin())
            })
        };
        let (ex, ey) = (eval(&a), eval(&b));
        prop_assert!(close(x.to_complex(), ex));
        let prod = (ex.0 * ey.0 - ex.1 * ey.1, ex.0 * ey.1 + ex.1 * ey.0);
        prop_assert!(close((&x * &y).to_complex(), prod));
        prop_assert_eq!(x.is_zero(), ex.0.abs() < 1e-9 && ex.1.abs() < 1e-9);
    }

    #[test]
    fn galois_action_is_a_ring_automorphism((n, a, b, _) in coeffs(), k in 1i64..30) {
        // the next unit modulo n at or after k
        let k = (k..).find(|&j| vanishing::arith::gcd(j as u64, n) == 1).unwrap();
        let (x, y) = (cyclo(n, &a), cyclo(n, &b));
        prop_assert_eq!((&x * &y).galois(k), &x.galois(k) * &y.galois(k));
        prop_assert_eq!((&x + &y).galois(k), &x.galois(k) + &y.galois(k));
    }

    #[test]
    fn root_sums_vanish_exactly_when_numerically_zero(
        n in prop::sample::select(vec![2u64, 3, 4, 5, 6, 8, 10, 12]),
        raw in prop::collection::vec(0i64..3, 12),
    ) {
        let counts: Vec<i64> = raw[..n as usize].to_vec();
        let (re, im) = counts.iter().enumerate().fold((0.0, 0.0), |acc, (k, &c)| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (acc.0 + c as f64 * t.cos(), acc.1 + c as f64 * t.sin())
        });
        prop_assert_eq!(root_sum_is_zero(n, &counts), re.abs() < 1e-9 && im.abs() < 1e-9);
    }
}

// ----- duality ---------------------------------------------------------------------

/// `α(b)` as a multiple of `1/e`, computed from the definition of the pairing
/// on `C_{d_1} × … × C_{d_r}`.
fn pairing(factors: &[u64], alpha: &[i64], b: &[i64]) -> u64 {
    let e = factors.iter().fold(1u64, |acc, &d| vanishing::arith::lcm(acc, d));
    let s: i128 = factors
        .iter()
        .zip(alpha.iter().zip(b))
        .map(|(&d, (&x, &y))| x as i128 * y as i128 * (e / d) as i128)
        .sum();
    s.rem_euclid(e as i128) as u64
}

fn two_group() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(prop::sample::select(vec![2u64, 4, 8]), 1..=4)
        .prop_filter("order at most 256", |f| f.iter().product::<u64>() <= 256)
}

fn elements_of(s: &AbSubgroup) -> BTreeSet<Vec<i64>> {
    s.elements().into_iter().map(|e| e.coords).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn annihilators_match_brute_force(factors in two_group(), seeds in prop::collection::vec(0usize..1000, 0..4)) {
        let a = AbelianGroup::new(factors.clone()).unwrap();
        let gens: Vec<AbElement> = seeds.iter().map(|&s| a.element_at(s % a.order() as usize)).collect();
        let b = AbSubgroup::generated(&a, &gens).unwrap();
        let perp = b.perp();
        let brute: BTreeSet<Vec<i64>> = a
            .elements()
            .filter(|alpha| b.elements().iter().all(|x| pairing(&factors, &alpha.coords, &x.coords) == 0))
            .map(|alpha| alpha.coords)
            .collect();
        prop_assert_eq!(elements_of(&perp), brute);
        prop_assert_eq!(perp.perp(), b.clone());
        prop_assert_eq!(b.order() * perp.order(), a.order());
    }

    #[test]
    fn annihilator_reverses_sums_and_intersections(
        factors in two_group(),
        s1 in prop::collection::vec(0usize..1000, 1..3),
        s2 in prop::collection::vec(0usize..1000, 1..3),
    ) {
        let a = AbelianGroup::new(factors).unwrap();
        let pick = |s: &[usize]| -> Vec<AbElement> { s.iter().map(|&i| a.element_at(i % a.order() as usize)).collect() };
        let b = AbSubgroup::generated(&a, &pick(&s1)).unwrap();
        let c = AbSubgroup::generated(&a, &pick(&s2)).unwrap();
        prop_assert_eq!(b.sum(&c).perp(), b.perp().intersection(&c.perp()));
        prop_assert_eq!(b.intersection(&c).perp(), b.perp().sum(&c.perp()));
    }

    #[test]
    fn dual_characters_are_homomorphisms(factors in two_group(), i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let a = AbelianGroup::new(factors.clone()).unwrap();
        let n = a.order() as usize;
        let alpha = DualCharacter::new(&a, &a.element_at(i % n).coords).unwrap();
        let (x, y) = (a.element_at(j % n), a.element_at(k % n));
        prop_assert_eq!(alpha.value(&a.add(&x, &y)), &alpha.value(&x) * &alpha.value(&y));
        prop_assert_eq!(alpha.value_exponent(&x), pairing(&factors, &alpha.coords.coords, &x.coords));
    }
}

// ----- group files and corpora ----------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn group_files_round_trip(seed in 0u64..10_000) {
        let caps = CorpusCaps { max_order: 400, max_classes: 80 };
        for entry in random_corpus(seed, 6, caps) {
            let file = GroupFile::from_spec(&entry.spec).unwrap();
            let text = file.to_text();
            let parsed = GroupFile::parse(&text).unwrap();
            prop_assert_eq!(parsed.to_text(), text.clone());
            let g = parsed.build().unwrap();
            prop_assert_eq!(g.order(), entry.group.order());
            prop_assert_eq!(
                proportion(&g).unwrap().proportion,
                proportion(&entry.group).unwrap().proportion,
                "{}", text
            );
        }
    }

    #[test]
    fn corpora_replay_deterministically(seed in 0u64..10_000) {
        let caps = CorpusCaps { max_order: 600, max_classes: 100 };
        let a = random_corpus(seed, 8, caps);
        let b = random_corpus(seed, 8, caps);
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(&x.spec, &y.spec);
            prop_assert_eq!(&x.provenance, &y.provenance);
            prop_assert_eq!(x.replay().unwrap().order(), y.group.order());
        }
    }
}
