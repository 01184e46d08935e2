//! The structural classifier against the vanishing oracle, on the case
//! builders and on hand-made groups.

use vanishing::abelian::{AbHom, AbelianGroup};
use vanishing::character::{dixon_table, proportion, threshold, Rational};
use vanishing::classifier::{
    all_b_shapes, check_b1, check_c6_case, check_s3_case, classify_a_group, classify_theorem_a, AGroupCase, Case,
    Outcome,
};
use vanishing::constructions::{build_case_family, random_corpus, CorpusCaps, GroupSpec, SemidirectForm};
use vanishing::group::FiniteGroup;

fn build(tag: &str) -> FiniteGroup {
    GroupSpec::parse(tag).unwrap().build().unwrap()
}

fn form(tag: &str) -> SemidirectForm {
    GroupSpec::parse(tag).unwrap().semidirect_form().unwrap().unwrap()
}

/// Checks the verdict against the oracle: Below iff `P < 𝔞`, with the
/// predicted value exact.
fn assert_agrees(g: &FiniteGroup) -> (Outcome, Rational) {
    let p = proportion(g).unwrap().proportion;
    let v = classify_theorem_a(g);
    assert_eq!(v.outcome.is_below(), p < threshold(), "{}: P = {p}, verdict {}", g.name(), v.outcome);
    if let Some(pred) = v.outcome.predicted_p() {
        assert_eq!(pred, p, "{}: predicted value", g.name());
    }
    (v.outcome, p)
}

#[test]
fn builders_meet_their_expectations() {
    let tags = [
        "A(2)", "A(3)", "A(4)", "A(5)", "A(6)", "FROB(7,6)", "FROB(11,10)", "B1(d8,3)", "B1(q8,3)", "B1(q8,5)",
        "B2(C2)", "B2(C4)", "B2(C2xC2)", "B2(C8)", "B2(C4xC4)", "B3(2)", "B3(3)", "B4_1(1,1)", "B4_1(1,C2xC2)",
        "B4_2(3,1,1)", "INVERSION_NEGATIVE", "SYM(4)", "SYM(5)", "ALT(5)",
    ];
    for tag in tags {
        let entry = build_case_family(tag).unwrap();
        let (outcome, p) = assert_agrees(&entry.group);
        if let Some(exp) = &entry.expected {
            assert_eq!(outcome, exp.outcome, "{tag}: builder expectation");
            if let Some(q) = exp.proportion {
                assert_eq!(q, p, "{tag}: expected proportion");
            }
        }
    }
}

#[test]
fn literature_proportions() {
    let cases = [
        ("SYM(3)", Rational::new(1, 2)),
        ("ALT(4)", Rational::new(2, 3)),
        ("SYM(4)", Rational::new(5, 6)),
        ("PGROUP(d8)", Rational::new(3, 4)),
        ("PGROUP(q8)", Rational::new(3, 4)),
        ("PGROUP(heis3)", Rational::new(8, 9)),
        ("ALT(5)", Rational::new(59, 60)),
        ("SYM(5)", Rational::new(119, 120)),
        ("B1(q8,3)", Rational::new(3, 4)),
    ];
    for (tag, p) in cases {
        assert_eq!(proportion(&build(tag)).unwrap().proportion, p, "{tag}");
    }
}

#[test]
fn case_labels_of_builders() {
    let cases = [
        ("B1(d8,3)", Case::B1),
        ("B2(C4)", Case::B2),
        ("B2(C2xC2)", Case::B2),
        ("B3(3)", Case::B3),
        ("B4_1(1,C2xC2)", Case::B4_1),
        ("B4_2(3,1,1)", Case::B4_2),
    ];
    for (tag, case) in cases {
        let v = classify_theorem_a(&build(tag));
        assert_eq!(v.outcome.case(), Some(case), "{tag}");
        assert_eq!(v.outcome.predicted_p(), Some(Rational::new(case_m(case) - 1, case_m(case))));
    }
}

fn case_m(c: Case) -> i64 {
    match c {
        Case::A(m) => m as i64,
        Case::B1 => 4,
        _ => 6,
    }
}

fn s3_pair(tag: &str) -> (AbelianGroup, AbHom, AbHom) {
    let f = form(tag);
    assert_eq!(f.complement, "S3");
    (f.a.clone(), f.action[0].clone(), f.action[1].clone())
}

fn c6_pair(tag: &str) -> (AbelianGroup, AbHom, AbHom) {
    let f = form(tag);
    assert_eq!(f.complement, "C6");
    let g = &f.action[0];
    // g = xy with x of order 3 and y of order 2 commuting
    (f.a.clone(), g.power(4), g.power(3))
}

#[test]
fn s3_case_on_module_data() {
    let (a, x, y) = s3_pair("B2(C4)");
    assert!(check_s3_case(&a, &x, &y).unwrap());
    let (a, x, y) = s3_pair("B2(C2xC2)");
    assert!(check_s3_case(&a, &x, &y).unwrap());
    // C_A(y) = C4 × C4 does not embed in C4 × (C2)^k
    let (a, x, y) = s3_pair("B2(C4xC4)");
    assert!(!check_s3_case(&a, &x, &y).unwrap());
    let (a, x, y) = s3_pair("B2(C8)");
    assert!(!check_s3_case(&a, &x, &y).unwrap());
    // commuting y is rejected as a precondition failure
    let (a, x, _) = s3_pair("B2(C4)");
    assert!(check_s3_case(&a, &x, &AbHom::identity(&a)).is_err());
}

#[test]
fn c6_case_on_module_data() {
    let cases = [
        ("B3(2)", Some(Case::B3)),
        ("B3(3)", Some(Case::B3)),
        ("B4_1(1,1)", Some(Case::B4_1)),
        ("B4_1(2,1)", Some(Case::B4_1)),
        ("B4_2(3,1,1)", Some(Case::B4_2)),
        ("B4_2(4,1,1)", Some(Case::B4_2)),
        ("B4_2(5,1,1)", Some(Case::B4_2)),
        ("INVERSION_NEGATIVE", None),
    ];
    for (tag, want) in cases {
        let (a, x, y) = c6_pair(tag);
        let got = check_c6_case(&a, &x, &y).unwrap();
        assert_eq!(got.map(|s| s.case), want, "{tag}");
        if let Some(s) = got {
            assert_eq!(s.exponent, a.exponent());
        }
    }
    // x⁻¹ in place of x gives the same shape
    let (a, x, y) = c6_pair("B4_1(1,1)");
    let flipped = check_c6_case(&a, &x.power(2), &y).unwrap().unwrap();
    assert_eq!(flipped.case, Case::B4_1);
}

#[test]
fn c6_case_preconditions() {
    let (a, x, y) = c6_pair("B4_1(1,1)");
    // y of order 3 instead of 2
    assert!(check_c6_case(&a, &x, &x).is_err());
    // an inverting involution does not commute with x
    let (b, bx, by) = s3_pair("B2(C2)");
    assert!(check_c6_case(&b, &bx, &by).is_err());
    // the identity has fixed points
    assert!(check_c6_case(&a, &AbHom::identity(&a), &y).is_err());
    // modules of odd order are not 2-groups
    let odd = AbelianGroup::parse("C3").unwrap();
    let id = AbHom::identity(&odd);
    assert!(check_c6_case(&odd, &id, &id).is_err());
}

#[test]
fn b4_1_sylow_two_has_class_three() {
    let g = build("B4_1(1,1)");
    let q = g.sylow(2);
    assert_eq!(g.subgroup_class(&q).unwrap(), 3);
    let g = build("B3(2)");
    assert_eq!(g.subgroup_class(&g.sylow(2)).unwrap(), 2);
}

/// `SL(2,3)` acting on the eight nonzero vectors of `F_3²`.
fn sl23() -> FiniteGroup {
    let vectors: Vec<(i64, i64)> = (0..9).map(|i| (i / 3, i % 3)).filter(|&v| v != (0, 0)).collect();
    let perm = |m: [[i64; 2]; 2]| -> Vec<u8> {
        vectors
            .iter()
            .map(|&(a, b)| {
                let img = ((m[0][0] * a + m[0][1] * b).rem_euclid(3), (m[1][0] * a + m[1][1] * b).rem_euclid(3));
                vectors.iter().position(|&v| v == img).unwrap() as u8
            })
            .collect()
    };
    let gens = vec![perm([[1, 1], [0, 1]]), perm([[0, 2], [1, 0]])];
    FiniteGroup::from_permutations(8, &gens, "SL(2,3)").unwrap()
}

#[test]
fn sl23_is_quasi_frobenius() {
    let g = sl23();
    assert_eq!(g.order(), 24);
    assert_eq!(g.center().order(), 2);
    assert_eq!(g.fitting().order(), 8);
    assert!(g.is_quasi_frobenius().holds);
    assert!(!build("SYM(4)").is_quasi_frobenius().holds);
    assert!(build("ALT(4)").is_quasi_frobenius().holds);
    assert_agrees(&g);
    let t = dixon_table(&g).unwrap();
    let mut d = t.degrees().to_vec();
    d.sort();
    assert_eq!(d, vec![1, 1, 1, 2, 2, 2, 3]);
}

#[test]
fn a_group_description() {
    let cases = [
        ("ALT(4)", AGroupCase::One, 3),
        ("FROB(7,6)", AGroupCase::One, 6),
        ("A(5)", AGroupCase::One, 5),
        ("PRODUCT(SYM(3),SYM(3))", AGroupCase::Two, 4),
        ("PRODUCT(SYM(3),FROB(7,3))", AGroupCase::Three, 6),
        ("PRODUCT(ALT(4),SYM(3))", AGroupCase::FourOne, 6),
    ];
    for (tag, case, m) in cases {
        let g = build(tag);
        let c = classify_a_group(&g).unwrap();
        assert_eq!((c.case, c.m), (case, m), "{tag}");
        // every such A-group lies below the threshold with P = (m-1)/m
        let (outcome, p) = assert_agrees(&g);
        assert_eq!(outcome.case(), Some(Case::A(m)));
        assert_eq!(p, Rational::new(m as i64 - 1, m as i64), "{tag}");
    }
    // outside the domain
    assert!(classify_a_group(&build("SYM(4)")).is_err());
    assert!(classify_a_group(&build("CYCLIC(12)")).is_err());
    assert!(classify_a_group(&build("FROB(29,7)")).is_err());
}

#[test]
fn b1_needs_a_normal_two_complement() {
    assert!(check_b1(&build("B1(q8,5)")).is_some());
    assert!(check_b1(&build("SYM(4)")).is_none());
    assert!(check_b1(&sl23()).is_none());
}

#[test]
fn shapes_are_exclusive_and_witness_the_nonvanishing_set() {
    let caps = CorpusCaps {
        max_order: 1000,
        max_classes: 120,
    };
    for entry in random_corpus(7, 120, caps) {
        let g = &entry.group;
        let shapes = all_b_shapes(g);
        assert!(shapes.len() <= 1, "{}: shapes {:?}", entry.provenance, shapes);
        let v = classify_theorem_a(g);
        let report = proportion(g).unwrap();
        assert_eq!(v.outcome.is_below(), report.proportion < threshold(), "{}", entry.provenance);
        let Some(case) = v.outcome.case() else { continue };
        if !matches!(case, Case::A(_)) {
            assert_eq!(shapes, vec![case], "{}", entry.provenance);
        }
        let name = if matches!(case, Case::A(_)) { "F" } else { "A" };
        let w = v.witness(name).unwrap();
        let mut n = report.nonvanishing.clone();
        n.sort();
        let mut elems = w.elements().to_vec();
        elems.sort();
        assert_eq!(elems, n, "{}: witness {name} against N(G)", entry.provenance);
    }
}

#[test]
fn nonabelian_groups_have_vanishing_elements() {
    for entry in random_corpus(3, 80, CorpusCaps::default()) {
        let g = &entry.group;
        let p = proportion(g).unwrap().proportion;
        assert_eq!(p == Rational::from_integer(0), g.is_abelian(), "{}", entry.provenance);
        if !g.is_abelian() {
            assert!(p >= Rational::new(1, 2), "{}", entry.provenance);
        }
    }
}

#[test]
fn corpus_is_reproducible() {
    let caps = CorpusCaps::default();
    let a = random_corpus(11, 40, caps);
    let b = random_corpus(11, 40, caps);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.spec, y.spec);
        assert_eq!(x.provenance, y.provenance);
        let replayed = x.replay().unwrap();
        assert_eq!(replayed.order(), x.group.order());
        assert_eq!(
            proportion(&replayed).unwrap().proportion,
            proportion(&y.group).unwrap().proportion
        );
    }
}
