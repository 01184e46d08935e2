//! Character tables against independent oracles: hand-coded literature
//! tables, numeric orthogonality and tensor decompositions, Frobenius–Schur
//! indicators, cycle-type class counts and brute-force induced characters.

use std::collections::BTreeMap;

use vanishing::abelian::DualCharacter;
use vanishing::character::{
    dixon_table, induced_linear_value, proportion, vanish_on_abelian_normal, CharacterTable, Rational,
};
use vanishing::constructions::GroupSpec;
use vanishing::group::{parse_cycles, FiniteGroup, Subgroup};

type C = (f64, f64);

const EPS: f64 = 1e-7;

fn perm_group(degree: usize, gens: &[&str], name: &str) -> FiniteGroup {
    let gens: Vec<Vec<u8>> = gens.iter().map(|g| parse_cycles(g, degree).unwrap()).collect();
    FiniteGroup::from_permutations(degree, &gens, name).unwrap()
}

fn s3() -> FiniteGroup {
    perm_group(3, &["(1,2,3)", "(1,2)"], "S3")
}
fn d8() -> FiniteGroup {
    perm_group(4, &["(1,2,3,4)", "(1,3)"], "D8")
}
fn q8() -> FiniteGroup {
    // left regular representation
    perm_group(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"], "Q8")
}
fn a4() -> FiniteGroup {
    perm_group(4, &["(1,2,3)", "(1,2)(3,4)"], "A4")
}
fn s4() -> FiniteGroup {
    perm_group(4, &["(1,2,3,4)", "(1,2)"], "S4")
}
fn a5() -> FiniteGroup {
    perm_group(5, &["(1,2,3)", "(1,2,3,4,5)"], "A5")
}

fn re(x: f64) -> C {
    (x, 0.0)
}

fn omega(k: i32) -> C {
    let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
    (t.cos(), t.sin())
}

/// A literature table: class sizes, element orders and rows of values.
struct Literature {
    sizes: Vec<usize>,
    orders: Vec<u32>,
    rows: Vec<Vec<C>>,
}

fn lit(sizes: &[usize], orders: &[u32], rows: Vec<Vec<C>>) -> Literature {
    Literature {
        sizes: sizes.to_vec(),
        orders: orders.to_vec(),
        rows,
    }
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<C>> {
    rows.iter().map(|r| r.iter().map(|&v| re(v as f64)).collect()).collect()
}

fn computed_rows(t: &CharacterTable) -> Vec<Vec<C>> {
    t.rows().iter().map(|r| r.iter().map(|v| v.to_complex()).collect()).collect()
}

fn key(row: &[C]) -> Vec<(i64, i64)> {
    row.iter()
        .map(|&(a, b)| ((a * 1e6).round() as i64, (b * 1e6).round() as i64))
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// True when some column bijection preserving (size, order) carries the
/// literature rows onto the computed rows as multisets.
fn matches_literature(t: &CharacterTable, l: &Literature) -> bool {
    let cls = &t.classes;
    let n = cls.len();
    if n != l.sizes.len() || t.num_characters() != l.rows.len() {
        return false;
    }
    let mut buckets: BTreeMap<(usize, u32), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for c in 0..n {
        buckets.entry((cls.sizes[c], cls.orders[c])).or_default().0.push(c);
        buckets.entry((l.sizes[c], l.orders[c])).or_default().1.push(c);
    }
    if buckets.values().any(|(a, b)| a.len() != b.len()) {
        return false;
    }
    let mut computed: Vec<_> = computed_rows(t).iter().map(|r| key(r)).collect();
    computed.sort();
    let groups: Vec<_> = buckets.values().cloned().collect();
    // enumerate products of per-bucket permutations
    let options: Vec<Vec<Vec<usize>>> = groups.iter().map(|(_, lits)| permutations(lits)).collect();
    let mut idx = vec![0usize; options.len()];
    loop {
        let mut assign = vec![0usize; n];
        for (g, (comp, _)) in groups.iter().enumerate() {
            for (k, &c) in comp.iter().enumerate() {
                assign[c] = options[g][idx[g]][k];
            }
        }
        let mut lrows: Vec<_> = l
            .rows
            .iter()
            .map(|r| key(&(0..n).map(|c| r[assign[c]]).collect::<Vec<_>>()))
            .collect();
        lrows.sort();
        if lrows == computed {
            return true;
        }
        let mut g = 0;
        loop {
            if g == idx.len() {
                return false;
            }
            idx[g] += 1;
            if idx[g] < options[g].len() {
                break;
            }
            idx[g] = 0;
            g += 1;
        }
    }
}

#[test]
fn small_tables_match_literature() {
    let w = omega(1);
    let w2 = omega(2);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let cases: Vec<(FiniteGroup, Literature)> = vec![
        (s3(), lit(&[1, 3, 2], &[1, 2, 3], ints(&[&[1, 1, 1], &[1, -1, 1], &[2, 0, -1]]))),
        (
            d8(),
            lit(
                &[1, 1, 2, 2, 2],
                &[1, 2, 4, 2, 2],
                ints(&[
                    &[1, 1, 1, 1, 1],
                    &[1, 1, 1, -1, -1],
                    &[1, 1, -1, 1, -1],
                    &[1, 1, -1, -1, 1],
                    &[2, -2, 0, 0, 0],
                ]),
            ),
        ),
        (
            q8(),
            lit(
                &[1, 1, 2, 2, 2],
                &[1, 2, 4, 4, 4],
                ints(&[
                    &[1, 1, 1, 1, 1],
                    &[1, 1, 1, -1, -1],
                    &[1, 1, -1, 1, -1],
                    &[1, 1, -1, -1, 1],
                    &[2, -2, 0, 0, 0],
                ]),
            ),
        ),
        (
            a4(),
            lit(
                &[1, 3, 4, 4],
                &[1, 2, 3, 3],
                vec![
                    vec![re(1.0), re(1.0), re(1.0), re(1.0)],
                    vec![re(1.0), re(1.0), w, w2],
                    vec![re(1.0), re(1.0), w2, w],
                    vec![re(3.0), re(-1.0), re(0.0), re(0.0)],
                ],
            ),
        ),
        (
            s4(),
            lit(
                &[1, 6, 3, 8, 6],
                &[1, 2, 2, 3, 4],
                ints(&[
                    &[1, 1, 1, 1, 1],
                    &[1, -1, 1, 1, -1],
                    &[2, 0, 2, -1, 0],
                    &[3, 1, -1, 0, -1],
                    &[3, -1, -1, 0, 1],
                ]),
            ),
        ),
        (
            a5(),
            lit(
                &[1, 15, 20, 12, 12],
                &[1, 2, 3, 5, 5],
                vec![
                    vec![re(1.0); 5],
                    vec![re(3.0), re(-1.0), re(0.0), re(phi), re(1.0 - phi)],
                    vec![re(3.0), re(-1.0), re(0.0), re(1.0 - phi), re(phi)],
                    vec![re(4.0), re(0.0), re(1.0), re(-1.0), re(-1.0)],
                    vec![re(5.0), re(1.0), re(-1.0), re(0.0), re(0.0)],
                ],
            ),
        ),
    ];
    for (g, l) in &cases {
        let t = dixon_table(g).unwrap();
        assert!(matches_literature(&t, l), "{} table differs from the literature", g.name());
    }
}

#[test]
fn q8_and_d8_tables_coincide_but_groups_differ() {
    // same table up to relabelling, different Frobenius–Schur indicators
    let (tq, td) = (dixon_table(&q8()).unwrap(), dixon_table(&d8()).unwrap());
    let two_q = (0..5).find(|&i| tq.degrees()[i] == 2).unwrap();
    let two_d = (0..5).find(|&i| td.degrees()[i] == 2).unwrap();
    assert_eq!(indicator(&q8(), &tq, two_q), -1);
    assert_eq!(indicator(&d8(), &td, two_d), 1);
}

fn value_at(t: &CharacterTable, i: usize, x: u32) -> C {
    t.value(i, t.classes.class_of[x as usize] as usize).to_complex()
}

/// `(1/|G|) Σ_g χ(g²)` rounded to an integer.
fn indicator(g: &FiniteGroup, t: &CharacterTable, i: usize) -> i64 {
    let mut s = 0.0;
    for x in 0..g.order() as u32 {
        s += value_at(t, i, g.mul(x, x)).0;
    }
    let v = s / g.order() as f64;
    assert!((v - v.round()).abs() < EPS, "indicator {v} not an integer");
    v.round() as i64
}

fn test_groups() -> Vec<FiniteGroup> {
    let mut gs = vec![s3(), d8(), q8(), a4(), s4(), a5()];
    for tag in ["FROB(7,3)", "FROB(11,5)", "B2(C4)", "B1(q8,3)", "PGROUP(heis3)", "SYM(5)", "B3(2)"] {
        gs.push(GroupSpec::parse(tag).unwrap().build().unwrap());
    }
    gs
}

#[test]
fn orthogonality_degrees_and_indicators() {
    for g in test_groups() {
        let t = dixon_table(&g).unwrap();
        let n = g.order() as f64;
        let k = t.num_classes();
        let sizes = &t.classes.sizes;
        assert_eq!(t.num_characters(), k, "{}", g.name());
        let sum_sq: u64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum_sq, g.order() as u64, "{}: sum of squared degrees", g.name());
        for d in t.degrees() {
            assert_eq!(g.order() as u64 % d, 0, "{}: degree divides |G|", g.name());
        }
        let rows = computed_rows(&t);
        for i in 0..k {
            for j in 0..k {
                let mut s = (0.0, 0.0);
                for c in 0..k {
                    let (a, b) = rows[i][c];
                    let (x, y) = rows[j][c];
                    // χ_i · conj(χ_j)
                    s.0 += sizes[c] as f64 * (a * x + b * y);
                    s.1 += sizes[c] as f64 * (b * x - a * y);
                }
                let want = if i == j { n } else { 0.0 };
                assert!((s.0 - want).abs() < EPS * n && s.1.abs() < EPS * n, "{}: rows {i},{j}", g.name());
            }
            let nu = indicator(&g, &t, i);
            assert!((-1..=1).contains(&nu), "{}: indicator {nu}", g.name());
            let real = rows[i].iter().all(|v| v.1.abs() < EPS);
            assert_eq!(nu != 0, real, "{}: indicator vs reality of χ{i}", g.name());
        }
    }
}

#[test]
fn tensor_products_decompose_integrally() {
    for g in test_groups() {
        let t = dixon_table(&g).unwrap();
        let k = t.num_classes();
        let rows = computed_rows(&t);
        let sizes = &t.classes.sizes;
        let n = g.order() as f64;
        for i in 0..k {
            for j in i..k {
                let mut total_degree = 0.0;
                for m in 0..k {
                    let mut s = 0.0;
                    for c in 0..k {
                        let (a, b) = rows[i][c];
                        let (x, y) = rows[j][c];
                        let prod = (a * x - b * y, a * y + b * x);
                        let (u, v) = rows[m][c];
                        s += sizes[c] as f64 * (prod.0 * u + prod.1 * v);
                    }
                    let mult = s / n;
                    assert!(
                        (mult - mult.round()).abs() < 1e-6 && mult.round() >= 0.0,
                        "{}: <χ{i}χ{j}, χ{m}> = {mult}",
                        g.name()
                    );
                    total_degree += mult.round() * t.degrees()[m] as f64;
                }
                assert_eq!(total_degree as u64, t.degrees()[i] * t.degrees()[j]);
            }
        }
    }
}

#[test]
fn a5_proportion_from_literature_table() {
    // every nonidentity class of A5 meets a zero in the literature table
    let report = proportion(&a5()).unwrap();
    assert_eq!(report.proportion, Rational::new(59, 60));
    assert_eq!(report.nonvanishing, vec![0]);
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[test]
fn a7_class_sizes_from_cycle_types() {
    let g = GroupSpec::parse("A7").unwrap().build().unwrap();
    let t = dixon_table(&g).unwrap();
    // even cycle types of 7 points: (lengths of nontrivial cycles)
    let types: [&[u64]; 8] = [&[], &[2, 2], &[3], &[3, 3], &[3, 2, 2], &[4, 2], &[5], &[7]];
    let mut expected: Vec<u64> = Vec::new();
    for ty in types {
        let fixed = 7 - ty.iter().sum::<u64>();
        let mut denom = factorial(fixed);
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for &l in ty {
            *counts.entry(l).or_default() += 1;
        }
        for (&l, &m) in &counts {
            denom *= l.pow(m as u32) * factorial(m);
        }
        let size = factorial(7) / denom;
        if ty == [7] {
            // the 7-cycles split into two classes of A7
            expected.extend([size / 2, size / 2]);
        } else {
            expected.push(size);
        }
    }
    expected.sort();
    let mut got: Vec<u64> = t.classes.sizes.iter().map(|&s| s as u64).collect();
    got.sort();
    assert_eq!(got, expected);
    assert_eq!(expected.iter().sum::<u64>(), 2520);
}

/// `α^G(a)` by brute force: `(1/|A|) Σ_{g∈G} α(g a g⁻¹)`.
fn brute_induced(g: &FiniteGroup, view: &vanishing::group::AbelianView, alpha: &DualCharacter, x: u32) -> C {
    let mut s = (0.0, 0.0);
    for h in 0..g.order() as u32 {
        let y = g.conj(x, h);
        let v = alpha.value(view.coords(y).unwrap()).to_complex();
        s.0 += v.0;
        s.1 += v.1;
    }
    let a = view.group.order() as f64;
    (s.0 / a, s.1 / a)
}

fn abelian_normal_pairs() -> Vec<(FiniteGroup, Subgroup)> {
    let mut out = Vec::new();
    for g in test_groups() {
        for a in [g.fitting(), g.center(), g.derived_subgroup()] {
            if g.is_normal(&a) && g.subgroup_as_group(&a, "A").0.is_abelian() {
                out.push((g.clone(), a));
            }
        }
    }
    out
}

#[test]
fn induced_linear_values_match_brute_force() {
    for (g, a) in abelian_normal_pairs() {
        let view = g.abelian_view(&a).unwrap();
        let trans = g.right_transversal(&a);
        let ab = view.group.clone();
        for coords in ab.elements().take(12) {
            let alpha = DualCharacter::new(&ab, &coords.coords).unwrap();
            for &x in a.elements() {
                let el = view.coords(x).unwrap().clone();
                let fast = induced_linear_value(&alpha, &el, &g, &view, &trans).unwrap().to_complex();
                let slow = brute_induced(&g, &view, &alpha, x);
                assert!(
                    (fast.0 - slow.0).abs() < EPS && (fast.1 - slow.1).abs() < EPS,
                    "{}: induced value mismatch",
                    g.name()
                );
            }
        }
    }
}

#[test]
fn induced_fast_path_agrees_with_oracle_on_abelian_normal_subgroups() {
    for (g, a) in abelian_normal_pairs() {
        let fast = vanish_on_abelian_normal(&g, &a).unwrap();
        let report = proportion(&g).unwrap();
        let mut slow: Vec<u32> = a.elements().iter().copied().filter(|&x| report.is_vanishing(x)).collect();
        slow.sort();
        let mut fast = fast;
        fast.sort();
        assert_eq!(fast, slow, "{}: V(G) ∩ A", g.name());
    }
}

#[test]
fn s4_klein_four_meets_no_vanishing_element() {
    let g = s4();
    assert_eq!(g.derived_subgroup().order(), 12);
    let klein = g.fitting();
    assert_eq!(klein.order(), 4);
    assert!(vanish_on_abelian_normal(&g, &klein).unwrap().is_empty());
    assert_eq!(proportion(&g).unwrap().proportion, Rational::new(5, 6));
}
