//! The verification campaign: twelve checks, each producing one report row.
//!
//! Rows are line-oriented `key=value` records:
//!
//! ```text
//! check=a7_proportion status=pass observed=1067/1260 expected=1067/1260 tag=theory
//! ```
//!
//! `tag=theory` marks values predicted by the classification results,
//! `tag=derived` values obtained from an independent computation. Values never
//! contain spaces, so rows can be split on whitespace and then on the first
//! `=`. Reports are byte-identical for identical configurations.

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::abelian::{commutator_map, AbElement, AbHom, AbSubgroup, AbelianGroup, DualCharacter};
use crate::arith::{prime_divisors, prime_of_power};
use crate::character::{
    dixon_table, normal_subgroups, proportion, threshold, value_set, vanish_on_abelian_normal, CharacterTable,
    Rational, VanishReport,
};
use crate::classifier::{classify_theorem_a, Case, Outcome, Verdict};
use crate::constructions::{random_corpus, CorpusCaps, CorpusEntry, GroupSpec};
use crate::cyclotomic::{root_sum_is_zero, six_sum_classifier_exponents, vanishing_sum_possible, Cyclo};
use crate::error::Result;
use crate::group::{Elem, FiniteGroup, Subgroup, TABLE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub check: &'static str,
    pub status: Status,
    pub observed: String,
    pub expected: String,
    pub tag: &'static str,
    /// First counterexample, when there is one.
    pub detail: Option<String>,
}

fn no_spaces(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(",")
}

impl fmt::Display for CheckRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "check={} status={} observed={} expected={} tag={}",
            self.check,
            self.status,
            no_spaces(&self.observed),
            no_spaces(&self.expected),
            self.tag
        )?;
        if let Some(d) = &self.detail {
            write!(f, " detail={}", no_spaces(d))?;
        }
        Ok(())
    }
}

/// The checks in report order, with the short alias accepted by `--only`.
pub const CHECKS: [(&str, &str); 12] = [
    ("a7_proportion", "a7"),
    ("m5_nonvanishing", "m5"),
    ("value_set", "values"),
    ("classifier_oracle", "classifier"),
    ("pgroup_law", "pgroup"),
    ("b4_1_pair", "b4"),
    ("s4_end_to_end", "s4"),
    ("sixsum_exhaustive", "sixsum"),
    ("vanishing_sum_soundness", "vs"),
    ("duality", "duality"),
    ("property_pack", "properties"),
    ("endpoints", "endpoints"),
];

/// Resolves a check name or alias.
pub fn check_name(text: &str) -> Option<&'static str> {
    CHECKS
        .iter()
        .find(|(name, alias)| *name == text || *alias == text)
        .map(|(name, _)| *name)
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub seed: u64,
    pub count: usize,
    pub corpus_caps: CorpusCaps,
    /// Fixed groups (A_7, the order-6480 group, …) above this order are skipped.
    pub max_order: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 42,
            count: 200,
            corpus_caps: CorpusCaps::default(),
            max_order: TABLE_CAP,
        }
    }
}

impl CampaignConfig {
    /// One cap for everything, as in `campaign --caps N`.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.corpus_caps.max_order = cap;
        self.max_order = cap;
        self
    }
}

/// A corpus member with its oracle data.
pub struct Evaluated {
    pub entry: CorpusEntry,
    pub table: Option<CharacterTable>,
    pub report: VanishReport,
    pub verdict: Verdict,
}

impl Evaluated {
    fn new(entry: CorpusEntry) -> Result<Self> {
        let g = &entry.group;
        let table = if g.is_abelian() { None } else { Some(dixon_table(g)?) };
        let report = match &table {
            Some(t) => VanishReport::from_table(g, t),
            None => proportion(g)?,
        };
        let verdict = classify_theorem_a(g);
        Ok(Evaluated {
            entry,
            table,
            report,
            verdict,
        })
    }

    fn p(&self) -> Rational {
        self.report.proportion
    }

    fn name(&self) -> String {
        self.entry.provenance.clone()
    }
}

pub struct Campaign {
    pub config: CampaignConfig,
    corpus: OnceLock<std::result::Result<Vec<Evaluated>, String>>,
}

/// The complete result of a run.
#[derive(Clone, Debug)]
pub struct Report {
    pub header: String,
    pub rows: Vec<CheckRow>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header)?;
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn row(check: &'static str, ok: bool, observed: String, expected: String, tag: &'static str) -> CheckRow {
    CheckRow {
        check,
        status: if ok { Status::Pass } else { Status::Fail },
        observed,
        expected,
        tag,
        detail: None,
    }
}

fn skip(check: &'static str, why: &str) -> CheckRow {
    CheckRow {
        check,
        status: Status::Skip,
        observed: why.to_string(),
        expected: "-".into(),
        tag: "derived",
        detail: None,
    }
}

fn error_row(check: &'static str, e: impl fmt::Display) -> CheckRow {
    CheckRow {
        check,
        status: Status::Fail,
        observed: "error".into(),
        expected: "-".into(),
        tag: "derived",
        detail: Some(e.to_string()),
    }
}

/// Collects counterexamples and keeps the first one.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn into_row(self, check: &'static str, tag: &'static str) -> CheckRow {
        CheckRow {
            check,
            status: if self.failures == 0 { Status::Pass } else { Status::Fail },
            observed: format!("checked={},failures={}", self.checked, self.failures),
            expected: "failures=0".into(),
            tag,
            detail: self.first,
        }
    }
}

fn subgroup_set(s: &Subgroup) -> Vec<Elem> {
    let mut v = s.elements().to_vec();
    v.sort_unstable();
    v
}

fn is_prime_power(n: usize) -> bool {
    n > 1 && prime_of_power(n as u64).is_some()
}

impl Campaign {
    pub fn new(config: CampaignConfig) -> Self {
        Campaign {
            config,
            corpus: OnceLock::new(),
        }
    }

    /// The evaluated corpus, built once. Entries are evaluated in parallel;
    /// the order is that of the generator.
    pub fn corpus(&self) -> std::result::Result<&[Evaluated], String> {
        self.corpus
            .get_or_init(|| {
                let entries = random_corpus(self.config.seed, self.config.count, self.config.corpus_caps);
                entries
                    .into_par_iter()
                    .map(|e| {
                        let name = e.provenance.clone();
                        Evaluated::new(e).map_err(|err| format!("{name}: {err}"))
                    })
                    .collect()
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }

    pub fn header(&self) -> String {
        format!(
            "run seed={} count={} corpus_max_order={} corpus_max_classes={} max_order={} version={}",
            self.config.seed,
            self.config.count,
            self.config.corpus_caps.max_order,
            self.config.corpus_caps.max_classes,
            self.config.max_order,
            env!("CARGO_PKG_VERSION")
        )
    }

    /// Runs the named checks (all when `only` is empty), in report order.
    pub fn run(&self, only: &[&str]) -> Report {
        let rows = CHECKS
            .iter()
            .filter(|(name, _)| only.is_empty() || only.contains(name))
            .map(|(name, _)| self.run_one(name))
            .collect();
        Report {
            header: self.header(),
            rows,
        }
    }

    pub fn run_one(&self, name: &str) -> CheckRow {
        match name {
            "a7_proportion" => self.a7_proportion(),
            "m5_nonvanishing" => self.m5_nonvanishing(),
            "value_set" => self.with_corpus("value_set", value_set_check),
            "classifier_oracle" => self.with_corpus("classifier_oracle", classifier_oracle),
            "pgroup_law" => self.pgroup_law(),
            "b4_1_pair" => self.b4_1_pair(),
            "s4_end_to_end" => self.s4_end_to_end(),
            "sixsum_exhaustive" => sixsum_exhaustive(4),
            "vanishing_sum_soundness" => vanishing_sum_soundness(8, &[2, 3, 4, 5, 6, 8, 9, 12]),
            "duality" => duality(self.config.seed, 1000, 200),
            "property_pack" => self.with_corpus("property_pack", property_pack),
            "endpoints" => self.with_corpus("endpoints", endpoints),
            other => skip("unknown", other),
        }
    }

    fn with_corpus(&self, check: &'static str, f: impl FnOnce(&[Evaluated]) -> CheckRow) -> CheckRow {
        match self.corpus() {
            Ok(c) if c.is_empty() => skip(check, "empty-corpus"),
            Ok(c) => f(c),
            Err(e) => error_row(check, e),
        }
    }

    fn fixed(&self, check: &'static str, spec: &str) -> std::result::Result<FiniteGroup, CheckRow> {
        let spec = GroupSpec::parse(spec).map_err(|e| error_row(check, e))?;
        let g = spec.build().map_err(|e| error_row(check, e))?;
        if g.order() > self.config.max_order {
            return Err(skip(check, &format!("order-{}-above-cap-{}", g.order(), self.config.max_order)));
        }
        Ok(g)
    }

    fn a7_proportion(&self) -> CheckRow {
        const CHECK: &str = "a7_proportion";
        let g = match self.fixed(CHECK, "PERM(7,(1,2,3),(1,2,3,4,5,6,7))") {
            Ok(g) => g,
            Err(r) => return r,
        };
        let table = match dixon_table(&g) {
            Ok(t) => t,
            Err(e) => return error_row(CHECK, e),
        };
        let p = VanishReport::from_table(&g, &table).proportion;
        let mut degrees = table.degrees().to_vec();
        degrees.sort_unstable();
        let ok = p == threshold() && degrees == [1, 6, 10, 10, 14, 14, 15, 21, 35];
        row(
            CHECK,
            ok,
            format!("{p},degrees={}", join(&degrees)),
            "1067/1260,degrees=1|6|10|10|14|14|15|21|35".to_string(),
            "theory",
        )
    }

    fn m5_nonvanishing(&self) -> CheckRow {
        const CHECK: &str = "m5_nonvanishing";
        let g = match self.fixed(CHECK, "M5") {
            Ok(g) => g,
            Err(r) => return r,
        };
        let report = match proportion(&g) {
            Ok(r) => r,
            Err(e) => return error_row(CHECK, e),
        };
        let u = g.o_p(2);
        let v = g.o_p(3);
        let mut union: Vec<Elem> = u.elements().iter().chain(v.elements()).copied().collect();
        union.sort_unstable();
        union.dedup();
        let z = g.center();
        let minimal = |s: &Subgroup| {
            // a normal subgroup of prime exponent is minimal normal iff the
            // normal closure of every nonidentity element is all of it
            s.elements()
                .iter()
                .filter(|&&x| x != g.identity())
                .all(|&x| g.normal_closure(&[x]).order() == s.order())
        };
        let structure = u.order() == 16
            && v.order() == 81
            && g.order() / (u.order() * v.order()) == 5
            && minimal(&u)
            && minimal(&v)
            && !u.is_subset_of(&z)
            && !v.is_subset_of(&z);
        let ok = report.proportion == Rational::new(133, 135) && report.nonvanishing == union && structure;
        row(
            CHECK,
            ok,
            format!(
                "{},|N|={},N=U+V:{},minimal_noncentral:{}",
                report.proportion,
                report.nonvanishing.len(),
                report.nonvanishing == union,
                structure
            ),
            "133/135,|N|=96,N=U+V:true,minimal_noncentral:true".into(),
            "theory",
        )
    }

    fn pgroup_law(&self) -> CheckRow {
        const CHECK: &str = "pgroup_law";
        let mut tally = Tally::default();
        let spots = [("PGROUP(q8)", Rational::new(3, 4)), ("PGROUP(d8)", Rational::new(3, 4)), ("PGROUP(heis3)", Rational::new(8, 9))];
        for (spec, want) in spots {
            match self.fixed(CHECK, spec) {
                Ok(g) => match proportion(&g) {
                    Ok(r) => tally.record(r.proportion == want, || format!("{spec}:P={}", r.proportion)),
                    Err(e) => tally.record(false, || format!("{spec}:{e}")),
                },
                Err(r) if r.status == Status::Skip => {}
                Err(r) => return r,
            }
        }
        let corpus = match self.corpus() {
            Ok(c) => c,
            Err(e) => return error_row(CHECK, e),
        };
        let mut members = 0;
        for ev in corpus.iter().filter(|ev| is_prime_power(ev.entry.group.order())) {
            members += 1;
            let g = &ev.entry.group;
            let z = g.center();
            let m = (g.order() / z.order()) as i64;
            let ok = ev.report.nonvanishing == subgroup_set(&z) && ev.p() == Rational::new(m - 1, m);
            tally.record(ok, || format!("{}:P={}", ev.name(), ev.p()));
        }
        let mut r = tally.into_row(CHECK, "theory");
        r.observed = format!("{},corpus_pgroups={members}", r.observed);
        r
    }

    fn b4_1_pair(&self) -> CheckRow {
        const CHECK: &str = "b4_1_pair";
        let pos = match self.fixed(CHECK, "B4_1(1,1)") {
            Ok(g) => g,
            Err(r) => return r,
        };
        let neg = match self.fixed(CHECK, "INVERSION_NEGATIVE") {
            Ok(g) => g,
            Err(r) => return r,
        };
        let (pp, pn) = match (proportion(&pos), proportion(&neg)) {
            (Ok(a), Ok(b)) => (a.proportion, b.proportion),
            (Err(e), _) | (_, Err(e)) => return error_row(CHECK, e),
        };
        let verdict_pos = classify_theorem_a(&pos).outcome;
        let verdict_neg = classify_theorem_a(&neg).outcome;
        let five_sixths = Rational::new(5, 6);
        let ok = pp == five_sixths && verdict_pos.case() == Some(Case::B4_1) && pn > five_sixths && verdict_neg == Outcome::AtOrAbove;
        row(
            CHECK,
            ok,
            format!("positive:{pp}:{},negative:{pn}:{}", verdict_pos.case().map_or("none", |c| c.label()), verdict_neg),
            "positive:5/6:b4.1,negative:>5/6:AtOrAbove".into(),
            "theory",
        )
    }

    fn s4_end_to_end(&self) -> CheckRow {
        const CHECK: &str = "s4_end_to_end";
        let g = match self.fixed(CHECK, "SYM(4)") {
            Ok(g) => g,
            Err(r) => return r,
        };
        let v4 = g.o_p(2);
        let fast = match vanish_on_abelian_normal(&g, &v4) {
            Ok(f) => f,
            Err(e) => return error_row(CHECK, e),
        };
        let report = match dixon_table(&g) {
            Ok(t) => VanishReport::from_table(&g, &t),
            Err(e) => return error_row(CHECK, e),
        };
        let oracle_on_v4: Vec<Elem> = v4.elements().iter().copied().filter(|&x| report.is_vanishing(x)).collect();
        // With V ∩ V_4 = ∅ every element of V_4 is nonvanishing; the remaining
        // count comes from the oracle.
        let bound = Rational::new((g.order() - v4.order()) as i64, g.order() as i64);
        let verdict = classify_theorem_a(&g);
        let c = verdict.witness("C").map(|c| c.order());
        let ok = v4.order() == 4
            && fast.is_empty()
            && oracle_on_v4.is_empty()
            && report.proportion == Rational::new(5, 6)
            && report.proportion == bound
            && verdict.outcome.case() == Some(Case::B2)
            && c == Some(2);
        row(
            CHECK,
            ok,
            format!(
                "fast_path_V∩V4={},oracle_V∩V4={},P={},verdict={},|C|={}",
                fast.len(),
                oracle_on_v4.len(),
                report.proportion,
                verdict.outcome.case().map_or("none", |c| c.label()),
                c.unwrap_or(0)
            ),
            "fast_path_V∩V4=0,oracle_V∩V4=0,P=5/6,verdict=b2,|C|=2".into(),
            "derived",
        )
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("|")
}

fn value_set_check(corpus: &[Evaluated]) -> CheckRow {
    let values = value_set();
    let mut tally = Tally::default();
    let mut below = 0;
    for ev in corpus {
        if ev.p() < threshold() {
            below += 1;
            tally.record(values.contains(&ev.p()), || format!("{}:P={}", ev.name(), ev.p()));
        }
    }
    let mut r = tally.into_row("value_set", "theory");
    r.observed = format!("corpus={},below={below},{}", corpus.len(), r.observed);
    r
}

fn classifier_oracle(corpus: &[Evaluated]) -> CheckRow {
    let mut tally = Tally::default();
    let mut with_expectation = 0;
    for ev in corpus {
        let p = ev.p();
        let out = &ev.verdict.outcome;
        let ok = out.is_below() == (p < threshold()) && out.predicted_p().is_none_or(|q| q == p);
        tally.record(ok, || format!("{}:P={p}:verdict={out}", ev.name()));
        if let Some(exp) = &ev.entry.expected {
            with_expectation += 1;
            let ok = exp.outcome == *out && exp.proportion.is_none_or(|q| q == p);
            tally.record(ok, || format!("{}:expected={}:verdict={out}:P={p}", ev.name(), exp.outcome));
        }
    }
    let mut r = tally.into_row("classifier_oracle", "derived");
    r.observed = format!("{},builder_expectations={with_expectation}", r.observed);
    r
}

/// Exhaustive check of the six-term classifier for `U_{2^n}`, `n ≤ max_n`,
/// against direct evaluation with [`Cyclo`] arithmetic.
pub fn sixsum_exhaustive(max_n: u32) -> CheckRow {
    let mut tally = Tally::default();
    for n in 1..=max_n {
        let m = 1u64 << n;
        let roots: Vec<Cyclo> = (0..m).map(|k| Cyclo::root_of_unity(m, k as i64).unwrap()).collect();
        let results: Vec<(u64, bool, String)> = (0..m * m * m * m)
            .into_par_iter()
            .map(|code| {
                let (e1, e2, h1, h2) = (code % m, (code / m) % m, (code / m / m) % m, code / m / m / m);
                let eps = [e1, e2, (2 * m - e1 - e2) % m];
                let eta = [h1, h2, (2 * m - h1 - h2) % m];
                let mut sigma = Cyclo::zero(m);
                for &k in eps.iter().chain(&eta) {
                    sigma = &sigma + &roots[k as usize];
                }
                match six_sum_classifier_exponents(n, eps, eta) {
                    Ok(v) => (code, v.claims_zero() == sigma.is_zero(), format!("n={n}:eps={eps:?}:eta={eta:?}:{v:?}")),
                    Err(e) => (code, false, format!("n={n}:{e}")),
                }
            })
            .collect();
        for (_, ok, what) in results {
            tally.record(ok, || what);
        }
    }
    tally.into_row("sixsum_exhaustive", "theory")
}

/// For each length and order, whenever some multiset of `m`-th roots of
/// unity of that length sums to zero, the necessary condition must hold.
pub fn vanishing_sum_soundness(max_terms: u64, orders: &[u64]) -> CheckRow {
    fn exists(m: u64, remaining: u64, start: usize, counts: &mut Vec<i64>) -> bool {
        if remaining == 0 {
            return root_sum_is_zero(m, counts);
        }
        (start..m as usize).any(|k| {
            counts[k] += 1;
            let found = exists(m, remaining - 1, k, counts);
            counts[k] -= 1;
            found
        })
    }
    let mut tally = Tally::default();
    let mut vanishing_pairs = 0;
    for &m in orders {
        for n in 1..=max_terms {
            let found = exists(m, n, 0, &mut vec![0; m as usize]);
            if found {
                vanishing_pairs += 1;
            }
            tally.record(!found || vanishing_sum_possible(n, m), || format!("n={n}:m={m}"));
        }
    }
    let mut r = tally.into_row("vanishing_sum_soundness", "theory");
    r.observed = format!("{},pairs_with_vanishing_sums={vanishing_pairs}", r.observed);
    r
}

fn random_two_group(rng: &mut ChaCha8Rng) -> AbelianGroup {
    let mut total = rng.gen_range(1..=8u32);
    let mut factors = Vec::new();
    while total > 0 {
        let e = rng.gen_range(1..=total);
        factors.push(1u64 << e);
        total -= e;
    }
    AbelianGroup::new(factors).expect("valid factors")
}

fn random_element(a: &AbelianGroup, rng: &mut ChaCha8Rng) -> AbElement {
    a.element_at(rng.gen_range(0..a.order() as usize))
}

/// A random automorphism: a product of elementary transvections.
fn random_automorphism(a: &AbelianGroup, rng: &mut ChaCha8Rng) -> AbHom {
    let r = a.num_factors();
    let mut g = AbHom::identity(a);
    if r < 2 {
        return g;
    }
    for _ in 0..8 {
        let i = rng.gen_range(0..r);
        let j = rng.gen_range(0..r);
        if i == j {
            continue;
        }
        let c = rng.gen_range(1..a.factors()[j] as i64);
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|k| {
                let mut row = vec![0; r];
                row[k] = 1;
                if k == i {
                    row[j] = c;
                }
                row
            })
            .collect();
        if let Ok(t) = AbHom::from_matrix(a, &rows) {
            g = g.compose(&t).expect("same group");
        }
    }
    g
}

/// A random involutory automorphism `y = g⁻¹ s g`.
fn random_involution(a: &AbelianGroup, rng: &mut ChaCha8Rng) -> AbHom {
    let r = a.num_factors();
    let d = a.factors();
    let unit = |k: usize| -> Vec<i64> {
        let mut v = vec![0; r];
        v[k] = 1;
        v
    };
    let base: Vec<Vec<i64>> = match rng.gen_range(0..4) {
        0 => (0..r).map(|k| {
            let mut v = unit(k);
            v[k] = -1;
            v
        }).collect(),
        1 => {
            let i = rng.gen_range(0..r);
            let partner = (0..r).find(|&j| j != i && d[j] == d[i]);
            (0..r)
                .map(|k| match partner {
                    Some(j) if k == i => unit(j),
                    Some(j) if k == j => unit(i),
                    _ => unit(k),
                })
                .collect()
        }
        2 if r >= 2 => {
            let i = rng.gen_range(0..r);
            let j = (i + 1 + rng.gen_range(0..r - 1)) % r;
            (0..r)
                .map(|k| {
                    let mut v = unit(k);
                    if k == i {
                        v[j] = d[j] as i64 / 2;
                    }
                    v
                })
                .collect()
        }
        _ => {
            let i = rng.gen_range(0..r);
            (0..r)
                .map(|k| {
                    let mut v = unit(k);
                    if k == i && d[i] >= 4 {
                        v[k] = 1 + d[i] as i64 / 2;
                    }
                    v
                })
                .collect()
        }
    };
    let s = AbHom::from_matrix(a, &base).expect("base involutions are endomorphisms");
    let g = random_automorphism(a, rng);
    let g_inv = g.inverse().expect("automorphism");
    g_inv.compose(&s).and_then(|h| h.compose(&g)).expect("same group")
}

/// `B^⊥` by brute force over all characters.
fn brute_perp(b: &AbSubgroup) -> Vec<AbElement> {
    let a = b.parent();
    let gens = b.generators();
    a.elements()
        .filter(|alpha| {
            let chi = DualCharacter {
                group: a.clone(),
                coords: alpha.clone(),
            };
            gens.iter().all(|g| chi.value_exponent(g) == 0)
        })
        .collect()
}

fn same_subgroup(x: &AbSubgroup, y: &AbSubgroup) -> bool {
    x.is_subgroup_of(y) && y.is_subgroup_of(x)
}

/// Double-perp and order identities over random subgroups, and the
/// commutator/centralizer duality over random involutions.
pub fn duality(seed: u64, subgroups: usize, pairs: usize) -> CheckRow {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd0a1);
    let mut tally = Tally::default();
    for _ in 0..subgroups {
        let a = random_two_group(&mut rng);
        let k = rng.gen_range(0..=3);
        let gens: Vec<AbElement> = (0..k).map(|_| random_element(&a, &mut rng)).collect();
        let b = AbSubgroup::generated(&a, &gens).expect("elements of A");
        let perp = b.perp();
        let brute = brute_perp(&b);
        let ok = perp.order() as usize == brute.len()
            && brute.iter().all(|x| perp.contains(x))
            && same_subgroup(&perp.perp_dual(), &b)
            && b.order() * perp.order() == a.order();
        tally.record(ok, || format!("A={a}:B={:?}", gens.iter().map(|g| a.format_element(g)).collect::<Vec<_>>()));
    }
    for _ in 0..pairs {
        let a = random_two_group(&mut rng);
        let y = random_involution(&a, &mut rng);
        let ok = (|| -> Result<bool> {
            let (comm, _) = commutator_map(&a, &y)?;
            let dual_y = y.dual_action()?;
            let (dual_comm, dual_fixed) = commutator_map(&a, &dual_y)?;
            Ok(y.compose(&y)? == AbHom::identity(&a)
                && same_subgroup(&comm.perp(), &dual_fixed)
                && dual_comm.isomorphism_type() == comm.isomorphism_type())
        })();
        tally.record(ok.unwrap_or(false), || format!("A={a}:y={:?}", y.images()));
    }
    tally.into_row("duality", "theory")
}

/// The characters of `G/N` as row indices.
fn quotient_characters(table: &CharacterTable, n_classes: &[bool]) -> Vec<usize> {
    (0..table.num_characters())
        .filter(|&i| {
            let ker = table.kernel_classes(i);
            n_classes.iter().zip(&ker).all(|(&inn, &k)| !inn || k)
        })
        .collect()
}

const NORMAL_CAP: usize = 256;
const PACK_ORDER: usize = 500;

fn property_pack(corpus: &[Evaluated]) -> CheckRow {
    let results: Vec<(Vec<(bool, String)>, bool)> = corpus.par_iter().map(property_pack_one).collect();
    let mut tally = Tally::default();
    let mut skipped = 0;
    for (items, capped) in results {
        if capped {
            skipped += 1;
        }
        for (ok, what) in items {
            tally.record(ok, || what);
        }
    }
    let mut r = tally.into_row("property_pack", "theory");
    r.observed = format!("{},normal_lattice_over_cap={skipped}", r.observed);
    r
}

/// Runs every property on one group: returns `(outcome, label)` pairs and
/// whether the normal-subgroup enumeration hit its cap.
fn property_pack_one(ev: &Evaluated) -> (Vec<(bool, String)>, bool) {
    let g = &ev.entry.group;
    let name = ev.name();
    let mut out = Vec::new();
    let v = &ev.report;

    // central translation
    let z = g.center();
    let translation = z.generators().iter().all(|&c| (0..g.order() as Elem).all(|x| v.is_vanishing(x) == v.is_vanishing(g.mul(x, c))));
    out.push((translation, format!("central_translation:{name}")));

    // Sylow centre meets O_p inside N(G)
    for p in prime_divisors(g.order() as u64) {
        let sylow = g.sylow(p);
        let zp = g.intersection(&sylow, &g.centralizer(sylow.generators()));
        let core = g.intersection(&zp, &g.o_p(p));
        let ok = core.elements().iter().all(|&x| !v.is_vanishing(x));
        out.push((ok, format!("sylow_center_core:p={p}:{name}")));
    }

    // below the threshold: N(G) abelian normal of index ≤ 6, odd Sylows abelian
    if ev.p() < threshold() {
        let n = g.try_subgroup(&v.nonvanishing);
        let ok = match n {
            Ok(n) => {
                n.order() == v.nonvanishing.len()
                    && g.is_normal(&n)
                    && g.order() / n.order() <= 6
                    && n.generators().iter().all(|&a| n.generators().iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            }
            Err(_) => false,
        };
        out.push((ok, format!("nonvanishing_abelian_normal:{name}")));
        for p in prime_divisors(g.order() as u64).into_iter().filter(|&p| p != 2) {
            let s = g.sylow(p);
            let abelian = s.generators().iter().all(|&a| s.generators().iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
            out.push((abelian, format!("odd_sylow_abelian:p={p}:{name}")));
        }
    }

    // quotients: monotonicity and direct-factor behaviour
    let mut capped = false;
    if let Some(table) = &ev.table {
        if g.order() <= PACK_ORDER {
            match normal_subgroups(table, NORMAL_CAP) {
                None => capped = true,
                Some(normals) => {
                    let cls = &table.classes;
                    let members = |flags: &[bool]| -> Vec<Elem> {
                        (0..g.order() as Elem).filter(|&x| flags[cls.class_of[x as usize] as usize]).collect()
                    };
                    let quotient_flags: Vec<Vec<bool>> = normals
                        .iter()
                        .map(|nf| table.vanishing_classes_among(&quotient_characters(table, nf)))
                        .collect();
                    for (nf, qf) in normals.iter().zip(&quotient_flags) {
                        let count: usize = (0..cls.len()).filter(|&t| qf[t]).map(|t| cls.sizes[t]).sum();
                        let pq = Rational::new(count as i64, g.order() as i64);
                        out.push((pq <= ev.p(), format!("quotient_monotonicity:{name}:|N|={}", members(nf).len())));
                    }
                    for (i, af) in normals.iter().enumerate() {
                        for (j, bf) in normals.iter().enumerate() {
                            let trivial_meet = af.iter().zip(bf).skip(1).all(|(&x, &y)| !(x && y));
                            let nontrivial = af.iter().skip(1).any(|&x| x) && bf.iter().skip(1).any(|&x| x);
                            if i == j || !trivial_meet || !nontrivial {
                                continue;
                            }
                            let qf = &quotient_flags[j];
                            let ok = (0..cls.len())
                                .filter(|&t| af[t])
                                .all(|t| ev.report.is_vanishing(cls.reps[t]) == qf[t]);
                            out.push((ok, format!("direct_factor_quotient:{name}:A={i}:B={j}")));
                        }
                    }
                }
            }
        }
    }
    (out, capped)
}

fn endpoints(corpus: &[Evaluated]) -> CheckRow {
    let half = Rational::new(1, 2);
    let mut tally = Tally::default();
    let (mut below_half, mut at_half) = (0, 0);
    for ev in corpus {
        let g = &ev.entry.group;
        if ev.p() < half {
            below_half += 1;
            tally.record(g.is_abelian(), || format!("{}:P={}", ev.name(), ev.p()));
        } else if ev.p() == half {
            at_half += 1;
            let qf = g.is_quasi_frobenius();
            let ok = qf.holds && g.order() / g.fitting().order() == 2;
            tally.record(ok, || format!("{}:{}", ev.name(), qf.reason));
        }
    }
    let mut r = tally.into_row("endpoints", "theory");
    r.observed = format!("{},below_half={below_half},at_half={at_half}", r.observed);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        let c = Campaign::new(CampaignConfig::default());
        for name in ["s4_end_to_end", "b4_1_pair"] {
            let r = c.run_one(name);
            assert_eq!(r.status, Status::Pass, "{r}");
        }
        let r = sixsum_exhaustive(3);
        assert_eq!(r.status, Status::Pass, "{r}");
        let r = duality(1, 50, 20);
        assert_eq!(r.status, Status::Pass, "{r}");
    }

    #[test]
    fn aliases_resolve() {
        assert_eq!(check_name("sixsum"), Some("sixsum_exhaustive"));
        assert_eq!(check_name("a7_proportion"), Some("a7_proportion"));
        assert_eq!(check_name("nope"), None);
    }

    #[test]
    fn rows_have_no_spaces_in_values() {
        let r = CheckRow {
            check: "x",
            status: Status::Fail,
            observed: "a b".into(),
            expected: "c".into(),
            tag: "derived",
            detail: Some("spec=A(3) seed=1".into()),
        };
        assert_eq!(r.to_string(), "check=x status=fail observed=a,b expected=c tag=derived detail=spec=A(3),seed=1");
    }
}
