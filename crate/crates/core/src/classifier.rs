//! Structural classification of groups below `𝔞 = P(A_7) = 1067/1260`.
//!
//! [`classify_theorem_a`] decides, from subgroup structure alone, whether a
//! group has `P(G) < 𝔞` and which shape it has:
//!
//! * case (a): `G` is an A-group with `m = [G : F(G)] ≤ 6` (with an extra
//!   condition on `F(G)/Z(G)` when `m = 5`);
//! * case (b): the Sylow 2-subgroup `Q` is nonabelian and an abelian normal
//!   subgroup `A` of index 4 or 6 exists, in one of the shapes (b1), (b2),
//!   (b3), (b4.1) or (b4.2).
//!
//! The predicted proportion is always `(m − 1)/m` where `m` is the index
//! of the witnessing subgroup.
//!
//! Modules are written additively, and `g` acts on an abelian normal
//! subgroup by conjugation `a ↦ g⁻¹ag`.

use std::collections::BTreeSet;
use std::fmt;

use crate::abelian::{commutator_map, embeds_in_c4_x_c2k, AbHom, AbSubgroup, AbelianGroup};
use crate::arith::{lcm, prime_divisors};
use crate::character::Rational;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// The shape of a group below the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// A-group with `[G : F(G)] = m`.
    A(u32),
    B1,
    B2,
    B3,
    B4_1,
    B4_2,
}

impl Case {
    pub fn label(&self) -> &'static str {
        match self {
            Case::A(_) => "a",
            Case::B1 => "b1",
            Case::B2 => "b2",
            Case::B3 => "b3",
            Case::B4_1 => "b4.1",
            Case::B4_2 => "b4.2",
        }
    }

    /// The index `m` of the witnessing subgroup.
    pub fn index(&self) -> u32 {
        match self {
            Case::A(m) => *m,
            Case::B1 => 4,
            _ => 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Below { case: Case, predicted_p: Rational },
    AtOrAbove,
}

impl Outcome {
    pub fn is_below(&self) -> bool {
        matches!(self, Outcome::Below { .. })
    }

    pub fn predicted_p(&self) -> Option<Rational> {
        match self {
            Outcome::Below { predicted_p, .. } => Some(*predicted_p),
            Outcome::AtOrAbove => None,
        }
    }

    pub fn case(&self) -> Option<Case> {
        match self {
            Outcome::Below { case, .. } => Some(*case),
            Outcome::AtOrAbove => None,
        }
    }

    fn below(case: Case) -> Outcome {
        let m = case.index() as i64;
        Outcome::Below {
            case,
            predicted_p: Rational::new(m - 1, m),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Below { case, predicted_p } => write!(
                f,
                "Below case={} m={} p={}/{}",
                case.label(),
                case.index(),
                predicted_p.numer(),
                predicted_p.denom()
            ),
            Outcome::AtOrAbove => write!(f, "AtOrAbove"),
        }
    }
}

/// Named subgroups supporting a verdict.
pub type Witnesses = Vec<(String, Subgroup)>;

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witnesses: Witnesses,
    /// Human-readable reasons (which condition failed or held).
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn witness(&self, name: &str) -> Option<&Subgroup> {
        self.witnesses.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.outcome)
    }
}

// ----- module-level checks --------------------------------------------------

fn fixed_points(x: &AbHom) -> Result<AbSubgroup> {
    Ok(x.combine(&AbHom::identity(x.source()), -1)?.kernel())
}

fn image_of(a: &AbelianGroup, sub: &AbSubgroup, x: &AbHom) -> Result<AbSubgroup> {
    let gens: Vec<_> = sub.generators().iter().map(|g| x.apply(g)).collect();
    AbSubgroup::generated(a, &gens)
}

fn check_order(h: &AbHom, order: u64, what: &str) -> Result<()> {
    if !h.is_automorphism() || h.automorphism_order()? != order {
        return Err(Error::precondition(format!("{what} must act as an automorphism of order {order}")));
    }
    Ok(())
}

fn check_two_group(a: &AbelianGroup) -> Result<()> {
    if a.order() > 1 && a.prime() != Some(2) {
        return Err(Error::precondition(format!("{a} is not a 2-group")));
    }
    Ok(())
}

/// `x` of order 3 acting without nonzero fixed points, `y` of order 2.
fn check_common(a: &AbelianGroup, x: &AbHom, y: &AbHom) -> Result<()> {
    check_two_group(a)?;
    if x.source() != a || y.source() != a {
        return Err(Error::precondition("x and y must act on A"));
    }
    check_order(x, 3, "x")?;
    check_order(y, 2, "y")?;
    if fixed_points(x)?.order() != 1 {
        return Err(Error::precondition("x has nonzero fixed points on A (C_A(P) ≠ 1)"));
    }
    Ok(())
}

/// The `S_3` case: with `x` of order 3 acting fixed-point-freely and `y` an
/// involution inverting `x`, decides whether `A = C_A(y) × C_A(y)^x` with
/// `1 < C_A(y)` embedding in `C_4 × (C_2)^k`.
pub fn check_s3_case(a: &AbelianGroup, x: &AbHom, y: &AbHom) -> Result<bool> {
    check_common(a, x, y)?;
    let yxy = y.compose(x)?.compose(y)?;
    if yxy != x.power(2) {
        return Err(Error::precondition("y does not invert x, so ⟨x, y⟩ is not S_3"));
    }
    let (_, c) = commutator_map(a, y)?;
    let cx = image_of(a, &c, x)?;
    Ok(c.order() > 1
        && c.intersection(&cx).order() == 1
        && c.order() * c.order() == a.order()
        && embeds_in_c4_x_c2k(&c))
}

/// Which `C_6` shape a module has, and the power of `x` that witnessed it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct C6Shape {
    pub case: Case,
    /// 1 when `x` itself works, 2 when `x⁻¹ = x²` does.
    pub x_power: u32,
    /// `exp(A)`.
    pub exponent: u64,
}

/// The `C_6` case: `x` of order 3 fixed-point-free, `y` an involution
/// commuting with `x`. Returns
///
/// * `B3` when `[A, y, y] = 0`;
/// * `B4_1` when `exp(A) = 8` and `a + a^y = 4·a^x` for all `a`;
/// * `B4_2` when `exp(A) = 2^n ≥ 8` and `2^{n−1}a = (2(a^y − a))^x`;
///
/// trying `x` and `x⁻¹` for the last two, and `None` otherwise.
pub fn check_c6_case(a: &AbelianGroup, x: &AbHom, y: &AbHom) -> Result<Option<C6Shape>> {
    check_common(a, x, y)?;
    if x.compose(y)? != y.compose(x)? {
        return Err(Error::precondition("x and y do not commute, so ⟨x, y⟩ is not C_6"));
    }
    let e = a.exponent();
    let id = AbHom::identity(a);
    let y_minus = y.combine(&id, -1)?;
    let gens: Vec<_> = (0..a.num_factors()).map(|i| a.generator(i)).collect();
    if gens.iter().all(|g| y_minus.apply(&y_minus.apply(g)) == a.zero()) {
        return Ok(Some(C6Shape {
            case: Case::B3,
            x_power: 1,
            exponent: e,
        }));
    }
    for x_power in [1u32, 2] {
        let xx = x.power(x_power as u64);
        if e == 8
            && gens
                .iter()
                .all(|g| a.add(g, &y.apply(g)) == a.scale(4, &xx.apply(g)))
        {
            return Ok(Some(C6Shape {
                case: Case::B4_1,
                x_power,
                exponent: e,
            }));
        }
    }
    for x_power in [1u32, 2] {
        let xx = x.power(x_power as u64);
        if e >= 8
            && gens
                .iter()
                .all(|g| a.scale(e as i64 / 2, g) == xx.apply(&a.scale(2, &y_minus.apply(g))))
        {
            return Ok(Some(C6Shape {
                case: Case::B4_2,
                x_power,
                exponent: e,
            }));
        }
    }
    Ok(None)
}

// ----- group-level helpers ------------------------------------------------------

/// The elements of `h` of `p`-power order (the Sylow `p`-subgroup of an
/// abelian or nilpotent `h`).
fn p_part_of(g: &FiniteGroup, h: &Subgroup, p: u64) -> Subgroup {
    let elems: Vec<Elem> = h
        .elements()
        .iter()
        .copied()
        .filter(|&x| prime_divisors(g.element_order(x) as u64).iter().all(|&q| q == p))
        .collect();
    g.subgroup_from_elements(&elems)
}

fn is_abelian_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    let gens = h.generators();
    gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

fn centralizer_in(g: &FiniteGroup, h: &Subgroup, of: &Subgroup) -> Subgroup {
    let c = g.centralizer(of.generators());
    g.intersection(h, &c)
}

/// A module `M ⊴ G` (abelian) with the actions of chosen elements.
struct ModuleData {
    group: AbelianGroup,
    view: crate::group::AbelianView,
}

impl ModuleData {
    fn new(g: &FiniteGroup, m: &Subgroup) -> Result<Self> {
        let view = g.abelian_view(m)?;
        Ok(ModuleData {
            group: view.group.clone(),
            view,
        })
    }

    fn action(&self, g: &FiniteGroup, elem: Elem) -> Result<AbHom> {
        let images = self
            .view
            .basis
            .iter()
            .map(|&b| {
                self.view
                    .coords(g.conj(b, elem))
                    .cloned()
                    .ok_or_else(|| Error::Consistency("conjugation left the module".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        AbHom::new(self.group.clone(), self.group.clone(), images)
    }

    /// Distinct actions of the elements of `set`.
    fn distinct_actions(&self, g: &FiniteGroup, set: &[Elem]) -> Result<Vec<AbHom>> {
        let mut out: Vec<AbHom> = Vec::new();
        for &e in set {
            let h = self.action(g, e)?;
            if !out.contains(&h) {
                out.push(h);
            }
        }
        Ok(out)
    }
}

// ----- the (b) cases ---------------------------------------------------------------

/// Case (b1): `Q` nonabelian and `A = Z(Q) × K` abelian normal of index 4,
/// where `K` is the normal 2-complement.
pub fn check_b1(g: &FiniteGroup) -> Option<Witnesses> {
    let q = g.sylow(2);
    if is_abelian_subgroup(g, &q) {
        return None;
    }
    let k = g.normal_p_complement(2)?;
    let zq = centralizer_in(g, &q, &q);
    let a = g.join(&zq, &k);
    if a.order() * 4 != g.order() || a.order() != zq.order() * k.order() {
        return None;
    }
    if !is_abelian_subgroup(g, &a) || !g.is_normal(&a) {
        return None;
    }
    Some(vec![
        ("A".into(), a),
        ("Q".into(), q),
        ("Z(Q)".into(), zq),
        ("K".into(), k),
    ])
}

/// Case (b2): `A = F(G)` abelian with `G/A ≅ S_3`, and `[O_2(A), P] = C × C^x`
/// with `C = C_{[O_2(A),P]}(Q)` satisfying `1 < C ≲ C_4 × (C_2)^k`.
pub fn check_b2(g: &FiniteGroup) -> Option<Witnesses> {
    let q = g.sylow(2);
    if is_abelian_subgroup(g, &q) {
        return None;
    }
    let a = g.fitting();
    if a.order() * 6 != g.order() || !is_abelian_subgroup(g, &a) {
        return None;
    }
    let (top, _) = g.quotient(&a).ok()?;
    if top.is_abelian() {
        return None;
    }
    let o2 = p_part_of(g, &a, 2);
    let p = g.sylow(3);
    let fixed = centralizer_in(g, &o2, &p);
    if !fixed.is_subset_of(&g.center()) {
        return None;
    }
    let m = g.commutator_subgroup(&o2, &p);
    let c = centralizer_in(g, &m, &q);
    if c.order() <= 1 || c.order() * c.order() != m.order() {
        return None;
    }
    let view = g.abelian_view(&c).ok()?;
    let whole = AbSubgroup::whole(&view.group);
    if !embeds_in_c4_x_c2k(&whole) {
        return None;
    }
    let x = p.elements().iter().copied().find(|&x| {
        !a.contains(x) && {
            let cx = g.conjugate_subgroup(&c, x);
            g.intersection(&c, &cx).order() == 1
        }
    })?;
    let x_sub = g.closure(&[x]);
    Some(vec![
        ("A".into(), a),
        ("Q".into(), q),
        ("P".into(), p),
        ("M".into(), m),
        ("C".into(), c),
        ("x".into(), x_sub),
    ])
}

/// Abelian normal subgroups `A` with `G/A ≅ C_6`: kernels of the
/// order-6 linear characters of `G/G'` that are abelian.
pub fn c6_candidates(g: &FiniteGroup) -> Vec<Subgroup> {
    let derived = g.derived_subgroup();
    if !g.order().is_multiple_of(derived.order() * 6) {
        return Vec::new();
    }
    let Ok((ab, proj)) = g.quotient(&derived) else {
        return Vec::new();
    };
    let Ok(view) = ab.abelian_view(&ab.whole()) else {
        return Vec::new();
    };
    let factors = view.group.factors().to_vec();
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut out = Vec::new();
    for chi in view.group.elements() {
        let order = chi
            .coords
            .iter()
            .zip(&factors)
            .fold(1u64, |acc, (&c, &d)| lcm(acc, d / crate::arith::gcd(c as u64, d)));
        if order != 6 {
            continue;
        }
        let character = crate::abelian::DualCharacter {
            group: view.group.clone(),
            coords: chi.clone(),
        };
        let kernel: Vec<Elem> = (0..ab.order() as Elem)
            .filter(|&x| character.value_exponent(view.coords(x).unwrap()) == 0)
            .collect();
        let elems: Vec<Elem> = (0..g.order() as Elem)
            .filter(|&x| kernel.binary_search(&proj[x as usize]).is_ok())
            .collect();
        if seen.insert(elems.clone()) {
            let a = g.subgroup_from_elements(&elems);
            if is_abelian_subgroup(g, &a) {
                out.push(a);
            }
        }
    }
    out
}

/// Cases (b3), (b4.1), (b4.2) for a given abelian normal `A` with
/// `G/A ≅ C_6`. Every `y ∈ Q − A` and both classes `x, x⁻¹` of `P − A` are
/// examined; the shape must be the same for every `y`.
pub fn check_c6_subgroup(g: &FiniteGroup, a: &Subgroup) -> Option<(C6Shape, Witnesses)> {
    let q = g.sylow(2);
    let p = g.sylow(3);
    let o2 = p_part_of(g, a, 2);
    let fixed = centralizer_in(g, &o2, &p);
    if !fixed.is_subset_of(&g.center()) {
        return None;
    }
    let m = g.commutator_subgroup(&o2, &p);
    let witnesses = vec![
        ("A".into(), a.clone()),
        ("Q".into(), q.clone()),
        ("P".into(), p.clone()),
        ("M".into(), m.clone()),
    ];
    if m.order() == 1 {
        let shape = C6Shape {
            case: Case::B3,
            x_power: 1,
            exponent: 1,
        };
        return Some((shape, witnesses));
    }
    let module = ModuleData::new(g, &m).ok()?;
    let ys: Vec<Elem> = q.elements().iter().copied().filter(|&y| !a.contains(y)).collect();
    let xs: Vec<Elem> = p.elements().iter().copied().filter(|&x| !a.contains(x)).collect();
    let y_actions = module.distinct_actions(g, &ys).ok()?;
    let x_action = module.action(g, *xs.first()?).ok()?;
    let mut found: Option<C6Shape> = None;
    for y in &y_actions {
        let shape = check_c6_case(&module.group, &x_action, y).ok()??;
        match found {
            None => found = Some(shape),
            Some(c) if c.case == shape.case => {}
            Some(_) => return None,
        }
    }
    found.map(|c| (c, witnesses))
}

/// Decides `P(G) < 𝔞` structurally and reports the shape.
pub fn classify_theorem_a(g: &FiniteGroup) -> Verdict {
    let f = g.fitting();
    let m = (g.order() / f.order()) as u32;
    let mut notes = Vec::new();
    if g.is_a_group() {
        if m > 6 {
            notes.push(format!("A-group with [G:F(G)] = {m} > 6"));
            return Verdict {
                outcome: Outcome::AtOrAbove,
                witnesses: vec![("F".into(), f)],
                notes,
            };
        }
        if m == 5 {
            let z = g.center();
            let primes = prime_divisors((f.order() / z.order()) as u64);
            let hits = primes.iter().filter(|&&p| p == 2 || p == 3).count();
            if hits > 1 {
                notes.push("m = 5 and both 2 and 3 divide |F(G)/Z(G)|".into());
                return Verdict {
                    outcome: Outcome::AtOrAbove,
                    witnesses: vec![("F".into(), f), ("Z".into(), z)],
                    notes,
                };
            }
        }
        notes.push(format!("A-group with [G:F(G)] = {m}"));
        return Verdict {
            outcome: Outcome::below(Case::A(m)),
            witnesses: vec![("F".into(), f)],
            notes,
        };
    }
    let q = g.sylow(2);
    if is_abelian_subgroup(g, &q) {
        notes.push("not an A-group, yet the Sylow 2-subgroup is abelian".into());
        return Verdict {
            outcome: Outcome::AtOrAbove,
            witnesses: vec![("Q".into(), q)],
            notes,
        };
    }
    if let Some(w) = check_b1(g) {
        notes.push("O_2(A) = Z(Q) with [G:A] = 4".into());
        return Verdict {
            outcome: Outcome::below(Case::B1),
            witnesses: w,
            notes,
        };
    }
    if g.order().is_multiple_of(6) {
        if let Some(w) = check_b2(g) {
            notes.push("G/F(G) ≅ S_3 with [O_2(A),P] = C × C^x".into());
            return Verdict {
                outcome: Outcome::below(Case::B2),
                witnesses: w,
                notes,
            };
        }
        for a in c6_candidates(g) {
            if let Some((shape, w)) = check_c6_subgroup(g, &a) {
                notes.push(format!("G/A ≅ C_6 with shape {}", shape.case.label()));
                if matches!(shape.case, Case::B4_1 | Case::B4_2) {
                    let which = if shape.x_power == 1 { "x" } else { "x^-1" };
                    notes.push(format!("the relation holds for {which}, exp(M) = {}", shape.exponent));
                }
                return Verdict {
                    outcome: Outcome::below(shape.case),
                    witnesses: w,
                    notes,
                };
            }
        }
    }
    notes.push("no case of the classification applies".into());
    Verdict {
        outcome: Outcome::AtOrAbove,
        witnesses: Vec::new(),
        notes,
    }
}

/// All (b)-shapes that verify, for exclusivity checks.
pub fn all_b_shapes(g: &FiniteGroup) -> Vec<Case> {
    let mut out = Vec::new();
    if check_b1(g).is_some() {
        out.push(Case::B1);
    }
    if g.order().is_multiple_of(6) {
        if check_b2(g).is_some() {
            out.push(Case::B2);
        }
        for a in c6_candidates(g) {
            if let Some((shape, _)) = check_c6_subgroup(g, &a) {
                if !out.contains(&shape.case) {
                    out.push(shape.case);
                }
            }
        }
    }
    out
}

// ----- A-groups ------------------------------------------------------------------

/// The cases of the description of A-groups with `1 < [G:F(G)] ≤ 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AGroupCase {
    /// Quasi-Frobenius with abelian kernel and `G/F(G) ≅ C_m`.
    One,
    /// `m = 4` and `G/F(G) ≅ C_2 × C_2`.
    Two,
    /// `m = 6`, Hall `{2,3}`-subgroup `H` with `[H : F(H)] ∈ {2, 3}`.
    Three,
    /// `m = 6` and `H/F(H) ≅ C_6`.
    FourOne,
    /// `m = 6` and `H/F(H) ≅ S_3`.
    FourTwo,
}

impl AGroupCase {
    pub fn label(&self) -> &'static str {
        match self {
            AGroupCase::One => "1",
            AGroupCase::Two => "2",
            AGroupCase::Three => "3",
            AGroupCase::FourOne => "4.1",
            AGroupCase::FourTwo => "4.2",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AGroupClassification {
    pub case: AGroupCase,
    pub m: u32,
    pub witnesses: Witnesses,
}

fn has_element_of_order(g: &FiniteGroup, n: u32) -> bool {
    (0..g.order() as Elem).any(|x| g.element_order(x) == n)
}

fn sub_quasi_frobenius(g: &FiniteGroup, h: &Subgroup) -> bool {
    let (sub, _) = g.subgroup_as_group(h, "sub");
    sub.is_quasi_frobenius().holds
}

/// Which case of the A-group description applies.
pub fn classify_a_group(g: &FiniteGroup) -> Result<AGroupClassification> {
    let f = g.fitting();
    let m = (g.order() / f.order()) as u32;
    if !g.is_a_group() || m <= 1 || m > 6 {
        return Err(Error::domain(format!(
            "needs an A-group with 1 < [G:F(G)] ≤ 6 (got index {m})"
        )));
    }
    let (top, _) = g.quotient(&f)?;
    let mut witnesses: Witnesses = vec![("F".into(), f.clone())];
    if has_element_of_order(&top, m) && g.is_quasi_frobenius().holds {
        return Ok(AGroupClassification {
            case: AGroupCase::One,
            m,
            witnesses,
        });
    }
    let pi = prime_divisors(m as u64);
    let h = g
        .hall_subgroup(&pi)
        .ok_or_else(|| Error::Consistency("no Hall subgroup for π(m)".into()))?;
    witnesses.push(("H".into(), h.clone()));
    let (hg, emb) = g.subgroup_as_group(&h, "H");
    if hg.is_abelian() {
        if m == 4 && !has_element_of_order(&top, 4) {
            return Ok(AGroupClassification {
                case: AGroupCase::Two,
                m,
                witnesses,
            });
        }
        return Err(Error::Consistency(
            "abelian Hall subgroup with cyclic G/F(G), but G is not quasi-Frobenius".into(),
        ));
    }
    if m != 6 {
        return Err(Error::Consistency("nonabelian Hall π(m)-subgroup with m ≠ 6".into()));
    }
    let k = g
        .normal_hall_complement(&pi)
        .ok_or_else(|| Error::Consistency("no normal π(m)-complement".into()))?;
    witnesses.push(("K".into(), k.clone()));
    let fh_local = hg.fitting();
    let fh = g.subgroup_from_elements(&fh_local.elements().iter().map(|&x| emb[x as usize]).collect::<Vec<_>>());
    witnesses.push(("F(H)".into(), fh.clone()));
    let n = h.order() / fh.order();
    match n {
        2 | 3 => {
            if !hg.is_quasi_frobenius().holds {
                return Err(Error::Consistency("H is not quasi-Frobenius".into()));
            }
            let t = g.join(&k, &fh);
            if !sub_quasi_frobenius(g, &t) {
                return Err(Error::Consistency("T = K F(H) is not quasi-Frobenius".into()));
            }
            witnesses.push(("T".into(), t));
            Ok(AGroupClassification {
                case: AGroupCase::Three,
                m,
                witnesses,
            })
        }
        6 => {
            if g.join(&k, &fh).order() != f.order() {
                return Err(Error::Consistency("F(G) differs from K × F(H)".into()));
            }
            let (htop, _) = hg.quotient(&fh_local)?;
            if htop.is_abelian() {
                Ok(AGroupClassification {
                    case: AGroupCase::FourOne,
                    m,
                    witnesses,
                })
            } else {
                let p = g.sylow(3);
                let t = g.join(&p, &fh);
                if !sub_quasi_frobenius(g, &t) {
                    return Err(Error::Consistency("T = P F(H) is not quasi-Frobenius".into()));
                }
                witnesses.push(("T".into(), t));
                Ok(AGroupClassification {
                    case: AGroupCase::FourTwo,
                    m,
                    witnesses,
                })
            }
        }
        _ => Err(Error::Consistency(format!("[H:F(H)] = {n} is not 2, 3 or 6"))),
    }
}

/// The transfer used for the "for all `y ∈ Q − A`" quantifier: the action
/// of `y` on an abelian normal subgroup `M` depends only on the coset `yA`
/// when `A ⊇ M` is abelian. Returns whether all `y ∈ Q − A` act alike.
pub fn coset_actions_agree(g: &FiniteGroup, a: &Subgroup, m: &Subgroup, set: &Subgroup) -> Result<bool> {
    let module = ModuleData::new(g, m)?;
    let outside: Vec<Elem> = set.elements().iter().copied().filter(|&y| !a.contains(y)).collect();
    Ok(module.distinct_actions(g, &outside)?.len() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::GroupSpec;

    fn build(t: &str) -> FiniteGroup {
        GroupSpec::parse(t).unwrap().build().unwrap()
    }

    #[test]
    fn small_verdicts() {
        assert_eq!(classify_theorem_a(&build("ALT(4)")).to_string(), "Below case=a m=3 p=2/3");
        assert_eq!(classify_theorem_a(&build("SYM(4)")).to_string(), "Below case=b2 m=6 p=5/6");
        assert_eq!(classify_theorem_a(&build("PGROUP(d8)")).to_string(), "Below case=b1 m=4 p=3/4");
        assert_eq!(classify_theorem_a(&build("PGROUP(q8)")).to_string(), "Below case=b1 m=4 p=3/4");
        assert_eq!(classify_theorem_a(&build("CYCLIC(6)")).to_string(), "Below case=a m=1 p=0/1");
        assert_eq!(classify_theorem_a(&build("SYM(3)")).to_string(), "Below case=a m=2 p=1/2");
    }

    #[test]
    fn s4_witness_c_is_c2() {
        let v = classify_theorem_a(&build("SYM(4)"));
        assert_eq!(v.witness("C").unwrap().order(), 2);
    }

    #[test]
    fn c6_family_verdicts() {
        assert_eq!(classify_theorem_a(&build("B4_1(1,1)")).outcome.case(), Some(Case::B4_1));
        assert_eq!(classify_theorem_a(&build("B4_2(3,1,1)")).outcome.case(), Some(Case::B4_2));
        assert_eq!(classify_theorem_a(&build("B3(2)")).outcome.case(), Some(Case::B3));
        assert_eq!(classify_theorem_a(&build("INVERSION_NEGATIVE")).outcome, Outcome::AtOrAbove);
    }

    #[test]
    fn a_group_cases() {
        let c = classify_a_group(&build("ALT(4)")).unwrap();
        assert_eq!((c.case, c.m), (AGroupCase::One, 3));
        let c = classify_a_group(&build("FROB(7,6)")).unwrap();
        assert_eq!((c.case, c.m), (AGroupCase::One, 6));
        let c = classify_a_group(&build("FROB(5,4)")).unwrap();
        assert_eq!((c.case, c.m), (AGroupCase::One, 4));
        let c = classify_a_group(&build("PRODUCT(SYM(3),SYM(3))")).unwrap();
        assert_eq!(c.case, AGroupCase::Two);
        assert!(classify_a_group(&build("SYM(4)")).is_err());
    }

    #[test]
    fn s3_case_examples() {
        let a = AbelianGroup::parse("C2xC2").unwrap();
        let x = AbHom::from_matrix(&a, &[vec![1, 1], vec![1, 0]]).unwrap();
        let y = AbHom::from_matrix(&a, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(check_s3_case(&a, &x, &y).unwrap());
        let bad_y = AbHom::identity(&a);
        assert!(check_s3_case(&a, &x, &bad_y).is_err());
    }
}
