//! Deterministic builders for the group families used throughout the crate,
//! and a seeded random corpus for cross-validation.
//!
//! Every group is described by a [`GroupSpec`], a small expression language
//! whose textual form (e.g. `B4_1(1,C2xC2)` or
//! `PRODUCT(A(3),CYCLIC(5))`) round-trips through [`GroupSpec::parse`]. A
//! corpus entry records its spec, so any entry can be rebuilt exactly.
//!
//! The `C_6`-families act on modules over `R = Z[ω]` (`ω² + ω + 1 = 0`).
//! A summand `R/2^j` is `C_{2^j} × C_{2^j}` with coordinates `(c₀, c₁)` for
//! `c₀ + c₁ω`. The element `x` of order 3 acts as multiplication by `ω`,
//! and `y` of order 2 by an `R`-linear involution. The complement `C_6` is
//! generated by `g = xy`, so `g⁴` acts as `x` and `g³` as `y`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{canonical_decomposition, embeds_in_c4_x_c2k, AbHom, AbSubgroup, AbelianGroup};
use crate::arith::{is_prime, prime_of_power};
use crate::character::Rational;
use crate::classifier::{Case, Outcome};
use crate::error::{Error, Result};
use crate::group::{parse_cycles, FiniteGroup, SemidirectSpec, TABLE_CAP};

// ----- small builtin groups ------------------------------------------------

/// The cyclic group `C_n`, generated by `1`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    let n = n.max(1);
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    FiniteGroup::from_table(n, table, &format!("C{n}"))
}

/// An `n`-cycle and a transposition (0-based images).
pub fn symmetric_generators(n: usize) -> Vec<Vec<u8>> {
    if n < 2 {
        return Vec::new();
    }
    let cycle: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
    let mut swap: Vec<u8> = (0..n as u8).collect();
    swap.swap(0, 1);
    vec![cycle, swap]
}

/// `(1,2,3)` together with an `n`-cycle (`n` odd) or `(2,…,n)` (`n` even).
pub fn alternating_generators(n: usize) -> Vec<Vec<u8>> {
    if n < 3 {
        return Vec::new();
    }
    let three: Vec<u8> = (0..n).map(|i| match i { 0 => 1, 1 => 2, 2 => 0, _ => i as u8 }).collect();
    let long: Vec<u8> = if n % 2 == 1 {
        (0..n).map(|i| ((i + 1) % n) as u8).collect()
    } else {
        (0..n).map(|i| if i == 0 { 0 } else { (i % (n - 1) + 1) as u8 }).collect()
    };
    vec![three, long]
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return cyclic(1);
    }
    FiniteGroup::from_permutations(n, &symmetric_generators(n), &format!("S{n}"))
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return cyclic(1);
    }
    FiniteGroup::from_permutations(n, &alternating_generators(n), &format!("A{n}"))
}

/// The complements available in group files: `C1`–`C6`, `V4` and `S3`.
///
/// Generator order: `C_m` has the single generator `1`; `V4` has `(1,0)` and
/// `(0,1)`; `S3` has `(1,2,3)` and `(1,2)`.
pub fn builtin_complement(name: &str) -> Result<FiniteGroup> {
    let upper = name.trim().to_ascii_uppercase();
    match upper.as_str() {
        "V4" => {
            let c2 = cyclic(2)?;
            let mut g = FiniteGroup::direct_product(&c2, &c2, "V4")?;
            g.set_name("V4");
            Ok(g)
        }
        "S3" => symmetric(3),
        _ => {
            let m: usize = upper
                .strip_prefix('C')
                .and_then(|d| d.parse().ok())
                .filter(|m| (1..=6).contains(m))
                .ok_or_else(|| Error::domain(format!("unknown complement `{name}` (expected C1..C6, V4 or S3)")))?;
            cyclic(m)
        }
    }
}

/// Dicyclic group of order `4n`: `⟨a, b | a^{2n}, b² = a^n, a^b = a⁻¹⟩`.
/// For `n` a power of two this is the generalised quaternion group.
pub fn dicyclic(n: usize) -> Result<FiniteGroup> {
    let m = 2 * n;
    let size = 2 * m;
    let mut table = vec![0u32; size * size];
    for x in 0..size {
        let (i, j) = (x % m, x / m);
        for y in 0..size {
            let (k, l) = (y % m, y / m);
            let z = match (j, l) {
                (0, _) => (i + k) % m + m * l,
                (1, 0) => (i + m - k) % m + m,
                _ => (i + m - k + n) % m,
            };
            table[x * size + y] = z as u32;
        }
    }
    FiniteGroup::from_table(size, table, &format!("Dic{}", size))
}

fn semidirect_group(a: &AbelianGroup, h: FiniteGroup, action: Vec<AbHom>, name: &str) -> Result<FiniteGroup> {
    let spec = SemidirectSpec {
        a: a.clone(),
        h,
        action,
    };
    Ok(FiniteGroup::semidirect(&spec, name)?.group)
}

/// `A ⋊ H` with `H` one of the [`builtin_complement`]s: the data a
/// `semidirect` group file holds. `action[i]` is the automorphism of `A`
/// induced by the `i`-th generator of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectForm {
    pub a: AbelianGroup,
    pub complement: String,
    pub action: Vec<AbHom>,
}

impl SemidirectForm {
    pub fn build(&self, name: &str) -> Result<FiniteGroup> {
        let h = builtin_complement(&self.complement)?;
        let order = (self.a.order() as usize).saturating_mul(h.order());
        if order > TABLE_CAP {
            return Err(Error::CapExceeded {
                what: "group order",
                value: order,
                cap: TABLE_CAP,
            });
        }
        semidirect_group(&self.a, h, self.action.clone(), name)
    }
}

fn semi_automorphism(a: &AbelianGroup, matrix: &[Vec<i64>]) -> Result<AbHom> {
    let alpha = AbHom::from_matrix(a, matrix)?;
    if !alpha.is_automorphism() {
        return Err(Error::domain("SEMI matrix is not an automorphism"));
    }
    Ok(alpha)
}

/// `C_n ⋊ C_k` where the generator of `C_k` multiplies by `r`.
fn cyclic_extension(n: u64, k: usize, r: i64, name: &str) -> Result<FiniteGroup> {
    let a = AbelianGroup::new(vec![n])?;
    let alpha = AbHom::from_matrix(&a, &[vec![r]])?;
    semidirect_group(&a, cyclic(k)?, vec![alpha], name)
}

/// Frobenius group `C_p ⋊ C_m` with `m | p − 1`.
pub fn frobenius_cyclic(p: u64, m: u64) -> Result<FiniteGroup> {
    if !is_prime(p) || m == 0 || !(p - 1).is_multiple_of(m) {
        return Err(Error::domain(format!("C{p} ⋊ C{m} needs p prime and m | p-1")));
    }
    if m == 1 {
        return cyclic(p as usize);
    }
    let g = crate::arith::primitive_root(p);
    let r = crate::arith::mod_pow(g, (p - 1) / m, p);
    cyclic_extension(p, m as usize, r as i64, &format!("C{p}:C{m}"))
}

/// One factor of a `PGROUP` shape.
fn p_group_factor(token: &str) -> Result<FiniteGroup> {
    let t = token.trim().to_ascii_lowercase();
    let num = |prefix: &str| -> Option<u64> { t.strip_prefix(prefix).and_then(|d| d.parse().ok()) };
    let g = if t == "q8" {
        dicyclic(2)?
    } else if t == "q16" {
        dicyclic(4)?
    } else if t == "q32" {
        dicyclic(8)?
    } else if t == "sd16" {
        cyclic_extension(8, 2, 3, "SD16")?
    } else if t == "m16" {
        cyclic_extension(8, 2, 5, "M16")?
    } else if t == "c4c4" {
        cyclic_extension(4, 4, -1, "C4:C4")?
    } else if let Some(p) = num("heis") {
        // 3^{1+2}, 5^{1+2}, … of exponent p
        if !is_prime(p) || p == 2 {
            return Err(Error::domain("heis<p> needs an odd prime p"));
        }
        let a = AbelianGroup::new(vec![p, p])?;
        let alpha = AbHom::from_matrix(&a, &[vec![1, 1], vec![0, 1]])?;
        semidirect_group(&a, cyclic(p as usize)?, vec![alpha], &format!("{p}^(1+2)"))?
    } else if let Some(p) = num("ex") {
        // extraspecial of exponent p²: C_{p²} ⋊ C_p
        if !is_prime(p) || p == 2 {
            return Err(Error::domain("ex<p> needs an odd prime p"));
        }
        cyclic_extension(p * p, p as usize, 1 + p as i64, &format!("{p}^(1+2)-"))?
    } else if let Some(n) = num("d") {
        if n < 4 || n % 2 != 0 || prime_of_power(n) != Some(2) {
            return Err(Error::domain("d<n> needs n a power of two, at least 4"));
        }
        cyclic_extension(n / 2, 2, -1, &format!("D{n}"))?
    } else if let Some(n) = num("c") {
        if prime_of_power(n).is_none() && n != 1 {
            return Err(Error::domain("c<n> in a p-group shape needs a prime power"));
        }
        cyclic(n as usize)?
    } else {
        return Err(Error::domain(format!("unknown p-group factor `{token}`")));
    };
    Ok(g)
}

// ----- Z[ω]-modules -----------------------------------------------------------

/// An element `a + bω` of `R = Z[ω]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Omega(i64, i64);

impl Omega {
    fn mul(self, o: Omega) -> Omega {
        // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        Omega(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0 - self.1 * o.1)
    }
    fn add(self, o: Omega) -> Omega {
        Omega(self.0 + o.0, self.1 + o.1)
    }
    fn neg(self) -> Omega {
        Omega(-self.0, -self.1)
    }
}

const OMEGA: Omega = Omega(0, 1);

/// `⊕ R/2^{exps[i]}` as an abelian group, with `x = ω` and `y` given by the
/// images of the summand generators `1_i` (one `R`-coefficient per summand).
fn omega_module(exps: &[u32], y_images: &[Vec<Omega>]) -> Result<(AbelianGroup, AbHom, AbHom)> {
    let factors: Vec<u64> = exps.iter().flat_map(|&j| [1u64 << j, 1u64 << j]).collect();
    let a = AbelianGroup::new(factors)?;
    let rows_of = |images: &dyn Fn(usize) -> Vec<Omega>| -> Vec<Vec<i64>> {
        let mut rows = Vec::new();
        for i in 0..exps.len() {
            for basis in [Omega(1, 0), OMEGA] {
                let v = images(i);
                rows.push(v.iter().flat_map(|c| { let c = c.mul(basis); [c.0, c.1] }).collect());
            }
        }
        rows
    };
    let x_rows = rows_of(&|i| {
        let mut v = vec![Omega(0, 0); exps.len()];
        v[i] = OMEGA;
        v
    });
    let y_rows = rows_of(&|i| y_images[i].clone());
    let x = AbHom::from_matrix(&a, &x_rows)?;
    let y = AbHom::from_matrix(&a, &y_rows)?;
    Ok((a, x, y))
}

/// `C_6 ⋉ M` for a module built by [`omega_module`].
fn c6_form(a: &AbelianGroup, x: &AbHom, y: &AbHom) -> Result<SemidirectForm> {
    Ok(SemidirectForm {
        a: a.clone(),
        complement: "C6".into(),
        action: vec![x.compose(y)?],
    })
}

/// Pairs up a homocyclic-pair shape such as `C4xC4xC2xC2` into summand
/// exponents `[2, 1]`.
fn pair_exponents(c: &AbelianGroup) -> Result<Vec<u32>> {
    let canon = canonical_decomposition(c);
    let f = canon.factors();
    if !f.len().is_multiple_of(2) || f.chunks(2).any(|p| p[0] != p[1] || prime_of_power(p[0]) != Some(2)) {
        return Err(Error::domain(format!(
            "C-shape {c} must be a product of pairs C_(2^j) x C_(2^j)"
        )));
    }
    Ok(f.chunks(2).map(|p| p[0].trailing_zeros()).collect())
}

/// The `S_3`-module `{(a₁, a₂, a₃) ∈ C³ : a₁ + a₂ + a₃ = 0}` with `S_3`
/// permuting coordinates, extended to `S_3 ⋉ C²`.
fn s3_module_form(c: &AbelianGroup) -> Result<SemidirectForm> {
    let r = c.num_factors();
    let a = AbelianGroup::new([c.factors(), c.factors()].concat())?;
    let coord = |first: i64, second: i64, j: usize| -> Vec<i64> {
        let mut v = vec![0i64; 2 * r];
        v[j] = first;
        v[r + j] = second;
        v
    };
    // the 3-cycle: (a₁, a₂) ↦ (a₃, a₁) = (−a₁ − a₂, a₁)
    let mut cyc = Vec::new();
    let mut swap = Vec::new();
    for j in 0..r {
        cyc.push(coord(-1, 1, j));
        swap.push(coord(0, 1, j));
    }
    for j in 0..r {
        cyc.push(coord(-1, 0, j));
        swap.push(coord(1, 0, j));
    }
    let x = AbHom::from_matrix(&a, &cyc)?;
    let y = AbHom::from_matrix(&a, &swap)?;
    Ok(SemidirectForm {
        a,
        complement: "S3".into(),
        action: vec![x, y],
    })
}

// ----- specs -------------------------------------------------------------------

/// A buildable group description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// Frobenius group `C_p ⋊ C_m` with `p` the least prime `≡ 1 (mod m)`;
    /// an A-group with `[G:F(G)] = m`.
    A(u32),
    /// `C_p ⋊ C_m` for explicit `p` and `m | p − 1`.
    Frob(u64, u64),
    /// `Q ⋉ C_r` where `Q ∈ {D8, Q8}` acts on the odd cyclic group `C_r` by
    /// inversion through a quotient of order 2.
    B1 { quaternion: bool, odd: u64 },
    /// `S_3 ⋉ {sum-zero triples in C³}`; `C_A(y) ≅ C`.
    B2(AbelianGroup),
    /// `C_6 ⋉ R/2^n` with `y = 1 + 2^{n−1}`.
    B3(u32),
    /// `C_6 ⋉ ((R/8)^k ⊕ C)` with `y = 4ω − 1` on `R/8` and `−1` on `C`.
    B4_1 { k: u32, c: AbelianGroup },
    /// `C_6 ⋉ (B_0^k ⊕ C)` with `B_0 = R/2^n ⊕ R/2` as described in
    /// [`b4_2_module`]; `y = −1` on `C`.
    B4_2 { n: u32, k: u32, c: AbelianGroup },
    /// `C_5 ⋉ (U × V)` with `U = (C_2)^4`, `V = (C_3)^4` faithful irreducible.
    M5,
    A7,
    /// `C_6 ⋉ (C_8)²` with `y = −1`.
    InversionNegative,
    /// Direct product of p-group factors, e.g. `d8xc2`.
    PGroup(String),
    Cyclic(u64),
    Abelian(AbelianGroup),
    Sym(usize),
    Alt(usize),
    /// Permutation group from generators in cycle notation.
    Perm { degree: usize, gens: Vec<String> },
    /// `C_k ⋉ A`, the generator acting by `matrix` (rows are images of the
    /// generators of `A`); `k` is the order of the automorphism.
    Semi { a: AbelianGroup, matrix: Vec<Vec<i64>> },
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

fn split_args(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if (ch == ',' || ch == ';') && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    // `key=value` arguments are positional; the key is documentation only
    out.into_iter()
        .map(|a| match a.split_once('=') {
            Some((k, v)) if k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !k.is_empty() => {
                v.trim().to_string()
            }
            _ => a,
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::domain(format!("expected an integer for {what}, found `{s}`")))
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::domain("matrix must look like [[a,b],[c,d]]"))?;
    split_args(inner)
        .iter()
        .map(|row| {
            let r = row
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::domain("matrix row must be bracketed"))?;
            r.split(',').map(|v| parse_num(v, "matrix entry")).collect()
        })
        .collect()
}

impl GroupSpec {
    /// Parses the textual form, e.g. `B4_2(3,1,1)` or `B4_2(n=3,k=1,C=1)`.
    /// Names are case-insensitive; missing trailing arguments take defaults.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let t = text.trim();
        let (name, args) = match t.find('(') {
            Some(i) if t.ends_with(')') => (&t[..i], split_args(&t[i + 1..t.len() - 1])),
            Some(_) => return Err(Error::domain(format!("unbalanced parentheses in `{t}`"))),
            None => (t, Vec::new()),
        };
        let arg = |i: usize| args.get(i).map(|s| s.as_str());
        let shape = |i: usize| -> Result<AbelianGroup> { AbelianGroup::parse(arg(i).unwrap_or("1")) };
        let name = name.trim().to_ascii_uppercase();
        let spec = match name.as_str() {
            "A" => GroupSpec::A(parse_num(arg(0).unwrap_or("2"), "m")?),
            "FROB" => GroupSpec::Frob(
                parse_num(arg(0).unwrap_or("7"), "p")?,
                parse_num(arg(1).unwrap_or("3"), "m")?,
            ),
            "B1" => GroupSpec::B1 {
                quaternion: match arg(0).unwrap_or("d8").to_ascii_lowercase().as_str() {
                    "q8" => true,
                    "d8" => false,
                    other => return Err(Error::domain(format!("B1 takes d8 or q8, not `{other}`"))),
                },
                odd: parse_num(arg(1).unwrap_or("1"), "r")?,
            },
            "B2" => GroupSpec::B2(AbelianGroup::parse(arg(0).unwrap_or("C2"))?),
            "B3" => GroupSpec::B3(parse_num(arg(0).unwrap_or("2"), "n")?),
            "B4_1" => GroupSpec::B4_1 {
                k: parse_num(arg(0).unwrap_or("1"), "k")?,
                c: shape(1)?,
            },
            "B4_2" => GroupSpec::B4_2 {
                n: parse_num(arg(0).unwrap_or("3"), "n")?,
                k: parse_num(arg(1).unwrap_or("1"), "k")?,
                c: shape(2)?,
            },
            "M5" => GroupSpec::M5,
            "A7" => GroupSpec::A7,
            "INVERSION_NEGATIVE" => GroupSpec::InversionNegative,
            "PGROUP" => GroupSpec::PGroup(arg(0).unwrap_or("d8").to_ascii_lowercase()),
            "CYCLIC" => GroupSpec::Cyclic(parse_num(arg(0).unwrap_or("1"), "n")?),
            "AB" | "ABELIAN" => GroupSpec::Abelian(shape(0)?),
            "SYM" => GroupSpec::Sym(parse_num(arg(0).unwrap_or("3"), "n")?),
            "ALT" => GroupSpec::Alt(parse_num(arg(0).unwrap_or("4"), "n")?),
            "PERM" => GroupSpec::Perm {
                degree: parse_num(arg(0).ok_or_else(|| Error::domain("PERM needs a degree"))?, "degree")?,
                gens: args[1..].to_vec(),
            },
            "SEMI" => GroupSpec::Semi {
                a: shape(0)?,
                matrix: parse_matrix(arg(1).ok_or_else(|| Error::domain("SEMI needs a matrix"))?)?,
            },
            "PRODUCT" => {
                if args.len() != 2 {
                    return Err(Error::domain("PRODUCT takes two group specs"));
                }
                GroupSpec::Product(Box::new(Self::parse(&args[0])?), Box::new(Self::parse(&args[1])?))
            }
            _ => return Err(Error::domain(format!("unknown family `{name}`"))),
        };
        Ok(spec)
    }

    /// Builds the group.
    /// The `A ⋊ H` data for specs whose complement is builtin, `None` for
    /// the others.
    pub fn semidirect_form(&self) -> Result<Option<SemidirectForm>> {
        let form = match self {
            GroupSpec::B2(c) => {
                if c.order() == 1 || c.prime() != Some(2) {
                    return Err(Error::domain("B2 needs a nontrivial 2-group C"));
                }
                s3_module_form(c)?
            }
            GroupSpec::B3(n) => {
                if *n < 2 || *n > 6 {
                    return Err(Error::domain("B3(n) needs 2 ≤ n ≤ 6"));
                }
                let y = Omega(1 + (1i64 << (n - 1)), 0);
                let (a, x, y) = omega_module(&[*n], &[vec![y]])?;
                c6_form(&a, &x, &y)?
            }
            GroupSpec::B4_1 { k, c } => {
                if *k == 0 {
                    return Err(Error::domain("B4_1 needs k ≥ 1"));
                }
                let cexp = pair_exponents(c)?;
                if cexp.iter().any(|&j| j > 2) {
                    return Err(Error::domain("B4_1 needs exp(C) ≤ 4"));
                }
                let exps: Vec<u32> = std::iter::repeat_n(3, *k as usize).chain(cexp.iter().copied()).collect();
                let images = diagonal_y(&exps, |j| if j == 3 { Omega(-1, 4) } else { Omega(-1, 0) });
                let (a, x, y) = omega_module(&exps, &images)?;
                c6_form(&a, &x, &y)?
            }
            GroupSpec::B4_2 { n, k, c } => {
                if *n < 3 {
                    return Err(Error::domain("B4_2 needs n ≥ 3"));
                }
                if *k == 0 {
                    return Err(Error::domain("B4_2 needs k ≥ 1"));
                }
                let cexp = pair_exponents(c)?;
                if cexp.iter().any(|&j| j > 2 || j >= *n) {
                    return Err(Error::domain("B4_2 needs exp(C) ≤ 4 and exp(C) < 2^n"));
                }
                let (a, x, y) = b4_2_module(*n, *k, &cexp)?;
                c6_form(&a, &x, &y)?
            }
            GroupSpec::M5 => m5_form()?,
            GroupSpec::InversionNegative => {
                let (a, x, y) = omega_module(&[3], &[vec![Omega(-1, 0)]])?;
                c6_form(&a, &x, &y)?
            }
            GroupSpec::Semi { a, matrix } => {
                let alpha = semi_automorphism(a, matrix)?;
                let k = alpha.automorphism_order()?;
                if k > 6 {
                    return Ok(None);
                }
                SemidirectForm {
                    a: a.clone(),
                    complement: format!("C{k}"),
                    action: vec![alpha],
                }
            }
            _ => return Ok(None),
        };
        Ok(Some(form))
    }

    /// Degree and generators for specs given by permutations.
    pub fn permutation_form(&self) -> Result<Option<(usize, Vec<Vec<u8>>)>> {
        Ok(match self {
            GroupSpec::Sym(n) => Some((*n, symmetric_generators(*n))),
            GroupSpec::Alt(n) => Some((*n, alternating_generators(*n))),
            GroupSpec::A7 => Some((7, alternating_generators(7))),
            GroupSpec::Perm { degree, gens } => {
                if *degree == 0 || *degree > 255 {
                    return Err(Error::domain("permutation degree must be in 1..=255"));
                }
                let perms = gens
                    .iter()
                    .map(|s| parse_cycles(s, *degree))
                    .collect::<Result<Vec<_>>>()?;
                Some((*degree, perms))
            }
            _ => None,
        })
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let name = self.to_string();
        if let Some(form) = self.semidirect_form()? {
            let mut g = form.build(&name)?;
            g.set_name(name);
            return Ok(g);
        }
        let mut g = match self {
            GroupSpec::A(m) => {
                let m = *m as u64;
                if m == 0 {
                    return Err(Error::domain("A(m) needs m ≥ 1"));
                }
                let p = (1..).map(|j| j * m + 1).find(|&p| is_prime(p)).unwrap();
                frobenius_cyclic(p, m)?
            }
            GroupSpec::Frob(p, m) => frobenius_cyclic(*p, *m)?,
            GroupSpec::B1 { quaternion, odd } => {
                let q = if *quaternion { dicyclic(2)? } else { cyclic_extension(4, 2, -1, "D8")? };
                if *odd % 2 == 0 || *odd == 0 {
                    return Err(Error::domain("B1 needs an odd r"));
                }
                if *odd == 1 {
                    q
                } else {
                    let a = AbelianGroup::new(vec![*odd])?;
                    // first generator of Q inverts, the others centralise
                    let action = (0..q.generators().len())
                        .map(|i| AbHom::from_matrix(&a, &[vec![if i == 0 { -1 } else { 1 }]]))
                        .collect::<Result<Vec<_>>>()?;
                    semidirect_group(&a, q, action, &name)?
                }
            }
            GroupSpec::B2(_)
            | GroupSpec::B3(_)
            | GroupSpec::B4_1 { .. }
            | GroupSpec::B4_2 { .. }
            | GroupSpec::M5
            | GroupSpec::InversionNegative => unreachable!("built through semidirect_form"),
            GroupSpec::A7 => alternating(7)?,
            GroupSpec::PGroup(shape) => {
                let mut parts = shape.split('x').filter(|s| !s.is_empty());
                let first = parts.next().ok_or_else(|| Error::domain("empty p-group shape"))?;
                let mut g = p_group_factor(first)?;
                for part in parts {
                    g = FiniteGroup::direct_product(&g, &p_group_factor(part)?, &name)?;
                }
                let order = g.order() as u64;
                if order > 1 && prime_of_power(order).is_none() {
                    return Err(Error::domain(format!("PGROUP({shape}) mixes primes")));
                }
                g
            }
            GroupSpec::Cyclic(n) => cyclic(*n as usize)?,
            GroupSpec::Abelian(a) => {
                let mut g = cyclic(1)?;
                for &d in a.factors() {
                    g = FiniteGroup::direct_product(&g, &cyclic(d as usize)?, &name)?;
                }
                g
            }
            GroupSpec::Sym(n) => symmetric(*n)?,
            GroupSpec::Alt(n) => alternating(*n)?,
            GroupSpec::Perm { degree, gens } => {
                if *degree == 0 || *degree > 255 {
                    return Err(Error::domain("permutation degree must be in 1..=255"));
                }
                let perms = gens
                    .iter()
                    .map(|s| parse_cycles(s, *degree))
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_permutations(*degree, &perms, &name)?
            }
            GroupSpec::Semi { a, matrix } => {
                let alpha = semi_automorphism(a, matrix)?;
                let k = alpha.automorphism_order()? as usize;
                if (a.order() as usize).saturating_mul(k) > TABLE_CAP {
                    return Err(Error::CapExceeded {
                        what: "group order",
                        value: a.order() as usize * k,
                        cap: TABLE_CAP,
                    });
                }
                semidirect_group(a, cyclic(k)?, vec![alpha], &name)?
            }
            GroupSpec::Product(x, y) => {
                let (gx, gy) = (x.build()?, y.build()?);
                FiniteGroup::direct_product(&gx, &gy, &name)?
            }
        };
        g.set_name(name);
        Ok(g)
    }

    /// The outcome predicted by structure alone, when there is one.
    pub fn expected(&self) -> Option<Expected> {
        let below = |case: Case, m: i64| Expected {
            outcome: Outcome::Below {
                case,
                predicted_p: Rational::new(m - 1, m),
            },
            proportion: Some(Rational::new(m - 1, m)),
            source: "theory",
        };
        let five_sixths = |case| below(case, 6);
        match self {
            GroupSpec::A(m) if *m <= 6 => Some(below(Case::A(*m), *m as i64)),
            GroupSpec::Frob(_, m) if *m <= 6 => Some(below(Case::A(*m as u32), *m as i64)),
            GroupSpec::Frob(_, m) => Some(Expected {
                outcome: Outcome::AtOrAbove,
                proportion: Some(Rational::new(*m as i64 - 1, *m as i64)),
                source: "derived:frobenius",
            }),
            GroupSpec::B1 { .. } => Some(below(Case::B1, 4)),
            GroupSpec::B2(c) => {
                let whole = AbSubgroup::whole(c);
                if embeds_in_c4_x_c2k(&whole) {
                    Some(five_sixths(Case::B2))
                } else {
                    Some(Expected {
                        outcome: Outcome::AtOrAbove,
                        proportion: None,
                        source: "theory",
                    })
                }
            }
            GroupSpec::B3(_) => Some(five_sixths(Case::B3)),
            GroupSpec::B4_1 { .. } => Some(five_sixths(Case::B4_1)),
            GroupSpec::B4_2 { .. } => Some(five_sixths(Case::B4_2)),
            GroupSpec::M5 => Some(Expected {
                outcome: Outcome::AtOrAbove,
                proportion: Some(Rational::new(133, 135)),
                source: "theory",
            }),
            GroupSpec::A7 => Some(Expected {
                outcome: Outcome::AtOrAbove,
                proportion: Some(crate::character::threshold()),
                source: "theory",
            }),
            GroupSpec::InversionNegative => Some(Expected {
                outcome: Outcome::AtOrAbove,
                proportion: None,
                source: "theory",
            }),
            GroupSpec::Cyclic(_) | GroupSpec::Abelian(_) => Some(below(Case::A(1), 1)),
            _ => None,
        }
    }

    /// Whether the spec names a p-group (used to select p-group corpus members).
    pub fn is_pgroup_family(&self) -> bool {
        matches!(self, GroupSpec::PGroup(_))
    }
}

fn diagonal_y(exps: &[u32], f: impl Fn(u32) -> Omega) -> Vec<Vec<Omega>> {
    (0..exps.len())
        .map(|i| {
            let mut v = vec![Omega(0, 0); exps.len()];
            v[i] = f(exps[i]);
            v
        })
        .collect()
}

/// The cyclic module `B_0 = R[u]/(2^{n−1} − 2ωu)` with `u = y − 1`, written
/// as `R/2^n ⊕ R/2` on the basis `e = a₀` and `f = u·a₀ − ω²2^{n−2}a₀`.
/// Then `y(e) = e + u·e` and `y(f) = −u·e − ω²2^{n−2}(e + u·e)`, where
/// `u·e = ω²2^{n−2}e + f`. The relation gives `2^{n−1}a = ω·2(y − 1)a`.
pub fn b4_2_module(n: u32, k: u32, c_exps: &[u32]) -> Result<(AbelianGroup, AbHom, AbHom)> {
    let mut exps = Vec::new();
    for _ in 0..k {
        exps.push(n);
        exps.push(1);
    }
    exps.extend_from_slice(c_exps);
    let t = Omega(0, 1).mul(OMEGA).mul(Omega(1i64 << (n - 2), 0)); // ω²2^{n−2}
    let mut images = vec![vec![Omega(0, 0); exps.len()]; exps.len()];
    for b in 0..k as usize {
        let (ei, fi) = (2 * b, 2 * b + 1);
        // u·e = t·e + f
        let ue = [(ei, t), (fi, Omega(1, 0))];
        // y(e) = e + u·e
        images[ei][ei] = Omega(1, 0).add(t);
        images[ei][fi] = Omega(1, 0);
        // y(f) = −u·e − t·e − t·u·e
        let mut yf = vec![Omega(0, 0); exps.len()];
        for &(pos, coef) in &ue {
            yf[pos] = yf[pos].add(coef.neg());
            yf[pos] = yf[pos].add(t.mul(coef).neg());
        }
        yf[ei] = yf[ei].add(t.neg());
        images[fi] = yf;
    }
    for (i, _) in c_exps.iter().enumerate() {
        let pos = 2 * k as usize + i;
        images[pos][pos] = Omega(-1, 0);
    }
    omega_module(&exps, &images)
}

/// `C_5 ⋉ (U × V)`: `U = GF(2)^4`, `V = GF(3)^4`, the generator acting by the
/// companion matrix of `x⁴ + x³ + x² + x + 1` on both.
pub fn m5_form() -> Result<SemidirectForm> {
    let a = AbelianGroup::new(vec![2, 2, 2, 2, 3, 3, 3, 3])?;
    let mut rows = Vec::new();
    for block in 0..2 {
        for i in 0..4 {
            let mut v = vec![0i64; 8];
            if i < 3 {
                v[4 * block + i + 1] = 1;
            } else {
                for j in 0..4 {
                    v[4 * block + j] = -1;
                }
            }
            rows.push(v);
        }
    }
    let alpha = AbHom::from_matrix(&a, &rows)?;
    Ok(SemidirectForm {
        a,
        complement: "C5".into(),
        action: vec![alpha],
    })
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::A(m) => write!(f, "A({m})"),
            GroupSpec::Frob(p, m) => write!(f, "FROB({p},{m})"),
            GroupSpec::B1 { quaternion, odd } => {
                write!(f, "B1({},{odd})", if *quaternion { "q8" } else { "d8" })
            }
            GroupSpec::B2(c) => write!(f, "B2({c})"),
            GroupSpec::B3(n) => write!(f, "B3({n})"),
            GroupSpec::B4_1 { k, c } => write!(f, "B4_1({k},{c})"),
            GroupSpec::B4_2 { n, k, c } => write!(f, "B4_2({n},{k},{c})"),
            GroupSpec::M5 => write!(f, "M5"),
            GroupSpec::A7 => write!(f, "A7"),
            GroupSpec::InversionNegative => write!(f, "INVERSION_NEGATIVE"),
            GroupSpec::PGroup(s) => write!(f, "PGROUP({s})"),
            GroupSpec::Cyclic(n) => write!(f, "CYCLIC({n})"),
            GroupSpec::Abelian(a) => write!(f, "AB({a})"),
            GroupSpec::Sym(n) => write!(f, "SYM({n})"),
            GroupSpec::Alt(n) => write!(f, "ALT({n})"),
            GroupSpec::Perm { degree, gens } => {
                write!(f, "PERM({degree}")?;
                for g in gens {
                    write!(f, ",{g}")?;
                }
                write!(f, ")")
            }
            GroupSpec::Semi { a, matrix } => {
                let rows: Vec<String> = matrix
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "SEMI({a},[{}])", rows.join(","))
            }
            GroupSpec::Product(x, y) => write!(f, "PRODUCT({x},{y})"),
        }
    }
}

// ----- corpus --------------------------------------------------------------------

/// What the structure of a builder predicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub outcome: Outcome,
    /// Exact `P(G)` when it is known in advance.
    pub proportion: Option<Rational>,
    /// `theory` for predictions of the classification itself, `derived:…`
    /// for values that follow from an elementary argument.
    pub source: &'static str,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
    /// `spec=<spec> seed=<seed> index=<i>`, enough to replay the entry.
    pub provenance: String,
    pub expected: Option<Expected>,
}

impl CorpusEntry {
    pub fn from_spec(spec: GroupSpec, provenance: String) -> Result<Self> {
        let group = spec.build()?;
        let expected = spec.expected();
        Ok(CorpusEntry {
            spec,
            group,
            provenance,
            expected,
        })
    }

    /// Rebuilds the group from the recorded spec.
    pub fn replay(&self) -> Result<FiniteGroup> {
        self.spec.build()
    }
}

/// `build_case_family` under its tag syntax, e.g. `B4_1(1,C4xC4)`.
pub fn build_case_family(tag: &str) -> Result<CorpusEntry> {
    let spec = GroupSpec::parse(tag)?;
    let provenance = format!("spec={spec}");
    CorpusEntry::from_spec(spec, provenance)
}

/// Limits for corpus generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusCaps {
    pub max_order: usize,
    pub max_classes: usize,
}

impl Default for CorpusCaps {
    fn default() -> Self {
        CorpusCaps {
            max_order: 2000,
            max_classes: 160,
        }
    }
}

fn random_abelian(rng: &mut ChaCha8Rng) -> AbelianGroup {
    const SHAPES: &[&[u64]] = &[
        &[2, 2],
        &[2, 2, 2],
        &[4, 2],
        &[4, 4],
        &[3, 3],
        &[3],
        &[5],
        &[7],
        &[2, 2, 2, 2],
        &[3, 3, 3],
        &[5, 5],
        &[9, 3],
        &[2, 2, 3],
        &[4, 4, 2],
        &[8, 8],
        &[2, 2, 3, 3],
    ];
    AbelianGroup::new(SHAPES.choose(rng).unwrap().to_vec()).unwrap()
}

fn random_semi(rng: &mut ChaCha8Rng, caps: &CorpusCaps) -> Option<GroupSpec> {
    let a = random_abelian(rng);
    let r = a.num_factors();
    for _ in 0..20 {
        let matrix: Vec<Vec<i64>> = a
            .factors()
            .iter()
            .map(|_| a.factors().iter().map(|&d| rng.gen_range(0..d as i64)).collect())
            .collect();
        let Ok(alpha) = AbHom::from_matrix(&a, &matrix) else { continue };
        if !alpha.is_automorphism() {
            continue;
        }
        let k = alpha.automorphism_order().ok()? as usize;
        if k > 1 && k <= 12 && a.order() as usize * k <= caps.max_order {
            debug_assert_eq!(matrix.len(), r);
            return Some(GroupSpec::Semi { a, matrix });
        }
    }
    None
}

fn random_perm(rng: &mut ChaCha8Rng) -> GroupSpec {
    let degree = rng.gen_range(4..=7usize);
    let ngens = rng.gen_range(1..=2);
    let gens = (0..ngens)
        .map(|_| {
            let mut p: Vec<u8> = (0..degree as u8).collect();
            // random permutation, often of small support
            let moved = rng.gen_range(2..=degree);
            let mut pts: Vec<usize> = (0..degree).collect();
            pts.shuffle(rng);
            let pts = &pts[..moved];
            let mut images: Vec<usize> = pts.to_vec();
            images.shuffle(rng);
            for (&a, &b) in pts.iter().zip(&images) {
                p[a] = b as u8;
            }
            crate::group::cycle_string(&p)
        })
        .collect();
    GroupSpec::Perm { degree, gens }
}

fn small_atom(rng: &mut ChaCha8Rng) -> GroupSpec {
    let atoms = [
        GroupSpec::Sym(3),
        GroupSpec::A(2),
        GroupSpec::A(3),
        GroupSpec::A(4),
        GroupSpec::Frob(5, 2),
        GroupSpec::Frob(7, 3),
        GroupSpec::Frob(7, 2),
        GroupSpec::Alt(4),
        GroupSpec::PGroup("d8".into()),
        GroupSpec::PGroup("q8".into()),
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Cyclic(4),
        GroupSpec::Cyclic(5),
        GroupSpec::Sym(4),
        GroupSpec::B1 { quaternion: false, odd: 3 },
    ];
    atoms.choose(rng).unwrap().clone()
}

fn random_spec(rng: &mut ChaCha8Rng, caps: &CorpusCaps) -> Option<GroupSpec> {
    let family = rng.gen_range(0..100u32);
    let spec = match family {
        0..=9 => GroupSpec::A(rng.gen_range(1..=6)),
        10..=17 => {
            let m = rng.gen_range(2..=10u64);
            let p = (1..30u64).map(|j| j * m + 1).filter(|&p| is_prime(p)).nth(rng.gen_range(0..3))?;
            GroupSpec::Frob(p, m)
        }
        18..=23 => GroupSpec::B1 {
            quaternion: rng.gen_bool(0.5),
            odd: *[1u64, 3, 5, 7, 9, 15].choose(rng).unwrap(),
        },
        24..=30 => GroupSpec::B2(AbelianGroup::parse(["C2", "C4", "C2xC2", "C4xC2", "C8", "C4xC4", "C2xC2xC2"].choose(rng).unwrap()).unwrap()),
        31..=34 => GroupSpec::B3(rng.gen_range(2..=4)),
        35..=38 => {
            let c = ["1", "C2xC2"].choose(rng).unwrap();
            GroupSpec::B4_1 { k: 1, c: AbelianGroup::parse(c).unwrap() }
        }
        39..=40 => GroupSpec::B4_2 { n: 3, k: 1, c: AbelianGroup::trivial() },
        41..=43 => GroupSpec::InversionNegative,
        44..=53 => {
            let shapes = [
                "d8", "q8", "d16", "q16", "sd16", "m16", "c4c4", "heis3", "ex3", "d8xc2", "q8xc2", "heis5", "d8xd8",
                "q8xc4", "d32", "heis3xc3", "d8xq8", "q8xq8",
            ];
            GroupSpec::PGroup(shapes.choose(rng).unwrap().to_string())
        }
        54..=63 => GroupSpec::Product(Box::new(small_atom(rng)), Box::new(small_atom(rng))),
        64..=77 => random_perm(rng),
        78..=91 => random_semi(rng, caps)?,
        92..=95 => [GroupSpec::Sym(4), GroupSpec::Sym(5), GroupSpec::Alt(5), GroupSpec::Alt(6), GroupSpec::Sym(3)]
            .choose(rng)
            .unwrap()
            .clone(),
        _ => GroupSpec::Product(Box::new(small_atom(rng)), Box::new(GroupSpec::Cyclic(rng.gen_range(2..=7)))),
    };
    Some(spec)
}

/// A deterministic corpus of `count` groups within `caps`.
///
/// Candidates are drawn from the builder families with perturbed
/// parameters, random permutation groups, random cyclic extensions of small
/// abelian groups and direct products; candidates violating the caps are
/// redrawn. Generation is sequential so the result depends only on `seed`.
pub fn random_corpus(seed: u64, count: usize, caps: CorpusCaps) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < count * 200 + 1000 {
        attempts += 1;
        let Some(spec) = random_spec(&mut rng, &caps) else { continue };
        let provenance = format!("spec={spec} seed={seed} index={}", out.len());
        let Ok(entry) = CorpusEntry::from_spec(spec, provenance) else { continue };
        if entry.group.order() > caps.max_order || entry.group.classes().len() > caps.max_classes {
            continue;
        }
        out.push(entry);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for text in [
            "A(3)",
            "B1(q8,3)",
            "B2(C4xC2)",
            "B4_1(1,C2xC2)",
            "B4_2(3,1,1)",
            "PERM(4,(1,2,3,4),(1,2))",
            "SEMI(C3xC3,[[0,1],[2,2]])",
            "PRODUCT(A(2),CYCLIC(3))",
            "PGROUP(d8xc2)",
        ] {
            let spec = GroupSpec::parse(text).unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(GroupSpec::parse(&spec.to_string()).unwrap(), spec);
        }
        assert_eq!(
            GroupSpec::parse("B4_2(n=3, k=1, C=1)").unwrap(),
            GroupSpec::B4_2 { n: 3, k: 1, c: AbelianGroup::trivial() }
        );
        assert!(GroupSpec::parse("B4_2(2,1,1)").unwrap().build().is_err());
    }

    #[test]
    fn family_orders() {
        let order = |t: &str| GroupSpec::parse(t).unwrap().build().unwrap().order();
        assert_eq!(order("A(3)"), 21);
        assert_eq!(order("A(4)"), 20);
        assert_eq!(order("B2(C2)"), 24);
        assert_eq!(order("B4_1(1,1)"), 384);
        assert_eq!(order("B4_2(3,1,1)"), 1536);
        assert_eq!(order("M5"), 6480);
        assert_eq!(order("A7"), 2520);
        assert_eq!(order("PGROUP(heis3)"), 27);
        assert_eq!(order("PGROUP(q16)"), 16);
    }

    #[test]
    fn builtin_complements_have_expected_generators() {
        let s3 = builtin_complement("S3").unwrap();
        assert_eq!(s3.generators().len(), 2);
        assert_eq!(s3.element_order(s3.generators()[0]), 3);
        assert_eq!(s3.element_order(s3.generators()[1]), 2);
        assert_eq!(builtin_complement("C5").unwrap().order(), 5);
        assert_eq!(builtin_complement("v4").unwrap().generators().len(), 2);
        assert!(builtin_complement("C7").is_err());
    }

    #[test]
    fn s4_from_builder() {
        let g = GroupSpec::B2(AbelianGroup::parse("C2").unwrap()).build().unwrap();
        let mut sizes: Vec<usize> = g.classes().sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn quaternion_groups() {
        let q8 = dicyclic(2).unwrap();
        assert_eq!(q8.center().order(), 2);
        assert_eq!(q8.nilpotency_class().unwrap(), 2);
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 4).count(), 6);
    }

    #[test]
    fn corpus_is_deterministic() {
        let caps = CorpusCaps::default();
        let a = random_corpus(7, 12, caps);
        let b = random_corpus(7, 12, caps);
        assert_eq!(a.len(), 12);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.provenance, y.provenance);
            assert_eq!(x.group.order(), y.group.order());
            assert!(x.group.order() <= caps.max_order);
        }
    }
}
