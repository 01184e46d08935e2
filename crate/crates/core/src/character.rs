//! Irreducible characters and vanishing elements.
//!
//! Two independent routes are provided:
//!
//! * [`dixon_table`] computes the full character table with the
//!   Burnside–Dixon method. The class sums act on the centre of the group
//!   algebra, the central characters are their common eigenvectors, and all
//!   of this is done over a prime field `GF(p)` with `p ≡ 1 (mod exp G)`.
//!   Exact values in `Z[ζ_o]` are then recovered from eigenvalue
//!   multiplicities, and the result is checked against both orthogonality
//!   relations in exact arithmetic before it is returned.
//! * [`vanish_on_abelian_normal`] decides which elements of an abelian normal
//!   subgroup `A` vanish, using only sums of induced linear characters of `A`.
//!
//! Proportions are exact rationals, never floating point.

use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::abelian::{AbElement, DualCharacter};
use crate::arith::{inv_mod, is_prime, isqrt, mod_pow, mul_mod, primitive_root};
use crate::cyclotomic::{root_sum_is_zero, Cyclo};
use crate::error::{Error, Result};
use crate::group::{AbelianView, ClassData, Elem, FiniteGroup, Subgroup};

/// Exact rational numbers for proportions.
pub type Rational = Ratio<i64>;

/// `P(A_7) = 1067/1260`, the threshold of the structural classifier.
pub fn threshold() -> Rational {
    Rational::new(1067, 1260)
}

/// The values `(m-1)/m` for `m = 1, …, 6`.
pub fn value_set() -> Vec<Rational> {
    (1..=6).map(|m| Rational::new(m - 1, m)).collect()
}

/// An irreducible character value `Σ_k mult[k] ζ_o^k`, kept as eigenvalue
/// multiplicities so that vanishing tests need only machine integers.
#[derive(Clone, Debug)]
struct Spectrum {
    order: u32,
    mult: Vec<u32>,
}

/// The character table of a finite group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub classes: Arc<ClassData>,
    /// Exponent of the group.
    pub exponent: u64,
    /// Prime used for the modular computation (0 for tables built directly).
    pub prime: u64,
    degrees: Vec<u64>,
    spectra: Vec<Vec<Spectrum>>,
    values: Vec<Vec<Cyclo>>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_characters(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn rows(&self) -> &[Vec<Cyclo>] {
        &self.values
    }

    /// `χ_i(g_t)` as an element of `Z[ζ_o]`, `o` the order of `g_t`.
    pub fn value(&self, i: usize, t: usize) -> &Cyclo {
        &self.values[i][t]
    }

    pub fn is_zero(&self, i: usize, t: usize) -> bool {
        let s = &self.spectra[i][t];
        let counts: Vec<i64> = s.mult.iter().map(|&m| m as i64).collect();
        root_sum_is_zero(s.order as u64, &counts)
    }

    /// For each class, whether some irreducible character vanishes on it.
    pub fn vanishing_classes(&self) -> Vec<bool> {
        self.vanishing_classes_among(&(0..self.num_characters()).collect::<Vec<_>>())
    }

    /// Vanishing classes with respect to a subset of the characters.
    pub fn vanishing_classes_among(&self, chars: &[usize]) -> Vec<bool> {
        (0..self.num_classes())
            .map(|t| chars.iter().any(|&i| self.is_zero(i, t)))
            .collect()
    }

    /// Classes in the kernel of `χ_i` (where `χ_i(g) = χ_i(1)`).
    pub fn kernel_classes(&self, i: usize) -> Vec<bool> {
        let d = self.degrees[i] as u32;
        self.spectra[i].iter().map(|s| s.mult[0] == d).collect()
    }

    /// Textual dump: one line per class, then one line per character.
    pub fn render(&self, group: &FiniteGroup) -> String {
        let mut out = String::new();
        out.push_str(&format!("classes={}\n", self.num_classes()));
        for t in 0..self.num_classes() {
            out.push_str(&format!(
                "class {t} size={} order={} rep={}\n",
                self.classes.sizes[t],
                self.classes.orders[t],
                group.label(self.classes.reps[t])
            ));
        }
        for (i, row) in self.values.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("chi {i} degree={} : {}\n", self.degrees[i], cells.join(" | ")));
        }
        out
    }
}

fn choose_prime(exponent: u64, order: u64) -> Result<u64> {
    // p > 2√|G|, i.e. p² > 4|G|
    let mut p = exponent + 1;
    let limit = 1u64 << 31;
    while p < limit {
        if p * p > 4 * order && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::Configuration(format!(
        "no prime p ≡ 1 (mod {exponent}) with p > 2√{order} below 2^31"
    )))
}

/// Rows in reduced echelon form over GF(p), with pivot columns.
fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = p - row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = (*x + f * y) % p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{v : M v = 0}` for a square matrix.
fn nullspace(m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let (rows, pivots) = rref(m, p);
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &c) in rows.iter().zip(&pivots) {
            v[c] = (p - row[free]) % p;
        }
        out.push(v);
    }
    out
}

/// Characteristic polynomial (constant term first) via Hessenberg reduction.
fn charpoly(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    for m in 1..n {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let u = mul_mod(h[i][m - 1], inv, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let t = mul_mod(u, h[m][j], p);
                h[i][j] = (h[i][j] + p - t) % p;
            }
            for row in h.iter_mut() {
                let t = mul_mod(u, row[i], p);
                row[m] = (row[m] + t) % p;
            }
        }
    }
    // p_0 = 1; p_{m+1} = (x - h_mm) p_m - Σ_{i<m} h_im (∏_{j=i+1}^{m} h_{j,j-1}) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        for (k, &c) in polys[m].iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - mul_mod(h[m][m], c, p)) % p;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            let coef = mul_mod(h[i][m], prod, p);
            if coef != 0 {
                for (k, &c) in polys[i].iter().enumerate() {
                    next[k] = (next[k] + p - mul_mod(coef, c, p)) % p;
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p) == 0)
        .collect()
}

struct Dixon<'a> {
    group: &'a FiniteGroup,
    cls: Arc<ClassData>,
    p: u64,
}

impl Dixon<'_> {
    /// `(M_r)[s][t] = #{x ∈ C_r : x⁻¹ g_t ∈ C_s}` reduced mod p.
    fn class_matrix(&self, r: usize) -> Vec<Vec<u64>> {
        let k = self.cls.len();
        let mut m = vec![vec![0u64; k]; k];
        for t in 0..k {
            let z = self.cls.reps[t];
            for &x in &self.cls.members[r] {
                let s = self.cls.class_of[self.group.mul(self.group.inv(x), z) as usize] as usize;
                m[s][t] += 1;
            }
        }
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x %= self.p;
            }
        }
        m
    }

    /// Splits an invariant subspace (RREF rows) into eigenspaces of `m`.
    fn split(&self, space: &(Vec<Vec<u64>>, Vec<usize>), m: &[Vec<u64>]) -> Result<Vec<(Vec<Vec<u64>>, Vec<usize>)>> {
        let p = self.p;
        let (basis, pivots) = space;
        let d = basis.len();
        // restricted[j][i] = (M b_i)[pivot_j]
        let mut restricted = vec![vec![0u64; d]; d];
        for (i, b) in basis.iter().enumerate() {
            for (j, &pj) in pivots.iter().enumerate() {
                let row = &m[pj];
                let mut acc = 0u64;
                for (x, y) in row.iter().zip(b) {
                    if *x != 0 && *y != 0 {
                        acc = (acc + x * y) % p;
                    }
                }
                restricted[j][i] = acc;
            }
        }
        let eig = roots(&charpoly(restricted.clone(), p), p);
        if eig.len() == 1 {
            return Ok(vec![space.clone()]);
        }
        let mut out = Vec::new();
        let mut total = 0;
        for lambda in eig {
            let mut shifted = restricted.clone();
            for (j, row) in shifted.iter_mut().enumerate() {
                row[j] = (row[j] + p - lambda) % p;
            }
            let null = nullspace(shifted, p);
            total += null.len();
            let vecs: Vec<Vec<u64>> = null
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; basis[0].len()];
                    for (ci, b) in c.iter().zip(basis) {
                        if *ci != 0 {
                            for (x, y) in v.iter_mut().zip(b) {
                                *x = (*x + ci * y) % p;
                            }
                        }
                    }
                    v
                })
                .collect();
            out.push(rref(vecs, p));
        }
        if total != d {
            return Err(Error::Consistency(format!(
                "class matrix restricted to a {d}-dimensional space is not diagonalisable mod {p}"
            )));
        }
        Ok(out)
    }
}

/// Character table by the Burnside–Dixon method.
///
/// Rows are sorted by degree (trivial character first, then by eigenvalue
/// data), so the output is deterministic.
pub fn dixon_table(group: &FiniteGroup) -> Result<CharacterTable> {
    let n = group.order() as u64;
    let cls = group.classes();
    let k = cls.len();
    let e = group.exponent();
    if k == 1 {
        return Ok(CharacterTable {
            classes: cls,
            exponent: 1,
            prime: 0,
            degrees: vec![1],
            spectra: vec![vec![Spectrum { order: 1, mult: vec![1] }]],
            values: vec![vec![Cyclo::one()]],
        });
    }
    let p = choose_prime(e, n)?;
    let dix = Dixon {
        group,
        cls: cls.clone(),
        p,
    };

    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect();
    let mut spaces = vec![(identity, (0..k).collect::<Vec<_>>())];
    let mut order: Vec<usize> = (1..k).collect();
    order.sort_by_key(|&r| (cls.sizes[r], r));
    for r in order {
        if spaces.iter().all(|s| s.0.len() == 1) {
            break;
        }
        let m = dix.class_matrix(r);
        let split: Vec<Vec<_>> = spaces
            .par_iter()
            .map(|s| if s.0.len() == 1 { Ok(vec![s.clone()]) } else { dix.split(s, &m) })
            .collect::<Result<_>>()?;
        spaces = split.into_iter().flatten().collect();
    }
    if spaces.len() != k {
        return Err(Error::Consistency(format!(
            "class sums separate only {} of {k} common eigenspaces",
            spaces.len()
        )));
    }

    let inverse_class: Vec<usize> = (0..k)
        .map(|t| cls.class_of[group.inv(cls.reps[t]) as usize] as usize)
        .collect();
    // power_class[t][j] = class of g_t^j
    let power_class: Vec<Vec<usize>> = (0..k)
        .map(|t| {
            let g = cls.reps[t];
            let mut x = 0;
            (0..cls.orders[t])
                .map(|_| {
                    let c = cls.class_of[x as usize] as usize;
                    x = group.mul(x, g);
                    c
                })
                .collect()
        })
        .collect();
    let z_e = mod_pow(primitive_root(p), (p - 1) / e, p);
    let size_inv: Vec<u64> = cls.sizes.iter().map(|&s| inv_mod(s as u64 % p, p)).collect();
    let sqrt_n = isqrt(n);

    let mut rows: Vec<(u64, Vec<Spectrum>)> = spaces
        .par_iter()
        .map(|(basis, _)| -> Result<(u64, Vec<Spectrum>)> {
            let w = &basis[0];
            let w0_inv = inv_mod(w[0], p);
            let w: Vec<u64> = w.iter().map(|&x| mul_mod(x, w0_inv, p)).collect();
            let mut s = 0u64;
            for t in 0..k {
                s = (s + mul_mod(mul_mod(w[t], w[inverse_class[t]], p), size_inv[t], p)) % p;
            }
            if s == 0 {
                return Err(Error::Consistency("degenerate central character".into()));
            }
            let d2 = mul_mod(n % p, inv_mod(s, p), p);
            let d = (1..=sqrt_n)
                .find(|&d| n.is_multiple_of(d) && mul_mod(d, d, p) == d2)
                .ok_or_else(|| Error::Consistency("no admissible character degree".into()))?;
            let chi: Vec<u64> = (0..k)
                .map(|t| mul_mod(mul_mod(d % p, w[t], p), size_inv[t], p))
                .collect();
            let spectra = (0..k)
                .map(|t| {
                    let o = cls.orders[t] as u64;
                    let z_o = mod_pow(z_e, e / o, p);
                    let o_inv = inv_mod(o % p, p);
                    let mut mult = vec![0u32; o as usize];
                    let mut total = 0u64;
                    for (kk, slot) in mult.iter_mut().enumerate() {
                        // m_k = (1/o) Σ_j χ(g^j) z_o^{-kj}
                        let step = mod_pow(z_o, (o - kk as u64 % o) % o, p);
                        let mut zpow = 1u64;
                        let mut acc = 0u64;
                        for j in 0..o as usize {
                            acc = (acc + mul_mod(chi[power_class[t][j]], zpow, p)) % p;
                            zpow = mul_mod(zpow, step, p);
                        }
                        let m = mul_mod(acc, o_inv, p);
                        if m > d {
                            return Err(Error::Consistency(format!(
                                "eigenvalue multiplicity {m} exceeds degree {d}"
                            )));
                        }
                        *slot = m as u32;
                        total += m;
                    }
                    if total != d {
                        return Err(Error::Consistency("eigenvalue multiplicities do not sum to the degree".into()));
                    }
                    Ok(Spectrum { order: o as u32, mult })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((d, spectra))
        })
        .collect::<Result<_>>()?;

    rows.sort_by(|a, b| {
        let trivial = |r: &(u64, Vec<Spectrum>)| r.0 == 1 && r.1.iter().all(|s| s.mult[0] == 1);
        (a.0, !trivial(a))
            .cmp(&(b.0, !trivial(b)))
            .then_with(|| {
                let ka: Vec<&Vec<u32>> = a.1.iter().map(|s| &s.mult).collect();
                let kb: Vec<&Vec<u32>> = b.1.iter().map(|s| &s.mult).collect();
                kb.cmp(&ka)
            })
    });
    let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
    let spectra: Vec<Vec<Spectrum>> = rows.into_iter().map(|r| r.1).collect();
    let values = spectra
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    let c: Vec<i64> = s.mult.iter().map(|&m| m as i64).collect();
                    Cyclo::from_i64_coeffs(s.order as u64, &c)
                })
                .collect()
        })
        .collect();
    let table = CharacterTable {
        classes: cls,
        exponent: e,
        prime: p,
        degrees,
        spectra,
        values,
    };
    check_orthogonality(&table, group)?;
    Ok(table)
}

/// Sparse exponent representation of each value over `Z/e`.
fn sparse_values(table: &CharacterTable) -> Vec<Vec<Vec<(usize, i64)>>> {
    let e = table.exponent as usize;
    table
        .spectra
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    let step = e / s.order as usize;
                    s.mult
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m != 0)
                        .map(|(k, &m)| (k * step, m as i64))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn inner_is(acc: &[i64], e: u64, expected: i64) -> bool {
    let mut v = acc.to_vec();
    v[0] -= expected;
    root_sum_is_zero(e, &v)
}

/// Both orthogonality relations, checked exactly in `Z[ζ_e]`.
pub fn check_orthogonality(table: &CharacterTable, group: &FiniteGroup) -> Result<()> {
    let k = table.num_classes();
    if table.num_characters() != k {
        return Err(Error::Consistency("row count differs from class count".into()));
    }
    let n = group.order() as i64;
    let sum_sq: u64 = table.degrees.iter().map(|d| d * d).sum();
    if sum_sq != n as u64 {
        return Err(Error::Consistency(format!("sum of squared degrees is {sum_sq}, not {n}")));
    }
    let e = table.exponent as usize;
    let sv = sparse_values(table);
    let sizes = &table.classes.sizes;
    // rows: Σ_t |C_t| χ_i(g_t) conj(χ_j(g_t)) = |G| δ_ij
    let rows_ok = (0..k).into_par_iter().all(|i| {
        let mut acc = vec![0i64; e];
        (i..k).all(|j| {
            acc.iter_mut().for_each(|x| *x = 0);
            for t in 0..k {
                let w = sizes[t] as i64;
                for &(a, ma) in &sv[i][t] {
                    for &(b, mb) in &sv[j][t] {
                        acc[(a + e - b) % e] += w * ma * mb;
                    }
                }
            }
            inner_is(&acc, e as u64, if i == j { n } else { 0 })
        })
    });
    if !rows_ok {
        return Err(Error::Consistency("row orthogonality fails".into()));
    }
    // columns: Σ_i χ_i(g_s) conj(χ_i(g_t)) = |C_G(g_s)| δ_st
    let cols_ok = (0..k).into_par_iter().all(|s| {
        let mut acc = vec![0i64; e];
        (s..k).all(|t| {
            acc.iter_mut().for_each(|x| *x = 0);
            for row in &sv {
                for &(a, ma) in &row[s] {
                    for &(b, mb) in &row[t] {
                        acc[(a + e - b) % e] += ma * mb;
                    }
                }
            }
            inner_is(&acc, e as u64, if s == t { n / sizes[s] as i64 } else { 0 })
        })
    });
    if !cols_ok {
        return Err(Error::Consistency("column orthogonality fails".into()));
    }
    Ok(())
}

/// The vanishing set, its complement and the exact proportion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishReport {
    pub vanishing: Vec<Elem>,
    pub nonvanishing: Vec<Elem>,
    pub proportion: Rational,
}

impl VanishReport {
    pub fn from_table(group: &FiniteGroup, table: &CharacterTable) -> Self {
        Self::from_class_flags(group, &table.classes, &table.vanishing_classes())
    }

    fn from_class_flags(group: &FiniteGroup, cls: &ClassData, flags: &[bool]) -> Self {
        let mut vanishing = Vec::new();
        let mut nonvanishing = Vec::new();
        for x in 0..group.order() as Elem {
            if flags[cls.class_of[x as usize] as usize] {
                vanishing.push(x);
            } else {
                nonvanishing.push(x);
            }
        }
        let proportion = Rational::new(vanishing.len() as i64, group.order() as i64);
        VanishReport {
            vanishing,
            nonvanishing,
            proportion,
        }
    }

    pub fn is_vanishing(&self, x: Elem) -> bool {
        self.vanishing.binary_search(&x).is_ok()
    }
}

/// `P(G)` and `V(G)`. Abelian groups take the fast path (`V(G) = ∅`);
/// otherwise the Dixon table is computed.
pub fn proportion(group: &FiniteGroup) -> Result<VanishReport> {
    if group.is_abelian() {
        return Ok(VanishReport {
            vanishing: Vec::new(),
            nonvanishing: (0..group.order() as Elem).collect(),
            proportion: Rational::from_integer(0),
        });
    }
    let table = dixon_table(group)?;
    Ok(VanishReport::from_table(group, &table))
}

/// `P(G/N)` computed from the table of `G`: the irreducible characters of
/// `G/N` are those of `G` whose kernel contains `N`.
pub fn quotient_proportion(group: &FiniteGroup, table: &CharacterTable, n: &Subgroup) -> Rational {
    let cls = &table.classes;
    let chars: Vec<usize> = (0..table.num_characters())
        .filter(|&i| {
            let ker = table.kernel_classes(i);
            n.elements().iter().all(|&x| ker[cls.class_of[x as usize] as usize])
        })
        .collect();
    let flags = table.vanishing_classes_among(&chars);
    let count: usize = (0..cls.len()).filter(|&t| flags[t]).map(|t| cls.sizes[t]).sum();
    Rational::new(count as i64, group.order() as i64)
}

/// Whether `gN` vanishes in `G/N`, from the table of `G`.
pub fn vanishes_in_quotient(table: &CharacterTable, n: &Subgroup, g: Elem) -> bool {
    let cls = &table.classes;
    let t = cls.class_of[g as usize] as usize;
    (0..table.num_characters()).any(|i| {
        let ker = table.kernel_classes(i);
        n.elements().iter().all(|&x| ker[cls.class_of[x as usize] as usize]) && table.is_zero(i, t)
    })
}

/// Normal subgroups of `G` as unions of classes: all intersections of kernels
/// of irreducible characters. Gives up (returns `None`) past `cap` subgroups.
pub fn normal_subgroups(table: &CharacterTable, cap: usize) -> Option<Vec<Vec<bool>>> {
    let kernels: Vec<Vec<bool>> = (0..table.num_characters()).map(|i| table.kernel_classes(i)).collect();
    let mut found: Vec<Vec<bool>> = vec![vec![true; table.num_classes()]];
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for k in &kernels {
                let meet: Vec<bool> = s.iter().zip(k).map(|(a, b)| *a && *b).collect();
                if !found.contains(&meet) {
                    found.push(meet.clone());
                    next.push(meet);
                    if found.len() > cap {
                        return None;
                    }
                }
            }
        }
        frontier = next;
    }
    Some(found)
}

/// `α^G(a) = Σ_t α(a^t)` over a right transversal of `A` in `G`.
pub fn induced_linear_value(
    alpha: &DualCharacter,
    a: &AbElement,
    group: &FiniteGroup,
    view: &AbelianView,
    transversal: &[Elem],
) -> Result<Cyclo> {
    if !view.group.contains(a) || alpha.group != view.group {
        return Err(Error::domain("element or character does not belong to A"));
    }
    let x = view.element(a);
    let e = view.group.exponent() as usize;
    let mut counts = vec![0i64; e];
    for &t in transversal {
        let c = view
            .coords(group.conj(x, t))
            .ok_or_else(|| Error::domain("A is not normal: a conjugate left A"))?;
        counts[alpha.value_exponent(c) as usize] += 1;
    }
    Ok(Cyclo::from_i64_coeffs(e as u64, &counts))
}

/// `V(G) ∩ A` for an abelian normal subgroup `A`: the elements `a` with
/// `α^G(a) = 0` for some `α ∈ Irr(A)`.
pub fn vanish_on_abelian_normal(group: &FiniteGroup, a: &Subgroup) -> Result<Vec<Elem>> {
    if !group.is_normal(a) {
        return Err(Error::domain("A is not normal"));
    }
    let view = group.abelian_view(a)?;
    let transversal = group.right_transversal(a);
    let ab = &view.group;
    let e = ab.exponent() as usize;
    let chars: Vec<AbElement> = ab.elements().collect();
    let mut out: Vec<Elem> = a
        .elements()
        .par_iter()
        .filter_map(|&x| {
            let conjs: Vec<&AbElement> = transversal
                .iter()
                .map(|&t| view.coords(group.conj(x, t)).expect("A normal"))
                .collect();
            let mut counts = vec![0i64; e];
            let vanishes = chars.iter().any(|alpha| {
                counts.iter_mut().for_each(|c| *c = 0);
                for c in &conjs {
                    let mut k = 0usize;
                    for ((ai, ci), &d) in alpha.coords.iter().zip(&c.coords).zip(ab.factors()) {
                        k += (*ai as usize * *ci as usize % d as usize) * (e / d as usize);
                    }
                    counts[k % e] += 1;
                }
                root_sum_is_zero(e as u64, &counts)
            });
            vanishes.then_some(x)
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}
