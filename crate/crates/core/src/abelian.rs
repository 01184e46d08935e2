//! Finite abelian groups `C_{d_1} × … × C_{d_r}`, their duals and subgroups.
//!
//! Groups are written additively. An element is an exponent vector against
//! the declared factor list, and the dual group `Â` is identified with `A`
//! through the same factors: the vector `α` is the character
//! `a ↦ ∏_i ζ_{d_i}^{α_i a_i}`.
//!
//! A subgroup `B ≤ A` is stored as its preimage lattice `L ⊆ Z^r`, which
//! always contains `diag(d) Z^r`, in canonical Hermite normal form. Equality
//! of subgroups is equality of the normal forms, and annihilators are computed
//! by exact lattice duality instead of by enumerating characters.

use std::fmt;

use num_integer::Integer;

use crate::arith::{factorize, lcm, prime_divisors, rem};
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};

/// `C_{d_1} × … × C_{d_r}` with every `d_i ≥ 2`; the trivial group has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// An element of an [`AbelianGroup`], coordinates reduced into `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbElement {
    pub coords: Vec<i64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::domain(format!("cyclic factor of order {d}; factors must be at least 2")));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    /// Parses `C8xC8`, `c4xC2xC2` or `1` (the trivial group). `C1` factors
    /// are accepted and dropped.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "1" || t.is_empty() {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for part in t.split(['x', 'X']) {
            let part = part.trim();
            let digits = part
                .strip_prefix('C')
                .or_else(|| part.strip_prefix('c'))
                .ok_or_else(|| Error::domain(format!("expected a factor like C8, found `{part}`")))?;
            let d: u64 = digits
                .parse()
                .map_err(|_| Error::domain(format!("bad cyclic order `{digits}`")))?;
            match d {
                0 => return Err(Error::domain("cyclic factor C0")),
                1 => {}
                _ => factors.push(d),
            }
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |e, &d| lcm(e, d))
    }

    /// The largest `p`-rank over all primes `p`, i.e. the minimal number of
    /// generators. For a `p`-group this is the number of cyclic factors of
    /// its primary decomposition.
    pub fn rank(&self) -> usize {
        AbSubgroup::whole(self).rank()
    }

    /// `Some(p)` when the group is a nontrivial `p`-group.
    pub fn prime(&self) -> Option<u64> {
        let primes = prime_divisors(self.order());
        (primes.len() == 1).then(|| primes[0])
    }

    pub fn zero(&self) -> AbElement {
        AbElement {
            coords: vec![0; self.factors.len()],
        }
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> AbElement {
        let mut e = self.zero();
        e.coords[i] = 1;
        e
    }

    pub fn element(&self, coords: &[i64]) -> Result<AbElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::domain(format!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.factors.len()
            )));
        }
        Ok(self.reduce(coords.to_vec()))
    }

    pub(crate) fn reduce(&self, mut coords: Vec<i64>) -> AbElement {
        for (c, &d) in coords.iter_mut().zip(&self.factors) {
            *c = rem(*c, d as i64);
        }
        AbElement { coords }
    }

    pub fn contains(&self, a: &AbElement) -> bool {
        a.coords.len() == self.factors.len()
            && a.coords.iter().zip(&self.factors).all(|(&c, &d)| 0 <= c && c < d as i64)
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &AbElement, b: &AbElement) -> AbElement {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &AbElement) -> AbElement {
        self.reduce(a.coords.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, k: i64, a: &AbElement) -> AbElement {
        self.reduce(a.coords.iter().map(|x| x * k).collect())
    }

    pub fn element_order(&self, a: &AbElement) -> u64 {
        a.coords
            .iter()
            .zip(&self.factors)
            .fold(1, |o, (&c, &d)| lcm(o, d / (c as u64).gcd(&d)))
    }

    /// Mixed-radix index of an element, the first coordinate varying fastest.
    pub fn index_of(&self, a: &AbElement) -> usize {
        let mut idx = 0usize;
        for (c, &d) in a.coords.iter().zip(&self.factors).rev() {
            idx = idx * d as usize + *c as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> AbElement {
        let mut coords = Vec::with_capacity(self.factors.len());
        for &d in &self.factors {
            coords.push((idx % d as usize) as i64);
            idx /= d as usize;
        }
        AbElement { coords }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = AbElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    pub fn format_element(&self, a: &AbElement) -> String {
        let parts: Vec<String> = a.coords.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("C{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Primary decomposition sorted by prime, then by descending prime power.
///
/// Isomorphic inputs give identical outputs, so this is the isomorphism test
/// for abelian groups.
pub fn canonical_decomposition(a: &AbelianGroup) -> AbelianGroup {
    AbSubgroup::whole(a).isomorphism_type()
}

/// A homomorphism between abelian groups given by the images of the
/// standard generators of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: AbelianGroup,
    target: AbelianGroup,
    images: Vec<AbElement>,
}

impl AbHom {
    /// Checks that `d_j · images[j] = 0` for every source factor `d_j`.
    pub fn new(source: AbelianGroup, target: AbelianGroup, images: Vec<AbElement>) -> Result<Self> {
        if images.len() != source.num_factors() {
            return Err(Error::domain(format!(
                "homomorphism needs {} images, got {}",
                source.num_factors(),
                images.len()
            )));
        }
        let images: Vec<AbElement> = images
            .into_iter()
            .map(|im| target.element(&im.coords))
            .collect::<Result<_>>()?;
        for (j, (im, &d)) in images.iter().zip(source.factors()).enumerate() {
            if target.scale(d as i64, im) != target.zero() {
                return Err(Error::domain(format!(
                    "generator {j} has order {d} but its image {} does not",
                    target.format_element(im)
                )));
            }
        }
        Ok(AbHom { source, target, images })
    }

    /// Builds an endomorphism from an integer matrix whose row `j` is the
    /// image of generator `j`.
    pub fn from_matrix(group: &AbelianGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let images = rows
            .iter()
            .map(|r| group.element(r))
            .collect::<Result<Vec<_>>>()?;
        AbHom::new(group.clone(), group.clone(), images)
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        let images = (0..group.num_factors()).map(|i| group.generator(i)).collect();
        AbHom {
            source: group.clone(),
            target: group.clone(),
            images,
        }
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn images(&self) -> &[AbElement] {
        &self.images
    }

    pub fn apply(&self, a: &AbElement) -> AbElement {
        let r = self.target.num_factors();
        let mut out = vec![0i64; r];
        for (c, im) in a.coords.iter().zip(&self.images) {
            if *c != 0 {
                for k in 0..r {
                    out[k] += c * im.coords[k];
                }
            }
        }
        self.target.reduce(out)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &AbHom) -> Result<AbHom> {
        if other.target != self.source {
            return Err(Error::domain("composition of incompatible homomorphisms"));
        }
        let images = other.images.iter().map(|im| self.apply(im)).collect();
        Ok(AbHom {
            source: other.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// Pointwise sum (or difference with `sign = -1`) of two homomorphisms.
    pub fn combine(&self, other: &AbHom, sign: i64) -> Result<AbHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::domain("pointwise sum of incompatible homomorphisms"));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| self.target.add(a, &self.target.scale(sign, b)))
            .collect();
        Ok(AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn image(&self) -> AbSubgroup {
        AbSubgroup::generated_unchecked(&self.target, self.images.clone())
    }

    /// `ker f = (im f*)^⊥` where `f*: Â' → Â` is the dual map.
    pub fn kernel(&self) -> AbSubgroup {
        let src = self.source.factors();
        let tgt = self.target.factors();
        let gens: Vec<AbElement> = (0..tgt.len())
            .map(|k| {
                let coords = (0..src.len())
                    .map(|j| (src[j] as i64 * self.images[j].coords[k]) / tgt[k] as i64)
                    .collect();
                self.source.reduce(coords)
            })
            .collect();
        AbSubgroup::generated_unchecked(&self.source, gens).perp()
    }

    pub fn is_automorphism(&self) -> bool {
        self.is_endomorphism() && self.kernel().order() == 1
    }

    /// `f^k` for an endomorphism, `k ≥ 0`.
    pub fn power(&self, k: u64) -> AbHom {
        let mut acc = AbHom::identity(&self.source);
        for _ in 0..k {
            acc = self.compose(&acc).expect("endomorphism");
        }
        acc
    }

    /// Multiplicative order of an automorphism.
    pub fn automorphism_order(&self) -> Result<u64> {
        if !self.is_automorphism() {
            return Err(Error::domain("not an automorphism"));
        }
        let id = AbHom::identity(&self.source);
        let mut acc = self.clone();
        let mut k = 1;
        while acc != id {
            acc = self.compose(&acc)?;
            k += 1;
        }
        Ok(k)
    }

    pub fn inverse(&self) -> Result<AbHom> {
        let k = self.automorphism_order()?;
        Ok(self.power(k - 1))
    }

    /// The induced action on the dual group, `α ↦ α^x` with
    /// `(α^x)(a) = α(a^{x⁻¹})`, as an endomorphism of `Â` (identified with `A`).
    pub fn dual_action(&self) -> Result<AbHom> {
        let inv = self.inverse()?;
        // (α ∘ x⁻¹)_j = Σ_k α_k · d_j · M[j][k] / d_k  with M the matrix of x⁻¹;
        // the image of the dual generator e_k therefore has entries d_j M[j][k] / d_k.
        let d = self.source.factors();
        let images = (0..d.len())
            .map(|k| {
                let coords = (0..d.len())
                    .map(|j| d[j] as i64 * inv.images[j].coords[k] / d[k] as i64)
                    .collect();
                self.source.reduce(coords)
            })
            .collect();
        AbHom::new(self.source.clone(), self.source.clone(), images)
    }
}

/// An element of `Â`, the character `a ↦ ∏_i ζ_{d_i}^{coords[i]·a_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualCharacter {
    pub group: AbelianGroup,
    pub coords: AbElement,
}

impl DualCharacter {
    pub fn new(group: &AbelianGroup, coords: &[i64]) -> Result<Self> {
        Ok(DualCharacter {
            group: group.clone(),
            coords: group.element(coords)?,
        })
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        DualCharacter {
            group: group.clone(),
            coords: group.zero(),
        }
    }

    /// Exponent `k` with `α(a) = ζ_e^k`, where `e = exp(A)`.
    pub fn value_exponent(&self, a: &AbElement) -> u64 {
        let e = self.group.exponent();
        let mut k = 0u64;
        for ((c, x), &d) in self.coords.coords.iter().zip(&a.coords).zip(self.group.factors()) {
            let step = e / d;
            k = (k + (*c as u64 * *x as u64 % d) * step) % e;
        }
        k
    }

    pub fn value(&self, a: &AbElement) -> Cyclo {
        Cyclo::root_of_unity(self.group.exponent(), self.value_exponent(a) as i64)
            .expect("exponent is positive")
    }

    pub fn mul(&self, other: &DualCharacter) -> DualCharacter {
        DualCharacter {
            group: self.group.clone(),
            coords: self.group.add(&self.coords, &other.coords),
        }
    }

    /// `α^x`, defined by `(α^x)(a) = α(a^{x⁻¹})`.
    pub fn act(&self, x: &AbHom) -> Result<DualCharacter> {
        let dual = x.dual_action()?;
        Ok(DualCharacter {
            group: self.group.clone(),
            coords: dual.apply(&self.coords),
        })
    }
}

/// A subgroup of an [`AbelianGroup`] (or, via the identification, of its dual).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbSubgroup {
    parent: AbelianGroup,
    /// Upper-triangular canonical basis of the preimage lattice; row `j` has
    /// pivot `hnf[j][j]`, a positive divisor of `d_j`.
    hnf: Vec<Vec<i64>>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

impl AbSubgroup {
    /// The subgroup generated by `gens`; every generator must lie in `parent`.
    pub fn generated(parent: &AbelianGroup, gens: &[AbElement]) -> Result<Self> {
        for g in gens {
            if !parent.contains(g) {
                return Err(Error::domain(format!(
                    "generator {:?} is not an element of {parent}",
                    g.coords
                )));
            }
        }
        Ok(Self::generated_unchecked(parent, gens.to_vec()))
    }

    pub(crate) fn generated_unchecked(parent: &AbelianGroup, gens: Vec<AbElement>) -> Self {
        let d: Vec<i64> = parent.factors().iter().map(|&x| x as i64).collect();
        let r = d.len();
        let mut rows: Vec<Vec<i64>> = gens
            .into_iter()
            .map(|g| g.coords.iter().zip(&d).map(|(c, m)| rem(*c, *m)).collect())
            .filter(|v: &Vec<i64>| v.iter().any(|&x| x != 0))
            .collect();
        let mut hnf = vec![vec![0i64; r]; r];
        for j in 0..r {
            let mut fresh = vec![0i64; r];
            fresh[j] = d[j];
            rows.push(fresh);
            let mut pivot: Option<Vec<i64>> = None;
            let mut rest = Vec::with_capacity(rows.len());
            for mut row in rows.drain(..) {
                if row[j] == 0 {
                    rest.push(row);
                    continue;
                }
                match pivot.take() {
                    None => pivot = Some(row),
                    Some(mut p) => {
                        let (a, b) = (p[j], row[j]);
                        let (g, s, t) = ext_gcd(a, b);
                        let (fa, fb) = (a / g, b / g);
                        for k in j..r {
                            let (pk, rk) = (p[k], row[k]);
                            p[k] = s * pk + t * rk;
                            row[k] = fa * rk - fb * pk;
                            if k > j {
                                p[k] = rem(p[k], d[k]);
                                row[k] = rem(row[k], d[k]);
                            }
                        }
                        debug_assert_eq!(row[j], 0);
                        if row.iter().any(|&x| x != 0) {
                            rest.push(row);
                        }
                        pivot = Some(p);
                    }
                }
            }
            let mut p = pivot.expect("d_j e_j guarantees a pivot");
            if p[j] < 0 {
                for x in p.iter_mut() {
                    *x = -*x;
                }
                for k in j + 1..r {
                    p[k] = rem(p[k], d[k]);
                }
            }
            hnf[j] = p;
            rows = rest;
        }
        // Canonical reduction of the entries above each pivot.
        for j in 0..r {
            let pj = hnf[j][j];
            let pivot_row = hnf[j].clone();
            for row in hnf.iter_mut().take(j) {
                let q = row[j].div_euclid(pj);
                if q != 0 {
                    for k in j..r {
                        row[k] -= q * pivot_row[k];
                    }
                    for k in j + 1..r {
                        row[k] = rem(row[k], d[k]);
                    }
                }
            }
        }
        AbSubgroup {
            parent: parent.clone(),
            hnf,
        }
    }

    pub fn whole(parent: &AbelianGroup) -> Self {
        let gens: Vec<AbElement> = (0..parent.num_factors()).map(|i| parent.generator(i)).collect();
        Self::generated_unchecked(parent, gens)
    }

    pub fn trivial(parent: &AbelianGroup) -> Self {
        Self::generated_unchecked(parent, Vec::new())
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn pivots(&self) -> Vec<i64> {
        (0..self.hnf.len()).map(|j| self.hnf[j][j]).collect()
    }

    pub fn order(&self) -> u64 {
        self.parent
            .factors()
            .iter()
            .zip(self.pivots())
            .map(|(&d, p)| d / p as u64)
            .product()
    }

    pub fn contains(&self, a: &AbElement) -> bool {
        if !self.parent.contains(a) {
            return false;
        }
        let d = self.parent.factors();
        let mut v = a.coords.clone();
        for j in 0..v.len() {
            let pj = self.hnf[j][j];
            if v[j] % pj != 0 {
                return false;
            }
            let q = v[j] / pj;
            if q != 0 {
                for k in j..v.len() {
                    v[k] = rem(v[k] - q * self.hnf[j][k], d[k] as i64);
                }
            }
        }
        true
    }

    /// A generating set (the nontrivial rows of the normal form).
    pub fn generators(&self) -> Vec<AbElement> {
        self.hnf
            .iter()
            .map(|row| self.parent.reduce(row.clone()))
            .filter(|e| e.coords.iter().any(|&c| c != 0))
            .collect()
    }

    pub fn elements(&self) -> Vec<AbElement> {
        let d = self.parent.factors();
        let counts: Vec<u64> = d.iter().zip(self.pivots()).map(|(&d, p)| d / p as u64).collect();
        let mut out = vec![self.parent.zero()];
        for (j, &c) in counts.iter().enumerate() {
            if c == 1 {
                continue;
            }
            let h = self.parent.reduce(self.hnf[j].clone());
            let mut next = Vec::with_capacity(out.len() * c as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..c {
                    next.push(cur.clone());
                    cur = self.parent.add(&cur, &h);
                }
            }
            out = next;
        }
        out
    }

    pub fn exponent(&self) -> u64 {
        self.generators()
            .iter()
            .fold(1, |e, g| lcm(e, self.parent.element_order(g)))
    }

    pub fn is_subgroup_of(&self, other: &AbSubgroup) -> bool {
        self.parent == other.parent && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &AbSubgroup) -> AbSubgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Self::generated_unchecked(&self.parent, gens)
    }

    pub fn intersection(&self, other: &AbSubgroup) -> AbSubgroup {
        self.perp().sum(&other.perp()).perp()
    }

    /// `n·B`.
    pub fn scaled(&self, n: i64) -> AbSubgroup {
        let gens = self.generators().iter().map(|g| self.parent.scale(n, g)).collect();
        Self::generated_unchecked(&self.parent, gens)
    }

    /// The annihilator `B^⊥ = {α ∈ Â : α(b) = 1 for all b ∈ B}`.
    pub fn perp(&self) -> AbSubgroup {
        let d: Vec<i128> = self.parent.factors().iter().map(|&x| x as i128).collect();
        let r = d.len();
        // Solve X·H = diag(d) by forward substitution; B^⊥ is spanned by the
        // columns of X.
        let mut x = vec![vec![0i128; r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut acc = if i == j { d[i] } else { 0 };
                for k in 0..j {
                    acc -= x[i][k] * self.hnf[k][j] as i128;
                }
                let pj = self.hnf[j][j] as i128;
                debug_assert_eq!(acc % pj, 0);
                x[i][j] = acc / pj;
            }
        }
        let gens = (0..r)
            .map(|j| {
                let coords = (0..r).map(|i| x[i][j].rem_euclid(d[i]) as i64).collect();
                AbElement { coords }
            })
            .collect();
        Self::generated_unchecked(&self.parent, gens)
    }

    /// Annihilator of a subgroup of `Â` inside `A`. The pairing is symmetric
    /// under the identification, so this agrees with [`AbSubgroup::perp`].
    pub fn perp_dual(&self) -> AbSubgroup {
        self.perp()
    }

    /// Isomorphism type in canonical primary form.
    pub fn isomorphism_type(&self) -> AbelianGroup {
        let order = self.order();
        let mut factors = Vec::new();
        for (p, _) in factorize(order) {
            let coprime = self.exponent() / p_part(self.exponent(), p);
            let mut layer = self.scaled(coprime as i64);
            let mut sizes = vec![layer.order()];
            while layer.order() > 1 {
                layer = layer.scaled(p as i64);
                sizes.push(layer.order());
            }
            // sizes[i] = |p^i B_p|; the number of cyclic factors of order
            // exactly p^i is log_p(sizes[i-1]/sizes[i]) - log_p(sizes[i]/sizes[i+1]).
            let at_least: Vec<u32> = sizes
                .windows(2)
                .map(|w| log_p(w[0] / w[1], p))
                .collect();
            for i in (0..at_least.len()).rev() {
                let exactly = at_least[i] - at_least.get(i + 1).copied().unwrap_or(0);
                for _ in 0..exactly {
                    factors.push(p.pow(i as u32 + 1));
                }
            }
        }
        AbelianGroup { factors }
    }

    /// Maximal `p`-rank of the subgroup.
    pub fn rank(&self) -> usize {
        let t = self.isomorphism_type();
        let mut best = 0;
        for p in prime_divisors(t.order()) {
            best = best.max(t.factors().iter().filter(|&&d| d % p == 0).count());
        }
        best
    }

    /// The subgroup as an abstract group together with the inclusion map.
    pub fn as_group(&self) -> (AbelianGroup, AbHom) {
        let ty = self.isomorphism_type();
        // Realise the inclusion through a basis adapted to the type.
        let basis = adapted_basis(self, &ty);
        let hom = AbHom {
            source: ty.clone(),
            target: self.parent.clone(),
            images: basis,
        };
        (ty, hom)
    }
}

fn p_part(n: u64, p: u64) -> u64 {
    let mut q = 1;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        q *= p;
    }
    q
}

fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// Independent elements of `sub` whose orders are the factors of `ty`.
fn adapted_basis(sub: &AbSubgroup, ty: &AbelianGroup) -> Vec<AbElement> {
    let parent = &sub.parent;
    let elements = sub.elements();
    let mut chosen: Vec<AbElement> = Vec::new();
    let mut span = AbSubgroup::trivial(parent);
    for &target in ty.factors() {
        // Pick an element of the required order meeting the current span
        // trivially; the greedy choice succeeds because factors are visited
        // prime by prime in descending order.
        let found = elements.iter().find(|e| {
            parent.element_order(e) == target && {
                let cyc = AbSubgroup::generated_unchecked(parent, vec![(*e).clone()]);
                cyc.intersection(&span).order() == 1
            }
        });
        let e = found.expect("adapted basis exists").clone();
        span = span.sum(&AbSubgroup::generated_unchecked(parent, vec![e.clone()]));
        chosen.push(e);
    }
    chosen
}

fn check_involution(y: &AbHom) -> Result<()> {
    if !y.is_endomorphism() {
        return Err(Error::domain("commutator map needs an endomorphism"));
    }
    if y.compose(y)? != AbHom::identity(y.source()) {
        return Err(Error::domain("y is not an involution"));
    }
    Ok(())
}

/// `γ(a) = [a, y] = -a + a^y`; returns `([A, y], C_A(y))` = `(im γ, ker γ)`.
pub fn commutator_map(a: &AbelianGroup, y: &AbHom) -> Result<(AbSubgroup, AbSubgroup)> {
    if y.source() != a {
        return Err(Error::domain("y does not act on the given group"));
    }
    check_involution(y)?;
    let gamma = y.combine(&AbHom::identity(a), -1)?;
    Ok((gamma.image(), gamma.kernel()))
}

/// `Ω_i(A) = {a : p^i a = 0}` for a `p`-group `A`.
pub fn omega(a: &AbelianGroup, i: u32) -> Result<AbSubgroup> {
    if a.order() == 1 {
        return Ok(AbSubgroup::trivial(a));
    }
    let p = a
        .prime()
        .ok_or_else(|| Error::domain(format!("{a} is not a p-group")))?;
    let gens = a
        .factors()
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            let e = log_p(d, p);
            let mult = p.pow(e.saturating_sub(i));
            let mut g = a.zero();
            g.coords[j] = rem(mult as i64, d as i64);
            g
        })
        .collect();
    Ok(AbSubgroup::generated_unchecked(a, gens))
}

/// The smallest subgroup containing `x` and closed under every map in `acting`.
pub fn generated_submodule(group: &AbelianGroup, x: &AbElement, acting: &[AbHom]) -> Result<AbSubgroup> {
    for f in acting {
        if f.source() != group || !f.is_automorphism() {
            return Err(Error::domain("acting map is not an automorphism of the group"));
        }
    }
    let mut sub = AbSubgroup::generated(group, std::slice::from_ref(x))?;
    loop {
        let mut grew = false;
        for g in sub.generators() {
            for f in acting {
                let img = f.apply(&g);
                if !sub.contains(&img) {
                    sub = sub.sum(&AbSubgroup::generated_unchecked(group, vec![img]));
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(sub);
        }
    }
}

/// Whether a 2-group `Z` embeds in `C_4 × (C_2)^k` for some `k`: equivalently
/// `exp(Z) ≤ 4` and the subgroup of doubles has order at most 2.
pub fn embeds_in_c4_x_c2k(z: &AbSubgroup) -> bool {
    z.exponent() <= 4 && z.scaled(2).order() <= 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u64]) -> AbelianGroup {
        AbelianGroup::new(f.to_vec()).unwrap()
    }

    fn el(a: &AbelianGroup, c: &[i64]) -> AbElement {
        a.element(c).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let a = AbelianGroup::parse("c8xC8").unwrap();
        assert_eq!(a.factors(), &[8, 8]);
        assert_eq!(a.to_string(), "C8xC8");
        assert_eq!(AbelianGroup::parse("1").unwrap().order(), 1);
        assert!(AbelianGroup::parse("D8").is_err());
        assert!(AbelianGroup::new(vec![1]).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_decomposition(&g(&[6])).factors(), &[2, 3]);
        assert_eq!(canonical_decomposition(&g(&[4, 2])).factors(), &[4, 2]);
        let c = canonical_decomposition(&g(&[12, 2]));
        assert_eq!(c.factors(), &[4, 2, 3]);
        assert_eq!(c.exponent(), 12);
        assert_eq!(c.rank(), 2);
        assert_eq!(
            canonical_decomposition(&g(&[2, 4])),
            canonical_decomposition(&g(&[4, 2]))
        );
    }

    #[test]
    fn element_order_census_matches_type() {
        // C12 x C2 and C4 x C3 x C2 have the same order census.
        let census = |a: &AbelianGroup| {
            let mut v: Vec<u64> = a.elements().map(|e| a.element_order(&e)).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(census(&g(&[12, 2])), census(&g(&[4, 2, 3])));
    }

    #[test]
    fn perp_examples() {
        let a = g(&[4, 4]);
        assert_eq!(AbSubgroup::whole(&a).perp().order(), 1);
        assert_eq!(AbSubgroup::trivial(&a).perp().order(), 16);
        let o1 = omega(&a, 1).unwrap();
        let p = o1.perp();
        assert_eq!(p.order(), 4);
        // equals the squares of Â, checked by brute force over all characters
        let squares = AbSubgroup::whole(&a).scaled(2);
        assert_eq!(p, squares);
        for alpha in a.elements() {
            let chi = DualCharacter { group: a.clone(), coords: alpha.clone() };
            let kills = o1.elements().iter().all(|b| chi.value_exponent(b) == 0);
            assert_eq!(kills, p.contains(&alpha));
        }
    }

    #[test]
    fn commutator_map_examples() {
        let a = g(&[2, 2]);
        let swap = AbHom::from_matrix(&a, &[vec![0, 1], vec![1, 0]]).unwrap();
        let (im, ker) = commutator_map(&a, &swap).unwrap();
        let diag = AbSubgroup::generated(&a, &[el(&a, &[1, 1])]).unwrap();
        assert_eq!(im, diag);
        assert_eq!(ker, diag);

        let b = g(&[8, 8]);
        let swap8 = AbHom::from_matrix(&b, &[vec![0, 1], vec![1, 0]]).unwrap();
        let (im, ker) = commutator_map(&b, &swap8).unwrap();
        assert_eq!(im.isomorphism_type().factors(), &[8]);
        assert_eq!(ker.isomorphism_type().factors(), &[8]);
        assert_eq!(im.order() * ker.order(), 64);
        assert!(im.contains(&el(&b, &[1, 7])));
        assert!(ker.contains(&el(&b, &[1, 1])));

        let id = AbHom::identity(&b);
        let (im, ker) = commutator_map(&b, &id).unwrap();
        assert_eq!((im.order(), ker.order()), (1, 64));

        let not_inv = AbHom::from_matrix(&b, &[vec![0, 1], vec![7, 7]]).unwrap();
        assert!(commutator_map(&b, &not_inv).is_err());
    }

    #[test]
    fn omega_examples() {
        let a = g(&[8, 8]);
        assert_eq!(omega(&a, 1).unwrap().isomorphism_type().factors(), &[2, 2]);
        assert_eq!(omega(&a, 0).unwrap().order(), 1);
        assert_eq!(omega(&a, 5).unwrap().order(), 64);
        let b = g(&[8, 4, 2]);
        assert_eq!(omega(&b, 2).unwrap().isomorphism_type().factors(), &[4, 4, 2]);
        assert!(omega(&g(&[6]), 1).is_err());
    }

    #[test]
    fn submodule_examples() {
        let a = g(&[8, 8]);
        // x: (u, v) ↦ (v, -u - v), fixed-point-free of order 3
        let x = AbHom::from_matrix(&a, &[vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(x.automorphism_order().unwrap(), 3);
        let s = generated_submodule(&a, &el(&a, &[1, 0]), std::slice::from_ref(&x)).unwrap();
        assert_eq!(s.order(), 64);
        assert_eq!(s.rank(), 2);
        let t = generated_submodule(&a, &el(&a, &[4, 0]), std::slice::from_ref(&x)).unwrap();
        assert_eq!(t, omega(&a, 1).unwrap());
        let c = generated_submodule(&a, &el(&a, &[2, 0]), &[]).unwrap();
        assert_eq!(c.isomorphism_type().factors(), &[4]);
        let sing = AbHom::from_matrix(&a, &[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(generated_submodule(&a, &el(&a, &[1, 0]), &[sing]).is_err());
    }

    #[test]
    fn embedding_criterion() {
        let z2 = AbSubgroup::whole(&g(&[2]));
        assert!(embeds_in_c4_x_c2k(&z2));
        assert!(!embeds_in_c4_x_c2k(&AbSubgroup::whole(&g(&[4, 4]))));
        assert!(embeds_in_c4_x_c2k(&AbSubgroup::whole(&g(&[4, 2, 2]))));
        assert!(!embeds_in_c4_x_c2k(&AbSubgroup::whole(&g(&[8]))));
    }

    #[test]
    fn kernels_and_images() {
        let a = g(&[12, 6]);
        let f = AbHom::from_matrix(&a, &[vec![2, 3], vec![6, 0]]).unwrap();
        let ker = f.kernel();
        let brute: Vec<AbElement> = a.elements().filter(|e| f.apply(e) == a.zero()).collect();
        assert_eq!(ker.order() as usize, brute.len());
        assert!(brute.iter().all(|e| ker.contains(e)));
        assert_eq!(ker.order() * f.image().order(), a.order());
    }

    #[test]
    fn as_group_is_injective() {
        let a = g(&[8, 4, 6]);
        let b = AbSubgroup::generated(&a, &[el(&a, &[2, 1, 3]), el(&a, &[0, 2, 2])]).unwrap();
        let (ty, incl) = b.as_group();
        assert_eq!(incl.kernel().order(), 1);
        assert_eq!(incl.image(), b);
        assert_eq!(ty.order(), b.order());
    }

    #[test]
    fn dual_action_rule() {
        let a = g(&[8, 8]);
        let x = AbHom::from_matrix(&a, &[vec![0, 1], vec![-1, -1]]).unwrap();
        let xinv = x.inverse().unwrap();
        let alpha = DualCharacter::new(&a, &[3, 5]).unwrap();
        let ax = alpha.act(&x).unwrap();
        for e in a.elements() {
            assert_eq!(ax.value_exponent(&e), alpha.value_exponent(&xinv.apply(&e)));
        }
    }
}
