//! Exact arithmetic in rings of cyclotomic integers `Z[ζ_n]`.
//!
//! An element is stored in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`, i.e. as
//! an integer polynomial fully reduced modulo the `n`-th cyclotomic
//! polynomial. Because the reduction is canonical, zero-testing is a
//! coefficient check and no floating point is involved anywhere.
//!
//! Binary operations on elements of different orders lift both operands to
//! `Z[ζ_m]` with `m = lcm(n₁, n₂)` via `ζ_n = ζ_m^{m/n}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{euler_phi, lcm, prime_divisors};
use crate::error::{Error, Result};

fn poly_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (x^n - 1) / ∏_{d | n, d < n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_divide(&num, &den);
        }
    }
    let poly = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

/// Division of integer polynomials by a monic divisor, remainder asserted zero.
fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces a coefficient vector of arbitrary length modulo `x^n - 1` and then
/// modulo `Φ_n`, producing exactly `φ(n)` coefficients.
fn reduce<T>(n: u64, coeffs: Vec<T>) -> Vec<T>
where
    T: Clone + Zero + for<'a> std::ops::AddAssign<&'a T> + ScaledSub,
{
    let n_us = n as usize;
    let mut folded = vec![T::zero(); n_us];
    for (i, c) in coeffs.into_iter().enumerate() {
        if !c.is_zero() {
            folded[i % n_us] += &c;
        }
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..n_us).rev() {
        if folded[top].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut folded[top], T::zero());
        for (i, &pc) in phi.iter().enumerate().take(deg) {
            if pc != 0 {
                folded[top - deg + i].sub_scaled(&c, pc);
            }
        }
    }
    folded.truncate(deg);
    folded
}

/// `self -= c * k` for a small integer `k`; lets the reduction be shared by
/// machine and arbitrary-precision coefficients.
pub trait ScaledSub {
    fn sub_scaled(&mut self, c: &Self, k: i64);
}

impl ScaledSub for BigInt {
    fn sub_scaled(&mut self, c: &Self, k: i64) {
        *self -= c * k;
    }
}

impl ScaledSub for i64 {
    fn sub_scaled(&mut self, c: &Self, k: i64) {
        *self -= c * k;
    }
}

/// Decides whether `Σ_j counts[j] ζ_n^j` vanishes, using machine integers.
///
/// `counts` may have any length; index `j` stands for `ζ_n^j`.
pub fn root_sum_is_zero(n: u64, counts: &[i64]) -> bool {
    reduce(n, counts.to_vec()).iter().all(|c| *c == 0)
}

/// An exact element of `Z[ζ_n]`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl Cyclo {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        Cyclo {
            order,
            coeffs: vec![BigInt::zero(); euler_phi(order) as usize],
        }
    }

    pub fn from_int(value: i64) -> Self {
        Cyclo {
            order: 1,
            coeffs: vec![BigInt::from(value)],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("root of unity of order 0"));
        }
        let mut c = vec![0i64; n as usize];
        c[k.rem_euclid(n as i64) as usize] = 1;
        Ok(Self::from_i64_coeffs(n, &c))
    }

    /// `Σ_j coeffs[j] ζ_n^j`, reduced. The slice may have any length.
    pub fn from_i64_coeffs(n: u64, coeffs: &[i64]) -> Self {
        assert!(n >= 1);
        let reduced = reduce(n, coeffs.to_vec());
        Cyclo {
            order: n,
            coeffs: reduced.into_iter().map(BigInt::from).collect(),
        }
    }

    pub fn from_big_coeffs(n: u64, coeffs: Vec<BigInt>) -> Self {
        assert!(n >= 1);
        Cyclo {
            order: n,
            coeffs: reduce(n, coeffs),
        }
    }

    /// The `n` such that this value is stored in `Z[ζ_n]`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Returns the value as an integer when it is rational.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    /// Re-expresses the value in `Z[ζ_m]`; `m` must be a multiple of the order.
    pub fn lift(&self, m: u64) -> Self {
        assert!(
            m.is_multiple_of(self.order),
            "cannot lift Z[ζ_{}] into Z[ζ_{m}]",
            self.order
        );
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut c = vec![BigInt::zero(); m as usize];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i * step] = v.clone();
        }
        Cyclo {
            order: m,
            coeffs: reduce(m, c),
        }
    }

    /// Complex conjugation, `ζ_n ↦ ζ_n^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut c = vec![BigInt::zero(); n];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[(n - i) % n] = v.clone();
        }
        Cyclo {
            order: self.order,
            coeffs: reduce(self.order, c),
        }
    }

    /// Galois automorphism `ζ_n ↦ ζ_n^a` for `gcd(a, n) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.order as i64;
        let mut c = vec![BigInt::zero(); n as usize];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[(i as i64 * a).rem_euclid(n) as usize] += v;
        }
        Cyclo {
            order: self.order,
            coeffs: reduce(self.order, c),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn binary_lift(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        let m = lcm(a.order, b.order);
        (a.lift(m), b.lift(m))
    }

    /// Floating-point evaluation with `ζ_n = e^{2πi/n}`; for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * i as f64 / self.order as f64;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Finds `k` with `self = ζ_n^k`, if the value is an `n`-th root of unity.
    pub fn root_exponent(&self, n: u64) -> Option<u64> {
        if !n.is_multiple_of(self.order) {
            // A root of unity of order dividing n lives in Z[ζ_n]; lift first.
            let m = lcm(n, self.order);
            let lifted = self.lift(m);
            return (0..n)
                .find(|&k| lifted == Cyclo::root_of_unity(n, k as i64).unwrap())
                .filter(|_| true);
        }
        let lifted = self.lift(n);
        let mut nonzero = lifted.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        // Fast path: a single basis monomial.
        if let (Some((i, c)), None) = (nonzero.next(), nonzero.next()) {
            if c.is_one() {
                return Some(i as u64);
            }
        }
        (0..n).find(|&k| lifted == Cyclo::root_of_unity(n, k as i64).unwrap())
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyclo::binary_lift(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::binary_lift(self, rhs);
        Cyclo {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::binary_lift(self, rhs);
        Cyclo {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::binary_lift(self, rhs);
        let mut prod = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclo {
            order: a.order,
            coeffs: reduce(a.order, prod),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl fmt::Display for Cyclo {
    /// Renders e.g. `z8^3 - z8 + 2`, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, i),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Necessary condition for a vanishing sum of `n_terms` roots of unity in
/// `U_m`: `n_terms` must be a non-negative integer combination of the
/// distinct primes dividing `m`.
///
/// A `false` answer proves that no such vanishing sum exists.
pub fn vanishing_sum_possible(n_terms: u64, m: u64) -> bool {
    let primes = if m <= 1 { Vec::new() } else { prime_divisors(m) };
    let n = n_terms as usize;
    let mut reachable = vec![false; n + 1];
    reachable[0] = true;
    for k in 1..=n {
        reachable[k] = primes
            .iter()
            .any(|&p| (p as usize) <= k && reachable[k - p as usize]);
    }
    reachable[n]
}

/// The set `Δ = {δ_i}` of ratios `δ_i = ε̄_i η_i` when every `δ_i` has order at
/// most 4 and some `ε_i` has order at least 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeltaShape {
    /// `Δ = {ζ_4, -1}`
    IAndMinusOne,
    /// `Δ = {-ζ_4, -1}`
    MinusIAndMinusOne,
}

/// Outcome of [`six_sum_classifier`].
///
/// The named variants are predictions read off the exponents without
/// evaluating `Σ`:
///
/// * `NonzeroRealRatios`: every `δ_i = ε̄_i η_i` is `±1`;
/// * `ZeroSmallOrderShape` / `NonzeroSmallOrder`: `n ≤ 2`, where `Σ = 0`
///   exactly for `{ε_i} = {1, ζ_4, -ζ_4}`, `{η_i} = {1, -1, -1}` (or the
///   roles swapped);
/// * `ZeroDeltaShape` / `NonzeroDeltaShape`: every `δ_i` has order at most 4
///   and some `ε_i` has order at least 8, so `Σ = 0` forces `Δ` to be one of
///   the two [`DeltaShape`]s.
///
/// `Zero`/`Nonzero` are decided by exact evaluation when none of these
/// applies, or when the `Δ` shape alone does not decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SixSumVerdict {
    NonzeroRealRatios,
    ZeroSmallOrderShape,
    NonzeroSmallOrder,
    ZeroDeltaShape(DeltaShape),
    NonzeroDeltaShape,
    Zero,
    Nonzero,
}

impl SixSumVerdict {
    /// Whether the verdict asserts `Σ = 0`.
    pub fn claims_zero(self) -> bool {
        matches!(
            self,
            SixSumVerdict::ZeroSmallOrderShape | SixSumVerdict::ZeroDeltaShape(_) | SixSumVerdict::Zero
        )
    }
}

/// Classifies `Σ = ε₁+ε₂+ε₃+η₁+η₂+η₃` for roots of unity in `U_{2^n}` given
/// by exponents (`ε_i = ζ_{2^n}^{eps[i]}`), subject to `ε₁ε₂ε₃ = η₁η₂η₃ = 1`.
pub fn six_sum_classifier_exponents(n: u32, eps: [u64; 3], eta: [u64; 3]) -> Result<SixSumVerdict> {
    if n == 0 || n > 20 {
        return Err(Error::domain(format!("six-sum classifier needs 1 <= n <= 20, got {n}")));
    }
    let m = 1u64 << n;
    let eps = eps.map(|e| e % m);
    let eta = eta.map(|e| e % m);
    if eps.iter().sum::<u64>() % m != 0 || eta.iter().sum::<u64>() % m != 0 {
        return Err(Error::precondition(
            "constraint (*) violated: need ε₁ε₂ε₃ = 1 and η₁η₂η₃ = 1",
        ));
    }
    let order = |k: u64| m / crate::arith::gcd(k, m);
    // δ_i = conj(ε_i) η_i
    let delta: Vec<u64> = (0..3).map(|i| (eta[i] + m - eps[i]) % m).collect();

    if delta.iter().all(|&d| order(d) <= 2) {
        return Ok(SixSumVerdict::NonzeroRealRatios);
    }

    if n <= 2 {
        // The only zero shape: {ε_i} = {1, ζ₄, -ζ₄} and {η_i} = {1, -1, -1},
        // with the roles of ε and η exchangeable.
        let q = m / 4; // exponent of ζ_4 in U_{2^n}; only meaningful for n = 2
        let shape = |a: [u64; 3], b: [u64; 3]| -> bool {
            if n < 2 {
                return false;
            }
            let mut a = a.to_vec();
            a.sort_unstable();
            let mut b = b.to_vec();
            b.sort_unstable();
            a == {
                let mut v = vec![0, q, 3 * q];
                v.sort_unstable();
                v
            } && b == vec![0, 2 * q, 2 * q]
        };
        return Ok(if shape(eps, eta) || shape(eta, eps) {
            SixSumVerdict::ZeroSmallOrderShape
        } else {
            SixSumVerdict::NonzeroSmallOrder
        });
    }

    let sigma_zero = || {
        let mut counts = vec![0i64; m as usize];
        for &e in eps.iter().chain(eta.iter()) {
            counts[e as usize] += 1;
        }
        root_sum_is_zero(m, &counts)
    };

    if delta.iter().all(|&d| order(d) <= 4) && eps.iter().any(|&e| order(e) >= 8) {
        let q = m / 4;
        let mut set: Vec<u64> = delta.clone();
        set.sort_unstable();
        set.dedup();
        let shape = if set == vec![q, 2 * q] {
            Some(DeltaShape::IAndMinusOne)
        } else if set == vec![2 * q, 3 * q] {
            Some(DeltaShape::MinusIAndMinusOne)
        } else {
            None
        };
        return Ok(match shape {
            None => SixSumVerdict::NonzeroDeltaShape,
            Some(s) if sigma_zero() => SixSumVerdict::ZeroDeltaShape(s),
            Some(_) => SixSumVerdict::Nonzero,
        });
    }

    Ok(if sigma_zero() {
        SixSumVerdict::Zero
    } else {
        SixSumVerdict::Nonzero
    })
}

/// [`six_sum_classifier_exponents`] on explicit cyclotomic values.
pub fn six_sum_classifier(n: u32, eps: &[Cyclo; 3], eta: &[Cyclo; 3]) -> Result<SixSumVerdict> {
    if n == 0 || n > 20 {
        return Err(Error::domain(format!("six-sum classifier needs 1 <= n <= 20, got {n}")));
    }
    let m = 1u64 << n;
    let exp = |v: &Cyclo| {
        v.root_exponent(m)
            .ok_or_else(|| Error::precondition(format!("{v} is not a {m}-th root of unity")))
    };
    let e = [exp(&eps[0])?, exp(&eps[1])?, exp(&eps[2])?];
    let h = [exp(&eta[0])?, exp(&eta[1])?, exp(&eta[2])?];
    six_sum_classifier_exponents(n, e, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclo {
        Cyclo::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(cyclotomic_polynomial(420).len() - 1, 96);
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(z(1, 0), Cyclo::one());
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclo::from_int(-1));
        let s = &(&z(8, 1) + &z(8, 3)) + &(&z(8, 5) + &z(8, 7));
        assert!(s.is_zero());
        assert!(Cyclo::root_of_unity(0, 1).is_err());
    }

    #[test]
    fn ring_examples() {
        let s = &(&z(3, 1) + &z(3, 2)) + &Cyclo::one();
        assert!(s.is_zero());
        assert!((&z(4, 1) + &z(4, 1).conj()).is_zero());
        assert_eq!(&z(8, 1) * &z(8, 1), z(4, 1));
        assert_eq!(z(6, 3), Cyclo::from_int(-1));
        assert_eq!(z(12, 4), z(3, 1));
    }

    #[test]
    fn root_orders() {
        for n in [1u64, 2, 5, 8, 12] {
            for k in 0..n as i64 {
                let r = z(n, k);
                let ord = n / crate::arith::gcd(k as u64, n);
                let mut p = Cyclo::one();
                for j in 1..=ord {
                    p = &p * &r;
                    assert_eq!(p == Cyclo::one(), j == ord, "n={n} k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn rendering() {
        let v = &(&z(8, 3) - &z(8, 1)) + &Cyclo::from_int(2);
        assert_eq!(v.to_string(), "z8^3 - z8 + 2");
        assert_eq!(Cyclo::zero(5).to_string(), "0");
        assert_eq!(Cyclo::from_int(-3).to_string(), "-3");
        let w = &z(5, 2).scale(&BigInt::from(-2)) + &z(5, 0);
        assert_eq!(w.to_string(), "-2*z5^2 + 1");
    }

    #[test]
    fn root_exponent_recovery() {
        assert_eq!(z(8, 3).root_exponent(8), Some(3));
        assert_eq!(z(4, 1).root_exponent(8), Some(2));
        assert_eq!(Cyclo::from_int(-1).root_exponent(16), Some(8));
        assert_eq!(Cyclo::from_int(2).root_exponent(8), None);
        assert_eq!(z(3, 1).root_exponent(4), None);
    }

    #[test]
    fn vanishing_sum_examples() {
        assert!(!vanishing_sum_possible(5, 3));
        assert!(vanishing_sum_possible(5, 6));
        assert!(vanishing_sum_possible(0, 1));
        assert!(!vanishing_sum_possible(1, 1));
        assert!(!vanishing_sum_possible(1, 30));
        // Direct enumeration: no five cube roots of unity sum to zero.
        for code in 0..3u32.pow(5) {
            let mut counts = [0i64; 3];
            let mut c = code;
            for _ in 0..5 {
                counts[(c % 3) as usize] += 1;
                c /= 3;
            }
            assert!(!root_sum_is_zero(3, &counts));
        }
    }

    #[test]
    fn six_sum_examples() {
        let v = six_sum_classifier(
            2,
            &[z(4, 1), z(4, 3), Cyclo::one()],
            &[Cyclo::from_int(-1), Cyclo::from_int(-1), Cyclo::one()],
        )
        .unwrap();
        assert_eq!(v, SixSumVerdict::ZeroSmallOrderShape);
        let ones = [Cyclo::one(), Cyclo::one(), Cyclo::one()];
        assert_eq!(
            six_sum_classifier(3, &ones, &ones).unwrap(),
            SixSumVerdict::NonzeroRealRatios
        );
        // (*) violated
        let bad = [z(4, 1), Cyclo::one(), Cyclo::one()];
        assert!(matches!(
            six_sum_classifier(2, &bad, &ones),
            Err(Error::Precondition(_))
        ));
        // not a root of unity in U_4
        let eighth = [z(8, 1), z(8, 7), Cyclo::one()];
        assert!(six_sum_classifier(2, &eighth, &ones).is_err());
    }
}
