//! Exact rationals, valuations and the small combinatorial kernel.
//!
//! `Rational` is `num_rational::BigRational`, which already keeps values in
//! lowest terms with a positive denominator and parses/prints `a/b` or `a`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// A p-adic valuation: an integer or `+∞` (the valuation of zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Trial division; the primes used here are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Splits a nonzero integer as `p^v · u` with `p ∤ u`.
pub fn split_p(n: &BigInt, p: u64) -> (u64, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(&pb);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

/// Same as [`split_p`] for unsigned integers.
pub fn split_p_uint(n: &BigUint, p: u64) -> (u64, BigUint) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut u = n.clone();
    loop {
        let (q, r) = u.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

/// `v_p(q)`, with `v_p(0) = +∞`.
///
/// ```
/// use incgamma::exact::{vp, Rational, Valuation};
/// let q: Rational = "5/6".parse().unwrap();
/// assert_eq!(vp(&q, 3).unwrap(), Valuation::Finite(-1));
/// ```
pub fn vp(q: &Rational, p: u64) -> Result<Valuation> {
    check_prime(p)?;
    if q.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let (a, _) = split_p(q.numer(), p);
    let (b, _) = split_p(q.denom(), p);
    Ok(Valuation::Finite(a as i64 - b as i64))
}

/// Generalized binomial coefficient `q(q−1)…(q−k+1)/k!`.
pub fn binom(q: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * (q - Rational::from_integer(BigInt::from(j))) / Rational::from_integer(BigInt::from(j + 1));
    }
    acc
}

/// Falling factorial `(x)_n = x(x−1)…(x−n+1)`.
pub fn falling(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    for j in 0..n {
        acc *= x - Rational::from_integer(BigInt::from(j));
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Integer binomial `C(n, k)`, zero when `k > n`.
pub fn binom_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Sum of the base-`l` digits of `n`.
pub fn digit_sum(n: u64, l: u64) -> Result<u64> {
    if l < 2 {
        return Err(Error::BadBase(l));
    }
    if n == 0 {
        return Err(Error::ZeroDigitSum);
    }
    let mut n = n;
    let mut s = 0;
    while n > 0 {
        s += n % l;
        n /= l;
    }
    Ok(s)
}

/// Number of base-`l` digits of `n ≥ 1`, i.e. `⌊log_l n⌋ + 1`.
pub fn digit_len(n: u64, l: u64) -> u64 {
    let mut n = n;
    let mut d = 0;
    while n > 0 {
        n /= l;
        d += 1;
    }
    d
}

/// Integer form of the right-hand side `(l−1)(log_l n + 1)` of the
/// digit-sum lemma, with `log_l n + 1` replaced by the digit length
/// `⌊log_l n⌋ + 1` (which never exceeds it).
pub fn digit_sum_bound(n: u64, l: u64) -> u64 {
    (l - 1) * digit_len(n, l)
}

/// `v_p(n!) = (n − S_p(n))/(p − 1)`.
pub fn vp_factorial(n: u64, p: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let s = digit_sum(n, p).expect("p >= 2 and n >= 1");
    (n - s) / (p - 1)
}

/// Legendre's `Σ_{i≥1} ⌊n/p^i⌋`.
pub fn legendre_sum(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// Parses `a/b` or `a`, reducing to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(a, b))
        }
        None => {
            let a: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(a))
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form, `a` for integers and `a/b` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest `f64` to `q`, for the complex side.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // Scale down both parts so they fit.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let a = (q.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let b = (q.denom() >> shift).to_f64().unwrap_or(f64::MAX);
            let v = a / b;
            if q.is_negative() {
                -v
            } else {
                v
            }
        }
    }
}
