//! The coefficient interface shared by exact rationals and p-adic numbers.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};
use crate::padic::PadicNumber;

/// Scalars for series and Mahler coefficients.
///
/// Constants are produced "like" an existing value so p-adic results inherit
/// the prime and a sensible precision.  `one_like` must not be called on an
/// exact p-adic zero.
pub trait Scalar:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// An exactly known zero.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn mul_int(&self, n: i64) -> Self;
    fn div_int(&self, n: i64) -> Result<Self>;
    fn mul_factorial(&self, n: usize) -> Self;
    fn div_factorial(&self, n: usize) -> Self;
    /// `C(self, k)` for `k = 0..=k_max`.
    fn binomial_sequence(&self, k_max: usize) -> Result<Vec<Self>>;
    /// A zero standing for an unknown value of absolute value at most
    /// `p^{-exponent}`.  Exact scalars have no such thing and return 0.
    fn tail_filler(&self, exponent: i64) -> Self;
    /// Caps the claimed precision; a no-op for exact scalars.
    fn cap_precision(self, k: i64) -> Self;
    /// `exp(self)` as needed by `gexp`.
    fn exp_constant(&self) -> Result<Self>;
    /// Valuation bound: `|self| ≤ p^{-order}`.  Exact rationals use the
    /// trivial absolute value (0 for nonzero values).
    fn order(&self) -> i64;
    /// The prime of a p-adic scalar.
    fn prime(&self) -> Option<u64>;
    /// Image in `Q_p` modulo `p^prec`.
    fn to_padic(&self, p: u64, prec: i64) -> PadicNumber;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }

    fn one_like(&self) -> Self {
        Rational::one()
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn mul_int(&self, n: i64) -> Self {
        self * Rational::from_integer(BigInt::from(n))
    }

    fn div_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self / Rational::from_integer(BigInt::from(n)))
    }

    fn mul_factorial(&self, n: usize) -> Self {
        self * Rational::from_integer(factorial(n as u64))
    }

    fn div_factorial(&self, n: usize) -> Self {
        self / Rational::from_integer(factorial(n as u64))
    }

    fn binomial_sequence(&self, k_max: usize) -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(k_max + 1);
        let mut acc = Rational::one();
        out.push(acc.clone());
        for j in 0..k_max {
            let j = j as i64;
            acc = acc * (self - Rational::from_integer(BigInt::from(j))) / Rational::from_integer(BigInt::from(j + 1));
            out.push(acc.clone());
        }
        Ok(out)
    }

    fn tail_filler(&self, _exponent: i64) -> Self {
        Rational::zero()
    }

    fn cap_precision(self, _k: i64) -> Self {
        self
    }

    fn exp_constant(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Ok(Rational::one())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    fn order(&self) -> i64 {
        if Zero::is_zero(self) {
            PadicNumber::EXACT
        } else {
            0
        }
    }

    fn prime(&self) -> Option<u64> {
        None
    }

    fn to_padic(&self, p: u64, prec: i64) -> PadicNumber {
        PadicNumber::from_rational(self, p, prec)
    }
}

impl Scalar for PadicNumber {
    fn zero_like(&self) -> Self {
        PadicNumber::exact_zero(self.p())
    }

    fn one_like(&self) -> Self {
        debug_assert!(self.precision() < PadicNumber::EXACT);
        PadicNumber::one(self.p(), self.precision().max(1))
    }

    fn from_rational_like(&self, q: &Rational) -> Self {
        PadicNumber::from_rational(q, self.p(), self.precision().max(1))
    }

    fn is_zero(&self) -> bool {
        PadicNumber::is_zero(self)
    }

    fn mul_int(&self, n: i64) -> Self {
        PadicNumber::mul_int(self, &BigInt::from(n))
    }

    fn div_int(&self, n: i64) -> Result<Self> {
        PadicNumber::div_int(self, &BigInt::from(n))
    }

    fn mul_factorial(&self, n: usize) -> Self {
        PadicNumber::mul_factorial(self, n)
    }

    fn div_factorial(&self, n: usize) -> Self {
        PadicNumber::div_factorial(self, n)
    }

    fn binomial_sequence(&self, k_max: usize) -> Result<Vec<Self>> {
        PadicNumber::binomial_sequence(self, k_max)
    }

    fn tail_filler(&self, exponent: i64) -> Self {
        PadicNumber::zero(self.p(), exponent)
    }

    fn cap_precision(self, k: i64) -> Self {
        self.with_precision(k)
    }

    fn exp_constant(&self) -> Result<Self> {
        self.exp()
    }

    fn order(&self) -> i64 {
        PadicNumber::order(self)
    }

    fn prime(&self) -> Option<u64> {
        Some(self.p())
    }

    fn to_padic(&self, p: u64, prec: i64) -> PadicNumber {
        assert_eq!(self.p(), p, "mixing p-adic numbers of different primes");
        self.with_precision(prec)
    }
}
