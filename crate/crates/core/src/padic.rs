//! Precision-tracked arithmetic in `Q_p`.
//!
//! A [`PadicNumber`] is `p^val · unit + O(p^prec)` with `unit` a residue
//! coprime to `p` modulo `p^(prec − val)`.  Zero is stored as `unit = 0`
//! with `val = prec`, meaning "known to vanish modulo `p^prec`".  Every
//! operation recomputes the absolute precision pessimistically, so a claim
//! "correct mod p^k" is always backed by the arithmetic actually performed.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{check_prime, split_p, split_p_uint, vp_factorial, Rational};

thread_local! {
    static POWERS: RefCell<HashMap<(u64, u32), BigUint>> = RefCell::new(HashMap::new());
    static FACTORIALS: RefCell<HashMap<u64, FactorialTable>> = RefCell::new(HashMap::new());
}

/// `p^k` for `k ≥ 0`, memoized per thread.
pub(crate) fn ppow(p: u64, k: i64) -> BigUint {
    if k <= 0 {
        return BigUint::one();
    }
    let k = k as u32;
    POWERS.with(|c| {
        c.borrow_mut()
            .entry((p, k))
            .or_insert_with(|| BigUint::from(p).pow(k))
            .clone()
    })
}

/// `v_p(n!)` together with the unit part of `n!` and its inverse, both
/// modulo `p^w`.
struct FactorialTable {
    w: i64,
    modulus: BigUint,
    val: Vec<i64>,
    unit: Vec<BigUint>,
    inv: Vec<BigUint>,
}

impl FactorialTable {
    fn new(p: u64, w: i64) -> Self {
        FactorialTable {
            w,
            modulus: ppow(p, w),
            val: vec![0],
            unit: vec![BigUint::one()],
            inv: vec![BigUint::one()],
        }
    }

    fn extend_to(&mut self, p: u64, n: usize) {
        while self.val.len() <= n {
            let j = self.val.len() as u64;
            let (v, u) = split_p_uint(&BigUint::from(j), p);
            let u = u % &self.modulus;
            let ui = u.modinv(&self.modulus).expect("unit part is invertible");
            let last = self.val.len() - 1;
            self.val.push(self.val[last] + v as i64);
            let nu = (&self.unit[last] * &u) % &self.modulus;
            let ni = (&self.inv[last] * &ui) % &self.modulus;
            self.unit.push(nu);
            self.inv.push(ni);
        }
    }
}

/// `(v_p(n!), unit(n!) mod p^w, unit(n!)^{-1} mod p^w)`.
fn factorial_parts(p: u64, n: usize, w: i64) -> (i64, BigUint, BigUint) {
    let w = w.max(1);
    FACTORIALS.with(|c| {
        let mut map = c.borrow_mut();
        let table = map.entry(p).or_insert_with(|| FactorialTable::new(p, w));
        if table.w < w {
            *table = FactorialTable::new(p, w.max(2 * table.w));
        }
        table.extend_to(p, n);
        let m = ppow(p, w);
        (table.val[n], &table.unit[n] % &m, &table.inv[n] % &m)
    })
}

/// `v_p(n!)` as a signed integer.
pub fn vfact(n: usize, p: u64) -> i64 {
    vp_factorial(n as u64, p) as i64
}

/// A prime together with the default absolute precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u64,
    precision: i64,
}

impl PadicContext {
    pub fn new(p: u64, precision: i64) -> Result<Self> {
        check_prime(p)?;
        if precision < 1 {
            return Err(Error::BadPrecision(precision));
        }
        Ok(PadicContext { p, precision })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn with_precision(&self, precision: i64) -> Result<Self> {
        PadicContext::new(self.p, precision)
    }

    pub fn from_rational(&self, q: &Rational) -> PadicNumber {
        PadicNumber::from_rational(q, self.p, self.precision)
    }

    pub fn from_int(&self, n: i64) -> PadicNumber {
        PadicNumber::from_bigint(&BigInt::from(n), self.p, self.precision)
    }

    pub fn zero(&self) -> PadicNumber {
        PadicNumber::zero(self.p, self.precision)
    }

    pub fn one(&self) -> PadicNumber {
        PadicNumber::one(self.p, self.precision)
    }
}

#[derive(Debug, Clone)]
pub struct PadicNumber {
    p: u64,
    val: i64,
    unit: BigUint,
    prec: i64,
}

impl PadicNumber {
    /// Precision used for zeros that are exact, e.g. a product with the
    /// integer 0.  Only zeros ever carry it.
    pub const EXACT: i64 = 1 << 40;

    pub fn zero(p: u64, prec: i64) -> Self {
        PadicNumber { p, val: prec, unit: BigUint::zero(), prec }
    }

    pub fn exact_zero(p: u64) -> Self {
        PadicNumber::zero(p, PadicNumber::EXACT)
    }

    pub fn one(p: u64, prec: i64) -> Self {
        if prec <= 0 {
            return PadicNumber::zero(p, prec);
        }
        PadicNumber { p, val: 0, unit: BigUint::one(), prec }
    }

    /// Builds `p^val · x + O(p^prec)` from any integer `x`, stripping the
    /// factors of `p` out of `x`.
    fn normalize(p: u64, val: i64, x: BigUint, prec: i64) -> Self {
        if prec <= val || x.is_zero() {
            return PadicNumber::zero(p, prec);
        }
        let x = x % ppow(p, prec - val);
        if x.is_zero() {
            return PadicNumber::zero(p, prec);
        }
        let (k, u) = split_p_uint(&x, p);
        let val = val + k as i64;
        if val >= prec {
            return PadicNumber::zero(p, prec);
        }
        PadicNumber { p, val, unit: u, prec }
    }

    /// Reduces a signed integer into `[0, p^k)`.
    fn reduce_signed(x: &BigInt, p: u64, k: i64) -> BigUint {
        let m = BigInt::from(ppow(p, k));
        x.mod_floor(&m).to_biguint().expect("nonnegative after mod_floor")
    }

    pub fn from_bigint(n: &BigInt, p: u64, prec: i64) -> Self {
        if n.is_zero() {
            return PadicNumber::zero(p, prec);
        }
        let (v, u) = split_p(n, p);
        let v = v as i64;
        if v >= prec {
            return PadicNumber::zero(p, prec);
        }
        PadicNumber { p, val: v, unit: Self::reduce_signed(&u, p, prec - v), prec }
    }

    /// Image of `q` in `Q_p`, known modulo `p^prec`.
    pub fn from_rational(q: &Rational, p: u64, prec: i64) -> Self {
        if q.is_zero() {
            return PadicNumber::zero(p, prec);
        }
        let (a, ua) = split_p(q.numer(), p);
        let (b, ub) = split_p(q.denom(), p);
        let val = a as i64 - b as i64;
        if val >= prec {
            return PadicNumber::zero(p, prec);
        }
        let rel = prec - val;
        let m = ppow(p, rel);
        let num = Self::reduce_signed(&ua, p, rel);
        let den = Self::reduce_signed(&ub, p, rel);
        let inv = den.modinv(&m).expect("denominator unit is invertible");
        PadicNumber { p, val, unit: (num * inv) % m, prec }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Absolute precision: the value is known modulo `p^precision()`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn valuation(&self) -> crate::exact::Valuation {
        if self.is_zero() {
            crate::exact::Valuation::Infinite
        } else {
            crate::exact::Valuation::Finite(self.val)
        }
    }

    /// The valuation, or the precision for a value indistinguishable from 0.
    /// Either way `|self| ≤ p^{-order}` is guaranteed.
    pub fn order(&self) -> i64 {
        self.val
    }

    pub fn relative_precision(&self) -> i64 {
        self.prec - self.val
    }

    /// True when the value vanishes modulo its precision.
    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn unit(&self) -> &BigUint {
        &self.unit
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    fn same_prime(&self, other: &PadicNumber) {
        assert_eq!(self.p, other.p, "mixing p-adic numbers of different primes");
    }

    /// Forgets digits beyond `p^k`.
    pub fn with_precision(&self, k: i64) -> PadicNumber {
        if k >= self.prec {
            return self.clone();
        }
        PadicNumber::normalize(self.p, self.val, self.unit.clone(), k)
    }

    /// Shifts by `p^k`.  Exact.
    pub fn mul_pow_p(&self, k: i64) -> PadicNumber {
        PadicNumber { p: self.p, val: self.val + k, unit: self.unit.clone(), prec: self.prec + k }
    }

    fn add_ref(&self, other: &PadicNumber) -> PadicNumber {
        self.same_prime(other);
        let prec = self.prec.min(other.prec);
        if self.is_zero() {
            return other.with_precision(prec);
        }
        if other.is_zero() {
            return self.with_precision(prec);
        }
        let v = self.val.min(other.val);
        if v >= prec {
            return PadicNumber::zero(self.p, prec);
        }
        let x = &self.unit * ppow(self.p, self.val - v) + &other.unit * ppow(self.p, other.val - v);
        PadicNumber::normalize(self.p, v, x, prec)
    }

    fn neg_ref(&self) -> PadicNumber {
        if self.is_zero() {
            return self.clone();
        }
        let m = ppow(self.p, self.prec - self.val);
        PadicNumber { p: self.p, val: self.val, unit: m - &self.unit, prec: self.prec }
    }

    fn sub_ref(&self, other: &PadicNumber) -> PadicNumber {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &PadicNumber) -> PadicNumber {
        self.same_prime(other);
        let prec = (self.prec + other.val).min(other.prec + self.val);
        let val = self.val + other.val;
        if self.is_zero() || other.is_zero() {
            return PadicNumber::zero(self.p, prec);
        }
        PadicNumber::normalize(self.p, val, &self.unit * &other.unit, prec)
    }

    pub fn div(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.same_prime(other);
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rel = self.relative_precision().min(other.relative_precision());
        let val = self.val - other.val;
        if self.is_zero() {
            return Ok(PadicNumber::zero(self.p, self.prec - other.val));
        }
        let m = ppow(self.p, rel);
        let inv = (&other.unit % &m).modinv(&m).expect("unit is invertible");
        Ok(PadicNumber::normalize(self.p, val, &self.unit * inv, val + rel))
    }

    pub fn inverse(&self) -> Result<PadicNumber> {
        PadicNumber::one(self.p, self.prec.max(self.relative_precision()) + 1).div(self)
    }

    /// Multiplication by an exact integer; absolute precision grows by `v_p(n)`.
    pub fn mul_int(&self, n: &BigInt) -> PadicNumber {
        if n.is_zero() {
            return PadicNumber::exact_zero(self.p);
        }
        let (v, u) = split_p(n, self.p);
        let v = v as i64;
        if self.is_zero() {
            return PadicNumber::zero(self.p, self.prec + v);
        }
        let rel = self.relative_precision();
        let u = PadicNumber::reduce_signed(&u, self.p, rel);
        PadicNumber::normalize(self.p, self.val + v, &self.unit * u, self.prec + v)
    }

    /// Division by an exact nonzero integer; loses `v_p(n)` digits.
    pub fn div_int(&self, n: &BigInt) -> Result<PadicNumber> {
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (v, u) = split_p(n, self.p);
        let v = v as i64;
        if self.is_zero() {
            return Ok(PadicNumber::zero(self.p, self.prec - v));
        }
        let rel = self.relative_precision();
        let m = ppow(self.p, rel);
        let u = PadicNumber::reduce_signed(&u, self.p, rel);
        let inv = u.modinv(&m).expect("unit is invertible");
        Ok(PadicNumber::normalize(self.p, self.val - v, &self.unit * inv, self.prec - v))
    }

    /// Exact multiplication by `n!`.
    pub fn mul_factorial(&self, n: usize) -> PadicNumber {
        let rel = self.relative_precision();
        let (v, u, _) = factorial_parts(self.p, n, rel);
        if self.is_zero() {
            return PadicNumber::zero(self.p, self.prec + v);
        }
        PadicNumber::normalize(self.p, self.val + v, &self.unit * u, self.prec + v)
    }

    /// Division by `n!`, losing `v_p(n!)` digits of absolute precision.
    pub fn div_factorial(&self, n: usize) -> PadicNumber {
        let rel = self.relative_precision();
        let (v, _, inv) = factorial_parts(self.p, n, rel);
        if self.is_zero() {
            return PadicNumber::zero(self.p, self.prec - v);
        }
        PadicNumber::normalize(self.p, self.val - v, &self.unit * inv, self.prec - v)
    }

    pub fn pow(&self, n: u64) -> PadicNumber {
        if n == 0 {
            return PadicNumber::one(self.p, self.prec.max(1));
        }
        let mut result: Option<PadicNumber> = None;
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul_ref(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        result.expect("n > 0")
    }

    /// Integer power with a possibly negative exponent.
    pub fn pow_int(&self, m: i64) -> Result<PadicNumber> {
        if m >= 0 {
            Ok(self.pow(m as u64))
        } else {
            self.pow(m.unsigned_abs()).inverse()
        }
    }

    /// `self ≡ other (mod p^k)`, certified: the difference must be known to
    /// at least `k` digits and vanish there.
    pub fn congruent(&self, other: &PadicNumber, k: i64) -> bool {
        let d = self.sub_ref(other);
        d.prec >= k && d.val >= k
    }

    /// The value modulo `p^precision` as an integer in `[0, p^precision)`.
    pub fn residue(&self) -> Result<BigUint> {
        if self.val < 0 {
            return Err(Error::NotIntegral(self.val));
        }
        if self.is_zero() || self.prec <= 0 {
            return Ok(BigUint::zero());
        }
        Ok((&self.unit * ppow(self.p, self.val)) % ppow(self.p, self.prec))
    }

    /// Symmetric residue in `(−p^k/2, p^k/2]`, handy for reading off small
    /// integers and for printing.
    pub fn symmetric_residue(&self) -> Result<BigInt> {
        let r = BigInt::from(self.residue()?);
        let m = BigInt::from(ppow(self.p, self.prec.max(0)));
        if &r * 2 > m {
            Ok(r - m)
        } else {
            Ok(r)
        }
    }

    /// The base-`p` digits `d_val, d_{val+1}, …` of `p^val · unit`.
    pub fn digits(&self) -> (i64, Vec<u64>) {
        let mut u = self.unit.clone();
        let mut out = Vec::new();
        let pb = BigUint::from(self.p);
        for _ in self.val..self.prec {
            let (q, r) = u.div_rem(&pb);
            out.push(r.to_u64().expect("digit < p"));
            u = q;
        }
        (self.val, out)
    }

    /// `"d₀ + d₁·p + … (mod p^N)"` with zero digits omitted.
    pub fn expansion(&self) -> String {
        let p = self.p;
        let (start, ds) = self.digits();
        let mut terms = Vec::new();
        for (i, d) in ds.iter().enumerate() {
            if *d == 0 {
                continue;
            }
            let e = start + i as i64;
            let t = match (e, *d) {
                (0, d) => format!("{d}"),
                (1, 1) => format!("{p}"),
                (1, d) => format!("{d}·{p}"),
                (e, 1) => format!("{p}^{e}"),
                (e, d) => format!("{d}·{p}^{e}"),
            };
            terms.push(t);
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        format!("{body} (mod {p}^{})", self.prec)
    }

    /// `"R (mod p^N)"` with `R` the residue and the modulus written out.
    pub fn residue_string(&self) -> String {
        match self.residue() {
            Ok(r) => format!("{} (mod {})", r, ppow(self.p, self.prec.max(0))),
            Err(_) => self.expansion(),
        }
    }

    fn is_principal(&self) -> bool {
        self.is_unit() && self.sub_ref(&PadicNumber::one(self.p, self.prec)).val >= 1
    }

    /// Teichmüller representative `ω(u)`, found by iterating `x ↦ x^p` to a
    /// fixed point.  For `p = 2` this is Schikhof's version, `ω = 1`.
    pub fn teichmuller(&self) -> Result<PadicNumber> {
        if !self.is_unit() {
            return Err(Error::NotUnit(self.order()));
        }
        if self.p == 2 {
            return Ok(PadicNumber::one(2, self.prec));
        }
        let m = ppow(self.p, self.prec);
        let e = BigUint::from(self.p);
        let mut x = self.unit.clone();
        for _ in 0..=self.prec {
            let y = x.modpow(&e, &m);
            if y == x {
                break;
            }
            x = y;
        }
        Ok(PadicNumber::normalize(self.p, 0, x, self.prec))
    }

    /// `⟨u⟩ = u / ω(u)`.
    pub fn principal_part(&self) -> Result<PadicNumber> {
        let w = self.teichmuller()?;
        self.div(&w)
    }

    /// `u^s = Σ_k C(s,k)(u − 1)^k` for a principal unit `u` and `s ∈ Z_p`.
    pub fn principal_power(&self, s: &PadicNumber) -> Result<PadicNumber> {
        self.same_prime(s);
        if !self.is_principal() {
            return Err(Error::NotPrincipalUnit);
        }
        if s.order() < 0 {
            return Err(Error::NotIntegral(s.order()));
        }
        let one = PadicNumber::one(self.p, self.prec);
        let w = self.sub_ref(&one);
        let vw = w.order().max(1);
        let target = self.prec;
        let k_max = (target + vw - 1) / vw;
        let binoms = s.binomial_sequence(k_max as usize)?;
        let mut sum = PadicNumber::exact_zero(self.p);
        let mut wk = one;
        for (k, b) in binoms.iter().enumerate() {
            if k > 0 {
                wk = wk.mul_ref(&w);
            }
            sum = sum.add_ref(&b.mul_ref(&wk));
        }
        Ok(sum.with_precision((k_max + 1) * vw))
    }

    /// `u^m` for an integer `m`, by repeated multiplication.
    pub fn principal_power_int(&self, m: i64) -> Result<PadicNumber> {
        if !self.is_principal() {
            return Err(Error::NotPrincipalUnit);
        }
        self.pow_int(m)
    }

    /// The exponential series on `v_p(x) > 1/(p−1)`.
    pub fn exp(&self) -> Result<PadicNumber> {
        let p = self.p as i64;
        if self.is_zero() {
            return Ok(PadicNumber::one(self.p, self.prec));
        }
        let v = self.val;
        if (p - 1) * v <= 1 {
            return Err(Error::DivergentSeries(format!(
                "exp needs v_{p}(x) > 1/{}, got {v}",
                p - 1
            )));
        }
        let target = self.prec;
        // v(x^n/n!) ≥ n·v − (n−1)/(p−1), increasing in n.
        let bound = |n: i64| (n * v * (p - 1) - (n - 1)) / (p - 1);
        let mut sum = PadicNumber::one(self.p, self.prec);
        let mut xn = PadicNumber::one(self.p, self.prec);
        let mut n = 1i64;
        while bound(n) < target {
            xn = xn.mul_ref(self);
            sum = sum.add_ref(&xn.div_factorial(n as usize));
            n += 1;
        }
        Ok(sum.with_precision(bound(n)))
    }

    /// The logarithm series `Σ (−1)^{n+1} w^n / n` at `u = 1 + w`, `|w| < 1`.
    pub fn log(&self) -> Result<PadicNumber> {
        let one = PadicNumber::one(self.p, self.prec);
        let w = self.sub_ref(&one);
        if w.order() < 1 {
            return Err(Error::DivergentSeries("log needs u ≡ 1 mod p".into()));
        }
        if w.is_zero() {
            return Ok(PadicNumber::zero(self.p, w.prec));
        }
        let vw = w.order();
        let target = self.prec;
        let logp = |n: i64| {
            let mut k = 0;
            let mut m = n / self.p as i64;
            while m > 0 {
                k += 1;
                m /= self.p as i64;
            }
            k
        };
        let bound = |n: i64| n * vw - logp(n);
        let mut sum = PadicNumber::exact_zero(self.p);
        let mut wn = one;
        let mut n = 1i64;
        while bound(n) < target {
            wn = wn.mul_ref(&w);
            let term = wn.div_int(&BigInt::from(n))?;
            sum = if n % 2 == 1 { sum.add_ref(&term) } else { sum.sub_ref(&term) };
            n += 1;
        }
        Ok(sum.with_precision(bound(n)))
    }

    /// `C(x, n)` for `n = 0..=k_max` at a point `x ∈ Z_p`.
    ///
    /// Computed exactly at the integer representative `X ∈ [0, p^A)` of `x`
    /// (`A` the precision of `x`).  Since `x ↦ C(x,n)` moves by at most
    /// `p^{⌊log_p n⌋}·|Δx|`, the `n`-th output is claimed mod
    /// `p^{A − ⌊log_p n⌋}`.
    pub fn binomial_sequence(&self, k_max: usize) -> Result<Vec<PadicNumber>> {
        if self.order() < 0 {
            return Err(Error::NotIntegral(self.order()));
        }
        let p = self.p;
        if self.is_zero() && self.prec >= PadicNumber::EXACT {
            let mut out = vec![PadicNumber::exact_zero(p); k_max + 1];
            out[0] = PadicNumber::one(p, PadicNumber::EXACT);
            return Ok(out);
        }
        let a = self.prec;
        let x = BigInt::from(self.residue()?);
        let m = ppow(p, a.max(1));
        let mut out = Vec::with_capacity(k_max + 1);
        out.push(PadicNumber::one(p, a));
        let mut num_v = 0i64;
        let mut num_u = BigUint::one();
        let mut vanished = false;
        let mut logn = 0i64;
        let mut next_pow = p as usize;
        for n in 1..=k_max {
            while n >= next_pow {
                logn += 1;
                next_pow = next_pow.saturating_mul(p as usize);
            }
            let prec_n = a - logn;
            let d = &x - BigInt::from(n - 1);
            if d.is_zero() {
                vanished = true;
            }
            if vanished {
                out.push(PadicNumber::zero(p, prec_n));
                continue;
            }
            let (v, u) = split_p(&d, p);
            num_v += v as i64;
            let u = if u.sign() == Sign::Minus {
                PadicNumber::reduce_signed(&u, p, a.max(1))
            } else {
                u.to_biguint().expect("positive") % &m
            };
            num_u = (num_u * u) % &m;
            let (vf, _, inv) = factorial_parts(p, n, a.max(1));
            out.push(PadicNumber::normalize(p, num_v - vf, &num_u * inv, prec_n));
        }
        Ok(out)
    }

    /// Falling factorials `(x)_k` for `k = 0..=k_max`; no precision is lost
    /// beyond that of `x` itself.
    pub fn falling_sequence(&self, k_max: usize) -> Vec<PadicNumber> {
        let mut out = Vec::with_capacity(k_max + 1);
        let mut acc = PadicNumber::one(self.p, self.prec.max(1));
        out.push(acc.clone());
        for j in 0..k_max {
            let t = self.sub_ref(&PadicNumber::from_bigint(&BigInt::from(j), self.p, self.prec));
            acc = acc.mul_ref(&t);
            out.push(acc.clone());
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.order() >= 0
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expansion())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $m(self, rhs: PadicNumber) -> PadicNumber {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $m(self, rhs: &'a PadicNumber) -> PadicNumber {
                self.$imp(rhs)
            }
        }
        impl<'a> $tr<&'a PadicNumber> for &'a PadicNumber {
            type Output = PadicNumber;
            fn $m(self, rhs: &'a PadicNumber) -> PadicNumber {
                self.$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        self.neg_ref()
    }
}

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        self.neg_ref()
    }
}
