//! Truncated power series `c₀ + c₁t + … + c_D t^D + O(t^{D+1})`.
//!
//! Coefficients are ordinary (not divided by `n!`); exponential generating
//! functions are converted at the boundary with [`TruncSeries::from_egf`] and
//! [`TruncSeries::egf_coeffs`].

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct TruncSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncSeries<S> {
    /// A series of order `coeffs.len() − 1`.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c₀");
        TruncSeries { coeffs }
    }

    /// A polynomial seen as a series of order `order`, padded with exact
    /// zeros (or truncated).
    pub fn from_polynomial(coeffs: Vec<S>, order: usize) -> Self {
        assert!(!coeffs.is_empty());
        let z = coeffs[0].zero_like();
        let mut c = coeffs;
        c.resize(order + 1, z);
        TruncSeries { coeffs: c }
    }

    /// From EGF coefficients `e_n`, i.e. the series `Σ e_n tⁿ/n!`.
    pub fn from_egf(egf: &[S]) -> Self {
        TruncSeries::new(egf.iter().enumerate().map(|(n, e)| e.div_factorial(n)).collect())
    }

    /// The EGF coefficients `n!·c_n`.
    pub fn egf_coeffs(&self) -> Vec<S> {
        self.coeffs.iter().enumerate().map(|(n, c)| c.mul_factorial(n)).collect()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &S {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.order().min(other.order());
        TruncSeries::new((0..=d).map(|i| self.coeffs[i].clone() + other.coeffs[i].clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.order().min(other.order());
        TruncSeries::new((0..=d).map(|i| self.coeffs[i].clone() - other.coeffs[i].clone()).collect())
    }

    pub fn neg(&self) -> Self {
        TruncSeries::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &S) -> Self {
        TruncSeries::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Product, correct through the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let d = self.order().min(other.order());
        let out = (0..=d)
            .map(|n| {
                (1..=n).fold(self.coeffs[0].clone() * other.coeffs[n].clone(), |acc, k| {
                    acc + self.coeffs[k].clone() * other.coeffs[n - k].clone()
                })
            })
            .collect();
        TruncSeries::new(out)
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return TruncSeries::new(vec![self.coeffs[0].zero_like()]);
        }
        TruncSeries::new((1..=self.order()).map(|n| self.coeffs[n].mul_int(n as i64)).collect())
    }

    fn check_constant_one(&self) -> Result<()> {
        let c0 = &self.coeffs[0];
        if (c0.clone() - c0.one_like()).is_zero() {
            Ok(())
        } else {
            Err(Error::ConstantTermNotOne)
        }
    }

    /// `a(t)^y = Σ_k C(y,k)(a(t) − 1)^k` for `a(0) = 1`.
    pub fn binomial_power(&self, y: &S) -> Result<Self> {
        self.check_constant_one()?;
        let d = self.order();
        let binoms = y.binomial_sequence(d)?;
        let zero = self.coeffs[0].zero_like();
        let mut w = self.coeffs.clone();
        w[0] = zero.clone();
        let w = TruncSeries::new(w);
        let mut out = vec![zero.clone(); d + 1];
        out[0] = self.coeffs[0].one_like();
        let mut wk = w.clone();
        for (k, b) in binoms.iter().enumerate().skip(1) {
            if k > 1 {
                wk = wk.mul(&w);
            }
            for n in k..=d {
                out[n] = out[n].clone() + b.clone() * wk.coeffs[n].clone();
            }
        }
        Ok(TruncSeries::new(out))
    }

    /// `1/a(t)` as the binomial power with exponent `−1`.
    pub fn inverse(&self) -> Result<Self> {
        let m1 = -self.coeffs[0].one_like();
        self.binomial_power(&m1)
    }

    /// `gexp(f) = exp(f(0))·exp(f − f(0))`.
    ///
    /// `exp(g)` for `g(0) = 0` comes from `n·e_n = Σ_{k=1}^n k·g_k·e_{n−k}`.
    /// Exact scalars require `f(0) = 0`; p-adic ones require `f(0)` in the
    /// domain of the exponential.
    pub fn gexp(&self) -> Result<Self> {
        let e0 = self.coeffs[0].exp_constant()?;
        let d = self.order();
        let mut e: Vec<S> = Vec::with_capacity(d + 1);
        e.push(e0.one_like());
        for n in 1..=d {
            let mut acc = self.coeffs[1].mul_int(1) * e[n - 1].clone();
            for k in 2..=n {
                acc = acc + self.coeffs[k].mul_int(k as i64) * e[n - k].clone();
            }
            e.push(acc.div_int(n as i64)?);
        }
        Ok(TruncSeries::new(e.into_iter().map(|c| c * e0.clone()).collect()))
    }
}
