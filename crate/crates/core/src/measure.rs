//! Measures on `Z_p`, stored through their moments `b_n = μ(C(·, n))`.
//!
//! A bounded sequence `(b_n)` is the same thing as a measure, and pairing
//! with a Mahler series is `∫ Σ a_n C(·,n) dμ = Σ a_n b_n`.

use crate::error::{Error, Result};
use crate::mahler::{MahlerFn, TailBound};
use crate::padic::PadicNumber;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Measure {
    coeffs: Vec<PadicNumber>,
    tail: TailBound,
}

impl Measure {
    pub fn new(coeffs: Vec<PadicNumber>, tail: TailBound) -> Self {
        assert!(!coeffs.is_empty(), "a measure needs at least b₀");
        Measure { coeffs, tail }
    }

    pub fn coeffs(&self) -> &[PadicNumber] {
        &self.coeffs
    }

    pub fn tail(&self) -> TailBound {
        self.tail
    }

    pub fn p(&self) -> u64 {
        self.coeffs[0].p()
    }

    /// `T` with `|b_n| ≤ p^{-T}` for all `n`.
    pub fn norm_exponent(&self) -> i64 {
        let stored = self.coeffs.iter().map(|c| c.order()).min().unwrap_or(PadicNumber::EXACT);
        self.tail.exponent().map_or(stored, |t| stored.min(t))
    }

    /// The Dirac measure at `x ∈ Z_p`, moments `C(x, n)` for `n < len`.
    pub fn dirac(x: &PadicNumber, len: usize) -> Result<Measure> {
        let coeffs = x.binomial_sequence(len.max(1) - 1)?;
        Ok(Measure::new(coeffs, TailBound::Certified(0)))
    }

    /// `μ_{ψ,x}` with moments `C(x, n)·ψ(x − n)`.
    pub fn mu_psi_x(psi: &MahlerFn<PadicNumber>, x: &PadicNumber, len: usize) -> Result<Measure> {
        let len = len.max(1);
        let binoms = x.binomial_sequence(len - 1)?;
        let mut coeffs = Vec::with_capacity(len);
        for (n, b) in binoms.into_iter().enumerate() {
            let pt = x.clone() - PadicNumber::from_bigint(&(n as u64).into(), x.p(), x.precision());
            coeffs.push(b * psi.eval(&pt)?);
        }
        let t = psi.norm_exponent();
        let tail = if psi.tail().is_certified() {
            TailBound::Certified(t)
        } else {
            TailBound::Heuristic { exponent: t, window: 0 }
        };
        Ok(Measure::new(coeffs, tail))
    }

    /// `∫ φ dμ = Σ a_n b_n`.  Terms past either stored range are bounded by
    /// the corresponding tail times the other side's norm, and the result is
    /// capped accordingly.
    pub fn integrate(&self, phi: &MahlerFn<PadicNumber>) -> Result<PadicNumber> {
        let p = self.p();
        let q = phi.coeffs()[0].p();
        if p != q {
            return Err(Error::ContextMismatch(q, p));
        }
        let a = phi.coeffs();
        let b = &self.coeffs;
        let n = a.len().min(b.len());
        let mut acc = a[0].clone() * b[0].clone();
        for k in 1..n {
            acc = acc + a[k].clone() * b[k].clone();
        }
        let mut cap: Option<i64> = None;
        let mut lower = |t: i64| cap = Some(cap.map_or(t, |c: i64| c.min(t)));
        if let Some(tb) = self.tail.exponent() {
            if let Some(v) = a[n..].iter().map(|c| c.order()).min() {
                lower(tb + v);
            }
            if let Some(ta) = phi.tail().exponent() {
                lower(ta + tb);
            }
        }
        if let Some(ta) = phi.tail().exponent() {
            if let Some(v) = b[n..].iter().map(|c| c.order()).min() {
                lower(ta + v);
            }
        }
        Ok(match cap {
            Some(c) => acc.cap_precision(c),
            None => acc,
        })
    }
}
