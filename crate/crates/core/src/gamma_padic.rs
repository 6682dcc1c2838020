//! The p-adic incomplete gamma function.
//!
//! For `r ∈ Q^×` with `v_p(r) = 0`, `f_r(t) = −r((1 − t)^{1/r} − 1)` is
//! compatible with `p`, `Φ_{f_r} = L(φ_{f_r})`, and
//! `Ψ_{r,p}(s) = ⟨r⟩^s Φ_{f_r}((s+1)/r − 1)` interpolates `⟨r⟩^m Ψ̃(m)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binom, binom_int, digit_len, falling, format_rational, int, vp, Rational, Valuation};
use crate::mahler::{self, MahlerFn, DEFAULT_GUARD};
use crate::measure::Measure;
use crate::padic::{PadicContext, PadicNumber};
use crate::series::TruncSeries;
use crate::transform::{l, l_terms, one_minus_x_pow};

/// `f_r` through `t^order`: coefficients `−r(−1)^k C(1/r, k)`.
pub fn f_r_series(r: &Rational, order: usize) -> Result<TruncSeries<Rational>> {
    if r.is_zero() {
        return Err(Error::ZeroR);
    }
    let inv = r.recip();
    let coeffs = (0..=order)
        .map(|k| {
            if k == 0 {
                return Rational::zero();
            }
            let b = binom(&inv, k as u64);
            let c = -r * b;
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    Ok(TruncSeries::new(coeffs))
}

/// Fails unless `p ∉ P_r`, i.e. `v_p(r) = 0`.
pub fn check_place(r: &Rational, p: u64) -> Result<()> {
    if r.is_zero() {
        return Err(Error::ZeroR);
    }
    match vp(r, p)? {
        Valuation::Finite(0) => Ok(()),
        Valuation::Finite(v) => Err(Error::PlaceExcluded { p, v }),
        Valuation::Infinite => Err(Error::ZeroR),
    }
}

/// `φ_{f_r}` with a certified tail reaching the context precision.
pub fn phi_fr(r: &Rational, ctx: &PadicContext) -> Result<MahlerFn<PadicNumber>> {
    check_place(r, ctx.p())?;
    let r = r.clone();
    mahler::from_gexp_auto(move |d| f_r_series(&r, d).expect("r ≠ 0"), ctx)
}

/// `φ_{f_r}(0), …, φ_{f_r}(count − 1)` exactly, from `σφ = S^{1/r−1}φ`:
/// `φ(n+1) = Σ_k (−1)^k (1/r − 1)_k C(n,k) φ(n−k)`.
pub fn phi_fr_values(r: &Rational, count: usize) -> Result<Vec<Rational>> {
    if r.is_zero() {
        return Err(Error::ZeroR);
    }
    let e = r.recip() - Rational::one();
    let fall: Vec<Rational> = (0..count as u64).map(|k| falling(&e, k)).collect();
    let mut v = Vec::with_capacity(count);
    if count == 0 {
        return Ok(v);
    }
    v.push(Rational::one());
    for n in 0..count - 1 {
        let mut acc = Rational::zero();
        for k in 0..=n {
            let t = &fall[k] * Rational::from_integer(binom_int(n as u64, k as u64)) * &v[n - k];
            if k % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        v.push(acc);
    }
    Ok(v)
}

/// `Ψ̃(0) = 1`, `Ψ̃(m) = 1 + (m/r)Ψ̃(m−1)`.
pub fn psi_tilde(r: &Rational, m: u64) -> Result<Rational> {
    if r.is_zero() {
        return Err(Error::ZeroR);
    }
    let mut x = Rational::one();
    for k in 1..=m {
        x = Rational::one() + int(k as i64) / r * x;
    }
    Ok(x)
}

/// `Ψ̃(m) = (m!/r^m) Σ_{k≤m} r^k/k!`.
pub fn psi_tilde_closed(r: &Rational, m: u64) -> Result<Rational> {
    if r.is_zero() {
        return Err(Error::ZeroR);
    }
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for k in 0..=m {
        if k > 0 {
            term = term * r / int(k as i64);
        }
        sum += &term;
    }
    let rm = num_traits::pow(r.clone(), m as usize);
    Ok(sum * Rational::from_integer(crate::exact::factorial(m)) / rm)
}

/// `Φ_f = L(φ_f)` for a compatible `φ_f`, prepared once and evaluated many
/// times.
#[derive(Debug, Clone)]
pub struct PhiEngine {
    p: u64,
    target: i64,
    phi: MahlerFn<PadicNumber>,
    l_phi: MahlerFn<PadicNumber>,
}

impl PhiEngine {
    /// Works `DEFAULT_GUARD` digits above the context precision.
    pub fn new<F>(series: F, ctx: &PadicContext) -> Result<PhiEngine>
    where
        F: Fn(usize) -> TruncSeries<Rational>,
    {
        let work = ctx.with_precision(ctx.precision() + DEFAULT_GUARD)?;
        let phi = mahler::from_gexp_auto(series, &work)?;
        let l_phi = l(&phi, l_terms(&phi, work.precision()));
        Ok(PhiEngine { p: ctx.p(), target: ctx.precision(), phi, l_phi })
    }

    pub fn phi(&self) -> &MahlerFn<PadicNumber> {
        &self.phi
    }

    pub fn l_phi(&self) -> &MahlerFn<PadicNumber> {
        &self.l_phi
    }

    /// Precision at which evaluation points should be built so that the
    /// binomial losses stay inside the guard digits.
    pub fn point_precision(&self) -> i64 {
        self.target + DEFAULT_GUARD + digit_len(self.l_phi.len() as u64, self.p) as i64 + 1
    }

    pub fn point(&self, q: &Rational) -> PadicNumber {
        PadicNumber::from_rational(q, self.p, self.point_precision())
    }

    /// `Φ_f(s)`.
    pub fn eval(&self, s: &PadicNumber) -> Result<PadicNumber> {
        self.l_phi.eval(s)
    }

    /// `Φ_f(s)` as `∫ (1 − x)^{⋆s} dμ_{φ,−1}`; the moments are computed from
    /// direct evaluations of `φ` rather than from `σ⁻¹`.
    pub fn eval_measure(&self, s: &PadicNumber) -> Result<PadicNumber> {
        let k = self.l_phi.len();
        let m1 = PadicNumber::from_bigint(&BigInt::from(-1), self.p, self.point_precision());
        let mu = Measure::mu_psi_x(&self.phi, &m1, k)?;
        mu.integrate(&one_minus_x_pow(s, k)?)
    }
}

/// `⟨r⟩ = r/ω(r)`.
pub fn angle(r: &Rational, p: u64, prec: i64) -> Result<PadicNumber> {
    check_place(r, p)?;
    PadicNumber::from_rational(r, p, prec).principal_part()
}

/// `Γ_p^E(s, r) = E(−r)·Ψ_{r,p}(s − 1)`.  The factor `E(−r)` depends on a
/// non-canonical extension of `exp` and is kept as a tag.
#[derive(Debug, Clone)]
pub struct GammaValue<F> {
    pub exp_tag: Rational,
    pub factor: F,
}

impl<F: fmt::Display> fmt::Display for GammaValue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({})·[{}]", format_rational(&-self.exp_tag.clone()), self.factor)
    }
}

/// The p-adic incomplete gamma pipeline for one `(r, p)`.
#[derive(Debug, Clone)]
pub struct IncGammaP {
    r: Rational,
    engine: PhiEngine,
    angle: PadicNumber,
}

impl IncGammaP {
    pub fn new(r: &Rational, ctx: &PadicContext) -> Result<IncGammaP> {
        check_place(r, ctx.p())?;
        let rr = r.clone();
        let engine = PhiEngine::new(move |d| f_r_series(&rr, d).expect("r ≠ 0"), ctx)?;
        let angle = angle(r, ctx.p(), engine.point_precision())?;
        Ok(IncGammaP { r: r.clone(), engine, angle })
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn engine(&self) -> &PhiEngine {
        &self.engine
    }

    pub fn angle(&self) -> &PadicNumber {
        &self.angle
    }

    pub fn point(&self, q: &Rational) -> PadicNumber {
        self.engine.point(q)
    }

    /// `Φ_{f_r}(y)`.
    pub fn big_phi(&self, y: &PadicNumber) -> Result<PadicNumber> {
        self.engine.eval(y)
    }

    fn inner_point(&self, s: &PadicNumber) -> Result<PadicNumber> {
        let inv = self.point(&self.r.recip());
        Ok((s.clone() + self.point(&int(1))) * inv - self.point(&int(1)))
    }

    /// `Ψ_{r,p}(s)` for `s ∈ Z_p`.
    pub fn psi(&self, s: &PadicNumber) -> Result<PadicNumber> {
        let y = self.inner_point(s)?;
        Ok(self.angle.principal_power(s)? * self.big_phi(&y)?)
    }

    /// `Ψ_{r,p}(s)` at a rational `s`; integer `s` uses an exact power of
    /// `⟨r⟩`.
    pub fn psi_at(&self, s: &Rational) -> Result<PadicNumber> {
        let sp = self.point(s);
        if !s.is_integer() {
            return self.psi(&sp);
        }
        let m: i64 = s.to_integer().try_into().map_err(|_| Error::Domain("exponent too large".into()))?;
        let y = self.inner_point(&sp)?;
        Ok(self.angle.principal_power_int(m)? * self.big_phi(&y)?)
    }

    /// `Ψ_{r,p}(s)` with `Φ` evaluated by the measure integral.
    pub fn psi_measure(&self, s: &PadicNumber) -> Result<PadicNumber> {
        let y = self.inner_point(s)?;
        Ok(self.angle.principal_power(s)? * self.engine.eval_measure(&y)?)
    }

    pub fn gamma_p(&self, s: &PadicNumber) -> Result<GammaValue<PadicNumber>> {
        let s1 = s.clone() - self.point(&int(1));
        Ok(GammaValue { exp_tag: -self.r.clone(), factor: self.psi(&s1)? })
    }

    /// `Γ_p^E` through `∫(1 − x)^{⋆(s/r − 1)} dμ_{φ,−1}`.
    pub fn gamma_p_measure(&self, s: &PadicNumber) -> Result<GammaValue<PadicNumber>> {
        let s1 = s.clone() - self.point(&int(1));
        Ok(GammaValue { exp_tag: -self.r.clone(), factor: self.psi_measure(&s1)? })
    }
}

/// One hypothesis check with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub pass: bool,
    pub witness: String,
}

/// The hypotheses on `f` that make `φ_f` exist at `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub integral: Check,
    pub exp_domain: Check,
    pub principal: Check,
}

impl CompatibilityReport {
    pub fn all_pass(&self) -> bool {
        self.integral.pass && self.exp_domain.pass && self.principal.pass
    }

    /// The first failure as an error.
    pub fn to_result(&self, f: &[Rational], p: u64) -> Result<()> {
        if !self.integral.pass {
            let k = (1..f.len()).find(|&k| !is_p_integral(&f[k], p)).unwrap_or(1);
            return Err(Error::CoefficientNotIntegral(k));
        }
        if !self.exp_domain.pass {
            return Err(Error::ConstantOutsideExpDomain);
        }
        if !self.principal.pass {
            return Err(Error::DerivativeNotPrincipal);
        }
        Ok(())
    }
}

fn is_p_integral(q: &Rational, p: u64) -> bool {
    !q.denom().is_zero() && crate::exact::split_p(q.denom(), p).0 == 0
}

/// Checks a polynomial `f = Σ a_k t^k` against the hypotheses at `p`.
pub fn compatibility(f: &[Rational], p: u64) -> Result<CompatibilityReport> {
    crate::exact::check_prime(p)?;
    let bad: Vec<usize> = (1..f.len()).filter(|&k| !is_p_integral(&f[k], p)).collect();
    let integral = Check {
        pass: bad.is_empty(),
        witness: match bad.first() {
            None => "all a_k with k ≥ 1 are p-integral".into(),
            Some(&k) => format!("a_{k} = {}", format_rational(&f[k])),
        },
    };
    let a0 = f.first().cloned().unwrap_or_default();
    let need = if p == 2 { 2 } else { 1 };
    let v0 = vp(&a0, p)?;
    let exp_domain = Check {
        pass: v0 >= Valuation::Finite(need),
        witness: format!("v_{p}(a_0) = {v0}"),
    };
    let a1 = f.get(1).cloned().unwrap_or_default();
    let v1 = vp(&(a1.clone() - Rational::one()), p)?;
    let principal = Check {
        pass: v1 >= Valuation::Finite(1),
        witness: format!("a_1 = {}, v_{p}(a_1 − 1) = {v1}", format_rational(&a1)),
    };
    Ok(CompatibilityReport { integral, exp_domain, principal })
}

/// `c_m = Σ_{k=m+1}^n k·C(k−1, m)·a_k`, the coefficients of the functional
/// equation `exp(a_0) + sΦ(s−1) = Σ_m (−1)^m c_m Φ(s+m)`.
pub fn functional_eq_coeffs(f: &[Rational]) -> Vec<Rational> {
    let n = f.len().saturating_sub(1);
    (0..n)
        .map(|m| {
            (m + 1..=n).fold(Rational::zero(), |acc, k| {
                acc + Rational::from_integer(BigInt::from(k as u64) * binom_int(k as u64 - 1, m as u64)) * &f[k]
            })
        })
        .collect()
}

/// `f = a't + b't² + c't³` with `(a', b', c') = (a+b+c, −b/2 − c, c/3)`,
/// for which `1 + sΦ(s−1) = aΦ(s) + bΦ(s+1) + cΦ(s+2)`.
pub fn cubic_f(a: &Rational, b: &Rational, c: &Rational) -> Vec<Rational> {
    let two = int(2);
    let three = int(3);
    vec![Rational::zero(), a + b + c, -(b / &two) - c, c / &three]
}

/// `Φ_f` for a polynomial `f` compatible with `p`.
pub fn poly_engine(f: &[Rational], ctx: &PadicContext) -> Result<PhiEngine> {
    compatibility(f, ctx.p())?.to_result(f, ctx.p())?;
    let f = f.to_vec();
    PhiEngine::new(move |d| TruncSeries::from_polynomial(f.clone(), d), ctx)
}

/// Both sides of the functional equation for polynomial `f` at `s ∈ Z_p`.
pub fn functional_eq_poly(engine: &PhiEngine, f: &[Rational], s: &PadicNumber) -> Result<(PadicNumber, PadicNumber)> {
    let p = s.p();
    let prec = engine.point_precision();
    let pt = |n: i64| PadicNumber::from_bigint(&BigInt::from(n), p, prec);
    let a0 = PadicNumber::from_rational(&f.first().cloned().unwrap_or_default(), p, prec);
    let lhs = a0.exp()? + s.clone() * engine.eval(&(s.clone() - pt(1)))?;
    let mut rhs = PadicNumber::exact_zero(p);
    for (m, c) in functional_eq_coeffs(f).iter().enumerate() {
        let term = PadicNumber::from_rational(c, p, prec) * engine.eval(&(s.clone() + pt(m as i64)))?;
        rhs = if m % 2 == 0 { rhs + term } else { rhs - term };
    }
    Ok((lhs, rhs))
}
