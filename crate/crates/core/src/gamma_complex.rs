//! The archimedean side in double precision.
//!
//! Everything reduces to integrals of `(1 − x)^s·exp(f(x))` over `(−∞, 0]`
//! or `[0, 1]` with `f` a real polynomial, computed by adaptive
//! Gauss–Kronrod quadrature.  On these ranges `1 − x > 0`, so `(1 − x)^s`
//! uses the real logarithm and no branch enters.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerances and limits for the adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Largest bisection count before giving up.
    pub max_subdivisions: usize,
    /// Largest truncation point tried for `(−∞, 0]`.
    pub max_cutoff: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { abs_tol: 1e-300, rel_tol: 1e-12, max_subdivisions: 4000, max_cutoff: 1e6 }
    }
}

/// A value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

impl Estimate {
    fn scale(self, c: Complex64) -> Estimate {
        Estimate { value: self.value * c, error: self.error * c.norm() }
    }
}

/// A branch of the logarithm, `Im log_θ z ∈ (θ − 2π, θ]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub theta: f64,
}

impl Default for Branch {
    fn default() -> Self {
        Branch { theta: std::f64::consts::PI }
    }
}

pub fn log_theta(z: Complex64, theta: f64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("log of zero".into()));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut arg = z.arg();
    while arg > theta {
        arg -= two_pi;
    }
    while arg <= theta - two_pi {
        arg += two_pi;
    }
    Ok(Complex64::new(z.norm().ln(), arg))
}

/// `w^s = exp(s·log_θ w)`.
pub fn pow_theta(w: Complex64, s: Complex64, theta: f64) -> Result<Complex64> {
    Ok((s * log_theta(w, theta)?).exp())
}

// Gauss–Kronrod 7/15 nodes and weights on [−1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// Adaptive integral of `f` over `[a, b]`, bisecting the interval with the
/// largest error estimate until the total error meets the tolerance.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<Estimate> {
    let mut parts: Vec<(f64, f64, Complex64, f64)> = Vec::new();
    let pieces = 8;
    for i in 0..pieces {
        let lo = a + (b - a) * i as f64 / pieces as f64;
        let hi = a + (b - a) * (i + 1) as f64 / pieces as f64;
        let (v, e) = gk15(&f, lo, hi);
        parts.push((lo, hi, v, e));
    }
    for _ in 0..cfg.max_subdivisions {
        let total: Complex64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if !total.re.is_finite() || !total.im.is_finite() {
            return Err(Error::NoConvergence("integrand is not finite".into()));
        }
        if err <= cfg.abs_tol.max(cfg.rel_tol * total.norm()) {
            return Ok(Estimate { value: total, error: err });
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (lo, hi, _, _) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    Err(Error::NoConvergence(format!("{} subdivisions exhausted", cfg.max_subdivisions)))
}

fn eval_poly(f: &[f64], x: f64) -> f64 {
    f.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `∫_{−∞}^0 (1 − x)^s exp(f(x)) dx` for a real polynomial `f` whose
/// leading term sends `f(x) → −∞` as `x → −∞`.
///
/// Past `R = max(1, 2Σ_{k<n}|a_k|/|a_n|)` one has `f(x) ≤ −c|x|` with
/// `c = |a_n|/2`, so the part beyond `X ≥ R` is at most
/// `(1+X)^σ e^{−cX}/κ`, `κ = c − max(σ,0)/(1+X) > 0`.  `X` doubles until
/// that bound is below the tolerance.
pub fn incomplete_mellin(f: &[f64], s: Complex64, cfg: &QuadConfig) -> Result<Estimate> {
    let n = f.iter().rposition(|&c| c != 0.0).ok_or_else(|| Error::Domain("f is zero".into()))?;
    if n == 0 {
        return Err(Error::Domain("f must be nonconstant".into()));
    }
    let an = f[n];
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    if an * sign >= 0.0 {
        return Err(Error::Domain("exp(f) does not decay at −∞".into()));
    }
    let rest: f64 = f[..n].iter().map(|c| c.abs()).sum();
    let r0 = (2.0 * rest / an.abs()).max(1.0);
    let c = an.abs() / 2.0;
    let sigma = s.re;
    let integrand = |x: f64| {
        let u = 1.0 - x;
        (s * u.ln() + eval_poly(f, x)).exp()
    };
    let tail = |x: f64| {
        let kappa = c - sigma.max(0.0) / (1.0 + x);
        if kappa <= 0.0 {
            f64::INFINITY
        } else {
            ((1.0 + x).ln() * sigma - c * x).exp() / kappa
        }
    };
    let mut x = r0.max(2.0 * sigma.max(0.0) / c).max(4.0);
    loop {
        let body = integrate(integrand, -x, 0.0, cfg)?;
        let t = tail(x);
        let tol = cfg.abs_tol.max(cfg.rel_tol * body.value.norm());
        if t <= tol {
            return Ok(Estimate { value: body.value, error: body.error + t });
        }
        x *= 2.0;
        if x > cfg.max_cutoff {
            return Err(Error::NoConvergence("cutoff exceeded the configured maximum".into()));
        }
    }
}

/// `Φ_{rt}(s)` scaled by `r^{s+1}`: `r^{s+1}∫_{−∞}^0 (1 − x)^s e^{rx} dx`.
pub fn gfn(s: Complex64, r: f64, cfg: &QuadConfig) -> Result<Estimate> {
    if r <= 0.0 {
        return Err(Error::Domain(format!("gfn needs r > 0, got {r}")));
    }
    let body = incomplete_mellin(&[0.0, r], s, cfg)?;
    Ok(body.scale(((s + 1.0) * r.ln()).exp()))
}

/// `r^{s+1}∫_0^1 (1 − x)^s e^{rx} dx` for `r < 0`, `Re s > −1`.
///
/// With `1 − x = v^k`, `k = max(1, ⌈2/(σ+1)⌉)`, the integrand becomes
/// `k·v^{k(s+1)−1} e^{r(1−v^k)}`, which is bounded near `v = 0`.
pub fn lgfn(s: Complex64, r: f64, branch: Branch, cfg: &QuadConfig) -> Result<Estimate> {
    if r >= 0.0 {
        return Err(Error::Domain(format!("lgfn needs r < 0, got {r}")));
    }
    let body = unit_integral(s, r, cfg)?;
    let rs = pow_theta(Complex64::new(r, 0.0), s + 1.0, branch.theta)?;
    Ok(body.scale(rs))
}

/// `∫_0^1 (1 − x)^s e^{rx} dx` for `Re s > −1`, any real `r`.
fn unit_integral(s: Complex64, r: f64, cfg: &QuadConfig) -> Result<Estimate> {
    if s.re <= -1.0 {
        return Err(Error::Domain(format!("needs Re s > −1, got {}", s.re)));
    }
    let k = (2.0 / (s.re + 1.0)).ceil().max(1.0);
    let e = s * k + (k - 1.0);
    let integrand = |v: f64| {
        if v == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        (e * v.ln() + r * (1.0 - v.powf(k))).exp() * k
    };
    integrate(integrand, 0.0, 1.0, cfg)
}

/// `Γ^θ(s, r)` for `r > 0`, as `e^{−r}·gfn(s − 1, r)`.
pub fn upper_gamma(s: Complex64, r: f64, cfg: &QuadConfig) -> Result<Estimate> {
    Ok(gfn(s - 1.0, r, cfg)?.scale(Complex64::new((-r).exp(), 0.0)))
}

/// `γ^θ(s, r) = r^s ∫_0^1 t^{s−1} e^{−tr} dt` for `Re s > 0`.
pub fn lower_gamma(s: Complex64, r: f64, branch: Branch, cfg: &QuadConfig) -> Result<Estimate> {
    if r == 0.0 {
        return Err(Error::ZeroR);
    }
    // t = 1 − x turns it into the unit integral with exponent s − 1.
    let body = unit_integral(s - 1.0, r, cfg)?;
    let rs = pow_theta(Complex64::new(r, 0.0), s, branch.theta)?;
    Ok(body.scale(rs * (-r).exp()))
}

/// `Γ̂(m) = (m − 1)!` for integers `m ≥ 1`.
pub fn gammahat(m: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("Γ̂ is taken at positive integers".into()));
    }
    Ok((1..m).fold(1.0, |acc, k| acc * k as f64))
}

pub fn gammahat_exact(m: u64) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::Domain("Γ̂ is taken at positive integers".into()));
    }
    Ok(crate::exact::factorial(m - 1))
}

/// The archimedean `Ψ_r(m)`: `gfn(m, r)` for `r > 0`, and
/// `−lgfn(m, r) + e^r Γ̂(m + 1)` for `r < 0`.
pub fn psi_complex(r: f64, m: u64, cfg: &QuadConfig) -> Result<Estimate> {
    let s = Complex64::new(m as f64, 0.0);
    if r > 0.0 {
        gfn(s, r, cfg)
    } else if r < 0.0 {
        let l = lgfn(s, r, Branch::default(), cfg)?;
        let extra = r.exp() * gammahat(m + 1)?;
        Ok(Estimate { value: -l.value + extra, error: l.error })
    } else {
        Err(Error::ZeroR)
    }
}

/// Residuals of `Γ(s+1,r) − r^s e^{−r} − sΓ(s,r)` (for `r > 0`) and
/// `γ(s+1,r) + r^s e^{−r} − sγ(s,r)` (for `Re s > 0`).
#[derive(Debug, Clone, Copy)]
pub struct Residuals {
    pub upper: Option<Estimate>,
    pub lower: Option<Estimate>,
}

pub fn recurrence_check(s: Complex64, r: f64, branch: Branch, cfg: &QuadConfig) -> Result<Residuals> {
    let rs = pow_theta(Complex64::new(r, 0.0), s, branch.theta)? * (-r).exp();
    let upper = if r > 0.0 {
        let a = upper_gamma(s + 1.0, r, cfg)?;
        let b = upper_gamma(s, r, cfg)?;
        Some(Estimate { value: a.value - rs - s * b.value, error: a.error + s.norm() * b.error })
    } else {
        None
    };
    let lower = if s.re > 0.0 && r != 0.0 {
        let a = lower_gamma(s + 1.0, r, branch, cfg)?;
        let b = lower_gamma(s, r, branch, cfg)?;
        Some(Estimate { value: a.value + rs - s * b.value, error: a.error + s.norm() * b.error })
    } else {
        None
    };
    Ok(Residuals { upper, lower })
}

/// Both sides of `exp(a_0) + sΦ_f(s−1) = Σ_m (−1)^m c_m Φ_f(s+m)` with
/// `Φ_f(s) = ∫_{−∞}^0 (1−x)^s exp(f(x)) dx`.
pub fn functional_eq_complex(f: &[f64], s: Complex64, cfg: &QuadConfig) -> Result<(Estimate, Estimate)> {
    let n = f.len() - 1;
    let base = incomplete_mellin(f, s - 1.0, cfg)?;
    let lhs = Estimate { value: f[0].exp() + s * base.value, error: s.norm() * base.error };
    let mut rhs = Estimate { value: Complex64::new(0.0, 0.0), error: 0.0 };
    for m in 0..n {
        let cm: f64 = (m + 1..=n).map(|k| k as f64 * binom_f64(k - 1, m) * f[k]).sum();
        let v = incomplete_mellin(f, s + m as f64, cfg)?;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        rhs.value += v.value * (sign * cm);
        rhs.error += v.error * cm.abs();
    }
    Ok((lhs, rhs))
}

fn binom_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, to_f64};
    use crate::gamma_padic::{cubic_f, psi_tilde};
    use proptest::prelude::*;
    use std::f64::consts::{E, PI};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn log_examples() {
        assert_eq!(log_theta(c(1.0), PI).unwrap(), c(0.0));
        assert!(close(log_theta(c(-1.0), PI).unwrap(), Complex64::new(0.0, PI), 1e-15));
        assert!(close(log_theta(c(-1.0), 0.0).unwrap(), Complex64::new(0.0, -PI), 1e-15));
        assert!(log_theta(c(0.0), PI).is_err());
        let z = Complex64::new(0.3, 2.9);
        assert!(close(log_theta(z.exp(), PI).unwrap(), z, 1e-14));
    }

    #[test]
    fn gfn_examples() {
        let cfg = QuadConfig::default();
        for r in [0.3, 1.0, 2.5] {
            assert!(close(gfn(c(0.0), r, &cfg).unwrap().value, c(1.0), 1e-10));
        }
        assert!(close(gfn(c(1.0), 1.0, &cfg).unwrap().value, c(2.0), 1e-10));
        for (m, w) in [1.0, 2.0, 5.0, 16.0, 65.0].iter().enumerate() {
            assert!(close(gfn(c(m as f64), 1.0, &cfg).unwrap().value, c(*w), 1e-10));
        }
        assert!(gfn(c(1.0), -1.0, &cfg).is_err());
    }

    #[test]
    fn lgfn_examples() {
        let cfg = QuadConfig::default();
        let b = Branch::default();
        assert!(close(lgfn(c(0.0), -1.0, b, &cfg).unwrap().value, c(1.0 / E - 1.0), 1e-10));
        assert!(close(lgfn(c(1.0), -1.0, b, &cfg).unwrap().value, c(1.0 / E), 1e-10));
        let near = lgfn(c(-0.9), -1.0, b, &cfg).unwrap();
        assert!(near.value.norm().is_finite());
        assert!(lgfn(c(-1.0), -1.0, b, &cfg).is_err());
        assert!(lgfn(c(0.0), 1.0, b, &cfg).is_err());
    }

    #[test]
    fn gammahat_examples() {
        assert_eq!(gammahat(1).unwrap(), 1.0);
        assert_eq!(gammahat(3).unwrap(), 2.0);
        assert_eq!(gammahat(5).unwrap(), 24.0);
        assert_eq!(gammahat_exact(5).unwrap(), BigInt::from(24));
        assert!(gammahat(0).is_err());
    }

    #[test]
    fn psi_complex_examples() {
        let cfg = QuadConfig::default();
        assert!(close(psi_complex(-1.0, 0, &cfg).unwrap().value, c(1.0), 1e-10));
        assert!(close(psi_complex(2.0, 1, &cfg).unwrap().value, c(3.0), 1e-10));
        assert!(close(psi_complex(1.0, 3, &cfg).unwrap().value, c(16.0), 1e-10));
        assert_eq!(psi_complex(0.0, 1, &cfg).unwrap_err(), Error::ZeroR);
    }

    #[test]
    fn psi_complex_interpolates_psi_tilde() {
        let cfg = QuadConfig::default();
        for r in [rat(1, 2), int(1), int(2), int(3), int(-1), rat(-1, 2)] {
            let m_max = if to_f64(&r) > 0.0 { 10 } else { 8 };
            for m in 0..=m_max {
                let want = to_f64(&(num_traits::pow(r.clone(), m as usize) * psi_tilde(&r, m).unwrap()));
                let got = psi_complex(to_f64(&r), m, &cfg).unwrap().value;
                assert!((got - c(want)).norm() <= 1e-8 * want.abs().max(1e-300) || (want == 0.0 && got.norm() < 1e-12));
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        let cfg = QuadConfig::default();
        let b = Branch::default();
        assert!(close(upper_gamma(c(1.0), 1.0, &cfg).unwrap().value, c(1.0 / E), 1e-12));
        let r = recurrence_check(c(1.0), 1.0, b, &cfg).unwrap();
        assert!(r.upper.unwrap().value.norm() < 1e-12);
        assert!(r.lower.unwrap().value.norm() < 1e-12);
        assert!(close(lower_gamma(c(1.0), -1.0, b, &cfg).unwrap().value, c(1.0 - E), 1e-12));
        let z = recurrence_check(Complex64::new(0.7, 1.3), 2.0, b, &cfg).unwrap();
        assert!(z.upper.unwrap().value.norm() < 1e-10);
        assert!(z.lower.unwrap().value.norm() < 1e-10);
    }

    #[test]
    fn integer_values_ignore_the_branch() {
        let cfg = QuadConfig::default();
        let a = lgfn(c(2.0), -1.5, Branch { theta: PI }, &cfg).unwrap().value;
        let b = lgfn(c(2.0), -1.5, Branch { theta: 3.0 * PI }, &cfg).unwrap().value;
        assert!(close(a, b, 1e-12));
    }

    #[test]
    fn tolerance_halving_is_stable() {
        let tight = QuadConfig { rel_tol: 5e-13, ..QuadConfig::default() };
        let loose = QuadConfig::default();
        let a = gfn(Complex64::new(2.5, -0.7), 0.8, &loose).unwrap();
        let b = gfn(Complex64::new(2.5, -0.7), 0.8, &tight).unwrap();
        assert!((a.value - b.value).norm() <= a.error.max(1e-12 * a.value.norm()));
    }

    #[test]
    fn cubic_complex_functional_equation() {
        let cfg = QuadConfig::default();
        let f: Vec<f64> = cubic_f(&int(3), &int(-4), &int(2)).iter().map(to_f64).collect();
        for s in [0.5, 1.0, 3.2] {
            let (lhs, rhs) = functional_eq_complex(&f, c(s), &cfg).unwrap();
            assert!(close(lhs.value, rhs.value, 1e-9), "{lhs:?} {rhs:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn linear_functional_equation(r in 0.2f64..4.0, s in 0.0f64..6.0, a0 in -1.0f64..1.0) {
            let cfg = QuadConfig::default();
            let (lhs, rhs) = functional_eq_complex(&[a0, r], c(s), &cfg).unwrap();
            prop_assert!(close(lhs.value, rhs.value, 1e-9));
        }
    }
}
