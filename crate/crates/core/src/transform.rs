//! The transforms `S^y`, `L^x` and the two-variable function behind them.
//!
//! For `φ ∈ C(Z_p, Q_p)`,
//! `T_φ(x, y) = Σ_k (−1)^k (y)_k C(x,k) φ(x−k)`.
//! Fixing `y` gives `S^y(φ)`, fixing `x` gives `L^x(φ)`, and `L = L^{−1}`.

use num_bigint::BigInt;

use crate::error::Result;
use crate::mahler::{MahlerFn, TailBound};
use crate::padic::{vfact, PadicNumber};

fn int_like(x: &PadicNumber, n: i64) -> PadicNumber {
    PadicNumber::from_bigint(&BigInt::from(n), x.p(), x.precision())
}

fn tail_like(phi: &MahlerFn<PadicNumber>, t: i64) -> TailBound {
    if phi.tail().is_certified() {
        TailBound::Certified(t)
    } else {
        TailBound::Heuristic { exponent: t, window: 0 }
    }
}

/// Partial sum of `T_φ(x, y)` through `k = terms`.  The omitted terms are
/// multiples of `(y)_k`, so the result is capped at `v_p((terms+1)!) + ‖φ‖`.
pub fn two_var(phi: &MahlerFn<PadicNumber>, x: &PadicNumber, y: &PadicNumber, terms: usize) -> Result<PadicNumber> {
    if !y.is_integral() {
        return Err(crate::error::Error::NotIntegral(y.order()));
    }
    let bx = x.binomial_sequence(terms)?;
    let fy = y.falling_sequence(terms);
    let mut acc = phi.eval(x)?;
    for k in 1..=terms {
        let term = fy[k].clone() * bx[k].clone() * phi.eval(&(x.clone() - int_like(x, k as i64)))?;
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(acc.with_precision(vfact(terms + 1, x.p()) + phi.norm_exponent()))
}

/// `(1 − x)^{⋆y} = S^y(𝟙)`, Mahler coefficients `(−1)^n (y)_n` for `n < len`.
/// `(y)_n = n!·C(y,n)` certifies the tail `v_p(len!)`.
pub fn one_minus_x_pow(y: &PadicNumber, len: usize) -> Result<MahlerFn<PadicNumber>> {
    if !y.is_integral() {
        return Err(crate::error::Error::NotIntegral(y.order()));
    }
    let len = len.max(1);
    let coeffs = y
        .falling_sequence(len - 1)
        .into_iter()
        .enumerate()
        .map(|(n, c)| if n % 2 == 0 { c } else { -c })
        .collect();
    Ok(MahlerFn::new(coeffs, TailBound::Certified(vfact(len, y.p()))))
}

/// `q = S^{−1}(𝟙) = Σ n!·C(x,n)`.
pub fn q(p: u64, prec: i64, len: usize) -> MahlerFn<PadicNumber> {
    let len = len.max(1);
    let one = PadicNumber::one(p, prec);
    let coeffs = (0..len).map(|n| one.mul_factorial(n).with_precision(prec)).collect();
    MahlerFn::new(coeffs, TailBound::Certified(vfact(len, p)))
}

/// `S^y(φ) = (1 − x)^{⋆y} ⋆ φ`.  The result is long enough for its tail to
/// match the precision of `φ` (a polynomial `φ` has a non-polynomial
/// image).
pub fn s_y(phi: &MahlerFn<PadicNumber>, y: &PadicNumber) -> Result<MahlerFn<PadicNumber>> {
    let p = phi.coeffs()[0].p();
    let len = phi.len().max(terms_for(p, phi.norm_exponent(), phi.precision()));
    let u = one_minus_x_pow(y, len)?;
    Ok(u.convolve(phi)?.truncate(len))
}

/// Smallest `k` with `v_p(k!) + norm ≥ target`.
pub fn terms_for(p: u64, norm: i64, target: i64) -> usize {
    let mut k = 1;
    while vfact(k, p) + norm < target {
        k += 1;
    }
    k
}

/// `L^x(φ)` as a function of `y`: coefficients `(−1)^k (x)_k φ(x−k)` for
/// `k < terms`.  The tail is `v_p(terms!) + ‖φ‖`.
pub fn l_x(phi: &MahlerFn<PadicNumber>, x: &PadicNumber, terms: usize) -> Result<MahlerFn<PadicNumber>> {
    if !x.is_integral() {
        return Err(crate::error::Error::NotIntegral(x.order()));
    }
    let terms = terms.max(1);
    let fx = x.falling_sequence(terms - 1);
    let mut coeffs = Vec::with_capacity(terms);
    for (k, f) in fx.into_iter().enumerate() {
        let c = f * phi.eval(&(x.clone() - int_like(x, k as i64)))?;
        coeffs.push(if k % 2 == 0 { c } else { -c });
    }
    let t = vfact(terms, x.p()) + phi.norm_exponent();
    Ok(MahlerFn::new(coeffs, tail_like(phi, t)))
}

/// `L(φ)(y) = Σ_k k!·φ(−1−k)·C(y,k)` for `k < terms`.  The values
/// `φ(−1−k)` come from repeated `σ⁻¹`, which keeps the tail bound of `φ`.
pub fn l(phi: &MahlerFn<PadicNumber>, terms: usize) -> MahlerFn<PadicNumber> {
    let terms = terms.max(1);
    let p = phi.coeffs()[0].p();
    let mut coeffs = Vec::with_capacity(terms);
    coeffs.push(phi.negative_values(1).remove(0));
    for (k, v) in phi.negative_values(terms).into_iter().enumerate().skip(1) {
        coeffs.push(v.mul_factorial(k));
    }
    let t = vfact(terms, p) + phi.norm_exponent();
    MahlerFn::new(coeffs, tail_like(phi, t))
}

/// Number of terms after which `L(φ)` is known to `target` digits.
pub fn l_terms(phi: &MahlerFn<PadicNumber>, target: i64) -> usize {
    terms_for(phi.coeffs()[0].p(), phi.norm_exponent(), target)
}

/// A finite sum `Σ_{n=lo}^{lo+len−1} a_n (x−1)^{⋆n}`.
#[derive(Debug, Clone)]
pub struct AmiceElem {
    lo: i64,
    coeffs: Vec<PadicNumber>,
}

impl AmiceElem {
    pub fn new(lo: i64, coeffs: Vec<PadicNumber>) -> Self {
        assert!(!coeffs.is_empty());
        AmiceElem { lo, coeffs }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[PadicNumber] {
        &self.coeffs
    }

    /// `a_n`, zero outside the stored range.
    pub fn coeff(&self, n: i64) -> PadicNumber {
        if n < self.lo || n > self.hi() {
            return PadicNumber::exact_zero(self.coeffs[0].p());
        }
        self.coeffs[(n - self.lo) as usize].clone()
    }

    /// `D(Σ a_n (x−1)^{⋆n}) = Σ n·a_n (x−1)^{⋆(n−1)}`.
    pub fn d(&self) -> AmiceElem {
        let coeffs = (self.lo..=self.hi()).map(|n| self.coeff(n).mul_int(&BigInt::from(n))).collect();
        AmiceElem::new(self.lo - 1, coeffs)
    }

    /// The Mahler series, using `(x−1)^{⋆n} = (−1)^n (1−x)^{⋆n}`.
    pub fn to_mahler(&self, len: usize) -> Result<MahlerFn<PadicNumber>> {
        let p = self.coeffs[0].p();
        let prec = self.coeffs.iter().map(|c| c.precision()).min().expect("nonempty").min(1 << 20);
        let mut acc: Option<MahlerFn<PadicNumber>> = None;
        for n in self.lo..=self.hi() {
            let a = self.coeff(n);
            if a.is_zero() && a.precision() >= PadicNumber::EXACT {
                continue;
            }
            let y = PadicNumber::from_bigint(&BigInt::from(n), p, prec);
            let a = if n % 2 == 0 { a } else { -a };
            let term = one_minus_x_pow(&y, len)?.scale(&a);
            acc = Some(match acc {
                None => term,
                Some(s) => s.add(&term)?,
            });
        }
        Ok(acc.unwrap_or_else(|| MahlerFn::constant(PadicNumber::exact_zero(p))))
    }
}

/// Both sides of `∫(ψ⋆σφ) dδ_x = ∫(ψ⋆φ) dδ_{x+1} − ∫(Dψ⋆φ) dδ_x`.
pub fn parts_check(
    psi: &AmiceElem,
    phi: &MahlerFn<PadicNumber>,
    x: &PadicNumber,
) -> Result<(PadicNumber, PadicNumber)> {
    let p = phi.coeffs()[0].p();
    let len = phi.len().max(terms_for(p, phi.norm_exponent(), phi.precision()));
    let m = psi.to_mahler(len)?;
    let dm = psi.d().to_mahler(len)?;
    let lhs = m.convolve(&phi.shift())?.eval(x)?;
    let x1 = x.clone() + int_like(x, 1);
    let rhs = m.convolve(phi)?.eval(&x1)? - dm.convolve(phi)?.eval(x)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::padic::PadicContext;
    use proptest::prelude::*;

    const P: u64 = 5;
    const N: i64 = 20;

    fn ctx() -> PadicContext {
        PadicContext::new(P, N).unwrap()
    }

    fn pfn(c: &[i64], tail: TailBound) -> MahlerFn<PadicNumber> {
        MahlerFn::new(c.iter().map(|&a| ctx().from_int(a)).collect(), tail)
    }

    fn assert_fn_eq(a: &MahlerFn<PadicNumber>, b: &MahlerFn<PadicNumber>, k: i64) {
        for n in 0..a.len().max(b.len()) {
            let x = a.coeffs().get(n).cloned().unwrap_or_else(|| ctx().zero());
            let y = b.coeffs().get(n).cloned().unwrap_or_else(|| ctx().zero());
            assert!(x.congruent(&y, k), "n={n}: {x} vs {y}");
        }
    }

    /// `a ≡ b` to the precision both sides claim, which must be at least `k`.
    fn agree(a: &PadicNumber, b: &PadicNumber, k: i64) {
        let m = a.precision().min(b.precision());
        assert!(m >= k, "precision {m} < {k}");
        assert!(a.congruent(b, m), "{a} vs {b}");
    }

    #[test]
    fn one_minus_x_pow_examples() {
        let c = ctx();
        assert_fn_eq(&one_minus_x_pow(&c.from_int(0), 5).unwrap(), &pfn(&[1], TailBound::Zero), N);
        assert_fn_eq(&one_minus_x_pow(&c.from_int(1), 5).unwrap(), &pfn(&[1, -1], TailBound::Zero), N);
        assert_fn_eq(&one_minus_x_pow(&c.from_int(2), 5).unwrap(), &pfn(&[1, -2, 2], TailBound::Zero), N);
        let omx = pfn(&[1, -1], TailBound::Zero);
        let mut pow = pfn(&[1], TailBound::Zero);
        for m in 0..=8 {
            assert_fn_eq(&one_minus_x_pow(&c.from_int(m), 12).unwrap(), &pow, N);
            pow = pow.convolve(&omx).unwrap();
        }
    }

    #[test]
    fn negative_powers_are_powers_of_q() {
        let c = ctx();
        let len = 40;
        let qq = q(P, N, len);
        let mut pow = qq.clone();
        for m in 1..=4 {
            let u = one_minus_x_pow(&c.from_int(-m), len).unwrap();
            for x in [0i64, 1, 2, 7, -3] {
                let lhs = u.eval(&c.from_int(x)).unwrap();
                let rhs = pow.eval(&c.from_int(x)).unwrap();
                assert!(lhs.congruent(&rhs, lhs.precision().min(rhs.precision())));
                assert!(lhs.precision() >= 8);
            }
            pow = pow.convolve(&qq).unwrap().truncate(len);
        }
    }

    #[test]
    fn q_examples() {
        let c = ctx();
        let qq = q(P, N, 30);
        agree(&qq.eval(&c.from_int(0)).unwrap(), &c.from_int(1), 7);
        agree(&qq.eval(&c.from_int(1)).unwrap(), &c.from_int(2), 7);
        let one = qq.convolve(&pfn(&[1, -1], TailBound::Zero)).unwrap();
        assert!(one.coeffs()[0].congruent(&c.one(), N));
        let t = one.precision();
        assert!(t >= 7);
        assert!(one.coeffs()[1..].iter().all(|a| a.order() >= t));
    }

    #[test]
    fn s_y_examples() {
        let c = ctx();
        let one = pfn(&[1], TailBound::Zero);
        assert_fn_eq(&s_y(&one, &c.from_int(1)).unwrap(), &pfn(&[1, -1], TailBound::Zero), N);
        let id = pfn(&[0, 1], TailBound::Zero);
        let s = s_y(&id, &c.from_int(1)).unwrap();
        agree(&s.eval(&c.from_int(2)).unwrap(), &c.zero(), N);
        let phi = pfn(&[3, -7, 11, 2], TailBound::Zero);
        assert_fn_eq(&s_y(&phi, &c.from_int(0)).unwrap(), &phi, N);
        assert_eq!(s_y(&phi, &c.from_rational(&rat(1, 3))).unwrap().precision(), N);
        // S(φ)(x) = φ(x) − xφ(x−1)
        let s1 = s_y(&phi, &c.from_int(1)).unwrap();
        for x in -3..6 {
            let want = phi.eval(&c.from_int(x)).unwrap() - c.from_int(x) * phi.eval(&c.from_int(x - 1)).unwrap();
            agree(&s1.eval(&c.from_int(x)).unwrap(), &want, 15);
        }
    }

    #[test]
    fn two_var_examples() {
        let c = ctx();
        let phi = pfn(&[3, -7, 11, 2], TailBound::Zero);
        let y = c.from_rational(&rat(2, 3));
        agree(&two_var(&phi, &c.from_int(0), &y, 30).unwrap(), &c.from_int(3), 7);
        let one = pfn(&[1], TailBound::Zero);
        agree(&two_var(&one, &c.from_int(1), &c.from_int(1), 30).unwrap(), &c.zero(), 7);
        let x = c.from_rational(&rat(-4, 7));
        agree(&two_var(&phi, &x, &c.from_int(0), 30).unwrap(), &phi.eval(&x).unwrap(), 7);
    }

    #[test]
    fn l_examples() {
        let c = ctx();
        let phi = pfn(&[3, -7, 11, 2], TailBound::Zero);
        let l0 = l_x(&phi, &c.from_int(0), 30).unwrap();
        assert!(l0.coeffs()[0].congruent(&c.from_int(3), N));
        assert!(l0.coeffs()[1..].iter().all(|a| a.is_zero()));
        let one = pfn(&[1], TailBound::Zero);
        let lq = l(&one, 30);
        assert_fn_eq(&lq, &q(P, N, 30), N);
        let lphi = l(&phi, 30);
        let want = phi.eval(&c.from_int(-1)).unwrap();
        agree(&lphi.eval(&c.from_int(0)).unwrap(), &want, 7);
        let lm1 = l_x(&phi, &c.from_int(-1), 30).unwrap();
        assert_fn_eq(&lphi, &lm1, N);
    }

    #[test]
    fn amice_d_examples() {
        let c = ctx();
        let a0 = AmiceElem::new(0, vec![c.from_int(4)]);
        assert!(a0.d().coeffs().iter().all(|x| x.is_zero()));
        let x2 = AmiceElem::new(2, vec![c.one()]);
        let d = x2.d();
        assert_eq!(d.lo(), 1);
        assert!(d.coeff(1).congruent(&c.from_int(2), N));
        let xm1 = AmiceElem::new(-1, vec![c.one()]);
        assert!(xm1.d().coeff(-2).congruent(&c.from_int(-1), N));
    }

    #[test]
    fn parts_examples() {
        let c = ctx();
        let phi = pfn(&[3, -7, 11, 2, 5], TailBound::Zero);
        let x = c.from_rational(&rat(3, 7));
        let psi = AmiceElem::new(0, vec![c.one()]);
        let (lhs, rhs) = parts_check(&psi, &phi, &x).unwrap();
        agree(&lhs, &rhs, 6);
        let one = pfn(&[1], TailBound::Zero);
        let psi = AmiceElem::new(-2, vec![c.from_int(3), c.zero(), c.from_int(-1), c.from_int(2)]);
        let (lhs, rhs) = parts_check(&psi, &one, &x).unwrap();
        agree(&lhs, &rhs, 6);
        // ψ = (1−x)^{⋆3} = −(x−1)^{⋆3}: S³σφ = σS³φ + 3S²φ.
        let psi = AmiceElem::new(3, vec![-c.one()]);
        let (lhs, _) = parts_check(&psi, &phi, &x).unwrap();
        let three = c.from_int(3);
        let want = s_y(&phi, &three).unwrap().eval(&(x.clone() + c.one())).unwrap()
            + three.clone() * s_y(&phi, &c.from_int(2)).unwrap().eval(&x).unwrap();
        agree(&lhs, &want, 6);
    }

    fn zp() -> impl Strategy<Value = PadicNumber> {
        (-100_000i64..100_000, 1i64..50).prop_map(|(a, b)| {
            let b = if b % P as i64 == 0 { b + 1 } else { b };
            ctx().from_rational(&rat(a, b))
        })
    }

    fn rand_fn() -> impl Strategy<Value = MahlerFn<PadicNumber>> {
        prop::collection::vec(-300i64..300, 1..8).prop_map(|mut v| {
            v.resize(40, 0);
            MahlerFn::new(v.into_iter().map(|a| ctx().from_int(a)).collect(), TailBound::Zero)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn group_law(phi in rand_fn(), y in zp(), z in zp(), x in zp()) {
            let lhs = s_y(&phi, &(y.clone() + z.clone())).unwrap();
            let rhs = s_y(&s_y(&phi, &z).unwrap(), &y).unwrap();
            let (a, b) = (lhs.eval(&x).unwrap(), rhs.eval(&x).unwrap());
            prop_assert!(a.congruent(&b, a.precision().min(b.precision())));
            prop_assert!(a.precision() >= 8);
        }

        #[test]
        fn isometry(phi in rand_fn(), y in zp()) {
            let s = s_y(&phi, &y).unwrap();
            let stored = s.coeffs().iter().map(|c| c.order()).min().unwrap();
            let base = phi.coeffs().iter().map(|c| c.order()).min().unwrap();
            prop_assert!(stored.min(s.precision()) == base.min(s.precision()));
        }

        #[test]
        fn switch_and_two_var(phi in rand_fn(), x in zp(), y in zp()) {
            let a = l_x(&phi, &x, 40).unwrap().eval(&y).unwrap();
            let b = s_y(&phi, &y).unwrap().eval(&x).unwrap();
            let c = two_var(&phi, &x, &y, 40).unwrap();
            let k = a.precision().min(b.precision()).min(c.precision());
            prop_assert!(k >= 8);
            prop_assert!(a.congruent(&b, k) && a.congruent(&c, k));
        }

        #[test]
        fn shift_law(phi in rand_fn(), y in zp(), s in zp()) {
            let lhs = l(&s_y(&phi, &y).unwrap(), 40).eval(&s).unwrap();
            let rhs = l(&phi, 40).eval(&(s.clone() + y.clone())).unwrap();
            let k = lhs.precision().min(rhs.precision());
            prop_assert!(k >= 8);
            prop_assert!(lhs.congruent(&rhs, k));
        }

        #[test]
        fn operator_identity(phi in rand_fn(), y in zp(), x in zp()) {
            let lhs = s_y(&phi.shift(), &y).unwrap().eval(&x).unwrap();
            let ym1 = y.clone() - ctx().one();
            let rhs = s_y(&phi, &y).unwrap().shift().eval(&x).unwrap()
                + y.clone() * s_y(&phi, &ym1).unwrap().eval(&x).unwrap();
            let k = lhs.precision().min(rhs.precision());
            prop_assert!(k >= 8);
            prop_assert!(lhs.congruent(&rhs, k));
        }

        #[test]
        fn s_y_matches_convolution(phi in rand_fn(), y in zp(), x in zp()) {
            let a = s_y(&phi, &y).unwrap().eval(&x).unwrap();
            let b = one_minus_x_pow(&y, 80).unwrap().convolve(&phi).unwrap().eval(&x).unwrap();
            let k = a.precision().min(b.precision());
            prop_assert!(a.congruent(&b, k));
        }
    }
}
