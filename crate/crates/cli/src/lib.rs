//! Report-producing commands behind the `incgamma` binary.

use std::fmt;

use incgamma::exact::{format_rational, parse_rational, to_f64, Rational};
use incgamma::gamma_complex::{functional_eq_complex, gfn, psi_complex, QuadConfig};
use incgamma::gamma_padic::{compatibility, functional_eq_poly, poly_engine, psi_tilde, IncGammaP};
use incgamma::mahler::DEFAULT_GUARD;
use incgamma::{PadicContext, PadicNumber};
use indexmap::IndexMap;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Environment variable holding the default p-adic precision.
pub const PREC_ENV: &str = "INCGAMMA_PREC";
pub const DEFAULT_PREC: i64 = 20;
/// Relative tolerance for complex comparisons.
pub const COMPLEX_TOL: f64 = 1e-8;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or a point outside the domain; exit code 2.
    Usage(String),
    Lib(incgamma::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<incgamma::Error> for CliError {
    fn from(e: incgamma::Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// A value with nothing to compare against.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub inputs: IndexMap<String, String>,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expansion: Option<String>,
    pub precision_claim: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub params: IndexMap<String, String>,
    pub rows: Vec<Row>,
    pub pass: bool,
}

impl RunReport {
    fn new(command: &str, params: &[(&str, String)]) -> Self {
        RunReport {
            command: command.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            rows: Vec::new(),
            pass: true,
        }
    }

    fn push(&mut self, inputs: &[(&str, String)], value: String, expansion: Option<String>, claim: String, status: Status) {
        if status == Status::Fail {
            self.pass = false;
        }
        self.rows.push(Row {
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            value,
            expansion,
            precision_claim: claim,
            status,
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CSV with header `inputs…, value, precision_claim, status`; the input
    /// columns are the union of row input keys in first-seen order.
    pub fn to_csv(&self) -> String {
        let mut keys: Vec<&str> = Vec::new();
        for row in &self.rows {
            for k in row.inputs.keys() {
                if !keys.contains(&k.as_str()) {
                    keys.push(k);
                }
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = keys.iter().copied().chain(["value", "precision_claim", "status"]);
        w.write_record(header).expect("write to memory");
        for row in &self.rows {
            let mut rec: Vec<String> = keys.iter().map(|k| row.inputs.get(*k).cloned().unwrap_or_default()).collect();
            rec.push(row.value.clone());
            rec.push(row.precision_claim.clone());
            rec.push(row.status.to_string());
            w.write_record(&rec).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

pub fn parse_r(s: &str) -> CliResult<Rational> {
    let r = parse_rational(s)?;
    if r.is_zero() {
        return Err(CliError::Usage("--r must be nonzero".into()));
    }
    Ok(r)
}

/// A real number written as `a/b`, an integer or a decimal.
pub fn parse_real(s: &str) -> CliResult<f64> {
    parse_rational(s)
        .map(|q| to_f64(&q))
        .or_else(|_| s.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("not a number: {s:?}"))))
}

pub fn parse_poly(s: &str) -> CliResult<Vec<Rational>> {
    let f: Vec<Rational> = s.split(',').map(parse_rational).collect::<Result<_, _>>()?;
    if f.len() < 2 {
        return Err(CliError::Usage("--poly needs at least a0,a1".into()));
    }
    Ok(f)
}

fn ctx(p: u64, prec: i64) -> CliResult<PadicContext> {
    if prec < 1 {
        return Err(CliError::Usage(format!("--prec must be at least 1, got {prec}")));
    }
    Ok(PadicContext::new(p, prec)?)
}

fn check_level(prec: i64) -> i64 {
    (prec - DEFAULT_GUARD).max(1)
}

fn padic_cells(x: &PadicNumber, k: i64) -> (String, Option<String>, String) {
    let x = x.with_precision(x.precision().min(k));
    let claim = format!("mod {}^{}", x.p(), x.precision());
    (x.residue_string(), Some(x.expansion()), claim)
}

fn complex_cell(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.15e}", z.re)
    } else {
        format!("{:.15e}{:+.15e}i", z.re, z.im)
    }
}

/// The exact table `Ψ̃(0..=m_max)`.
pub fn cmd_psi_tilde(r: &Rational, m_max: u64) -> CliResult<RunReport> {
    let mut rep = RunReport::new("psi-tilde", &[("r", format_rational(r)), ("m_max", m_max.to_string())]);
    for m in 0..=m_max {
        let v = psi_tilde(r, m)?;
        rep.push(&[("m", m.to_string())], format_rational(&v), None, "exact".into(), Status::Info);
    }
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Padic,
    Complex,
}

/// One value of `Ψ_{r,p}(s)` or of the archimedean `Ψ_r(s)`.
pub fn cmd_eval(side: Side, r: &Rational, p: Option<u64>, prec: i64, s: &str) -> CliResult<RunReport> {
    match side {
        Side::Padic => {
            let p = p.ok_or_else(|| CliError::Usage("--side padic needs --p".into()))?;
            let s = parse_rational(s)?;
            let g = IncGammaP::new(r, &ctx(p, prec)?)?;
            let v = g.psi_at(&s)?;
            let mut rep = RunReport::new(
                "eval",
                &[("side", "padic".into()), ("r", format_rational(r)), ("p", p.to_string()), ("prec", prec.to_string())],
            );
            let (value, exp, claim) = padic_cells(&v, prec);
            rep.push(&[("s", format_rational(&s))], value, exp, claim, Status::Info);
            Ok(rep)
        }
        Side::Complex => {
            let rf = to_f64(r);
            let cfg = QuadConfig::default();
            let sf = parse_real(s)?;
            let est = if sf >= 0.0 && sf.fract() == 0.0 {
                psi_complex(rf, sf as u64, &cfg)?
            } else if rf > 0.0 {
                gfn(Complex64::new(sf, 0.0), rf, &cfg)?
            } else {
                return Err(CliError::Usage("for r < 0 the complex side is evaluated at integers s ≥ 0".into()));
            };
            let mut rep = RunReport::new("eval", &[("side", "complex".into()), ("r", format_rational(r))]);
            rep.push(&[("s", s.trim().to_string())], complex_cell(est.value), None, format!("± {:.3e}", est.error), Status::Info);
            Ok(rep)
        }
    }
}

/// Compares `Ψ_{r,p}(m)` against `⟨r⟩^m Ψ̃(m)` mod `p^{prec − guard}` and,
/// if asked, the quadrature value against `r^m Ψ̃(m)`.
pub fn cmd_interp_check(r: &Rational, p: Option<u64>, m_max: u64, prec: i64, complex: bool) -> CliResult<RunReport> {
    if p.is_none() && !complex {
        return Err(CliError::Usage("give --p, --complex or both".into()));
    }
    let mut params = vec![("r", format_rational(r)), ("m_max", m_max.to_string())];
    if let Some(p) = p {
        params.push(("p", p.to_string()));
        params.push(("prec", prec.to_string()));
    }
    params.push(("complex", complex.to_string()));
    let mut rep = RunReport::new("interp-check", &params);
    if let Some(p) = p {
        let g = IncGammaP::new(r, &ctx(p, prec)?)?;
        let k = check_level(prec);
        for m in 0..=m_max {
            let m_i = i64::try_from(m).map_err(|_| CliError::Usage("--m-max too large".into()))?;
            let got = g.psi_at(&Rational::from_integer(m_i.into()))?;
            let want = g.angle().pow(m) * g.point(&psi_tilde(r, m)?);
            let status = if got.congruent(&want, k) { Status::Pass } else { Status::Fail };
            let (value, exp, claim) = padic_cells(&got, k);
            rep.push(&[("side", "padic".into()), ("m", m.to_string())], value, exp, claim, status);
        }
    }
    if complex {
        let cfg = QuadConfig::default();
        let rf = to_f64(r);
        for m in 0..=m_max {
            let exact = num_traits::pow(r.clone(), m as usize) * psi_tilde(r, m)?;
            let want = to_f64(&exact);
            let est = psi_complex(rf, m, &cfg)?;
            let err = (est.value - want).norm();
            // `r^m Ψ̃(m)` can vanish (r = −1, m = 1); fall back to absolute error.
            let scale = if exact.is_zero() { 1.0 } else { want.abs() };
            let status = if err <= COMPLEX_TOL * scale { Status::Pass } else { Status::Fail };
            let claim = format!("± {:.3e} (quadrature), |Δ| = {:.3e}", est.error, err);
            rep.push(&[("side", "complex".into()), ("m", m.to_string())], complex_cell(est.value), None, claim, status);
        }
    }
    Ok(rep)
}

/// Result of `func-eq`: the report, plus whether `f` failed the hypotheses.
pub struct FuncEqOutcome {
    pub report: RunReport,
    pub incompatible: bool,
}

/// Checks the hypotheses on `f` at `p`, then compares both sides of the
/// functional equation at `samples` seeded random points.
pub fn cmd_func_eq(f: &[Rational], p: u64, samples: usize, prec: i64, seed: u64, complex: bool) -> CliResult<FuncEqOutcome> {
    let poly = f.iter().map(format_rational).collect::<Vec<_>>().join(",");
    let mut rep = RunReport::new(
        "func-eq",
        &[
            ("poly", poly),
            ("p", p.to_string()),
            ("prec", prec.to_string()),
            ("samples", samples.to_string()),
            ("seed", seed.to_string()),
            ("complex", complex.to_string()),
        ],
    );
    let compat = compatibility(f, p)?;
    for (name, c) in [("integral", &compat.integral), ("exp_domain", &compat.exp_domain), ("principal", &compat.principal)] {
        let status = if c.pass { Status::Pass } else { Status::Fail };
        rep.push(&[("check", name.into())], c.witness.clone(), None, "exact".into(), status);
    }
    if !compat.all_pass() {
        return Ok(FuncEqOutcome { report: rep, incompatible: true });
    }
    let engine = poly_engine(f, &ctx(p, prec)?)?;
    let k = check_level(prec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let num = rng.gen_range(-1000i64..=1000);
        let mut den = rng.gen_range(1i64..=50);
        while den % p as i64 == 0 {
            den += 1;
        }
        let s = Rational::new(num.into(), den.into());
        let (lhs, rhs) = functional_eq_poly(&engine, f, &engine.point(&s))?;
        let status = if lhs.congruent(&rhs, k) { Status::Pass } else { Status::Fail };
        let diff = lhs - rhs;
        let (value, exp, claim) = padic_cells(&diff, k);
        rep.push(&[("check", "residual".into()), ("s", format_rational(&s))], value, exp, claim, status);
    }
    if complex {
        let cfg = QuadConfig::default();
        let ff: Vec<f64> = f.iter().map(to_f64).collect();
        let leading = ff.last().copied().unwrap_or(0.0);
        if leading <= 0.0 {
            return Err(CliError::Usage("the complex side needs a positive leading coefficient".into()));
        }
        for _ in 0..samples {
            let s: f64 = rng.gen_range(0.0..5.0);
            let s = (s * 1000.0).round() / 1000.0;
            let (lhs, rhs) = functional_eq_complex(&ff, Complex64::new(s, 0.0), &cfg)?;
            let diff = lhs.value - rhs.value;
            let rel = diff.norm() / rhs.value.norm().max(f64::MIN_POSITIVE);
            let status = if rel <= COMPLEX_TOL { Status::Pass } else { Status::Fail };
            let claim = format!("± {:.3e} (quadrature), relative {:.3e}", lhs.error + rhs.error, rel);
            rep.push(&[("check", "complex residual".into()), ("s", format!("{s}"))], complex_cell(diff), None, claim, status);
        }
    }
    Ok(FuncEqOutcome { report: rep, incompatible: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use incgamma::exact::{int, rat};

    #[test]
    fn psi_tilde_table() {
        let rep = cmd_psi_tilde(&int(2), 3).unwrap();
        let vals: Vec<_> = rep.rows.iter().map(|r| r.value.as_str()).collect();
        assert_eq!(vals, ["1", "3/2", "5/2", "19/4"]);
        let rep = cmd_psi_tilde(&int(1), 4).unwrap();
        let vals: Vec<_> = rep.rows.iter().map(|r| r.value.as_str()).collect();
        assert_eq!(vals, ["1", "2", "5", "16", "65"]);
    }

    #[test]
    fn zero_r_is_usage_error() {
        assert!(matches!(parse_r("0"), Err(CliError::Usage(_))));
        assert!(matches!(parse_r("x"), Err(CliError::Lib(incgamma::Error::Parse(_)))));
    }

    #[test]
    fn eval_padic_example() {
        let rep = cmd_eval(Side::Padic, &int(2), Some(3), 2, "2").unwrap();
        assert_eq!(rep.rows[0].value, "1 (mod 9)");
        assert_eq!(rep.rows[0].precision_claim, "mod 3^2");
    }

    #[test]
    fn eval_complex_example() {
        let rep = cmd_eval(Side::Complex, &int(1), None, 20, "3").unwrap();
        let v: f64 = rep.rows[0].value.parse().unwrap();
        assert!((v - 16.0).abs() < 1e-10);
        assert!(rep.rows[0].precision_claim.starts_with("± "));
    }

    #[test]
    fn eval_excluded_place() {
        let e = cmd_eval(Side::Padic, &int(3), Some(3), 10, "1").unwrap_err();
        assert_eq!(e.to_string(), "place excluded by P_r: v_3(r) = 1");
    }

    #[test]
    fn interp_rows() {
        let rep = cmd_interp_check(&rat(2, 1), Some(3), 6, 15, true).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.rows.len(), 14);
        let rep = cmd_interp_check(&int(-1), None, 8, 20, true).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn func_eq_linear_and_incompatible() {
        let out = cmd_func_eq(&[int(0), int(4)], 3, 3, 15, 1, false).unwrap();
        assert!(!out.incompatible && out.report.pass);
        let out = cmd_func_eq(&[int(0), int(2)], 3, 3, 15, 1, false).unwrap();
        assert!(out.incompatible);
        assert_eq!(out.report.rows[2].status, Status::Fail);
    }

    #[test]
    fn csv_header_is_fixed() {
        let rep = cmd_psi_tilde(&int(2), 1).unwrap();
        let csv = rep.to_csv();
        assert_eq!(csv.lines().next().unwrap(), "m,value,precision_claim,status");
        assert_eq!(csv.lines().nth(2).unwrap(), "1,3/2,exact,INFO");
    }

    #[test]
    fn json_round_trip() {
        let rep = cmd_interp_check(&int(2), Some(5), 4, 12, true).unwrap();
        let text = rep.to_json();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.to_json(), text);
    }
}
