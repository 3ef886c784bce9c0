//! Asymptotic predictions and limit constants.
//!
//! `det M_n ~ G^n n^Omega E` with the growth, exponent, and constant read off
//! the symbol: the general piecewise-continuous formula, the Toeplitz
//! counterpart, the dedicated one-jump / two-jump / power-factor predictions,
//! and the pair/localization/ratio constants. All complex powers take
//! principal logs; Wiener-Hopf logs are the exact finite sums.

use crate::error::{Error, Result};
use crate::logvalue::LogValue;
use crate::special::log_barnes_g;
use crate::symbol::{
    log_wiener_hopf_parts, regime_check, Center, JumpFactor, SmoothPart, SpecialKind, SymbolSpec,
};
use num_complex::Complex64;
use std::f64::consts::PI;

const LN_2: f64 = std::f64::consts::LN_2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ln_2pi() -> f64 {
    (2.0 * PI).ln()
}

/// Per-n phase modifier a prediction may carry: the two-jump symbol at +-i
/// alternates by `i^sigma`, `sigma = n mod 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityPhase {
    None,
    ISigma,
}

/// A prediction `exp(n log_growth + omega log n + log_constant)`, with an
/// optional parity phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPrediction {
    pub log_growth: Complex64,
    pub omega: Complex64,
    pub log_constant: Complex64,
    pub parity_phase: ParityPhase,
}

impl AsymptoticPrediction {
    pub fn new(log_growth: Complex64, omega: Complex64, log_constant: Complex64) -> Self {
        AsymptoticPrediction {
            log_growth,
            omega,
            log_constant,
            parity_phase: ParityPhase::None,
        }
    }

    /// Evaluate at matrix dimension n >= 1, in log scale.
    pub fn predict(&self, n: usize) -> LogValue {
        assert!(n >= 1);
        let nf = n as f64;
        let log = nf * self.log_growth + nf.ln() * self.omega + self.log_constant;
        let mut v = LogValue::from_log(log);
        if self.parity_phase == ParityPhase::ISigma && n % 2 == 1 {
            v = v.mul(&LogValue::new(0.0, PI / 2.0));
        }
        v
    }
}

/// The smooth-symbol constants: growth log G, Szego-Widom constant log E,
/// and the Toeplitz-to-Toeplitz+Hankel ratio constant log F.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothConstants {
    pub log_g: Complex64,
    pub log_e: Complex64,
    pub log_f: Complex64,
}

/// `log G = [log b]_0`, `log E = sum k [log b]_k [log b]_{-k}`,
/// `log F = (1/2)(log b_+(1) - log b_+(-1)) - (1/2) sum k [log b]_k^2`.
pub fn smooth_constants(smooth: &SmoothPart) -> SmoothConstants {
    let log_g = smooth.log_coeff(0);
    let mut log_e = c(0.0, 0.0);
    let mut half_sum_sq = c(0.0, 0.0);
    for (k, v) in smooth.iter() {
        if k >= 1 {
            log_e += k as f64 * v * smooth.log_coeff(-k);
            half_sum_sq += 0.5 * k as f64 * v * v;
        }
    }
    let (lp1, _) = log_wiener_hopf_parts(smooth, c(1.0, 0.0)).expect("|1| = 1");
    let (lpm1, _) = log_wiener_hopf_parts(smooth, c(-1.0, 0.0)).expect("|-1| = 1");
    SmoothConstants {
        log_g,
        log_e,
        log_f: 0.5 * (lp1 - lpm1) - half_sum_sq,
    }
}

/// `log E(b, c) = sum_{k>=1} k [log b]_k [log c]_{-k}` (finite sum).
pub fn pair_constant_e(b_log: &SmoothPart, c_log: &SmoothPart) -> Complex64 {
    let mut s = c(0.0, 0.0);
    for (k, v) in b_log.iter() {
        if k >= 1 {
            s += k as f64 * v * c_log.log_coeff(-k);
        }
    }
    s
}

fn checked_log_g(z: Complex64, factor: &str) -> Result<Complex64> {
    log_barnes_g(z).map_err(|e| match e {
        Error::BarnesGZero { z, .. } => Error::BarnesGZero {
            z,
            factor: Some(factor.to_string()),
        },
        other => other,
    })
}

/// The Barnes-G/2-power row attached to a jump at 1 (`at = +1`) or at -1
/// (`at = -1`): shared between the general constant and the one-jump
/// predictions so the two agree factor by factor. An absent jump contributes
/// exactly zero.
fn one_jump_row(beta: Complex64, at: i32) -> Result<Complex64> {
    if beta.norm() == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let half = if at == 1 { 0.5 } else { 1.5 };
    let mut s = checked_log_g(1.0 + beta, "G(1+beta)")?;
    s += checked_log_g(1.0 - beta, "G(1-beta)")?;
    s += checked_log_g(
        c(half, 0.0) - beta,
        if at == 1 {
            "G(1/2-beta)"
        } else {
            "G(3/2-beta)"
        },
    )?;
    s -= checked_log_g(c(half, 0.0), "G(half)")?;
    s += beta / 2.0 * ln_2pi();
    s += 1.5 * beta * beta * LN_2;
    Ok(s)
}

/// Principal log of `1 - e^{i x}` for real x (not a multiple of 2 pi).
fn log_one_minus_exp(x: f64) -> Complex64 {
    (c(1.0, 0.0) - Complex64::from_polar(1.0, x)).ln()
}

/// Principal log of `1 + e^{i x}`.
fn log_one_plus_exp(x: f64) -> Complex64 {
    (c(1.0, 0.0) + Complex64::from_polar(1.0, x)).ln()
}

fn structural_ok_for_m(spec: &SymbolSpec) -> Result<()> {
    if !spec.powers.is_empty() {
        return Err(Error::RegimeViolation(
            "power factors are not covered by the piecewise-jump formula".into(),
        ));
    }
    if spec.special_kind.is_some() {
        return Err(Error::RegimeViolation(
            "special two-jump symbols use their dedicated predictors".into(),
        ));
    }
    for (i, a) in spec.jumps.iter().enumerate() {
        for b in &spec.jumps[i..] {
            if (a.theta0 + b.theta0).abs() < 1e-12 {
                return Err(Error::RegimeViolation(format!(
                    "jump angles {} and {} are conjugate (theta_r + theta_s = 0)",
                    a.theta0, b.theta0
                )));
            }
        }
    }
    Ok(())
}

/// Power exponent `Omega_M = -3 b_+^2/2 - b_+/2 - 3 b_-^2/2 + b_-/2 - sum b_r^2`.
pub fn omega_m(spec: &SymbolSpec) -> Result<Complex64> {
    structural_ok_for_m(spec)?;
    let bp = spec.jump_plus;
    let bm = spec.jump_minus;
    let mut omega = -1.5 * bp * bp - 0.5 * bp - 1.5 * bm * bm + 0.5 * bm;
    for j in &spec.jumps {
        omega -= j.beta * j.beta;
    }
    Ok(omega)
}

/// log of the constant term E_M in the general asymptotic formula, as the sum
/// of the logs of every factor with principal branches.
pub fn e_m_constant(spec: &SymbolSpec) -> Result<Complex64> {
    structural_ok_for_m(spec)?;
    let sc = smooth_constants(&spec.smooth);
    let bp = spec.jump_plus;
    let bm = spec.jump_minus;
    let mut s = sc.log_e + sc.log_f;
    s += one_jump_row(bp, 1)?;
    s += one_jump_row(bm, -1)?;
    for j in &spec.jumps {
        let b = j.beta;
        if b.norm() == 0.0 {
            continue;
        }
        s += checked_log_g(1.0 + b, "G(1+beta_r)")?;
        s += checked_log_g(1.0 - b, "G(1-beta_r)")?;
        s += (b * b / 2.0 + b / 2.0) * log_one_minus_exp(-j.theta0);
        s += (b * b / 2.0 - b / 2.0) * log_one_plus_exp(-j.theta0);
    }
    let (lp1, lm1) = log_wiener_hopf_parts(&spec.smooth, c(1.0, 0.0))?;
    let (lpm1, lmm1) = log_wiener_hopf_parts(&spec.smooth, c(-1.0, 0.0))?;
    s += 2.0 * bp * lp1 - bp * lm1;
    s += 2.0 * bm * lpm1 - bm * lmm1;
    s += 3.0 * bp * bm * LN_2;
    for j in &spec.jumps {
        let b = j.beta;
        if b.norm() == 0.0 {
            continue;
        }
        let t_pos = Complex64::from_polar(1.0, j.theta0);
        let t_neg = Complex64::from_polar(1.0, -j.theta0);
        let (lp, lm) = log_wiener_hopf_parts(&spec.smooth, t_pos)?;
        let (lp_conj, _) = log_wiener_hopf_parts(&spec.smooth, t_neg)?;
        s += b * lp - b * lm + b * lp_conj;
        s += 2.0 * bp * b * log_one_minus_exp(-j.theta0);
        s += bp * b * log_one_minus_exp(j.theta0);
        s += 2.0 * bm * b * log_one_plus_exp(-j.theta0);
        s += bm * b * log_one_plus_exp(j.theta0);
    }
    for (ri, r) in spec.jumps.iter().enumerate() {
        for sj in &spec.jumps[..ri] {
            let w = r.beta * sj.beta;
            s += w * log_one_minus_exp(sj.theta0 - r.theta0);
            s += w * log_one_minus_exp(r.theta0 - sj.theta0);
            s += w * log_one_minus_exp(-(sj.theta0 + r.theta0));
        }
    }
    Ok(s)
}

/// Dedicated prediction for the pure jump at 1 (`at = +1`) or -1 (`at = -1`),
/// valid for arbitrary non-integer complex beta.
pub fn predict_one_jump(beta: Complex64, at: i32) -> Result<AsymptoticPrediction> {
    assert!(at == 1 || at == -1);
    if crate::special::near_integer(beta, 1e-12) && beta.norm() != 0.0 {
        return Err(Error::IntegerBeta(format!("{beta}")));
    }
    let omega = -1.5 * beta * beta - 0.5 * at as f64 * beta;
    Ok(AsymptoticPrediction::new(
        c(0.0, 0.0),
        omega,
        one_jump_row(beta, at)?,
    ))
}

/// Dedicated prediction for the special two-jump symbols. The prediction for
/// the rotated pair carries the alternating `i^sigma` phase.
pub fn predict_two_jump(kind: SpecialKind, beta: Complex64) -> Result<AsymptoticPrediction> {
    let spec = SymbolSpec::special(kind, beta);
    spec.validate()?;
    let mut pred = match kind {
        SpecialKind::Phi1 | SpecialKind::Phi3 => {
            let omega = c(-0.25, 0.0) - 3.0 * beta * beta;
            let mut s = 4.0 * beta * beta * LN_2;
            s += checked_log_g(1.0 - 2.0 * beta, "G(1-2beta)")?;
            s += checked_log_g(0.5 + beta, "G(1/2+beta)")?;
            s += checked_log_g(1.5 + beta, "G(3/2+beta)")?;
            AsymptoticPrediction::new(c(0.0, 0.0), omega, s)
        }
        SpecialKind::Phi2 | SpecialKind::Phi4 => {
            let omega = -3.0 * beta * beta;
            let mut s = 4.0 * beta * beta * LN_2;
            s += checked_log_g(1.0 - 2.0 * beta, "G(1-2beta)")?;
            s += 2.0 * checked_log_g(1.0 + beta, "G(1+beta)")?;
            AsymptoticPrediction::new(c(0.0, 0.0), omega, s)
        }
    };
    if kind == SpecialKind::Phi3 {
        pred.parity_phase = ParityPhase::ISigma;
    }
    Ok(pred)
}

/// Dedicated prediction for the even power factor `u_alpha` at either center.
/// Integer alpha is permitted: the constant is analytic across it.
pub fn predict_ualpha(alpha: Complex64, center: Center) -> Result<AsymptoticPrediction> {
    if alpha.re <= -0.5 {
        return Err(Error::Domain(format!(
            "u_alpha prediction requires Re alpha > -1/2, got {alpha}"
        )));
    }
    if alpha.norm() == 0.0 {
        // u_0 is the constant symbol 1
        return Ok(AsymptoticPrediction::new(
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ));
    }
    let (omega, half) = match center {
        Center::Plus => ((alpha * alpha - alpha) / 2.0, 1.5),
        Center::Minus => ((alpha * alpha + alpha) / 2.0, 0.5),
    };
    let mut s = -alpha / 2.0 * ln_2pi();
    s += 1.5 * alpha * alpha * LN_2;
    s += checked_log_g(c(half, 0.0) + alpha, "G(half+alpha)")?;
    s += 2.0 * checked_log_g(1.0 + alpha, "G(1+alpha)")?;
    s -= checked_log_g(c(half, 0.0), "G(half)")?;
    s -= checked_log_g(1.0 + 2.0 * alpha, "G(1+2alpha)")?;
    Ok(AsymptoticPrediction::new(c(0.0, 0.0), omega, s))
}

/// Is the spec a single pure jump at 1 or -1 (no smooth part, no rotations)?
fn pure_single_pm_jump(spec: &SymbolSpec) -> Option<(Complex64, i32)> {
    if !spec.smooth.is_trivial()
        || !spec.jumps.is_empty()
        || !spec.powers.is_empty()
        || spec.special_kind.is_some()
    {
        return None;
    }
    match (spec.jump_plus.norm() != 0.0, spec.jump_minus.norm() != 0.0) {
        (true, false) => Some((spec.jump_plus, 1)),
        (false, true) => Some((spec.jump_minus, -1)),
        _ => None,
    }
}

/// The Toeplitz+Hankel prediction `(log G[b], Omega_M, log E_M)`. Routes the
/// special two-jump symbols and pure power factors to their dedicated
/// predictors; pure single jumps at +-1 are accepted for arbitrary
/// non-integer beta, everything else must be in the main-theorem regime.
pub fn predict_m(spec: &SymbolSpec) -> Result<AsymptoticPrediction> {
    spec.validate()?;
    if let Some(sp) = &spec.special_kind {
        return predict_two_jump(sp.kind, sp.beta);
    }
    if !spec.powers.is_empty() {
        if spec.powers.len() == 1
            && spec.smooth.is_trivial()
            && spec.jump_plus.norm() == 0.0
            && spec.jump_minus.norm() == 0.0
            && spec.jumps.is_empty()
        {
            return predict_ualpha(spec.powers[0].alpha, spec.powers[0].center);
        }
        return Err(Error::RegimeViolation(
            "power factors are only predictable as a pure single factor".into(),
        ));
    }
    if let Some((beta, at)) = pure_single_pm_jump(spec) {
        return predict_one_jump(beta, at);
    }
    let regime = regime_check(spec);
    if !regime.main_theorem_ok {
        let bp = spec.jump_plus.re;
        let bm = spec.jump_minus.re;
        let mut why = Vec::new();
        if !(-0.5 < bp && bp < 0.25) {
            why.push(format!("Re beta_+ = {bp} outside (-1/2, 1/4)"));
        }
        if !(-0.25 < bm && bm < 0.5) {
            why.push(format!("Re beta_- = {bm} outside (-1/4, 1/2)"));
        }
        for j in &spec.jumps {
            if j.beta.re.abs() >= 0.5 {
                why.push(format!("|Re beta_r| = {} >= 1/2", j.beta.re.abs()));
            }
        }
        structural_ok_for_m(spec)?;
        return Err(Error::RegimeViolation(why.join("; ")));
    }
    Ok(AsymptoticPrediction::new(
        spec.smooth.log_coeff(0),
        omega_m(spec)?,
        e_m_constant(spec)?,
    ))
}

/// The Toeplitz prediction `(log G[b], Omega_T, log E_T)`; jumps at +-1 fold
/// into the rotated list. Requires |Re beta_r| < 1/2 for every jump.
pub fn predict_t(spec: &SymbolSpec) -> Result<AsymptoticPrediction> {
    spec.validate()?;
    if !spec.powers.is_empty() || spec.special_kind.is_some() {
        return Err(Error::RegimeViolation(
            "Toeplitz prediction covers smooth-plus-jumps symbols only".into(),
        ));
    }
    let jumps = spec.all_jumps();
    for j in &jumps {
        if j.beta.re.abs() >= 0.5 {
            return Err(Error::RegimeViolation(format!(
                "Toeplitz formula needs |Re beta_r| < 1/2, got {} at angle {}",
                j.beta.re, j.theta0
            )));
        }
    }
    let sc = smooth_constants(&spec.smooth);
    let mut omega = c(0.0, 0.0);
    let mut s = sc.log_e;
    for j in &jumps {
        if j.beta.norm() == 0.0 {
            continue;
        }
        omega -= j.beta * j.beta;
        s += checked_log_g(1.0 + j.beta, "G(1+beta_r)")?;
        s += checked_log_g(1.0 - j.beta, "G(1-beta_r)")?;
        let (lp, lm) = log_wiener_hopf_parts(&spec.smooth, Complex64::from_polar(1.0, j.theta0))?;
        s += j.beta * lp - j.beta * lm;
    }
    for (ri, r) in jumps.iter().enumerate() {
        for (si, sj) in jumps.iter().enumerate() {
            if ri != si {
                s += r.beta * sj.beta * log_one_minus_exp(sj.theta0 - r.theta0);
            }
        }
    }
    Ok(AsymptoticPrediction::new(sc.log_g, omega, s))
}

/// Left operand of the pairwise localization constant.
pub enum HLeft<'a> {
    Smooth(&'a SmoothPart),
    Jump(&'a JumpFactor),
}

/// log of the pairwise localization constant H(., psi) for a rotated jump
/// `psi = t_{beta_s}(e^{i(theta - theta_s)})`.
pub fn localization_constant_h(left: HLeft<'_>, right: &JumpFactor) -> Result<Complex64> {
    match left {
        HLeft::Smooth(b) => {
            let ts = right.theta0;
            let (lp, lm) = log_wiener_hopf_parts(b, Complex64::from_polar(1.0, ts))?;
            let (lp_conj, _) = log_wiener_hopf_parts(b, Complex64::from_polar(1.0, -ts))?;
            Ok(right.beta * lp - right.beta * lm + right.beta * lp_conj)
        }
        HLeft::Jump(l) => {
            if l.beta.re.abs() >= 0.5 || right.beta.re.abs() >= 0.5 {
                return Err(Error::RegimeViolation(
                    "localization requires |Re beta| < 1/2 on both jumps".into(),
                ));
            }
            if (l.theta0 - right.theta0).abs() < 1e-12 {
                return Err(Error::Domain("coincident jump angles".into()));
            }
            if (l.theta0 + right.theta0).abs() < 1e-12 {
                return Err(Error::Domain(
                    "conjugate jump angles (theta_r + theta_s = 0) cannot be localized".into(),
                ));
            }
            let w = l.beta * right.beta;
            Ok(w * (log_one_minus_exp(right.theta0 - l.theta0)
                + log_one_minus_exp(l.theta0 - right.theta0)
                + log_one_minus_exp(-(l.theta0 + right.theta0))))
        }
    }
}

/// log of the limit of `det M_n / det T_n` for symbols with jumps away from
/// +-1 and no conjugate angle pairs.
pub fn ratio_constant_f(spec: &SymbolSpec) -> Result<Complex64> {
    spec.validate()?;
    if spec.jump_plus.norm() != 0.0 || spec.jump_minus.norm() != 0.0 {
        return Err(Error::RegimeViolation(
            "ratio constant requires no jumps at 1 or -1".into(),
        ));
    }
    structural_ok_for_m(spec)?;
    let sc = smooth_constants(&spec.smooth);
    let mut s = sc.log_f;
    for j in &spec.jumps {
        let b = j.beta;
        s += (b * b / 2.0 + b / 2.0) * log_one_minus_exp(-j.theta0);
        s += (b * b / 2.0 - b / 2.0) * log_one_plus_exp(-j.theta0);
        let (lp_conj, _) =
            log_wiener_hopf_parts(&spec.smooth, Complex64::from_polar(1.0, -j.theta0))?;
        s += b * lp_conj;
    }
    for (ri, r) in spec.jumps.iter().enumerate() {
        for sj in &spec.jumps[..ri] {
            s += r.beta * sj.beta * log_one_minus_exp(-(sj.theta0 + r.theta0));
        }
    }
    Ok(s)
}
