//! Declarative symbol model and Fourier coefficients.
//!
//! A symbol is a product of a smooth nonvanishing winding-zero part
//! `b = exp(sum_k [log b]_k t^k)`, pure jump factors `t_beta` located at 1,
//! -1, or rotated angles, even power factors `(2 -+ 2 cos theta)^alpha`, and
//! optionally one of the four special two-jump products. Elementary factors
//! have closed-form coefficients; composites go through panel quadrature.

use crate::error::{Error, Result};
use crate::quad::{self, OffsetHint, SingularPoint};
use crate::special::{log_gamma, near_integer};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;
const TOL: f64 = 1e-12;
/// Absolute accuracy target for quadrature-path coefficients.
pub const COEFF_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [v.re, v.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// A rotated pure jump `t_beta(e^{i(theta - theta0)})`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct JumpFactor {
    pub theta0: f64,
    #[serde(with = "complex_pair")]
    pub beta: Complex64,
}

/// Which point a power factor is centered on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Center {
    /// `(2 - 2 cos theta)^alpha`, singular at the point 1
    Plus,
    /// `(2 + 2 cos theta)^alpha`, singular at the point -1
    Minus,
}

impl Center {
    pub fn angle(&self) -> f64 {
        match self {
            Center::Plus => 0.0,
            Center::Minus => PI,
        }
    }
}

impl Serialize for Center {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Center::Plus => 1i8.serialize(s),
            Center::Minus => (-1i8).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Center {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Center::Plus),
            -1 => Ok(Center::Minus),
            other => Err(serde::de::Error::custom(format!(
                "center must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// An even power factor `u_alpha` centered at 1 or -1.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PowerFactor {
    #[serde(with = "complex_pair")]
    pub alpha: Complex64,
    pub center: Center,
}

/// The four special two-jump products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecialKind {
    /// `t_{beta-1/2}(e^{i theta}) t_{beta+1/2}(e^{i(theta-pi)})`
    Phi1,
    /// `t_beta(e^{i theta}) t_beta(e^{i(theta-pi)})`
    Phi2,
    /// `phi1` rotated to jumps at +-i
    Phi3,
    /// `phi2` rotated to jumps at +-i
    Phi4,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpecialFactor {
    pub kind: SpecialKind,
    #[serde(with = "complex_pair")]
    pub beta: Complex64,
}

/// Smooth part, stored as the finitely supported Fourier coefficients of its
/// logarithm. By construction the symbol it generates is nonvanishing with
/// winding number zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SmoothPart {
    coeffs: Vec<(i64, Complex64)>, // sorted by k, unique
}

impl SmoothPart {
    pub fn one() -> Self {
        SmoothPart::default()
    }

    pub fn new(mut coeffs: Vec<(i64, Complex64)>) -> Result<Self> {
        coeffs.retain(|(_, v)| v.norm() != 0.0);
        coeffs.sort_by_key(|(k, _)| *k);
        for w in coeffs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidSpec(format!(
                    "duplicate smooth log-coefficient index {}",
                    w[0].0
                )));
            }
        }
        Ok(SmoothPart { coeffs })
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn log_coeff(&self, k: i64) -> Complex64 {
        self.coeffs
            .iter()
            .find(|(j, _)| *j == k)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| c(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().copied()
    }

    /// log b evaluated at e^{i theta}.
    pub fn log_at(&self, theta: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(k, v)| v * Complex64::from_polar(1.0, *k as f64 * theta))
            .sum()
    }
}

impl Serialize for SmoothPart {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<(i64, f64, f64)> =
            self.coeffs.iter().map(|(k, v)| (*k, v.re, v.im)).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SmoothPart {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<(i64, f64, f64)>::deserialize(d)?;
        SmoothPart::new(
            rows.into_iter()
                .map(|(k, re, im)| (k, Complex64::new(re, im)))
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

fn zero_complex() -> Complex64 {
    c(0.0, 0.0)
}

/// Full declarative symbol description. See the README for the JSON schema.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct SymbolSpec {
    #[serde(rename = "smooth_log_coeffs", default)]
    pub smooth: SmoothPart,
    /// Jump exponent beta_+ of the factor at the point 1 (0 = absent).
    #[serde(with = "complex_pair", default = "zero_complex")]
    pub jump_plus: Complex64,
    /// Jump exponent beta_- of the factor at the point -1 (0 = absent).
    #[serde(with = "complex_pair", default = "zero_complex")]
    pub jump_minus: Complex64,
    #[serde(default)]
    pub jumps: Vec<JumpFactor>,
    #[serde(default)]
    pub powers: Vec<PowerFactor>,
    #[serde(default)]
    pub special_kind: Option<SpecialFactor>,
}

impl SymbolSpec {
    pub fn smooth_only(smooth: SmoothPart) -> Self {
        SymbolSpec {
            smooth,
            ..Default::default()
        }
    }

    pub fn pure_jump_plus(beta: Complex64) -> Self {
        SymbolSpec {
            jump_plus: beta,
            ..Default::default()
        }
    }

    pub fn pure_jump_minus(beta: Complex64) -> Self {
        SymbolSpec {
            jump_minus: beta,
            ..Default::default()
        }
    }

    pub fn pure_rotated_jump(beta: Complex64, theta0: f64) -> Self {
        SymbolSpec {
            jumps: vec![JumpFactor { theta0, beta }],
            ..Default::default()
        }
    }

    pub fn pure_power(alpha: Complex64, center: Center) -> Self {
        SymbolSpec {
            powers: vec![PowerFactor { alpha, center }],
            ..Default::default()
        }
    }

    pub fn special(kind: SpecialKind, beta: Complex64) -> Self {
        SymbolSpec {
            special_kind: Some(SpecialFactor { kind, beta }),
            ..Default::default()
        }
    }

    fn check_jump_exponent(beta: Complex64, what: &str) -> Result<()> {
        if beta.norm() != 0.0 && near_integer(beta, TOL) {
            return Err(Error::IntegerBeta(format!("{beta} ({what})")));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        Self::check_jump_exponent(self.jump_plus, "jump at 1")?;
        Self::check_jump_exponent(self.jump_minus, "jump at -1")?;
        for (i, j) in self.jumps.iter().enumerate() {
            if !(j.theta0 > -PI && j.theta0 <= PI) {
                return Err(Error::InvalidSpec(format!(
                    "jump angle {} outside (-pi, pi]",
                    j.theta0
                )));
            }
            if j.theta0.abs() < TOL || (j.theta0 - PI).abs() < TOL {
                return Err(Error::InvalidSpec(
                    "rotated jumps must not sit at 1 or -1; use jump_plus / jump_minus".into(),
                ));
            }
            Self::check_jump_exponent(j.beta, "rotated jump")?;
            for other in &self.jumps[i + 1..] {
                if (j.theta0 - other.theta0).abs() < TOL {
                    return Err(Error::InvalidSpec(format!(
                        "duplicate jump angle {}",
                        j.theta0
                    )));
                }
            }
        }
        for p in &self.powers {
            if p.alpha.re <= -0.5 {
                return Err(Error::InvalidSpec(format!(
                    "power exponent alpha = {} must have Re alpha > -1/2",
                    p.alpha
                )));
            }
        }
        if let Some(sp) = &self.special_kind {
            let pure = self.smooth.is_trivial()
                && self.jump_plus.norm() == 0.0
                && self.jump_minus.norm() == 0.0
                && self.jumps.is_empty()
                && self.powers.is_empty();
            if !pure {
                return Err(Error::InvalidSpec(
                    "special_kind cannot be combined with other factors".into(),
                ));
            }
            match sp.kind {
                SpecialKind::Phi1 | SpecialKind::Phi3 => {
                    if near_integer(sp.beta - 0.5, TOL) {
                        return Err(Error::InvalidSpec(format!(
                            "{:?} requires beta not in Z + 1/2, got {}",
                            sp.kind, sp.beta
                        )));
                    }
                }
                SpecialKind::Phi2 | SpecialKind::Phi4 => {
                    if near_integer(sp.beta, TOL) {
                        return Err(Error::InvalidSpec(format!(
                            "{:?} requires beta not in Z, got {}",
                            sp.kind, sp.beta
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// All jump data in Toeplitz convention: the points 1 and -1 fold into the
    /// rotated list as angles 0 and pi.
    pub fn all_jumps(&self) -> Vec<JumpFactor> {
        let mut out = Vec::new();
        if self.jump_plus.norm() != 0.0 {
            out.push(JumpFactor {
                theta0: 0.0,
                beta: self.jump_plus,
            });
        }
        if self.jump_minus.norm() != 0.0 {
            out.push(JumpFactor {
                theta0: PI,
                beta: self.jump_minus,
            });
        }
        out.extend(self.jumps.iter().copied());
        out
    }

    /// True when every factor makes the symbol real-valued a.e. on the circle.
    pub fn is_real_valued(&self) -> bool {
        let smooth_hermitian = self
            .smooth
            .iter()
            .all(|(k, v)| (self.smooth.log_coeff(-k) - v.conj()).norm() < TOL);
        smooth_hermitian
            && self.jump_plus.norm() == 0.0
            && self.jump_minus.norm() == 0.0
            && self.jumps.is_empty()
            && self.special_kind.is_none()
            && self.powers.iter().all(|p| p.alpha.im.abs() < TOL)
    }

    /// Pointwise value at e^{i theta}, with offset-aware evaluation of power
    /// factors near their singular angle.
    pub fn eval(&self, theta: f64, hint: Option<OffsetHint>) -> Complex64 {
        let mut log = self.smooth.log_at(theta);
        if self.jump_plus.norm() != 0.0 {
            log += jump_log(self.jump_plus, 0.0, theta);
        }
        if self.jump_minus.norm() != 0.0 {
            log += jump_log(self.jump_minus, PI, theta);
        }
        for j in &self.jumps {
            log += j.beta * (centered_fraction(theta, j.theta0) - PI) * Complex64::i();
        }
        for p in &self.powers {
            let center = p.center.angle();
            let delta = match hint {
                Some(h) if angles_equal_mod(h.angle, center) => h.delta,
                _ => {
                    let d = (theta - center).rem_euclid(TWO_PI);
                    d.min(TWO_PI - d)
                }
            };
            // (2 -+ 2 cos theta)^alpha = (2 sin(delta/2))^{2 alpha}
            log += 2.0 * p.alpha * (2.0 * (delta / 2.0).sin()).ln();
        }
        if let Some(sp) = &self.special_kind {
            let (b1, a1, b2, a2) = special_jump_pair(sp);
            log += b1 * (centered_fraction(theta, a1) - PI) * Complex64::i();
            log += b2 * (centered_fraction(theta, a2) - PI) * Complex64::i();
        }
        log.exp()
    }

    fn split_angles(&self) -> Vec<f64> {
        let mut angles = Vec::new();
        if self.jump_plus.norm() != 0.0 {
            angles.push(0.0);
        }
        if self.jump_minus.norm() != 0.0 {
            angles.push(PI);
        }
        angles.extend(self.jumps.iter().map(|j| j.theta0));
        if let Some(sp) = &self.special_kind {
            let (_, a1, _, a2) = special_jump_pair(sp);
            angles.push(a1);
            angles.push(a2);
        }
        angles
    }

    fn singular_points(&self) -> Vec<SingularPoint> {
        let mut pts: Vec<SingularPoint> = Vec::new();
        for p in &self.powers {
            let angle = p.center.angle();
            match pts.iter_mut().find(|s| angles_equal_mod(s.angle, angle)) {
                Some(s) => s.exponent += 2.0 * p.alpha,
                None => pts.push(SingularPoint {
                    angle,
                    exponent: 2.0 * p.alpha,
                }),
            }
        }
        pts
    }

    /// Does the spec consist of exactly one elementary factor (or none)?
    fn as_single_factor(&self) -> Option<SingleFactor> {
        let n_smooth = usize::from(!self.smooth.is_trivial());
        let n_plus = usize::from(self.jump_plus.norm() != 0.0);
        let n_minus = usize::from(self.jump_minus.norm() != 0.0);
        let n_special = usize::from(self.special_kind.is_some());
        let total = n_smooth + n_plus + n_minus + self.jumps.len() + self.powers.len() + n_special;
        match total {
            0 => Some(SingleFactor::Identity),
            1 if n_plus == 1 => Some(SingleFactor::Jump(self.jump_plus, 0.0)),
            1 if n_minus == 1 => Some(SingleFactor::Jump(self.jump_minus, PI)),
            1 if self.jumps.len() == 1 => {
                Some(SingleFactor::Jump(self.jumps[0].beta, self.jumps[0].theta0))
            }
            1 if self.powers.len() == 1 => Some(SingleFactor::Power(self.powers[0])),
            1 if n_special == 1 => Some(SingleFactor::Special(self.special_kind.unwrap())),
            _ => None,
        }
    }
}

enum SingleFactor {
    Identity,
    Jump(Complex64, f64),
    Power(PowerFactor),
    Special(SpecialFactor),
}

fn angles_equal_mod(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(TWO_PI);
    !(1e-12..=TWO_PI - 1e-12).contains(&d)
}

/// (theta - theta0) reduced into [0, 2 pi).
fn centered_fraction(theta: f64, theta0: f64) -> f64 {
    (theta - theta0).rem_euclid(TWO_PI)
}

fn jump_log(beta: Complex64, theta0: f64, theta: f64) -> Complex64 {
    beta * (centered_fraction(theta, theta0) - PI) * Complex64::i()
}

/// The two rotated jump factors making up a special symbol.
fn special_jump_pair(sp: &SpecialFactor) -> (Complex64, f64, Complex64, f64) {
    match sp.kind {
        SpecialKind::Phi1 => (sp.beta - 0.5, 0.0, sp.beta + 0.5, PI),
        SpecialKind::Phi2 => (sp.beta, 0.0, sp.beta, PI),
        SpecialKind::Phi3 => (sp.beta - 0.5, -PI / 2.0, sp.beta + 0.5, PI / 2.0),
        SpecialKind::Phi4 => (sp.beta, -PI / 2.0, sp.beta, PI / 2.0),
    }
}

/// Two-sided coefficient window `{phi_k : |k| <= k_max}`.
#[derive(Debug, Clone)]
pub struct FourierSeries {
    k_max: i64,
    coeffs: Vec<Complex64>,
}

impl FourierSeries {
    pub fn new(k_max: i64, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), (2 * k_max + 1) as usize);
        FourierSeries { k_max, coeffs }
    }

    pub fn from_fn(k_max: i64, f: impl Fn(i64) -> Complex64) -> Self {
        FourierSeries {
            k_max,
            coeffs: (-k_max..=k_max).map(f).collect(),
        }
    }

    pub fn k_max(&self) -> i64 {
        self.k_max
    }

    /// Coefficient phi_k; requires |k| <= k_max.
    pub fn get(&self, k: i64) -> Complex64 {
        assert!(k.abs() <= self.k_max, "coefficient {k} outside window");
        self.coeffs[(k + self.k_max) as usize]
    }
}

/// Fourier coefficient of the rotated jump `t_beta(e^{i(theta - theta0)})`:
/// `e^{-i k theta0} sin(pi beta) / (pi (beta - k))`. `beta = 0` is the
/// constant symbol 1; nonzero integer `beta` is rejected.
pub fn jump_fourier_coeff(beta: Complex64, theta0: f64, k: i64) -> Result<Complex64> {
    if beta.norm() == 0.0 {
        return Ok(if k == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) });
    }
    if near_integer(beta, TOL) {
        return Err(Error::IntegerBeta(format!("{beta}")));
    }
    let v = (PI * beta).sin() / (PI * (beta - k as f64));
    Ok(Complex64::from_polar(1.0, -(k as f64) * theta0) * v)
}

/// Which of the two unrotated special symbols a coefficient is asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phi12 {
    Phi1,
    Phi2,
}

/// Explicit coefficients of the special two-jump symbols at +-1:
/// odd-index-only for phi1, even-index-only for phi2.
pub fn phi12_fourier_coeff(kind: Phi12, beta: Complex64, k: i64) -> Result<Complex64> {
    match kind {
        Phi12::Phi1 => {
            if near_integer(beta - 0.5, TOL) {
                return Err(Error::Domain(format!(
                    "phi1 requires beta not in Z + 1/2, got {beta}"
                )));
            }
            if k % 2 == 0 {
                return Ok(c(0.0, 0.0));
            }
            Ok(-(PI * beta).cos() / (PI * (beta - k as f64 / 2.0)))
        }
        Phi12::Phi2 => {
            if near_integer(beta, TOL) {
                return Err(Error::Domain(format!(
                    "phi2 requires beta not in Z, got {beta}"
                )));
            }
            if k % 2 != 0 {
                return Ok(c(0.0, 0.0));
            }
            Ok((PI * beta).sin() / (PI * (beta - k as f64 / 2.0)))
        }
    }
}

/// Coefficient of any of the four special symbols; the rotated pair picks up
/// the modulation `i^k`.
pub fn special_fourier_coeff(kind: SpecialKind, beta: Complex64, k: i64) -> Result<Complex64> {
    let base = match kind {
        SpecialKind::Phi1 | SpecialKind::Phi3 => phi12_fourier_coeff(Phi12::Phi1, beta, k)?,
        SpecialKind::Phi2 | SpecialKind::Phi4 => phi12_fourier_coeff(Phi12::Phi2, beta, k)?,
    };
    match kind {
        SpecialKind::Phi1 | SpecialKind::Phi2 => Ok(base),
        SpecialKind::Phi3 | SpecialKind::Phi4 => {
            Ok(base * Complex64::i().powi(k.rem_euclid(4) as i32))
        }
    }
}

/// 1/Gamma(z), with the poles mapping to exact zeros.
fn recip_gamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => c(0.0, 0.0),
    }
}

/// Fourier coefficient of the power factor `u_alpha` at the chosen center:
/// `(-+1)^k Gamma(1+2 alpha) / (Gamma(1+alpha+k) Gamma(1+alpha-k))`.
///
/// The formula was installed after checking it against the panel-quadrature
/// oracle (see tests); requires `Re alpha > -1/2`.
pub fn ualpha_fourier_coeff(alpha: Complex64, center: Center, k: i64) -> Result<Complex64> {
    if alpha.re <= -0.5 {
        return Err(Error::Domain(format!(
            "u_alpha coefficient requires Re alpha > -1/2, got {alpha}"
        )));
    }
    if alpha.norm() == 0.0 {
        return Ok(if k == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) });
    }
    let kf = k as f64;
    let top = log_gamma(1.0 + 2.0 * alpha)
        .map_err(|_| Error::Domain(format!("Gamma(1+2 alpha) pole at alpha = {alpha}")))?;
    let v = top.exp() * recip_gamma(1.0 + alpha + kf) * recip_gamma(1.0 + alpha - kf);
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    match center {
        Center::Plus => Ok(sign * v),
        Center::Minus => Ok(v),
    }
}

/// Coefficients of the full product symbol for `|k| <= k_max`. Single
/// elementary factors use their closed forms; composites go through
/// panel-split quadrature at absolute accuracy [`COEFF_TOL`].
pub fn symbol_fourier_coeffs(spec: &SymbolSpec, k_max: i64) -> Result<FourierSeries> {
    if k_max < 1 {
        return Err(Error::Domain(format!(
            "window k_max = {k_max} must be >= 1"
        )));
    }
    spec.validate()?;
    if let Some(single) = spec.as_single_factor() {
        let mut coeffs = Vec::with_capacity((2 * k_max + 1) as usize);
        for k in -k_max..=k_max {
            coeffs.push(match &single {
                SingleFactor::Identity => {
                    if k == 0 {
                        c(1.0, 0.0)
                    } else {
                        c(0.0, 0.0)
                    }
                }
                SingleFactor::Jump(beta, theta0) => jump_fourier_coeff(*beta, *theta0, k)?,
                SingleFactor::Power(p) => ualpha_fourier_coeff(p.alpha, p.center, k)?,
                SingleFactor::Special(sp) => special_fourier_coeff(sp.kind, sp.beta, k)?,
            });
        }
        return Ok(FourierSeries::new(k_max, coeffs));
    }
    let splits = spec.split_angles();
    let singular = spec.singular_points();
    let eval = |theta: f64, hint: Option<OffsetHint>| spec.eval(theta, hint);
    let (coeffs, _est) = quad::fourier_coefficients(&eval, k_max, &splits, &singular, COEFF_TOL)?;
    Ok(FourierSeries::new(k_max, coeffs))
}

/// Wiener-Hopf plus/minus parts of the smooth symbol at a unit-modulus point:
/// `b_+(t) = exp(sum_{k>=1} t^k [log b]_k)`, `b_-(t) = exp(sum_{k>=1} t^{-k} [log b]_{-k})`.
pub fn wiener_hopf_parts(smooth: &SmoothPart, t: Complex64) -> Result<(Complex64, Complex64)> {
    let (lp, lm) = log_wiener_hopf_parts(smooth, t)?;
    Ok((lp.exp(), lm.exp()))
}

/// Logs of the Wiener-Hopf parts (exact finite sums; the natural branch).
pub fn log_wiener_hopf_parts(smooth: &SmoothPart, t: Complex64) -> Result<(Complex64, Complex64)> {
    if (t.norm() - 1.0).abs() > TOL {
        return Err(Error::Domain(format!("|t| must be 1, got {}", t.norm())));
    }
    let mut plus = c(0.0, 0.0);
    let mut minus = c(0.0, 0.0);
    for (k, v) in smooth.iter() {
        if k >= 1 {
            plus += t.powi(k as i32) * v;
        } else if k <= -1 {
            minus += t.powi(k as i32) * v;
        }
    }
    Ok((plus, minus))
}

/// Regime classification: the stability conditions (I)-(III) on the jump
/// exponents, and the hypotheses of the general Toeplitz+Hankel asymptotic
/// formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeReport {
    pub satisfies_i: bool,
    pub satisfies_ii: bool,
    pub satisfies_iii: bool,
    pub main_theorem_ok: bool,
}

/// Evaluate the regime conditions on the spec's jump data. Rotated jumps at
/// angles theta and -theta form a conjugate pair whose exponents couple in
/// conditions (II) and (III); `main_theorem_ok` additionally requires no
/// conjugate pairs, no power factors, and no special two-jump symbols.
pub fn regime_check(spec: &SymbolSpec) -> RegimeReport {
    let bp = spec.jump_plus.re;
    let bm = spec.jump_minus.re;

    // group rotated jumps into conjugate pairs (theta_r + theta_s = 0)
    let mut used = vec![false; spec.jumps.len()];
    let mut pairs: Vec<(f64, f64)> = Vec::new(); // (Re beta^+, Re beta^-)
    let mut any_conjugate_pair = false;
    for i in 0..spec.jumps.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut partner = None;
        for (j, other) in spec.jumps.iter().enumerate().skip(i + 1) {
            if !used[j] && (spec.jumps[i].theta0 + other.theta0).abs() < TOL {
                partner = Some(j);
                break;
            }
        }
        match partner {
            Some(j) => {
                used[j] = true;
                any_conjugate_pair = true;
                let (pos, neg) = if spec.jumps[i].theta0 > 0.0 {
                    (i, j)
                } else {
                    (j, i)
                };
                pairs.push((spec.jumps[pos].beta.re, spec.jumps[neg].beta.re));
            }
            None => pairs.push((spec.jumps[i].beta.re, 0.0)),
        }
    }

    let satisfies_i = bp.abs() < 0.5
        && bm.abs() < 0.5
        && pairs.iter().all(|(p, m)| p.abs() < 0.5 && m.abs() < 0.5);
    let satisfies_ii = (-0.75 < bp && bp < 0.25)
        && (-0.25 < bm && bm < 0.75)
        && pairs.iter().all(|(p, m)| (p + m).abs() < 0.5);
    let satisfies_iii = (-0.5 < bp && bp < 0.25)
        && (-0.25 < bm && bm < 0.5)
        && pairs
            .iter()
            .all(|(p, m)| p.abs() < 0.5 && m.abs() < 0.5 && (p + m).abs() < 0.5);
    let main_theorem_ok = satisfies_iii
        && !any_conjugate_pair
        && spec.powers.is_empty()
        && spec.special_kind.is_none();
    RegimeReport {
        satisfies_i,
        satisfies_ii,
        satisfies_iii,
        main_theorem_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::fourier_coefficients;
    use rand::{Rng, SeedableRng};

    #[test]
    fn jump_coeff_examples() {
        // beta = 1/2, theta0 = 0, k = 0 -> 2/pi
        let v = jump_fourier_coeff(c(0.5, 0.0), 0.0, 0).unwrap();
        assert!((v - 2.0 / PI).norm() < 1e-15);

        // t_0 is the constant 1
        assert_eq!(
            jump_fourier_coeff(c(0.0, 0.0), 1.0, 3).unwrap(),
            c(0.0, 0.0)
        );
        assert_eq!(
            jump_fourier_coeff(c(0.0, 0.0), 1.0, 0).unwrap(),
            c(1.0, 0.0)
        );

        // beta = 0.3, theta0 = pi/2, k = 1
        let v = jump_fourier_coeff(c(0.3, 0.0), PI / 2.0, 1).unwrap();
        let want = Complex64::from_polar(1.0, -PI / 2.0) * (0.3 * PI).sin() / (PI * (0.3 - 1.0));
        assert!((v - want).norm() < 1e-15);

        assert!(matches!(
            jump_fourier_coeff(c(2.0, 0.0), 0.0, 1),
            Err(Error::IntegerBeta(_))
        ));
    }

    #[test]
    fn phi12_coeff_examples() {
        // phi1, beta = 0, k = 3 -> -cos(0)/(pi (0 - 3/2)) = 2/(3 pi)
        let v = phi12_fourier_coeff(Phi12::Phi1, c(0.0, 0.0), 3).unwrap();
        assert!((v - 2.0 / (3.0 * PI)).norm() < 1e-15);

        // phi2 has no odd coefficients
        let v = phi12_fourier_coeff(Phi12::Phi2, c(0.25, 0.0), 1).unwrap();
        assert_eq!(v, c(0.0, 0.0));

        assert!(phi12_fourier_coeff(Phi12::Phi1, c(1.5, 0.0), 1).is_err());
        assert!(phi12_fourier_coeff(Phi12::Phi2, c(-2.0, 0.0), 2).is_err());
    }

    #[test]
    fn phi12_parity_is_exact() {
        for k in -9..=9i64 {
            let v1 = phi12_fourier_coeff(Phi12::Phi1, c(0.3, -0.2), k).unwrap();
            let v2 = phi12_fourier_coeff(Phi12::Phi2, c(0.3, -0.2), k).unwrap();
            if k % 2 == 0 {
                assert_eq!(v1, c(0.0, 0.0));
            } else {
                assert_eq!(v2, c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn ualpha_coeff_examples() {
        // alpha = 1 at the point 1: 2 - 2 cos theta has coefficients (2, -1)
        let v = ualpha_fourier_coeff(c(1.0, 0.0), Center::Plus, 0).unwrap();
        assert!((v - 2.0).norm() < 1e-14);
        let v = ualpha_fourier_coeff(c(1.0, 0.0), Center::Plus, 1).unwrap();
        assert!((v + 1.0).norm() < 1e-14);
        let v = ualpha_fourier_coeff(c(1.0, 0.0), Center::Plus, 2).unwrap();
        assert!(v.norm() < 1e-14);

        assert!(ualpha_fourier_coeff(c(-0.6, 0.0), Center::Plus, 0).is_err());
    }

    #[test]
    fn ualpha_closed_form_matches_quadrature_oracle() {
        // the oracle check that licensed installing the Gamma-ratio formula
        for alpha in [c(0.3, 0.0), c(1.7, 0.0), c(0.2, 0.4)] {
            for center in [Center::Plus, Center::Minus] {
                let spec = SymbolSpec::pure_power(alpha, center);
                let eval = |t: f64, h: Option<OffsetHint>| spec.eval(t, h);
                let (coeffs, _) = fourier_coefficients(
                    &eval,
                    64,
                    &[],
                    &[SingularPoint {
                        angle: center.angle(),
                        exponent: 2.0 * alpha,
                    }],
                    1e-9,
                )
                .unwrap();
                for k in -64..=64i64 {
                    let want = ualpha_fourier_coeff(alpha, center, k).unwrap();
                    assert!(
                        (coeffs[(k + 64) as usize] - want).norm() < 1e-10,
                        "alpha {alpha} center {center:?} k {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn elementary_quadrature_matches_closed_forms() {
        // 20 random draws across the elementary families, |k| <= 64
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for draw in 0..20 {
            let re = rng.gen_range(-0.45..0.45);
            let im = rng.gen_range(-0.3..0.3);
            let beta = c(re, im);
            let theta0 = rng.gen_range(0.3..2.8) * if draw % 2 == 0 { 1.0 } else { -1.0 };
            let spec = SymbolSpec::pure_rotated_jump(beta, theta0);
            let eval = |t: f64, h: Option<OffsetHint>| spec.eval(t, h);
            let (coeffs, _) = fourier_coefficients(&eval, 64, &[theta0], &[], 1e-9).unwrap();
            for k in (-64..=64i64).step_by(7) {
                let want = jump_fourier_coeff(beta, theta0, k).unwrap();
                assert!(
                    (coeffs[(k + 64) as usize] - want).norm() < 1e-9,
                    "draw {draw} k {k}"
                );
            }

            let alpha = c(rng.gen_range(-0.35..1.5), rng.gen_range(-0.5..0.5));
            let center = if draw % 2 == 0 {
                Center::Plus
            } else {
                Center::Minus
            };
            let spec = SymbolSpec::pure_power(alpha, center);
            let eval = |t: f64, h: Option<OffsetHint>| spec.eval(t, h);
            let (coeffs, _) = fourier_coefficients(
                &eval,
                64,
                &[],
                &[SingularPoint {
                    angle: center.angle(),
                    exponent: 2.0 * alpha,
                }],
                1e-9,
            )
            .unwrap();
            for k in (-64..=64i64).step_by(11) {
                let want = ualpha_fourier_coeff(alpha, center, k).unwrap();
                assert!(
                    (coeffs[(k + 64) as usize] - want).norm() < 1e-9,
                    "power draw {draw} k {k} alpha {alpha}"
                );
            }
        }
    }

    #[test]
    fn special_symbol_quadrature_cross_check() {
        // panel quadrature oracle for the explicit special-symbol
        // coefficients, complex beta, all four kinds
        let beta = c(0.1, 0.2);
        let cases = [
            (SpecialKind::Phi1, vec![0.0, PI]),
            (SpecialKind::Phi2, vec![0.0, PI]),
            (SpecialKind::Phi3, vec![-PI / 2.0, PI / 2.0]),
            (SpecialKind::Phi4, vec![-PI / 2.0, PI / 2.0]),
        ];
        for (kind, splits) in cases {
            let spec = SymbolSpec::special(kind, beta);
            let eval = |t: f64, h: Option<OffsetHint>| spec.eval(t, h);
            let (coeffs, _) = fourier_coefficients(&eval, 12, &splits, &[], 1e-10).unwrap();
            for k in -12..=12i64 {
                let want = special_fourier_coeff(kind, beta, k).unwrap();
                assert!(
                    (coeffs[(k + 12) as usize] - want).norm() < 1e-10,
                    "{kind:?} k {k}"
                );
            }
        }
    }

    #[test]
    fn modulation_identity_is_exact() {
        // coefficients of a rotated factor are e^{-i k theta0} times unrotated
        for k in -12..=12i64 {
            let unrot = jump_fourier_coeff(c(0.3, 0.1), 0.0, k).unwrap();
            let rot = jump_fourier_coeff(c(0.3, 0.1), 1.1, k).unwrap();
            let want = Complex64::from_polar(1.0, -(k as f64) * 1.1) * unrot;
            assert_eq!(rot, want);
        }
    }

    #[test]
    fn single_factor_passthrough() {
        let spec = SymbolSpec::pure_jump_plus(c(0.3, 0.0));
        let series = symbol_fourier_coeffs(&spec, 4).unwrap();
        for k in -4..=4i64 {
            assert_eq!(
                series.get(k),
                jump_fourier_coeff(c(0.3, 0.0), 0.0, k).unwrap()
            );
        }
    }

    #[test]
    fn smooth_exponential_series() {
        // log b = 0.5 t: phi_k = 0.5^k / k! for k >= 0
        let smooth = SmoothPart::new(vec![(1, c(0.5, 0.0))]).unwrap();
        let spec = SymbolSpec::smooth_only(smooth);
        let series = symbol_fourier_coeffs(&spec, 3).unwrap();
        let want = [1.0, 0.5, 0.125, 0.125 / 6.0];
        for k in 0..=3i64 {
            assert!((series.get(k) - want[k as usize]).norm() < 1e-12);
            if k > 0 {
                assert!(series.get(-k).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn two_jump_composite_matches_convolution_oracle() {
        // t_{0.2}(e^{i theta}) t_{0.1}(e^{i(theta - pi/3)}) against brute
        // truncated convolution of the closed-form sequences
        let spec = SymbolSpec {
            jump_plus: c(0.2, 0.0),
            jumps: vec![JumpFactor {
                theta0: PI / 3.0,
                beta: c(0.1, 0.0),
            }],
            ..Default::default()
        };
        let series = symbol_fourier_coeffs(&spec, 8).unwrap();
        let window = 2048i64;
        for k in -8..=8i64 {
            let mut s = c(0.0, 0.0);
            for m in -window..=window {
                let a = jump_fourier_coeff(c(0.2, 0.0), 0.0, m).unwrap();
                let b = jump_fourier_coeff(c(0.1, 0.0), PI / 3.0, k - m).unwrap();
                s += a * b;
            }
            assert!(
                (series.get(k) - s).norm() < 1e-6,
                "k = {k}: {} vs {s}",
                series.get(k)
            );
        }
    }

    #[test]
    fn real_symbol_coefficients_are_hermitian() {
        let spec = SymbolSpec::pure_power(c(0.3, 0.0), Center::Plus);
        assert!(spec.is_real_valued());
        let series = symbol_fourier_coeffs(&spec, 32).unwrap();
        for k in 0..=32i64 {
            assert!((series.get(-k) - series.get(k).conj()).norm() < 1e-12);
        }
        let spec2 = SymbolSpec::pure_jump_plus(c(0.2, 0.0));
        assert!(!spec2.is_real_valued());
    }

    #[test]
    fn wiener_hopf_examples() {
        let trivial = SmoothPart::one();
        let (p, m) = wiener_hopf_parts(&trivial, c(1.0, 0.0)).unwrap();
        assert_eq!((p, m), (c(1.0, 0.0), c(1.0, 0.0)));

        let smooth = SmoothPart::new(vec![(1, c(1.0, 0.0))]).unwrap();
        let (p, m) = wiener_hopf_parts(&smooth, c(1.0, 0.0)).unwrap();
        assert!((p - std::f64::consts::E).norm() < 1e-14);
        assert_eq!(m, c(1.0, 0.0));

        let smooth = SmoothPart::new(vec![(1, c(1.0, 0.0)), (-1, c(0.5, 0.0))]).unwrap();
        let (p, m) = wiener_hopf_parts(&smooth, c(-1.0, 0.0)).unwrap();
        assert!((p - (-1.0f64).exp()).norm() < 1e-14);
        assert!((m - (-0.5f64).exp()).norm() < 1e-14);

        assert!(wiener_hopf_parts(&smooth, c(0.5, 0.0)).is_err());
    }

    #[test]
    fn regime_examples() {
        let trivial = SymbolSpec::default();
        let r = regime_check(&trivial);
        assert!(r.satisfies_i && r.satisfies_ii && r.satisfies_iii && r.main_theorem_ok);

        // beta_+ = 0.3 passes (I) but fails (III)
        let spec = SymbolSpec::pure_jump_plus(c(0.3, 0.0));
        let r = regime_check(&spec);
        assert!(r.satisfies_i);
        assert!(!r.satisfies_iii);
        assert!(!r.main_theorem_ok);

        // conjugate jump angles disable the general formula
        let spec = SymbolSpec {
            jumps: vec![
                JumpFactor {
                    theta0: PI / 3.0,
                    beta: c(0.2, 0.0),
                },
                JumpFactor {
                    theta0: -PI / 3.0,
                    beta: c(0.1, 0.0),
                },
            ],
            ..Default::default()
        };
        let r = regime_check(&spec);
        assert!(r.satisfies_i && r.satisfies_iii);
        assert!(!r.main_theorem_ok);
    }

    #[test]
    fn validation_catches_bad_specs() {
        let bad = SymbolSpec {
            jumps: vec![JumpFactor {
                theta0: 0.0,
                beta: c(0.2, 0.0),
            }],
            ..Default::default()
        };
        assert!(bad.validate().is_err());

        let bad = SymbolSpec::pure_power(c(-0.5, 0.0), Center::Plus);
        assert!(bad.validate().is_err());

        let bad = SymbolSpec {
            special_kind: Some(SpecialFactor {
                kind: SpecialKind::Phi2,
                beta: c(1.0, 0.0),
            }),
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = SymbolSpec {
            smooth: SmoothPart::new(vec![(1, c(0.3, 0.0)), (-1, c(0.1, 0.0))]).unwrap(),
            jump_plus: c(0.2, 0.0),
            jump_minus: c(0.0, 0.0),
            jumps: vec![JumpFactor {
                theta0: PI / 3.0,
                beta: c(0.15, -0.05),
            }],
            powers: vec![PowerFactor {
                alpha: c(0.3, 0.0),
                center: Center::Minus,
            }],
            special_kind: None,
        };
        let text = serde_json::to_string(&spec).unwrap();
        let back: SymbolSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back.jump_plus, spec.jump_plus);
        assert_eq!(back.jumps[0].beta, spec.jumps[0].beta);
        assert_eq!(back.powers[0].center, Center::Minus);
        assert_eq!(back.smooth, spec.smooth);

        // minimal document: everything defaults
        let min: SymbolSpec = serde_json::from_str("{}").unwrap();
        assert!(min.smooth.is_trivial());
        assert_eq!(min.jump_plus, c(0.0, 0.0));

        let special: SymbolSpec =
            serde_json::from_str(r#"{"special_kind": {"kind": "phi2", "beta": [0.2, 0.0]}}"#)
                .unwrap();
        assert_eq!(special.special_kind.unwrap().kind, SpecialKind::Phi2);
    }
}
