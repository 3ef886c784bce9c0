//! Exact finite-n determinant formulas.
//!
//! The Toeplitz+Hankel matrices of the pure jump and special two-jump symbols
//! are Cauchy or block-Cauchy matrices times row/column factors, so their
//! determinants reduce to explicit products. Everything here is accumulated
//! in log scale; a vanishing product factor propagates as the exact-zero flag.

use crate::error::{Error, Result};
use crate::logvalue::LogValue;
use crate::special::{log_gamma, near_integer};
use crate::symbol::SpecialKind;
use num_complex::Complex64;
use std::f64::consts::PI;

const TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Nodes of a Cauchy matrix `[(a_j + b_k)^{-1}]`.
#[derive(Debug, Clone)]
pub struct CauchyData {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

/// Nodes of the 2x2-block Cauchy matrix with tilde rows/columns.
#[derive(Debug, Clone)]
pub struct BlockCauchyData {
    pub a: Vec<Complex64>,
    pub a_tilde: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub b_tilde: Vec<Complex64>,
}

fn mul_factor(acc: &mut LogValue, v: Complex64) {
    *acc = acc.mul(&LogValue::from_complex(v));
}

fn div_factor(acc: &mut LogValue, v: Complex64, what: &str) -> Result<()> {
    if v.re == 0.0 && v.im == 0.0 {
        return Err(Error::Domain(format!("zero denominator {what}")));
    }
    *acc = acc.div(&LogValue::from_complex(v));
    Ok(())
}

/// det [(a_j + b_k)^{-1}] = p/q with p the node-difference double product and
/// q the full sum product.
pub fn cauchy_logdet(data: &CauchyData) -> Result<LogValue> {
    if data.a.len() != data.b.len() {
        return Err(Error::Domain(format!(
            "Cauchy data needs equal lengths, got {} vs {}",
            data.a.len(),
            data.b.len()
        )));
    }
    let n = data.a.len();
    let mut acc = LogValue::ONE;
    for j in 0..n {
        for k in (j + 1)..n {
            mul_factor(&mut acc, data.a[k] - data.a[j]);
            mul_factor(&mut acc, data.b[k] - data.b[j]);
        }
    }
    for j in 0..n {
        for k in 0..n {
            div_factor(&mut acc, data.a[j] + data.b[k], "(a_j + b_k)")?;
        }
    }
    Ok(acc)
}

/// Block-Cauchy determinant via the six-product p and four-product q.
pub fn block_cauchy_logdet(data: &BlockCauchyData) -> Result<LogValue> {
    if data.a.len() != data.b.len() || data.a_tilde.len() != data.b_tilde.len() {
        return Err(Error::Domain(
            "block Cauchy data needs matching block lengths".into(),
        ));
    }
    let (m1, m2) = (data.a.len(), data.a_tilde.len());
    let mut acc = LogValue::ONE;
    for j in 0..m1 {
        for k in (j + 1)..m1 {
            mul_factor(&mut acc, data.a[k] - data.a[j]);
            mul_factor(&mut acc, data.b[k] - data.b[j]);
        }
    }
    for j in 0..m2 {
        for k in (j + 1)..m2 {
            mul_factor(&mut acc, data.a_tilde[k] - data.a_tilde[j]);
            mul_factor(&mut acc, data.b_tilde[k] - data.b_tilde[j]);
        }
    }
    for j in 0..m1 {
        for k in 0..m2 {
            mul_factor(&mut acc, data.a_tilde[k] - data.a[j]);
            mul_factor(&mut acc, data.b_tilde[k] - data.b[j]);
        }
    }
    for j in 0..m1 {
        for k in 0..m1 {
            div_factor(&mut acc, data.a[j] + data.b[k], "(a_j + b_k)")?;
        }
    }
    for j in 0..m2 {
        for k in 0..m2 {
            div_factor(&mut acc, data.a_tilde[j] + data.b_tilde[k], "(~a_j + ~b_k)")?;
        }
    }
    for j in 0..m1 {
        for k in 0..m2 {
            div_factor(&mut acc, data.a[j] + data.b_tilde[k], "(a_j + ~b_k)")?;
        }
    }
    for j in 0..m2 {
        for k in 0..m1 {
            div_factor(&mut acc, data.a_tilde[j] + data.b[k], "(~a_j + b_k)")?;
        }
    }
    Ok(acc)
}

/// Exact `det M_n(t_beta)` (`at = +1`) or `det (T_n - H_n)(t_beta)` — the
/// determinant of the symbol rotated to -1 — (`at = -1`), via the Cauchy
/// pipeline with nodes `a_j = beta^2 - beta - 2 beta j + j + j^2`,
/// `b_k = -k - k^2` and the per-row / per-column linear factors.
pub fn exact_logdet_tbeta(n: usize, beta: Complex64, at: i32) -> Result<LogValue> {
    assert!(at == 1 || at == -1);
    if near_integer(beta, TOL) {
        return Err(Error::IntegerBeta(format!("{beta}")));
    }
    if n == 0 {
        return Ok(LogValue::ONE);
    }
    let a: Vec<Complex64> = (0..n)
        .map(|j| {
            let jf = j as f64;
            beta * beta - beta - 2.0 * beta * jf + jf + jf * jf
        })
        .collect();
    let b: Vec<Complex64> = (0..n)
        .map(|k| c(-(k as f64) - (k * k) as f64, 0.0))
        .collect();
    let mut acc = cauchy_logdet(&CauchyData { a, b })?;
    let sin_factor = (PI * beta).sin() / PI;
    acc = acc.mul(&LogValue::from_complex(sin_factor).powi(n as i64));
    for idx in 0..n {
        let f = if at == 1 {
            2.0 * beta - 2.0 * idx as f64 - 1.0
        } else {
            c(-2.0 * idx as f64 - 1.0, 0.0)
        };
        acc = acc.mul(&LogValue::from_complex(f));
    }
    Ok(acc)
}

fn split_even_odd(n: usize) -> (usize, usize) {
    (n.div_ceil(2), n / 2)
}

/// Exact `det M_n(phi1)` / `det M_n(phi2)` through the even/odd permutation
/// to block-Cauchy form with `m1 = ceil(n/2)`, `m2 = floor(n/2)`.
pub fn exact_logdet_phi12(kind: SpecialKind, n: usize, beta: Complex64) -> Result<LogValue> {
    if n == 0 {
        return Ok(LogValue::ONE);
    }
    let (m1, m2) = split_even_odd(n);
    let (data, scale) = match kind {
        SpecialKind::Phi1 | SpecialKind::Phi3 => {
            if near_integer(beta - 0.5, TOL) {
                return Err(Error::Domain(format!(
                    "phi1 determinant requires beta not in Z + 1/2, got {beta}"
                )));
            }
            let data = BlockCauchyData {
                a: (0..m1).map(|j| beta - j as f64 - 0.5).collect(),
                a_tilde: (0..m2).map(|j| -beta + j as f64 + 0.5).collect(),
                b: (0..m1).map(|k| c(-(k as f64), 0.0)).collect(),
                b_tilde: (0..m2).map(|k| c(k as f64 + 1.0, 0.0)).collect(),
            };
            (data, -(PI * beta).cos() / PI)
        }
        SpecialKind::Phi2 | SpecialKind::Phi4 => {
            if near_integer(beta, TOL) {
                return Err(Error::Domain(format!(
                    "phi2 determinant requires beta not in Z, got {beta}"
                )));
            }
            let data = BlockCauchyData {
                a: (0..m1).map(|j| beta - j as f64).collect(),
                a_tilde: (0..m2).map(|j| -beta + j as f64 + 1.0).collect(),
                b: (0..m1).map(|k| c(k as f64, 0.0)).collect(),
                b_tilde: (0..m2).map(|k| c(-(k as f64) - 1.0, 0.0)).collect(),
            };
            (data, (PI * beta).sin() / PI)
        }
    };
    let mut acc = block_cauchy_logdet(&data)?;
    acc = acc.mul(&LogValue::from_complex(scale).powi(n as i64));
    // the (-1)^{m2} permutation/diagonal sign, as an argument increment
    if m2 % 2 == 1 {
        acc = acc.mul(&LogValue::new(0.0, PI));
    }
    // phi3 / phi4 are phi1 / phi2 rotated to +-i
    match kind {
        SpecialKind::Phi3 => Ok(phi34_rotation(n, acc)),
        _ => Ok(acc),
    }
}

/// Rotation identity relating the determinants at +-i to those at +-1:
/// multiplies by `i^sigma`, `sigma = n mod 2`. (The phi2 -> phi4 case is the
/// identity; only phi1 -> phi3 picks up the phase.)
pub fn phi34_rotation(n: usize, det_phi12: LogValue) -> LogValue {
    if n.is_multiple_of(2) {
        det_phi12
    } else {
        det_phi12.mul(&LogValue::new(0.0, PI / 2.0))
    }
}

/// The diagonal-conjugation product `prod_{j<n} Gamma(1-alpha+j)
/// Gamma(1+2 alpha+j) / (j! Gamma(1+alpha+j))` relating `det M_n(u_alpha)`
/// to `det (T_n - H_n)(t_{-alpha})`, and the -1-centered variant to
/// `det M_n(t_{-alpha})`.
pub fn ualpha_reduction_factor(n: usize, alpha: Complex64) -> Result<LogValue> {
    if near_integer(alpha, TOL) {
        return Err(Error::Domain(format!(
            "reduction factor requires non-integer alpha, got {alpha}"
        )));
    }
    if alpha.re <= -0.5 {
        return Err(Error::Domain(format!(
            "reduction factor requires Re alpha > -1/2, got {alpha}"
        )));
    }
    let mut log = c(0.0, 0.0);
    let mut log_fact = 0.0f64;
    for j in 0..n {
        let jf = j as f64;
        if j > 0 {
            log_fact += jf.ln();
        }
        log += log_gamma(1.0 - alpha + jf)
            .map_err(|e| Error::Domain(format!("reduction factor: {e}")))?;
        log += log_gamma(1.0 + 2.0 * alpha + jf)
            .map_err(|e| Error::Domain(format!("reduction factor: {e}")))?;
        log -= log_gamma(1.0 + alpha + jf)
            .map_err(|e| Error::Domain(format!("reduction factor: {e}")))?;
        log -= log_fact;
    }
    Ok(LogValue::from_log(log))
}

/// Exact `det M_n(u_alpha)` at the chosen center, via the reduction identity
/// and the pure-jump closed form at `beta = -alpha`.
pub fn exact_logdet_ualpha(
    n: usize,
    alpha: Complex64,
    center: crate::symbol::Center,
) -> Result<LogValue> {
    let factor = ualpha_reduction_factor(n, alpha)?;
    let jump = match center {
        // u_alpha at 1: reduce to (T - H)(t_{-alpha})
        crate::symbol::Center::Plus => exact_logdet_tbeta(n, -alpha, -1)?,
        // u_alpha at -1: reduce to (T + H)(t_{-alpha})
        crate::symbol::Center::Minus => exact_logdet_tbeta(n, -alpha, 1)?,
    };
    Ok(jump.mul(&factor))
}

/// The symbol families whose determinants have exact closed forms.
#[derive(Debug, Clone, Copy)]
pub enum ClosedFormFamily {
    /// pure `t_beta` at 1
    JumpPlus(Complex64),
    /// pure `t_beta` at -1
    JumpMinus(Complex64),
    /// one of the special two-jump symbols
    Special(SpecialKind, Complex64),
    /// pure power factor at either center
    Power(Complex64, crate::symbol::Center),
}

impl ClosedFormFamily {
    /// Classify a spec, when it is exactly one closed-form factor.
    pub fn of(spec: &crate::symbol::SymbolSpec) -> Option<Self> {
        if !spec.smooth.is_trivial() || !spec.jumps.is_empty() {
            return None;
        }
        let n_plus = usize::from(spec.jump_plus.norm() != 0.0);
        let n_minus = usize::from(spec.jump_minus.norm() != 0.0);
        let n_special = usize::from(spec.special_kind.is_some());
        match (n_plus, n_minus, spec.powers.len(), n_special) {
            (1, 0, 0, 0) => Some(ClosedFormFamily::JumpPlus(spec.jump_plus)),
            (0, 1, 0, 0) => Some(ClosedFormFamily::JumpMinus(spec.jump_minus)),
            (0, 0, 1, 0) => Some(ClosedFormFamily::Power(
                spec.powers[0].alpha,
                spec.powers[0].center,
            )),
            (0, 0, 0, 1) => {
                let sp = spec.special_kind.unwrap();
                Some(ClosedFormFamily::Special(sp.kind, sp.beta))
            }
            _ => None,
        }
    }

    pub fn exact_logdet(&self, n: usize) -> Result<LogValue> {
        match *self {
            ClosedFormFamily::JumpPlus(beta) => exact_logdet_tbeta(n, beta, 1),
            // the symbol rotated to -1 has determinant det (T_n - H_n)(t_beta)
            ClosedFormFamily::JumpMinus(beta) => exact_logdet_tbeta(n, beta, -1),
            ClosedFormFamily::Special(kind, beta) => exact_logdet_phi12(kind, n, beta),
            ClosedFormFamily::Power(alpha, center) => exact_logdet_ualpha(n, alpha, center),
        }
    }
}
