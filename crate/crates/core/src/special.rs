//! Complex log-Gamma, log Barnes-G, and the product-identity toolkit used by
//! the closed-form determinants and the asymptotic constants.
//!
//! Branch policy, used everywhere in this crate: complex powers `w^s` are
//! `exp(s * Log w)` with the principal logarithm (argument in `(-pi, pi]`).
//! `log_gamma` and `log_barnes_g` return the branch that is continuous on the
//! cut plane `C \ (-inf, 0]` and real on the positive axis; on the cut itself
//! they return the limit from above.

use crate::error::{Error, Result};
use crate::logvalue::{reduce_argument, LogValue};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// log of the Glaisher-Kinkelin constant A = exp(1/12 - zeta'(-1)).
pub const LOG_GLAISHER: f64 = 0.248_754_477_033_784_26;

const LOG_2PI: f64 = 1.837_877_066_409_345_5;
const LN_2: f64 = std::f64::consts::LN_2;
const INT_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Stirling series coefficients B_{2k} / (2k (2k-1)), k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Barnes asymptotic coefficients B_{2k+2} / (2k (2k+1) (2k+2)), k = 1..10.
const BARNES: [f64; 10] = [
    -1.0 / 720.0,
    1.0 / 5040.0,
    -1.0 / 10_080.0,
    1.0 / 9504.0,
    -691.0 / 3_603_600.0,
    1.0 / 1872.0,
    -3617.0 / 1_713_600.0,
    43_867.0 / (798.0 * 4896.0),
    -174_611.0 / (330.0 * 6840.0),
    854_513.0 / (138.0 * 9240.0),
];

/// Distance from `z` to the nearest nonpositive integer.
fn nonpositive_integer_distance(z: Complex64) -> f64 {
    let m = z.re.round().min(0.0);
    (z - Complex64::new(m, 0.0)).norm()
}

/// Is `z` within `tol` of some integer?
pub(crate) fn near_integer(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol && (z.re - z.re.round()).abs() <= tol
}

/// log sin(pi z) on the branch whose exponential is exactly sin(pi z),
/// stable for large |Im z|. `z` must not be an integer.
fn log_sin_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return log_sin_pi(z.conj()).conj();
    }
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}), |e^{2 pi i z}| <= 1 for Im z >= 0
    -I * PI * z + I * (PI / 2.0) - Complex64::new(LN_2, 0.0)
        + (Complex64::new(1.0, 0.0) - (2.0 * PI * I * z).exp()).ln()
}

fn lgamma_inner(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        if z.im == 0.0 && z.re > 0.0 {
            // real z in (0, 1/2): keep the result exactly real
            let r = (PI / (PI * z.re).sin()).ln();
            return Complex64::new(r, 0.0) - lgamma_inner(Complex64::new(1.0 - z.re, 0.0));
        }
        if z.im < 0.0 {
            return lgamma_inner(z.conj()).conj();
        }
        // reflection; Im z >= 0 covers the cut as the limit from above
        return Complex64::new(PI.ln(), 0.0)
            - log_sin_pi(z)
            - lgamma_inner(Complex64::new(1.0, 0.0) - z);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 15.0 && w.norm_sqr() < 225.0 {
        shift -= w.ln();
        w += 1.0;
    }
    let mut s = (w - 0.5) * w.ln() - w + Complex64::new(0.5 * LOG_2PI, 0.0) + shift;
    let w2 = w * w;
    let mut t = w;
    for c in STIRLING {
        s += c / t;
        t *= w2;
    }
    s
}

/// log Gamma(z), continuous on the cut plane, real on (0, inf).
/// Relative accuracy is ~1e-14 for |z| <= 100.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if nonpositive_integer_distance(z) <= INT_TOL {
        return Err(Error::GammaPole(format!("{z}")));
    }
    Ok(lgamma_inner(z))
}

fn barnes_inner(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z - 1.0;
    // G(w+1) = G(w+2) / Gamma(w+1)
    while w.re < 30.0 {
        shift -= lgamma_inner(w + 1.0);
        w += 1.0;
    }
    let lw = w.ln();
    let mut s = w * w / 4.0 + w * lgamma_inner(w + 1.0)
        - (w * (w + 1.0) / 2.0 + 1.0 / 12.0) * lw
        - LOG_GLAISHER;
    let w2 = w * w;
    let mut t = w2;
    for c in BARNES {
        s += c / t;
        t *= w2;
    }
    s + shift
}

/// log G(z) for the Barnes G-function, continuous on the cut plane and real
/// on (0, inf). G vanishes at the nonpositive integers; that case is reported
/// as [`Error::BarnesGZero`], distinct from other domain errors.
pub fn log_barnes_g(z: Complex64) -> Result<Complex64> {
    if nonpositive_integer_distance(z) <= INT_TOL {
        return Err(Error::BarnesGZero {
            z: format!("{z}"),
            factor: None,
        });
    }
    Ok(barnes_inner(z))
}

/// Barnes G as a [`LogValue`]; the zeros at nonpositive integers come back
/// as the exact-zero flag instead of an error.
pub fn barnes_g_log_value(z: Complex64) -> LogValue {
    if nonpositive_integer_distance(z) <= INT_TOL {
        return LogValue::zero();
    }
    LogValue::from_log(barnes_inner(z))
}

/// G(1+z-n) / G(1+z) evaluated through the reflection identity
/// `(-1)^{n(n-1)/2} (sin(pi z)/pi)^n G(1-z+n)/G(1-z)`, n a nonnegative integer.
pub fn reflection_ratio(z: Complex64, n: u32) -> Result<LogValue> {
    if near_integer(z, INT_TOL) {
        return Err(Error::Domain(format!(
            "reflection_ratio requires non-integer z, got {z}"
        )));
    }
    if n == 0 {
        return Ok(LogValue::ONE);
    }
    let nf = n as f64;
    let mut log = nf * (log_sin_pi(z) - PI.ln());
    log += barnes_inner(Complex64::new(1.0 + nf, 0.0) - z)
        - barnes_inner(Complex64::new(1.0, 0.0) - z);
    // (-1)^{n(n-1)/2} folded in as an argument increment
    let half_turns = (n as u64 * (n as u64 - 1) / 2) % 2;
    Ok(LogValue::new(log.re, log.im + half_turns as f64 * PI))
}

/// Identity selector for [`product_identity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductIdentity {
    /// prod_{0<=j<k<=n-1} (k - j) = G(1+n)
    Pr1,
    /// prod_{0<=j<k<=n-1} (k + j + z), Barnes/pi/2-power closed form
    Pr4,
    /// prod_{k1<n1, k2<n2} (z + k1 + k2) = G(z+n1+n2) G(z) / (G(z+n1) G(z+n2))
    Pr2,
    /// prod_{k1<n1, k2<n2} (z + k1 - k2), with a reflection factor
    Pr3,
}

fn checked_g(z: Complex64, factor: &str) -> Result<Complex64> {
    if nonpositive_integer_distance(z) <= INT_TOL {
        return Err(Error::BarnesGZero {
            z: format!("{z}"),
            factor: Some(factor.to_string()),
        });
    }
    Ok(barnes_inner(z))
}

/// Closed-form (Barnes G) side of the selected product identity, in log scale.
/// Size parameters that the chosen identity does not use are ignored.
pub fn product_identity(
    kind: ProductIdentity,
    z: Complex64,
    n: u32,
    n1: u32,
    n2: u32,
) -> Result<LogValue> {
    let zr = |x: f64| Complex64::new(x, 0.0);
    match kind {
        ProductIdentity::Pr1 => Ok(LogValue::from_log(barnes_inner(zr(1.0 + n as f64)))),
        ProductIdentity::Pr4 => {
            if nonpositive_integer_distance(z) <= INT_TOL {
                return Err(Error::Domain(format!(
                    "pr4 requires z not in {{0,-1,-2,...}}, got {z}"
                )));
            }
            if n <= 1 {
                return Ok(LogValue::ONE); // empty product
            }
            let nf = n as f64;
            let mut log = checked_g(z + zr(2.0 * nf - 1.0), "G(2n-1+z)")?;
            log += checked_g(z / 2.0 + 0.5, "G(1/2+z/2)")?;
            log += checked_g(z / 2.0 + 1.0, "G(1+z/2)")?;
            log += (nf - 1.0) / 2.0 * PI.ln();
            log -= checked_g(z + zr(nf), "G(n+z)")?;
            log -= checked_g(z / 2.0 + zr(nf - 0.5), "G(n-1/2+z/2)")?;
            log -= checked_g(z / 2.0 + zr(nf), "G(n+z/2)")?;
            log -= (nf - 1.0) * (z + zr(nf - 2.0)) * LN_2;
            Ok(LogValue::from_log(log))
        }
        ProductIdentity::Pr2 => {
            if nonpositive_integer_distance(z) <= INT_TOL {
                return Err(Error::Domain(format!(
                    "pr2 requires z not in {{0,-1,-2,...}}, got {z}"
                )));
            }
            let (m1, m2) = (n1 as f64, n2 as f64);
            let log = checked_g(z + zr(m1 + m2), "G(z+n1+n2)")? + checked_g(z, "G(z)")?
                - checked_g(z + zr(m1), "G(z+n1)")?
                - checked_g(z + zr(m2), "G(z+n2)")?;
            Ok(LogValue::from_log(log))
        }
        ProductIdentity::Pr3 => {
            if near_integer(z, INT_TOL) {
                return Err(Error::Domain(format!(
                    "pr3 requires non-integer z, got {z}"
                )));
            }
            let (m1, m2) = (n1 as f64, n2 as f64);
            let mut log = barnes_inner(z + zr(1.0 + m1)) + barnes_inner(zr(1.0 + m2) - z)
                - barnes_inner(z + zr(1.0 + m1 - m2))
                - barnes_inner(zr(1.0) - z);
            log += m2 * (log_sin_pi(z) - PI.ln());
            let half_turns = (n2 as u64 * (n2 as u64).saturating_sub(1) / 2) % 2;
            Ok(LogValue::new(log.re, log.im + half_turns as f64 * PI))
        }
    }
}

/// omega/2 with omega = sum x_r^2 - sum y_r^2, valid when the sums of the two
/// lists agree; the product of G-ratios `G(1+x_r+n)/G(1+y_r+n)` then grows
/// like `n^{omega/2}`.
pub fn ratio_growth_exponent(x: &[Complex64], y: &[Complex64]) -> Result<Complex64> {
    if x.len() != y.len() {
        return Err(Error::Domain(format!(
            "exponent lists must have equal length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    let sx: Complex64 = x.iter().sum();
    let sy: Complex64 = y.iter().sum();
    if (sx - sy).norm() > INT_TOL {
        return Err(Error::SumMismatch((sx - sy).norm()));
    }
    let qx: Complex64 = x.iter().map(|v| v * v).sum();
    let qy: Complex64 = y.iter().map(|v| v * v).sum();
    Ok((qx - qy) / 2.0)
}

// ---------------------------------------------------------------------------
// Randomized identity suite, shared by the `identities` CLI subcommand and
// the acceptance tests.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_err: f64,
    pub tol: f64,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(name: &'static str, max_err: f64, tol: f64) -> Self {
        IdentityCheck {
            name,
            max_err,
            tol,
            pass: max_err <= tol,
        }
    }
}

/// Relative deviation |a/b - 1| between two log-scale values, insensitive to
/// whole turns of the accumulated argument.
pub fn log_relative_error(a: &LogValue, b: &LogValue) -> f64 {
    match (a.is_zero, b.is_zero) {
        (true, true) => 0.0,
        (true, false) | (false, true) => f64::INFINITY,
        (false, false) => {
            let dm = (a.log_modulus - b.log_modulus).exp();
            let da = reduce_argument(a.argument - b.argument);
            (Complex64::from_polar(dm, da) - Complex64::new(1.0, 0.0)).norm()
        }
    }
}

fn draw_z(rng: &mut impl rand::Rng, max_abs: f64) -> Complex64 {
    loop {
        let re = rng.gen_range(-max_abs..max_abs);
        let im = rng.gen_range(-max_abs..max_abs);
        let z = Complex64::new(re, im);
        // keep away from the cut, the integers, and the half-integers that
        // some identities divide by
        if re <= 0.2 && im.abs() < 0.2 {
            continue;
        }
        if (2.0 * re - (2.0 * re).round()).abs() < 1e-3 && im.abs() < 1e-3 {
            continue;
        }
        if z.norm() <= max_abs {
            return z;
        }
    }
}

/// Run the special-function identity suite on `count`-point random grids.
pub fn run_identity_suite(seed: u64) -> Vec<IdentityCheck> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    // Recurrence G(1+z) = Gamma(z) G(z), 200 draws with |z| <= 20.
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let z = draw_z(&mut rng, 20.0);
        let d = barnes_inner(z + 1.0) - lgamma_inner(z) - barnes_inner(z);
        let err = (d.re.powi(2) + reduce_argument(d.im).powi(2)).sqrt();
        worst = worst.max(err);
    }
    out.push(IdentityCheck::new(
        "recurrence G(1+z)=Gamma(z)G(z)",
        worst,
        1e-10,
    ));

    // Reflection ratio vs direct division, n <= 8.
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let z = draw_z(&mut rng, 10.0);
        let n = rng.gen_range(0..=8u32);
        let lhs = LogValue::from_log(barnes_inner(z + 1.0 - n as f64) - barnes_inner(z + 1.0));
        let rhs = reflection_ratio(z, n).expect("non-integer z");
        worst = worst.max(log_relative_error(&lhs, &rhs));
    }
    out.push(IdentityCheck::new(
        "reflection G(1+z-n)/G(1+z)",
        worst,
        1e-9,
    ));

    // Duplication formula.
    let mut worst = 0.0f64;
    let log_g_half = barnes_inner(Complex64::new(0.5, 0.0));
    for _ in 0..100 {
        let re = rng.gen_range(0.1..10.0);
        let im = rng.gen_range(-5.0..5.0);
        let z = Complex64::new(re, im);
        let lhs = barnes_inner(z) + 2.0 * barnes_inner(z + 0.5) + barnes_inner(z + 1.0);
        let rhs = 2.0 * log_g_half
            + z * PI.ln()
            + (-2.0 * z * z + 3.0 * z - 1.0) * LN_2
            + barnes_inner(2.0 * z);
        worst = worst.max(log_relative_error(
            &LogValue::from_log(lhs),
            &LogValue::from_log(rhs),
        ));
    }
    out.push(IdentityCheck::new(
        "Barnes G duplication formula",
        worst,
        1e-9,
    ));

    // Product identities vs literal products, all sizes <= 12, 50 draws.
    // pr1 does not depend on z, so one size sweep covers it; the two-index
    // identities get every (n1, n2) pair on the first draws and random pairs
    // after that.
    let mut worst = 0.0f64;
    for n in 0..=12u32 {
        let brute = brute_pr1(n);
        let cf = product_identity(ProductIdentity::Pr1, Complex64::new(0.0, 0.0), n, 0, 0).unwrap();
        worst = worst.max(log_relative_error(&brute, &cf));
    }
    for draw in 0..50 {
        let z = draw_z(&mut rng, 6.0);
        for n in 0..=12u32 {
            let brute = brute_pr4(z, n);
            let cf = product_identity(ProductIdentity::Pr4, z, n, 0, 0).unwrap();
            worst = worst.max(log_relative_error(&brute, &cf));
        }
        let pairs: Vec<(u32, u32)> = if draw < 3 {
            (0..=12u32)
                .flat_map(|a| (0..=12u32).map(move |b| (a, b)))
                .collect()
        } else {
            vec![(rng.gen_range(0..=12u32), rng.gen_range(0..=12u32))]
        };
        for (n1, n2) in pairs {
            let brute = brute_pr2(z, n1, n2);
            let cf = product_identity(ProductIdentity::Pr2, z, 0, n1, n2).unwrap();
            worst = worst.max(log_relative_error(&brute, &cf));
            let brute = brute_pr3(z, n1, n2);
            let cf = product_identity(ProductIdentity::Pr3, z, 0, n1, n2).unwrap();
            worst = worst.max(log_relative_error(&brute, &cf));
        }
    }
    out.push(IdentityCheck::new(
        "product identities pr1-pr4",
        worst,
        1e-10,
    ));

    // Known zeros of G(1+z) at z in {-1,-2,...}.
    let zeros_ok = (1..=10)
        .all(|m| barnes_g_log_value(Complex64::new(1.0 - m as f64, 0.0)).is_zero)
        && !barnes_g_log_value(Complex64::new(0.5, 0.0)).is_zero;
    out.push(IdentityCheck::new(
        "known zeros of G at nonpositive integers",
        if zeros_ok { 0.0 } else { 1.0 },
        0.5,
    ));

    out
}

/// Literal product for pr1, log scale.
pub fn brute_pr1(n: u32) -> LogValue {
    let mut acc = LogValue::ONE;
    for j in 0..n as i64 {
        for k in (j + 1)..n as i64 {
            acc = acc.mul(&LogValue::from_complex(Complex64::new((k - j) as f64, 0.0)));
        }
    }
    acc
}

/// Literal product for pr4, log scale.
pub fn brute_pr4(z: Complex64, n: u32) -> LogValue {
    let mut acc = LogValue::ONE;
    for j in 0..n as i64 {
        for k in (j + 1)..n as i64 {
            acc = acc.mul(&LogValue::from_complex(
                z + Complex64::new((k + j) as f64, 0.0),
            ));
        }
    }
    acc
}

/// Literal product for pr2, log scale.
pub fn brute_pr2(z: Complex64, n1: u32, n2: u32) -> LogValue {
    let mut acc = LogValue::ONE;
    for k1 in 0..n1 as i64 {
        for k2 in 0..n2 as i64 {
            acc = acc.mul(&LogValue::from_complex(
                z + Complex64::new((k1 + k2) as f64, 0.0),
            ));
        }
    }
    acc
}

/// Literal product for pr3, log scale.
pub fn brute_pr3(z: Complex64, n1: u32, n2: u32) -> LogValue {
    let mut acc = LogValue::ONE;
    for k1 in 0..n1 as i64 {
        for k2 in 0..n2 as i64 {
            acc = acc.mul(&LogValue::from_complex(
                z + Complex64::new((k1 - k2) as f64, 0.0),
            ));
        }
    }
    acc
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // golden values carry full mpmath precision
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Reference values computed with mpmath at 40 significant digits.
    #[test]
    fn log_gamma_golden() {
        let cases = [
            (c(1.0, 0.0), c(0.0, 0.0)),
            (c(5.0, 0.0), c(24.0f64.ln(), 0.0)),
            (c(0.5, 0.0), c(0.5 * PI.ln(), 0.0)),
            (
                c(0.25, 9.0),
                c(-13.767437914428410811, 10.383479730319551194),
            ),
            (
                c(-4.5, 0.5),
                c(-3.7081623865245864458, -14.901593916648986106),
            ),
            (
                c(-7.5, -2.5),
                c(-15.18132989166183312, 19.89310733417191195),
            ),
            (
                c(35.5, 70.0),
                c(41.020635807117623451, 273.95537255362868021),
            ),
            (c(1e-8, 0.0), c(18.420680738180208905, 0.0)),
        ];
        for (z, want) in cases {
            let got = log_gamma(z).unwrap();
            let scale = want.norm().max(1.0);
            assert!(
                (got - want).norm() <= 1e-12 * scale,
                "log_gamma({z}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn log_gamma_rejects_poles() {
        for m in 0..5 {
            assert!(matches!(
                log_gamma(c(-(m as f64), 0.0)),
                Err(Error::GammaPole(_))
            ));
        }
        assert!(log_gamma(c(-3.0 + 1e-14, 1e-14)).is_err());
        assert!(log_gamma(c(-3.0001, 0.0)).is_ok());
    }

    #[test]
    fn log_gamma_real_on_positive_axis() {
        for x in [0.1, 0.7, 1.3, 4.5, 27.0, 99.0] {
            let v = log_gamma(c(x, 0.0)).unwrap();
            assert_eq!(v.im, 0.0, "log_gamma({x}) should be exactly real");
        }
    }

    #[test]
    fn log_gamma_recurrence_consistency() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let z = c(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
            if z.re <= 0.5 && z.im.abs() < 0.1 {
                continue;
            }
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = log_gamma(z).unwrap() + z.ln();
            assert!(
                (lhs - rhs).norm() <= 1e-11 * lhs.norm().max(1.0),
                "recurrence fails at {z}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn log_barnes_golden() {
        let cases = [
            (c(1.0, 0.0), c(0.0, 0.0)),
            (c(4.0, 0.0), c(2.0f64.ln(), 0.0)),
            (c(0.5, 0.0), c(-0.5054330544896953828, 0.0)),
            (c(1.5, 0.0), c(0.066931888435004704274, 0.0)),
            (
                c(0.3, 0.4),
                c(-0.36576369711458150342, 0.99025958025846942267),
            ),
            (
                c(-2.5, 1.25),
                c(7.7533398367136101092, 16.688634429239662027),
            ),
            (
                c(7.5, -3.25),
                c(3.5062510475671508139, -20.505167261706951747),
            ),
            (
                c(20.25, 14.0),
                c(-6.4589238923799092507, 517.70427492063106248),
            ),
        ];
        for (z, want) in cases {
            let got = log_barnes_g(z).unwrap();
            let scale = want.norm().max(1.0);
            assert!(
                (got - want).norm() <= 1e-11 * scale,
                "log_barnes_g({z}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn barnes_zero_cases() {
        assert!(barnes_g_log_value(c(0.0, 0.0)).is_zero);
        assert!(barnes_g_log_value(c(-7.0, 0.0)).is_zero);
        match log_barnes_g(c(-2.0, 0.0)) {
            Err(Error::BarnesGZero { .. }) => {}
            other => panic!("expected BarnesGZero, got {other:?}"),
        }
    }

    // Defining Weierstrass-type product for G(1+z), truncated with a
    // two-term tail estimate; independent oracle for the production
    // recurrence+asymptotics algorithm. The tail decays like 1/K, so the
    // oracle is only good to ~1e-6 at practical K.
    fn barnes_product_oracle(z: Complex64, terms: usize) -> Complex64 {
        let mut log = z / 2.0 * LOG_2PI - (z + 1.0) * z / 2.0 - EULER_GAMMA * z * z / 2.0;
        for k in 1..=terms {
            let kf = k as f64;
            log += kf * (1.0 + z / kf).ln() - z + z * z / (2.0 * kf);
        }
        // remaining tail ~ sum_{k>K} [z^3/(3k^2) - z^4/(4k^3) + ...]
        let kf = terms as f64;
        log += z * z * z / 3.0 * (1.0 / kf - 1.0 / (2.0 * kf * kf));
        log -= z * z * z * z / 4.0 * (1.0 / (2.0 * kf * kf));
        log
    }

    #[test]
    fn barnes_matches_defining_product() {
        // oracle accuracy ~ |z|^5/K^3 at K = 20000; 1e-6 is comfortable
        for z in [
            c(0.5, 0.0),
            c(-0.5, 0.0),
            c(1.7, 0.0),
            c(0.3, 0.4),
            c(-0.8, 1.1),
        ] {
            let got = log_barnes_g(z + 1.0).unwrap();
            let want = barnes_product_oracle(z, 20_000);
            assert!(
                (got - want).norm() <= 1e-6,
                "defining-product oracle at z={z}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn barnes_g_half_value() {
        // G(1/2) = 0.60324428120944620619 (mpmath, 20 digits)
        let g = log_barnes_g(c(0.5, 0.0)).unwrap().re.exp();
        assert!((g - 0.60324428120944620619).abs() < 1e-12);
    }

    #[test]
    fn reflection_examples() {
        // n = 0 is the empty case
        let r = reflection_ratio(c(0.77, 0.3), 0).unwrap();
        assert_eq!(r, LogValue::ONE);

        // n = 1 collapses to 1/Gamma(z)
        let z = c(0.3, 0.0);
        let r = reflection_ratio(z, 1).unwrap();
        let want = LogValue::from_log(-log_gamma(z).unwrap());
        assert!(log_relative_error(&r, &want) < 1e-12);

        // n = 3, complex z, against direct division
        let z = c(0.2, 0.1);
        let r = reflection_ratio(z, 3).unwrap();
        let want =
            LogValue::from_log(log_barnes_g(z - 2.0).unwrap() - log_barnes_g(z + 1.0).unwrap());
        assert!(log_relative_error(&r, &want) < 1e-9);

        assert!(reflection_ratio(c(2.0, 0.0), 3).is_err());
    }

    #[test]
    fn product_identity_examples() {
        // pr1, n = 3: product 1*2*1 = 2 = G(4)
        let v = product_identity(ProductIdentity::Pr1, c(0.0, 0.0), 3, 0, 0).unwrap();
        assert!((v.to_complex().re - 2.0).abs() < 1e-12);

        // pr2, z=1, n1=n2=2: 1*2*2*3 = 12
        let v = product_identity(ProductIdentity::Pr2, c(1.0, 0.0), 0, 2, 2).unwrap();
        assert!((v.to_complex().re - 12.0).abs() < 1e-10);

        // pr3, z = 0.4, n1 = 3, n2 = 2 vs the literal double product
        let z = c(0.4, 0.0);
        let v = product_identity(ProductIdentity::Pr3, z, 0, 3, 2).unwrap();
        let brute = brute_pr3(z, 3, 2);
        assert!(log_relative_error(&v, &brute) < 1e-10);

        assert!(product_identity(ProductIdentity::Pr2, c(-1.0, 0.0), 0, 2, 2).is_err());
        assert!(product_identity(ProductIdentity::Pr3, c(3.0, 0.0), 0, 2, 2).is_err());
    }

    #[test]
    fn growth_exponent_examples() {
        let x = [c(1.0, 0.0), c(-1.0, 0.0)];
        let y = [c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(ratio_growth_exponent(&x, &y).unwrap(), c(1.0, 0.0));

        let x = [c(0.5, 0.0), c(-0.2, 0.0)];
        let y = [c(0.3, 0.0), c(0.0, 0.0)];
        let w = ratio_growth_exponent(&x, &y).unwrap();
        assert!((w - c(0.10, 0.0)).norm() < 1e-14);

        let bad = ratio_growth_exponent(&x, &[c(0.4, 0.0), c(0.0, 0.0)]);
        assert!(matches!(bad, Err(Error::SumMismatch(_))));
    }

    #[test]
    fn growth_exponent_matches_fitted_slope() {
        // fit the slope of log prod G(1+x+n)/G(1+y+n) against log n
        let x = [c(0.5, 0.0), c(-0.2, 0.0)];
        let y = [c(0.3, 0.0), c(0.0, 0.0)];
        let w = ratio_growth_exponent(&x, &y).unwrap();
        let val = |n: f64| -> f64 {
            let mut s = 0.0;
            for (a, b) in x.iter().zip(y.iter()) {
                s += (log_barnes_g(a + 1.0 + n).unwrap() - log_barnes_g(b + 1.0 + n).unwrap()).re;
            }
            s
        };
        // least-squares slope over n in {64, 128, 256}
        let pts: Vec<(f64, f64)> = [64.0f64, 128.0, 256.0]
            .iter()
            .map(|&n| (n.ln(), val(n)))
            .collect();
        let m = pts.len() as f64;
        let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        assert!(
            (slope - w.re).abs() < 5e-3,
            "fitted {slope} vs omega/2 = {}",
            w.re
        );
    }

    #[test]
    fn identity_suite_passes() {
        for check in run_identity_suite(20260810) {
            assert!(
                check.pass,
                "{} failed: max_err {:.3e} > tol {:.3e}",
                check.name, check.max_err, check.tol
            );
        }
    }
}
