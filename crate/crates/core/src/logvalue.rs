//! Log-scale complex values.
//!
//! Determinants and Barnes-G products here grow like `G^n * n^Omega` and leave
//! the range of `f64` near n ~ 200, so every product formula is accumulated as
//! (log-modulus, argument) pairs. An exact zero is carried as a dedicated flag;
//! arithmetic branches on the flag instead of relying on `-inf` propagation.

use num_complex::Complex64;
use std::f64::consts::PI;

/// A complex value `exp(log_modulus + i*argument)`, or exactly zero.
///
/// The argument accumulates across multiplications; call [`LogValue::reduced_argument`]
/// for the principal value in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub log_modulus: f64,
    pub argument: f64,
    pub is_zero: bool,
}

impl LogValue {
    pub const ONE: LogValue = LogValue {
        log_modulus: 0.0,
        argument: 0.0,
        is_zero: false,
    };

    pub fn new(log_modulus: f64, argument: f64) -> Self {
        LogValue {
            log_modulus,
            argument,
            is_zero: false,
        }
    }

    pub fn zero() -> Self {
        LogValue {
            log_modulus: f64::NEG_INFINITY,
            argument: 0.0,
            is_zero: true,
        }
    }

    /// From a natural log `re + i*im` of the value.
    pub fn from_log(log: Complex64) -> Self {
        LogValue::new(log.re, log.im)
    }

    /// Exact log of a finite nonzero complex number (principal argument).
    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return LogValue::zero();
        }
        LogValue::new(z.norm().ln(), z.arg())
    }

    /// The natural log as a complex number with accumulated argument.
    /// Meaningless for exact zeros.
    pub fn log(&self) -> Complex64 {
        Complex64::new(self.log_modulus, self.argument)
    }

    /// Exponentiate back to a complex number. Overflows to infinity when the
    /// log-modulus exceeds the `f64` range; that is the caller's concern.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_modulus.exp(), self.argument)
    }

    /// Argument reduced to the principal interval `(-pi, pi]`.
    pub fn reduced_argument(&self) -> f64 {
        reduce_argument(self.argument)
    }

    /// Same value with the argument reduced to `(-pi, pi]`.
    pub fn principal(&self) -> LogValue {
        if self.is_zero {
            return *self;
        }
        LogValue::new(self.log_modulus, self.reduced_argument())
    }

    pub fn mul(&self, other: &LogValue) -> LogValue {
        if self.is_zero || other.is_zero {
            return LogValue::zero();
        }
        LogValue::new(
            self.log_modulus + other.log_modulus,
            self.argument + other.argument,
        )
    }

    /// Divide; division by an exact zero is a programming error.
    pub fn div(&self, other: &LogValue) -> LogValue {
        assert!(!other.is_zero, "division by exact zero LogValue");
        if self.is_zero {
            return LogValue::zero();
        }
        LogValue::new(
            self.log_modulus - other.log_modulus,
            self.argument - other.argument,
        )
    }

    pub fn powi(&self, k: i64) -> LogValue {
        if self.is_zero {
            assert!(k > 0, "zero to a nonpositive power");
            return LogValue::zero();
        }
        let k = k as f64;
        LogValue::new(self.log_modulus * k, self.argument * k)
    }

    /// Ratio `self / other` as a finite complex number (assumes the logs are
    /// close enough that the ratio does not overflow).
    pub fn ratio(&self, other: &LogValue) -> Complex64 {
        self.div(other).to_complex()
    }
}

/// Reduce an angle to `(-pi, pi]`.
pub fn reduce_argument(a: f64) -> f64 {
    if a.is_nan() || a.is_infinite() {
        return a;
    }
    let mut r = a % (2.0 * PI);
    if r <= -PI {
        r += 2.0 * PI;
    } else if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// |a - b| modulo 2*pi, the distance between two arguments.
pub fn argument_distance(a: f64, b: f64) -> f64 {
    let d = reduce_argument(a - b);
    d.abs()
}
