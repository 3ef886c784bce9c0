//! Toeplitz / Hankel / Toeplitz+Hankel matrix assembly and overflow-safe
//! log-determinants.
//!
//! Determinants of these matrices scale like `G^n n^Omega` and leave the f64
//! range near n ~ 200, so elimination accumulates log-moduli and arguments
//! pivot by pivot instead of multiplying pivots out.

use crate::error::{Error, Result};
use crate::logvalue::LogValue;
use crate::symbol::FourierSeries;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Pivot modulus below this is an exact zero (structural zero rows included).
const EXACT_ZERO_PIVOT: f64 = 1e-300;
/// Pivot below this times the largest initial row norm marks the determinant
/// numerically singular without claiming an exact zero.
const SINGULAR_RATIO: f64 = 1e-13;

/// Row-major dense complex square matrix.
#[derive(Debug, Clone)]
pub struct DenseComplexMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl DenseComplexMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(n >= 1, "matrix dimension must be >= 1");
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                entries.push(f(j, k));
            }
        }
        DenseComplexMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.n + k]
    }

    /// Matrix product, for the small sanity checks in tests.
    pub fn matmul(&self, other: &DenseComplexMatrix) -> DenseComplexMatrix {
        assert_eq!(self.n, other.n);
        DenseComplexMatrix::from_fn(self.n, |j, k| {
            (0..self.n).map(|m| self.get(j, m) * other.get(m, k)).sum()
        })
    }
}

/// Result of a log-scale determinant: the value plus a conditioning flag.
#[derive(Debug, Clone, Copy)]
pub struct LogDet {
    pub value: LogValue,
    /// Set when a pivot fell below `1e-13 *` (max initial row norm); the
    /// determinant is reported but should not be trusted as nonzero.
    pub numerically_singular: bool,
}

impl LogDet {
    pub fn exact(value: LogValue) -> Self {
        LogDet {
            value: value.principal(),
            numerically_singular: false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero
    }
}

fn window_check(series: &FourierSeries, needed: i64) -> Result<()> {
    if series.k_max() < needed {
        return Err(Error::InsufficientWindow {
            needed,
            have: series.k_max(),
        });
    }
    Ok(())
}

/// T_n(phi) with entries phi_{j-k}; needs window K >= n-1.
pub fn build_toeplitz(series: &FourierSeries, n: usize) -> Result<DenseComplexMatrix> {
    assert!(n >= 1);
    window_check(series, n as i64 - 1)?;
    Ok(DenseComplexMatrix::from_fn(n, |j, k| {
        series.get(j as i64 - k as i64)
    }))
}

/// H_n(phi) with entries phi_{j+k+1}; needs window K >= 2n-1.
pub fn build_hankel(series: &FourierSeries, n: usize) -> Result<DenseComplexMatrix> {
    assert!(n >= 1);
    window_check(series, 2 * n as i64 - 1)?;
    Ok(DenseComplexMatrix::from_fn(n, |j, k| {
        series.get(j as i64 + k as i64 + 1)
    }))
}

/// M_n = T_n + sign * H_n; sign -1 realizes T_n - H_n, the matrix of the
/// symbol rotated by pi. Needs window K >= 2n-1.
pub fn build_m(series: &FourierSeries, n: usize, hankel_sign: i32) -> Result<DenseComplexMatrix> {
    assert!(n >= 1);
    assert!(hankel_sign == 1 || hankel_sign == -1);
    window_check(series, 2 * n as i64 - 1)?;
    let s = hankel_sign as f64;
    Ok(DenseComplexMatrix::from_fn(n, |j, k| {
        series.get(j as i64 - k as i64) + s * series.get(j as i64 + k as i64 + 1)
    }))
}

/// Log-determinant by Gaussian elimination with partial pivoting, log-moduli
/// and arguments accumulated per pivot. Singularity is a result, not an
/// error: exact zeros carry the LogValue flag.
pub fn logdet_lu(m: &DenseComplexMatrix) -> LogDet {
    let n = m.dim();
    let mut a = m.entries.clone();
    let mut log_modulus = 0.0f64;
    let mut argument = 0.0f64;

    let mut max_row_norm = 0.0f64;
    for j in 0..n {
        let norm: f64 = (0..n).map(|k| a[j * n + k].norm()).sum();
        max_row_norm = max_row_norm.max(norm);
    }

    let mut numerically_singular = false;
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].norm();
        for row in (col + 1)..n {
            let v = a[row * n + col].norm();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best < EXACT_ZERO_PIVOT {
            return LogDet {
                value: LogValue::zero(),
                numerically_singular: false,
            };
        }
        if best < SINGULAR_RATIO * max_row_norm {
            numerically_singular = true;
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            argument += PI; // row swap flips the determinant sign
        }
        let pivot = a[col * n + col];
        log_modulus += pivot.norm().ln();
        argument += pivot.arg();
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in (col + 1)..n {
                let v = a[col * n + k];
                a[row * n + k] -= factor * v;
            }
        }
    }
    LogDet {
        value: LogValue::new(log_modulus, argument).principal(),
        numerically_singular,
    }
}
