//! Determinants of finite Toeplitz + Hankel matrices `M_n = T_n + H_n` for
//! symbols with jump and power singularities: exact closed-form evaluation,
//! overflow-safe LU determinants, asymptotic predictions with Barnes-G
//! constants, and a convergence harness.
//!
//! The crate is organized along the pipeline:
//!
//! * [`special`] — complex log-Gamma, log Barnes-G, product identities;
//! * [`symbol`] — declarative symbol model and Fourier coefficients;
//! * [`matrix`] — matrix assembly and log-scale LU determinants;
//! * [`closed_form`] — exact finite-n determinant formulas;
//! * [`predict`] — asymptotic predictions and limit constants;
//! * [`experiment`] — exact-vs-predicted convergence runs and reports.
//!
//! ```
//! use thdet::closed_form::exact_logdet_tbeta;
//! use thdet::predict::predict_one_jump;
//! use thdet::Complex;
//!
//! // pure jump of size 0.25 at the point 1: exact determinant vs prediction
//! let beta = Complex::new(0.25, 0.0);
//! let exact = exact_logdet_tbeta(256, beta, 1).unwrap();
//! let predicted = predict_one_jump(beta, 1).unwrap().predict(256);
//! let ratio = exact.ratio(&predicted);
//! assert!((ratio - 1.0).norm() < 0.01);
//! ```

pub mod closed_form;
pub mod error;
pub mod experiment;
pub mod logvalue;
pub mod matrix;
pub mod predict;
pub mod quad;
pub mod special;
pub mod symbol;

pub use error::{Error, Result};
pub use logvalue::LogValue;

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;
