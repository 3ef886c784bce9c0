//! Convergence experiments: exact determinants against predictions over an
//! n-grid, rate fitting, and CSV/JSON report emission.
//!
//! Rows are computed sequentially in grid order so reports are byte-stable;
//! every underlying operation is a pure function, so callers may parallelize
//! over n themselves and reassemble rows in order if they need to.

use crate::closed_form::ClosedFormFamily;
use crate::error::{Error, Result};
use crate::logvalue::{reduce_argument, LogValue};
use crate::matrix::{build_m, build_toeplitz, logdet_lu};
use crate::predict::predict_m;
use crate::special::log_relative_error;
use crate::symbol::{symbol_fourier_coeffs, SymbolSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// How the exact determinant of each row is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactMethod {
    Lu,
    #[serde(alias = "closed")]
    ClosedForm,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

fn default_n_list() -> Vec<usize> {
    vec![16, 23, 32, 45, 64, 91, 128, 181, 256]
}

fn default_method() -> ExactMethod {
    ExactMethod::Lu
}

fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

/// Declarative description of one convergence run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub spec: SymbolSpec,
    #[serde(default = "default_n_list")]
    pub n_list: Vec<usize>,
    #[serde(default = "default_method")]
    pub exact_method: ExactMethod,
    #[serde(default)]
    pub toeplitz_too: bool,
    #[serde(default = "default_format")]
    pub output: OutputFormat,
    pub output_path: String,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        if self.n_list.is_empty() {
            return Err(Error::InvalidConfig("n_list is empty".into()));
        }
        if self.n_list[0] < 1 {
            return Err(Error::InvalidConfig("n values must be >= 1".into()));
        }
        if !self.n_list.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidConfig(
                "n_list must be strictly increasing".into(),
            ));
        }
        if *self.n_list.last().unwrap() > 1024 {
            return Err(Error::InvalidConfig(
                "n_list exceeds the desk-scale guard of 1024".into(),
            ));
        }
        Ok(())
    }
}

/// A determinant in a report: log-modulus and argument, or an exact zero.
/// Zeros serialize as the literal string "zero".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetValue {
    Zero,
    Value { logmod: f64, arg: f64 },
}

impl DetValue {
    fn from_logvalue(v: &LogValue) -> Self {
        if v.is_zero {
            DetValue::Zero
        } else {
            DetValue::Value {
                logmod: v.log_modulus,
                arg: v.reduced_argument(),
            }
        }
    }
}

impl Serialize for DetValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DetValue::Zero => "zero".serialize(s),
            DetValue::Value { logmod, arg } => {
                use serde::ser::SerializeStruct;
                let mut st = s.serialize_struct("DetValue", 2)?;
                st.serialize_field("logmod", logmod)?;
                st.serialize_field("arg", arg)?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for DetValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Marker(String),
            Value { logmod: f64, arg: f64 },
        }
        match Raw::deserialize(d)? {
            Raw::Marker(m) if m == "zero" => Ok(DetValue::Zero),
            Raw::Marker(m) => Err(serde::de::Error::custom(format!("bad marker {m:?}"))),
            Raw::Value { logmod, arg } => Ok(DetValue::Value { logmod, arg }),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub exact: DetValue,
    pub predicted: DetValue,
    /// |exact/predicted|; absent when the exact determinant is zero.
    pub ratio_mod: Option<f64>,
    pub ratio_arg: Option<f64>,
    /// |exact/predicted - 1|.
    pub abs_err: Option<f64>,
    /// LU vs closed-form deviation, recorded when exact_method = both.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method_discrepancy: Option<f64>,
    /// det M_n / det T_n, recorded when toeplitz_too is set.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mt_ratio_mod: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mt_ratio_arg: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ReportRow>,
    /// Least-squares slope of log abs_err vs log n over the tail half.
    pub fitted_rate: Option<f64>,
    /// Is abs_err strictly decreasing over the tail half of the grid?
    pub monotone_tail: bool,
}

fn ratio_fields(exact: &LogValue, predicted: &LogValue) -> (Option<f64>, Option<f64>, Option<f64>) {
    if exact.is_zero || predicted.is_zero {
        return (None, None, None);
    }
    let rm = (exact.log_modulus - predicted.log_modulus).exp();
    let ra = reduce_argument(exact.argument - predicted.argument);
    let err = (Complex64::from_polar(rm, ra) - Complex64::new(1.0, 0.0)).norm();
    (Some(rm), Some(ra), Some(err))
}

/// Run the experiment: for each n build the matrix with window `K = 2n + 8`
/// (or evaluate the closed form), evaluate the prediction, and record ratios.
///
/// A Barnes-G zero in the prediction constant means the asymptotic value is
/// identically zero (half-integer jump exponents at 1, for instance, make the
/// determinant itself vanish); such rows carry the zero marker and no ratio.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ConvergenceReport> {
    config.validate()?;
    let prediction = match predict_m(&config.spec) {
        Ok(p) => Some(p),
        Err(Error::BarnesGZero { .. }) => None,
        Err(e) => return Err(e),
    };
    let family = ClosedFormFamily::of(&config.spec);
    if matches!(
        config.exact_method,
        ExactMethod::ClosedForm | ExactMethod::Both
    ) && family.is_none()
    {
        return Err(Error::NoClosedForm(
            "spec is not one of the closed-form families (pure jump at +-1, special two-jump, pure power)"
                .into(),
        ));
    }

    let mut rows = Vec::with_capacity(config.n_list.len());
    for &n in &config.n_list {
        let needs_matrix = matches!(config.exact_method, ExactMethod::Lu | ExactMethod::Both)
            || config.toeplitz_too;
        let series = if needs_matrix {
            Some(symbol_fourier_coeffs(&config.spec, 2 * n as i64 + 8)?)
        } else {
            None
        };
        let lu_det = match &series {
            Some(s) if matches!(config.exact_method, ExactMethod::Lu | ExactMethod::Both) => {
                Some(logdet_lu(&build_m(s, n, 1)?).value)
            }
            _ => None,
        };
        let cf_det = match (&family, config.exact_method) {
            (Some(f), ExactMethod::ClosedForm | ExactMethod::Both) => Some(f.exact_logdet(n)?),
            _ => None,
        };
        let mut method_discrepancy = None;
        let exact = match (lu_det, cf_det) {
            (Some(lu), Some(cf)) => {
                let d = if lu.is_zero && cf.is_zero {
                    0.0
                } else {
                    log_relative_error(&lu, &cf)
                };
                if d.is_nan() || d > 1e-8 {
                    return Err(Error::Domain(format!(
                        "LU and closed form disagree at n = {n}: relative deviation {d:.3e}"
                    )));
                }
                method_discrepancy = Some(d);
                cf
            }
            (Some(lu), None) => lu,
            (None, Some(cf)) => cf,
            (None, None) => unreachable!("one exact method is always selected"),
        };
        let predicted = match &prediction {
            Some(p) => p.predict(n),
            None => LogValue::zero(),
        };
        let (ratio_mod, ratio_arg, abs_err) = ratio_fields(&exact, &predicted);
        let (mut mt_ratio_mod, mut mt_ratio_arg) = (None, None);
        if config.toeplitz_too {
            let s = series.as_ref().expect("series built for toeplitz_too");
            let dt = logdet_lu(&build_toeplitz(s, n)?).value;
            let dm = match config.exact_method {
                ExactMethod::Lu | ExactMethod::Both => lu_det.expect("lu determinant computed"),
                ExactMethod::ClosedForm => logdet_lu(&build_m(s, n, 1)?).value,
            };
            if !dm.is_zero && !dt.is_zero {
                mt_ratio_mod = Some((dm.log_modulus - dt.log_modulus).exp());
                mt_ratio_arg = Some(reduce_argument(dm.argument - dt.argument));
            }
        }
        rows.push(ReportRow {
            n,
            exact: DetValue::from_logvalue(&exact),
            predicted: DetValue::from_logvalue(&predicted),
            ratio_mod,
            ratio_arg,
            abs_err,
            method_discrepancy,
            mt_ratio_mod,
            mt_ratio_arg,
        });
    }

    let tail_start = rows.len() / 2;
    let tail = &rows[tail_start..];
    let monotone_tail = tail.len() >= 2
        && tail.windows(2).all(|w| match (w[0].abs_err, w[1].abs_err) {
            (Some(a), Some(b)) => b < a,
            _ => false,
        });
    let report = ConvergenceReport {
        fitted_rate: None,
        monotone_tail,
        rows,
    };
    let fitted_rate = fit_rate(&report).ok();
    Ok(ConvergenceReport {
        fitted_rate,
        ..report
    })
}

/// Least-squares slope of log abs_err against log n over the largest half of
/// the usable (nonzero-error) rows. Needs at least three usable rows.
pub fn fit_rate(report: &ConvergenceReport) -> Result<f64> {
    let usable: Vec<(f64, f64)> = report
        .rows
        .iter()
        .filter_map(|r| match r.abs_err {
            Some(e) if e > 0.0 => Some(((r.n as f64).ln(), e.ln())),
            _ => None,
        })
        .collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientRows(usable.len()));
    }
    let tail = &usable[usable.len() / 2..];
    let m = tail.len() as f64;
    let sx: f64 = tail.iter().map(|(x, _)| x).sum();
    let sy: f64 = tail.iter().map(|(_, y)| y).sum();
    let sxx: f64 = tail.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = tail.iter().map(|(x, y)| x * y).sum();
    Ok((m * sxy - sx * sy) / (m * sxx - sx * sx))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn det_cells(v: &DetValue) -> (String, String) {
    match v {
        DetValue::Zero => ("zero".into(), "zero".into()),
        DetValue::Value { logmod, arg } => (logmod.to_string(), arg.to_string()),
    }
}

/// Render the report as CSV with the fixed column set.
pub fn report_to_csv(report: &ConvergenceReport) -> String {
    let mut out =
        String::from("n,exact_logmod,exact_arg,pred_logmod,pred_arg,ratio_mod,ratio_arg,abs_err\n");
    for row in &report.rows {
        let (el, ea) = det_cells(&row.exact);
        let (pl, pa) = det_cells(&row.predicted);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.n,
            el,
            ea,
            pl,
            pa,
            fmt_opt(row.ratio_mod),
            fmt_opt(row.ratio_arg),
            fmt_opt(row.abs_err)
        ));
    }
    out
}

/// Render the report as pretty JSON (a deterministic byte sequence).
pub fn report_to_json(report: &ConvergenceReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

/// Write the report to `path` in the chosen format.
pub fn emit_report(report: &ConvergenceReport, format: OutputFormat, path: &str) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => report_to_csv(report),
        OutputFormat::Json => report_to_json(report)?,
    };
    let mut f = std::fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::SmoothPart;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn config(spec: SymbolSpec) -> ExperimentConfig {
        ExperimentConfig {
            spec,
            n_list: vec![4, 8],
            exact_method: ExactMethod::Lu,
            toeplitz_too: false,
            output: OutputFormat::Csv,
            output_path: "unused.csv".into(),
        }
    }

    #[test]
    fn identity_symbol_has_unit_ratios() {
        let report = run_experiment(&config(SymbolSpec::default())).unwrap();
        for row in &report.rows {
            assert_eq!(row.ratio_mod, Some(1.0));
            assert_eq!(row.ratio_arg, Some(0.0));
            assert_eq!(row.abs_err, Some(0.0));
        }
    }

    #[test]
    fn zero_rows_are_tagged() {
        // t_{3/2} at 1: determinant identically zero from n = 2 on, and the
        // prediction constant is a Barnes-G zero; rows carry the marker and
        // no ratio
        let mut cfg = config(SymbolSpec::pure_jump_plus(c(1.5, 0.0)));
        cfg.exact_method = ExactMethod::ClosedForm;
        cfg.n_list = vec![2, 3];
        let report = run_experiment(&cfg).unwrap();
        for row in &report.rows {
            assert_eq!(row.exact, DetValue::Zero);
            assert_eq!(row.predicted, DetValue::Zero);
            assert_eq!(row.ratio_mod, None);
            assert_eq!(row.abs_err, None);
        }
        assert_eq!(report.fitted_rate, None);
        let csv = report_to_csv(&report);
        assert!(csv.contains("2,zero,zero,zero,zero,,,"));
    }

    #[test]
    fn method_both_checks_agreement() {
        let mut cfg = config(SymbolSpec::pure_jump_plus(c(0.3, 0.0)));
        cfg.exact_method = ExactMethod::Both;
        cfg.n_list = vec![2, 4, 6, 8];
        let report = run_experiment(&cfg).unwrap();
        for row in &report.rows {
            assert!(row.method_discrepancy.unwrap() <= 1e-8);
        }
    }

    #[test]
    fn closed_form_unavailable_is_an_error() {
        let mut cfg = config(SymbolSpec::smooth_only(
            SmoothPart::new(vec![(1, c(0.3, 0.0))]).unwrap(),
        ));
        cfg.exact_method = ExactMethod::ClosedForm;
        assert!(matches!(run_experiment(&cfg), Err(Error::NoClosedForm(_))));
    }

    #[test]
    fn config_validation() {
        let mut cfg = config(SymbolSpec::default());
        cfg.n_list = vec![8, 4];
        assert!(cfg.validate().is_err());
        cfg.n_list = vec![4, 2048];
        assert!(cfg.validate().is_err());
        cfg.n_list = vec![];
        assert!(cfg.validate().is_err());
        cfg.n_list = vec![4, 8];
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn fit_rate_synthetic() {
        let synth = |errs: &[f64]| ConvergenceReport {
            rows: errs
                .iter()
                .enumerate()
                .map(|(i, &e)| ReportRow {
                    n: 16 << i,
                    exact: DetValue::Value {
                        logmod: 0.0,
                        arg: 0.0,
                    },
                    predicted: DetValue::Value {
                        logmod: 0.0,
                        arg: 0.0,
                    },
                    ratio_mod: Some(1.0),
                    ratio_arg: Some(0.0),
                    abs_err: Some(e),
                    method_discrepancy: None,
                    mt_ratio_mod: None,
                    mt_ratio_arg: None,
                })
                .collect(),
            fitted_rate: None,
            monotone_tail: true,
        };
        // abs_err = 1/n: slope -1
        let ns = [16.0f64, 32.0, 64.0, 128.0, 256.0, 512.0];
        let r = synth(&ns.iter().map(|n| 1.0 / n).collect::<Vec<_>>());
        assert!((fit_rate(&r).unwrap() + 1.0).abs() < 1e-6);
        // constant error: slope 0
        let r = synth(&[0.25; 6]);
        assert!(fit_rate(&r).unwrap().abs() < 1e-12);
        // too few rows
        let r = synth(&[0.25, 0.125]);
        assert!(matches!(fit_rate(&r), Err(Error::InsufficientRows(2))));
    }

    #[test]
    fn csv_shape() {
        let empty = ConvergenceReport {
            rows: vec![],
            fitted_rate: None,
            monotone_tail: false,
        };
        let csv = report_to_csv(&empty);
        assert_eq!(csv.lines().count(), 1);
        assert_eq!(
            csv.trim_end(),
            "n,exact_logmod,exact_arg,pred_logmod,pred_arg,ratio_mod,ratio_arg,abs_err"
        );

        let report = run_experiment(&config(SymbolSpec::default())).unwrap();
        assert_eq!(report_to_csv(&report).lines().count(), 3);
    }

    #[test]
    fn json_roundtrip_is_textually_stable() {
        let mut cfg = config(SymbolSpec::pure_jump_plus(c(0.27, 0.0)));
        cfg.n_list = vec![3, 5, 9, 17];
        let report = run_experiment(&cfg).unwrap();
        let text = report_to_json(&report).unwrap();
        let parsed: ConvergenceReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, report);
        let text2 = report_to_json(&parsed).unwrap();
        assert_eq!(text, text2);
    }

    #[test]
    fn determinism_byte_identical() {
        let mut cfg = config(SymbolSpec {
            smooth: SmoothPart::new(vec![(1, c(0.3, 0.0)), (-1, c(0.1, 0.0))]).unwrap(),
            jump_plus: c(0.2, 0.0),
            ..Default::default()
        });
        cfg.n_list = vec![4, 8, 16];
        let a = report_to_csv(&run_experiment(&cfg).unwrap());
        let b = report_to_csv(&run_experiment(&cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn mt_ratio_column_converges_to_ratio_constant() {
        // with toeplitz_too set and jumps away from +-1, det M_n / det T_n
        // approaches exp(ratio_constant_f)
        let spec = SymbolSpec::pure_rotated_jump(c(0.2, 0.0), 1.1);
        let limit = crate::predict::ratio_constant_f(&spec).unwrap().exp();
        let mut cfg = config(spec);
        cfg.toeplitz_too = true;
        cfg.n_list = vec![16, 32, 64, 128];
        let report = run_experiment(&cfg).unwrap();
        let errs: Vec<f64> = report
            .rows
            .iter()
            .map(|r| {
                let ratio = Complex64::from_polar(r.mt_ratio_mod.unwrap(), r.mt_ratio_arg.unwrap());
                (ratio / limit - 1.0).norm()
            })
            .collect();
        let tail = &errs[errs.len() / 2..];
        assert!(
            tail.windows(2).all(|w| w[1] < w[0]),
            "M/T ratio errors not decreasing: {errs:?}"
        );
        assert!(*errs.last().unwrap() < 0.05);
    }

    #[test]
    fn smooth_spec_converges_fast() {
        // trigonometric-polynomial log-symbol: abs_err at n = 64 below 1e-6
        let mut cfg = config(SymbolSpec::smooth_only(
            SmoothPart::new(vec![(1, c(0.3, 0.0)), (-1, c(0.1, 0.0))]).unwrap(),
        ));
        cfg.n_list = vec![16, 32, 64];
        let report = run_experiment(&cfg).unwrap();
        assert!(report.rows.last().unwrap().abs_err.unwrap() <= 1e-6);
    }

    #[test]
    fn config_json_defaults() {
        let cfg: ExperimentConfig =
            serde_json::from_str(r#"{"spec": {"jump_plus": [0.25, 0.0]}, "output_path": "r.csv"}"#)
                .unwrap();
        assert_eq!(cfg.n_list, default_n_list());
        assert_eq!(cfg.exact_method, ExactMethod::Lu);
        assert_eq!(cfg.output, OutputFormat::Csv);
        assert!(!cfg.toeplitz_too);

        let cfg: ExperimentConfig = serde_json::from_str(
            r#"{"spec": {}, "exact_method": "closed", "output_path": "r.csv"}"#,
        )
        .unwrap();
        assert_eq!(cfg.exact_method, ExactMethod::ClosedForm);
    }
}
