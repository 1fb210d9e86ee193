//! Parameter sweeps: JSON configuration with defaults, grid evaluation
//! through the channel and protection pipelines, and CSV emission.
//!
//! A sweep walks the Cartesian product of up to three axes — damping
//! (either a shared `d` axis with d1 = d2, or independent `d1`/`d2` axes),
//! correlation `mu`, and weak-measurement strength `p` — and evaluates the
//! configured scheme at every grid point. Records are produced in
//! lexicographic axis order and every pipeline is deterministic, so the
//! same config always yields byte-identical CSV.

use std::fmt;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;

use crate::channels::{cad_apply, ChannelParams};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::protection::{
    eam_qmr_pipeline, optimal_qmr_eam, optimal_qmr_wm, wm_qmr_pipeline, ProtectionParams,
};
use crate::states::{make_state, negativity, StateAmplitudes, StateClass};

/// Exact header line of every emitted CSV file.
pub const CSV_HEADER: &str = "state_class,d1,d2,mu,p,q,p_r,q_r,scheme,negativity,probability";

const DEFAULT_D_AXIS: Axis = Axis::span(0.0, 1.0, 51);
const DEFAULT_MU_AXIS: Axis = Axis::span(0.0, 1.0, 11);
const DEFAULT_P_AXIS: Axis = Axis::point(0.9);

/// One sweep axis: `steps` evenly spaced values from `min` to `max`
/// inclusive. `steps == 1` pins the axis to `min`.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    /// Axis holding the single value `value`.
    pub const fn point(value: f64) -> Self {
        Axis {
            min: value,
            max: value,
            steps: 1,
        }
    }

    /// Axis of `steps` evenly spaced values over `[min, max]`.
    pub const fn span(min: f64, max: f64, steps: usize) -> Self {
        Axis { min, max, steps }
    }

    /// The axis values, evenly spaced and inclusive of both endpoints.
    pub fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        (0..self.steps)
            .map(|k| self.min + span * k as f64 / (self.steps - 1) as f64)
            .collect()
    }

    fn check(&self, name: &str, violations: &mut Vec<String>) {
        if self.steps == 0 {
            violations.push(format!("grid.{name}: steps must be at least 1"));
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            violations.push(format!("grid.{name}: bounds must be finite"));
            return;
        }
        if self.min > self.max {
            violations.push(format!(
                "grid.{name}: min {} exceeds max {}",
                self.min, self.max
            ));
        }
        if self.min < 0.0 || self.max > 1.0 {
            violations.push(format!(
                "grid.{name}: range [{}, {}] must lie within [0, 1]",
                self.min, self.max
            ));
        }
    }
}

/// A complex number in config JSON: either a plain number or a
/// `[re, im]` pair.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(untagged, expecting = "a number or a [re, im] pair")]
pub enum ComplexSpec {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexSpec {
    fn to_complex(self) -> Complex64 {
        match self {
            ComplexSpec::Real(re) => Complex64::new(re, 0.0),
            ComplexSpec::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

/// The amplitude triple as written in config JSON. `alpha` is real by
/// convention; `beta` and `gamma` may carry phases. Defaults to the
/// balanced triple 1/sqrt(3) each.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudesSpec {
    pub alpha: f64,
    pub beta: ComplexSpec,
    pub gamma: ComplexSpec,
}

impl Default for AmplitudesSpec {
    fn default() -> Self {
        let r = 1.0 / 3f64.sqrt();
        AmplitudesSpec {
            alpha: r,
            beta: ComplexSpec::Real(r),
            gamma: ComplexSpec::Real(r),
        }
    }
}

impl AmplitudesSpec {
    /// Validated amplitudes; normalization is enforced here.
    pub fn build(&self) -> Result<StateAmplitudes> {
        StateAmplitudes::new(self.alpha, self.beta.to_complex(), self.gamma.to_complex())
    }
}

/// Grid axes as written in config JSON. Give either a shared `d` axis
/// (which locks d1 = d2) or independent `d1` and `d2` axes, never both.
#[derive(Clone, Copy, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub d: Option<Axis>,
    pub d1: Option<Axis>,
    pub d2: Option<Axis>,
    pub mu: Option<Axis>,
    pub p: Option<Axis>,
}

impl GridSpec {
    fn check(&self, violations: &mut Vec<String>) {
        if self.d.is_some() && (self.d1.is_some() || self.d2.is_some()) {
            violations.push("grid: give either `d` or `d1`/`d2`, not both".into());
        }
        if self.d1.is_some() != self.d2.is_some() {
            violations.push("grid: `d1` and `d2` must be given together".into());
        }
        let named = [
            ("d", &self.d),
            ("d1", &self.d1),
            ("d2", &self.d2),
            ("mu", &self.mu),
            ("p", &self.p),
        ];
        for (name, axis) in named {
            if let Some(axis) = axis {
                axis.check(name, violations);
            }
        }
    }

    /// Applies defaults: a shared d axis over [0, 1] x 51, mu over
    /// [0, 1] x 11, and p pinned to the single point 0.9.
    pub fn resolve(&self) -> ResolvedGrid {
        let (coupled, d1, d2) = match (self.d, self.d1, self.d2) {
            (Some(d), _, _) => (true, d, d),
            (None, Some(d1), Some(d2)) => (false, d1, d2),
            _ => (true, DEFAULT_D_AXIS, DEFAULT_D_AXIS),
        };
        ResolvedGrid {
            coupled,
            d1,
            d2,
            mu: self.mu.unwrap_or(DEFAULT_MU_AXIS),
            p: self.p.unwrap_or(DEFAULT_P_AXIS),
        }
    }
}

/// Grid axes with defaults applied and the damping coupling settled.
#[derive(Clone, Copy, Debug)]
pub struct ResolvedGrid {
    /// When true, the damping axes are locked together (single `d` axis).
    pub coupled: bool,
    pub d1: Axis,
    pub d2: Axis,
    pub mu: Axis,
    pub p: Axis,
}

impl ResolvedGrid {
    /// The (d1, d2) pairs in sweep order: zipped when coupled, the full
    /// Cartesian product when independent.
    pub fn damping_pairs(&self) -> Vec<(f64, f64)> {
        if self.coupled {
            return self.d1.values().into_iter().map(|d| (d, d)).collect();
        }
        let d2 = self.d2.values();
        let mut pairs = Vec::with_capacity(self.d1.steps * self.d2.steps);
        for a in self.d1.values() {
            for &b in &d2 {
                pairs.push((a, b));
            }
        }
        pairs
    }

    /// Record columns of the axes that scan more than one value, in
    /// column order. A heatmap needs exactly two of these.
    pub fn multi_axes(&self) -> Vec<&'static str> {
        let mut multi = Vec::new();
        if self.d1.steps > 1 {
            multi.push("d1");
        }
        if !self.coupled && self.d2.steps > 1 {
            multi.push("d2");
        }
        if self.mu.steps > 1 {
            multi.push("mu");
        }
        if self.p.steps > 1 {
            multi.push("p");
        }
        multi
    }
}

/// Protection scheme selector for a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Bare channel, no protection.
    None,
    /// Weak measurement before the channel, reversal after it.
    Wm,
    /// Environment-assisted measurement plus reversal.
    Eam,
    /// Both protected schemes, emitted as paired rows per grid point.
    Compare,
}

/// Scheme tag on one emitted record; `compare` sweeps expand into one
/// `wm` and one `eam` record per grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordScheme {
    None,
    Wm,
    Eam,
}

impl fmt::Display for RecordScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecordScheme::None => "none",
            RecordScheme::Wm => "wm",
            RecordScheme::Eam => "eam",
        })
    }
}

/// How the second WM strength q is chosen at each grid point.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QPolicy {
    /// q tracks the p axis (the symmetric p = q scan).
    EqualP,
    /// q held at a fixed value while p scans.
    Fixed(f64),
}

/// How the reversal strengths are chosen at each grid point.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QmrPolicy {
    /// Strengths matched to the scheme's reversal condition at each point.
    Optimal,
    /// Fixed strengths applied everywhere.
    Fixed { p_r: f64, q_r: f64 },
}

/// Which artifacts a sweep writes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub enum OutputFormat {
    #[serde(rename = "csv")]
    Csv,
    /// CSV plus one negativity heatmap per emitted scheme.
    #[serde(rename = "csv+svg")]
    CsvSvg,
}

/// Full sweep configuration. Every field has a default, so `{}` is a
/// valid config: a Class-1, unprotected d x mu scan.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub state_class: StateClass,
    pub amplitudes: AmplitudesSpec,
    pub scheme: Scheme,
    pub grid: GridSpec,
    pub q_policy: QPolicy,
    pub qmr_policy: QmrPolicy,
    /// CSV output path; SVG paths are derived from it.
    pub output: String,
    pub format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            state_class: StateClass::Class1,
            amplitudes: AmplitudesSpec::default(),
            scheme: Scheme::None,
            grid: GridSpec::default(),
            q_policy: QPolicy::EqualP,
            qmr_policy: QmrPolicy::Optimal,
            output: "sweep.csv".into(),
            format: OutputFormat::Csv,
        }
    }
}

impl SweepConfig {
    /// Checks every field, collecting all violations before failing.
    pub fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        if let Err(err) = self.amplitudes.build() {
            violations.push(format!("amplitudes: {err}"));
        }
        self.grid.check(&mut violations);
        if let QPolicy::Fixed(q) = self.q_policy {
            if !(0.0..=1.0).contains(&q) {
                violations.push(format!("q_policy.fixed: {q} is outside [0, 1]"));
            }
        }
        if let QmrPolicy::Fixed { p_r, q_r } = self.qmr_policy {
            for (name, value) in [("p_r", p_r), ("q_r", q_r)] {
                if !(0.0..=1.0).contains(&value) {
                    violations.push(format!("qmr_policy.fixed.{name}: {value} is outside [0, 1]"));
                }
            }
        }
        if self.output.is_empty() {
            violations.push("output: path must not be empty".into());
        }
        let grid = self.grid.resolve();
        if matches!(self.scheme, Scheme::None | Scheme::Eam) && grid.p.steps > 1 {
            violations.push(format!(
                "grid.p: a multi-point p axis has no effect for scheme `{}`",
                if self.scheme == Scheme::None { "none" } else { "eam" }
            ));
        }
        if self.format == OutputFormat::CsvSvg {
            let multi = grid.multi_axes();
            if multi.len() != 2 {
                violations.push(format!(
                    "format: csv+svg needs exactly two axes with steps > 1 to span a heatmap \
                     (found {}: [{}])",
                    multi.len(),
                    multi.join(", ")
                ));
            } else if self.scheme == Scheme::Compare && multi.contains(&"p") {
                violations.push(
                    "format: csv+svg with scheme `compare` cannot scan the p axis \
                     (the eam half ignores p)"
                        .into(),
                );
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::ConfigInvalid { violations })
        }
    }

    /// Protection parameters the wm scheme applies at one grid point.
    pub fn wm_strengths(&self, p: f64, d1: f64, d2: f64) -> Result<ProtectionParams> {
        let q = match self.q_policy {
            QPolicy::EqualP => p,
            QPolicy::Fixed(q) => q,
        };
        let (p_r, q_r) = match self.qmr_policy {
            QmrPolicy::Optimal => optimal_qmr_wm(p, q, d1, d2)?,
            QmrPolicy::Fixed { p_r, q_r } => (p_r, q_r),
        };
        ProtectionParams::new(p, q, p_r, q_r)
    }

    /// Protection parameters the eam scheme applies at one grid point.
    pub fn eam_strengths(&self, d1: f64, d2: f64) -> Result<ProtectionParams> {
        let (p_r, q_r) = match self.qmr_policy {
            QmrPolicy::Optimal => optimal_qmr_eam(d1, d2)?,
            QmrPolicy::Fixed { p_r, q_r } => (p_r, q_r),
        };
        ProtectionParams::new(0.0, 0.0, p_r, q_r)
    }
}

/// Parses a JSON config, applies defaults for absent fields and validates
/// the result. Parse failures carry the offending field path.
pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut de = serde_json::Deserializer::from_str(text);
    let cfg: SweepConfig =
        serde_path_to_error::deserialize(&mut de).map_err(|err| Error::ConfigParse {
            path: err.path().to_string(),
            message: err.inner().to_string(),
        })?;
    cfg.validate()?;
    Ok(cfg)
}

/// Like [`parse_config`] but starting from an in-memory JSON value, the
/// form produced after command-line `--set` overrides are applied.
pub fn config_from_value(value: serde_json::Value) -> Result<SweepConfig> {
    let cfg: SweepConfig =
        serde_path_to_error::deserialize(value).map_err(|err| Error::ConfigParse {
            path: err.path().to_string(),
            message: err.inner().to_string(),
        })?;
    cfg.validate()?;
    Ok(cfg)
}

/// One evaluated grid point. `negativity` and `probability` are `None`
/// when post-selection had zero success probability at this point; CSV
/// emission renders those as empty fields rather than fabricated zeros.
#[derive(Clone, Copy, Debug)]
pub struct SweepRecord {
    pub state_class: StateClass,
    pub d1: f64,
    pub d2: f64,
    pub mu: f64,
    /// WM strengths actually applied (0 for schemes without a WM stage).
    pub p: f64,
    pub q: f64,
    /// Reversal strengths actually applied (0 for the bare channel).
    pub p_r: f64,
    pub q_r: f64,
    pub scheme: RecordScheme,
    pub negativity: Option<f64>,
    pub probability: Option<f64>,
}

/// Evaluates `cfg` over its full grid. Rows come out in lexicographic
/// (d1, d2, mu, p) order; `compare` emits a wm row then an eam row per
/// point. Fails with [`Error::EmptySweep`] if every grid point was
/// post-selected away.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let amps = cfg.amplitudes.build()?;
    let rho0 = make_state(cfg.state_class, &amps);
    let grid = cfg.grid.resolve();
    let mut records = Vec::new();
    for (d1, d2) in grid.damping_pairs() {
        for mu in grid.mu.values() {
            let ch = ChannelParams::new(d1, d2, mu)?;
            for p in grid.p.values() {
                match cfg.scheme {
                    Scheme::None => records.push(eval_none(cfg, &rho0, &ch)?),
                    Scheme::Wm => records.push(eval_wm(cfg, &rho0, &ch, p)?),
                    Scheme::Eam => records.push(eval_eam(cfg, &rho0, &ch)?),
                    Scheme::Compare => {
                        records.push(eval_wm(cfg, &rho0, &ch, p)?);
                        records.push(eval_eam(cfg, &rho0, &ch)?);
                    }
                }
            }
        }
    }
    if records.iter().all(|r| r.negativity.is_none()) {
        return Err(Error::EmptySweep {
            rows: records.len(),
        });
    }
    Ok(records)
}

fn eval_none(cfg: &SweepConfig, rho0: &ComplexMatrix, ch: &ChannelParams) -> Result<SweepRecord> {
    let rho = cad_apply(rho0, ch)?;
    Ok(SweepRecord {
        state_class: cfg.state_class,
        d1: ch.d1,
        d2: ch.d2,
        mu: ch.mu,
        p: 0.0,
        q: 0.0,
        p_r: 0.0,
        q_r: 0.0,
        scheme: RecordScheme::None,
        negativity: Some(negativity(&rho)?),
        probability: Some(1.0),
    })
}

fn eval_wm(
    cfg: &SweepConfig,
    rho0: &ComplexMatrix,
    ch: &ChannelParams,
    p: f64,
) -> Result<SweepRecord> {
    let prot = cfg.wm_strengths(p, ch.d1, ch.d2)?;
    let (neg, prob) = match wm_qmr_pipeline(rho0, &prot, ch) {
        Ok(outcome) => (Some(negativity(&outcome.state)?), Some(outcome.probability)),
        Err(Error::ZeroProbability { .. }) => (None, None),
        Err(err) => return Err(err),
    };
    Ok(SweepRecord {
        state_class: cfg.state_class,
        d1: ch.d1,
        d2: ch.d2,
        mu: ch.mu,
        p: prot.p,
        q: prot.q,
        p_r: prot.p_r,
        q_r: prot.q_r,
        scheme: RecordScheme::Wm,
        negativity: neg,
        probability: prob,
    })
}

fn eval_eam(cfg: &SweepConfig, rho0: &ComplexMatrix, ch: &ChannelParams) -> Result<SweepRecord> {
    let prot = cfg.eam_strengths(ch.d1, ch.d2)?;
    let (neg, prob) = match eam_qmr_pipeline(rho0, &prot, ch) {
        Ok(outcome) => (Some(negativity(&outcome.state)?), Some(outcome.probability)),
        Err(Error::ZeroProbability { .. }) => (None, None),
        Err(err) => return Err(err),
    };
    Ok(SweepRecord {
        state_class: cfg.state_class,
        d1: ch.d1,
        d2: ch.d2,
        mu: ch.mu,
        p: 0.0,
        q: 0.0,
        p_r: prot.p_r,
        q_r: prot.q_r,
        scheme: RecordScheme::Eam,
        negativity: neg,
        probability: prob,
    })
}

/// A float rendered with 12 significant digits, losslessly parseable back.
fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Renders records as CSV text: the exact [`CSV_HEADER`], numbers with 12
/// significant digits, LF line endings, and empty negativity/probability
/// fields for zero-probability rows.
pub fn emit_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(96 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.state_class,
            fmt_sig(r.d1),
            fmt_sig(r.d2),
            fmt_sig(r.mu),
            fmt_sig(r.p),
            fmt_sig(r.q),
            fmt_sig(r.p_r),
            fmt_sig(r.q_r),
            r.scheme,
            r.negativity.map(fmt_sig).unwrap_or_default(),
            r.probability.map(fmt_sig).unwrap_or_default(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn axis_values_cover_both_endpoints() {
        let axis = Axis::span(0.0, 1.0, 5);
        let values = axis.values();
        assert_eq!(values, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(Axis::point(0.9).values(), vec![0.9]);
    }

    #[test]
    fn empty_object_parses_to_full_defaults() {
        let cfg = parse_config("{}").unwrap();
        assert_eq!(cfg, SweepConfig::default());
        let grid = cfg.grid.resolve();
        assert!(grid.coupled);
        assert_eq!(grid.d1, Axis::span(0.0, 1.0, 51));
        assert_eq!(grid.mu, Axis::span(0.0, 1.0, 11));
        assert_eq!(grid.p, Axis::point(0.9));
        assert_eq!(cfg.output, "sweep.csv");
    }

    #[test]
    fn amplitude_pairs_parse_as_complex_numbers() {
        let cfg = parse_config(
            r#"{"amplitudes": {"alpha": 0.6, "beta": [0.0, 0.6], "gamma": 0.5291502622129182}}"#,
        )
        .unwrap();
        let amps = cfg.amplitudes.build().unwrap();
        assert_abs_diff_eq!(amps.beta().im, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(amps.beta().re, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn unknown_fields_are_parse_errors_with_a_path() {
        let err = parse_config(r#"{"grid": {"dd": {"min": 0, "max": 1, "steps": 3}}}"#)
            .unwrap_err();
        match err {
            Error::ConfigParse { path, .. } => assert!(path.contains("grid"), "path = {path}"),
            other => panic!("expected ConfigParse, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            parse_config("{not json"),
            Err(Error::ConfigParse { .. })
        ));
    }

    #[test]
    fn validation_collects_every_violation() {
        let err = parse_config(
            r#"{
                "scheme": "wm",
                "grid": {"d": {"min": 0.8, "max": 0.2, "steps": 0}},
                "q_policy": {"fixed": 1.5},
                "output": ""
            }"#,
        )
        .unwrap_err();
        match err {
            Error::ConfigInvalid { violations } => {
                assert!(violations.len() >= 4, "violations = {violations:?}");
                assert!(violations.iter().any(|v| v.contains("steps")));
                assert!(violations.iter().any(|v| v.contains("exceeds max")));
                assert!(violations.iter().any(|v| v.contains("q_policy")));
                assert!(violations.iter().any(|v| v.contains("output")));
            }
            other => panic!("expected ConfigInvalid, got {other:?}"),
        }
    }

    #[test]
    fn shared_and_independent_damping_axes_are_exclusive() {
        let err = parse_config(
            r#"{"grid": {
                "d": {"min": 0, "max": 1, "steps": 3},
                "d1": {"min": 0, "max": 1, "steps": 3},
                "d2": {"min": 0, "max": 1, "steps": 3}
            }}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConfigInvalid { .. }));

        let err = parse_config(r#"{"grid": {"d1": {"min": 0, "max": 1, "steps": 3}}}"#)
            .unwrap_err();
        assert!(matches!(err, Error::ConfigInvalid { .. }));
    }

    #[test]
    fn svg_format_needs_exactly_two_scanning_axes() {
        // Three scanning axes cannot be drawn as one heatmap.
        let err = parse_config(
            r#"{
                "scheme": "wm",
                "format": "csv+svg",
                "grid": {"p": {"min": 0.0, "max": 0.9, "steps": 4}}
            }"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ConfigInvalid { .. }));

        // The default d x mu grid is fine.
        parse_config(r#"{"format": "csv+svg"}"#).unwrap();
    }

    #[test]
    fn explicit_eam_landscape_config_parses() {
        let cfg = parse_config(
            r#"{
                "scheme": "eam",
                "grid": {
                    "d": {"min": 0.0, "max": 1.0, "steps": 51},
                    "mu": {"min": 0.0, "max": 1.0, "steps": 11}
                }
            }"#,
        )
        .unwrap();
        assert_eq!(cfg.scheme, Scheme::Eam);
        let grid = cfg.grid.resolve();
        assert_eq!(grid.damping_pairs().len(), 51);
        assert_eq!(grid.mu.values().len(), 11);
        assert_eq!(grid.p.values(), vec![0.9]);
    }

    #[test]
    fn p_axis_requires_a_wm_stage() {
        let err = parse_config(
            r#"{"scheme": "eam", "grid": {"p": {"min": 0.0, "max": 0.9, "steps": 4}}}"#,
        )
        .unwrap_err();
        match err {
            Error::ConfigInvalid { violations } => {
                assert!(violations.iter().any(|v| v.contains("has no effect")));
            }
            other => panic!("expected ConfigInvalid, got {other:?}"),
        }
    }

    #[test]
    fn single_point_unprotected_sweep_keeps_full_entanglement() {
        let cfg = parse_config(
            r#"{"grid": {
                "d": {"min": 0.0, "max": 0.0, "steps": 1},
                "mu": {"min": 0.0, "max": 0.0, "steps": 1}
            }}"#,
        )
        .unwrap();
        let records = run_sweep(&cfg).unwrap();
        assert_eq!(records.len(), 1);
        let r = records[0];
        assert_eq!(r.scheme, RecordScheme::None);
        assert_abs_diff_eq!(r.negativity.unwrap(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(r.probability.unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn default_sweep_has_561_rows_and_decays_along_d() {
        let cfg = parse_config("{}").unwrap();
        let records = run_sweep(&cfg).unwrap();
        assert_eq!(records.len(), 51 * 11);
        // Lexicographic (d, mu) order: the mu = 0 rows are every 11th.
        let mu0: Vec<&SweepRecord> = records.iter().step_by(11).collect();
        assert_eq!(mu0.len(), 51);
        assert_abs_diff_eq!(mu0[0].negativity.unwrap(), 1.0, epsilon = 1e-10);
        for pair in mu0.windows(2) {
            assert!(pair[0].mu == 0.0 && pair[1].mu == 0.0);
            assert!(
                pair[1].negativity.unwrap() <= pair[0].negativity.unwrap() + 1e-9,
                "negativity must not grow along d at mu = 0"
            );
        }
        assert_abs_diff_eq!(mu0[50].negativity.unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn compare_scheme_emits_paired_rows_with_eam_dominating() {
        let cfg = parse_config(
            r#"{
                "scheme": "compare",
                "grid": {
                    "d": {"min": 0.1, "max": 0.9, "steps": 5},
                    "mu": {"min": 0.6, "max": 0.6, "steps": 1},
                    "p": {"min": 0.9, "max": 0.9, "steps": 1}
                }
            }"#,
        )
        .unwrap();
        let records = run_sweep(&cfg).unwrap();
        assert_eq!(records.len(), 10);
        for pair in records.chunks(2) {
            let (wm, eam) = (&pair[0], &pair[1]);
            assert_eq!(wm.scheme, RecordScheme::Wm);
            assert_eq!(eam.scheme, RecordScheme::Eam);
            assert_eq!(wm.d1, eam.d1);
            assert!(eam.negativity.unwrap() >= wm.negativity.unwrap() - 1e-9);
            assert!(eam.probability.unwrap() >= wm.probability.unwrap() - 1e-9);
        }
    }

    #[test]
    fn zero_probability_rows_have_empty_fields() {
        // At d = 1 the matched reversal strengths reach 1 and the
        // post-selection succeeds with probability zero.
        let cfg = parse_config(
            r#"{
                "scheme": "wm",
                "grid": {
                    "d": {"min": 0.5, "max": 1.0, "steps": 2},
                    "mu": {"min": 0.0, "max": 0.0, "steps": 1}
                }
            }"#,
        )
        .unwrap();
        let records = run_sweep(&cfg).unwrap();
        assert_eq!(records.len(), 2);
        assert!(records[0].negativity.is_some());
        assert!(records[1].negativity.is_none() && records[1].probability.is_none());
        let csv = emit_csv(&records);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[2].ends_with("wm,,"), "line = {}", lines[2]);
    }

    #[test]
    fn all_rows_post_selected_away_is_an_error() {
        let cfg = parse_config(
            r#"{
                "scheme": "wm",
                "grid": {
                    "d": {"min": 1.0, "max": 1.0, "steps": 1},
                    "mu": {"min": 0.0, "max": 0.0, "steps": 1}
                }
            }"#,
        )
        .unwrap();
        match run_sweep(&cfg) {
            Err(Error::EmptySweep { rows }) => assert_eq!(rows, 1),
            other => panic!("expected EmptySweep, got {other:?}"),
        }
    }

    #[test]
    fn csv_header_is_exact_and_shape_is_right() {
        assert_eq!(
            emit_csv(&[]),
            "state_class,d1,d2,mu,p,q,p_r,q_r,scheme,negativity,probability\n"
        );
        let record = SweepRecord {
            state_class: StateClass::Class1,
            d1: 0.5,
            d2: 0.5,
            mu: 0.0,
            p: 0.0,
            q: 0.0,
            p_r: 0.0,
            q_r: 0.0,
            scheme: RecordScheme::None,
            negativity: Some(1.0),
            probability: Some(1.0),
        };
        let csv = emit_csv(&[record]);
        assert_eq!(csv.lines().count(), 2);
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn csv_numbers_round_trip_within_print_precision() {
        let cfg = parse_config(
            r#"{"scheme": "wm", "grid": {
                "d": {"min": 0.1, "max": 0.7, "steps": 3},
                "mu": {"min": 0.3, "max": 0.9, "steps": 2}
            }}"#,
        )
        .unwrap();
        let records = run_sweep(&cfg).unwrap();
        let csv = emit_csv(&records);
        for (line, record) in csv.lines().skip(1).zip(&records) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 11);
            assert_eq!(fields[0], "class1");
            assert_eq!(fields[8], "wm");
            let reparsed: Vec<f64> = fields[1..8]
                .iter()
                .map(|f| f.parse::<f64>().unwrap())
                .collect();
            for (got, want) in reparsed.iter().zip([
                record.d1, record.d2, record.mu, record.p, record.q, record.p_r, record.q_r,
            ]) {
                assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
            }
            assert_abs_diff_eq!(
                fields[9].parse::<f64>().unwrap(),
                record.negativity.unwrap(),
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                fields[10].parse::<f64>().unwrap(),
                record.probability.unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn identical_configs_emit_byte_identical_csv() {
        let text = r#"{"scheme": "compare", "grid": {
            "d": {"min": 0.0, "max": 0.9, "steps": 7},
            "mu": {"min": 0.0, "max": 1.0, "steps": 3}
        }}"#;
        let first = emit_csv(&run_sweep(&parse_config(text).unwrap()).unwrap());
        let second = emit_csv(&run_sweep(&parse_config(text).unwrap()).unwrap());
        assert_eq!(first, second);
    }

    #[test]
    fn numbers_carry_twelve_significant_digits() {
        assert_eq!(fmt_sig(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(fmt_sig(0.0), "0.00000000000e0");
        assert_eq!(fmt_sig(1.0), "1.00000000000e0");
    }
}
