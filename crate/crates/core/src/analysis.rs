//! Limit detection, growth-bound checks, Tauberian condition checks, and
//! whole-sequence summability classification.
//!
//! Asymptotic statements ("o(1)", "o(n)", divergence) are operationalized as
//! finite-sample proxies, and every proxy parameter lands in the report:
//!
//! - A sequence of values "converges" when the maximum pairwise distance
//!   over a trailing window falls below a tolerance ([`detect_limit`]).
//! - A condition series "tends to 0" when its trailing-window maximum drops
//!   below a configured fraction (default 0.05) of its running maximum.
//! - `not_summable` requires positive evidence: either a trailing-window
//!   spread above 10× the tolerance that is not shrinking relative to
//!   mid-history (persistent oscillation), or norms growing monotonically
//!   across two decades of n. Slow convergence therefore reports
//!   `inconclusive`, never `not_summable`.
//! - Abel/Borel summability takes the value at the most extreme abscissa
//!   whose residual chain (successive distances between grid values) is
//!   non-increasing and small; a nonconvergent series evaluation at any
//!   abscissa is divergence evidence and the verdict carries an explicit
//!   diagnostic instead of a fabricated limit.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::fuzzy::FuzzyNumber;
use crate::sequences::FuzzySequence;
use crate::transforms::{
    abel_eval, borel_eval, cesaro_means, euler_means, TransformError, TransformParams,
};

/// Summability method tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Ordinary,
    Cesaro,
    Euler(f64),
    Abel,
    Borel,
}

impl Method {
    pub fn label(&self) -> String {
        match self {
            Method::Ordinary => "ordinary".into(),
            Method::Cesaro => "cesaro".into(),
            Method::Euler(p) => format!("euler({p})"),
            Method::Abel => "abel".into(),
            Method::Borel => "borel".into(),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Summable,
    NotSummable,
    Inconclusive,
}

/// Outcome of a named numerical condition check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition {
    pub pass: bool,
    pub value: f64,
}

/// Per-method verdict with supporting numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummabilityReport {
    pub method: Method,
    pub verdict: Verdict,
    pub limit_estimate: Option<FuzzyNumber>,
    pub diagnostics: Vec<(String, f64)>,
    pub conditions: BTreeMap<String, Condition>,
}

/// Returns the last value when the maximum pairwise distance over the
/// trailing `window` values is below `tol`. Monotone in `tol` by
/// construction.
pub fn detect_limit(values: &[FuzzyNumber], tol: f64, window: usize) -> Option<FuzzyNumber> {
    if window < 2 || values.len() < window {
        return None;
    }
    let spread = window_spread(&values[values.len() - window..]);
    if spread < tol {
        values.last().cloned()
    } else {
        None
    }
}

fn window_spread(values: &[FuzzyNumber]) -> f64 {
    let mut spread = 0.0f64;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if let Ok(d) = values[i].distance(&values[j]) {
                spread = spread.max(d);
            }
        }
    }
    spread
}

/// A condition or ratio series with its trailing-window trend verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendSeries {
    /// Values for n = 1..=n_max.
    pub values: Vec<f64>,
    pub pass: bool,
    pub trailing_max: f64,
    pub threshold: f64,
}

const TREND_WINDOW: usize = 20;
const TREND_FRACTION: f64 = 0.05;

fn trend_series(values: Vec<f64>) -> TrendSeries {
    let running_max = values.iter().cloned().fold(0.0f64, f64::max);
    let tail = values.len().saturating_sub(TREND_WINDOW);
    let trailing_max = values[tail..].iter().cloned().fold(0.0f64, f64::max);
    let threshold = (TREND_FRACTION * running_max).max(1e-12);
    TrendSeries {
        pass: trailing_max < threshold,
        trailing_max,
        threshold,
        values,
    }
}

/// Ratio series D(uₙ, 0̄)/n for n = 1..=n_max: the growth bound every Cesàro
/// summable sequence satisfies.
pub fn growth_check_cesaro(
    seq: &FuzzySequence,
    n_max: usize,
    levels: usize,
) -> Result<TrendSeries, TransformError> {
    let mut values = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        values.push(seq.term(n as u64, levels)?.norm() / n as f64);
    }
    Ok(trend_series(values))
}

/// Ratio series D(uₙ, 0̄)/(2p+1)ⁿ for n = 1..=n_max: the growth bound every
/// Eₚ summable sequence satisfies.
pub fn growth_check_euler(
    seq: &FuzzySequence,
    p: f64,
    n_max: usize,
    levels: usize,
) -> Result<TrendSeries, TransformError> {
    if !(p > 0.0) {
        return Err(TransformError::InvalidInput(format!(
            "Euler order p must be positive, got {p}"
        )));
    }
    let base = 2.0 * p + 1.0;
    let mut values = Vec::with_capacity(n_max);
    let mut denom = 1.0f64;
    for n in 1..=n_max {
        denom *= base;
        values.push(seq.term(n as u64, levels)?.norm() / denom);
    }
    Ok(trend_series(values))
}

/// Which Tauberian condition flavour to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauberianVariant {
    /// Adjacent-term gaps: the sequence-convergence conditions.
    SequenceGap,
    /// Term norms: the series-convergence conditions.
    SeriesTerm,
}

/// Condition series n·D(uₙ, uₙ₋₁) (sequence variant) or n·D(uₙ, 0̄) (series
/// variant) for n = 1..=n_max.
pub fn tauberian_cesaro(
    seq: &FuzzySequence,
    n_max: usize,
    levels: usize,
    variant: TauberianVariant,
) -> Result<TrendSeries, TransformError> {
    tauberian_series(seq, n_max, levels, variant, |n| n as f64)
}

/// Condition series √n·D(uₙ₋₁, uₙ) (sequence variant) or √n·D(uₙ, 0̄)
/// (series variant) for n = 1..=n_max.
pub fn tauberian_euler(
    seq: &FuzzySequence,
    n_max: usize,
    levels: usize,
    variant: TauberianVariant,
) -> Result<TrendSeries, TransformError> {
    tauberian_series(seq, n_max, levels, variant, |n| (n as f64).sqrt())
}

fn tauberian_series(
    seq: &FuzzySequence,
    n_max: usize,
    levels: usize,
    variant: TauberianVariant,
    weight: impl Fn(usize) -> f64,
) -> Result<TrendSeries, TransformError> {
    let mut values = Vec::with_capacity(n_max);
    let mut prev = seq.term(0, levels)?;
    for n in 1..=n_max {
        let cur = seq.term(n as u64, levels)?;
        let d = match variant {
            TauberianVariant::SequenceGap => cur.distance(&prev)?,
            TauberianVariant::SeriesTerm => cur.norm(),
        };
        values.push(weight(n) * d);
        prev = cur;
    }
    Ok(trend_series(values))
}

/// Configuration for [`classify_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyConfig {
    pub params: TransformParams,
    /// Euler orders to classify, ascending.
    pub euler_orders: Vec<f64>,
    pub n_ordinary: usize,
    pub n_cesaro: usize,
    pub n_euler: usize,
    pub window: usize,
    /// Trailing-window tolerance for "converged".
    pub limit_tol: f64,
    /// Tolerance for limit agreement between methods.
    pub agreement_tol: f64,
    pub abel_grid: Vec<f64>,
    pub borel_grid: Vec<f64>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            params: TransformParams {
                // the trailing Abel abscissa 1−2⁻¹⁰ needs ~45k terms
                max_terms: 200_000,
                ..TransformParams::default()
            },
            euler_orders: vec![1.0, 2.0, 3.0],
            n_ordinary: 400,
            n_cesaro: 400,
            n_euler: 140,
            window: 20,
            limit_tol: 1e-6,
            agreement_tol: 1e-2,
            abel_grid: TransformParams::abel_default_grid(),
            borel_grid: TransformParams::borel_default_grid(),
        }
    }
}

impl ClassifyConfig {
    /// Adopts shared knobs from transform parameters: tolerances, caps, the
    /// Euler order (merged into the default order set) and any abscissae in
    /// `x_grid` (entries in (0,1) feed the Abel grid, entries ≥ 1 the Borel
    /// grid). The term cap is raised to cover the default extreme abscissae.
    pub fn from_params(params: &TransformParams) -> Self {
        let mut cfg = ClassifyConfig::default();
        cfg.params.p = params.p;
        cfg.params.trunc_tol = params.trunc_tol;
        cfg.params.divergence_threshold = params.divergence_threshold;
        cfg.params.max_terms = params.max_terms.max(cfg.params.max_terms);
        if !cfg.euler_orders.contains(&params.p) {
            cfg.euler_orders.push(params.p);
            cfg.euler_orders.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        let abel: Vec<f64> = params.x_grid.iter().copied().filter(|x| *x < 1.0).collect();
        let borel: Vec<f64> = params.x_grid.iter().copied().filter(|x| *x >= 1.0).collect();
        if !abel.is_empty() {
            cfg.abel_grid = abel;
        }
        if !borel.is_empty() {
            cfg.borel_grid = borel;
        }
        cfg
    }
}

/// Classification result: one report per method plus any detected
/// contradictions with the inclusion theorems (Cesàro ⊆ Abel, Eₚ ⊆ Eₛ ⊆
/// Borel). A violation signals a bug, never a property of the sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyOutcome {
    pub reports: Vec<SummabilityReport>,
    pub violations: Vec<String>,
}

/// Classifies with default settings derived from `params`.
pub fn classify(
    seq: &FuzzySequence,
    params: &TransformParams,
    levels: usize,
) -> ClassifyOutcome {
    classify_with(seq, &ClassifyConfig::from_params(params), levels)
}

/// Runs every method on the sequence and assembles verdicts, diagnostics and
/// inclusion-consistency flags. Numerical trouble becomes `inconclusive`
/// verdicts and diagnostics, never a panic or a silent wrong answer.
pub fn classify_with(
    seq: &FuzzySequence,
    cfg: &ClassifyConfig,
    levels: usize,
) -> ClassifyOutcome {
    let mut reports = Vec::new();

    // ordinary convergence of the raw terms
    let (raw, raw_err) = collect_terms(seq, cfg.n_ordinary, levels);
    let mut ordinary = sequence_report(Method::Ordinary, &raw, raw_err, cfg);
    attach_tauberian_conditions(seq, cfg, levels, &mut ordinary);
    reports.push(ordinary);

    // Cesàro
    let (means, mean_err) = collect_transformed(seq, cfg.n_cesaro, levels, cesaro_means);
    let mut cesaro = sequence_report(Method::Cesaro, &means, mean_err, cfg);
    if let Ok(g) = growth_check_cesaro(seq, cfg.n_cesaro.min(raw_len_cap(&raw)), levels) {
        cesaro.conditions.insert(
            "growth_o_n".into(),
            Condition {
                pass: g.pass,
                value: g.trailing_max,
            },
        );
    }
    reports.push(cesaro);

    // Euler orders
    for &p in &cfg.euler_orders {
        let (means, err) =
            collect_transformed(seq, cfg.n_euler, levels, |s, n, m| euler_means(s, p, n, m));
        let mut rep = sequence_report(Method::Euler(p), &means, err, cfg);
        if let Ok(g) = growth_check_euler(seq, p, cfg.n_euler.min(raw_len_cap(&raw)), levels) {
            rep.conditions.insert(
                format!("growth_o_(2p+1)^n_p={p}"),
                Condition {
                    pass: g.pass,
                    value: g.trailing_max,
                },
            );
        }
        reports.push(rep);
    }

    // Abel and Borel
    reports.push(power_report(Method::Abel, seq, &cfg.abel_grid, cfg, levels));
    reports.push(power_report(Method::Borel, seq, &cfg.borel_grid, cfg, levels));

    let violations = consistency_violations(&reports, cfg);
    ClassifyOutcome {
        reports,
        violations,
    }
}

fn raw_len_cap(raw: &[FuzzyNumber]) -> usize {
    raw.len().saturating_sub(1).max(1)
}

fn collect_terms(
    seq: &FuzzySequence,
    n_max: usize,
    levels: usize,
) -> (Vec<FuzzyNumber>, Option<String>) {
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        match seq.term(n as u64, levels) {
            Ok(u) => out.push(u),
            Err(e) => return (out, Some(format!("term evaluation stopped at n = {n}: {e}"))),
        }
    }
    (out, None)
}

fn collect_transformed(
    seq: &FuzzySequence,
    n_max: usize,
    levels: usize,
    f: impl Fn(&FuzzySequence, usize, usize) -> Result<Vec<FuzzyNumber>, TransformError>,
) -> (Vec<FuzzyNumber>, Option<String>) {
    match f(seq, n_max, levels) {
        Ok(v) => (v, None),
        Err(e) => {
            // retry on a shorter range so a late f64 range failure still
            // leaves usable evidence
            for cap in [170usize, 80, 40] {
                if cap < n_max {
                    if let Ok(v) = f(seq, cap, levels) {
                        return (v, Some(format!("transform truncated to n <= {cap}: {e}")));
                    }
                }
            }
            (Vec::new(), Some(e.to_string()))
        }
    }
}

fn sequence_report(
    method: Method,
    values: &[FuzzyNumber],
    truncation: Option<String>,
    cfg: &ClassifyConfig,
) -> SummabilityReport {
    let mut diagnostics: Vec<(String, f64)> = Vec::new();
    if let Some(note) = &truncation {
        diagnostics.push((format!("truncated: {note}"), 1.0));
    }
    if values.len() < cfg.window.max(2) + 2 {
        diagnostics.push(("insufficient_values".into(), values.len() as f64));
        return SummabilityReport {
            method,
            verdict: Verdict::Inconclusive,
            limit_estimate: None,
            diagnostics,
            conditions: BTreeMap::new(),
        };
    }
    let n = values.len();
    let trailing = window_spread(&values[n - cfg.window..]);
    diagnostics.push(("window_spread".into(), trailing));
    let mid_end = n / 2;
    let mid = if mid_end >= cfg.window {
        let s = window_spread(&values[mid_end - cfg.window..mid_end]);
        diagnostics.push(("window_spread_mid".into(), s));
        Some(s)
    } else {
        None
    };

    if trailing < cfg.limit_tol {
        return SummabilityReport {
            method,
            verdict: Verdict::Summable,
            limit_estimate: values.last().cloned(),
            diagnostics,
            conditions: BTreeMap::new(),
        };
    }

    // positive divergence evidence
    let oscillating = trailing > 10.0 * cfg.limit_tol
        && mid.map(|m| trailing >= 0.9 * m).unwrap_or(false);
    let growing = norm_growth_evidence(values, cfg.limit_tol, &mut diagnostics);
    let verdict = if oscillating || growing {
        Verdict::NotSummable
    } else {
        Verdict::Inconclusive
    };
    SummabilityReport {
        method,
        verdict,
        limit_estimate: None,
        diagnostics,
        conditions: BTreeMap::new(),
    }
}

// Monotone norm growth across two decades of n.
fn norm_growth_evidence(
    values: &[FuzzyNumber],
    tol: f64,
    diagnostics: &mut Vec<(String, f64)>,
) -> bool {
    let n = values.len() - 1;
    if n < 100 {
        return false;
    }
    let (a, b, c) = (
        values[n].norm(),
        values[n / 10].norm(),
        values[n / 100].norm(),
    );
    diagnostics.push((format!("norm@n={}", n / 100), c));
    diagnostics.push((format!("norm@n={}", n / 10), b));
    diagnostics.push((format!("norm@n={n}"), a));
    a > b && b > c && a >= 10.0 * c.max(tol)
}

fn power_report(
    method: Method,
    seq: &FuzzySequence,
    grid: &[f64],
    cfg: &ClassifyConfig,
    levels: usize,
) -> SummabilityReport {
    let mut diagnostics: Vec<(String, f64)> = Vec::new();
    let mut points: Vec<(f64, FuzzyNumber)> = Vec::new();
    let mut nonconvergent = 0usize;
    let mut errors = 0usize;
    for &x in grid {
        let outcome = match method {
            Method::Abel => abel_eval(seq, x, &cfg.params, levels),
            Method::Borel => borel_eval(seq, x, &cfg.params, levels),
            _ => unreachable!("power_report only handles Abel/Borel"),
        };
        match outcome {
            Ok((value, report)) => {
                diagnostics.push((format!("terms@x={x}"), report.terms_used as f64));
                if report.exact_path {
                    diagnostics.push((format!("exact_path@x={x}"), 1.0));
                }
                if report.nonconvergent(cfg.params.trunc_tol) {
                    diagnostics.push((format!("nonconvergent@x={x}"), report.last_term_norm));
                    nonconvergent += 1;
                } else {
                    points.push((x, value));
                }
            }
            Err(e) => {
                diagnostics.push((format!("error@x={x}: {e}"), 1.0));
                errors += 1;
            }
        }
    }

    if nonconvergent > 0 {
        // the series must converge at every abscissa; a flagged one is
        // divergence evidence and no limit may be reported
        return SummabilityReport {
            method,
            verdict: Verdict::NotSummable,
            limit_estimate: None,
            diagnostics,
            conditions: BTreeMap::new(),
        };
    }
    if points.len() < 2 {
        diagnostics.push(("insufficient_points".into(), points.len() as f64));
        let _ = errors;
        return SummabilityReport {
            method,
            verdict: Verdict::Inconclusive,
            limit_estimate: None,
            diagnostics,
            conditions: BTreeMap::new(),
        };
    }

    let mut residuals = Vec::with_capacity(points.len() - 1);
    for pair in points.windows(2) {
        let r = pair[0].1.distance(&pair[1].1).unwrap_or(f64::INFINITY);
        diagnostics.push((format!("residual@x={}", pair[1].0), r));
        residuals.push(r);
    }
    // residuals at the noise floor count as converged
    let floor = 0.1 * cfg.limit_tol;
    let non_increasing = residuals
        .windows(2)
        .all(|w| w[1] <= (w[0] * (1.0 + 1e-9)).max(floor));
    let last = *residuals.last().unwrap();
    let verdict = if non_increasing && last <= cfg.agreement_tol {
        Verdict::Summable
    } else {
        Verdict::Inconclusive
    };
    SummabilityReport {
        method,
        verdict,
        limit_estimate: if verdict == Verdict::Summable {
            points.last().map(|(_, v)| v.clone())
        } else {
            None
        },
        diagnostics,
        conditions: BTreeMap::new(),
    }
}

fn attach_tauberian_conditions(
    seq: &FuzzySequence,
    cfg: &ClassifyConfig,
    levels: usize,
    report: &mut SummabilityReport,
) {
    let n = cfg.n_ordinary;
    if let Ok(t) = tauberian_cesaro(seq, n, levels, TauberianVariant::SequenceGap) {
        report.conditions.insert(
            "tauberian_cesaro_nD(u_n,u_n-1)".into(),
            Condition {
                pass: t.pass,
                value: t.trailing_max,
            },
        );
    }
    if let Ok(t) = tauberian_euler(seq, n, levels, TauberianVariant::SequenceGap) {
        report.conditions.insert(
            "tauberian_euler_sqrt(n)D(u_n-1,u_n)".into(),
            Condition {
                pass: t.pass,
                value: t.trailing_max,
            },
        );
    }
}

fn consistency_violations(reports: &[SummabilityReport], cfg: &ClassifyConfig) -> Vec<String> {
    let mut violations = Vec::new();
    let find = |m: &Method| reports.iter().find(|r| r.method == *m);
    let limits_disagree = |a: &SummabilityReport, b: &SummabilityReport| -> Option<f64> {
        match (&a.limit_estimate, &b.limit_estimate) {
            (Some(u), Some(v)) => match u.distance(v) {
                Ok(d) if d >= cfg.agreement_tol => Some(d),
                _ => None,
            },
            _ => None,
        }
    };

    // Cesàro summable ⇒ Abel summable to the same limit
    if let (Some(ces), Some(abel)) = (find(&Method::Cesaro), find(&Method::Abel)) {
        if ces.verdict == Verdict::Summable {
            if abel.verdict == Verdict::NotSummable {
                violations
                    .push("cesaro summable but abel not_summable (Cesàro ⊆ Abel broken)".into());
            }
            if let Some(d) = limits_disagree(ces, abel) {
                violations.push(format!("cesaro and abel limits differ by {d:.3e}"));
            }
        }
    }

    // Eₚ summable ⇒ Eₛ (s > p) and Borel summable to the same limit
    let eulers: Vec<(f64, &SummabilityReport)> = reports
        .iter()
        .filter_map(|r| match r.method {
            Method::Euler(p) => Some((p, r)),
            _ => None,
        })
        .collect();
    let borel = find(&Method::Borel);
    for (p, rp) in &eulers {
        if rp.verdict != Verdict::Summable {
            continue;
        }
        for (s, rs) in &eulers {
            if s > p {
                if rs.verdict == Verdict::NotSummable {
                    violations.push(format!(
                        "euler({p}) summable but euler({s}) not_summable (Eₚ ⊆ Eₛ broken)"
                    ));
                }
                if let Some(d) = limits_disagree(rp, rs) {
                    violations.push(format!("euler({p}) and euler({s}) limits differ by {d:.3e}"));
                }
            }
        }
        if let Some(b) = borel {
            if b.verdict == Verdict::NotSummable {
                violations.push(format!(
                    "euler({p}) summable but borel not_summable (Eₚ ⊆ Borel broken)"
                ));
            }
            if let Some(d) = limits_disagree(rp, b) {
                violations.push(format!("euler({p}) and borel limits differ by {d:.3e}"));
            }
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences;
    use std::collections::BTreeMap as Map;
    use std::sync::Arc;

    fn tri(levels: usize) -> FuzzyNumber {
        FuzzyNumber::triangular(0.0, 1.0, 2.0, levels).unwrap()
    }

    #[test]
    fn detect_limit_basics() {
        let m = 8;
        let constant: Vec<FuzzyNumber> = (0..30).map(|_| tri(m)).collect();
        assert_eq!(detect_limit(&constant, 1e-9, 20), Some(tri(m)));
        // alternating ±1 crisp values: non-Cauchy window
        let alternating: Vec<FuzzyNumber> = (0..30)
            .map(|n| FuzzyNumber::crisp(if n % 2 == 0 { 1.0 } else { -1.0 }, m).unwrap())
            .collect();
        assert_eq!(detect_limit(&alternating, 1e-2, 20), None);
        // too short / degenerate window
        assert_eq!(detect_limit(&constant[..10], 1e-9, 20), None);
        assert_eq!(detect_limit(&constant, 1e-9, 1), None);
    }

    #[test]
    fn detect_limit_on_witness_means_with_fast_schedule() {
        // λₙ = n² gives Cesàro-mean offsets 1/(nₖ+1), inside tol = 1e-2 by
        // n = 400 (the default λₙ = n schedule decays like 1/√n and needs
        // far larger n for this tolerance).
        let m = 16;
        let seq = sequences::cesaro_bound_witness(2, 2, 2.0);
        let means = cesaro_means(&seq, 400, m).unwrap();
        let found = detect_limit(&means, 1e-2, 20).expect("window should be Cauchy");
        assert!(found.distance(&tri(m)).unwrap() < 1e-2);
    }

    #[test]
    fn growth_checks_on_known_sequences() {
        let m = 16;
        let constant = sequences::constant_triangular(0.0, 1.0, 2.0);
        assert!(growth_check_cesaro(&constant, 400, m).unwrap().pass);
        // witness: ratios ≈ 1/√n, still passing at N = 400
        let witness = sequences::cesaro_bound_witness(2, 2, 1.0);
        let g = growth_check_cesaro(&witness, 400, m).unwrap();
        assert!(g.pass);
        // sharpness: (λ_n/n)·D(u_n, 0̄) = 2 + √n_k grows without bound
        let u100 = witness.term(100, m).unwrap();
        assert!((u100.norm() / 100.0 - 0.12).abs() < 1e-9);
        assert!((100.0 / 100.0) * u100.norm() > 10.0);
        // es_not_ep under its summable order: D/7ⁿ → 0
        let es = sequences::es_not_ep(1.0, 3.0).unwrap();
        assert!(growth_check_euler(&es, 3.0, 60, m).unwrap().pass);
        // borel_not_ep: n!/(2p+1)ⁿ explodes for any p
        let bo = sequences::borel_not_ep();
        let g = growth_check_euler(&bo, 1.0, 150, m).unwrap();
        assert!(!g.pass);
        assert!(g.values.last().unwrap() > &1e50);
    }

    #[test]
    fn tauberian_conditions() {
        let m = 16;
        let constant = sequences::constant_triangular(0.0, 1.0, 2.0);
        let t = tauberian_cesaro(&constant, 200, m, TauberianVariant::SequenceGap).unwrap();
        assert!(t.pass);
        assert!(t.values.iter().all(|v| *v == 0.0));

        // uₙ = w/n² (u₀ = w): n·D(uₙ, uₙ₋₁) → 0
        let w = tri(m);
        let seq = FuzzySequence::new(
            "inverse_square",
            Map::new(),
            Arc::new(move |n, mm| {
                let c = if n == 0 { 1.0 } else { 1.0 / (n as f64 * n as f64) };
                Ok(tri(mm).scalar_mul(c).unwrap())
            }),
        );
        let _ = w;
        let t = tauberian_cesaro(&seq, 400, m, TauberianVariant::SequenceGap).unwrap();
        assert!(t.pass);

        // abel_not_cesaro: n·D(uₙ, uₙ₋₁) ≈ n(2n−1) → ∞
        let alt = sequences::abel_not_cesaro();
        let t = tauberian_cesaro(&alt, 200, m, TauberianVariant::SequenceGap).unwrap();
        assert!(!t.pass);
        assert!((t.values[9] - 10.0 * (10.0 + 9.0)).abs() < 0.51); // ≈ n(2n−1)

        // uₙ = n^(−3/4)·w: √n·D(uₙ₋₁, uₙ) → 0
        let seq = FuzzySequence::new(
            "slow_decay",
            Map::new(),
            Arc::new(move |n, mm| {
                let c = if n == 0 { 1.0 } else { (n as f64).powf(-0.75) };
                Ok(tri(mm).scalar_mul(c).unwrap())
            }),
        );
        let t = tauberian_euler(&seq, 3000, m, TauberianVariant::SequenceGap).unwrap();
        assert!(t.pass);
        // es_not_ep: √n·D(uₙ₋₁, uₙ) grows like √n·5ⁿ
        let es = sequences::es_not_ep(1.0, 3.0).unwrap();
        let t = tauberian_euler(&es, 60, m, TauberianVariant::SequenceGap).unwrap();
        assert!(!t.pass);
    }

    #[test]
    fn classify_constant_everything_summable() {
        let m = 16;
        let seq = sequences::constant_triangular(0.0, 1.0, 2.0);
        let mut cfg = ClassifyConfig::default();
        // constant sequences converge instantly; small ranges keep it quick
        cfg.n_ordinary = 60;
        cfg.n_cesaro = 60;
        cfg.n_euler = 60;
        let out = classify_with(&seq, &cfg, m);
        assert!(out.violations.is_empty());
        for rep in &out.reports {
            assert_eq!(rep.verdict, Verdict::Summable, "{}", rep.method.label());
            let lim = rep.limit_estimate.as_ref().expect("limit present");
            assert!(lim.distance(&tri(m)).unwrap() < 1e-2);
        }
    }

    #[test]
    fn classify_es_not_ep_profile() {
        let m = 32;
        let seq = sequences::es_not_ep(1.0, 3.0).unwrap();
        let mut cfg = ClassifyConfig::default();
        cfg.borel_grid = vec![10.0, 20.0, 40.0];
        let out = classify_with(&seq, &cfg, m);
        let by = |label: &str| {
            out.reports
                .iter()
                .find(|r| r.method.label() == label)
                .unwrap()
        };
        assert_eq!(by("euler(1)").verdict, Verdict::NotSummable);
        assert_eq!(by("euler(3)").verdict, Verdict::Summable);
        assert_eq!(by("borel").verdict, Verdict::Summable);
        let nu = seq.profile().limit.unwrap()(m);
        assert!(by("euler(3)")
            .limit_estimate
            .as_ref()
            .unwrap()
            .distance(&nu)
            .unwrap()
            < 1e-2);
        assert!(by("borel")
            .limit_estimate
            .as_ref()
            .unwrap()
            .distance(&nu)
            .unwrap()
            < 1e-2);
        assert!(out.violations.is_empty(), "{:?}", out.violations);
    }

    #[test]
    fn verdict_requires_positive_evidence() {
        // slowly converging but not oscillating: inconclusive, not
        // not_summable (witness means decay like 1/√n)
        let m = 8;
        let seq = sequences::cesaro_bound_witness(2, 2, 1.0);
        let mut cfg = ClassifyConfig::default();
        cfg.n_cesaro = 400;
        let out = classify_with(&seq, &cfg, m);
        let ces = out
            .reports
            .iter()
            .find(|r| r.method == Method::Cesaro)
            .unwrap();
        assert_eq!(ces.verdict, Verdict::Inconclusive);
    }
}
