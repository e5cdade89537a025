//! Summability transforms and series operations: partial sums, Cesàro means,
//! Euler means, Abel and Borel evaluations, Cauchy products and weighted
//! tail sums.
//!
//! # Numerical strategy
//!
//! All weights here are nonnegative, so every transform is a nonnegatively
//! weighted sum of fuzzy numbers and works endpoint-wise on the α-grid.
//! Accumulation is f64 left-to-right in increasing n. Two refinements keep
//! the desk-scale numerics honest:
//!
//! - **Exact escalation.** Euler means and Borel sums of exponentially
//!   growing sequences cancel almost completely (the Borel endpoint series of
//!   `es_not_ep` at x = 40 has terms near 1e68 and a sum near 1e-9), far past
//!   what f64 can resolve. After the f64 pass, a running roundoff bound is
//!   compared against the accuracy budget; when it fails and the sequence
//!   exposes exact rational α-cuts, the sum is recomputed over exact terms
//!   in 256-fractional-bit fixed point (per-term error 2⁻²⁵⁷; e⁻ˣ, being
//!   irrational, is folded in at the final conversion to f64).
//! - **Divergence guard.** Truncation by small terms never fires on a
//!   divergent series, and factorial-growth sequences leave the f64 range
//!   long before any term cap. Evaluation therefore stops early once the
//!   weighted term norms exceed `divergence_threshold` while their growth
//!   ratios show no decay (for Borel, ratio·(n+1) must also be rising, since
//!   Poisson-weighted terms of perfectly summable sequences transiently grow
//!   through any fixed threshold). Such stops report `cap_hit` with the last
//!   term norm as the nonconvergence signal.

use num_bigint::BigInt;
use thiserror::Error;

use crate::bigratio::{self, ExactCuts};
use crate::fuzzy::{FuzzyError, FuzzyNumber};
use crate::sequences::{FuzzySequence, SequenceError};

const EPS: f64 = f64::EPSILON;
// Absolute accuracy goal of the f64 path, relative to max(1, result norm);
// exceeding it triggers exact escalation where available.
const ACCURACY_GOAL: f64 = 1e-12;
// Window length for divergence-trend detection.
const TREND_WINDOW: usize = 8;

/// Errors from transform evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

/// Parameters for series-type transforms.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformParams {
    /// Euler order p > 0.
    pub p: f64,
    /// Truncation threshold for weighted term norms.
    pub trunc_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
    /// Evaluation abscissae (strictly increasing; in (0,1) for Abel,
    /// positive for Borel).
    pub x_grid: Vec<f64>,
    /// Weighted term norms above this, with non-decaying growth, stop the
    /// evaluation as divergent.
    pub divergence_threshold: f64,
}

impl Default for TransformParams {
    fn default() -> Self {
        TransformParams {
            p: 1.0,
            trunc_tol: 1e-12,
            max_terms: 10_000,
            x_grid: Vec::new(),
            divergence_threshold: 1e12,
        }
    }
}

impl TransformParams {
    /// Default Abel abscissae 1 − 2⁻ᵏ for k = 1..=10.
    pub fn abel_default_grid() -> Vec<f64> {
        (1..=10).map(|k| 1.0 - 0.5f64.powi(k)).collect()
    }

    /// Default Borel abscissae 5·2ᵏ for k = 0..=4.
    pub fn borel_default_grid() -> Vec<f64> {
        (0..=4).map(|k| 5.0 * 2.0f64.powi(k)).collect()
    }

    pub fn validate(&self) -> Result<(), TransformError> {
        if !(self.p > 0.0) {
            return Err(TransformError::InvalidInput(format!(
                "Euler order p must be positive, got {}",
                self.p
            )));
        }
        if !(self.trunc_tol > 0.0) {
            return Err(TransformError::InvalidInput(format!(
                "trunc_tol must be positive, got {}",
                self.trunc_tol
            )));
        }
        if self.max_terms == 0 {
            return Err(TransformError::InvalidInput("max_terms must be >= 1".into()));
        }
        if self.x_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TransformError::InvalidInput(
                "x_grid must be strictly increasing".into(),
            ));
        }
        Ok(())
    }
}

/// How a series evaluation terminated.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TailBoundReport {
    /// Terms actually summed (≤ max_terms).
    pub terms_used: usize,
    /// Weighted norm of the last term examined.
    pub last_term_norm: f64,
    /// True when evaluation stopped without meeting the truncation rule
    /// (term cap or divergence guard).
    pub cap_hit: bool,
    /// True when the sum was recomputed on the exact rational path.
    pub exact_path: bool,
    /// A posteriori bound on f64 accumulation roundoff (0 for exact sums up
    /// to the final conversion).
    pub roundoff_bound: f64,
}

impl TailBoundReport {
    /// Nonconvergence signal: capped with the last term still above
    /// tolerance, so the series may diverge at this abscissa.
    pub fn nonconvergent(&self, tol: f64) -> bool {
        self.cap_hit && !(self.last_term_norm < tol)
    }
}

// Endpoint-space accumulator for nonnegatively weighted sums.
struct CutAccumulator {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl CutAccumulator {
    fn new(levels: usize) -> Self {
        CutAccumulator {
            lo: vec![0.0; levels + 1],
            hi: vec![0.0; levels + 1],
        }
    }

    fn add_scaled(&mut self, w: f64, u: &FuzzyNumber) {
        let (ulo, uhi) = (u.lo(), u.hi());
        for j in 0..self.lo.len() {
            self.lo[j] += w * ulo[j];
            self.hi[j] += w * uhi[j];
        }
    }

    fn finish(self, scale: f64) -> Result<FuzzyNumber, FuzzyError> {
        let lo = self.lo.iter().map(|v| scale * v).collect();
        let hi = self.hi.iter().map(|v| scale * v).collect();
        FuzzyNumber::from_alpha_cuts(lo, hi)
    }
}

/// Partial sums sₙ = u₀ + … + uₙ for n = 0..=n_max.
pub fn partial_sums(
    seq: &FuzzySequence,
    n_max: usize,
    levels: usize,
) -> Result<Vec<FuzzyNumber>, TransformError> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = seq.term(0, levels)?;
    out.push(acc.clone());
    for n in 1..=n_max {
        acc = acc.add(&seq.term(n as u64, levels)?)?;
        out.push(acc.clone());
    }
    Ok(out)
}

/// Cesàro means σₙ = sₙ / (n + 1) for n = 0..=n_max.
pub fn cesaro_means(
    seq: &FuzzySequence,
    n_max: usize,
    levels: usize,
) -> Result<Vec<FuzzyNumber>, TransformError> {
    let sums = partial_sums(seq, n_max, levels)?;
    sums.into_iter()
        .enumerate()
        .map(|(n, s)| s.scalar_mul(1.0 / (n as f64 + 1.0)).map_err(Into::into))
        .collect()
}

/// Euler means t^p_n = Σ_{k=0}^n C(n,k) pⁿ⁻ᵏ/(p+1)ⁿ · uₖ for n = 0..=n_max.
///
/// Weights come from the multiplicative recurrence
/// w_{n,0} = (p/(p+1))ⁿ, w_{n,k+1} = w_{n,k}·(n−k)/((k+1)p), never from
/// factorials. Rows whose f64 roundoff bound exceeds the accuracy goal are
/// recomputed exactly when the sequence supports it.
pub fn euler_means(
    seq: &FuzzySequence,
    p: f64,
    n_max: usize,
    levels: usize,
) -> Result<Vec<FuzzyNumber>, TransformError> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(TransformError::InvalidInput(format!(
            "Euler order p must be positive, got {p}"
        )));
    }
    // Terms are shared by all rows; a failed f64 term (endpoints outside the
    // f64 range) sends every row from that index on to the exact path.
    let mut terms: Vec<FuzzyNumber> = Vec::with_capacity(n_max + 1);
    let mut first_bad_term = n_max + 1;
    let mut term_error: Option<SequenceError> = None;
    for k in 0..=n_max {
        match seq.term(k as u64, levels) {
            Ok(u) => terms.push(u),
            Err(e) => {
                first_bad_term = k;
                term_error = Some(e);
                break;
            }
        }
    }
    let norms: Vec<f64> = terms.iter().map(|u| u.norm()).collect();

    let mut out = Vec::with_capacity(n_max + 1);
    let mut exact_terms: Vec<Option<ExactCuts>> = Vec::new();
    for n in 0..=n_max {
        if n < first_bad_term {
            let mut acc = CutAccumulator::new(levels);
            let mut w = (p / (p + 1.0)).powi(n as i32);
            let mut condition = 0.0f64;
            for k in 0..=n {
                acc.add_scaled(w, &terms[k]);
                condition += w * norms[k];
                if k < n {
                    w *= (n - k) as f64 / ((k + 1) as f64 * p);
                }
            }
            let value = acc.finish(1.0)?;
            let bound = EPS * 2.0 * (n + 2) as f64 * condition;
            if bound <= 0.25 * ACCURACY_GOAL * value.norm().max(1.0) || !seq.has_exact() {
                out.push(value);
                continue;
            }
        } else if !seq.has_exact() {
            return Err(term_error.expect("term failure recorded").into());
        }
        out.push(euler_mean_exact(seq, p, n, levels, &mut exact_terms)?);
    }
    Ok(out)
}

fn fetch_exact_term<'a>(
    seq: &FuzzySequence,
    cache: &'a mut Vec<Option<ExactCuts>>,
    k: usize,
    levels: usize,
) -> Result<&'a ExactCuts, TransformError> {
    while cache.len() <= k {
        let n = cache.len() as u64;
        cache.push(seq.exact_term(n, levels)?);
    }
    cache[k].as_ref().ok_or_else(|| {
        TransformError::InvalidInput(format!(
            "exact evaluation unavailable for term {k} of `{}`",
            seq.name()
        ))
    })
}

// Fractional bits of the exact-path accumulators: per-term rounding error
// 2⁻²⁵⁷, invisible next to every tolerance in play.
const EXACT_ACC_BITS: u32 = 256;

fn euler_mean_exact(
    seq: &FuzzySequence,
    p: f64,
    n: usize,
    levels: usize,
    cache: &mut Vec<Option<ExactCuts>>,
) -> Result<FuzzyNumber, TransformError> {
    let p_r = bigratio::from_f64(p).expect("finite order");
    // w_{n,0} = (p/(p+1))ⁿ as a raw fraction pₐⁿ/(pₐ+p_b)ⁿ
    let pa = p_r.numer().clone();
    let pb = p_r.denom().clone();
    let mut w_num = pa.clone().pow(n as u32);
    let mut w_den = (&pa + &pb).pow(n as u32);
    let mut acc = bigratio::FixedCutAccumulator::new(levels, EXACT_ACC_BITS);
    for k in 0..=n {
        let cuts = fetch_exact_term(seq, cache, k, levels)?;
        acc.add_scaled(&w_num, &w_den, cuts);
        if k < n {
            // ×(n−k)/((k+1)p) = ×(n−k)·p_b / ((k+1)·pₐ)
            w_num *= BigInt::from((n - k) as u64) * &pb;
            w_den *= BigInt::from((k + 1) as u64) * &pa;
        }
    }
    acc.to_fuzzy(1.0).map_err(Into::into)
}

/// The composed order of the q-th-order Euler transform applied to p-th-order
/// Euler means: p + q + pq.
pub fn euler_composed_order(p: f64, q: f64) -> Result<f64, TransformError> {
    if !(p > 0.0 && q > 0.0) {
        return Err(TransformError::InvalidInput(format!(
            "Euler orders must be positive, got p = {p}, q = {q}"
        )));
    }
    Ok(p + q + p * q)
}

// Divergence-trend state shared by the Abel and Borel loops.
struct TrendGuard {
    ratios: Vec<(usize, f64)>, // (n, term_norm ratio at n)
    prev_norm: f64,
}

impl TrendGuard {
    fn new() -> Self {
        TrendGuard {
            ratios: Vec::new(),
            prev_norm: f64::NAN,
        }
    }

    fn push(&mut self, n: usize, norm: f64) {
        if self.prev_norm > 0.0 {
            let r = norm / self.prev_norm;
            self.ratios.push((n, r));
            if self.ratios.len() > TREND_WINDOW {
                self.ratios.remove(0);
            }
        }
        self.prev_norm = norm;
    }

    /// Sustained growth: every recent ratio ≥ 1.
    fn growing(&self) -> bool {
        self.ratios.len() == TREND_WINDOW && self.ratios.iter().all(|&(_, r)| r >= 1.0)
    }

    /// Super-geometric growth: ratio·(n+1) rising across the window. Poisson
    /// weights divide geometric term ratios by (n+1), so a rising product
    /// means the underlying sequence outgrows every xⁿ/n! damping.
    fn super_geometric(&self) -> bool {
        if self.ratios.len() < TREND_WINDOW {
            return false;
        }
        let (n0, r0) = self.ratios[0];
        let (n1, r1) = self.ratios[self.ratios.len() - 1];
        r1 * (n1 as f64 + 1.0) > 1.05 * r0 * (n0 as f64 + 1.0)
    }
}

/// Abel evaluation (1−x)·Σₙ xⁿ·uₙ at one abscissa 0 < x < 1.
///
/// Truncates at the first n where D(uₙ, 0̄)·xⁿ < trunc_tol·(1−x) holds three
/// times in a row, at max_terms, or at the divergence guard.
pub fn abel_eval(
    seq: &FuzzySequence,
    x: f64,
    params: &TransformParams,
    levels: usize,
) -> Result<(FuzzyNumber, TailBoundReport), TransformError> {
    params.validate()?;
    if !(x > 0.0 && x < 1.0) {
        return Err(TransformError::InvalidInput(format!(
            "Abel abscissa must lie in (0,1), got {x}"
        )));
    }
    let threshold = params.trunc_tol * (1.0 - x);
    let mut acc = CutAccumulator::new(levels);
    let mut w = 1.0f64;
    let mut condition = 0.0f64;
    let mut confirmations = 0u32;
    let mut guard = TrendGuard::new();
    let mut terms_used = 0usize;
    let mut last_norm = 0.0f64;
    let mut cap_hit = true;
    while terms_used < params.max_terms {
        let u = seq.term(terms_used as u64, levels)?;
        let norm = w * u.norm();
        acc.add_scaled(w, &u);
        condition += norm;
        guard.push(terms_used, norm);
        terms_used += 1;
        last_norm = norm;
        w *= x;
        if norm < threshold {
            confirmations += 1;
            if confirmations >= 3 {
                cap_hit = false;
                break;
            }
        } else {
            confirmations = 0;
        }
        if norm > params.divergence_threshold && guard.growing() {
            break; // divergent: sustained growth past the threshold
        }
    }
    let value = acc.finish(1.0 - x)?;
    let report = TailBoundReport {
        terms_used,
        last_term_norm: last_norm,
        cap_hit,
        exact_path: false,
        roundoff_bound: EPS * 2.0 * (terms_used + 2) as f64 * condition * (1.0 - x),
    };
    Ok((value, report))
}

/// Borel evaluation e⁻ˣ·Σₙ (xⁿ/n!)·uₙ at one abscissa x > 0.
///
/// Poisson weights build multiplicatively from π₀ = e⁻ˣ so every weight stays
/// in [0,1]; truncation (πₙ·D(uₙ,0̄) < trunc_tol, three confirmations) is
/// armed only once n ≥ x, past the weight mode. Ill-conditioned but
/// convergent sums are recomputed exactly when the sequence supports it.
pub fn borel_eval(
    seq: &FuzzySequence,
    x: f64,
    params: &TransformParams,
    levels: usize,
) -> Result<(FuzzyNumber, TailBoundReport), TransformError> {
    params.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(TransformError::InvalidInput(format!(
            "Borel abscissa must be positive, got {x}"
        )));
    }
    let mut acc = CutAccumulator::new(levels);
    let mut w = (-x).exp();
    let mut condition = 0.0f64;
    let mut confirmations = 0u32;
    let mut guard = TrendGuard::new();
    let mut terms_used = 0usize;
    let mut last_norm = 0.0f64;
    let mut cap_hit = true;
    let mut term_failure: Option<SequenceError> = None;
    let mut diverged = false;
    while terms_used < params.max_terms {
        let u = match seq.term(terms_used as u64, levels) {
            Ok(u) => u,
            Err(e) => {
                term_failure = Some(e);
                break;
            }
        };
        let norm = w * u.norm();
        acc.add_scaled(w, &u);
        condition += norm;
        guard.push(terms_used, norm);
        terms_used += 1;
        last_norm = norm;
        w *= x / terms_used as f64;
        if terms_used as f64 >= x && norm < params.trunc_tol {
            confirmations += 1;
            if confirmations >= 3 {
                cap_hit = false;
                break;
            }
        } else {
            confirmations = 0;
        }
        if norm > params.divergence_threshold && guard.growing() && guard.super_geometric() {
            diverged = true;
            break;
        }
    }

    if let Some(err) = term_failure {
        // Sequence left the f64 range mid-sum. Growing trend means the
        // series is divergent anyway; otherwise the exact path can finish.
        if guard.growing() && guard.super_geometric() {
            diverged = true;
        } else if seq.has_exact() {
            return borel_eval_exact(seq, x, params, levels);
        } else {
            return Err(err.into());
        }
    }

    let value = acc.finish(1.0)?;
    let roundoff_bound = EPS * 2.0 * (terms_used + 2) as f64 * condition;
    if !diverged
        && cap_hit == false
        && roundoff_bound > 0.25 * ACCURACY_GOAL * value.norm().max(1.0)
        && seq.has_exact()
    {
        return borel_eval_exact(seq, x, params, levels);
    }
    let report = TailBoundReport {
        terms_used,
        last_term_norm: last_norm,
        cap_hit,
        exact_path: false,
        roundoff_bound,
    };
    Ok((value, report))
}

fn borel_eval_exact(
    seq: &FuzzySequence,
    x: f64,
    params: &TransformParams,
    levels: usize,
) -> Result<(FuzzyNumber, TailBoundReport), TransformError> {
    let x_r = bigratio::from_f64(x).expect("finite abscissa");
    let (xa, xb) = (x_r.numer().clone(), x_r.denom().clone());
    // Unscaled raw weights xⁿ/n!; e⁻ˣ enters at the final conversion.
    // Stopping compares log2 magnitudes so that astronomically large
    // intermediates never touch f64.
    let mut w_num = BigInt::from(1u8);
    let mut w_den = BigInt::from(1u8);
    let mut acc = bigratio::FixedCutAccumulator::new(levels, EXACT_ACC_BITS);
    let mut log2_pi = -x * std::f64::consts::LOG2_E;
    let log2_tol = params.trunc_tol.log2();
    let log2_div = params.divergence_threshold.log2();
    let mut confirmations = 0u32;
    let mut guard = TrendGuard::new();
    let mut terms_used = 0usize;
    let mut last_log2_norm = f64::NEG_INFINITY;
    let mut cap_hit = true;
    let mut cache: Vec<Option<ExactCuts>> = Vec::new();
    while terms_used < params.max_terms {
        let log2_norm = {
            let cuts = fetch_exact_term(seq, &mut cache, terms_used, levels)?;
            acc.add_scaled(&w_num, &w_den, cuts);
            log2_pi + bigratio::log2_norm(cuts)
        };
        guard.push(terms_used, log2_norm.exp2().max(f64::MIN_POSITIVE));
        terms_used += 1;
        last_log2_norm = log2_norm;
        w_num *= &xa;
        w_den *= &xb * BigInt::from(terms_used as u64);
        log2_pi += (x / terms_used as f64).log2();
        if terms_used as f64 >= x && log2_norm < log2_tol {
            confirmations += 1;
            if confirmations >= 3 {
                cap_hit = false;
                break;
            }
        } else {
            confirmations = 0;
        }
        if log2_norm > log2_div && guard.growing() && guard.super_geometric() {
            break;
        }
    }
    let value = acc.to_fuzzy((-x).exp())?;
    let report = TailBoundReport {
        terms_used,
        last_term_norm: last_log2_norm.exp2(),
        cap_hit,
        exact_path: true,
        roundoff_bound: 4.0 * EPS * value.norm(),
    };
    Ok((value, report))
}

/// Partial sums of the Cauchy product ΣₙΣ_{k=0}^n x_{n−k}·uₖ with a
/// nonnegative real series (xₙ), via the rearrangement
/// Σ_{k=0}^m X_{m−k}·uₖ where Xⱼ = x₀ + … + xⱼ.
pub fn cauchy_product(
    useq: &FuzzySequence,
    xseq: &[f64],
    n_max: usize,
    levels: usize,
) -> Result<Vec<FuzzyNumber>, TransformError> {
    if n_max >= xseq.len() {
        return Err(TransformError::InvalidInput(format!(
            "need {} real terms, got {}",
            n_max + 1,
            xseq.len()
        )));
    }
    if let Some(bad) = xseq.iter().find(|v| !(**v >= 0.0)) {
        return Err(TransformError::InvalidInput(format!(
            "Cauchy product requires non-negative real terms, got {bad}"
        )));
    }
    let mut prefix = Vec::with_capacity(n_max + 1);
    let mut run = 0.0f64;
    for &v in &xseq[..=n_max] {
        run += v;
        prefix.push(run);
    }
    let mut terms = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        terms.push(useq.term(k as u64, levels)?);
    }
    let mut out = Vec::with_capacity(n_max + 1);
    for m in 0..=n_max {
        let mut acc = CutAccumulator::new(levels);
        for k in 0..=m {
            acc.add_scaled(prefix[m - k], &terms[k]);
        }
        out.push(acc.finish(1.0)?);
    }
    Ok(out)
}

/// Weighted tail sum Σ_{k=0}^n (Σ_{v=k}^n x_v)·uₖ for nonnegative (xₙ).
pub fn weighted_tail_sum(
    useq: &FuzzySequence,
    xseq: &[f64],
    n: usize,
    levels: usize,
) -> Result<FuzzyNumber, TransformError> {
    if n >= xseq.len() {
        return Err(TransformError::InvalidInput(format!(
            "tail sum at n = {n} needs {} real terms, got {}",
            n + 1,
            xseq.len()
        )));
    }
    if let Some(bad) = xseq.iter().find(|v| !(**v >= 0.0)) {
        return Err(TransformError::InvalidInput(format!(
            "weighted tail sum requires non-negative real terms, got {bad}"
        )));
    }
    // suffix[k] = x_k + … + x_n, built right-to-left
    let mut suffix = vec![0.0f64; n + 1];
    let mut run = 0.0;
    for k in (0..=n).rev() {
        run += xseq[k];
        suffix[k] = run;
    }
    let mut acc = CutAccumulator::new(levels);
    for (k, weight) in suffix.iter().enumerate() {
        acc.add_scaled(*weight, &useq.term(k as u64, levels)?);
    }
    acc.finish(1.0).map_err(Into::into)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    fn tri(levels: usize) -> FuzzyNumber {
        FuzzyNumber::triangular(0.0, 1.0, 2.0, levels).unwrap()
    }

    /// uₙ = cₙ·w for a nonnegative scalar schedule.
    fn scaled_seq(w: FuzzyNumber, schedule: impl Fn(u64) -> f64 + Send + Sync + 'static) -> FuzzySequence {
        let levels = w.levels();
        FuzzySequence::new(
            "scaled",
            BTreeMap::new(),
            Arc::new(move |n, m| {
                assert_eq!(m, levels);
                Ok(w.scalar_mul(schedule(n)).unwrap())
            }),
        )
    }

    #[test]
    fn partial_sums_basics() {
        let m = 16;
        let zero = sequences::builtin("constant", &{
            let mut p = BTreeMap::new();
            p.insert("value".into(), 0.0);
            p
        })
        .unwrap();
        let sums = partial_sums(&zero, 5, m).unwrap();
        for s in &sums {
            assert_eq!(*s, FuzzyNumber::crisp(0.0, m).unwrap());
        }
        // s₀ = u₀
        let seq = sequences::abel_not_cesaro();
        let sums = partial_sums(&seq, 0, m).unwrap();
        assert_eq!(sums[0], seq.term(0, m).unwrap());
    }

    #[test]
    fn partial_sums_geometric_converges_to_double() {
        // uₙ = 2⁻ⁿ·w with w = triangular(0,1,2): s_N → [2α, 4−2α]
        let m = 16;
        let seq = scaled_seq(tri(m), |n| 0.5f64.powi(n as i32));
        let sums = partial_sums(&seq, 60, m).unwrap();
        let limit = tri(m).scalar_mul(2.0).unwrap();
        assert!(sums[60].distance(&limit).unwrap() < 1e-12);
        // monotone approach from below on the lower endpoints
        assert!(sums[5].distance(&limit).unwrap() > 1e-2);
    }

    #[test]
    fn cesaro_of_constant_is_constant() {
        let m = 8;
        let seq = sequences::constant_triangular(0.0, 1.0, 2.0);
        let means = cesaro_means(&seq, 20, m).unwrap();
        for mu in &means {
            assert!(mu.distance(&tri(m)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn cesaro_witness_matches_closed_form() {
        // [σ_{n_k}]_α = [α + n_k/((n_k+1)√λ_{n_k}), 2−α + …], else [α, 2−α]
        let m = 8;
        let seq = sequences::cesaro_bound_witness(2, 2, 1.0);
        let means = cesaro_means(&seq, 22, m).unwrap();
        for n in 0..=22usize {
            let offset = if n >= 2 && n % 2 == 0 {
                let nk = n as f64;
                nk / ((nk + 1.0) * nk.sqrt())
            } else {
                0.0
            };
            for j in 0..=m {
                let a = j as f64 / m as f64;
                let (lo, hi) = means[n].cut(j);
                assert!((lo - (a + offset)).abs() < 1e-12, "n={n} j={j}");
                assert!((hi - (2.0 - a + offset)).abs() < 1e-12, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn cesaro_oscillation_of_alternating_example() {
        // D(σ₂ₙ, σ₂ₙ₊₁) stays bounded away from 0
        let m = 8;
        let seq = sequences::abel_not_cesaro();
        let means = cesaro_means(&seq, 201, m).unwrap();
        for n in (10..200).step_by(2) {
            let d = means[n].distance(&means[n + 1]).unwrap();
            assert!(d > 0.4, "collapsed at n = {n}: {d}");
        }
    }

    #[test]
    fn euler_of_constant_is_constant() {
        let m = 8;
        let seq = sequences::constant_triangular(0.0, 1.0, 2.0);
        for p in [0.5, 1.0, 2.0] {
            let means = euler_means(&seq, p, 30, m).unwrap();
            for mu in &means {
                assert!(mu.distance(&tri(m)).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn euler_weight_rows_sum_to_one() {
        // row sums via the crisp-1 sequence: t^p_n must be 1̄
        let seq = sequences::builtin("constant", &{
            let mut p = BTreeMap::new();
            p.insert("value".into(), 1.0);
            p
        })
        .unwrap();
        for p in [0.5, 1.0, 2.0, 10.0] {
            let means = euler_means(&seq, p, 500, 1).unwrap();
            for (n, mu) in means.iter().enumerate() {
                let err = (mu.cut(0).0 - 1.0).abs().max((mu.cut(1).1 - 1.0).abs());
                assert!(err < 1e-12, "p={p} n={n} err={err}");
            }
        }
    }

    #[test]
    fn euler_composed_order_formula() {
        assert_eq!(euler_composed_order(1.0, 1.0).unwrap(), 3.0);
        assert_eq!(
            euler_composed_order(0.5, 2.0).unwrap(),
            euler_composed_order(2.0, 0.5).unwrap()
        );
        assert!(euler_composed_order(0.0, 1.0).is_err());
    }

    #[test]
    fn euler_es_not_ep_closed_form_even_n() {
        // D(t³ₙ, ν) = (1/2)ⁿ + (7/8)ⁿ at even n, with [ν]_α = [0, 2−α].
        // This crosses ~47 bits of cancellation at n = 40, so it exercises
        // the exact escalation path.
        let m = 64;
        let seq = sequences::es_not_ep(1.0, 3.0).unwrap();
        let nu = seq.profile().limit.unwrap()(m);
        let means = euler_means(&seq, 3.0, 40, m).unwrap();
        for n in (0..=40).step_by(2) {
            let d = means[n].distance(&nu).unwrap();
            let closed = 0.5f64.powi(n as i32) + 0.875f64.powi(n as i32);
            assert!(
                (d - closed).abs() < 1e-9,
                "n={n}: d={d:.12e} closed={closed:.12e}"
            );
        }
        // odd n: the closed form is only an upper bound
        for n in (1..=39).step_by(2) {
            let d = means[n].distance(&nu).unwrap();
            let closed = 0.5f64.powi(n as i32) + 0.875f64.powi(n as i32);
            assert!(d <= closed + 1e-9, "n={n}");
        }
    }

    #[test]
    fn euler_es_not_ep_order_p_diverges() {
        // under order p = 1 the endpoint magnitudes contain (−2)ⁿ
        let m = 16;
        let seq = sequences::es_not_ep(1.0, 3.0).unwrap();
        let means = euler_means(&seq, 1.0, 30, m).unwrap();
        for n in 2..=30usize {
            assert!(
                means[n].norm() >= 1.9f64.powi(n as i32),
                "n={n}: {}",
                means[n].norm()
            );
        }
    }

    #[test]
    fn abel_of_constant_is_identity() {
        let m = 8;
        let seq = sequences::constant_triangular(0.0, 1.0, 2.0);
        // x = 0.999 truncates near n = 35_000, past the default cap
        let params = TransformParams {
            max_terms: 100_000,
            ..TransformParams::default()
        };
        for x in [0.25, 0.5, 0.9, 0.999] {
            let (v, report) = abel_eval(&seq, x, &params, m).unwrap();
            assert!(!report.cap_hit, "x={x}");
            assert!(v.distance(&tri(m)).unwrap() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn abel_alternating_example_closed_form() {
        // D((1−x)Σuₙxⁿ, [0,2]) = (1−x)x/(1+x)² + 2(1−x)/(2−x)
        let m = 64;
        let seq = sequences::abel_not_cesaro();
        let mu = seq.profile().limit.unwrap()(m);
        let params = TransformParams {
            max_terms: 100_000,
            ..TransformParams::default()
        };
        let x = 0.999;
        let (v, report) = abel_eval(&seq, x, &params, m).unwrap();
        assert!(!report.cap_hit, "needed {} terms", report.terms_used);
        let d = v.distance(&mu).unwrap();
        let closed = (1.0 - x) * x / ((1.0 + x) * (1.0 + x)) + 2.0 * (1.0 - x) / (2.0 - x);
        assert!((d - closed).abs() < 1e-6, "d={d:.9e} closed={closed:.9e}");
        assert!((closed - 2.2480019354394511e-3).abs() < 1e-12);
    }

    #[test]
    fn abel_flags_divergent_series() {
        let m = 8;
        let seq = sequences::es_not_ep(1.0, 3.0).unwrap();
        let params = TransformParams::default();
        let (_, report) = abel_eval(&seq, 0.9, &params, m).unwrap();
        assert!(report.nonconvergent(params.trunc_tol));
        assert!(report.terms_used < 100, "guard should fire early");
    }

    #[test]
    fn borel_of_constant_is_identity_even_far_out() {
        let m = 8;
        let seq = sequences::constant_triangular(0.0, 1.0, 2.0);
        let params = TransformParams::default();
        for x in [0.5, 5.0, 40.0, 80.0] {
            let (v, report) = borel_eval(&seq, x, &params, m).unwrap();
            assert!(!report.cap_hit, "x={x}");
            assert!(v.distance(&tri(m)).unwrap() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn borel_es_not_ep_closed_form() {
        // D(borel(x), ν) = e⁻⁶ˣ + e^(−x/2); the x = 40 case needs ~255 bits
        // of cancellation, far past f64, so the exact path must engage.
        let m = 64;
        let seq = sequences::es_not_ep(1.0, 3.0).unwrap();
        let nu = seq.profile().limit.unwrap()(m);
        let params = TransformParams::default();
        for x in [10.0, 20.0, 40.0] {
            let (v, report) = borel_eval(&seq, x, &params, m).unwrap();
            assert!(report.exact_path, "x={x} should escalate");
            assert!(!report.cap_hit);
            let d = v.distance(&nu).unwrap();
            let closed = (-6.0 * x).exp() + (-x / 2.0).exp();
            assert!((d - closed).abs() < 1e-6, "x={x}: d={d:.6e} closed={closed:.6e}");
        }
    }

    #[test]
    fn borel_not_ep_converges_below_one_diverges_above() {
        let m = 16;
        let seq = sequences::borel_not_ep();
        let params = TransformParams::default();
        // x = 0.5: endpoints e⁻ˣ/(1+x) + α and e⁻ˣ/(1+x) + 2/(1+α)
        let x = 0.5;
        let (v, report) = borel_eval(&seq, x, &params, m).unwrap();
        assert!(!report.cap_hit);
        let shift = (-x).exp() / (1.0 + x);
        for j in 0..=m {
            let a = j as f64 / m as f64;
            let (lo, hi) = v.cut(j);
            assert!((lo - (shift + a)).abs() < 1e-9);
            assert!((hi - (shift + 2.0 / (1.0 + a))).abs() < 1e-9);
        }
        // x ≥ 1: the endpoint series Σ(−x)ⁿ diverges; the guard must flag it
        for x in [2.0, 5.0, 40.0] {
            let (_, report) = borel_eval(&seq, x, &params, m).unwrap();
            assert!(report.nonconvergent(params.trunc_tol), "x={x}");
            assert!(report.terms_used < 200, "x={x}: {}", report.terms_used);
        }
    }

    #[test]
    fn cauchy_product_identity_and_geometric() {
        let m = 16;
        let seq = scaled_seq(tri(m), |n| 0.5f64.powi(n as i32));
        // xseq = (1, 0, 0, …): partial sums of Σuₙ itself
        let mut delta = vec![0.0; 41];
        delta[0] = 1.0;
        let viaconv = cauchy_product(&seq, &delta, 40, m).unwrap();
        let direct = partial_sums(&seq, 40, m).unwrap();
        for (a, b) in viaconv.iter().zip(&direct) {
            assert!(a.distance(b).unwrap() < 1e-12);
        }
        // xₙ = 3⁻ⁿ: limit X·U = (3/2)·(2w) = 3w
        let xs: Vec<f64> = (0..=60).map(|n| 3.0f64.powi(-n)).collect();
        let prods = cauchy_product(&seq, &xs, 60, m).unwrap();
        let limit = tri(m).scalar_mul(3.0).unwrap();
        assert!(prods[60].distance(&limit).unwrap() < 1e-6);
        // negative x is rejected
        assert!(cauchy_product(&seq, &[1.0, -0.1], 1, m).is_err());
    }

    #[test]
    fn cauchy_product_of_zero_sequence() {
        let m = 8;
        let zero = sequences::builtin("constant", &{
            let mut p = BTreeMap::new();
            p.insert("value".into(), 0.0);
            p
        })
        .unwrap();
        let xs = vec![0.3; 11];
        for s in cauchy_product(&zero, &xs, 10, m).unwrap() {
            assert_eq!(s, FuzzyNumber::crisp(0.0, m).unwrap());
        }
    }

    #[test]
    fn weighted_tail_sum_cases() {
        let m = 16;
        let seq = scaled_seq(tri(m), |n| 0.5f64.powi(n as i32));
        // all-zero weights
        let zero = weighted_tail_sum(&seq, &vec![0.0; 5], 4, m).unwrap();
        assert_eq!(zero, FuzzyNumber::crisp(0.0, m).unwrap());
        // xₙ = 3⁻ⁿ at n = 30: Σ_k 2⁻ᵏ·(Σ_{v=k}^{30} 3⁻ᵛ) → (9/5)·w
        let xs: Vec<f64> = (0..=30).map(|n| 3.0f64.powi(-n)).collect();
        let v = weighted_tail_sum(&seq, &xs, 30, m).unwrap();
        let limit = tri(m).scalar_mul(9.0 / 5.0).unwrap();
        assert!(v.distance(&limit).unwrap() < 1e-8);
    }
}
