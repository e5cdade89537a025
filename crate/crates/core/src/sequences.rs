//! Builtin parameterized sequences of fuzzy numbers behind one uniform
//! interface, plus the adapter wrapping a parsed DSL definition.
//!
//! The builtins are the four example constructions exercised throughout the
//! analysis layer:
//!
//! - `constant(value | a,b,c)` — uₙ = v for all n.
//! - `abel_not_cesaro` — α-cuts `[(−1)ⁿn + (α/2)ⁿ, (−1)ⁿn + 2 − (α/2)ⁿ]`,
//!   Abel summable to the rectangle `[0, 2]` but not Cesàro summable.
//! - `cesaro_bound_witness(nk_offset, nk_stride, lambda_exp)` — base α-cut
//!   `[α, 2−α]` with paired offsets `±nₖ/√λ_{nₖ}` at indices nₖ, nₖ+1
//!   (λₙ = n^lambda_exp, nₖ = nk_offset + k·nk_stride); Cesàro summable while
//!   D(uₙ, 0̄) grows like √nₖ.
//! - `es_not_ep(p, s)` — α-cuts `[(−p−s−1)ⁿ + (α/2)ⁿ, (−p−s−1)ⁿ + 2 − α]`,
//!   Euler summable at order s but not at order p < s.
//! - `borel_not_ep` — α-cuts `[(−1)ⁿn! + α, (−1)ⁿn! + 2/(1+α)]`; the upper
//!   endpoint inverts the membership branch `(x+2−t)/(t−x)`: solving
//!   `(x+2−t)/(t−x) = α` gives `t = x + 2/(1+α)`.
//!
//! Sequences whose endpoint formulas are rational in (n, α) also expose an
//! exact-rational term path used by the transforms when f64 cancellation
//! would destroy the result.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::bigratio::{self, ExactCuts};
use crate::fuzzy::{FuzzyError, FuzzyNumber};
use crate::seqlang::{eval_term, eval_term_exact, EvalError, SeqDef};

/// Errors from sequence construction or term evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SequenceError {
    #[error("unknown builtin sequence `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl SequenceError {
    fn term(n: u64, source: FuzzyError) -> Self {
        SequenceError::Eval(EvalError::Invalid { n, source })
    }
}

/// Expected summability verdict recorded for test traceability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedVerdict {
    Summable,
    NotSummable,
}

/// Which verdicts a builtin is known to produce, per method.
#[derive(Debug, Clone, Default)]
pub struct KnownProfile {
    pub ordinary: Option<ExpectedVerdict>,
    pub cesaro: Option<ExpectedVerdict>,
    pub abel: Option<ExpectedVerdict>,
    /// (order p, expected verdict) pairs.
    pub euler: Vec<(f64, ExpectedVerdict)>,
    pub borel: Option<ExpectedVerdict>,
    /// The known limit where one exists, as a constructor of grid size M.
    pub limit: Option<fn(usize) -> FuzzyNumber>,
}

type TermFn = Arc<dyn Fn(u64, usize) -> Result<FuzzyNumber, SequenceError> + Send + Sync>;
type ExactFn =
    Arc<dyn Fn(u64, usize) -> Result<Option<ExactCuts>, SequenceError> + Send + Sync>;

// Terms below this index are memoized; memoization is observationally
// transparent (terms are pure in (n, M)).
const MEMO_LIMIT: u64 = 2048;

/// A lazily evaluated sequence of fuzzy numbers.
#[derive(Clone)]
pub struct FuzzySequence {
    name: String,
    params: BTreeMap<String, f64>,
    term_fn: TermFn,
    exact_fn: Option<ExactFn>,
    profile: KnownProfile,
    memo: Arc<Mutex<HashMap<(u64, usize), FuzzyNumber>>>,
}

impl fmt::Debug for FuzzySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FuzzySequence")
            .field("name", &self.name)
            .field("params", &self.params)
            .finish_non_exhaustive()
    }
}

impl FuzzySequence {
    pub fn new(
        name: impl Into<String>,
        params: BTreeMap<String, f64>,
        term_fn: TermFn,
    ) -> Self {
        FuzzySequence {
            name: name.into(),
            params,
            term_fn,
            exact_fn: None,
            profile: KnownProfile::default(),
            memo: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn with_exact(mut self, exact_fn: ExactFn) -> Self {
        self.exact_fn = Some(exact_fn);
        self
    }

    pub fn with_profile(mut self, profile: KnownProfile) -> Self {
        self.profile = profile;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn profile(&self) -> &KnownProfile {
        &self.profile
    }

    /// Term uₙ on the α-grid of size `levels`. Deterministic in (n, levels);
    /// small indices are memoized behind a lock.
    pub fn term(&self, n: u64, levels: usize) -> Result<FuzzyNumber, SequenceError> {
        if n < MEMO_LIMIT {
            if let Some(hit) = self.memo.lock().unwrap().get(&(n, levels)) {
                return Ok(hit.clone());
            }
        }
        let value = (self.term_fn)(n, levels)?;
        if n < MEMO_LIMIT {
            self.memo
                .lock()
                .unwrap()
                .insert((n, levels), value.clone());
        }
        Ok(value)
    }

    /// Exact rational α-cuts for uₙ, if this sequence supports them.
    pub fn exact_term(
        &self,
        n: u64,
        levels: usize,
    ) -> Result<Option<ExactCuts>, SequenceError> {
        match &self.exact_fn {
            Some(f) => f(n, levels),
            None => Ok(None),
        }
    }

    pub fn has_exact(&self) -> bool {
        self.exact_fn.is_some()
    }
}

fn get_param(params: &BTreeMap<String, f64>, key: &str) -> Option<f64> {
    params.get(key).copied()
}

fn reject_unknown(
    params: &BTreeMap<String, f64>,
    allowed: &[&str],
) -> Result<(), SequenceError> {
    for k in params.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(SequenceError::InvalidParams(format!(
                "unknown parameter `{k}` (allowed: {})",
                allowed.join(", ")
            )));
        }
    }
    Ok(())
}

/// Constructs a builtin sequence by name.
///
/// Names and parameter keys (part of the CLI contract):
///
/// - `constant`: either `value` (crisp) or `a`, `b`, `c` (triangular).
/// - `abel_not_cesaro`: no parameters.
/// - `cesaro_bound_witness`: `nk_offset` (default 2), `nk_stride`
///   (default 2, ≥ 2), `lambda_exp` (default 1, > 0).
/// - `es_not_ep`: `p` (> 0), `s` (> p); defaults p = 1, s = 3.
/// - `borel_not_ep`: no parameters.
pub fn builtin(
    name: &str,
    params: &BTreeMap<String, f64>,
) -> Result<FuzzySequence, SequenceError> {
    match name {
        "constant" => constant_from_params(params),
        "abel_not_cesaro" => {
            reject_unknown(params, &[])?;
            Ok(abel_not_cesaro())
        }
        "cesaro_bound_witness" => cesaro_bound_witness_from_params(params),
        "es_not_ep" => {
            reject_unknown(params, &["p", "s"])?;
            let p = get_param(params, "p").unwrap_or(1.0);
            let s = get_param(params, "s").unwrap_or(3.0);
            es_not_ep(p, s)
        }
        "borel_not_ep" => {
            reject_unknown(params, &[])?;
            Ok(borel_not_ep())
        }
        other => Err(SequenceError::UnknownBuiltin(other.to_string())),
    }
}

/// Every builtin name accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "constant",
    "abel_not_cesaro",
    "cesaro_bound_witness",
    "es_not_ep",
    "borel_not_ep",
];

fn constant_from_params(params: &BTreeMap<String, f64>) -> Result<FuzzySequence, SequenceError> {
    reject_unknown(params, &["value", "a", "b", "c"])?;
    let have_tri =
        params.contains_key("a") || params.contains_key("b") || params.contains_key("c");
    if let Some(v) = get_param(params, "value") {
        if have_tri {
            return Err(SequenceError::InvalidParams(
                "constant takes either `value` or `a`,`b`,`c`, not both".into(),
            ));
        }
        if !v.is_finite() {
            return Err(SequenceError::InvalidParams(format!(
                "non-finite value {v}"
            )));
        }
        let mut p = BTreeMap::new();
        p.insert("value".into(), v);
        let seq = FuzzySequence::new(
            "constant",
            p,
            Arc::new(move |n, m| {
                FuzzyNumber::crisp(v, m).map_err(|e| SequenceError::term(n, e))
            }),
        )
        .with_exact(Arc::new(move |_n, m| {
            let r = bigratio::from_f64(v).expect("finite");
            Ok(Some(vec![(r.clone(), r); m + 1]))
        }));
        return Ok(seq.with_profile(constant_profile()));
    }
    if have_tri {
        let a = get_param(params, "a").ok_or_else(|| {
            SequenceError::InvalidParams("constant triangular needs a, b, c".into())
        })?;
        let b = get_param(params, "b").ok_or_else(|| {
            SequenceError::InvalidParams("constant triangular needs a, b, c".into())
        })?;
        let c = get_param(params, "c").ok_or_else(|| {
            SequenceError::InvalidParams("constant triangular needs a, b, c".into())
        })?;
        // validate once up front on a small grid
        FuzzyNumber::triangular(a, b, c, 1)
            .map_err(|e| SequenceError::InvalidParams(e.to_string()))?;
        return Ok(constant_triangular(a, b, c));
    }
    Err(SequenceError::InvalidParams(
        "constant needs `value` or `a`,`b`,`c`".into(),
    ))
}

fn constant_profile() -> KnownProfile {
    KnownProfile {
        ordinary: Some(ExpectedVerdict::Summable),
        cesaro: Some(ExpectedVerdict::Summable),
        abel: Some(ExpectedVerdict::Summable),
        euler: vec![
            (1.0, ExpectedVerdict::Summable),
            (2.0, ExpectedVerdict::Summable),
            (3.0, ExpectedVerdict::Summable),
        ],
        borel: Some(ExpectedVerdict::Summable),
        limit: None,
    }
}

/// The constant sequence uₙ = triangular(a, b, c).
pub fn constant_triangular(a: f64, b: f64, c: f64) -> FuzzySequence {
    let mut p = BTreeMap::new();
    p.insert("a".into(), a);
    p.insert("b".into(), b);
    p.insert("c".into(), c);
    FuzzySequence::new(
        "constant",
        p,
        Arc::new(move |n, m| {
            FuzzyNumber::triangular(a, b, c, m).map_err(|e| SequenceError::term(n, e))
        }),
    )
    .with_exact(Arc::new(move |_n, m| {
        let (ar, br, cr) = (
            bigratio::from_f64(a).expect("finite"),
            bigratio::from_f64(b).expect("finite"),
            bigratio::from_f64(c).expect("finite"),
        );
        let mut cuts = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let alpha = bigratio::alpha_ratio(j, m);
            cuts.push((
                &ar + (&br - &ar) * &alpha,
                &cr - (&cr - &br) * &alpha,
            ));
        }
        Ok(Some(cuts))
    }))
    .with_profile(constant_profile())
}

/// The constant sequence uₙ = v for an arbitrary fuzzy number `v`.
/// Requesting a grid size other than `v.levels()` is a grid-mismatch error.
pub fn constant_fuzzy(v: FuzzyNumber) -> FuzzySequence {
    let levels = v.levels();
    FuzzySequence::new(
        "constant",
        BTreeMap::new(),
        Arc::new(move |n, m| {
            if m != levels {
                return Err(SequenceError::term(n, FuzzyError::GridMismatch(levels, m)));
            }
            Ok(v.clone())
        }),
    )
    .with_profile(constant_profile())
}

/// The alternating example: Abel summable to the rectangle `[0, 2]`, not
/// Cesàro summable. The n = 0 term is 1̄ (which the α-cut formula also gives).
pub fn abel_not_cesaro() -> FuzzySequence {
    FuzzySequence::new(
        "abel_not_cesaro",
        BTreeMap::new(),
        Arc::new(|n, m| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let base = sign * n as f64;
            let mut lo = Vec::with_capacity(m + 1);
            let mut hi = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let half_alpha = j as f64 / m as f64 / 2.0;
                let t = half_alpha.powi(n as i32);
                lo.push(base + t);
                hi.push(base + 2.0 - t);
            }
            FuzzyNumber::from_alpha_cuts(lo, hi).map_err(|e| SequenceError::term(n, e))
        }),
    )
    .with_exact(Arc::new(|n, m| {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let base = BigRational::from_integer(BigInt::from(sign * n as i64));
        let mut cuts = Vec::with_capacity(m + 1);
        let two = BigRational::from_integer(BigInt::from(2));
        for j in 0..=m {
            let half_alpha = BigRational::new(BigInt::from(j), BigInt::from(2 * m));
            let t = rational_pow(&half_alpha, n);
            cuts.push((&base + &t, &base + &two - &t));
        }
        Ok(Some(cuts))
    }))
    .with_profile(KnownProfile {
        ordinary: Some(ExpectedVerdict::NotSummable),
        cesaro: Some(ExpectedVerdict::NotSummable),
        abel: Some(ExpectedVerdict::Summable),
        euler: vec![],
        borel: None,
        limit: Some(|m| {
            FuzzyNumber::from_alpha_cuts(vec![0.0; m + 1], vec![2.0; m + 1]).expect("valid")
        }),
    })
}

fn rational_pow(base: &BigRational, n: u64) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    num_traits::pow::pow(base.clone(), n as usize)
}

fn cesaro_bound_witness_from_params(
    params: &BTreeMap<String, f64>,
) -> Result<FuzzySequence, SequenceError> {
    reject_unknown(params, &["nk_offset", "nk_stride", "lambda_exp"])?;
    let offset = get_param(params, "nk_offset").unwrap_or(2.0);
    let stride = get_param(params, "nk_stride").unwrap_or(2.0);
    let lambda_exp = get_param(params, "lambda_exp").unwrap_or(1.0);
    if offset.fract() != 0.0 || offset < 1.0 {
        return Err(SequenceError::InvalidParams(format!(
            "nk_offset must be an integer >= 1, got {offset}"
        )));
    }
    if stride.fract() != 0.0 || stride < 2.0 {
        return Err(SequenceError::InvalidParams(format!(
            "nk_stride must be an integer >= 2 (the proof needs n_(k+1) >= n_k + 2), got {stride}"
        )));
    }
    if !(lambda_exp > 0.0) {
        return Err(SequenceError::InvalidParams(format!(
            "lambda_exp must be positive so that lambda_n -> infinity, got {lambda_exp}"
        )));
    }
    Ok(cesaro_bound_witness(offset as u64, stride as u64, lambda_exp))
}

/// The sharpness witness for the Cesàro growth bound, with λₙ = n^lambda_exp
/// and nₖ = nk_offset + k·nk_stride.
pub fn cesaro_bound_witness(nk_offset: u64, nk_stride: u64, lambda_exp: f64) -> FuzzySequence {
    let mut p = BTreeMap::new();
    p.insert("nk_offset".into(), nk_offset as f64);
    p.insert("nk_stride".into(), nk_stride as f64);
    p.insert("lambda_exp".into(), lambda_exp);
    FuzzySequence::new(
        "cesaro_bound_witness",
        p,
        Arc::new(move |n, m| {
            let off = witness_offset(n, nk_offset, nk_stride, lambda_exp);
            let mut lo = Vec::with_capacity(m + 1);
            let mut hi = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let alpha = j as f64 / m as f64;
                lo.push(alpha + off);
                hi.push(2.0 - alpha + off);
            }
            FuzzyNumber::from_alpha_cuts(lo, hi).map_err(|e| SequenceError::term(n, e))
        }),
    )
    .with_profile(KnownProfile {
        ordinary: Some(ExpectedVerdict::NotSummable),
        cesaro: Some(ExpectedVerdict::Summable),
        abel: Some(ExpectedVerdict::Summable),
        euler: vec![],
        borel: None,
        limit: Some(|m| FuzzyNumber::triangular(0.0, 1.0, 2.0, m).expect("valid")),
    })
}

/// The endpoint offset of the witness term at index n: `+nₖ/√λ_{nₖ}` at
/// n = nₖ, `−nₖ/√λ_{nₖ}` at n = nₖ + 1, else 0.
pub fn witness_offset(n: u64, nk_offset: u64, nk_stride: u64, lambda_exp: f64) -> f64 {
    let magnitude = |nk: u64| {
        let nkf = nk as f64;
        nkf / nkf.powf(lambda_exp).sqrt()
    };
    if n >= nk_offset && (n - nk_offset) % nk_stride == 0 {
        magnitude(n)
    } else if n >= nk_offset + 1 && (n - nk_offset - 1) % nk_stride == 0 {
        -magnitude(n - 1)
    } else {
        0.0
    }
}

/// The order-separation example for Euler means: Eₛ summable but not Eₚ for
/// s > p > 0. Requires s > p > 0.
///
/// The Eₛ limit has α-cuts `[0, 2−α]` (the lower Euler endpoint
/// `(−1)ⁿ((p+1)/(s+1))ⁿ + ((2s+α)/(2s+2))ⁿ` tends to 0 uniformly in α).
pub fn es_not_ep(p: f64, s: f64) -> Result<FuzzySequence, SequenceError> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(SequenceError::InvalidParams(format!(
            "p must be positive, got {p}"
        )));
    }
    if !(s > p) || !s.is_finite() {
        return Err(SequenceError::InvalidParams(format!(
            "s must exceed p (got p = {p}, s = {s})"
        )));
    }
    let mut pm = BTreeMap::new();
    pm.insert("p".into(), p);
    pm.insert("s".into(), s);
    let base = -p - s - 1.0;
    let seq = FuzzySequence::new(
        "es_not_ep",
        pm,
        Arc::new(move |n, m| {
            let b = base.powi(n as i32);
            let mut lo = Vec::with_capacity(m + 1);
            let mut hi = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let alpha = j as f64 / m as f64;
                lo.push(b + (alpha / 2.0).powi(n as i32));
                hi.push(b + 2.0 - alpha);
            }
            FuzzyNumber::from_alpha_cuts(lo, hi).map_err(|e| SequenceError::term(n, e))
        }),
    )
    .with_exact(Arc::new(move |n, m| {
        let base_r = bigratio::from_f64(base).expect("finite");
        let b = rational_pow(&base_r, n);
        let two = BigRational::from_integer(BigInt::from(2));
        let mut cuts = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let alpha = bigratio::alpha_ratio(j, m);
            let half_alpha = BigRational::new(BigInt::from(j), BigInt::from(2 * m));
            cuts.push((&b + rational_pow(&half_alpha, n), &b + &two - &alpha));
        }
        Ok(Some(cuts))
    }))
    .with_profile(KnownProfile {
        ordinary: Some(ExpectedVerdict::NotSummable),
        cesaro: Some(ExpectedVerdict::NotSummable),
        abel: Some(ExpectedVerdict::NotSummable),
        euler: vec![
            (p, ExpectedVerdict::NotSummable),
            (s, ExpectedVerdict::Summable),
        ],
        borel: Some(ExpectedVerdict::Summable),
        limit: Some(|m| {
            let lo = vec![0.0; m + 1];
            let hi = (0..=m).map(|j| 2.0 - j as f64 / m as f64).collect();
            FuzzyNumber::from_alpha_cuts(lo, hi).expect("valid")
        }),
    });
    Ok(seq)
}

/// The factorial example: Borel summable (per the source construction) but
/// not Eₚ summable for any p. Note the Borel endpoint series Σ(−x)ⁿ only
/// converges for x < 1; numerical Borel evaluation reports nonconvergence
/// for x ≥ 1 rather than fabricating a limit.
pub fn borel_not_ep() -> FuzzySequence {
    FuzzySequence::new(
        "borel_not_ep",
        BTreeMap::new(),
        Arc::new(|n, m| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let mut fact = 1.0f64;
            for i in 2..=n.min(171) {
                fact *= i as f64;
            }
            let x = sign * fact;
            let mut lo = Vec::with_capacity(m + 1);
            let mut hi = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let alpha = j as f64 / m as f64;
                lo.push(x + alpha);
                hi.push(x + 2.0 / (1.0 + alpha));
            }
            FuzzyNumber::from_alpha_cuts(lo, hi).map_err(|e| SequenceError::term(n, e))
        }),
    )
    .with_exact(Arc::new(|n, m| {
        let mut fact = BigInt::one();
        for i in 2..=n {
            fact *= i;
        }
        if n % 2 == 1 {
            fact = -fact;
        }
        let x = BigRational::from_integer(fact);
        let two = BigRational::from_integer(BigInt::from(2));
        let one = BigRational::one();
        let mut cuts = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let alpha = bigratio::alpha_ratio(j, m);
            cuts.push((&x + &alpha, &x + &two / (&one + &alpha)));
        }
        Ok(Some(cuts))
    }))
    .with_profile(KnownProfile {
        ordinary: Some(ExpectedVerdict::NotSummable),
        cesaro: Some(ExpectedVerdict::NotSummable),
        abel: Some(ExpectedVerdict::NotSummable),
        euler: vec![
            (1.0, ExpectedVerdict::NotSummable),
            (2.0, ExpectedVerdict::NotSummable),
        ],
        borel: None, // numerically nonconvergent for x >= 1; see module docs
        limit: None,
    })
}

/// Wraps a parsed DSL definition as a sequence. Evaluation errors surface
/// lazily at term access. Term i evaluates the formulas at
/// `def.start_index + i`.
pub fn from_seqdef(def: SeqDef, name: impl Into<String>) -> FuzzySequence {
    let def = Arc::new(def);
    let def_exact = Arc::clone(&def);
    let start = def.start_index;
    FuzzySequence::new(
        name,
        BTreeMap::new(),
        Arc::new(move |n, m| Ok(eval_term(&def, start + n, m)?)),
    )
    .with_exact(Arc::new(move |n, m| {
        Ok(eval_term_exact(&def_exact, start + n, m)?)
    }))
}
