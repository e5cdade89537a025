//! Numerical theorem suites behind the CLI `verify` subcommand.
//!
//! Each check pins a comparison theorem, growth bound or algebraic identity
//! to a concrete numerical assertion with a measured residual. Randomized
//! checks draw from a fixed-seed generator producing dyadic-grid numbers
//! (endpoint multiples of 2⁻²⁰, scalar multiples of 2⁻⁵), on which f64
//! endpoint arithmetic is exact, so the algebraic identities can be asserted
//! bitwise.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::analysis;
use crate::fuzzy::FuzzyNumber;
use crate::sequences::{self, FuzzySequence};
use crate::transforms::{self, TransformParams};

/// One named check with its measured residual.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, pass: bool, residual: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            pass,
            residual,
            detail: detail.into(),
        }
    }
}

/// The named suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Core,
    CesaroAbel,
    EulerBorel,
    Tauberian,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "all" => Some(Suite::All),
            "core" => Some(Suite::Core),
            "cesaro-abel" => Some(Suite::CesaroAbel),
            "euler-borel" => Some(Suite::EulerBorel),
            "tauberian" => Some(Suite::Tauberian),
            _ => None,
        }
    }

    pub const NAMES: &'static [&'static str] =
        &["all", "core", "cesaro-abel", "euler-borel", "tauberian"];
}

/// Runs a suite and returns its check results.
pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    match suite {
        Suite::All => {
            let mut out = run_suite(Suite::Core);
            out.extend(run_suite(Suite::CesaroAbel));
            out.extend(run_suite(Suite::EulerBorel));
            out.extend(run_suite(Suite::Tauberian));
            out
        }
        Suite::Core => core_suite(),
        Suite::CesaroAbel => cesaro_abel_suite(),
        Suite::EulerBorel => euler_borel_suite(),
        Suite::Tauberian => tauberian_suite(),
    }
}

// ---------------------------------------------------------------------------
// deterministic dyadic-grid randomness

pub(crate) struct SplitMix64(u64);

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub(crate) fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform dyadic value in [-range, range] with 2⁻²⁰ granularity.
    fn dyadic(&mut self, range: f64) -> f64 {
        let steps = (2.0 * range * (1u64 << 20) as f64) as u64;
        (self.next() % (steps + 1)) as f64 / (1u64 << 20) as f64 - range
    }

    /// Nonnegative dyadic value in [0, range].
    fn dyadic_nonneg(&mut self, range: f64) -> f64 {
        let steps = (range * (1u64 << 20) as f64) as u64;
        (self.next() % (steps + 1)) as f64 / (1u64 << 20) as f64
    }

    /// Dyadic scalar in [-8, 8] with 2⁻⁵ granularity.
    fn scalar(&mut self) -> f64 {
        (self.next() % 513) as f64 / 32.0 - 8.0
    }
}

/// Random valid fuzzy number: dyadic endpoints within [-10³, 10³].
pub(crate) fn random_fuzzy(rng: &mut SplitMix64, levels: usize) -> FuzzyNumber {
    let core_lo = rng.dyadic(500.0);
    let core_hi = core_lo + rng.dyadic_nonneg(100.0);
    let mut lo = vec![0.0; levels + 1];
    let mut hi = vec![0.0; levels + 1];
    lo[levels] = core_lo;
    hi[levels] = core_hi;
    for j in (0..levels).rev() {
        lo[j] = lo[j + 1] - rng.dyadic_nonneg(4.0);
        hi[j] = hi[j + 1] + rng.dyadic_nonneg(4.0);
    }
    FuzzyNumber::from_alpha_cuts(lo, hi).expect("construction is valid by design")
}

fn tri(levels: usize) -> FuzzyNumber {
    FuzzyNumber::triangular(0.0, 1.0, 2.0, levels).unwrap()
}

fn max_residual(cur: f64, new: f64) -> f64 {
    if new.is_nan() {
        f64::INFINITY
    } else {
        cur.max(new)
    }
}

// ---------------------------------------------------------------------------
// core suite

fn core_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let m = 64;
    let mut rng = SplitMix64::new(0x5eed_0001);
    let n_cases = 300;

    let mut axiom_res = 0.0f64;
    let mut translation_exact = true;
    let mut pair_res = 0.0f64;
    let mut norm_res = 0.0f64;
    let mut homog_exact = true;
    let mut same_sign_exact = true;
    let mut distr_add_exact = true;
    let mut assoc_exact = true;
    for _ in 0..n_cases {
        let u = random_fuzzy(&mut rng, m);
        let v = random_fuzzy(&mut rng, m);
        let w = random_fuzzy(&mut rng, m);
        let z = random_fuzzy(&mut rng, m);
        let duv = u.distance(&v).unwrap();
        let dvu = v.distance(&u).unwrap();
        axiom_res = max_residual(axiom_res, (duv - dvu).abs());
        axiom_res = max_residual(axiom_res, if duv >= 0.0 { 0.0 } else { f64::INFINITY });
        axiom_res = max_residual(axiom_res, u.distance(&u).unwrap());
        let dtriangle = u.distance(&w).unwrap() - duv - v.distance(&w).unwrap();
        axiom_res = max_residual(axiom_res, dtriangle.max(0.0));

        // Prop 2.2(iii): exact in endpoint arithmetic on the dyadic grid
        let lhs = u.add(&v).unwrap().distance(&w.add(&v).unwrap()).unwrap();
        translation_exact &= lhs == u.distance(&w).unwrap();

        // Prop 2.2(iv)
        let d4 = u.add(&v).unwrap().distance(&w.add(&z).unwrap()).unwrap();
        pair_res = max_residual(
            pair_res,
            (d4 - u.distance(&w).unwrap() - v.distance(&z).unwrap()).max(0.0),
        );

        // Prop 2.2(v)
        let zero = FuzzyNumber::crisp(0.0, m).unwrap();
        let nu = u.distance(&zero).unwrap();
        let nv = v.distance(&zero).unwrap();
        norm_res = max_residual(norm_res, ((nu - nv).abs() - duv).max(0.0));
        norm_res = max_residual(norm_res, (duv - nu - nv).max(0.0));

        // Prop 2.2(ii): D(ku, kv) = |k|·D(u, v), exact for dyadic scalars
        let k = rng.scalar();
        let dk = u
            .scalar_mul(k)
            .unwrap()
            .distance(&v.scalar_mul(k).unwrap())
            .unwrap();
        homog_exact &= dk == k.abs() * duv;

        // Lemma 2.1(iii) same sign, (iv), (v)
        let (a, b) = {
            let a = rng.scalar();
            let b = rng.scalar();
            if (a >= 0.0) == (b >= 0.0) {
                (a, b)
            } else {
                (a, -b)
            }
        };
        let lhs = u.scalar_mul(a + b).unwrap();
        let rhs = u.scalar_mul(a).unwrap().add(&u.scalar_mul(b).unwrap()).unwrap();
        same_sign_exact &= lhs == rhs;

        let a = rng.scalar();
        let lhs = u.add(&v).unwrap().scalar_mul(a).unwrap();
        let rhs = u.scalar_mul(a).unwrap().add(&v.scalar_mul(a).unwrap()).unwrap();
        distr_add_exact &= lhs == rhs;

        let b = rng.scalar();
        let lhs = u.scalar_mul(b).unwrap().scalar_mul(a).unwrap();
        let rhs = u.scalar_mul(a * b).unwrap();
        assoc_exact &= lhs == rhs;
    }
    out.push(CheckResult::new(
        "metric_axioms",
        axiom_res <= 1e-9,
        axiom_res,
        format!("{n_cases} random triples, slack 1e-9"),
    ));
    out.push(CheckResult::new(
        "translation_invariance",
        translation_exact,
        if translation_exact { 0.0 } else { f64::NAN },
        "D(u+v, w+v) = D(u, w), exact endpoint arithmetic",
    ));
    out.push(CheckResult::new(
        "pair_bound",
        pair_res <= 1e-9,
        pair_res,
        "D(u+v, w+z) <= D(u,w) + D(v,z)",
    ));
    out.push(CheckResult::new(
        "norm_bounds",
        norm_res <= 1e-9,
        norm_res,
        "|D(u,0)-D(v,0)| <= D(u,v) <= D(u,0)+D(v,0)",
    ));
    out.push(CheckResult::new(
        "scaling_homogeneity",
        homog_exact,
        if homog_exact { 0.0 } else { f64::NAN },
        "D(ku, kv) = |k|·D(u, v), exact",
    ));
    out.push(CheckResult::new(
        "same_sign_distributivity",
        same_sign_exact,
        if same_sign_exact { 0.0 } else { f64::NAN },
        "(a+b)u = au + bu for same-sign a, b, exact",
    ));
    out.push(CheckResult::new(
        "distributivity_over_addition",
        distr_add_exact,
        if distr_add_exact { 0.0 } else { f64::NAN },
        "a(u+v) = au + av, exact",
    ));
    out.push(CheckResult::new(
        "scalar_associativity",
        assoc_exact,
        if assoc_exact { 0.0 } else { f64::NAN },
        "a(bu) = (ab)u, exact",
    ));

    // the deliberate-bug canary: collapses to 0̄ only with correct sign
    // handling in scalar_mul, and the spread below is its exact witness
    let u = tri(m);
    let collapsed = u.scalar_mul(1.0 + -1.0).unwrap();
    let spread = u
        .scalar_mul(1.0)
        .unwrap()
        .add(&u.scalar_mul(-1.0).unwrap())
        .unwrap();
    let d = collapsed.distance(&spread).unwrap();
    let zero_ok = collapsed == FuzzyNumber::crisp(0.0, m).unwrap();
    out.push(CheckResult::new(
        "mixed-sign non-distributivity witness",
        d == 2.0 && zero_ok,
        (d - 2.0).abs(),
        "a=1, b=-1, u=triangular(0,1,2): D((a+b)u, au+bu) = 2 exactly",
    ));

    let mut neutral = true;
    let zero = FuzzyNumber::crisp(0.0, m).unwrap();
    let mut rng = SplitMix64::new(0x5eed_0002);
    for _ in 0..50 {
        let u = random_fuzzy(&mut rng, m);
        neutral &= u.add(&zero).unwrap() == u && zero.add(&u).unwrap() == u;
    }
    out.push(CheckResult::new(
        "crisp_neutral_element",
        neutral,
        if neutral { 0.0 } else { f64::NAN },
        "u + 0̄ = 0̄ + u = u",
    ));
    out
}

// ---------------------------------------------------------------------------
// cesaro-abel suite

fn cesaro_abel_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let m = 64;
    let witness = sequences::cesaro_bound_witness(2, 2, 1.0);

    // Cesàro growth bound: D(u_n, 0̄)/n at n_k, against the closed form
    // (2 + √n_k)/n_k
    let mut form_res = 0.0f64;
    let mut ratio_at_100 = f64::NAN;
    for k in 0..=49 {
        let nk = 2 * k + 2u64;
        let ratio = witness.term(nk, m).unwrap().norm() / nk as f64;
        let closed = (2.0 + (nk as f64).sqrt()) / nk as f64;
        form_res = max_residual(form_res, (ratio - closed).abs());
        if nk == 100 {
            ratio_at_100 = ratio;
        }
    }
    out.push(CheckResult::new(
        "thm3.1_growth_bound",
        form_res <= 1e-9 && ratio_at_100 < 0.15,
        form_res,
        format!("D(u_n,0)/n matches (2+sqrt(n_k))/n_k; ratio at n=100 is {ratio_at_100:.4}"),
    ));

    // sharpness: (λ_n/n)·D(u_n, 0̄) = 2 + √n_k → ∞
    let mut sharp = f64::NAN;
    let mut sharp_res = 0.0f64;
    for k in 0..=49 {
        let nk = 2 * k + 2u64;
        let v = (nk as f64 / nk as f64) * witness.term(nk, m).unwrap().norm();
        sharp_res = max_residual(sharp_res, (v - (2.0 + (nk as f64).sqrt())).abs());
        if nk == 100 {
            sharp = v;
        }
    }
    out.push(CheckResult::new(
        "thm3.1_sharpness_witness",
        sharp_res <= 1e-9 && sharp > 10.0,
        sharp_res,
        format!("(lambda_n/n)·D(u_n,0) = 2 + sqrt(n_k); value at n_k=100 is {sharp:.2}"),
    ));

    // Mertens: geometric example
    let geo = geometric_triangular();
    let xs: Vec<f64> = (0..=60).map(|n| 3.0f64.powi(-n)).collect();
    let prods = transforms::cauchy_product(&geo, &xs, 60, m).unwrap();
    let limit = tri(m).scalar_mul(3.0).unwrap();
    let d = prods[60].distance(&limit).unwrap();
    out.push(CheckResult::new(
        "thm3.2_mertens_geometric",
        d < 1e-6,
        d,
        "Cauchy product of 2^-n·tri(0,1,2) with 3^-n reaches 3·tri(0,1,2)",
    ));

    // Cesàro ⇒ Abel on the witness: residuals to tri(0,1,2) shrink as x → 1
    let params = TransformParams {
        max_terms: 200_000,
        ..TransformParams::default()
    };
    let mut resid = Vec::new();
    for x in [0.9, 0.99, 0.999] {
        let (v, rep) = transforms::abel_eval(&witness, x, &params, m).unwrap();
        if rep.cap_hit {
            resid.clear();
            break;
        }
        resid.push(v.distance(&tri(m)).unwrap());
    }
    let pass = resid.len() == 3 && resid[0] > resid[1] && resid[1] > resid[2] && resid[2] < 0.05;
    out.push(CheckResult::new(
        "thm3.3_cesaro_implies_abel",
        pass,
        resid.last().copied().unwrap_or(f64::NAN),
        format!("witness Abel residuals along x = 0.9, 0.99, 0.999: {resid:?}"),
    ));

    // the Abel-summable-not-Cesàro example
    let alt = sequences::abel_not_cesaro();
    let x = 0.999;
    let (v, _) = transforms::abel_eval(&alt, x, &params, m).unwrap();
    let mu = alt.profile().limit.unwrap()(m);
    let measured = v.distance(&mu).unwrap();
    let closed = (1.0 - x) * x / ((1.0 + x) * (1.0 + x)) + 2.0 * (1.0 - x) / (2.0 - x);
    out.push(CheckResult::new(
        "abel_not_cesaro_closed_form",
        (measured - closed).abs() < 1e-6,
        (measured - closed).abs(),
        format!("D((1-x)Σu_n x^n, [0,2]) at x = 0.999: {measured:.6e} vs closed {closed:.6e}"),
    ));

    let means = transforms::cesaro_means(&alt, 201, m).unwrap();
    let mut minosc = f64::INFINITY;
    for n in (100..200).step_by(2) {
        minosc = minosc.min(means[n].distance(&means[n + 1]).unwrap());
    }
    out.push(CheckResult::new(
        "abel_not_cesaro_cesaro_divergence",
        minosc > 0.4,
        minosc,
        "adjacent Cesàro means stay at least 0.4 apart",
    ));
    out
}

/// uₙ = 2⁻ⁿ·triangular(0,1,2).
fn geometric_triangular() -> FuzzySequence {
    FuzzySequence::new(
        "geometric",
        BTreeMap::new(),
        Arc::new(move |n, m| {
            Ok(FuzzyNumber::triangular(0.0, 1.0, 2.0, m)
                .unwrap()
                .scalar_mul(0.5f64.powi(n as i32))
                .unwrap())
        }),
    )
    .with_exact(Arc::new(move |n, m| {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let w = BigRational::new(BigInt::from(1), BigInt::from(2u64).pow(n as u32));
        let two = BigRational::from_integer(BigInt::from(2));
        let mut cuts = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let alpha = crate::bigratio::alpha_ratio(j, m);
            cuts.push((&alpha * &w, (&two - &alpha) * &w));
        }
        Ok(Some(cuts))
    }))
}

// ---------------------------------------------------------------------------
// euler-borel suite

fn euler_borel_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let m = 64;

    // weight rows sum to 1: Euler means of the crisp-1 sequence
    let one = sequences::constant_triangular(1.0, 1.0, 1.0);
    let mut row_res = 0.0f64;
    for p in [0.5, 1.0, 2.0, 10.0] {
        let means = transforms::euler_means(&one, p, 500, 1).unwrap();
        for mu in &means {
            row_res = max_residual(row_res, (mu.cut(0).0 - 1.0).abs());
            row_res = max_residual(row_res, (mu.cut(1).1 - 1.0).abs());
        }
    }
    out.push(CheckResult::new(
        "euler_weight_rows",
        row_res < 1e-12,
        row_res,
        "binomial weight rows sum to 1 for n <= 500, p in {0.5, 1, 2, 10}",
    ));

    // composition: q∘p equals order p+q+pq termwise
    let mut comp_res = 0.0f64;
    let mut rng = SplitMix64::new(0x5eed_0003);
    for _ in 0..5 {
        let seq = random_bounded_sequence(&mut rng);
        for (p, q) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5), (2.0, 2.0)] {
            comp_res = max_residual(comp_res, composition_residual(&seq, p, q, 25, 16));
        }
    }
    out.push(CheckResult::new(
        "euler_composition p=1 q=1 order=3",
        comp_res < 1e-9,
        comp_res,
        "q-th order means of p-th order means equal order p+q+pq means (n <= 25)",
    ));

    // the Eₛ-not-Eₚ example, against its closed form at even n
    let es = sequences::es_not_ep(1.0, 3.0).unwrap();
    let nu = es.profile().limit.unwrap()(m);
    let means = transforms::euler_means(&es, 3.0, 40, m).unwrap();
    let mut id_res = 0.0f64;
    for n in (0..=40).step_by(2) {
        let d = means[n].distance(&nu).unwrap();
        let closed = 0.5f64.powi(n as i32) + 0.875f64.powi(n as i32);
        id_res = max_residual(id_res, (d - closed).abs());
    }
    out.push(CheckResult::new(
        "thm4.2_es_example_closed_form",
        id_res < 1e-9,
        id_res,
        "D(t^3_n, nu) = (1/2)^n + (7/8)^n at even n <= 40, [nu]_a = [0, 2-a]",
    ));

    let means_p = transforms::euler_means(&es, 1.0, 30, m).unwrap();
    let mut mag_ok = true;
    let mut mag_min_ratio = f64::INFINITY;
    for n in 2..=30usize {
        let ratio = means_p[n].norm() / 1.9f64.powi(n as i32);
        mag_min_ratio = mag_min_ratio.min(ratio);
        mag_ok &= ratio >= 1.0;
    }
    out.push(CheckResult::new(
        "thm4.2_es_not_ep_divergence",
        mag_ok,
        mag_min_ratio,
        "order-1 Euler means of es_not_ep(1,3) keep endpoint magnitude >= 1.9^n (2 <= n <= 30)",
    ));

    // Lemma 4.2: weighted tail sums of the geometric pair
    let geo = geometric_triangular();
    let xs: Vec<f64> = (0..=30).map(|n| 3.0f64.powi(-n)).collect();
    let v = transforms::weighted_tail_sum(&geo, &xs, 30, m).unwrap();
    let limit = tri(m).scalar_mul(9.0 / 5.0).unwrap();
    let d = v.distance(&limit).unwrap();
    out.push(CheckResult::new(
        "lemma4.2_weighted_tail_identity",
        d < 1e-8,
        d,
        "sum_k 2^-k (sum_{v=k}^30 3^-v) tri(0,1,2) reaches (9/5)·tri(0,1,2)",
    ));

    // the Euler–Borel bridge identity at p = 1, x = 2, m <= 20
    let bridge = bridge_identity_residual(&es, 1.0, 2.0, 20, m);
    out.push(CheckResult::new(
        "euler_borel_bridge_identity",
        bridge < 1e-9,
        bridge,
        "sum (p+1)^n t^p_n x^n/n! equals sum x^k/k! u_k sum (px)^(n-k)/(n-k)! termwise",
    ));

    // Eₚ ⇒ Borel on the example: residuals to ν decrease along x = 10, 20, 40
    let params = TransformParams::default();
    let mut resid = Vec::new();
    let mut closed_res = 0.0f64;
    for x in [10.0, 20.0, 40.0] {
        let (v, rep) = transforms::borel_eval(&es, x, &params, m).unwrap();
        if rep.nonconvergent(params.trunc_tol) {
            resid.clear();
            break;
        }
        let d = v.distance(&nu).unwrap();
        closed_res = max_residual(closed_res, (d - ((-6.0 * x).exp() + (-x / 2.0).exp())).abs());
        resid.push(d);
    }
    let pass = resid.len() == 3
        && resid[0] > resid[1]
        && resid[1] > resid[2]
        && resid[2] < 0.05
        && closed_res < 1e-6;
    out.push(CheckResult::new(
        "thm4.3_es_borel_residuals",
        pass,
        closed_res,
        format!("D(borel(x), nu) along x = 10, 20, 40: {resid:?}"),
    ));

    // borel_not_ep: honest nonconvergence for x >= 1, closed form below 1
    let bo = sequences::borel_not_ep();
    let mut flagged = true;
    for x in [2.0, 5.0, 40.0] {
        let (_, rep) = transforms::borel_eval(&bo, x, &params, m).unwrap();
        flagged &= rep.nonconvergent(params.trunc_tol);
    }
    let x = 0.5;
    let (v, rep) = transforms::borel_eval(&bo, x, &params, m).unwrap();
    let shift = (-x).exp() / (1.0 + x);
    let mut below_res = 0.0f64;
    for j in 0..=m {
        let a = j as f64 / m as f64;
        below_res = max_residual(below_res, (v.cut(j).0 - (shift + a)).abs());
        below_res =
            max_residual(below_res, (v.cut(j).1 - (shift + 2.0 / (1.0 + a))).abs());
    }
    out.push(CheckResult::new(
        "borel_not_ep_nonconvergence",
        flagged && !rep.cap_hit && below_res < 1e-9,
        below_res,
        "x >= 1 flagged nonconvergent; x = 0.5 matches e^-x/(1+x) shift closed form",
    ));
    out
}

/// Bounded random sequence with dyadic terms, deterministic in (seed, n).
fn random_bounded_sequence(rng: &mut SplitMix64) -> FuzzySequence {
    let seed = rng.next();
    FuzzySequence::new(
        "random_bounded",
        BTreeMap::new(),
        Arc::new(move |n, m| {
            let mut local = SplitMix64::new(seed ^ (n.wrapping_mul(0x9e3779b97f4a7c15)));
            Ok(random_fuzzy(&mut local, m).scalar_mul(1.0 / 128.0).unwrap())
        }),
    )
}

/// Max termwise distance between q-th order means of p-th order means and
/// the single transform of order p + q + pq.
pub fn composition_residual(
    seq: &FuzzySequence,
    p: f64,
    q: f64,
    n_max: usize,
    levels: usize,
) -> f64 {
    let inner = match transforms::euler_means(seq, p, n_max, levels) {
        Ok(v) => v,
        Err(_) => return f64::INFINITY,
    };
    let inner_seq = {
        let store = Arc::new(inner);
        FuzzySequence::new(
            "inner_means",
            BTreeMap::new(),
            Arc::new(move |n, _m| Ok(store[n as usize].clone())),
        )
    };
    let double = match transforms::euler_means(&inner_seq, q, n_max, levels) {
        Ok(v) => v,
        Err(_) => return f64::INFINITY,
    };
    let order = transforms::euler_composed_order(p, q).unwrap();
    let direct = match transforms::euler_means(seq, order, n_max, levels) {
        Ok(v) => v,
        Err(_) => return f64::INFINITY,
    };
    let mut res = 0.0f64;
    for (a, b) in double.iter().zip(&direct) {
        res = max_residual(res, a.distance(b).unwrap());
    }
    res
}

/// Max termwise distance between the two sides of the Euler–Borel bridge:
/// Σ_{n=0}^m (p+1)ⁿ t^p_n xⁿ/n!  vs  Σ_{k=0}^m xᵏ/k!·uₖ·Σ_{n=k}^m (px)ⁿ⁻ᵏ/(n−k)!.
pub fn bridge_identity_residual(
    seq: &FuzzySequence,
    p: f64,
    x: f64,
    m_max: usize,
    levels: usize,
) -> f64 {
    let means = match transforms::euler_means(seq, p, m_max, levels) {
        Ok(v) => v,
        Err(_) => return f64::INFINITY,
    };
    let mut res = 0.0f64;
    for m_cut in 0..=m_max {
        // left side: accumulate (p+1)^n x^n / n! · t^p_n
        let mut lhs_lo = vec![0.0f64; levels + 1];
        let mut lhs_hi = vec![0.0f64; levels + 1];
        let mut w = 1.0f64;
        for n in 0..=m_cut {
            if n > 0 {
                w *= (p + 1.0) * x / n as f64;
            }
            for j in 0..=levels {
                lhs_lo[j] += w * means[n].lo()[j];
                lhs_hi[j] += w * means[n].hi()[j];
            }
        }
        // right side: x^k/k!·u_k · Σ_{n=k}^m (px)^(n-k)/(n-k)!
        let mut rhs_lo = vec![0.0f64; levels + 1];
        let mut rhs_hi = vec![0.0f64; levels + 1];
        let mut wk = 1.0f64;
        for k in 0..=m_cut {
            if k > 0 {
                wk *= x / k as f64;
            }
            let mut inner = 0.0f64;
            let mut t = 1.0f64;
            for i in 0..=(m_cut - k) {
                if i > 0 {
                    t *= p * x / i as f64;
                }
                inner += t;
            }
            let u = match seq.term(k as u64, levels) {
                Ok(u) => u,
                Err(_) => return f64::INFINITY,
            };
            for j in 0..=levels {
                rhs_lo[j] += wk * inner * u.lo()[j];
                rhs_hi[j] += wk * inner * u.hi()[j];
            }
        }
        for j in 0..=levels {
            res = max_residual(res, (lhs_lo[j] - rhs_lo[j]).abs());
            res = max_residual(res, (lhs_hi[j] - rhs_hi[j]).abs());
        }
    }
    res
}

// ---------------------------------------------------------------------------
// tauberian suite

fn tauberian_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let m = 32;

    // Cor 5.1: n·D(u_n, u_{n-1}) = o(1) + Cesàro summable ⇒ convergence
    let seq = perturbed_constant(2.0, m);
    let cond = analysis::tauberian_cesaro(&seq, 400, m, analysis::TauberianVariant::SequenceGap)
        .unwrap();
    // the mean of the n^-2 bumps decays like (pi^2/6)/N, so the Cesàro
    // limit estimate needs a few thousand terms to settle inside 1e-3
    let means = transforms::cesaro_means(&seq, 4000, m).unwrap();
    let cesaro_limit = analysis::detect_limit(&means, 1e-3, 20);
    let raw: Vec<FuzzyNumber> = (0..=400).map(|n| seq.term(n, m).unwrap()).collect();
    let raw_limit = analysis::detect_limit(&raw, 1e-3, 20);
    let agree = match (&cesaro_limit, &raw_limit) {
        (Some(a), Some(b)) => a.distance(b).unwrap(),
        _ => f64::NAN,
    };
    out.push(CheckResult::new(
        "cor5.1_cesaro_tauberian_completion",
        cond.pass && agree < 1e-3,
        agree,
        "condition holds and raw limit matches Cesàro limit",
    ));

    // Cor 5.2 series variant: n·D(u_n, 0̄) = o(1) with u_n = w/n³
    let terms = decaying_terms(3.0, m);
    let cond =
        analysis::tauberian_cesaro(&terms, 400, m, analysis::TauberianVariant::SeriesTerm)
            .unwrap();
    let sums = transforms::partial_sums(&terms, 400, m).unwrap();
    let sum_limit = analysis::detect_limit(&sums, 1e-3, 20).is_some();
    out.push(CheckResult::new(
        "cor5.2_series_variant",
        cond.pass && sum_limit,
        cond.trailing_max,
        "n·D(u_n, 0) vanishes and the partial sums converge",
    ));

    // Cor 5.3: √n·D(u_{n-1}, u_n) = o(1) with Euler summable sequence
    let seq = perturbed_constant(1.5, m);
    let cond =
        analysis::tauberian_euler(&seq, 400, m, analysis::TauberianVariant::SequenceGap).unwrap();
    let means = transforms::euler_means(&seq, 1.0, 400, m).unwrap();
    let euler_limit = analysis::detect_limit(&means, 1e-3, 20);
    let raw: Vec<FuzzyNumber> = (0..=400).map(|n| seq.term(n, m).unwrap()).collect();
    let raw_limit = analysis::detect_limit(&raw, 1e-3, 20);
    let agree = match (&euler_limit, &raw_limit) {
        (Some(a), Some(b)) => a.distance(b).unwrap(),
        _ => f64::NAN,
    };
    out.push(CheckResult::new(
        "cor5.3_euler_tauberian_completion",
        cond.pass && agree < 1e-3,
        agree,
        "condition holds and raw limit matches E_1 limit",
    ));

    // Cor 5.4 series variant: √n·D(u_n, 0̄) = o(1) with u_n = w/n²
    let terms = decaying_terms(2.0, m);
    let cond =
        analysis::tauberian_euler(&terms, 400, m, analysis::TauberianVariant::SeriesTerm).unwrap();
    let sums = transforms::partial_sums(&terms, 400, m).unwrap();
    let sum_limit = analysis::detect_limit(&sums, 1e-3, 20).is_some();
    out.push(CheckResult::new(
        "cor5.4_series_variant",
        cond.pass && sum_limit,
        cond.trailing_max,
        "sqrt(n)·D(u_n, 0) vanishes and the partial sums converge",
    ));

    // negative case: the alternating example violates the gap condition
    let alt = sequences::abel_not_cesaro();
    let cond =
        analysis::tauberian_cesaro(&alt, 200, m, analysis::TauberianVariant::SequenceGap).unwrap();
    out.push(CheckResult::new(
        "tauberian_negative_case",
        !cond.pass,
        cond.trailing_max,
        "abel_not_cesaro: n·D(u_n, u_{n-1}) grows like 2n²",
    ));
    out
}

/// uₙ = tri(0,1,2) + n^(−decay)·tri(−1,0,1): converges to tri(0,1,2).
fn perturbed_constant(decay: f64, levels: usize) -> FuzzySequence {
    let _ = levels;
    FuzzySequence::new(
        "perturbed_constant",
        BTreeMap::new(),
        Arc::new(move |n, m| {
            let base = FuzzyNumber::triangular(0.0, 1.0, 2.0, m).unwrap();
            let c = if n == 0 { 1.0 } else { (n as f64).powf(-decay) };
            let bump = FuzzyNumber::triangular(-1.0, 0.0, 1.0, m)
                .unwrap()
                .scalar_mul(c)
                .unwrap();
            Ok(base.add(&bump).unwrap())
        }),
    )
}

/// uₙ = n^(−decay)·tri(0,1,2) (u₀ = tri).
fn decaying_terms(decay: f64, levels: usize) -> FuzzySequence {
    let _ = levels;
    FuzzySequence::new(
        "decaying_terms",
        BTreeMap::new(),
        Arc::new(move |n, m| {
            let c = if n == 0 { 1.0 } else { (n as f64).powf(-decay) };
            Ok(FuzzyNumber::triangular(0.0, 1.0, 2.0, m)
                .unwrap()
                .scalar_mul(c)
                .unwrap())
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for suite in [Suite::Core, Suite::CesaroAbel, Suite::EulerBorel, Suite::Tauberian] {
            for check in run_suite(suite) {
                assert!(
                    check.pass,
                    "{}: residual {} ({})",
                    check.name, check.residual, check.detail
                );
            }
        }
    }

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert!(Suite::parse(name).is_some());
        }
        assert!(Suite::parse("bogus").is_none());
    }
}
