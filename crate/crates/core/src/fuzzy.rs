//! Fuzzy numbers represented by sampled α-cuts.
//!
//! A fuzzy number is stored as `M + 1` closed intervals `[lo[j], hi[j]]`
//! sampled on the uniform α-grid `α_j = j / M`, `j = 0..=M`. Validity means
//! every cut is a nonempty interval, the cuts are nested (`lo` nondecreasing,
//! `hi` nonincreasing in `j`) and every endpoint is finite. All constructors
//! validate; the arithmetic here is closed over valid inputs, so operation
//! results skip re-validation.

use serde::Serialize;
use thiserror::Error;

/// Errors from fuzzy-number construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Construction found arrays that are not nested α-cuts. `level` is the
    /// first offending grid index.
    #[error("invalid fuzzy number at level {level}: {reason}")]
    InvalidFuzzyNumber { level: usize, reason: String },
    /// Binary operation on fuzzy numbers with different α-grids.
    #[error("grid mismatch: {0} levels vs {1} levels")]
    GridMismatch(usize, usize),
}

/// Absolute tolerance used for approximate comparisons.
///
/// `ALGEBRAIC` is the default for identities that hold in endpoint
/// arithmetic, `LIMIT` for numerically estimated limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs_tol: f64,
}

impl Tolerance {
    pub const ALGEBRAIC: Tolerance = Tolerance { abs_tol: 1e-9 };
    pub const LIMIT: Tolerance = Tolerance { abs_tol: 1e-6 };

    pub fn new(abs_tol: f64) -> Result<Self, FuzzyError> {
        if !(abs_tol >= 0.0) {
            return Err(FuzzyError::InvalidInput(format!(
                "tolerance must be nonnegative, got {abs_tol}"
            )));
        }
        Ok(Tolerance { abs_tol })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::ALGEBRAIC
    }
}

/// A fuzzy number as nested α-cut intervals on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzyNumber {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl FuzzyNumber {
    /// Builds a fuzzy number from endpoint arrays `lo[j] = u⁻(α_j)`,
    /// `hi[j] = u⁺(α_j)`, validating nestedness, ordering and finiteness.
    /// The arrays must have equal length ≥ 2 (grid size M ≥ 1).
    pub fn from_alpha_cuts(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, FuzzyError> {
        if lo.len() != hi.len() {
            return Err(FuzzyError::InvalidInput(format!(
                "endpoint arrays differ in length: {} vs {}",
                lo.len(),
                hi.len()
            )));
        }
        if lo.len() < 2 {
            return Err(FuzzyError::InvalidInput(format!(
                "need at least 2 grid samples, got {}",
                lo.len()
            )));
        }
        for j in 0..lo.len() {
            if !lo[j].is_finite() || !hi[j].is_finite() {
                return Err(FuzzyError::InvalidFuzzyNumber {
                    level: j,
                    reason: format!("non-finite endpoint ({}, {})", lo[j], hi[j]),
                });
            }
            if lo[j] > hi[j] {
                return Err(FuzzyError::InvalidFuzzyNumber {
                    level: j,
                    reason: format!("empty cut: lo {} > hi {}", lo[j], hi[j]),
                });
            }
            if j > 0 {
                if lo[j] < lo[j - 1] {
                    return Err(FuzzyError::InvalidFuzzyNumber {
                        level: j,
                        reason: format!("lo decreases: {} -> {}", lo[j - 1], lo[j]),
                    });
                }
                if hi[j] > hi[j - 1] {
                    return Err(FuzzyError::InvalidFuzzyNumber {
                        level: j,
                        reason: format!("hi increases: {} -> {}", hi[j - 1], hi[j]),
                    });
                }
            }
        }
        Ok(FuzzyNumber { lo, hi })
    }

    /// The crisp number r̄: every α-cut is the singleton `{r}`.
    pub fn crisp(r: f64, levels: usize) -> Result<Self, FuzzyError> {
        if !r.is_finite() {
            return Err(FuzzyError::InvalidInput(format!("non-finite value {r}")));
        }
        if levels == 0 {
            return Err(FuzzyError::InvalidInput("grid size M must be >= 1".into()));
        }
        Ok(FuzzyNumber {
            lo: vec![r; levels + 1],
            hi: vec![r; levels + 1],
        })
    }

    /// Triangular fuzzy number with support `[a, c]` and core `{b}`:
    /// α-cut `[a + (b−a)α, c − (c−b)α]`.
    pub fn triangular(a: f64, b: f64, c: f64, levels: usize) -> Result<Self, FuzzyError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(FuzzyError::InvalidInput(format!(
                "non-finite triangle ({a}, {b}, {c})"
            )));
        }
        if !(a <= b && b <= c) {
            return Err(FuzzyError::InvalidInput(format!(
                "triangle ordering violated: need a <= b <= c, got ({a}, {b}, {c})"
            )));
        }
        if levels == 0 {
            return Err(FuzzyError::InvalidInput("grid size M must be >= 1".into()));
        }
        let m = levels as f64;
        let lo = (0..=levels).map(|j| a + (b - a) * (j as f64 / m)).collect();
        let hi = (0..=levels).map(|j| c - (c - b) * (j as f64 / m)).collect();
        Ok(FuzzyNumber { lo, hi })
    }

    /// Number of grid intervals M (the arrays hold M + 1 samples).
    pub fn levels(&self) -> usize {
        self.lo.len() - 1
    }

    /// Grid value `α_j = j / M`.
    pub fn alpha(&self, j: usize) -> f64 {
        j as f64 / self.levels() as f64
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    /// The α-cut `[lo[j], hi[j]]` at grid index `j`.
    pub fn cut(&self, j: usize) -> (f64, f64) {
        (self.lo[j], self.hi[j])
    }

    fn check_grid(&self, other: &FuzzyNumber) -> Result<(), FuzzyError> {
        if self.levels() != other.levels() {
            return Err(FuzzyError::GridMismatch(self.levels(), other.levels()));
        }
        Ok(())
    }

    /// Endpoint-wise addition: `[u+v]_α = [u⁻+v⁻, u⁺+v⁺]`.
    ///
    /// Addition of valid numbers is valid (f64 addition is monotone in each
    /// operand, so nestedness and ordering survive rounding).
    pub fn add(&self, other: &FuzzyNumber) -> Result<FuzzyNumber, FuzzyError> {
        self.check_grid(other)?;
        let lo = self.lo.iter().zip(&other.lo).map(|(a, b)| a + b).collect();
        let hi = self.hi.iter().zip(&other.hi).map(|(a, b)| a + b).collect();
        Ok(FuzzyNumber { lo, hi })
    }

    /// Scalar multiplication `[k·u]_α = k·[u]_α`; negative `k` swaps the
    /// interval endpoints.
    pub fn scalar_mul(&self, k: f64) -> Result<FuzzyNumber, FuzzyError> {
        if !k.is_finite() {
            return Err(FuzzyError::InvalidInput(format!("non-finite scalar {k}")));
        }
        if k >= 0.0 {
            Ok(FuzzyNumber {
                lo: self.lo.iter().map(|v| k * v).collect(),
                hi: self.hi.iter().map(|v| k * v).collect(),
            })
        } else {
            Ok(FuzzyNumber {
                lo: self.hi.iter().map(|v| k * v).collect(),
                hi: self.lo.iter().map(|v| k * v).collect(),
            })
        }
    }

    /// The metric `D(u, v) = sup_α max(|u⁻−v⁻|, |u⁺−v⁺|)`, approximated by
    /// the maximum over the shared α-grid.
    ///
    /// This is a grid max, hence a lower bound on the true supremum; it is
    /// exact whenever the endpoint differences are monotone in α (true for
    /// every closed-form example exercised here, where the sup sits at α = 0
    /// or α = 1).
    pub fn distance(&self, other: &FuzzyNumber) -> Result<f64, FuzzyError> {
        self.check_grid(other)?;
        let mut d = 0.0f64;
        for j in 0..self.lo.len() {
            d = d.max((self.lo[j] - other.lo[j]).abs());
            d = d.max((self.hi[j] - other.hi[j]).abs());
        }
        Ok(d)
    }

    /// `D(u, 0̄)`: largest endpoint magnitude over the grid.
    pub fn norm(&self) -> f64 {
        let mut d = 0.0f64;
        for j in 0..self.lo.len() {
            d = d.max(self.lo[j].abs());
            d = d.max(self.hi[j].abs());
        }
        d
    }

    /// Endpoint arrays equal within `tol.abs_tol` (exact equality for
    /// `abs_tol = 0`).
    pub fn approx_eq(&self, other: &FuzzyNumber, tol: Tolerance) -> bool {
        self.levels() == other.levels()
            && self.distance(other).map(|d| d <= tol.abs_tol).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crisp_zero_and_one() {
        let z = FuzzyNumber::crisp(0.0, 4).unwrap();
        assert_eq!(z.lo(), &[0.0; 5]);
        assert_eq!(z.hi(), &[0.0; 5]);
        let one = FuzzyNumber::crisp(1.0, 2).unwrap();
        assert_eq!(one.lo(), &[1.0, 1.0, 1.0]);
        assert_eq!(one.hi(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn crisp_rejects_non_finite() {
        assert!(matches!(
            FuzzyNumber::crisp(f64::NAN, 4),
            Err(FuzzyError::InvalidInput(_))
        ));
        assert!(matches!(
            FuzzyNumber::crisp(f64::INFINITY, 4),
            Err(FuzzyError::InvalidInput(_))
        ));
    }

    #[test]
    fn crisp_is_neutral_for_addition() {
        let u = FuzzyNumber::triangular(-1.5, 0.25, 3.0, 16).unwrap();
        let z = FuzzyNumber::crisp(0.0, 16).unwrap();
        assert_eq!(u.add(&z).unwrap(), u);
        assert_eq!(z.add(&u).unwrap(), u);
    }

    #[test]
    fn triangular_cuts() {
        // [μ]_α = [α, 2−α]
        let t = FuzzyNumber::triangular(0.0, 1.0, 2.0, 4).unwrap();
        assert_eq!(t.cut(0), (0.0, 2.0));
        assert_eq!(t.cut(2), (0.5, 1.5));
        assert_eq!(t.cut(4), (1.0, 1.0));
        // degenerate triangle is crisp
        let c = FuzzyNumber::triangular(5.0, 5.0, 5.0, 8).unwrap();
        assert_eq!(c, FuzzyNumber::crisp(5.0, 8).unwrap());
        // M = 1: core at α = 1 is the peak
        let t1 = FuzzyNumber::triangular(0.0, 1.0, 2.0, 1).unwrap();
        assert_eq!(t1.cut(1), (1.0, 1.0));
    }

    #[test]
    fn triangular_rejects_misordered() {
        assert!(FuzzyNumber::triangular(1.0, 0.0, 2.0, 4).is_err());
        assert!(FuzzyNumber::triangular(0.0, 3.0, 2.0, 4).is_err());
    }

    #[test]
    fn from_alpha_cuts_validation() {
        assert!(FuzzyNumber::from_alpha_cuts(vec![0.0, 1.0], vec![2.0, 1.0]).is_ok());
        // lo decreasing
        let err = FuzzyNumber::from_alpha_cuts(vec![1.0, 0.0], vec![2.0, 2.0]).unwrap_err();
        assert_eq!(
            err,
            FuzzyError::InvalidFuzzyNumber {
                level: 1,
                reason: "lo decreases: 1 -> 0".into()
            }
        );
        // empty cut at level 1
        let err = FuzzyNumber::from_alpha_cuts(vec![0.0, 1.0], vec![2.0, 0.0]).unwrap_err();
        assert!(matches!(err, FuzzyError::InvalidFuzzyNumber { level: 1, .. }));
        // non-finite
        assert!(FuzzyNumber::from_alpha_cuts(vec![0.0, f64::NAN], vec![2.0, 1.0]).is_err());
        // too short
        assert!(FuzzyNumber::from_alpha_cuts(vec![0.0], vec![1.0]).is_err());
    }

    #[test]
    fn add_matches_interval_oracle() {
        // triangular(0,1,2) + triangular(0,1,2) has α-cut [2α, 4−2α]
        let t = FuzzyNumber::triangular(0.0, 1.0, 2.0, 8).unwrap();
        let s = t.add(&t).unwrap();
        for j in 0..=8 {
            let a = j as f64 / 8.0;
            assert_eq!(s.cut(j), (2.0 * a, 4.0 - 2.0 * a));
        }
        let three = FuzzyNumber::crisp(3.0, 8).unwrap();
        let neg = FuzzyNumber::crisp(-3.0, 8).unwrap();
        assert_eq!(three.add(&neg).unwrap(), FuzzyNumber::crisp(0.0, 8).unwrap());
    }

    #[test]
    fn add_rejects_grid_mismatch() {
        let a = FuzzyNumber::crisp(1.0, 4).unwrap();
        let b = FuzzyNumber::crisp(1.0, 8).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), FuzzyError::GridMismatch(4, 8));
        assert_eq!(a.distance(&b).unwrap_err(), FuzzyError::GridMismatch(4, 8));
    }

    #[test]
    fn scalar_mul_sign_handling() {
        let t = FuzzyNumber::triangular(0.0, 1.0, 2.0, 8).unwrap();
        assert_eq!(t.scalar_mul(1.0).unwrap(), t);
        // −1 · [α, 2−α] = [−(2−α), −α]
        let n = t.scalar_mul(-1.0).unwrap();
        for j in 0..=8 {
            let a = j as f64 / 8.0;
            assert_eq!(n.cut(j), (-(2.0 - a), -a));
        }
        assert_eq!(
            t.scalar_mul(0.0).unwrap(),
            FuzzyNumber::crisp(0.0, 8).unwrap()
        );
        assert!(t.scalar_mul(f64::NAN).is_err());
    }

    #[test]
    fn distance_examples() {
        let t = FuzzyNumber::triangular(0.0, 1.0, 2.0, 8).unwrap();
        assert_eq!(t.distance(&t).unwrap(), 0.0);
        // sup_α max(α, 2−α) = 2 at α = 0
        let z = FuzzyNumber::crisp(0.0, 8).unwrap();
        assert_eq!(t.distance(&z).unwrap(), 2.0);
        assert_eq!(t.norm(), 2.0);
    }

    #[test]
    fn mixed_sign_non_distributivity_witness() {
        // (1 + (−1))·u = 0̄ but 1·u + (−1)·u has α-cut [2α−2, 2−2α]
        let u = FuzzyNumber::triangular(0.0, 1.0, 2.0, 8).unwrap();
        let collapsed = u.scalar_mul(1.0 + -1.0).unwrap();
        assert_eq!(collapsed, FuzzyNumber::crisp(0.0, 8).unwrap());
        let spread = u
            .scalar_mul(1.0)
            .unwrap()
            .add(&u.scalar_mul(-1.0).unwrap())
            .unwrap();
        for j in 0..=8 {
            let a = j as f64 / 8.0;
            assert_eq!(spread.cut(j), (2.0 * a - 2.0, 2.0 - 2.0 * a));
        }
        assert_eq!(collapsed.distance(&spread).unwrap(), 2.0);
    }
}
