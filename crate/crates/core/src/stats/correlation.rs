use serde::Serialize;

use super::special::student_t_two_tailed;
use super::{check_finite, StatsError};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PearsonResult<T> {
    pub r: T,
    pub n: usize,
    pub t_stat: T,
    /// Two-tailed, n - 2 degrees of freedom.
    pub p_two_tailed: T,
}

/// Pearson product-moment correlation with its two-tailed t test.
///
/// Co-moments are accumulated in one pass with Welford's update.
pub fn pearson<T: Real>(x: &[T], y: &[T]) -> Result<PearsonResult<T>, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    if n < 3 {
        return Err(StatsError::TooFew { required: 3, found: n });
    }
    check_finite(x)?;
    check_finite(y)?;

    let (mut mx, mut my) = (T::zero(), T::zero());
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for (k, (&xi, &yi)) in x.iter().zip(y).enumerate() {
        let count = T::from_count(k + 1);
        let dx = xi - mx;
        let dy = yi - my;
        mx += dx / count;
        my += dy / count;
        sxx += dx * (xi - mx);
        syy += dy * (yi - my);
        sxy += dx * (yi - my);
    }
    if sxx.is_zero() {
        return Err(StatsError::Constant("x"));
    }
    if syy.is_zero() {
        return Err(StatsError::Constant("y"));
    }
    let r = (sxy / (sxx * syy).sqrt()).max(-T::one()).min(T::one());
    let df = T::from_count(n - 2);
    let (t_stat, p) = if r.abs() == T::one() {
        (r * T::infinity(), T::zero())
    } else {
        let t = r * (df / (T::one() - r * r)).sqrt();
        (t, student_t_two_tailed(t, df)?)
    };
    Ok(PearsonResult { r, n, t_stat, p_two_tailed: p.max(T::zero()).min(T::one()) })
}

/// `*` p < 0.05, `**` p < 0.01, `***` p < 0.001.
pub fn significance_stars<T: Real>(p: T) -> &'static str {
    if p < T::lit(0.001) {
        "***"
    } else if p < T::lit(0.01) {
        "**"
    } else if p < T::lit(0.05) {
        "*"
    } else {
        ""
    }
}
