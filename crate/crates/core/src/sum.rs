//! Compensated summation.
//!
//! Every mean in the crate goes through [`NeumaierSum`] in input order so
//! results are reproducible bit-for-bit across runs and platforms.

use std::ops::AddAssign;

use crate::scalar::Real;

/// Kahan-Babuska (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> NeumaierSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), comp: T::zero() }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Merges another partial sum. Used for fixed-shape pairwise reductions.
    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Real> AddAssign<T> for NeumaierSum<T> {
    fn add_assign(&mut self, rhs: T) {
        self.add(rhs);
    }
}

impl<T: Real> FromIterator<T> for NeumaierSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of `values` in iteration order.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(values: I) -> T {
    values.into_iter().collect::<NeumaierSum<T>>().value()
}

/// Compensated arithmetic mean; `None` for an empty input.
pub fn compensated_mean<T: Real>(values: &[T]) -> Option<T> {
    if values.is_empty() {
        return None;
    }
    Some(compensated_sum(values.iter().copied()) / T::from_count(values.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let vals = [1.0f64, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(vals), 2.0);
        let naive: f64 = vals.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn many_small_terms() {
        let vals = vec![0.1f64; 10];
        assert_eq!(compensated_sum(vals), 1.0);
    }

    #[test]
    fn merge_matches_sequential() {
        let vals: Vec<f64> = (0..1000).map(|i| (i as f64).sin() * 1e-3 + 1.0).collect();
        let seq = compensated_sum(vals.iter().copied());
        let mut left: NeumaierSum<f64> = vals[..500].iter().copied().collect();
        let right: NeumaierSum<f64> = vals[500..].iter().copied().collect();
        left.merge(&right);
        assert!((left.value() - seq).abs() <= 1e-12);
    }

    #[test]
    fn empty_mean_is_none() {
        assert!(compensated_mean::<f64>(&[]).is_none());
        assert_eq!(compensated_mean(&[2.0f32, 4.0]), Some(3.0));
    }
}
