use serde::Serialize;

use super::{check_finite, StatsError};
use crate::scalar::Real;
use crate::sum::{compensated_mean, compensated_sum};

/// Count, mean and sample standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Descriptives<T> {
    pub n: usize,
    pub mean: T,
    /// n - 1 denominator; `None` for a single observation.
    pub sd: Option<T>,
}

pub fn descriptives<T: Real>(values: &[T]) -> Result<Descriptives<T>, StatsError> {
    check_finite(values)?;
    let mean = compensated_mean(values).ok_or(StatsError::Empty)?;
    let n = values.len();
    let sd = (n >= 2).then(|| {
        let ss = compensated_sum(values.iter().map(|&v| (v - mean) * (v - mean)));
        (ss / T::from_count(n - 1)).sqrt()
    });
    Ok(Descriptives { n, mean, sd })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let d = descriptives(&[5.0, 5.0, 5.0]).unwrap();
        assert_eq!((d.n, d.mean, d.sd), (3, 5.0, Some(0.0)));
        let d = descriptives(&[1.0f64, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(d.mean, 2.5);
        // sqrt(5/3)
        assert!((d.sd.unwrap() - 1.290_994_448_735_805_6).abs() < 1e-15);
        let d = descriptives(&[7.0f32]).unwrap();
        assert_eq!(d.sd, None);
    }

    #[test]
    fn errors() {
        assert_eq!(descriptives::<f64>(&[]), Err(StatsError::Empty));
        assert_eq!(descriptives(&[1.0, f64::NAN]), Err(StatsError::NonFinite));
    }

    #[test]
    fn demo_total_column() {
        // 2019 example rows: 98, 92, 86, 80, 74
        let d = descriptives(&[98.0f64, 92.0, 86.0, 80.0, 74.0]).unwrap();
        assert_eq!(d.mean, 86.0);
        assert!((d.sd.unwrap() - 90.0f64.sqrt()).abs() < 1e-13);
    }
}
