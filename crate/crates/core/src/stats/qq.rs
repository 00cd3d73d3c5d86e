use super::special::normal_quantile;
use super::{check_finite, StatsError};
use crate::scalar::Real;

/// Normal Q-Q points: `(theoretical, sample)` pairs with the sorted sample
/// matched to standard normal quantiles at plotting positions `(i - 0.5) / n`.
pub fn qq_data<T: Real>(values: &[T]) -> Result<Vec<(T, T)>, StatsError> {
    if values.len() < 3 {
        return Err(StatsError::TooFew { required: 3, found: values.len() });
    }
    check_finite(values)?;
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    if sorted[0] == sorted[sorted.len() - 1] {
        return Err(StatsError::Constant("sample"));
    }
    let n = T::from_count(sorted.len());
    sorted
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let pos = (T::from_count(i) + T::lit(0.5)) / n;
            Ok((normal_quantile(pos)?, v))
        })
        .collect()
}
