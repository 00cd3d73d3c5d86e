use serde::Serialize;

use super::groups::{Group, GroupAssignment};
use super::linalg::solve;
use super::special::f_sf;
use super::{check_finite, StatsError};
use crate::model::{ScoreTable, Skill};
use crate::scalar::Real;
use crate::sum::{compensated_mean, compensated_sum};

/// Two-group one-way ANOVA.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnovaResult<T> {
    pub f: T,
    pub p: T,
    pub mean_a: T,
    pub mean_b: T,
    pub df_between: usize,
    pub df_within: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeveneResult<T> {
    pub w: T,
    pub p: T,
}

/// Between- and within-group sums of squares for two groups.
struct TwoGroupSs<T> {
    mean_a: T,
    mean_b: T,
    between: T,
    within: T,
    df_within: usize,
}

fn two_group_ss<T: Real>(a: &[T], b: &[T]) -> Result<TwoGroupSs<T>, StatsError> {
    for g in [a, b] {
        if g.len() < 2 {
            return Err(StatsError::TooFew { required: 2, found: g.len() });
        }
        check_finite(g)?;
    }
    let mean_a = compensated_mean(a).expect("non-empty");
    let mean_b = compensated_mean(b).expect("non-empty");
    let ss = |g: &[T], m: T| compensated_sum(g.iter().map(|&v| (v - m) * (v - m)));
    let within = ss(a, mean_a) + ss(b, mean_b);
    let (na, nb) = (T::from_count(a.len()), T::from_count(b.len()));
    let diff = mean_a - mean_b;
    // n_a n_b / n (m_a - m_b)^2, exact zero when the means coincide
    let between = na * nb / (na + nb) * diff * diff;
    Ok(TwoGroupSs { mean_a, mean_b, between, within, df_within: a.len() + b.len() - 2 })
}

/// One-way ANOVA F test for two groups, df = (1, n_a + n_b - 2).
pub fn anova_f<T: Real>(group_a: &[T], group_b: &[T]) -> Result<AnovaResult<T>, StatsError> {
    let ss = two_group_ss(group_a, group_b)?;
    let df_within = T::from_count(ss.df_within);
    let (f, p) = if ss.within.is_zero() {
        if ss.between.is_zero() {
            return Err(StatsError::UndefinedF);
        }
        (T::infinity(), T::zero())
    } else {
        let f = ss.between / (ss.within / df_within);
        (f, f_sf(f, T::one(), df_within)?)
    };
    Ok(AnovaResult { f, p, mean_a: ss.mean_a, mean_b: ss.mean_b, df_between: 1, df_within: ss.df_within })
}

/// Levene's test for equal variances, centered on the group means.
pub fn levene<T: Real>(group_a: &[T], group_b: &[T]) -> Result<LeveneResult<T>, StatsError> {
    let base = two_group_ss(group_a, group_b)?;
    let dev = |g: &[T], m: T| g.iter().map(|&v| (v - m).abs()).collect::<Vec<T>>();
    let ss = two_group_ss(&dev(group_a, base.mean_a), &dev(group_b, base.mean_b))?;
    let df_within = T::from_count(ss.df_within);
    let (w, p) = match (ss.within.is_zero(), ss.between.is_zero()) {
        // both groups constant: nothing distinguishes their spread
        (true, true) => (T::zero(), T::one()),
        (true, false) => (T::infinity(), T::zero()),
        _ => {
            let w = ss.between / (ss.within / df_within);
            (w, f_sf(w, T::one(), df_within)?)
        }
    };
    Ok(LeveneResult { w, p })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariableEffect<T> {
    pub skill: Skill,
    pub mean_a: T,
    pub mean_b: T,
    pub f: T,
    pub p: T,
}

/// Wilks' lambda over the four section scores with its exact F transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WilksLambda<T> {
    pub wilks_lambda: T,
    pub f_approx: T,
    pub df1: usize,
    pub df2: usize,
    pub p: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManovaResult<T> {
    pub n_a: usize,
    pub n_b: usize,
    /// In `Skill::ALL` order.
    pub variables: Vec<VariableEffect<T>>,
    /// `None` when the pooled covariance is singular or n is too small.
    pub overall: Option<WilksLambda<T>>,
}

impl<T> ManovaResult<T> {
    pub fn variable(&self, skill: Skill) -> Option<&VariableEffect<T>> {
        self.variables.iter().find(|v| v.skill == skill)
    }
}

/// Two-group MANOVA reported as per-variable F tests plus Wilks' lambda.
pub fn manova<T: Real>(groups: &GroupAssignment<T>, scores: &ScoreTable) -> Result<ManovaResult<T>, StatsError> {
    let mut rows_a = Vec::new();
    let mut rows_b = Vec::new();
    for (country, group) in &groups.groups {
        let row = scores.get(country).ok_or_else(|| StatsError::MissingCountry(country.clone()))?;
        match group {
            Group::A => rows_a.push(row),
            Group::B => rows_b.push(row),
        }
    }
    let column = |rows: &[&crate::model::ScoreRow], s: Skill| rows.iter().map(|r| T::lit(r.get(s))).collect::<Vec<T>>();

    let mut variables = Vec::with_capacity(Skill::ALL.len());
    for skill in Skill::ALL {
        let res = anova_f(&column(&rows_a, skill), &column(&rows_b, skill))?;
        variables.push(VariableEffect { skill, mean_a: res.mean_a, mean_b: res.mean_b, f: res.f, p: res.p });
    }

    let a: Vec<Vec<T>> = Skill::SECTIONS.iter().map(|&s| column(&rows_a, s)).collect();
    let b: Vec<Vec<T>> = Skill::SECTIONS.iter().map(|&s| column(&rows_b, s)).collect();
    let overall = wilks_two_group(&a, &b)?;
    Ok(ManovaResult { n_a: rows_a.len(), n_b: rows_b.len(), variables, overall })
}

/// Hotelling T² for two groups given column-major data (`vars[k][i]`).
fn wilks_two_group<T: Real>(a: &[Vec<T>], b: &[Vec<T>]) -> Result<Option<WilksLambda<T>>, StatsError> {
    let p = a.len();
    let (na, nb) = (a[0].len(), b[0].len());
    let n = na + nb;
    if n < p + 2 {
        return Ok(None);
    }
    let means = |g: &[Vec<T>]| g.iter().map(|c| compensated_mean(c).expect("non-empty")).collect::<Vec<T>>();
    let (ma, mb) = (means(a), means(b));
    let mut pooled = vec![vec![T::zero(); p]; p];
    for (g, m) in [(a, &ma), (b, &mb)] {
        for i in 0..p {
            for j in 0..p {
                pooled[i][j] += compensated_sum(g[i].iter().zip(&g[j]).map(|(&x, &y)| (x - m[i]) * (y - m[j])));
            }
        }
    }
    let dfw = T::from_count(n - 2);
    for row in pooled.iter_mut() {
        for v in row.iter_mut() {
            *v /= dfw;
        }
    }
    let diff: Vec<T> = ma.iter().zip(&mb).map(|(&x, &y)| x - y).collect();
    let Some(sol) = solve(pooled, diff.clone()) else {
        return Ok(None);
    };
    let quad = compensated_sum(diff.iter().zip(&sol).map(|(&d, &s)| d * s));
    let (naf, nbf) = (T::from_count(na), T::from_count(nb));
    let t2 = naf * nbf / (naf + nbf) * quad;
    let lambda = T::one() / (T::one() + t2 / dfw);
    let (df1, df2) = (p, n - p - 1);
    let f = T::from_count(df2) / (T::from_count(p) * dfw) * t2;
    let pval = f_sf(f, T::from_count(df1), T::from_count(df2))?;
    Ok(Some(WilksLambda { wilks_lambda: lambda, f_approx: f, df1, df2, p: pval }))
}
