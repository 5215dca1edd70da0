use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMode {
    Welch,
    Paired,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTest {
    pub mode: TestMode,
    /// Sign follows `before - after`.
    pub t: f64,
    /// Two-sided.
    pub p: f64,
    pub df: f64,
    /// Set when the variance is zero but the means differ; `t` is then infinite.
    pub infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("each sample needs at least 2 values (got {before} and {after})")]
    InsufficientSamples { before: usize, after: usize },
    #[error("paired test needs equal lengths (got {before} and {after})")]
    LengthMismatch { before: usize, after: usize },
    #[error("samples contain a non-finite value")]
    NonFinite,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance, two-pass.
fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Two-sided p-value of Student's t with `df` degrees of freedom.
pub fn student_t_two_sided(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    beta_reg(df / 2.0, 0.5, df / (df + t * t))
}

fn finish(mode: TestMode, diff: f64, se2: f64, df: f64) -> TTest {
    if se2 == 0.0 {
        let (t, p, infinite) = if diff == 0.0 {
            (0.0, 1.0, false)
        } else {
            (f64::INFINITY.copysign(diff), 0.0, true)
        };
        return TTest { mode, t, p, df, infinite };
    }
    let t = diff / se2.sqrt();
    TTest {
        mode,
        t,
        p: student_t_two_sided(t, df),
        df,
        infinite: false,
    }
}

/// Welch's unequal-variance or the paired t-test of `before` against `after`.
pub fn significance_test(before: &[f64], after: &[f64], mode: TestMode) -> Result<TTest, StatsError> {
    if before.len() < 2 || after.len() < 2 {
        return Err(StatsError::InsufficientSamples {
            before: before.len(),
            after: after.len(),
        });
    }
    if before.iter().chain(after).any(|x| !x.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    match mode {
        TestMode::Paired => {
            if before.len() != after.len() {
                return Err(StatsError::LengthMismatch {
                    before: before.len(),
                    after: after.len(),
                });
            }
            let d: Vec<f64> = before.iter().zip(after).map(|(b, a)| b - a).collect();
            let n = d.len() as f64;
            Ok(finish(mode, mean(&d), variance(&d) / n, n - 1.0))
        }
        TestMode::Welch => {
            let (n1, n2) = (before.len() as f64, after.len() as f64);
            let (q1, q2) = (variance(before) / n1, variance(after) / n2);
            let se2 = q1 + q2;
            let df = if se2 == 0.0 {
                n1 + n2 - 2.0
            } else {
                se2 * se2 / (q1 * q1 / (n1 - 1.0) + q2 * q2 / (n2 - 1.0))
            };
            Ok(finish(mode, mean(before) - mean(after), se2, df))
        }
    }
}
