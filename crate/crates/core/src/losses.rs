//! Training objectives of the multi-task network with context regularization,
//! exposed as pure functions for verification and for downstream trainers.

use crate::error::{Error, Result};

/// Scores are clipped into `[CLIP_EPS, 1 - CLIP_EPS]` before taking logs.
pub const CLIP_EPS: f64 = 1e-12;

/// Weight of the classification term in [`combined_loss`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossConfig {
    pub alpha: f64,
}

impl Default for LossConfig {
    fn default() -> Self {
        LossConfig { alpha: 0.9 }
    }
}

impl LossConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Config(format!("alpha must lie in [0,1], got {alpha}")));
        }
        Ok(LossConfig { alpha })
    }
}

fn check_shapes(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<()> {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.len() != y.len()) {
        return Err(Error::Shape("matrices must have identical shapes".into()));
    }
    Ok(())
}

/// Binary cross-entropy summed over classes and averaged over samples.
///
/// `y` holds one-hot targets, `y_hat` per-class scores.
pub fn cross_entropy(y: &[Vec<f64>], y_hat: &[Vec<f64>]) -> Result<f64> {
    check_shapes(y, y_hat)?;
    if y.is_empty() {
        return Err(Error::Shape("cross-entropy of zero samples".into()));
    }
    let total: f64 = y
        .iter()
        .zip(y_hat)
        .flat_map(|(yr, hr)| yr.iter().zip(hr))
        .map(|(&t, &s)| {
            let s = s.clamp(CLIP_EPS, 1.0 - CLIP_EPS);
            t * s.ln() + (1.0 - t) * (1.0 - s).ln()
        })
        .sum();
    Ok(-total / y.len() as f64)
}

/// Mean of the author, type, school and timeframe losses.
pub fn mtl_loss(task_losses: &[f64]) -> Result<f64> {
    if task_losses.len() != 4 {
        return Err(Error::Shape(format!(
            "multi-task loss takes 4 task losses, got {}",
            task_losses.len()
        )));
    }
    Ok(task_losses.iter().sum::<f64>() / 4.0)
}

/// Smooth L1 (Huber with unit knee): `0.5 d^2` for `|d| <= 1`, else `|d| - 0.5`.
pub fn smooth_l1(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d <= 1.0 {
        0.5 * d * d
    } else {
        d - 0.5
    }
}

/// Sum of [`smooth_l1`] over all entries of a membership matrix and its reconstruction.
pub fn embedding_loss(memberships: &[Vec<f64>], reconstruction: &[Vec<f64>]) -> Result<f64> {
    check_shapes(memberships, reconstruction)?;
    Ok(memberships
        .iter()
        .zip(reconstruction)
        .flat_map(|(w, r)| w.iter().zip(r))
        .map(|(&a, &b)| smooth_l1(a, b))
        .sum())
}

/// `alpha * l_class + (1 - alpha) * l_emb`.
pub fn combined_loss(l_class: f64, l_emb: f64, config: &LossConfig) -> f64 {
    config.alpha * l_class + (1.0 - config.alpha) * l_emb
}
