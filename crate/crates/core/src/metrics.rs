//! Classification metrics: accuracy and the Matthews correlation coefficient.

use crate::error::{Error, Result};

/// Binary confusion counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BinaryCounts {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    pub fn_: u64,
}

impl BinaryCounts {
    pub fn new(tp: u64, tn: u64, fp: u64, fn_: u64) -> Self {
        BinaryCounts { tp, tn, fp, fn_ }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }

    /// MCC; 0 when any factor of the denominator is 0.
    pub fn mcc(&self) -> f64 {
        let (tp, tn, fp, fn_) = (
            self.tp as i128,
            self.tn as i128,
            self.fp as i128,
            self.fn_ as i128,
        );
        let factors = [tp + fp, tp + fn_, tn + fp, tn + fn_];
        if factors.contains(&0) {
            return 0.0;
        }
        let num = tp * tn - fp * fn_;
        let den = ((factors[0] * factors[1]) as f64 * (factors[2] * factors[3]) as f64).sqrt();
        num as f64 / den
    }
}

/// `C x C` confusion matrix; rows are true classes, columns predicted classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    n_classes: usize,
    counts: Vec<u64>,
}

impl ConfusionMatrix {
    pub fn new(n_classes: usize) -> Self {
        ConfusionMatrix {
            n_classes,
            counts: vec![0; n_classes * n_classes],
        }
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("confusion matrix must be square".into()));
        }
        Ok(ConfusionMatrix {
            n_classes: n,
            counts: rows.concat(),
        })
    }

    pub fn from_predictions(predictions: &[usize], labels: &[usize], n_classes: usize) -> Result<Self> {
        check_lengths(predictions, labels)?;
        let mut m = ConfusionMatrix::new(n_classes);
        for (&p, &t) in predictions.iter().zip(labels) {
            if p >= n_classes || t >= n_classes {
                return Err(Error::Shape(format!(
                    "class index out of range for {n_classes} classes"
                )));
            }
            m.counts[t * n_classes + p] += 1;
        }
        Ok(m)
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn get(&self, truth: usize, predicted: usize) -> u64 {
        self.counts[truth * self.n_classes + predicted]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Binary counts treating `positive` as the positive class.
    pub fn binary(&self, positive: usize) -> BinaryCounts {
        let mut b = BinaryCounts::default();
        for t in 0..self.n_classes {
            for p in 0..self.n_classes {
                let c = self.get(t, p);
                match (t == positive, p == positive) {
                    (true, true) => b.tp += c,
                    (false, false) => b.tn += c,
                    (false, true) => b.fp += c,
                    (true, false) => b.fn_ += c,
                }
            }
        }
        b
    }

    /// Generalized (Gorodkin) MCC; equals the binary formula when `C = 2`.
    pub fn mcc(&self) -> f64 {
        let n = self.n_classes;
        let mut correct: i128 = 0;
        let mut predicted = vec![0i128; n];
        let mut truth = vec![0i128; n];
        for (t, truth_t) in truth.iter_mut().enumerate() {
            for (p, predicted_p) in predicted.iter_mut().enumerate() {
                let c = self.get(t, p) as i128;
                if t == p {
                    correct += c;
                }
                *predicted_p += c;
                *truth_t += c;
            }
        }
        let s: i128 = truth.iter().sum();
        let cross: i128 = predicted.iter().zip(&truth).map(|(p, t)| p * t).sum();
        let pred_sq: i128 = predicted.iter().map(|p| p * p).sum();
        let truth_sq: i128 = truth.iter().map(|t| t * t).sum();
        let (a, b) = (s * s - pred_sq, s * s - truth_sq);
        if a == 0 || b == 0 {
            return 0.0;
        }
        (correct * s - cross) as f64 / (a as f64 * b as f64).sqrt()
    }

    pub fn accuracy(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let correct: u64 = (0..self.n_classes).map(|k| self.get(k, k)).sum();
        correct as f64 / total as f64
    }
}

fn check_lengths(predictions: &[usize], labels: &[usize]) -> Result<()> {
    if predictions.len() != labels.len() {
        return Err(Error::Shape(format!(
            "{} predictions for {} labels",
            predictions.len(),
            labels.len()
        )));
    }
    Ok(())
}

/// Fraction of exact matches.
pub fn accuracy(predictions: &[usize], labels: &[usize]) -> Result<f64> {
    check_lengths(predictions, labels)?;
    if labels.is_empty() {
        return Err(Error::Shape("accuracy of zero samples".into()));
    }
    let hits = predictions.iter().zip(labels).filter(|(p, t)| p == t).count();
    Ok(hits as f64 / labels.len() as f64)
}

/// MCC of `predictions` against `labels` over `n_classes` classes.
pub fn mcc(predictions: &[usize], labels: &[usize], n_classes: usize) -> Result<f64> {
    Ok(ConfusionMatrix::from_predictions(predictions, labels, n_classes)?.mcc())
}
