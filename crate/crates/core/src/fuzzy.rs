//! Linguistic labels, triangular fuzzy sets and partitions of the unit interval.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a linguistic label inside its partition, ordered by peak position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub usize);

impl Label {
    pub const LOW: Label = Label(0);
    pub const MEDIUM: Label = Label(1);
    pub const HIGH: Label = Label(2);

    /// Human-readable name of this label in a partition of `k` labels.
    pub fn name(self, k: usize) -> String {
        let names: &[&str] = match k {
            2 => &["Low", "High"],
            3 => &["Low", "Medium", "High"],
            5 => &["Very Low", "Low", "Medium", "High", "Very High"],
            _ => &[],
        };
        names
            .get(self.0)
            .map(|s| s.to_string())
            .unwrap_or_else(|| format!("L{}", self.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Triangle,
    /// Saturates at 1 for every `x <= b`.
    LeftShoulder,
    /// Saturates at 1 for every `x >= b`.
    RightShoulder,
}

/// Triangular (or shoulder) fuzzy set with support points `a <= b <= c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzySet {
    pub label: Label,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub shape: Shape,
}

impl FuzzySet {
    pub fn triangle(label: Label, a: f64, b: f64, c: f64) -> Self {
        FuzzySet { label, a, b, c, shape: Shape::Triangle }
    }

    pub fn left_shoulder(label: Label, b: f64, c: f64) -> Self {
        FuzzySet { label, a: b, b, c, shape: Shape::LeftShoulder }
    }

    pub fn right_shoulder(label: Label, a: f64, b: f64) -> Self {
        FuzzySet { label, a, b, c: b, shape: Shape::RightShoulder }
    }

    pub fn peak(&self) -> f64 {
        self.b
    }

    /// Piecewise-linear membership degree of `x`.
    pub fn membership(&self, x: f64) -> f64 {
        let rising = |x: f64| {
            if x <= self.a {
                0.0
            } else {
                (x - self.a) / (self.b - self.a)
            }
        };
        let falling = |x: f64| {
            if x >= self.c {
                0.0
            } else {
                (self.c - x) / (self.c - self.b)
            }
        };
        match self.shape {
            Shape::LeftShoulder if x <= self.b => 1.0,
            Shape::LeftShoulder => falling(x),
            Shape::RightShoulder if x >= self.b => 1.0,
            Shape::RightShoulder => rising(x),
            Shape::Triangle if x == self.b => 1.0,
            Shape::Triangle if x < self.b => rising(x),
            Shape::Triangle => falling(x),
        }
    }

    /// Smallest non-zero distance between the peak and a foot of the set.
    pub(crate) fn min_half_width(&self) -> f64 {
        let left = (self.shape != Shape::LeftShoulder).then_some(self.b - self.a);
        let right = (self.shape != Shape::RightShoulder).then_some(self.c - self.b);
        left.into_iter()
            .chain(right)
            .filter(|w| *w > 0.0)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Ordered fuzzy sets covering one rescaled attribute.
///
/// Adjacent sets cross at membership 0.5 halfway between their peaks and the
/// memberships of every `x` sum to one (a strong fuzzy partition).
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticPartition {
    pub variable_index: usize,
    sets: Vec<FuzzySet>,
    pub domain_min: f64,
    pub domain_max: f64,
}

impl LinguisticPartition {
    /// Builds the partition whose label `i` peaks at `peaks[i]`.
    /// The outer sets are shoulders.
    pub fn from_peaks(variable_index: usize, peaks: &[f64]) -> Result<Self> {
        let k = peaks.len();
        if k < 2 {
            return Err(Error::Config(format!("a partition needs at least 2 labels, got {k}")));
        }
        if peaks.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Config(format!("peaks must lie in [0,1]: {peaks:?}")));
        }
        if peaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!("peaks must be strictly increasing: {peaks:?}")));
        }
        let sets = (0..k)
            .map(|i| {
                let label = Label(i);
                if i == 0 {
                    FuzzySet::left_shoulder(label, peaks[0], peaks[1])
                } else if i == k - 1 {
                    FuzzySet::right_shoulder(label, peaks[k - 2], peaks[k - 1])
                } else {
                    FuzzySet::triangle(label, peaks[i - 1], peaks[i], peaks[i + 1])
                }
            })
            .collect();
        Ok(LinguisticPartition {
            variable_index,
            sets,
            domain_min: 0.0,
            domain_max: 1.0,
        })
    }

    /// Records the raw-attribute bounds this partition was rescaled from.
    pub fn with_domain(mut self, min: f64, max: f64) -> Self {
        self.domain_min = min;
        self.domain_max = max;
        self
    }

    pub fn sets(&self) -> &[FuzzySet] {
        &self.sets
    }

    pub fn n_labels(&self) -> usize {
        self.sets.len()
    }

    pub fn peaks(&self) -> Vec<f64> {
        self.sets.iter().map(FuzzySet::peak).collect()
    }

    pub fn membership(&self, label: Label, x: f64) -> f64 {
        self.sets[label.0].membership(x)
    }

    pub fn memberships(&self, x: f64) -> Vec<f64> {
        self.sets.iter().map(|s| s.membership(x)).collect()
    }

    /// Label with the highest membership for `x` (lowest index on ties).
    pub fn best_label(&self, x: f64) -> Label {
        let mut best = (Label(0), f64::NEG_INFINITY);
        for s in &self.sets {
            let m = s.membership(x);
            if m > best.1 {
                best = (s.label, m);
            }
        }
        best.0
    }

    pub fn label_name(&self, label: Label) -> String {
        label.name(self.n_labels())
    }

    /// Lipschitz constant of every membership function in this partition.
    pub fn lipschitz(&self) -> f64 {
        1.0 / self.sets.iter().map(FuzzySet::min_half_width).fold(f64::INFINITY, f64::min)
    }
}

impl fmt::Display for LinguisticPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sets
            .iter()
            .map(|s| format!("{}@{:.4}", self.label_name(s.label), s.b))
            .collect();
        write!(f, "x{}: {}", self.variable_index, parts.join(" "))
    }
}

/// Evenly spaced partition: `k` peaks at `i/(k-1)`.
pub fn default_partition(k_labels: usize) -> Result<LinguisticPartition> {
    if k_labels < 2 {
        return Err(Error::Config(format!(
            "a partition needs at least 2 labels, got {k_labels}"
        )));
    }
    let peaks: Vec<f64> = (0..k_labels)
        .map(|i| i as f64 / (k_labels - 1) as f64)
        .collect();
    LinguisticPartition::from_peaks(0, &peaks)
}

/// Product t-norm. The empty product is 1.
pub fn product_tnorm<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().product()
}
