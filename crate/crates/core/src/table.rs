//! Labeled feature tables and the affine rescaling into the unit interval.

use crate::error::{Error, Result};

/// Dense row-major matrix of real features with optional integer class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    n_features: usize,
    values: Vec<f64>,
    labels: Option<Vec<usize>>,
    feature_names: Vec<String>,
    class_names: Vec<String>,
}

impl FeatureTable {
    /// Builds a table from rows. Every row must have `feature_names.len()` finite entries.
    pub fn new(
        rows: Vec<Vec<f64>>,
        feature_names: Vec<String>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n_features = feature_names.len();
        let mut values = Vec::with_capacity(rows.len() * n_features);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_features {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} values, expected {n_features}",
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Self::from_flat(values, feature_names, labels)
    }

    pub fn from_flat(
        values: Vec<f64>,
        feature_names: Vec<String>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n_features = feature_names.len();
        if n_features == 0 {
            if !values.is_empty() {
                return Err(Error::InvalidTable("values without feature columns".into()));
            }
        } else if !values.len().is_multiple_of(n_features) {
            return Err(Error::InvalidTable(format!(
                "{} values do not fill rows of {n_features}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidTable(format!(
                "non-finite value at row {}, column {}",
                pos / n_features,
                pos % n_features
            )));
        }
        let n_samples = values.len().checked_div(n_features).unwrap_or(0);
        if let Some(l) = &labels {
            if l.len() != n_samples {
                return Err(Error::InvalidTable(format!(
                    "{} labels for {n_samples} rows",
                    l.len()
                )));
            }
        }
        Ok(FeatureTable {
            n_features,
            values,
            labels,
            feature_names,
            class_names: Vec::new(),
        })
    }

    /// Attaches display names for the class codes. Every label must index into `names`.
    pub fn with_class_names(mut self, names: Vec<String>) -> Result<Self> {
        if let Some(labels) = &self.labels {
            if let Some(&bad) = labels.iter().find(|&&l| l >= names.len()) {
                return Err(Error::InvalidTable(format!(
                    "label {bad} has no class name ({} names)",
                    names.len()
                )));
            }
        }
        self.class_names = names;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n_samples() {
            return Err(Error::InvalidTable(format!(
                "{} labels for {} rows",
                labels.len(),
                self.n_samples()
            )));
        }
        self.labels = Some(labels);
        self.class_names.clear();
        Ok(self)
    }

    pub fn n_samples(&self) -> usize {
        self.values.len().checked_div(self.n_features).unwrap_or(0)
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn is_empty(&self) -> bool {
        self.n_samples() == 0
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        // chunks_exact panics on 0
        self.values.chunks_exact(self.n_features.max(1))
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n_features + j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// Labels, or an error naming the operation that needed them.
    pub fn require_labels(&self) -> Result<&[usize]> {
        self.labels
            .as_deref()
            .ok_or_else(|| Error::InvalidTable("table has no labels".into()))
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    /// Name for class `j`; falls back to `class <j>` when no names are attached.
    pub fn class_name(&self, j: usize) -> String {
        self.class_names
            .get(j)
            .cloned()
            .unwrap_or_else(|| format!("class {j}"))
    }

    /// Number of classes `C`: the attached name count, else `max label + 1`.
    pub fn n_classes(&self) -> usize {
        if !self.class_names.is_empty() {
            return self.class_names.len();
        }
        self.labels
            .as_ref()
            .and_then(|l| l.iter().max().map(|m| m + 1))
            .unwrap_or(0)
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes()];
        if let Some(labels) = &self.labels {
            for &l in labels {
                counts[l] += 1;
            }
        }
        counts
    }

    /// Rows at `indices`, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> FeatureTable {
        let mut values = Vec::with_capacity(indices.len() * self.n_features);
        for &i in indices {
            values.extend_from_slice(self.row(i));
        }
        FeatureTable {
            n_features: self.n_features,
            values,
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i]).collect()),
            feature_names: self.feature_names.clone(),
            class_names: self.class_names.clone(),
        }
    }

    /// Columns at `indices`, in the given order.
    pub fn select_features(&self, indices: &[usize]) -> FeatureTable {
        let mut values = Vec::with_capacity(self.n_samples() * indices.len());
        for row in self.rows() {
            values.extend(indices.iter().map(|&j| row[j]));
        }
        FeatureTable {
            n_features: indices.len(),
            values,
            labels: self.labels.clone(),
            feature_names: indices
                .iter()
                .map(|&j| self.feature_names[j].clone())
                .collect(),
            class_names: self.class_names.clone(),
        }
    }

    /// Concatenates the columns of `other` to the right. Labels are kept from `self`.
    pub fn hstack(&self, other: &FeatureTable) -> Result<FeatureTable> {
        if self.n_samples() != other.n_samples() {
            return Err(Error::Shape(format!(
                "cannot join {} rows with {} rows",
                self.n_samples(),
                other.n_samples()
            )));
        }
        let n_features = self.n_features + other.n_features;
        let mut values = Vec::with_capacity(self.n_samples() * n_features);
        for i in 0..self.n_samples() {
            values.extend_from_slice(self.row(i));
            values.extend_from_slice(other.row(i));
        }
        let mut names = self.feature_names.clone();
        names.extend(other.feature_names.iter().cloned());
        Ok(FeatureTable {
            n_features,
            values,
            labels: self.labels.clone(),
            feature_names: names,
            class_names: self.class_names.clone(),
        })
    }
}

/// Per-feature `(min, max)` recorded by [`rescale`] so unseen rows map through the same transform.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub mins: Vec<f64>,
    pub maxs: Vec<f64>,
}

impl Bounds {
    /// Columns whose min equals max; they map to 0.5.
    pub fn constant_columns(&self) -> Vec<usize> {
        self.mins
            .iter()
            .zip(&self.maxs)
            .enumerate()
            .filter(|(_, (lo, hi))| lo == hi)
            .map(|(j, _)| j)
            .collect()
    }

    pub fn has_warnings(&self) -> bool {
        !self.constant_columns().is_empty()
    }

    pub fn apply_value(&self, j: usize, x: f64) -> f64 {
        let (lo, hi) = (self.mins[j], self.maxs[j]);
        if lo == hi {
            0.5
        } else {
            ((x - lo) / (hi - lo)).clamp(0.0, 1.0)
        }
    }

    /// Maps a table through these bounds, clamping out-of-range values into `[0,1]`.
    pub fn apply(&self, table: &FeatureTable) -> Result<FeatureTable> {
        if table.n_features() != self.mins.len() {
            return Err(Error::Shape(format!(
                "bounds cover {} features, table has {}",
                self.mins.len(),
                table.n_features()
            )));
        }
        let values = table
            .values
            .iter()
            .enumerate()
            .map(|(k, &x)| self.apply_value(k % table.n_features, x))
            .collect();
        Ok(FeatureTable {
            values,
            ..table.clone()
        })
    }
}

/// Rescales each column into `[0,1]` with its own min/max.
///
/// Constant columns become 0.5 everywhere and are reported by
/// [`Bounds::constant_columns`].
pub fn rescale(table: &FeatureTable) -> Result<(FeatureTable, Bounds)> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    let d = table.n_features();
    let mut mins = vec![f64::INFINITY; d];
    let mut maxs = vec![f64::NEG_INFINITY; d];
    for row in table.rows() {
        for (j, &x) in row.iter().enumerate() {
            mins[j] = mins[j].min(x);
            maxs[j] = maxs[j].max(x);
        }
    }
    let bounds = Bounds { mins, maxs };
    for j in bounds.constant_columns() {
        log::warn!(
            "feature '{}' is constant; mapped to 0.5",
            table.feature_names()[j]
        );
    }
    let scaled = bounds.apply(table)?;
    Ok((scaled, bounds))
}
