//! Fixed-length encoding of a rule base plus the interior peaks of every partition.

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::fuzzy::{default_partition, Label, LinguisticPartition};
use crate::rules::{Antecedent, FuzzyRule};
use crate::table::FeatureTable;

/// Minimum distance kept between adjacent decoded peaks.
pub const MIN_PEAK_GAP: f64 = 0.01;

/// Antecedent code: 0 means the variable is absent, `l + 1` means label `l`.
pub type AntecedentCode = u8;

#[derive(Debug, Clone, PartialEq)]
pub struct RuleGene {
    pub active: bool,
    pub antecedents: Vec<AntecedentCode>,
    pub consequent: usize,
}

impl RuleGene {
    pub fn n_antecedents(&self) -> usize {
        self.antecedents.iter().filter(|&&c| c != 0).count()
    }

    /// Drops random antecedents above `max` and adds one when an active gene has none.
    fn repair<R: Rng>(&mut self, max: usize, n_labels: usize, rng: &mut R) {
        let present: Vec<usize> = (0..self.antecedents.len())
            .filter(|&v| self.antecedents[v] != 0)
            .collect();
        if present.len() > max {
            for k in sample(rng, present.len(), present.len() - max) {
                self.antecedents[present[k]] = 0;
            }
        } else if present.is_empty() && self.active && !self.antecedents.is_empty() {
            let v = rng.random_range(0..self.antecedents.len());
            self.antecedents[v] = rng.random_range(1..=n_labels) as u8;
        }
    }
}

/// Shape of the search space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layout {
    pub n_features: usize,
    pub n_classes: usize,
    pub n_labels: usize,
    pub max_rules: usize,
    pub max_antecedents: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    pub rules: Vec<RuleGene>,
    /// `n_labels - 2` interior peak genes per variable; outer peaks are pinned at 0 and 1.
    pub peaks: Vec<Vec<f64>>,
}

impl Chromosome {
    /// Random individual. Active rules copy the best-matching labels of a random
    /// training sample over a random subset of variables, and take its class.
    pub fn random<R: Rng>(layout: &Layout, table: &FeatureTable, rng: &mut R) -> Self {
        let labels = table.labels().expect("labeled table");
        let init = default_partition(layout.n_labels).expect("n_labels >= 2");
        let max_ants = layout.max_antecedents.min(layout.n_features).max(1);
        let mut rules: Vec<RuleGene> = (0..layout.max_rules)
            .map(|_| {
                let i = rng.random_range(0..table.n_samples());
                let x = table.row(i);
                let count = rng.random_range(1..=max_ants);
                let mut antecedents = vec![0; layout.n_features];
                for v in sample(rng, layout.n_features, count) {
                    antecedents[v] = init.best_label(x[v]).0 as u8 + 1;
                }
                RuleGene {
                    active: rng.random_bool(0.5),
                    antecedents,
                    consequent: labels[i],
                }
            })
            .collect();
        if !rules.iter().any(|r| r.active) {
            let k = rng.random_range(0..rules.len());
            rules[k].active = true;
        }
        let interior = init.peaks()[1..layout.n_labels - 1].to_vec();
        Chromosome {
            rules,
            peaks: vec![interior; layout.n_features],
        }
    }

    /// Decodes partitions (peaks sorted and spaced at least [`MIN_PEAK_GAP`] apart)
    /// and the active rules. Active genes without antecedents are skipped; excess
    /// antecedents beyond `max_antecedents` keep the lowest variable indices.
    pub fn decode(&self, layout: &Layout) -> (Vec<FuzzyRule>, Vec<LinguisticPartition>) {
        let partitions = self
            .peaks
            .iter()
            .enumerate()
            .map(|(v, genes)| {
                let peaks = repaired_peaks(genes);
                LinguisticPartition::from_peaks(v, &peaks).expect("repaired peaks are valid")
            })
            .collect();
        let rules = self
            .rules
            .iter()
            .filter(|g| g.active)
            .filter_map(|g| {
                let ants: Vec<Antecedent> = g
                    .antecedents
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .take(layout.max_antecedents)
                    .map(|(v, &c)| Antecedent::new(v, Label(c as usize - 1)))
                    .collect();
                FuzzyRule::new(ants, g.consequent).ok()
            })
            .collect();
        (rules, partitions)
    }

    /// Swaps whole rule slots with probability 1/2 and blends peak genes.
    pub fn crossover<R: Rng>(&self, other: &Self, rng: &mut R) -> (Self, Self) {
        let mut a = self.clone();
        let mut b = other.clone();
        for (ra, rb) in a.rules.iter_mut().zip(b.rules.iter_mut()) {
            if rng.random_bool(0.5) {
                std::mem::swap(ra, rb);
            }
        }
        for (pa, pb) in a.peaks.iter_mut().zip(b.peaks.iter_mut()) {
            for (x, y) in pa.iter_mut().zip(pb.iter_mut()) {
                let beta: f64 = rng.random();
                let (u, w) = (*x, *y);
                *x = beta * u + (1.0 - beta) * w;
                *y = (1.0 - beta) * u + beta * w;
            }
        }
        (a, b)
    }

    /// Independent per-gene mutation followed by antecedent-count repair.
    pub fn mutate<R: Rng>(&mut self, rate: f64, layout: &Layout, rng: &mut R) {
        let jitter = Normal::new(0.0, 0.1).expect("valid sigma");
        for gene in &mut self.rules {
            if rng.random_bool(rate) {
                gene.active = !gene.active;
            }
            for code in &mut gene.antecedents {
                if rng.random_bool(rate) {
                    *code = rng.random_range(0..=layout.n_labels) as u8;
                }
            }
            if rng.random_bool(rate) {
                gene.consequent = rng.random_range(0..layout.n_classes);
            }
            gene.repair(layout.max_antecedents, layout.n_labels, rng);
        }
        for p in self.peaks.iter_mut().flatten() {
            if rng.random_bool(rate) {
                *p = (*p + jitter.sample(rng)).clamp(0.0, 1.0);
            }
        }
    }
}

/// Full peak vector `[0, interior..., 1]` with interior genes sorted and spaced.
pub(crate) fn repaired_peaks(interior: &[f64]) -> Vec<f64> {
    let mut inner: Vec<f64> = interior.iter().map(|p| p.clamp(0.0, 1.0)).collect();
    inner.sort_by(f64::total_cmp);
    let n = inner.len();
    for i in 0..n {
        let lo = if i == 0 { MIN_PEAK_GAP } else { inner[i - 1] + MIN_PEAK_GAP };
        inner[i] = inner[i].max(lo);
    }
    for i in (0..n).rev() {
        let hi = if i + 1 == n { 1.0 - MIN_PEAK_GAP } else { inner[i + 1] - MIN_PEAK_GAP };
        inner[i] = inner[i].min(hi);
    }
    let mut peaks = Vec::with_capacity(n + 2);
    peaks.push(0.0);
    peaks.extend(inner);
    peaks.push(1.0);
    peaks
}
