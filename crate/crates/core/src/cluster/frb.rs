//! Fuzzy rule-based clustering with possibilistic memberships.
//!
//! Each round draws synthetic samples uniformly over the bounding box of the
//! data still unassigned, enumerates short fuzzy rules, keeps those whose
//! consequent is "real" (more firing mass on the data than on the synthetic
//! samples), and selects the one with the highest mean firing over the data.
//! That rule's firing strength is the membership of every remaining sample in
//! the new cluster; samples above 0.5 are removed. The loop ends when no
//! sample remains.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Algorithm, ContextEmbedding};
use crate::error::{Error, Result};
use crate::fuzzy::{default_partition, Label, LinguisticPartition};
use crate::rules::{Antecedent, FuzzyRule};
use crate::table::FeatureTable;

/// Membership above which a sample is assigned to the current cluster.
pub const REMOVAL_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct FrbConfig {
    pub seed: u64,
    pub max_antecedents: usize,
    pub n_labels: usize,
    /// Redraws allowed per round while the synthetic set is tighter than the data.
    pub max_regenerations: usize,
}

impl Default for FrbConfig {
    fn default() -> Self {
        FrbConfig {
            seed: 0,
            max_antecedents: 2,
            n_labels: 3,
            max_regenerations: 20,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FrbResult {
    pub embedding: ContextEmbedding,
    /// Rule selected for each cluster; consequent 0 stands for "real".
    pub rules: Vec<FuzzyRule>,
    /// Rounds where nothing exceeded the threshold and the top sample was removed by force.
    pub forced_removals: usize,
    /// Rounds that used the widest synthetic draw after exhausting regenerations.
    pub regeneration_cap_hits: usize,
    /// Rounds where no candidate rule had a "real" consequent.
    pub nondiscriminating_rounds: usize,
}

impl FrbResult {
    /// Some safeguard altered the plain loop.
    pub fn flagged(&self) -> bool {
        self.forced_removals + self.regeneration_cap_hits + self.nondiscriminating_rounds > 0
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Every rule with 1..=`max_len` antecedents over distinct variables, in
/// lexicographic order of `(variable, label)` pairs.
fn enumerate_antecedents(n_features: usize, n_labels: usize, max_len: usize) -> Vec<Vec<Antecedent>> {
    fn extend(
        start: usize,
        n_features: usize,
        n_labels: usize,
        max_len: usize,
        current: &mut Vec<Antecedent>,
        out: &mut Vec<Vec<Antecedent>>,
    ) {
        for v in start..n_features {
            for l in 0..n_labels {
                current.push(Antecedent::new(v, Label(l)));
                out.push(current.clone());
                if current.len() < max_len {
                    extend(v + 1, n_features, n_labels, max_len, current, out);
                }
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(0, n_features, n_labels, max_len, &mut Vec::new(), &mut out);
    out
}

/// Memberships of each sample to each `(variable, label)`, flattened.
fn membership_cache(rows: &[&[f64]], partition: &LinguisticPartition) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|x| x.iter().flat_map(|&v| partition.memberships(v)).collect())
        .collect()
}

fn fire(cache: &[f64], ants: &[Antecedent], n_labels: usize) -> f64 {
    ants.iter()
        .map(|a| cache[a.variable * n_labels + a.label.0])
        .product()
}

fn mean_distance_to_centroid(rows: &[&[f64]]) -> f64 {
    let n = rows.len() as f64;
    let d = rows[0].len();
    let centroid: Vec<f64> = (0..d)
        .map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n)
        .collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(&centroid)
                .map(|(x, c)| (x - c) * (x - c))
                .sum::<f64>()
                .sqrt()
        })
        .sum::<f64>()
        / n
}

/// Runs rule-based clustering on a table rescaled into `[0,1]`.
///
/// Processing happens in lexicographic row order, so permuting the input rows
/// permutes the output rows identically.
pub fn frb_cluster(data: &FeatureTable, config: &FrbConfig) -> Result<FrbResult> {
    if config.max_antecedents < 1 {
        return Err(Error::Config("max_antecedents must be >= 1".into()));
    }
    let partition = default_partition(config.n_labels)?;
    let n = data.n_samples();
    let d = data.n_features();
    if n > 0 && d == 0 {
        return Err(Error::InvalidTable("rule-based clustering needs at least one feature".into()));
    }
    if data.values().iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::InvalidTable("rule-based clustering expects data rescaled to [0,1]".into()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| lexicographic(data.row(a), data.row(b)));
    let rows: Vec<&[f64]> = order.iter().map(|&i| data.row(i)).collect();
    let cache = membership_cache(&rows, &partition);
    let candidates = enumerate_antecedents(d, config.n_labels, config.max_antecedents.min(d.max(1)));
    let k = config.n_labels;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    let mut chosen_rules = Vec::new();
    let (mut forced, mut cap_hits, mut nondiscriminating) = (0, 0, 0);

    while !remaining.is_empty() {
        let real: Vec<&[f64]> = remaining.iter().map(|&i| rows[i]).collect();
        let q = mean_distance_to_centroid(&real);
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for r in &real {
            for j in 0..d {
                lo[j] = lo[j].min(r[j]);
                hi[j] = hi[j].max(r[j]);
            }
        }

        let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
        let mut accepted = false;
        for _ in 0..=config.max_regenerations {
            let synth: Vec<Vec<f64>> = (0..real.len())
                .map(|_| (0..d).map(|j| lo[j] + (hi[j] - lo[j]) * rng.random::<f64>()).collect())
                .collect();
            let synth_refs: Vec<&[f64]> = synth.iter().map(Vec::as_slice).collect();
            let q_synth = mean_distance_to_centroid(&synth_refs);
            let wider = best.as_ref().is_none_or(|(bq, _)| q_synth > *bq);
            if wider {
                best = Some((q_synth, synth));
            }
            if q_synth >= q {
                accepted = true;
                break;
            }
        }
        if !accepted {
            cap_hits += 1;
        }
        let synth = best.expect("at least one draw").1;
        let synth_refs: Vec<&[f64]> = synth.iter().map(Vec::as_slice).collect();
        let synth_cache = membership_cache(&synth_refs, &partition);

        // (score, index) of the best "real" candidate and of the best candidate overall
        let mut best_real: Option<(f64, usize)> = None;
        let mut best_any: Option<(f64, usize)> = None;
        for (ci, ants) in candidates.iter().enumerate() {
            let real_mass: f64 = remaining.iter().map(|&i| fire(&cache[i], ants, k)).sum();
            let synth_mass: f64 = synth_cache.iter().map(|c| fire(c, ants, k)).sum();
            let score = real_mass / remaining.len() as f64;
            if best_any.is_none_or(|(s, _)| score > s) {
                best_any = Some((score, ci));
            }
            if real_mass >= synth_mass && best_real.is_none_or(|(s, _)| score > s) {
                best_real = Some((score, ci));
            }
        }
        let (_, chosen) = match best_real {
            Some(b) => b,
            None => {
                nondiscriminating += 1;
                best_any.expect("candidate set is non-empty")
            }
        };
        let ants = &candidates[chosen];

        let mut column = vec![0.0; n];
        for &i in &remaining {
            column[i] = fire(&cache[i], ants, k);
        }
        let before = remaining.len();
        remaining.retain(|&i| column[i] <= REMOVAL_THRESHOLD);
        if remaining.len() == before {
            forced += 1;
            let top = remaining
                .iter()
                .enumerate()
                .fold(0, |b, (p, &i)| if column[i] > column[remaining[b]] { p } else { b });
            remaining.remove(top);
        }
        columns.push(column);
        chosen_rules.push(FuzzyRule::new(ants.clone(), 0)?);
    }

    let n_clusters = columns.len();
    let mut memberships = vec![Vec::new(); n];
    for (pos, &original) in order.iter().enumerate() {
        memberships[original] = columns.iter().map(|c| c[pos]).collect();
    }
    if forced > 0 || cap_hits > 0 || nondiscriminating > 0 {
        log::warn!(
            "rule-based clustering safeguards used: {forced} forced removals, {cap_hits} regeneration caps, {nondiscriminating} non-discriminating rounds"
        );
    }
    Ok(FrbResult {
        embedding: ContextEmbedding::new(Algorithm::Frb, n_clusters, memberships)?,
        rules: chosen_rules,
        forced_removals: forced,
        regeneration_cap_hits: cap_hits,
        nondiscriminating_rounds: nondiscriminating,
    })
}
