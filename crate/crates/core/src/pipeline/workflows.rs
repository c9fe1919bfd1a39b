//! The two end-to-end rule-learning workflows and their sampling helpers.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ga::{above_average, evolve_detailed, rank_features, top_k, FeatureScore, Fitness, GaConfig};
use crate::rules::{rule_report, RuleReport};
use crate::rules::RuleBase;
use crate::table::{rescale, Bounds, FeatureTable};

/// Fewest samples a class may have in a train/test workflow.
pub const MIN_CLASS_SAMPLES: usize = 4;

/// Settings shared by the training workflows.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkflowConfig {
    pub ga: GaConfig,
    /// Features kept after ranking in the discrimination workflow.
    pub top_k: usize,
    pub test_fraction: f64,
    /// Downsample every class to the minority count before splitting.
    pub balance: bool,
    pub seed: u64,
}

impl Default for WorkflowConfig {
    fn default() -> Self {
        WorkflowConfig {
            ga: GaConfig::default(),
            top_k: 7,
            test_fraction: 0.2,
            balance: false,
            seed: 0,
        }
    }
}

impl WorkflowConfig {
    pub fn validate(&self) -> Result<()> {
        self.ga.validate()?;
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return Err(Error::Config(format!(
                "test_fraction must lie in (0,1), got {}",
                self.test_fraction
            )));
        }
        if self.top_k == 0 {
            return Err(Error::Config("top_k must be >= 1".into()));
        }
        Ok(())
    }
}

/// Independent seed for sub-task `stream` of a run seeded with `master`.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    // splitmix64 finalizer over the combined value
    let mut z = master ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn indices_by_class(table: &FeatureTable) -> Result<Vec<Vec<usize>>> {
    let labels = table.require_labels()?;
    let mut by_class = vec![Vec::new(); table.n_classes()];
    for (i, &l) in labels.iter().enumerate() {
        by_class[l].push(i);
    }
    Ok(by_class)
}

/// Downsamples every present class to the minority class size, uniformly at
/// random. Kept rows stay in their original order.
pub fn balance_subsample(table: &FeatureTable, seed: u64) -> Result<FeatureTable> {
    let by_class = indices_by_class(table)?;
    let present: Vec<&Vec<usize>> = by_class.iter().filter(|c| !c.is_empty()).collect();
    if present.len() < 2 {
        return Err(Error::TooFewClasses {
            needed: 2,
            found: present.len(),
        });
    }
    let minority = present.iter().map(|c| c.len()).min().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = Vec::with_capacity(minority * present.len());
    for class in present {
        let mut idx = class.clone();
        idx.shuffle(&mut rng);
        keep.extend_from_slice(&idx[..minority]);
    }
    keep.sort_unstable();
    Ok(table.select_rows(&keep))
}

/// Row indices of a stratified train/test split, each sorted ascending.
///
/// The test set holds `round(n * test_fraction)` rows, spread over classes in
/// proportion to their size (largest remainder, ties to the lower class).
pub fn stratified_split(table: &FeatureTable, test_fraction: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::Config(format!("test_fraction must lie in (0,1), got {test_fraction}")));
    }
    let by_class = indices_by_class(table)?;
    let n = table.n_samples();
    let total = (n as f64 * test_fraction).round() as usize;
    let exact: Vec<f64> = by_class.iter().map(|c| c.len() as f64 * test_fraction).collect();
    let mut quota: Vec<usize> = exact.iter().map(|q| q.floor() as usize).collect();
    let mut order: Vec<usize> = (0..by_class.len()).collect();
    order.sort_by(|&a, &b| (exact[b] - exact[b].floor()).total_cmp(&(exact[a] - exact[a].floor())).then(a.cmp(&b)));
    let mut missing = total.saturating_sub(quota.iter().sum());
    for &c in order.iter().cycle().take(order.len() * 2) {
        if missing == 0 {
            break;
        }
        if quota[c] < by_class[c].len() {
            quota[c] += 1;
            missing -= 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (class, q) in by_class.iter().zip(&quota) {
        let mut idx = class.clone();
        idx.shuffle(&mut rng);
        test.extend_from_slice(&idx[..*q]);
        train.extend_from_slice(&idx[*q..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

/// Everything produced by one train/evaluate run.
#[derive(Debug, Clone)]
pub struct TrainedModel {
    pub rule_base: RuleBase,
    pub report: RuleReport,
    /// Ranking of all candidate features on the training split.
    pub ranking: Vec<FeatureScore>,
    /// Original column indices of the features the rules are built on.
    pub selected: Vec<usize>,
    /// Rescaling fitted on the training split, over the selected features.
    pub bounds: Bounds,
    /// Row indices (into the workflow's input table) of each split.
    pub train_rows: Vec<usize>,
    pub test_rows: Vec<usize>,
    pub best_fitness: Fitness,
}

impl TrainedModel {
    pub fn test_mcc(&self) -> f64 {
        self.report.test_mcc.unwrap_or(0.0)
    }

    pub fn test_accuracy(&self) -> f64 {
        self.report.test_accuracy.unwrap_or(0.0)
    }
}

enum Selection {
    TopK(usize),
    AboveAverage,
}

fn check_class_sizes(table: &FeatureTable) -> Result<()> {
    for (j, &count) in table.class_counts().iter().enumerate() {
        if count > 0 && count < MIN_CLASS_SAMPLES {
            return Err(Error::TooFewSamples {
                class: table.class_name(j),
                count,
                needed: MIN_CLASS_SAMPLES,
            });
        }
    }
    Ok(())
}

/// Split, rank and rescale on the training rows only, evolve, then report on both splits.
fn train_and_report(table: &FeatureTable, selection: Selection, config: &WorkflowConfig, ga_seed: u64) -> Result<TrainedModel> {
    let (train_rows, test_rows) = stratified_split(table, config.test_fraction, derive_seed(config.seed, 0))?;
    let train_raw = table.select_rows(&train_rows);
    let ranking = rank_features(&train_raw, None)?;
    let mut selected = match selection {
        Selection::TopK(k) => top_k(&ranking, k),
        Selection::AboveAverage => above_average(&ranking),
    };
    if selected.is_empty() {
        // every feature scored the same; keep the first so training can proceed
        selected = top_k(&ranking, 1);
    }
    let (train, bounds) = rescale(&train_raw.select_features(&selected))?;
    let test = bounds.apply(&table.select_rows(&test_rows).select_features(&selected))?;
    let ga = GaConfig {
        seed: ga_seed,
        ..config.ga.clone()
    };
    let evolution = evolve_detailed(&ga, &train)?;
    let report = rule_report(&evolution.rule_base, &train, (!test.is_empty()).then_some(&test))?;
    Ok(TrainedModel {
        rule_base: evolution.rule_base,
        report,
        ranking,
        selected,
        bounds,
        train_rows,
        test_rows,
        best_fitness: evolution.best_fitness,
    })
}

/// Trains a classifier over every class of `table` on its `top_k` best features.
pub fn workflow_train(table: &FeatureTable, config: &WorkflowConfig) -> Result<TrainedModel> {
    config.validate()?;
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    let table = if config.balance {
        balance_subsample(table, derive_seed(config.seed, 1))?
    } else {
        table.clone()
    };
    check_class_sizes(&table)?;
    train_and_report(&table, Selection::TopK(config.top_k), config, config.seed)
}

/// Restricts `table` to rows of `class_a` and `class_b`, relabeled 0 and 1.
/// The returned indices map rows of the result back to `table`.
pub fn restrict_to_pair(table: &FeatureTable, class_a: usize, class_b: usize) -> Result<(FeatureTable, Vec<usize>)> {
    let labels = table.require_labels()?;
    let n_classes = table.n_classes();
    if class_a == class_b || class_a >= n_classes || class_b >= n_classes {
        return Err(Error::Config(format!(
            "classes {class_a} and {class_b} must be distinct codes below {n_classes}"
        )));
    }
    let rows: Vec<usize> = (0..labels.len())
        .filter(|&i| labels[i] == class_a || labels[i] == class_b)
        .collect();
    let binary = rows.iter().map(|&i| usize::from(labels[i] == class_b)).collect();
    let pair = table
        .select_rows(&rows)
        .with_labels(binary)?
        .with_class_names(vec![table.class_name(class_a), table.class_name(class_b)])?;
    Ok((pair, rows))
}

/// Learns rules separating two classes: restrict, rank, keep `top_k`, evolve,
/// and report per-rule quality plus held-out accuracy and MCC.
///
/// Row indices in the result refer to the restricted two-class table.
pub fn workflow_discriminate(table: &FeatureTable, class_a: usize, class_b: usize, config: &WorkflowConfig) -> Result<TrainedModel> {
    let (pair, _) = restrict_to_pair(table, class_a, class_b)?;
    for j in 0..2 {
        let count = pair.class_counts()[j];
        if count < MIN_CLASS_SAMPLES {
            return Err(Error::TooFewSamples {
                class: pair.class_name(j),
                count,
                needed: MIN_CLASS_SAMPLES,
            });
        }
    }
    workflow_train(&pair, config)
}

/// Index of the largest activation; ties go to the lowest index.
pub fn dominant_feature(activations: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (j, &a) in activations.iter().enumerate() {
        if best.is_none_or(|b| a > activations[b]) {
            best = Some(j);
        }
    }
    best
}

/// Rule model explaining when one deep feature is dominant.
#[derive(Debug, Clone)]
pub struct FeatureExplanation {
    pub feature: usize,
    pub name: String,
    /// Rows on which this feature has the highest activation.
    pub n_dominant: usize,
    pub model: TrainedModel,
}

impl FeatureExplanation {
    pub fn mcc(&self) -> f64 {
        self.model.test_mcc()
    }
}

#[derive(Debug, Clone)]
pub struct Explanations {
    pub features: Vec<FeatureExplanation>,
    /// `(feature index, reason)` for features that could not be explained.
    pub skipped: Vec<(usize, String)>,
}

/// Class names of every one-vs-all problem: the rest first, then the feature.
pub const REST_CLASS: &str = "rest";

/// For each deep feature, learns rules over the style and descriptor columns
/// that predict when that feature dominates (one-vs-all, balanced, with
/// above-average features only). Features are processed in parallel, each
/// with a seed derived from `config.seed` and its index.
pub fn workflow_explain_features(
    activations: &FeatureTable,
    styles: &FeatureTable,
    descriptors: Option<&FeatureTable>,
    config: &WorkflowConfig,
) -> Result<Explanations> {
    config.validate()?;
    if activations.is_empty() {
        return Err(Error::EmptyTable);
    }
    let explanatory = match descriptors {
        Some(d) => styles.hstack(d)?,
        None => styles.clone(),
    };
    if explanatory.n_samples() != activations.n_samples() {
        return Err(Error::Shape(format!(
            "{} activation rows but {} style rows",
            activations.n_samples(),
            explanatory.n_samples()
        )));
    }
    let dominant: Vec<usize> = activations
        .rows()
        .map(|r| dominant_feature(r).unwrap_or(0))
        .collect();

    let outcomes: Vec<Result<std::result::Result<FeatureExplanation, String>>> = (0..activations.n_features())
        .into_par_iter()
        .map(|f| explain_one(f, activations, &explanatory, &dominant, config))
        .collect();

    let mut features = Vec::new();
    let mut skipped = Vec::new();
    for (f, outcome) in outcomes.into_iter().enumerate() {
        match outcome? {
            Ok(e) => features.push(e),
            Err(note) => {
                log::info!("skipping feature {f}: {note}");
                skipped.push((f, note));
            }
        }
    }
    Ok(Explanations { features, skipped })
}

fn explain_one(
    f: usize,
    activations: &FeatureTable,
    explanatory: &FeatureTable,
    dominant: &[usize],
    config: &WorkflowConfig,
) -> Result<std::result::Result<FeatureExplanation, String>> {
    let name = activations.feature_names()[f].clone();
    let n_dominant = dominant.iter().filter(|&&d| d == f).count();
    let n_rest = dominant.len() - n_dominant;
    if n_dominant < 2 {
        return Ok(Err(format!("dominant on {n_dominant} rows, need at least 2")));
    }
    if n_rest < 2 {
        return Ok(Err(format!("dominant on {n_dominant} of {} rows, no contrast", dominant.len())));
    }
    let labels = dominant.iter().map(|&d| usize::from(d == f)).collect();
    let binary = explanatory
        .clone()
        .with_labels(labels)?
        .with_class_names(vec![REST_CLASS.to_string(), name.clone()])?;
    let seed = derive_seed(config.seed, 100 + f as u64);
    let balanced = balance_subsample(&binary, derive_seed(seed, 1))?;
    let sub = WorkflowConfig {
        seed,
        ..config.clone()
    };
    let model = train_and_report(&balanced, Selection::AboveAverage, &sub, seed)?;
    Ok(Ok(FeatureExplanation {
        feature: f,
        name,
        n_dominant,
        model,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(labels: Vec<usize>) -> FeatureTable {
        let rows = (0..labels.len()).map(|i| vec![i as f64]).collect();
        FeatureTable::new(rows, vec!["x".into()], Some(labels)).unwrap()
    }

    #[test]
    fn balance_to_minority() {
        let t = labeled([vec![0; 90], vec![1; 10]].concat());
        let b = balance_subsample(&t, 3).unwrap();
        assert_eq!(b.class_counts(), vec![10, 10]);
        assert_eq!(b, balance_subsample(&t, 3).unwrap());
        let even = labeled(vec![0, 1, 0, 1]);
        assert_eq!(balance_subsample(&even, 9).unwrap(), even);
        assert!(balance_subsample(&labeled(vec![0, 0, 0]), 1).is_err());
    }

    #[test]
    fn split_sizes_follow_classes() {
        let t = labeled([vec![0; 186], vec![1; 186]].concat());
        let (train, test) = stratified_split(&t, 81.0 / 372.0, 1).unwrap();
        assert_eq!((train.len(), test.len()), (291, 81));
        let test_pos = test.iter().filter(|&&i| i >= 186).count();
        assert!(test_pos == 40 || test_pos == 41);
        let mut all: Vec<usize> = train.iter().chain(&test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..372).collect::<Vec<_>>());
    }

    #[test]
    fn dominant_ties_go_low() {
        assert_eq!(dominant_feature(&[0.2, 0.9, 0.9]), Some(1));
        assert_eq!(dominant_feature(&[]), None);
    }

    #[test]
    fn tiny_class_rejected() {
        let t = labeled([vec![0; 10], vec![1; 3]].concat());
        let e = workflow_discriminate(&t, 0, 1, &WorkflowConfig::default()).unwrap_err();
        assert!(matches!(e, Error::TooFewSamples { count: 3, .. }));
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(0, 0), derive_seed(0, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(0, 0));
    }
}
