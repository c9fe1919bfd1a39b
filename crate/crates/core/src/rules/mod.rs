//! Fuzzy classification rules and winner-rule inference.
//!
//! A rule `IF x_i IS L_i AND ... THEN class j` fires on a rescaled sample with
//! the product of its antecedent memberships. Rule quality is the dominance
//! score `ds = support * confidence`, and a sample is assigned the consequent of
//! the rule maximizing the association degree `firing * ds`.

mod report;

use std::fmt;

pub use report::{rule_report, RuleReport, RuleReportRow};

use crate::error::{Error, Result};
use crate::fuzzy::{Label, LinguisticPartition};
use crate::table::FeatureTable;

pub const DEFAULT_MAX_RULES: usize = 15;
pub const DEFAULT_MAX_ANTECEDENTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antecedent {
    pub variable: usize,
    pub label: Label,
}

impl Antecedent {
    pub fn new(variable: usize, label: Label) -> Self {
        Antecedent { variable, label }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuzzyRule {
    antecedents: Vec<Antecedent>,
    consequent: usize,
}

impl FuzzyRule {
    /// A rule with at least one antecedent and no repeated variable.
    pub fn new(antecedents: Vec<Antecedent>, consequent: usize) -> Result<Self> {
        if antecedents.is_empty() {
            return Err(Error::InvalidRule("a rule needs at least one antecedent".into()));
        }
        for (i, a) in antecedents.iter().enumerate() {
            if antecedents[..i].iter().any(|b| b.variable == a.variable) {
                return Err(Error::InvalidRule(format!(
                    "variable {} appears twice",
                    a.variable
                )));
            }
        }
        Ok(FuzzyRule {
            antecedents,
            consequent,
        })
    }

    pub fn antecedents(&self) -> &[Antecedent] {
        &self.antecedents
    }

    pub fn consequent(&self) -> usize {
        self.consequent
    }

    /// Product of the antecedent memberships of `x`.
    pub fn firing_strength(&self, x: &[f64], partitions: &[LinguisticPartition]) -> Result<f64> {
        for a in &self.antecedents {
            if a.variable >= x.len() || a.variable >= partitions.len() {
                return Err(Error::MissingVariable {
                    variable: a.variable,
                    n_features: x.len().min(partitions.len()),
                });
            }
        }
        Ok(self.fire(x, partitions))
    }

    /// Unchecked firing strength; variables must be in range.
    #[inline]
    pub(crate) fn fire(&self, x: &[f64], partitions: &[LinguisticPartition]) -> f64 {
        let mut w = 1.0;
        for a in &self.antecedents {
            w *= partitions[a.variable].membership(a.label, x[a.variable]);
            if w == 0.0 {
                break;
            }
        }
        w
    }

    fn check_against(&self, n_features: usize, limits: &Limits) -> Result<()> {
        if self.antecedents.len() > limits.max_antecedents {
            return Err(Error::InvalidRule(format!(
                "{} antecedents exceed the maximum of {}",
                self.antecedents.len(),
                limits.max_antecedents
            )));
        }
        if let Some(a) = self.antecedents.iter().find(|a| a.variable >= n_features) {
            return Err(Error::MissingVariable {
                variable: a.variable,
                n_features,
            });
        }
        Ok(())
    }
}

/// Free-function form of [`FuzzyRule::firing_strength`].
pub fn firing_strength(rule: &FuzzyRule, x: &[f64], partitions: &[LinguisticPartition]) -> Result<f64> {
    rule.firing_strength(x, partitions)
}

/// Denominator of the support measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SupportMode {
    /// Divide by the number of rules `|R|`.
    #[default]
    RuleCount,
    /// Divide by the number of samples.
    SampleCount,
}

impl fmt::Display for SupportMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportMode::RuleCount => "rules",
            SupportMode::SampleCount => "samples",
        })
    }
}

impl std::str::FromStr for SupportMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rules" => Ok(SupportMode::RuleCount),
            "samples" => Ok(SupportMode::SampleCount),
            other => Err(Error::Config(format!("unknown support mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    pub max_rules: usize,
    pub max_antecedents: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rules: DEFAULT_MAX_RULES,
            max_antecedents: DEFAULT_MAX_ANTECEDENTS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleStats {
    pub support: f64,
    pub confidence: f64,
    pub dominance_score: f64,
}

impl RuleStats {
    pub fn new(support: f64, confidence: f64) -> Self {
        RuleStats {
            support,
            confidence,
            dominance_score: dominance_score(support, confidence),
        }
    }
}

/// Firing mass on the consequent class divided by `denominator`.
fn support_from_firing(firing: &[f64], labels: &[usize], consequent: usize, denominator: f64) -> f64 {
    let mass: f64 = firing
        .iter()
        .zip(labels)
        .filter(|(_, &l)| l == consequent)
        .map(|(w, _)| w)
        .sum();
    mass / denominator
}

/// Firing mass on the consequent class over the total firing mass; 0 if the rule never fires.
fn confidence_from_firing(firing: &[f64], labels: &[usize], consequent: usize) -> f64 {
    let mut matching = 0.0;
    let mut total = 0.0;
    for (&w, &l) in firing.iter().zip(labels) {
        total += w;
        if l == consequent {
            matching += w;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        matching / total
    }
}

fn firing_column(rule: &FuzzyRule, table: &FeatureTable, partitions: &[LinguisticPartition]) -> Result<Vec<f64>> {
    table.rows().map(|x| rule.firing_strength(x, partitions)).collect()
}

fn labeled_nonempty(table: &FeatureTable) -> Result<&[usize]> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    table.require_labels()
}

/// Support of `rule` on a labeled, rescaled table, normalized as configured in `base`.
pub fn rule_support(rule: &FuzzyRule, table: &FeatureTable, base: &RuleBase) -> Result<f64> {
    let labels = labeled_nonempty(table)?;
    if base.is_empty() {
        return Err(Error::EmptyRuleBase);
    }
    let firing = firing_column(rule, table, &base.partitions)?;
    let denominator = match base.support_mode {
        SupportMode::RuleCount => base.len() as f64,
        SupportMode::SampleCount => table.n_samples() as f64,
    };
    Ok(support_from_firing(&firing, labels, rule.consequent, denominator))
}

pub fn rule_confidence(rule: &FuzzyRule, table: &FeatureTable, partitions: &[LinguisticPartition]) -> Result<f64> {
    let labels = labeled_nonempty(table)?;
    let firing = firing_column(rule, table, partitions)?;
    Ok(confidence_from_firing(&firing, labels, rule.consequent))
}

pub fn dominance_score(support: f64, confidence: f64) -> f64 {
    support * confidence
}

pub fn association_degree(firing: f64, dominance_score: f64) -> f64 {
    firing * dominance_score
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredRule {
    pub rule: FuzzyRule,
    pub stats: RuleStats,
}

/// Outcome of classifying one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub class: usize,
    /// Winning rule, `None` when no rule has a positive association degree.
    pub rule: Option<usize>,
    pub association: f64,
    /// The majority training class was returned because nothing fired.
    pub fallback: bool,
}

/// Rules with frozen statistics and the partitions they were computed under.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    rules: Vec<ScoredRule>,
    partitions: Vec<LinguisticPartition>,
    n_classes: usize,
    majority_class: usize,
    support_mode: SupportMode,
    feature_names: Vec<String>,
    class_names: Vec<String>,
}

impl RuleBase {
    /// Computes support, confidence and dominance score of every rule on `table`
    /// (labeled and rescaled with the same bounds as future inputs).
    pub fn fit(
        rules: Vec<FuzzyRule>,
        partitions: Vec<LinguisticPartition>,
        table: &FeatureTable,
        support_mode: SupportMode,
        limits: &Limits,
    ) -> Result<Self> {
        let labels = labeled_nonempty(table)?;
        let n_classes = table.n_classes();
        if partitions.len() != table.n_features() {
            return Err(Error::Shape(format!(
                "{} partitions for {} features",
                partitions.len(),
                table.n_features()
            )));
        }
        if rules.len() > limits.max_rules {
            return Err(Error::InvalidRule(format!(
                "{} rules exceed the maximum of {}",
                rules.len(),
                limits.max_rules
            )));
        }
        for r in &rules {
            r.check_against(table.n_features(), limits)?;
            if r.consequent >= n_classes {
                return Err(Error::InvalidRule(format!(
                    "consequent {} outside {n_classes} classes",
                    r.consequent
                )));
            }
        }
        let denominator = match support_mode {
            SupportMode::RuleCount => rules.len() as f64,
            SupportMode::SampleCount => table.n_samples() as f64,
        };
        let mut firing = vec![0.0; table.n_samples()];
        let scored = rules
            .into_iter()
            .map(|rule| {
                for (w, x) in firing.iter_mut().zip(table.rows()) {
                    *w = rule.fire(x, &partitions);
                }
                let support = support_from_firing(&firing, labels, rule.consequent, denominator);
                let confidence = confidence_from_firing(&firing, labels, rule.consequent);
                ScoredRule {
                    rule,
                    stats: RuleStats::new(support, confidence),
                }
            })
            .collect();
        Ok(RuleBase {
            rules: scored,
            partitions,
            n_classes,
            majority_class: majority(&table.class_counts()),
            support_mode,
            feature_names: table.feature_names().to_vec(),
            class_names: (0..n_classes).map(|j| table.class_name(j)).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> &[ScoredRule] {
        &self.rules
    }

    pub fn partitions(&self) -> &[LinguisticPartition] {
        &self.partitions
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn majority_class(&self) -> usize {
        self.majority_class
    }

    pub fn support_mode(&self) -> SupportMode {
        self.support_mode
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    /// Multiplies every dominance score by `factor`; used to check scale invariance of inference.
    pub fn scale_dominance(&mut self, factor: f64) {
        for r in &mut self.rules {
            r.stats.dominance_score *= factor;
        }
    }

    pub fn association_degree(&self, rule_index: usize, x: &[f64]) -> Result<f64> {
        let r = &self.rules[rule_index];
        Ok(association_degree(
            r.rule.firing_strength(x, &self.partitions)?,
            r.stats.dominance_score,
        ))
    }

    pub fn association_degrees(&self, x: &[f64]) -> Result<Vec<f64>> {
        (0..self.rules.len())
            .map(|r| self.association_degree(r, x))
            .collect()
    }

    /// Consequent of the rule with the largest association degree; lowest index wins ties.
    pub fn predict(&self, x: &[f64]) -> Result<Prediction> {
        if self.rules.is_empty() {
            return Err(Error::EmptyRuleBase);
        }
        if x.len() < self.partitions.len() {
            return Err(Error::MissingVariable {
                variable: self.partitions.len() - 1,
                n_features: x.len(),
            });
        }
        Ok(self.predict_unchecked(x))
    }

    pub(crate) fn predict_unchecked(&self, x: &[f64]) -> Prediction {
        let mut best: Option<(usize, f64)> = None;
        for (i, r) in self.rules.iter().enumerate() {
            let a = association_degree(r.rule.fire(x, &self.partitions), r.stats.dominance_score);
            if a > best.map_or(0.0, |b| b.1) {
                best = Some((i, a));
            }
        }
        match best {
            Some((i, a)) => Prediction {
                class: self.rules[i].rule.consequent,
                rule: Some(i),
                association: a,
                fallback: false,
            },
            None => Prediction {
                class: self.majority_class,
                rule: None,
                association: 0.0,
                fallback: true,
            },
        }
    }

    pub fn predict_table(&self, table: &FeatureTable) -> Result<Vec<Prediction>> {
        if self.rules.is_empty() {
            return Err(Error::EmptyRuleBase);
        }
        if table.n_features() < self.partitions.len() {
            return Err(Error::Shape(format!(
                "rule base expects {} features, table has {}",
                self.partitions.len(),
                table.n_features()
            )));
        }
        Ok(table.rows().map(|x| self.predict_unchecked(x)).collect())
    }

    pub fn classify(&self, table: &FeatureTable) -> Result<Vec<usize>> {
        Ok(self.predict_table(table)?.into_iter().map(|p| p.class).collect())
    }

    /// `IF <feature> IS <label> AND ... THEN <class>`.
    pub fn describe_rule(&self, rule_index: usize) -> String {
        let rule = &self.rules[rule_index].rule;
        format!(
            "{} THEN {}",
            self.describe_antecedents(rule),
            self.class_names[rule.consequent]
        )
    }

    pub(crate) fn describe_antecedents(&self, rule: &FuzzyRule) -> String {
        let parts: Vec<String> = rule
            .antecedents
            .iter()
            .map(|a| format!("{} IS {}", self.feature_name(a.variable), self.label_name(a)))
            .collect();
        format!("IF {}", parts.join(" AND "))
    }

    pub(crate) fn feature_name(&self, variable: usize) -> &str {
        &self.feature_names[variable]
    }

    pub(crate) fn label_name(&self, a: &Antecedent) -> String {
        self.partitions[a.variable].label_name(a.label)
    }
}

/// Index of the largest count; lowest index on ties.
pub(crate) fn majority(counts: &[usize]) -> usize {
    let mut best = 0;
    for (j, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = j;
        }
    }
    best
}
