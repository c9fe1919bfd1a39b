//! Per-rule report: antecedents, dominance score and accuracy on the samples each rule wins.

use std::fmt::Write as _;
use std::io;

use super::RuleBase;
use crate::error::Result;
use crate::metrics::ConfusionMatrix;
use crate::table::FeatureTable;

#[derive(Debug, Clone, PartialEq)]
pub struct RuleReportRow {
    /// 1-based rule number.
    pub rule_id: usize,
    /// `IF a IS Low AND b IS High`.
    pub antecedents: String,
    /// `a=Low;b=High`.
    pub antecedent_list: String,
    pub consequent: String,
    pub dominance_score: f64,
    pub train_acc: f64,
    pub test_acc: Option<f64>,
    pub train_wins: usize,
    pub test_wins: usize,
}

impl RuleReportRow {
    /// The rule attains the argmax on no train or test sample.
    pub fn never_fires(&self) -> bool {
        self.train_wins == 0 && self.test_wins == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleReport {
    pub rows: Vec<RuleReportRow>,
    pub train_accuracy: f64,
    pub train_mcc: f64,
    pub test_accuracy: Option<f64>,
    pub test_mcc: Option<f64>,
    /// No rule has a positive dominance score.
    pub no_viable_rules: bool,
}

struct Evaluation {
    accuracy: f64,
    mcc: f64,
    per_rule: Vec<(usize, usize)>,
}

fn evaluate(base: &RuleBase, table: &FeatureTable) -> Result<Evaluation> {
    let labels = table.require_labels()?;
    let predictions = base.predict_table(table)?;
    let mut per_rule = vec![(0usize, 0usize); base.len()];
    for (p, &truth) in predictions.iter().zip(labels) {
        if let Some(r) = p.rule {
            per_rule[r].0 += 1;
            if p.class == truth {
                per_rule[r].1 += 1;
            }
        }
    }
    let classes: Vec<usize> = predictions.iter().map(|p| p.class).collect();
    let n_classes = base.n_classes().max(table.n_classes());
    let cm = ConfusionMatrix::from_predictions(&classes, labels, n_classes)?;
    Ok(Evaluation {
        accuracy: cm.accuracy(),
        mcc: cm.mcc(),
        per_rule,
    })
}

fn ratio((wins, hits): (usize, usize)) -> f64 {
    if wins == 0 {
        0.0
    } else {
        hits as f64 / wins as f64
    }
}

/// Builds the report of `base` on its (rescaled) training table and an optional test table.
pub fn rule_report(base: &RuleBase, train: &FeatureTable, test: Option<&FeatureTable>) -> Result<RuleReport> {
    let no_viable_rules = base.rules().iter().all(|r| r.stats.dominance_score <= 0.0);
    if base.is_empty() {
        return Ok(RuleReport {
            rows: Vec::new(),
            train_accuracy: 0.0,
            train_mcc: 0.0,
            test_accuracy: None,
            test_mcc: None,
            no_viable_rules,
        });
    }
    let tr = evaluate(base, train)?;
    let te = test.map(|t| evaluate(base, t)).transpose()?;
    let rows = base
        .rules()
        .iter()
        .enumerate()
        .map(|(i, sr)| {
            let list: Vec<String> = sr
                .rule
                .antecedents()
                .iter()
                .map(|a| format!("{}={}", base.feature_name(a.variable), base.label_name(a)))
                .collect();
            RuleReportRow {
                rule_id: i + 1,
                antecedents: base.describe_antecedents(&sr.rule),
                antecedent_list: list.join(";"),
                consequent: base.class_names()[sr.rule.consequent()].clone(),
                dominance_score: sr.stats.dominance_score,
                train_acc: ratio(tr.per_rule[i]),
                test_acc: te.as_ref().map(|e| ratio(e.per_rule[i])),
                train_wins: tr.per_rule[i].0,
                test_wins: te.as_ref().map_or(0, |e| e.per_rule[i].0),
            }
        })
        .collect();
    Ok(RuleReport {
        rows,
        train_accuracy: tr.accuracy,
        train_mcc: tr.mcc,
        test_accuracy: te.as_ref().map(|e| e.accuracy),
        test_mcc: te.as_ref().map(|e| e.mcc),
        no_viable_rules,
    })
}

fn opt4(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"))
}

impl RuleReport {
    /// Human-readable table with one row per rule.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.no_viable_rules {
            out.push_str("no viable rules\n");
        }
        let width = self
            .rows
            .iter()
            .map(|r| r.antecedents.len())
            .chain(["Antecedents".len()])
            .max()
            .unwrap_or(0);
        let cons_width = self
            .rows
            .iter()
            .map(|r| r.consequent.len())
            .chain(["Class".len()])
            .max()
            .unwrap_or(0);
        let _ = writeln!(
            out,
            "{:>3}  {:<width$}  {:<cons_width$}  {:>6}  {:>9}  {:>8}",
            "#", "Antecedents", "Class", "DS", "Train Acc", "Test Acc"
        );
        for r in &self.rows {
            let _ = write!(
                out,
                "{:>3}  {:<width$}  {:<cons_width$}  {:>6.4}  {:>9.4}  {:>8}",
                r.rule_id,
                r.antecedents,
                r.consequent,
                r.dominance_score,
                r.train_acc,
                opt4(r.test_acc)
            );
            if r.never_fires() {
                out.push_str("  (never fires)");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "\ntrain accuracy {:.4}  MCC {:.4}",
            self.train_accuracy, self.train_mcc
        );
        if self.test_accuracy.is_some() {
            let _ = writeln!(
                out,
                "test accuracy {}  MCC {}",
                opt4(self.test_accuracy),
                opt4(self.test_mcc)
            );
        }
        out
    }

    /// Delimited rows `rule_id,antecedent_list,consequent,DS,train_acc,test_acc`.
    pub fn write_csv<W: io::Write>(&self, writer: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["rule_id", "antecedent_list", "consequent", "DS", "train_acc", "test_acc"])?;
        for r in &self.rows {
            w.write_record([
                r.rule_id.to_string(),
                r.antecedent_list.clone(),
                r.consequent.clone(),
                r.dominance_score.to_string(),
                r.train_acc.to_string(),
                r.test_acc.map(|v| v.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
