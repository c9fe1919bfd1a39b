//! Winner-rule inference with hand-written rules: rule statistics, association
//! degrees and the prediction for a few query points.

use fuzzlens::fuzzy::{default_partition, Label};
use fuzzlens::rules::{Antecedent, FuzzyRule, Limits, RuleBase, SupportMode};
use fuzzlens::FeatureTable;

fn main() -> fuzzlens::Result<()> {
    let train = FeatureTable::new(
        vec![
            vec![0.9, 0.2],
            vec![0.8, 0.4],
            vec![0.7, 0.1],
            vec![0.2, 0.8],
            vec![0.1, 0.6],
            vec![0.3, 0.9],
        ],
        vec!["Impressionism".into(), "Cubism".into()],
        Some(vec![0, 0, 0, 1, 1, 1]),
    )?
    .with_class_names(vec!["Van Gogh".into(), "Picasso".into()])?;

    let rules = vec![
        FuzzyRule::new(vec![Antecedent::new(0, Label::HIGH)], 0)?,
        FuzzyRule::new(vec![Antecedent::new(1, Label::HIGH)], 1)?,
        FuzzyRule::new(
            vec![Antecedent::new(0, Label::LOW), Antecedent::new(1, Label::MEDIUM)],
            1,
        )?,
    ];
    let partitions = vec![default_partition(3)?, default_partition(3)?];
    let base = RuleBase::fit(rules, partitions, &train, SupportMode::RuleCount, &Limits::default())?;

    for (i, r) in base.rules().iter().enumerate() {
        println!(
            "{:<55} support {:.3}  confidence {:.3}  DS {:.3}",
            base.describe_rule(i),
            r.stats.support,
            r.stats.confidence,
            r.stats.dominance_score
        );
    }

    println!();
    for x in [[0.85, 0.3], [0.15, 0.55], [0.5, 0.5], [0.5, 0.0]] {
        let p = base.predict(&x)?;
        let how = match p.rule {
            Some(r) => format!("rule {} (association {:.3})", r + 1, p.association),
            None => "no rule fires, majority class".to_string(),
        };
        println!("{x:?} -> {} via {how}", base.class_names()[p.class]);
    }
    Ok(())
}
