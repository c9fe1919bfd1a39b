//! One-vs-all explanation of deep features: for each feature, which styles
//! and heatmap properties predict that it has the strongest activation.

use fuzzlens::pipeline::{workflow_explain_features, WorkflowConfig};
use fuzzlens::synth::{planted_activations, STYLE_NAMES};

fn main() -> fuzzlens::Result<()> {
    // feature f2 fires when the painting looks strongly Cubist
    let data = planted_activations(1200, 5, 8, 2, 3, 0.65, 11);
    println!("planted: f2 dominates when {} > 0.65\n", STYLE_NAMES[3]);
    let config = WorkflowConfig {
        seed: 11,
        ..WorkflowConfig::default()
    };
    let result = workflow_explain_features(&data.activations, &data.styles, Some(&data.descriptors), &config)?;

    println!("{:<8} {:>10} {:>8} {:>6}", "feature", "dominant", "MCC", "rules");
    for e in &result.features {
        println!("{:<8} {:>10} {:>8.4} {:>6}", e.name, e.n_dominant, e.mcc(), e.model.rule_base.len());
    }
    for (f, note) in &result.skipped {
        println!("f{f}: skipped ({note})");
    }

    if let Some(f2) = result.features.iter().find(|e| e.feature == 2) {
        println!("\nrules for f2:");
        for i in 0..f2.model.rule_base.len() {
            println!("  {}", f2.model.rule_base.describe_rule(i));
        }
    }
    Ok(())
}
