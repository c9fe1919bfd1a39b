//! Two-painter discrimination from style scores and heatmap descriptors:
//! rank features, keep the best seven, evolve rules and report them.
//!
//! Pass an output directory to also write the report files:
//! `cargo run --release --example discriminate_painters -- out/`

use fuzzlens::pipeline::{emit_report, restrict_to_pair, workflow_discriminate, Command, RunConfig, WorkflowConfig};
use fuzzlens::synth::painter_table;

fn main() -> fuzzlens::Result<()> {
    let table = painter_table(186, 186, 12, 3, 0.15, 5);
    let config = WorkflowConfig {
        test_fraction: 81.0 / 372.0,
        seed: 5,
        ..WorkflowConfig::default()
    };
    let model = workflow_discriminate(&table, 0, 1, &config)?;

    println!("features kept:");
    for s in model.ranking.iter().filter(|s| model.selected.contains(&s.index)) {
        println!("  {:<20} |r| = {:.3}", table.feature_names()[s.index], s.score);
    }
    println!("{} training rows, {} test rows\n", model.train_rows.len(), model.test_rows.len());
    print!("{}", model.report.to_text());

    if let Some(dir) = std::env::args().nth(1) {
        let mut run = RunConfig::new(Command::Train, dir);
        run.seed = config.seed;
        run.workflow = config;
        run.sync_seeds();
        let pair = restrict_to_pair(&table, 0, 1)?.0;
        for f in emit_report(&model, &pair, &run)? {
            println!("wrote {}", f.display());
        }
    }
    Ok(())
}
