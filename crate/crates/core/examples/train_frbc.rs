//! Genetic training of a fuzzy rule classifier on two noisy blobs, with a
//! per-rule report on held-out data.

use fuzzlens::ga::{evolve_detailed, GaConfig};
use fuzzlens::pipeline::stratified_split;
use fuzzlens::rules::rule_report;
use fuzzlens::synth::blobs;
use fuzzlens::table::rescale;

fn main() -> fuzzlens::Result<()> {
    let data = blobs(&[vec![0.3, 0.6], vec![0.7, 0.4]], 60, 0.1, 42);
    let (train_rows, test_rows) = stratified_split(&data, 0.25, 42)?;
    let (train, bounds) = rescale(&data.select_rows(&train_rows))?;
    let test = bounds.apply(&data.select_rows(&test_rows))?;

    let config = GaConfig {
        seed: 42,
        generations: 100,
        ..GaConfig::default()
    };
    let evolution = evolve_detailed(&config, &train)?;
    for (g, f) in evolution.history.iter().enumerate().step_by(20) {
        println!("generation {g:>3}: {f}");
    }
    println!("final: {}\n", evolution.best_fitness);

    let report = rule_report(&evolution.rule_base, &train, Some(&test))?;
    print!("{}", report.to_text());
    println!("\nlearned partitions:");
    for p in evolution.rule_base.partitions() {
        println!("  {p}");
    }
    Ok(())
}
