//! Possibilistic clustering by fuzzy rules: clusters are peeled off one at a
//! time by separating the data from uniform synthetic samples.

use fuzzlens::cluster::{frb_cluster, FrbConfig};
use fuzzlens::fuzzy::default_partition;
use fuzzlens::synth::shuffled_blobs;
use fuzzlens::table::rescale;

fn main() -> fuzzlens::Result<()> {
    let data = shuffled_blobs(&[vec![0.2, 0.2], vec![0.8, 0.7]], 50, 0.06, 3);
    let (scaled, _) = rescale(&data)?;
    let result = frb_cluster(&scaled, &FrbConfig::default())?;
    let partition = default_partition(3)?;

    println!("{} clusters found", result.embedding.n_clusters());
    for (z, rule) in result.rules.iter().enumerate() {
        let ants: Vec<String> = rule
            .antecedents()
            .iter()
            .map(|a| format!("x{} IS {}", a.variable, partition.label_name(a.label)))
            .collect();
        println!("cluster {z}: IF {}", ants.join(" AND "));
    }
    if result.flagged() {
        println!(
            "safeguards used: {} forced removals, {} regeneration caps",
            result.forced_removals, result.regeneration_cap_hits
        );
    }

    let labels = data.labels().unwrap();
    for (i, blob) in labels.iter().enumerate().take(5) {
        let row: Vec<String> = result.embedding.row(i).iter().map(|m| format!("{m:.2}")).collect();
        let sum: f64 = result.embedding.row(i).iter().sum();
        println!("sample {i} (blob {}): [{}] sum {sum:.2}", blob, row.join(", "));
    }
    Ok(())
}
