//! Fuzzy C-Means on three blobs: centroids, objective trace and the
//! memberships of a few points.

use fuzzlens::cluster::{fcm, FcmConfig};
use fuzzlens::synth::blobs;

fn main() -> fuzzlens::Result<()> {
    let data = blobs(&[vec![0.0, 0.0], vec![3.0, 0.0], vec![1.5, 2.5]], 40, 0.4, 7);
    let result = fcm(
        &data,
        &FcmConfig {
            n_clusters: 3,
            seed: 7,
            ..FcmConfig::default()
        },
    )?;
    println!(
        "converged: {} after {} iterations",
        result.converged, result.iterations
    );
    let trace: Vec<String> = result.objective.iter().take(8).map(|j| format!("{j:.3}")).collect();
    println!("objective: {} ...", trace.join(" > "));
    for (k, c) in result.centroids.iter().enumerate() {
        println!("centroid {k}: ({:.3}, {:.3})", c[0], c[1]);
    }
    for i in [0, 40, 80, 119] {
        let m: Vec<String> = result.embedding.row(i).iter().map(|u| format!("{u:.3}")).collect();
        println!("point {i:>3} {:?}: [{}]", data.row(i), m.join(", "));
    }
    Ok(())
}
