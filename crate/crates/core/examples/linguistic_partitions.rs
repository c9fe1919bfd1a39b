//! Strong fuzzy partitions: membership degrees of a few points under the
//! default three-label partition and under custom peaks.

use fuzzlens::fuzzy::{default_partition, LinguisticPartition};

fn main() -> fuzzlens::Result<()> {
    let default = default_partition(3)?;
    println!("{default}");
    println!("{:>6}  {:>6}  {:>6}  {:>6}  best", "x", "Low", "Medium", "High");
    for x in [0.0, 0.1, 0.25, 0.5, 0.7, 0.9, 1.0] {
        let m = default.memberships(x);
        println!(
            "{x:>6.2}  {:>6.3}  {:>6.3}  {:>6.3}  {}",
            m[0],
            m[1],
            m[2],
            default.label_name(default.best_label(x))
        );
    }

    // peaks moved by training: "Medium" now sits at 0.3
    let shifted = LinguisticPartition::from_peaks(0, &[0.0, 0.3, 1.0])?;
    println!("\n{shifted}");
    println!("steepest slope: {:.3}", shifted.lipschitz());
    for x in [0.2, 0.3, 0.65] {
        println!("x = {x}: {:?}", shifted.memberships(x));
    }

    let five = default_partition(5)?;
    let names: Vec<String> = (0..5).map(|l| five.label_name(fuzzlens::fuzzy::Label(l))).collect();
    println!("\nfive labels: {}", names.join(", "));
    Ok(())
}
