//! Classification metrics and the multi-task training losses as plain functions.

use fuzzlens::losses::{combined_loss, cross_entropy, embedding_loss, mtl_loss, smooth_l1, LossConfig};
use fuzzlens::metrics::{mcc, BinaryCounts, ConfusionMatrix};

fn main() -> fuzzlens::Result<()> {
    let counts = BinaryCounts::new(2, 3, 1, 1);
    println!("binary MCC (tp 2, tn 3, fp 1, fn 1) = {:.6}", counts.mcc());

    let truth = [0, 0, 1, 1, 2, 2, 2, 1];
    let pred = [0, 1, 1, 1, 2, 0, 2, 1];
    let cm = ConfusionMatrix::from_predictions(&pred, &truth, 3)?;
    println!("3-class accuracy {:.3}, MCC {:.4}", cm.accuracy(), mcc(&pred, &truth, 3)?);

    let y = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
    let y_hat = vec![vec![0.8, 0.1, 0.1], vec![0.3, 0.6, 0.1]];
    let author = cross_entropy(&y, &y_hat)?;
    let task_losses = [author, 0.42, 0.77, 0.31];
    let l_class = mtl_loss(&task_losses)?;
    println!("author cross-entropy {author:.4}; multi-task loss {l_class:.4}");

    for d in [0.5, 1.0, 2.0] {
        println!("smooth L1 at distance {d}: {}", smooth_l1(0.0, d));
    }
    let memberships = vec![vec![0.9, 0.1], vec![0.2, 0.7]];
    let reconstruction = vec![vec![0.8, 0.3], vec![0.2, 0.9]];
    let l_emb = embedding_loss(&memberships, &reconstruction)?;
    let total = combined_loss(l_class, l_emb, &LossConfig::default());
    println!("embedding loss {l_emb:.4}; combined (alpha 0.9) {total:.4}");
    Ok(())
}
