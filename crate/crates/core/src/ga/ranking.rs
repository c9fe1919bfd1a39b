//! Feature pre-selection by absolute point-biserial correlation with the label.

use crate::error::Result;
use crate::table::FeatureTable;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureScore {
    pub index: usize,
    pub score: f64,
}

/// Pearson correlation between `x` and a binary indicator; 0 if either is constant.
pub fn point_biserial(x: &[f64], y: &[bool]) -> f64 {
    let n = x.len() as f64;
    if x.is_empty() {
        return 0.0;
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().filter(|&&b| b).count() as f64 / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mx;
        let dy = f64::from(u8::from(yi)) - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)
}

/// Scores every feature by `|r_pb|` against `label == target_class`, best first.
///
/// Without a target class the score is the largest one-vs-rest correlation
/// over the classes present.
pub fn rank_features(table: &FeatureTable, target_class: Option<usize>) -> Result<Vec<FeatureScore>> {
    let labels = table.require_labels()?;
    let targets: Vec<usize> = match target_class {
        Some(t) => vec![t],
        None => (0..table.n_classes()).collect(),
    };
    let indicators: Vec<Vec<bool>> = targets
        .iter()
        .map(|&t| labels.iter().map(|&l| l == t).collect())
        .collect();
    let mut scores: Vec<FeatureScore> = (0..table.n_features())
        .map(|j| {
            let col = table.column(j);
            let score = indicators
                .iter()
                .map(|y| point_biserial(&col, y).abs())
                .fold(0.0, f64::max);
            FeatureScore { index: j, score }
        })
        .collect();
    scores.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.index.cmp(&b.index)));
    Ok(scores)
}

/// Indices of the `k` best-ranked features.
pub fn top_k(ranking: &[FeatureScore], k: usize) -> Vec<usize> {
    ranking.iter().take(k).map(|s| s.index).collect()
}

/// Indices of features scoring strictly above the mean score.
pub fn above_average(ranking: &[FeatureScore]) -> Vec<usize> {
    if ranking.is_empty() {
        return Vec::new();
    }
    let mean = ranking.iter().map(|s| s.score).sum::<f64>() / ranking.len() as f64;
    ranking
        .iter()
        .filter(|s| s.score > mean)
        .map(|s| s.index)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_copy_ranks_first() {
        let labels = vec![0, 1, 1, 0, 1, 0];
        let rows: Vec<Vec<f64>> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| vec![(i % 3) as f64, l as f64, 7.0])
            .collect();
        let t = FeatureTable::new(rows, vec!["a".into(), "b".into(), "c".into()], Some(labels)).unwrap();
        let r = rank_features(&t, Some(1)).unwrap();
        assert_eq!(r[0].index, 1);
        assert!((r[0].score - 1.0).abs() < 1e-12);
        let c = r.iter().find(|s| s.index == 2).unwrap();
        assert_eq!(c.score, 0.0);
        assert_eq!(top_k(&r, 1), vec![1]);
        assert_eq!(above_average(&r)[0], 1);
    }
}
