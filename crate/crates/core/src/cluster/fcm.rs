//! Fuzzy C-Means by alternating centroid and membership updates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Algorithm, ContextEmbedding};
use crate::error::{Error, Result};
use crate::table::FeatureTable;

#[derive(Debug, Clone, PartialEq)]
pub struct FcmConfig {
    pub n_clusters: usize,
    pub fuzzifier: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for FcmConfig {
    fn default() -> Self {
        FcmConfig {
            n_clusters: 2,
            fuzzifier: 2.0,
            tolerance: 1e-6,
            max_iterations: 300,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FcmResult {
    pub embedding: ContextEmbedding,
    pub centroids: Vec<Vec<f64>>,
    /// Objective `J_m` after every centroid update; non-increasing.
    pub objective: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Fewer distinct points than clusters; some centroids may coincide.
    pub duplicate_warning: bool,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn centroids(data: &FeatureTable, u: &[Vec<f64>], m: f64, previous: Option<&[Vec<f64>]>) -> Vec<Vec<f64>> {
    let c = u[0].len();
    let d = data.n_features();
    (0..c)
        .map(|j| {
            let mut num = vec![0.0; d];
            let mut den = 0.0;
            for (x, ui) in data.rows().zip(u) {
                let w = ui[j].powf(m);
                den += w;
                for (n, &xv) in num.iter_mut().zip(x) {
                    *n += w * xv;
                }
            }
            if den == 0.0 {
                return previous.map_or_else(|| data.row(0).to_vec(), |p| p[j].clone());
            }
            num.iter().map(|n| n / den).collect()
        })
        .collect()
}

/// Optimal memberships for fixed centroids. Points sitting on one or more
/// centroids split their membership evenly among those.
fn memberships(data: &FeatureTable, v: &[Vec<f64>], m: f64) -> Vec<Vec<f64>> {
    let exponent = 1.0 / (m - 1.0);
    data.rows()
        .map(|x| {
            let d: Vec<f64> = v.iter().map(|c| sq_dist(x, c)).collect();
            let zeros = d.iter().filter(|&&di| di == 0.0).count();
            if zeros > 0 {
                return d
                    .iter()
                    .map(|&di| if di == 0.0 { 1.0 / zeros as f64 } else { 0.0 })
                    .collect();
            }
            d.iter()
                .map(|&dj| 1.0 / d.iter().map(|&dk| (dj / dk).powf(exponent)).sum::<f64>())
                .collect()
        })
        .collect()
}

fn objective(data: &FeatureTable, u: &[Vec<f64>], v: &[Vec<f64>], m: f64) -> f64 {
    data.rows()
        .zip(u)
        .map(|(x, ui)| {
            ui.iter()
                .zip(v)
                .map(|(&uij, c)| uij.powf(m) * sq_dist(x, c))
                .sum::<f64>()
        })
        .sum()
}

/// Clusters the rows of `data` into `n_clusters` fuzzy groups.
///
/// Memberships start random (seeded) and the loop stops when no membership
/// changes by `tolerance` or more, or after `max_iterations`.
pub fn fcm(data: &FeatureTable, config: &FcmConfig) -> Result<FcmResult> {
    let c = config.n_clusters;
    let m = config.fuzzifier;
    if c < 2 {
        return Err(Error::Config(format!("n_clusters must be >= 2, got {c}")));
    }
    if m.is_nan() || m <= 1.0 {
        return Err(Error::Config(format!("fuzzifier must be > 1, got {m}")));
    }
    if data.n_samples() < c {
        return Err(Error::Config(format!(
            "{} samples cannot form {c} clusters",
            data.n_samples()
        )));
    }
    let mut distinct: Vec<&[f64]> = data.rows().collect();
    distinct.sort_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    distinct.dedup();
    let duplicate_warning = distinct.len() < c;
    if duplicate_warning {
        log::warn!("only {} distinct points for {c} clusters", distinct.len());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut u: Vec<Vec<f64>> = (0..data.n_samples())
        .map(|_| {
            let raw: Vec<f64> = (0..c).map(|_| rng.random::<f64>() + 1e-3).collect();
            let s: f64 = raw.iter().sum();
            raw.into_iter().map(|r| r / s).collect()
        })
        .collect();

    let mut objective_trace = Vec::new();
    let mut v = centroids(data, &u, m, None);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iterations {
        objective_trace.push(objective(data, &u, &v, m));
        let next = memberships(data, &v, m);
        let delta = next
            .iter()
            .flatten()
            .zip(u.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        u = next;
        v = centroids(data, &u, m, Some(&v));
        iterations += 1;
        if delta < config.tolerance {
            converged = true;
            break;
        }
    }
    objective_trace.push(objective(data, &u, &v, m));

    Ok(FcmResult {
        embedding: ContextEmbedding::new(Algorithm::Fcm, c, u)?,
        centroids: v,
        objective: objective_trace,
        iterations,
        converged,
        duplicate_warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(xs: &[f64]) -> FeatureTable {
        FeatureTable::new(xs.iter().map(|&x| vec![x]).collect(), vec!["x".into()], None).unwrap()
    }

    #[test]
    fn far_points_separate() {
        let r = fcm(&points(&[0.0, 100.0]), &FcmConfig::default()).unwrap();
        let e = &r.embedding;
        let own0 = e.argmax(0).unwrap();
        let own1 = e.argmax(1).unwrap();
        assert_ne!(own0, own1);
        assert!(e.row(0)[own0] > 0.99 && e.row(1)[own1] > 0.99);
    }

    #[test]
    fn equidistant_point_splits_evenly() {
        let data = points(&[0.0, 0.5, 1.0]);
        let u = memberships(&data, &[vec![0.0], vec![1.0]], 2.0);
        assert_eq!(u[1], vec![0.5, 0.5]);
    }

    #[test]
    fn too_few_samples_rejected() {
        let cfg = FcmConfig { n_clusters: 3, ..FcmConfig::default() };
        assert!(fcm(&points(&[0.0, 1.0]), &cfg).is_err());
    }

    #[test]
    fn duplicates_warn() {
        let cfg = FcmConfig { n_clusters: 3, ..FcmConfig::default() };
        let r = fcm(&points(&[0.0, 0.0, 1.0, 1.0]), &cfg).unwrap();
        assert!(r.duplicate_warning);
        for row in r.embedding.memberships() {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }
}
