//! Seeded synthetic data for examples, benchmarks and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::heatmap::Heatmap;
use crate::table::FeatureTable;

/// Style names used for generated style-score columns.
pub const STYLE_NAMES: [&str; 12] = [
    "Impressionism",
    "Post-Impressionism",
    "Expressionism",
    "Cubism",
    "Fauvism",
    "Realism",
    "Romanticism",
    "Baroque",
    "Symbolism",
    "Pointillism",
    "Art Nouveau",
    "Naive Art",
];

fn style_name(j: usize) -> String {
    STYLE_NAMES
        .get(j)
        .map_or_else(|| format!("style_{j}"), |s| s.to_string())
}

/// Isotropic Gaussian blobs, `n_per_class` samples around each center; label = center index.
pub fn blobs(centers: &[Vec<f64>], n_per_class: usize, std_dev: f64, seed: u64) -> FeatureTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, std_dev).expect("finite standard deviation");
    let d = centers.first().map_or(0, Vec::len);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (class, c) in centers.iter().enumerate() {
        for _ in 0..n_per_class {
            rows.push(c.iter().map(|&m| m + noise.sample(&mut rng)).collect());
            labels.push(class);
        }
    }
    let names = (0..d).map(|j| format!("x{j}")).collect();
    FeatureTable::new(rows, names, Some(labels)).expect("well-formed blobs")
}

/// The same blobs with rows shuffled so classes interleave.
pub fn shuffled_blobs(centers: &[Vec<f64>], n_per_class: usize, std_dev: f64, seed: u64) -> FeatureTable {
    let t = blobs(centers, n_per_class, std_dev, seed);
    let mut order: Vec<usize> = (0..t.n_samples()).collect();
    rand::seq::SliceRandom::shuffle(&mut order[..], &mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
    t.select_rows(&order)
}

/// Two-painter table of style scores and heatmap descriptors.
///
/// The first `n_informative` style columns are drawn around 0.7 for class A
/// and 0.3 for class B (standard deviation `spread`); the remaining styles
/// and the three descriptor columns carry no class information.
pub fn painter_table(n_a: usize, n_b: usize, n_styles: usize, n_informative: usize, spread: f64, seed: u64) -> FeatureTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, spread).expect("finite spread");
    let mut rows = Vec::with_capacity(n_a + n_b);
    let mut labels = Vec::with_capacity(n_a + n_b);
    for i in 0..n_a + n_b {
        let class = usize::from(i >= n_a);
        let centre = if class == 0 { 0.7 } else { 0.3 };
        let mut row: Vec<f64> = (0..n_styles)
            .map(|j| {
                if j < n_informative {
                    centre + noise.sample(&mut rng)
                } else {
                    rng.random::<f64>()
                }
            })
            .collect();
        row.push(rng.random_range(0.5..2.5));
        row.push(rng.random::<f64>());
        row.push(f64::from(rng.random_range(0..6u8)));
        rows.push(row);
        labels.push(class);
    }
    let mut names: Vec<String> = (0..n_styles).map(style_name).collect();
    names.extend(["max_gradient", "relevant_area", "super_regions"].map(String::from));
    FeatureTable::new(rows, names, Some(labels))
        .and_then(|t| t.with_class_names(vec!["painter_a".into(), "painter_b".into()]))
        .expect("well-formed painter table")
}

/// Activation, style and descriptor tables for the feature-explanation workflow.
#[derive(Debug, Clone)]
pub struct ExplainData {
    pub activations: FeatureTable,
    pub styles: FeatureTable,
    pub descriptors: FeatureTable,
}

fn explain_tables(activations: Vec<Vec<f64>>, styles: Vec<Vec<f64>>, descriptors: Vec<Vec<f64>>) -> ExplainData {
    let n_deep = activations.first().map_or(0, Vec::len);
    let n_styles = styles.first().map_or(0, Vec::len);
    ExplainData {
        activations: FeatureTable::new(activations, (0..n_deep).map(|f| format!("f{f}")).collect(), None)
            .expect("activations"),
        styles: FeatureTable::new(styles, (0..n_styles).map(style_name).collect(), None).expect("styles"),
        descriptors: FeatureTable::new(
            descriptors,
            ["max_gradient", "relevant_area", "super_regions"].map(String::from).to_vec(),
            None,
        )
        .expect("descriptors"),
    }
}

fn random_descriptors<R: Rng>(rng: &mut R) -> Vec<f64> {
    vec![rng.random_range(0.5..2.5), rng.random(), f64::from(rng.random_range(0..6u8))]
}

/// Deep feature `planted` dominates exactly on the rows where style
/// `planted_style` exceeds `threshold`; elsewhere activations are uniform noise
/// with that feature suppressed.
pub fn planted_activations(n: usize, n_deep: usize, n_styles: usize, planted: usize, planted_style: usize, threshold: f64, seed: u64) -> ExplainData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut acts, mut styles, mut descs) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..n {
        let s: Vec<f64> = (0..n_styles).map(|_| rng.random()).collect();
        let mut a: Vec<f64> = (0..n_deep).map(|_| rng.random()).collect();
        a[planted] = if s[planted_style] > threshold { 1.0 + rng.random::<f64>() } else { 0.0 };
        acts.push(a);
        styles.push(s);
        descs.push(random_descriptors(&mut rng));
    }
    explain_tables(acts, styles, descs)
}

/// Activations independent of every style and descriptor.
pub fn null_activations(n: usize, n_deep: usize, n_styles: usize, seed: u64) -> ExplainData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut acts, mut styles, mut descs) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..n {
        styles.push((0..n_styles).map(|_| rng.random()).collect());
        acts.push((0..n_deep).map(|_| rng.random()).collect());
        descs.push(random_descriptors(&mut rng));
    }
    explain_tables(acts, styles, descs)
}

/// Map made of `grid_n x grid_n` square tiles of `tile` pixels, `hot` where
/// `mask` (row-major) is set and `cold` elsewhere.
pub fn tile_heatmap(mask: &[bool], grid_n: usize, tile: usize, hot: f64, cold: f64) -> Heatmap {
    let side = grid_n * tile;
    let data = (0..side * side)
        .map(|p| {
            let (r, c) = (p / side, p % side);
            if mask[(r / tile) * grid_n + c / tile] {
                hot
            } else {
                cold
            }
        })
        .collect();
    Heatmap::new(side, side, data).expect("tile map")
}

/// Left half 0, right half `h`.
pub fn step_heatmap(height: usize, width: usize, h: f64) -> Heatmap {
    let data = (0..height * width)
        .map(|p| if p % width < width / 2 { 0.0 } else { h })
        .collect();
    Heatmap::new(height, width, data).expect("step map")
}

/// Smooth single-peak attention map centred at `(cy, cx)` (fractions of the size).
pub fn gaussian_heatmap(height: usize, width: usize, cy: f64, cx: f64, sigma: f64) -> Heatmap {
    let data = (0..height * width)
        .map(|p| {
            let y = (p / width) as f64 / height as f64 - cy;
            let x = (p % width) as f64 / width as f64 - cx;
            (-(x * x + y * y) / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    Heatmap::new(height, width, data).expect("gaussian map")
}
