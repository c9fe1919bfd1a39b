//! Fuzzy rule-based explanations for deep feature tables.
//!
//! The crate learns compact, human-readable IF-THEN classifiers over linguistic
//! labels (Low/Medium/High) with a genetic algorithm, explains which styles or
//! image properties make a deep feature fire, builds fuzzy context embeddings
//! of text annotations, and summarizes attention heatmaps with three numeric
//! descriptors.
//!
//! | module | contents |
//! |---|---|
//! | [`fuzzy`] | triangular fuzzy sets, strong linguistic partitions, product t-norm |
//! | [`table`] | labeled feature tables and unit-interval rescaling |
//! | [`rules`] | rules, support/confidence/dominance score, winner-rule inference, reports |
//! | [`ga`] | genetic training of rule bases and feature ranking |
//! | [`cluster`] | fuzzy c-means and rule-based possibilistic clustering |
//! | [`text`] | tokenizer, bag-of-words and TF-IDF |
//! | [`heatmap`] | relevant area, Sobel gradient and super-region descriptors |
//! | [`metrics`], [`losses`] | MCC, accuracy and the multi-task training losses |
//! | [`pipeline`] | CSV ingestion, run configuration and end-to-end workflows |
//! | [`synth`] | seeded synthetic datasets |
//!
//! Runnable programs for each capability live in `examples/`, e.g.
//! `cargo run --release --example discriminate_painters`.
//!
//! ```
//! use fuzzlens::ga::{evolve, GaConfig};
//! use fuzzlens::synth::blobs;
//! use fuzzlens::table::rescale;
//!
//! let data = blobs(&[vec![0.2, 0.2], vec![0.8, 0.8]], 20, 0.05, 1);
//! let (scaled, _) = rescale(&data).unwrap();
//! let config = GaConfig { generations: 20, ..GaConfig::default() };
//! let rules = evolve(&config, &scaled).unwrap();
//! assert!(!rules.is_empty());
//! ```

pub mod cluster;
pub mod config;
pub mod error;
pub mod fuzzy;
pub mod ga;
pub mod heatmap;
pub mod losses;
pub mod metrics;
pub mod pipeline;
pub mod rules;
pub mod synth;
pub mod table;
pub mod text;

pub use error::{Error, Result};
pub use table::FeatureTable;
