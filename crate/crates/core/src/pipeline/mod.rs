//! Data ingestion, run configuration, the rule-learning workflows and the
//! files each run leaves in its output directory.

mod config;
mod io;
mod workflows;

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use config::{Command, EncodeMethod, RunConfig, CONFIG_FILE};
pub use io::{
    load_corpus, load_table, load_table_skipping, parse_table, save_table, write_label_mapping, write_table,
    LABEL_COLUMN,
};
pub use workflows::{
    balance_subsample, derive_seed, dominant_feature, restrict_to_pair, stratified_split, workflow_discriminate,
    workflow_explain_features, workflow_train, Explanations, FeatureExplanation, TrainedModel, WorkflowConfig,
    MIN_CLASS_SAMPLES, REST_CLASS,
};

use crate::cluster::{embed_documents, Algorithm, Method};
use crate::error::{Error, Result};
use crate::heatmap::{self, describe_with, load_heatmap, write_descriptor_rows, DescriptorRow};
use crate::table::FeatureTable;
use crate::text::{bow, tfidf};

/// Columns of a descriptor CSV that are not features.
const DESCRIPTOR_ID_COLUMNS: [&str; 2] = ["file", "grid_n"];

/// Files written by a run, plus a short human-readable summary.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

struct Writer {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Writer {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        Ok(Writer {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    fn text(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        self.files.push(path);
        Ok(())
    }

    fn csv(&mut self, name: &str, write: impl FnOnce(&mut Vec<u8>) -> csv::Result<()>) -> Result<()> {
        let path = self.dir.join(name);
        let mut buf = Vec::new();
        write(&mut buf).map_err(|e| Error::csv(&path, e))?;
        fs::write(&path, buf).map_err(|e| Error::io(&path, e))?;
        self.files.push(path);
        Ok(())
    }
}

fn metrics_csv(model: &TrainedModel) -> String {
    let r = &model.report;
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    format!(
        "metric,value\ntrain_accuracy,{}\ntrain_mcc,{}\ntest_accuracy,{}\ntest_mcc,{}\nn_rules,{}\nn_train,{}\nn_test,{}\nfitness_mcc,{}\n",
        r.train_accuracy,
        r.train_mcc,
        opt(r.test_accuracy),
        opt(r.test_mcc),
        model.rule_base.len(),
        model.train_rows.len(),
        model.test_rows.len(),
        model.best_fitness.mcc,
    )
}

fn ranking_csv(model: &TrainedModel, feature_names: &[String]) -> String {
    let mut out = String::from("rank,feature,score,selected\n");
    for (rank, s) in model.ranking.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            rank + 1,
            feature_names[s.index],
            s.score,
            model.selected.contains(&s.index)
        ));
    }
    out
}

fn write_model(w: &mut Writer, prefix: &str, model: &TrainedModel) -> Result<()> {
    w.text(&format!("{prefix}rules.txt"), &model.report.to_text())?;
    w.csv(&format!("{prefix}rules.csv"), |b| model.report.write_csv(b))?;
    w.text(&format!("{prefix}metrics.csv"), &metrics_csv(model))
}

/// Writes the rule report text, rules CSV, metrics CSV, feature ranking,
/// label mapping and configuration echo of a training run into `config.out`.
/// `table` is the labeled input the model was trained from.
pub fn emit_report(model: &TrainedModel, table: &FeatureTable, config: &RunConfig) -> Result<Vec<PathBuf>> {
    let mut w = Writer::new(&config.out)?;
    write_model(&mut w, "", model)?;
    w.text("features.csv", &ranking_csv(model, table.feature_names()))?;
    w.csv("labels.csv", |b| write_label_mapping(table, b))?;
    w.text(CONFIG_FILE, &config.to_kv())?;
    Ok(w.files)
}

/// Executes the run described by `config` and writes its outputs.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let mut config = config.clone();
    config.sync_seeds();
    match config.command {
        Command::Encode => run_encode(&config),
        Command::Cluster => run_cluster(&config),
        Command::Descriptors => run_descriptors(&config),
        Command::Train => run_train(&config),
        Command::Explain => run_explain(&config),
    }
}

/// Re-runs the configuration echoed in `config_path`, optionally into a different directory.
pub fn rerun(config_path: &Path, out: Option<&Path>) -> Result<RunOutcome> {
    let text = fs::read_to_string(config_path).map_err(|e| Error::io(config_path, e))?;
    let mut config = RunConfig::from_kv(&text)?;
    if let Some(out) = out {
        config.out = out.to_path_buf();
    }
    run(&config)
}

fn required<'a, T>(value: &'a Option<T>, flag: &str) -> Result<&'a T> {
    value
        .as_ref()
        .ok_or_else(|| Error::Config(format!("--{flag} is required for this command")))
}

fn run_encode(config: &RunConfig) -> Result<RunOutcome> {
    let input = required(&config.input, "input")?;
    let corpus = load_corpus(input, config.text_column.as_deref())?;
    let (table, vocab) = match config.encode_method {
        EncodeMethod::Bow => bow(&corpus, None)?,
        EncodeMethod::BowTopK => bow(&corpus, Some(*required(&config.vocab_top_k, "top-k")?))?,
        EncodeMethod::Tfidf => tfidf(&corpus)?,
    };
    let mut w = Writer::new(&config.out)?;
    w.csv("encoded.csv", |b| write_table(&table, b))?;
    w.csv("vocabulary.csv", |b| vocab.write(b))?;
    w.text(CONFIG_FILE, &config.to_kv())?;
    Ok(RunOutcome {
        files: w.files,
        summary: format!("encoded {} documents over {} terms", table.n_samples(), vocab.len()),
    })
}

fn run_cluster(config: &RunConfig) -> Result<RunOutcome> {
    let input = required(&config.input, "input")?;
    let table = load_table(input, None)?;
    let method = match config.cluster_method {
        Algorithm::Fcm => Method::Fcm(config.fcm.clone()),
        Algorithm::Frb => Method::Frb(config.frb.clone()),
    };
    let embedding = embed_documents(&table, &method)?;
    let mut w = Writer::new(&config.out)?;
    let path = w.dir.join("embedding.csv");
    let mut buf = Vec::new();
    embedding.write(&mut buf, config.seed).map_err(|e| Error::io(&path, e))?;
    w.text("embedding.csv", &String::from_utf8_lossy(&buf))?;
    w.text(CONFIG_FILE, &config.to_kv())?;
    Ok(RunOutcome {
        files: w.files,
        summary: format!(
            "{} clustering: {} documents, {} clusters",
            config.cluster_method,
            embedding.n_documents(),
            embedding.n_clusters()
        ),
    })
}

fn is_heatmap_file(path: &Path) -> bool {
    path.is_file()
        && path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("pgm") || e.eq_ignore_ascii_case("csv"))
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut entries = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|err| Error::io(dir, err)))
        .collect::<Result<Vec<_>>>()?;
    entries.sort();
    Ok(entries)
}

/// Images under `dir`: each heatmap file is one image, each subdirectory is
/// one image whose heatmaps are fused.
pub fn collect_images(dir: &Path) -> Result<Vec<(String, Vec<PathBuf>)>> {
    let mut images = Vec::new();
    for entry in sorted_entries(dir)? {
        let name = entry
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        if entry.is_dir() {
            let maps: Vec<PathBuf> = sorted_entries(&entry)?.into_iter().filter(|p| is_heatmap_file(p)).collect();
            if !maps.is_empty() {
                images.push((name, maps));
            }
        } else if is_heatmap_file(&entry) {
            images.push((name, vec![entry]));
        }
    }
    Ok(images)
}

fn run_descriptors(config: &RunConfig) -> Result<RunOutcome> {
    let dir = required(&config.maps, "maps")?;
    let images = collect_images(dir)?;
    let rows = images
        .par_iter()
        .map(|(name, paths)| {
            let maps = paths.iter().map(|p| load_heatmap(p)).collect::<Result<Vec<_>>>()?;
            Ok(DescriptorRow {
                file: name.clone(),
                descriptors: describe_with(&maps, config.grid_n, config.connectivity)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut w = Writer::new(&config.out)?;
    w.csv("descriptors.csv", |b| write_descriptor_rows(b, &rows))?;
    w.text(CONFIG_FILE, &config.to_kv())?;
    let stats = heatmap::summarize(&rows.iter().map(|r| r.descriptors).collect::<Vec<_>>());
    Ok(RunOutcome {
        files: w.files,
        summary: format!(
            "{} images; mean (std): max gradient {:.3} ({:.3}), relevant area {:.3} ({:.3}), super regions {:.2} ({:.2})",
            rows.len(),
            stats[0].0,
            stats[0].1,
            stats[1].0,
            stats[1].1,
            stats[2].0,
            stats[2].1
        ),
    })
}

fn class_code(table: &FeatureTable, name: &str) -> Result<usize> {
    table
        .class_names()
        .iter()
        .position(|c| c == name)
        .ok_or_else(|| Error::Config(format!("class '{name}' does not occur in the label column")))
}

fn run_train(config: &RunConfig) -> Result<RunOutcome> {
    let path = required(&config.table, "table")?;
    let table = load_table(path, Some(config.label.as_deref().unwrap_or(LABEL_COLUMN)))?;
    let (model, trained_on) = match (&config.class_a, &config.class_b) {
        (Some(a), Some(b)) => {
            let (a, b) = (class_code(&table, a)?, class_code(&table, b)?);
            let model = workflow_discriminate(&table, a, b, &config.workflow)?;
            (model, restrict_to_pair(&table, a, b)?.0)
        }
        (None, None) => (workflow_train(&table, &config.workflow)?, table),
        _ => return Err(Error::Config("--class-a and --class-b must be given together".into())),
    };
    let files = emit_report(&model, &trained_on, config)?;
    Ok(RunOutcome {
        files,
        summary: model.report.to_text(),
    })
}

fn file_safe(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn run_explain(config: &RunConfig) -> Result<RunOutcome> {
    let activations = load_table(required(&config.activations, "activations")?, None)?;
    let styles = load_table(required(&config.styles, "styles")?, None)?;
    let descriptors = config
        .descriptors
        .as_ref()
        .map(|p| load_table_skipping(p, None, &DESCRIPTOR_ID_COLUMNS))
        .transpose()?;
    let result = workflow_explain_features(&activations, &styles, descriptors.as_ref(), &config.workflow)?;

    let mut w = Writer::new(&config.out)?;
    let mut table = String::from("feature,n_dominant,test_mcc,test_accuracy,n_rules\n");
    let mut summary = String::from("feature  MCC\n");
    for e in &result.features {
        table.push_str(&format!(
            "{},{},{},{},{}\n",
            e.name,
            e.n_dominant,
            e.mcc(),
            e.model.test_accuracy(),
            e.model.rule_base.len()
        ));
        summary.push_str(&format!("{:<8} {:.4}\n", e.name, e.mcc()));
        write_model(&mut w, &format!("{}_", file_safe(&e.name)), &e.model)?;
    }
    w.text("mcc.csv", &table)?;
    let notes: String = result
        .skipped
        .iter()
        .map(|(f, note)| format!("{}: {note}\n", activations.feature_names()[*f]))
        .collect();
    w.text("skipped.txt", &notes)?;
    w.text(CONFIG_FILE, &config.to_kv())?;
    summary.push_str(&notes);
    Ok(RunOutcome { files: w.files, summary })
}
