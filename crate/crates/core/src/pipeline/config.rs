//! Complete description of one run, echoed as `key=value` lines so any output
//! directory can be regenerated.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::cluster::{Algorithm, FcmConfig, FrbConfig};
use crate::config::{format_kv, parse_kv};
use crate::error::{Error, Result};
use crate::heatmap::{Connectivity, DEFAULT_GRID_N};

use super::workflows::WorkflowConfig;

/// File name of the configuration echo inside an output directory.
pub const CONFIG_FILE: &str = "config.txt";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Encode,
    Cluster,
    Descriptors,
    Train,
    Explain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EncodeMethod {
    #[default]
    Bow,
    BowTopK,
    Tfidf,
}

macro_rules! string_enum {
    ($ty:ident, $what:literal, $($variant:ident => $text:literal),+ $(,)?) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($ty::$variant => $text),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($ty::$variant),)+
                    other => Err(Error::Config(format!(concat!("unknown ", $what, " '{}'"), other))),
                }
            }
        }
    };
}

string_enum!(Command, "command", Encode => "encode", Cluster => "cluster", Descriptors => "descriptors", Train => "train", Explain => "explain");
string_enum!(EncodeMethod, "encoding method", Bow => "bow", BowTopK => "bow-topk", Tfidf => "tfidf");

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub out: PathBuf,
    /// Master seed; every random component derives its seed from it.
    pub seed: u64,

    /// Corpus for `encode`, encoded table for `cluster`.
    pub input: Option<PathBuf>,
    /// CSV column holding the documents; plain text (one per line) when unset.
    pub text_column: Option<String>,
    pub encode_method: EncodeMethod,
    pub vocab_top_k: Option<usize>,

    pub cluster_method: Algorithm,
    pub fcm: FcmConfig,
    pub frb: FrbConfig,

    pub maps: Option<PathBuf>,
    pub grid_n: usize,
    pub connectivity: Connectivity,

    pub table: Option<PathBuf>,
    pub label: Option<String>,
    pub class_a: Option<String>,
    pub class_b: Option<String>,

    pub activations: Option<PathBuf>,
    pub styles: Option<PathBuf>,
    pub descriptors: Option<PathBuf>,

    pub workflow: WorkflowConfig,
}

impl RunConfig {
    pub fn new(command: Command, out: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            out: out.into(),
            seed: 0,
            input: None,
            text_column: None,
            encode_method: EncodeMethod::default(),
            vocab_top_k: None,
            cluster_method: Algorithm::Fcm,
            fcm: FcmConfig::default(),
            frb: FrbConfig::default(),
            maps: None,
            grid_n: DEFAULT_GRID_N,
            connectivity: Connectivity::Four,
            table: None,
            label: None,
            class_a: None,
            class_b: None,
            activations: None,
            styles: None,
            descriptors: None,
            workflow: WorkflowConfig::default(),
        }
    }

    /// Copies the master seed into every component configuration.
    pub fn sync_seeds(&mut self) {
        self.fcm.seed = self.seed;
        self.frb.seed = self.seed;
        self.workflow.seed = self.seed;
        self.workflow.ga.seed = self.seed;
    }

    /// Every setting, in a fixed order. Unset options appear with an empty value.
    pub fn entries(&self) -> Vec<(String, String)> {
        fn path(p: &Option<PathBuf>) -> String {
            p.as_ref().map(|p| p.display().to_string()).unwrap_or_default()
        }
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        let mut e: Vec<(String, String)> = [
            ("command", self.command.to_string()),
            ("out", self.out.display().to_string()),
            ("seed", self.seed.to_string()),
            ("input", path(&self.input)),
            ("text_column", opt(&self.text_column)),
            ("encode_method", self.encode_method.to_string()),
            ("vocab_top_k", opt(&self.vocab_top_k)),
            ("cluster_method", self.cluster_method.to_string()),
            ("fcm.n_clusters", self.fcm.n_clusters.to_string()),
            ("fcm.fuzzifier", self.fcm.fuzzifier.to_string()),
            ("fcm.tolerance", self.fcm.tolerance.to_string()),
            ("fcm.max_iterations", self.fcm.max_iterations.to_string()),
            ("frb.max_antecedents", self.frb.max_antecedents.to_string()),
            ("frb.n_labels", self.frb.n_labels.to_string()),
            ("frb.max_regenerations", self.frb.max_regenerations.to_string()),
            ("maps", path(&self.maps)),
            ("grid_n", self.grid_n.to_string()),
            (
                "connectivity",
                match self.connectivity {
                    Connectivity::Four => "4",
                    Connectivity::Eight => "8",
                }
                .to_string(),
            ),
            ("table", path(&self.table)),
            ("label", opt(&self.label)),
            ("class_a", opt(&self.class_a)),
            ("class_b", opt(&self.class_b)),
            ("activations", path(&self.activations)),
            ("styles", path(&self.styles)),
            ("descriptors", path(&self.descriptors)),
            ("top_k", self.workflow.top_k.to_string()),
            ("test_fraction", self.workflow.test_fraction.to_string()),
            ("balance", self.workflow.balance.to_string()),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        e.extend(
            self.workflow
                .ga
                .entries()
                .into_iter()
                .filter(|(k, _)| *k != "seed")
                .map(|(k, v)| (format!("ga.{k}"), v)),
        );
        e
    }

    /// The `key=value` echo written to [`CONFIG_FILE`].
    pub fn to_kv(&self) -> String {
        format_kv(&self.entries())
    }

    /// Parses an echo produced by [`RunConfig::to_kv`]. Missing keys keep their defaults.
    pub fn from_kv(text: &str) -> Result<Self> {
        let pairs = parse_kv(text)?;
        let command = pairs
            .iter()
            .find(|(k, _)| k == "command")
            .ok_or_else(|| Error::Config("missing 'command'".into()))?
            .1
            .parse()?;
        let mut c = RunConfig::new(command, "");
        for (k, v) in &pairs {
            c.set(k, v)?;
        }
        c.sync_seeds();
        Ok(c)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("invalid value '{value}' for {key}")))
        }
        fn opt_path(v: &str) -> Option<PathBuf> {
            (!v.is_empty()).then(|| PathBuf::from(v))
        }
        fn opt_string(v: &str) -> Option<String> {
            (!v.is_empty()).then(|| v.to_string())
        }
        match key {
            "command" => self.command = value.parse()?,
            "out" => self.out = PathBuf::from(value),
            "seed" => self.seed = num(key, value)?,
            "input" => self.input = opt_path(value),
            "text_column" => self.text_column = opt_string(value),
            "encode_method" => self.encode_method = value.parse()?,
            "vocab_top_k" => {
                self.vocab_top_k = if value.is_empty() { None } else { Some(num(key, value)?) }
            }
            "cluster_method" => self.cluster_method = value.parse()?,
            "fcm.n_clusters" => self.fcm.n_clusters = num(key, value)?,
            "fcm.fuzzifier" => self.fcm.fuzzifier = num(key, value)?,
            "fcm.tolerance" => self.fcm.tolerance = num(key, value)?,
            "fcm.max_iterations" => self.fcm.max_iterations = num(key, value)?,
            "frb.max_antecedents" => self.frb.max_antecedents = num(key, value)?,
            "frb.n_labels" => self.frb.n_labels = num(key, value)?,
            "frb.max_regenerations" => self.frb.max_regenerations = num(key, value)?,
            "maps" => self.maps = opt_path(value),
            "grid_n" => self.grid_n = num(key, value)?,
            "connectivity" => {
                self.connectivity = match value {
                    "4" => Connectivity::Four,
                    "8" => Connectivity::Eight,
                    _ => return Err(Error::Config(format!("connectivity must be 4 or 8, got '{value}'"))),
                }
            }
            "table" => self.table = opt_path(value),
            "label" => self.label = opt_string(value),
            "class_a" => self.class_a = opt_string(value),
            "class_b" => self.class_b = opt_string(value),
            "activations" => self.activations = opt_path(value),
            "styles" => self.styles = opt_path(value),
            "descriptors" => self.descriptors = opt_path(value),
            "top_k" => self.workflow.top_k = num(key, value)?,
            "test_fraction" => self.workflow.test_fraction = num(key, value)?,
            "balance" => self.workflow.balance = num(key, value)?,
            _ => match key.strip_prefix("ga.") {
                Some(ga_key) if ga_key != "seed" => self.workflow.ga.set(ga_key, value)?,
                _ => return Err(Error::Config(format!("unknown setting '{key}'"))),
            },
        }
        Ok(())
    }
}
