//! Contextual embeddings: fuzzy memberships of encoded documents to clusters.
//!
//! Two algorithms are available. Fuzzy C-Means yields memberships that sum to
//! one per document. Rule-based clustering peels clusters off one at a time by
//! discriminating the data from uniform synthetic samples; its memberships are
//! independent per cluster and the number of clusters is emergent.

mod fcm;
mod frb;

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

pub use fcm::{fcm, FcmConfig, FcmResult};
pub use frb::{frb_cluster, FrbConfig, FrbResult};

use crate::error::{Error, Result};
use crate::table::{rescale, FeatureTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Fcm,
    Frb,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Fcm => "fcm",
            Algorithm::Frb => "frb",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fcm" => Ok(Algorithm::Fcm),
            "frb" => Ok(Algorithm::Frb),
            other => Err(Error::Config(format!("unknown clustering method '{other}'"))),
        }
    }
}

/// Membership matrix `n_documents x n_clusters`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextEmbedding {
    algorithm: Algorithm,
    n_clusters: usize,
    memberships: Vec<Vec<f64>>,
}

impl ContextEmbedding {
    pub fn new(algorithm: Algorithm, n_clusters: usize, memberships: Vec<Vec<f64>>) -> Result<Self> {
        if memberships.iter().any(|r| r.len() != n_clusters) {
            return Err(Error::Shape(format!("every row must have {n_clusters} memberships")));
        }
        Ok(ContextEmbedding {
            algorithm,
            n_clusters,
            memberships,
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    pub fn n_documents(&self) -> usize {
        self.memberships.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.memberships[i]
    }

    pub fn memberships(&self) -> &[Vec<f64>] {
        &self.memberships
    }

    /// Cluster with the highest membership for document `i` (lowest index on ties).
    pub fn argmax(&self, i: usize) -> Option<usize> {
        let row = &self.memberships[i];
        (0..row.len()).reduce(|b, j| if row[j] > row[b] { j } else { b })
    }

    /// Writes the header line `algorithm=<a>,n_clusters=<c>,seed=<s>` and one CSV row per document.
    pub fn write<W: Write>(&self, mut out: W, seed: u64) -> std::io::Result<()> {
        writeln!(out, "algorithm={},n_clusters={},seed={seed}", self.algorithm, self.n_clusters)?;
        for row in &self.memberships {
            let cells: Vec<String> = row.iter().map(f64::to_string).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    /// Reads the format produced by [`ContextEmbedding::write`]; returns the embedding and seed.
    pub fn read<R: BufRead>(input: R) -> Result<(Self, u64)> {
        let mut lines = input.lines();
        let parse_err = |row: usize, column: &str, message: String| Error::Parse {
            row,
            column: column.to_string(),
            message,
        };
        let header = lines
            .next()
            .ok_or_else(|| parse_err(0, "header", "missing header line".into()))?
            .map_err(|e| parse_err(0, "header", e.to_string()))?;
        let mut algorithm = None;
        let mut n_clusters = None;
        let mut seed = None;
        for field in header.split(',') {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| parse_err(0, "header", format!("bad field '{field}'")))?;
            match k.trim() {
                "algorithm" => algorithm = Some(v.trim().parse()?),
                "n_clusters" => n_clusters = v.trim().parse().ok(),
                "seed" => seed = v.trim().parse().ok(),
                _ => {}
            }
        }
        let (Some(algorithm), Some(n_clusters), Some(seed)) = (algorithm, n_clusters, seed) else {
            return Err(parse_err(0, "header", format!("incomplete header '{header}'")));
        };
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line.map_err(|e| parse_err(i + 1, "", e.to_string()))?;
            if line.is_empty() {
                rows.push(Vec::new());
                continue;
            }
            let row = line
                .split(',')
                .enumerate()
                .map(|(j, c)| {
                    c.trim()
                        .parse::<f64>()
                        .map_err(|e| parse_err(i + 1, &j.to_string(), e.to_string()))
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        Ok((ContextEmbedding::new(algorithm, n_clusters, rows)?, seed))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Fcm(FcmConfig),
    Frb(FrbConfig),
}

impl Method {
    pub fn seed(&self) -> u64 {
        match self {
            Method::Fcm(c) => c.seed,
            Method::Frb(c) => c.seed,
        }
    }
}

/// Clusters encoded documents. Rule-based clustering rescales the table into
/// `[0,1]` first; rows of the result follow the document order.
pub fn embed_documents(encoded_docs: &FeatureTable, method: &Method) -> Result<ContextEmbedding> {
    match method {
        Method::Fcm(cfg) => Ok(fcm(encoded_docs, cfg)?.embedding),
        Method::Frb(cfg) => {
            if encoded_docs.is_empty() {
                return Ok(frb_cluster(encoded_docs, cfg)?.embedding);
            }
            let (scaled, _) = rescale(encoded_docs)?;
            Ok(frb_cluster(&scaled, cfg)?.embedding)
        }
    }
}
