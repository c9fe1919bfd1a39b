//! Bag-of-words and TF-IDF encodings of textual annotations.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use crate::error::{Error, Result};
use crate::table::FeatureTable;

/// Lowercases, splits on runs of non-alphanumeric characters and drops tokens
/// shorter than two characters.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= 2)
        .map(str::to_lowercase)
        .collect()
}

/// Lexicographically ordered terms with their document frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
    doc_freq: Vec<usize>,
}

impl Vocabulary {
    fn from_terms(terms: Vec<String>, df: &BTreeMap<String, usize>) -> Self {
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let doc_freq = terms.iter().map(|t| df[t]).collect();
        Vocabulary {
            terms,
            index,
            doc_freq,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn doc_freq(&self, index: usize) -> usize {
        self.doc_freq[index]
    }

    /// One `term,index,df` line per term.
    pub fn write<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["term", "index", "df"])?;
        for (i, t) in self.terms.iter().enumerate() {
            w.write_record([t.clone(), i.to_string(), self.doc_freq[i].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

struct Counted {
    docs: Vec<Vec<String>>,
    term_freq: BTreeMap<String, usize>,
    doc_freq: BTreeMap<String, usize>,
}

fn count<S: AsRef<str>>(corpus: &[S]) -> Result<Counted> {
    let docs: Vec<Vec<String>> = corpus.iter().map(|d| tokenize(d.as_ref())).collect();
    let mut term_freq = BTreeMap::new();
    let mut doc_freq = BTreeMap::new();
    for doc in &docs {
        for t in doc {
            *term_freq.entry(t.clone()).or_insert(0) += 1;
        }
        let mut seen: Vec<&String> = doc.iter().collect();
        seen.sort();
        seen.dedup();
        for t in seen {
            *doc_freq.entry(t.clone()).or_insert(0) += 1;
        }
    }
    if term_freq.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(Counted {
        docs,
        term_freq,
        doc_freq,
    })
}

fn count_matrix(docs: &[Vec<String>], vocab: &Vocabulary) -> Vec<Vec<f64>> {
    docs.iter()
        .map(|doc| {
            let mut row = vec![0.0; vocab.len()];
            for t in doc {
                if let Some(j) = vocab.index_of(t) {
                    row[j] += 1.0;
                }
            }
            row
        })
        .collect()
}

/// Term counts per document. With `top_k`, only the `k` most frequent terms of
/// the corpus are kept (ties broken lexicographically).
pub fn bow<S: AsRef<str>>(corpus: &[S], top_k: Option<usize>) -> Result<(FeatureTable, Vocabulary)> {
    let counted = count(corpus)?;
    let mut terms: Vec<String> = counted.term_freq.keys().cloned().collect();
    if let Some(k) = top_k {
        let mut ranked: Vec<(&String, &usize)> = counted.term_freq.iter().collect();
        ranked.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
        terms = ranked.into_iter().take(k).map(|(t, _)| t.clone()).collect();
        terms.sort();
    }
    let vocab = Vocabulary::from_terms(terms, &counted.doc_freq);
    let rows = count_matrix(&counted.docs, &vocab);
    let table = FeatureTable::new(rows, vocab.terms.clone(), None)?;
    Ok((table, vocab))
}

/// `tf * ln(N / df)` with `tf` the raw count over the document's token count.
pub fn tfidf<S: AsRef<str>>(corpus: &[S]) -> Result<(FeatureTable, Vocabulary)> {
    let counted = count(corpus)?;
    let terms: Vec<String> = counted.term_freq.keys().cloned().collect();
    let vocab = Vocabulary::from_terms(terms, &counted.doc_freq);
    let n_docs = corpus.len() as f64;
    let idf: Vec<f64> = vocab
        .doc_freq
        .iter()
        .map(|&df| (n_docs / df as f64).ln())
        .collect();
    let rows = count_matrix(&counted.docs, &vocab)
        .into_iter()
        .zip(&counted.docs)
        .map(|(counts, doc)| {
            let len = doc.len() as f64;
            counts
                .iter()
                .zip(&idf)
                .map(|(&c, &w)| if c == 0.0 { 0.0 } else { c / len * w })
                .collect()
        })
        .collect();
    let table = FeatureTable::new(rows, vocab.terms.clone(), None)?;
    Ok((table, vocab))
}
