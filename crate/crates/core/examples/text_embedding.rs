//! Text annotations to fuzzy context embeddings: bag-of-words and TF-IDF
//! encodings clustered with FCM and with rule-based clustering.

use fuzzlens::cluster::{embed_documents, FcmConfig, FrbConfig, Method};
use fuzzlens::text::{bow, tfidf};

const CORPUS: [&str; 8] = [
    "Yellow sunflowers in a vase, yellow petals and thick strokes",
    "A yellow wheat field under a turbulent sky",
    "Sunflowers and wheat in the yellow light of Arles",
    "Wheat, cypress and sunflowers in yellow and blue",
    "Tahitian women resting on the beach",
    "Two women of Tahiti with flowers by the beach",
    "Women bathing in the sea in Tahiti",
    "A Tahiti beach with women and palm trees",
];

fn main() -> fuzzlens::Result<()> {
    let (counts, vocab) = bow(&CORPUS, Some(8))?;
    println!("top terms: {}", vocab.terms().join(", "));
    let (weights, full_vocab) = tfidf(&CORPUS)?;
    let yellow = full_vocab.index_of("yellow").expect("in vocabulary");
    println!("tf-idf of 'yellow' per document: {:.3?}", weights.column(yellow));

    let fcm = embed_documents(
        &counts,
        &Method::Fcm(FcmConfig {
            n_clusters: 2,
            seed: 1,
            ..FcmConfig::default()
        }),
    )?;
    let frb = embed_documents(&counts, &Method::Frb(FrbConfig { seed: 1, ..FrbConfig::default() }))?;

    println!("\n{:<55} {:<14} rule-based ({} clusters)", "document", "fcm", frb.n_clusters());
    for (i, doc) in CORPUS.iter().enumerate() {
        let f: Vec<String> = fcm.row(i).iter().map(|m| format!("{m:.2}")).collect();
        let r: Vec<String> = frb.row(i).iter().map(|m| format!("{m:.2}")).collect();
        println!("{:<55} [{}]  [{}]", &doc[..doc.len().min(54)], f.join(" "), r.join(" "));
    }
    Ok(())
}
