//! CSV ingestion and export of feature tables, label mappings and corpora.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::table::FeatureTable;

/// Column name used for labels when a table is saved.
pub const LABEL_COLUMN: &str = "label";

/// Reads a CSV table with a header row. Every column except `label_column`
/// and the ones in `skip_columns` must be numeric. Label strings are mapped to
/// dense codes in first-seen order and kept as the table's class names.
pub fn parse_table<R: Read>(input: R, label_column: Option<&str>, skip_columns: &[&str]) -> Result<FeatureTable> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| parse_error(1, "", e))?
        .iter()
        .map(str::to_string)
        .collect();
    let label_idx = match label_column {
        Some(name) => Some(header.iter().position(|h| h == name).ok_or_else(|| Error::Parse {
            row: 1,
            column: name.to_string(),
            message: "label column not found in header".into(),
        })?),
        None => None,
    };
    let feature_cols: Vec<usize> = (0..header.len())
        .filter(|&c| Some(c) != label_idx && !skip_columns.contains(&header[c].as_str()))
        .collect();

    let mut values = Vec::new();
    let mut labels = Vec::new();
    let mut class_names: Vec<String> = Vec::new();
    let mut codes: HashMap<String, usize> = HashMap::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| parse_error(line, "", e))?;
        if record.len() != header.len() {
            return Err(Error::Parse {
                row: line,
                column: String::new(),
                message: format!("{} fields, header has {}", record.len(), header.len()),
            });
        }
        for &c in &feature_cols {
            let cell = &record[c];
            let v: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| Error::Parse {
                    row: line,
                    column: header[c].clone(),
                    message: format!("'{cell}' is not a finite number"),
                })?;
            values.push(v);
        }
        if let Some(l) = label_idx {
            let name = &record[l];
            let next = class_names.len();
            let code = *codes.entry(name.to_string()).or_insert_with(|| {
                class_names.push(name.to_string());
                next
            });
            labels.push(code);
        }
    }
    if values.is_empty() && labels.is_empty() {
        return Err(Error::EmptyTable);
    }
    if feature_cols.is_empty() {
        return Err(Error::InvalidTable("no numeric feature columns".into()));
    }
    let names = feature_cols.iter().map(|&c| header[c].clone()).collect();
    let table = FeatureTable::from_flat(values, names, label_idx.map(|_| labels))?;
    if label_idx.is_some() {
        table.with_class_names(class_names)
    } else {
        Ok(table)
    }
}

fn parse_error(row: usize, column: &str, e: csv::Error) -> Error {
    Error::Parse {
        row,
        column: column.to_string(),
        message: e.to_string(),
    }
}

/// [`parse_table`] on a file.
pub fn load_table(path: &Path, label_column: Option<&str>) -> Result<FeatureTable> {
    load_table_skipping(path, label_column, &[])
}

pub fn load_table_skipping(path: &Path, label_column: Option<&str>, skip_columns: &[&str]) -> Result<FeatureTable> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_table(file, label_column, skip_columns).map_err(|e| match e {
        Error::Parse { row, column, message } => Error::Parse {
            row,
            column,
            message: format!("{message} ({})", path.display()),
        },
        other => other,
    })
}

/// Writes the table as CSV with a [`LABEL_COLUMN`] holding class names when labeled.
/// Floats use the shortest representation that parses back to the same value.
pub fn write_table<W: Write>(table: &FeatureTable, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = table.feature_names().to_vec();
    if table.labels().is_some() {
        header.push(LABEL_COLUMN.to_string());
    }
    w.write_record(&header)?;
    for (i, row) in table.rows().enumerate() {
        let mut rec: Vec<String> = row.iter().map(f64::to_string).collect();
        if let Some(labels) = table.labels() {
            rec.push(table.class_name(labels[i]));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_table(table: &FeatureTable, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_table(table, file).map_err(|e| Error::csv(path, e))
}

/// Writes `code,label` lines for the table's class names.
pub fn write_label_mapping<W: Write>(table: &FeatureTable, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["code", "label"])?;
    for j in 0..table.n_classes() {
        w.write_record([j.to_string(), table.class_name(j)])?;
    }
    w.flush()?;
    Ok(())
}

/// Documents from a text file (one per non-blank line) or, when `column` is
/// given, from that column of a CSV file with a header.
pub fn load_corpus(path: &Path, column: Option<&str>) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    match column {
        None => Ok(text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::to_string)
            .collect()),
        Some(name) => {
            let mut reader = csv::Reader::from_reader(text.as_bytes());
            let headers = reader.headers().map_err(|e| Error::csv(path, e))?.clone();
            let idx = headers.iter().position(|h| h == name).ok_or_else(|| Error::Parse {
                row: 1,
                column: name.to_string(),
                message: format!("column not found in {}", path.display()),
            })?;
            reader
                .records()
                .map(|r| {
                    let r = r.map_err(|e| Error::csv(path, e))?;
                    Ok(r.get(idx).unwrap_or("").to_string())
                })
                .collect()
        }
    }
}
