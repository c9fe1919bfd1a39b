//! Heatmap file formats: ASCII PGM (`P2`) and headerless CSV matrices.

use std::io::Write;
use std::path::Path;

use super::{Heatmap, HeatmapDescriptors};
use crate::error::{Error, Result};

/// Parses an ASCII PGM image. Pixel values are divided by `maxval`, so the
/// map lies in `[0, 1]`.
pub fn parse_pgm(text: &str) -> Result<Heatmap> {
    let mut tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    if tokens.next() != Some("P2") {
        return Err(Error::InvalidHeatmap("missing P2 magic number".into()));
    }
    let mut header = |what: &str| -> Result<usize> {
        tokens
            .next()
            .ok_or_else(|| Error::InvalidHeatmap(format!("missing {what}")))?
            .parse::<usize>()
            .map_err(|e| Error::InvalidHeatmap(format!("bad {what}: {e}")))
    };
    let width = header("width")?;
    let height = header("height")?;
    let maxval = header("maxval")?;
    if maxval == 0 {
        return Err(Error::InvalidHeatmap("maxval must be positive".into()));
    }
    let data = tokens
        .map(|t| {
            let v: u32 = t
                .parse()
                .map_err(|e| Error::InvalidHeatmap(format!("bad pixel {t:?}: {e}")))?;
            if v as usize > maxval {
                return Err(Error::InvalidHeatmap(format!("pixel {v} exceeds maxval {maxval}")));
            }
            Ok(f64::from(v) / maxval as f64)
        })
        .collect::<Result<Vec<_>>>()?;
    Heatmap::new(height, width, data)
}

/// Parses a headerless CSV matrix (one map row per line).
pub fn parse_csv_matrix(text: &str) -> Result<Heatmap> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::InvalidHeatmap(e.to_string()))?;
        let row = record
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                cell.parse::<f64>().map_err(|e| Error::Parse {
                    row: r + 1,
                    column: (c + 1).to_string(),
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Heatmap::from_rows(rows)
}

/// Loads a `.pgm` or `.csv` heatmap, choosing the parser by extension.
pub fn load_heatmap(path: &Path) -> Result<Heatmap> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("pgm") => parse_pgm(&text),
        Some(ext) if ext.eq_ignore_ascii_case("csv") => parse_csv_matrix(&text),
        _ => Err(Error::InvalidHeatmap(format!(
            "{}: expected a .pgm or .csv file",
            path.display()
        ))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorRow {
    pub file: String,
    pub descriptors: HeatmapDescriptors,
}

/// Writes `file,max_gradient,relevant_area,super_regions,grid_n` rows with a header.
pub fn write_descriptor_rows<W: Write>(out: W, rows: &[DescriptorRow]) -> std::result::Result<(), csv::Error> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["file", "max_gradient", "relevant_area", "super_regions", "grid_n"])?;
    for row in rows {
        let d = &row.descriptors;
        writer.write_record([
            row.file.clone(),
            d.max_gradient.to_string(),
            d.relevant_area.to_string(),
            d.super_regions.to_string(),
            d.grid_n.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgm_with_comments() {
        let text = "P2\n# made by hand\n3 3\n# max\n4\n0 0 4\n0 2 4 # trailing\n0 0 4\n";
        let m = parse_pgm(text).unwrap();
        assert_eq!((m.height(), m.width()), (3, 3));
        assert_eq!(m.get(1, 1), 0.5);
        assert_eq!(m.get(2, 2), 1.0);
        assert!(parse_pgm("P5\n3 3\n255\n").is_err());
        assert!(parse_pgm("P2\n3 3\n4\n0 0 9 0 0 0 0 0 0").is_err());
    }

    #[test]
    fn csv_matrix() {
        let m = parse_csv_matrix("0,1,2\n3,4,5\n6,7,8\n").unwrap();
        assert_eq!(m.get(2, 1), 7.0);
        assert!(parse_csv_matrix("0,1,2\n3,x,5\n6,7,8\n").is_err());
        assert!(parse_csv_matrix("0,1\n3,4\n").is_err());
    }
}
