//! Descriptors of attention heatmaps: relevant-area fraction, maximum Sobel
//! gradient magnitude and the number of connected "super regions" of relevant
//! grid tiles.

mod io;

use std::collections::VecDeque;

pub use io::{load_heatmap, parse_csv_matrix, parse_pgm, write_descriptor_rows, DescriptorRow};

use crate::error::{Error, Result};

/// Grid resolution used when none is given.
pub const DEFAULT_GRID_N: usize = 8;

/// Non-negative `height x width` attention map, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    height: usize,
    width: usize,
    data: Vec<f64>,
}

impl Heatmap {
    pub fn new(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        if height < 3 || width < 3 {
            return Err(Error::InvalidHeatmap(format!(
                "{height}x{width} is smaller than 3x3"
            )));
        }
        if data.len() != height * width {
            return Err(Error::InvalidHeatmap(format!(
                "{} values for a {height}x{width} map",
                data.len()
            )));
        }
        if let Some(v) = data.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidHeatmap(format!("entry {v} is not a finite non-negative value")));
        }
        Ok(Heatmap { height, width, data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidHeatmap("ragged rows".into()));
        }
        Heatmap::new(height, width, rows.concat())
    }

    pub fn filled(height: usize, width: usize, value: f64) -> Result<Self> {
        Heatmap::new(height, width, vec![value; height * width])
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        self.data[r * self.width + c] = value;
    }

    /// Applies `f` to every entry; the result must stay non-negative.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Heatmap> {
        Heatmap::new(self.height, self.width, self.data.iter().map(|&v| f(v)).collect())
    }

    fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Mean of `v - min` over the map. Comparisons are made in this shifted
    /// frame so a constant map has no entry above its mean.
    fn shifted_mean(&self, base: f64) -> f64 {
        self.data.iter().map(|v| v - base).sum::<f64>() / self.data.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Four,
    Eight,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatmapDescriptors {
    pub max_gradient: f64,
    pub relevant_area: f64,
    pub super_regions: usize,
    pub grid_n: usize,
}

/// Element-wise mean of same-shaped maps. Each pixel is summed in sorted
/// order, so the result does not depend on the order of `maps`.
pub fn fuse(maps: &[Heatmap]) -> Result<Heatmap> {
    let first = maps
        .first()
        .ok_or_else(|| Error::InvalidHeatmap("nothing to fuse".into()))?;
    if maps.iter().any(|m| m.height != first.height || m.width != first.width) {
        return Err(Error::Shape("heatmaps to fuse differ in shape".into()));
    }
    let k = maps.len() as f64;
    let mut buf = Vec::with_capacity(maps.len());
    let data = (0..first.data.len())
        .map(|p| {
            buf.clear();
            buf.extend(maps.iter().map(|m| m.data[p]));
            buf.sort_by(f64::total_cmp);
            buf.iter().sum::<f64>() / k
        })
        .collect();
    Heatmap::new(first.height, first.width, data)
}

/// Fraction of pixels strictly above the map mean.
pub fn relevant_area(map: &Heatmap) -> f64 {
    let base = map.min();
    let mean = map.shifted_mean(base);
    let above = map.data.iter().filter(|&&v| v - base > mean).count();
    above as f64 / map.data.len() as f64
}

/// Sobel gradient magnitude `sqrt(gx^2 + gy^2)` at every pixel, with replicate padding.
pub fn gradient_magnitude(map: &Heatmap) -> Vec<f64> {
    let (h, w) = (map.height as isize, map.width as isize);
    let at = |r: isize, c: isize| map.get(r.clamp(0, h - 1) as usize, c.clamp(0, w - 1) as usize);
    let mut out = Vec::with_capacity(map.data.len());
    for r in 0..h {
        for c in 0..w {
            let gx = (at(r - 1, c + 1) + at(r + 1, c + 1) + 2.0 * at(r, c + 1))
                - (at(r - 1, c - 1) + at(r + 1, c - 1) + 2.0 * at(r, c - 1));
            let gy = (at(r + 1, c - 1) + at(r + 1, c + 1) + 2.0 * at(r + 1, c))
                - (at(r - 1, c - 1) + at(r - 1, c + 1) + 2.0 * at(r - 1, c));
            out.push(gx.hypot(gy));
        }
    }
    out
}

/// Largest Sobel gradient magnitude over all pixels.
pub fn max_gradient(map: &Heatmap) -> f64 {
    gradient_magnitude(map).into_iter().fold(0.0, f64::max)
}

/// `[start, end)` of tile `i` out of `n` along an axis of `len` pixels; the
/// last tile absorbs the remainder.
fn tile_span(i: usize, n: usize, len: usize) -> (usize, usize) {
    let size = len / n;
    let end = if i + 1 == n { len } else { (i + 1) * size };
    (i * size, end)
}

/// Row-major `grid_n x grid_n` mask of tiles whose mean exceeds the map mean.
pub fn relevant_tiles(map: &Heatmap, grid_n: usize) -> Result<Vec<bool>> {
    if grid_n == 0 || grid_n > map.height.min(map.width) {
        return Err(Error::Config(format!(
            "grid_n must be in 1..={} for a {}x{} map, got {grid_n}",
            map.height.min(map.width),
            map.height,
            map.width
        )));
    }
    let base = map.min();
    let mean = map.shifted_mean(base);
    let mut mask = Vec::with_capacity(grid_n * grid_n);
    for ti in 0..grid_n {
        let (r0, r1) = tile_span(ti, grid_n, map.height);
        for tj in 0..grid_n {
            let (c0, c1) = tile_span(tj, grid_n, map.width);
            let mut sum = 0.0;
            for r in r0..r1 {
                for c in c0..c1 {
                    sum += map.get(r, c) - base;
                }
            }
            let tile_mean = sum / ((r1 - r0) * (c1 - c0)) as f64;
            mask.push(tile_mean > mean);
        }
    }
    Ok(mask)
}

/// Number of connected components of `true` cells in a `rows x cols` mask (BFS flood fill).
pub fn count_components(mask: &[bool], rows: usize, cols: usize, connectivity: Connectivity) -> usize {
    let mut seen = vec![false; mask.len()];
    let mut queue = VecDeque::new();
    let mut count = 0;
    let offsets: &[(isize, isize)] = match connectivity {
        Connectivity::Four => &[(-1, 0), (1, 0), (0, -1), (0, 1)],
        Connectivity::Eight => &[(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)],
    };
    for start in 0..mask.len() {
        if !mask[start] || seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            let (r, c) = ((p / cols) as isize, (p % cols) as isize);
            for &(dr, dc) in offsets {
                let (nr, nc) = (r + dr, c + dc);
                if nr < 0 || nc < 0 || nr >= rows as isize || nc >= cols as isize {
                    continue;
                }
                let q = nr as usize * cols + nc as usize;
                if mask[q] && !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
    }
    count
}

/// Connected groups of relevant tiles under 4-adjacency.
pub fn super_regions(map: &Heatmap, grid_n: usize) -> Result<usize> {
    super_regions_with(map, grid_n, Connectivity::Four)
}

pub fn super_regions_with(map: &Heatmap, grid_n: usize, connectivity: Connectivity) -> Result<usize> {
    let mask = relevant_tiles(map, grid_n)?;
    Ok(count_components(&mask, grid_n, grid_n, connectivity))
}

/// Fuses the maps of one image and computes the three descriptors on the result.
pub fn describe(maps: &[Heatmap], grid_n: usize) -> Result<HeatmapDescriptors> {
    describe_with(maps, grid_n, Connectivity::Four)
}

pub fn describe_with(maps: &[Heatmap], grid_n: usize, connectivity: Connectivity) -> Result<HeatmapDescriptors> {
    let fused = fuse(maps)?;
    Ok(HeatmapDescriptors {
        max_gradient: max_gradient(&fused),
        relevant_area: relevant_area(&fused),
        super_regions: super_regions_with(&fused, grid_n, connectivity)?,
        grid_n,
    })
}

/// Mean and (population) standard deviation of each descriptor over a corpus:
/// `[(max_gradient), (relevant_area), (super_regions)]`.
pub fn summarize(rows: &[HeatmapDescriptors]) -> [(f64, f64); 3] {
    let stats = |xs: Vec<f64>| {
        let n = xs.len().max(1) as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        (mean, var.sqrt())
    };
    [
        stats(rows.iter().map(|d| d.max_gradient).collect()),
        stats(rows.iter().map(|d| d.relevant_area).collect()),
        stats(rows.iter().map(|d| d.super_regions as f64).collect()),
    ]
}
