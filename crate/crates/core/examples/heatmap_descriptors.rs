//! Attention-map descriptors: fuse the maps of four tasks, then measure the
//! relevant area, the sharpest gradient and the number of super regions.

use fuzzlens::heatmap::{describe, gradient_magnitude, parse_pgm, relevant_tiles, summarize, DEFAULT_GRID_N};
use fuzzlens::synth::{gaussian_heatmap, step_heatmap};

fn main() -> fuzzlens::Result<()> {
    // four task-specific maps of one painting, each attending slightly elsewhere
    let tasks = [
        gaussian_heatmap(64, 64, 0.30, 0.30, 0.12),
        gaussian_heatmap(64, 64, 0.32, 0.35, 0.10),
        gaussian_heatmap(64, 64, 0.70, 0.70, 0.08),
        gaussian_heatmap(64, 64, 0.28, 0.30, 0.15),
    ];
    let d = describe(&tasks, DEFAULT_GRID_N)?;
    println!(
        "fused: max gradient {:.3}, relevant area {:.3}, {} super regions on a {n}x{n} grid",
        d.max_gradient,
        d.relevant_area,
        d.super_regions,
        n = d.grid_n
    );
    let fused = fuzzlens::heatmap::fuse(&tasks)?;
    let mask = relevant_tiles(&fused, 8)?;
    for row in mask.chunks(8) {
        println!("  {}", row.iter().map(|&r| if r { '#' } else { '.' }).collect::<String>());
    }

    let step = step_heatmap(8, 8, 0.5);
    let edge = gradient_magnitude(&step);
    println!("\nstep of 0.5: gradient along row 0 = {:?}", &edge[..8]);

    let pgm = "P2\n# tiny map\n4 3\n10\n0 0 10 10\n0 5 10 10\n0 0 0 10\n";
    let map = parse_pgm(pgm)?;
    println!("PGM map {}x{} with max value {}", map.height(), map.width(), map.data().iter().cloned().fold(0.0, f64::max));

    let corpus: Vec<_> = (0..20)
        .map(|i| {
            let c = 0.2 + 0.03 * i as f64;
            describe(&[gaussian_heatmap(48, 48, c, 1.0 - c, 0.1), gaussian_heatmap(48, 48, 0.5, c, 0.2)], 8)
        })
        .collect::<fuzzlens::Result<_>>()?;
    let [g, a, s] = summarize(&corpus);
    println!("\n20 images, mean (std):");
    println!("  maximum gradient  {:.3} ({:.3})", g.0, g.1);
    println!("  relevant area     {:.3} ({:.3})", a.0, a.1);
    println!("  super regions     {:.2} ({:.2})", s.0, s.1);
    Ok(())
}
