//! Connectivity heatmaps of the reference ten-station layout at 100, 200
//! and 300 m. Writes the CSV/JSON files to the directory given as the
//! first argument (default `out/heatmaps`) and prints coarse ASCII maps.
//!
//!     cargo run --release --example coverage_heatmap [out_dir]

use std::path::PathBuf;

use aerotraj::channel::{Environment, EnvironmentKind};
use aerotraj::coverage::{build_grid, layouts, write_heatmap, Deployment, GridSpec, HeatmapMetadata};

fn glyph(id: u32) -> char {
    match id {
        0 => '.',
        1..=9 => char::from_digit(id, 10).unwrap(),
        _ => char::from(b'A' + (id - 10).min(25) as u8),
    }
}

fn main() -> aerotraj::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out/heatmaps".into()));
    std::fs::create_dir_all(&dir).map_err(|e| aerotraj::Error::Io { path: dir.clone(), source: e })?;

    let deployment = Deployment::from_positions(&layouts::FIG1_LAYOUT, Environment::preset(EnvironmentKind::UMa));
    for h in [100.0, 200.0, 300.0] {
        let grid = build_grid(&GridSpec::square(layouts::FIG1_SIDE_M, 50.0, h), &deployment)?;
        let meta = HeatmapMetadata::describe(&grid, "UMa", None);
        write_heatmap(&dir, &format!("heatmap_h{h}"), &grid, &meta)?;

        println!("h = {h} m: {:.1}% of cells are holes ('.')", 100.0 * grid.hole_fraction());
        // Every second row and column keeps the map readable.
        for row in grid.rows_north_up().into_iter().step_by(2) {
            let line: String = row.iter().step_by(2).map(|&id| glyph(id)).collect();
            println!("  {line}");
        }
        println!();
    }
    println!("files written to {}", dir.display());
    Ok(())
}
