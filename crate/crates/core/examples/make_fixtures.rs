//! Regenerates the synthetic grid fixtures under `tests/fixtures`.
//!
//! ```text
//! cargo run --example make_fixtures
//! ```

use std::fs;
use std::path::Path;

use gridvuln::generate::geometric_grid;
use gridvuln::graph::to_edge_list;

const FIXTURES: &[(&str, usize, usize, u64)] = &[
    ("ieee118_style", 118, 179, 118),
    ("ieee300_style", 300, 411, 300),
    ("ucte_style", 1254, 1811, 1254),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    fs::create_dir_all(&dir)?;
    for &(name, n, m, seed) in FIXTURES {
        let grid = geometric_grid(n, m, seed)?;
        let header = format!("# synthetic {name}: {n} buses, {m} lines, seed {seed}\n");
        fs::write(
            dir.join(format!("{name}.txt")),
            header + &to_edge_list(&grid),
        )?;
        println!(
            "{name}: {} nodes, {} edges",
            grid.node_count(),
            grid.edge_count()
        );
    }
    Ok(())
}
