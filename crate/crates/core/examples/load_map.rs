//! Loads the bundled PGM map and an inline ASCII map, then prints cell
//! counts and a cost histogram.
//!
//! cargo run --example load_map

use frontier_explore::grid::{load_map, MapFormat, PgmMeta};
use frontier_explore::CellState;

fn main() -> frontier_explore::Result<()> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let bytes = std::fs::read(format!("{data}/corridor_64.pgm")).expect("bundled map");
    let sidecar =
        std::fs::read_to_string(format!("{data}/corridor_64.yaml")).expect("bundled sidecar");
    let pgm = load_map(&bytes, MapFormat::Pgm(PgmMeta::parse(&sidecar)?))?;
    println!(
        "corridor_64.pgm: {}x{} at {} m, {} occupied, {} free",
        pgm.width(),
        pgm.height(),
        pgm.resolution(),
        pgm.count(CellState::Occupied),
        pgm.count(CellState::Free)
    );

    let ascii = load_map(b"5 3 0.1\n#####\n#.#.#\n#####\n", MapFormat::Ascii)?;
    print!("{}", ascii.to_ascii());

    // Costs after inflation: lethal, inscribed, decaying band, free.
    let mut bands = [0usize; 4];
    for &c in pgm.costs() {
        let band = match c {
            254 => 0,
            253 => 1,
            1..=252 => 2,
            _ => 3,
        };
        bands[band] += 1;
    }
    println!(
        "lethal {} inscribed {} inflated {} free {}",
        bands[0], bands[1], bands[2], bands[3]
    );
    Ok(())
}
