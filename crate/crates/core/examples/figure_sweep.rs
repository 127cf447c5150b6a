//! Writes the CSV sweep behind one plot panel to standard output.
//!
//! `cargo run --example figure_sweep -- 1b > fig1b.csv`

use std::io;

use qexchange::sweep::{run_sweep, write_csv, FigureId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let id: FigureId = std::env::args().nth(1).as_deref().unwrap_or("1c").parse()?;
    let points = run_sweep(&id.sweep_config())?;
    write_csv(&points, io::stdout().lock())?;
    eprintln!(
        "panel {id}: {} rows at theta = {}",
        points.len(),
        id.theta()
    );
    Ok(())
}
