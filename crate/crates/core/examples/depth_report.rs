//! Depth, containing simplices and coverage table of a configuration file.
//!
//! ```text
//! cargo run --release --example depth_report -- data/w2.json
//! ```

use std::path::PathBuf;

use colourful_depth::cli::{render_report, Format};
use colourful_depth::depth::{bound_formulas, DepthEngine};
use colourful_depth::io::load_configuration;

fn main() {
    let path: PathBuf = std::env::args_os().nth(1).map_or_else(
        || concat!(env!("CARGO_MANIFEST_DIR"), "/data/w2.json").into(),
        PathBuf::from,
    );
    let config = load_configuration(&path).unwrap_or_else(|e| panic!("{e}"));
    let report = DepthEngine::new(&config).enumerate_depth();
    print!("{}", render_report(&report, Format::Human));
    let bound = bound_formulas(config.d() as u64, 0, 0, 0, 0).theorem;
    println!("\nlower bound for d = {}: {bound}", config.d());
}
