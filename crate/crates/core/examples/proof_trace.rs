//! Replays the lower-bound argument on every colour of a random configuration
//! and prints which branch each colour takes.
//!
//! ```text
//! cargo run --release --example proof_trace -- [d] [seed]
//! ```

use colourful_depth::cli::{render_report, Format};
use colourful_depth::config::CoreMode;
use colourful_depth::depth::DepthEngine;
use colourful_depth::io::{random_configuration, RandomSpec};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(3, |a| a.parse().expect("d"));
    let seed: u64 = args.get(1).map_or(0, |a| a.parse().expect("seed"));

    let config = random_configuration(&RandomSpec::new(d, 100, seed, CoreMode::Full))
        .expect("configuration");
    let engine = DepthEngine::new(&config);
    let report = engine.enumerate_depth();
    let traces: Vec<_> = (0..config.n())
        .map(|c| {
            engine
                .proof_trace(&report, c)
                .unwrap_or_else(|e| panic!("{e}"))
        })
        .collect();
    print!("{}", render_report(&traces, Format::Human));
}
