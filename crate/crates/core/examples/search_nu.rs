//! Minimum vector systems by exhaustive search.
//!
//! ```text
//! cargo run --release --example search_nu -- 3 full 8
//! cargo run --release --example search_nu -- 3 diamond 4
//! cargo run --release --example search_nu -- 2 full 5 plain
//! ```

use std::sync::atomic::AtomicU64;
use std::sync::Arc;

use colourful_depth::systems::{search_min_system, SearchMode, SearchOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(2, |a| a.parse().expect("d"));
    let mode = match args.get(1).map(String::as_str) {
        Some("diamond") => SearchMode::Diamond,
        _ => SearchMode::Full,
    };
    let max_k: usize = args.get(2).map_or(5, |a| a.parse().expect("max size"));

    let mut opts = SearchOptions::new(d, mode, max_k);
    match args.get(3).map(String::as_str) {
        Some("plain") => opts.plain = true,
        Some("nosym") => opts.symmetry = false,
        _ => {}
    }
    let counter = Arc::new(AtomicU64::new(0));
    opts.progress = Some(counter.clone());
    let cert = search_min_system(&opts).expect("search");
    for s in &cert.nodes_per_size {
        println!("size {:>2}: {} nodes", s.k, s.nodes);
    }
    match cert.witness() {
        Some(w) => println!("witness of size {}:\n{}", w.len(), w.to_text()),
        None => println!("outcome: {:?}", cert.outcome),
    }
    println!("{:.2}s on {} threads", cert.wall_seconds, cert.threads);
}
