//! A planar configuration meeting only the pairwise core condition, with
//! exactly three colourful triangles around the origin.
//!
//! ```text
//! cargo run --release --example diamond_witness_d2 -- [seed] [budget]
//! ```

use colourful_depth::config::{check_core_conditions, CoreMode};
use colourful_depth::depth::enumerate_depth;
use colourful_depth::io::{find_diamond_witness_d2, to_json, Provenance};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let seed: u64 = args.first().map_or(0, |a| a.parse().expect("seed"));
    let budget: u64 = args.get(1).map_or(100_000, |a| a.parse().expect("budget"));

    let (config, attempts) = find_diamond_witness_d2(seed, budget).expect("witness within budget");
    let report = enumerate_depth(&config);
    println!("found after {attempts} attempts, depth {}", report.depth);
    println!(
        "full core holds: {}",
        check_core_conditions(&config, CoreMode::Full).is_ok()
    );
    for v in &report.simplices {
        println!("  simplex {v}");
    }
    let mut prov = Provenance::seeded("find_diamond_witness_d2", seed);
    prov.attempts = Some(attempts);
    print!("{}", to_json(&config, Some(prov)));
}
