//! Finds a planar full-core configuration of depth 5 by scanning seeds and
//! writes it to `data/w2.json` with its seed.
//!
//! ```text
//! cargo run --release --example find_w2 -- [first-seed] [bound]
//! ```

use colourful_depth::config::CoreMode;
use colourful_depth::depth::enumerate_depth;
use colourful_depth::io::{random_configuration, to_json, Provenance, RandomSpec};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let first: u64 = args.first().map_or(0, |a| a.parse().expect("seed"));
    let bound: i64 = args.get(1).map_or(100, |a| a.parse().expect("bound"));
    let mut histogram = std::collections::BTreeMap::new();
    for seed in first.. {
        let spec = RandomSpec::new(2, bound, seed, CoreMode::Full);
        let config = random_configuration(&spec).expect("generation");
        let depth = enumerate_depth(&config).depth;
        *histogram.entry(depth).or_insert(0u32) += 1;
        if depth == 5 {
            let mut prov = Provenance::seeded("random_configuration", seed);
            prov.bound = Some(bound);
            let text = to_json(&config, Some(prov));
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/w2.json");
            std::fs::write(path, &text).expect("write witness");
            println!("seed {seed}: depth 5\n{text}");
            println!("depths seen: {histogram:?}");
            return;
        }
    }
}
