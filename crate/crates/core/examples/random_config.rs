//! Emits a seeded random configuration document and reads it back.
//!
//! ```text
//! cargo run --release --example random_config -- [d] [seed] [full|diamond]
//! ```

use colourful_depth::config::CoreMode;
use colourful_depth::depth::enumerate_depth;
use colourful_depth::io::{
    parse_configuration, random_configuration, to_json, Provenance, RandomSpec,
};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(2, |a| a.parse().expect("d"));
    let seed: u64 = args.get(1).map_or(0, |a| a.parse().expect("seed"));
    let mode: CoreMode = args
        .get(2)
        .map_or(CoreMode::Full, |a| a.parse().expect("mode"));

    let spec = RandomSpec::new(d, 100, seed, mode);
    let config = random_configuration(&spec).unwrap_or_else(|e| panic!("{e}"));
    let mut prov = Provenance::seeded("random", seed);
    prov.bound = Some(spec.bound);
    let text = to_json(&config, Some(prov));
    print!("{text}");
    let back = parse_configuration(&text).expect("round trip");
    assert_eq!(back, config);
    eprintln!("depth {}", enumerate_depth(&config).depth);
}
