//! Extracts the vector system of random configurations and tests both
//! properties. Full-core configurations satisfy both; pairwise-core ones
//! only need the parity property.
//!
//! ```text
//! cargo run --release --example extract_system -- [d] [count]
//! ```

use colourful_depth::config::CoreMode;
use colourful_depth::io::{random_configuration, RandomSpec};
use colourful_depth::systems::{check_property1, check_property2, extract_system};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(2, |a| a.parse().expect("d"));
    let count: u64 = args.get(1).map_or(5, |a| a.parse().expect("count"));

    for mode in [CoreMode::Full, CoreMode::Diamond] {
        for seed in 0..count {
            let config =
                random_configuration(&RandomSpec::new(d, 100, seed, mode)).expect("configuration");
            let system = extract_system(&config);
            println!(
                "{mode:>7} seed {seed:>3}: size {:>3}, property 1 {:>5}, property 2 {:>5}",
                system.len(),
                check_property1(&system).is_ok(),
                check_property2(&system).is_ok()
            );
        }
    }
    let config =
        random_configuration(&RandomSpec::new(d, 100, 0, CoreMode::Full)).expect("configuration");
    print!(
        "\nsystem of the first full configuration:\n{}",
        extract_system(&config).to_text()
    );
}
