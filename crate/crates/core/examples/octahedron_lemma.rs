//! Checks the octahedron dichotomy on every octahedron of a random
//! configuration, probing at the antipodes and at random directions.
//!
//! ```text
//! cargo run --release --example octahedron_lemma -- [d] [seed] [samples]
//! ```

use colourful_depth::cli::{render_report, Format};
use colourful_depth::config::CoreMode;
use colourful_depth::depth::{check_all_octahedra, check_sampled_octahedra, DepthEngine, ProbeSet};
use colourful_depth::io::{random_configuration, RandomSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: usize = args.first().map_or(3, |a| a.parse().expect("d"));
    let seed: u64 = args.get(1).map_or(0, |a| a.parse().expect("seed"));
    let samples: Option<usize> = args.get(2).map(|a| a.parse().expect("samples"));

    let config = random_configuration(&RandomSpec::new(d, 100, seed, CoreMode::Full))
        .expect("configuration");
    let engine = DepthEngine::new(&config);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes = ProbeSet::antipodes_and_random(&engine, 32, &mut rng);
    let suite = match samples {
        Some(k) => check_sampled_octahedra(&engine, &probes, k, &mut rng),
        None => check_all_octahedra(&engine, &probes),
    };
    print!("{}", render_report(&suite, Format::Human));
    assert!(suite.passes());
}
