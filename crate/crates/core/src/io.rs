//! Configuration documents and seeded random configurations.
//!
//! A configuration document is JSON with fields in a fixed order:
//!
//! ```json
//! {
//!   "d": 2,
//!   "mode": "full",
//!   "classes": [
//!     [["1", "0"], ["-1", "1"], ["-1", "-1"]],
//!     [["0", "1"], ["-1", "-1"], ["1", "-1"]],
//!     [["-1", "0"], ["1", "-1"], ["3/2", "2"]]
//!   ],
//!   "provenance": {"generator": "random", "rng": "chacha8", "seed": 1}
//! }
//! ```
//!
//! Coordinates are strings holding an integer or a fraction `a/b`, so they
//! survive any JSON reader exactly. `provenance` is optional.

use std::path::{Path, PathBuf};

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{ConfigError, Configuration, CoreMode};
use crate::depth::DepthEngine;
use crate::exact::Rat;
use crate::geometry::origin_in_hull_interior;

/// Name recorded for the generator used by every seeded routine.
pub const RNG_NAME: &str = "chacha8";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u64>,
}

impl Provenance {
    pub fn seeded(generator: &str, seed: u64) -> Provenance {
        Provenance {
            generator: generator.into(),
            rng: Some(RNG_NAME.into()),
            seed: Some(seed),
            bound: None,
            attempts: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub d: usize,
    pub mode: CoreMode,
    pub classes: Vec<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl ConfigDocument {
    pub fn from_config(config: &Configuration, provenance: Option<Provenance>) -> ConfigDocument {
        ConfigDocument {
            d: config.d(),
            mode: config.mode(),
            classes: config.raw_classes(),
            provenance,
        }
    }

    pub fn parse(text: &str) -> Result<ConfigDocument, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_configuration(&self) -> Result<Configuration, IoError> {
        Ok(Configuration::new(self.d, self.classes.clone(), self.mode)?)
    }

    /// Canonical text: one point per line, lowest-terms rationals.
    pub fn to_json(&self) -> String {
        let mut out = format!(
            "{{\n  \"d\": {},\n  \"mode\": \"{}\",\n  \"classes\": [\n",
            self.d, self.mode
        );
        for (c, class) in self.classes.iter().enumerate() {
            let points: Vec<String> = class.iter().map(|p| spaced_json(p)).collect();
            out.push_str(&format!("    [{}]", points.join(", ")));
            out.push_str(if c + 1 < self.classes.len() {
                ",\n"
            } else {
                "\n"
            });
        }
        out.push_str("  ]");
        if let Some(p) = &self.provenance {
            out.push_str(&format!(",\n  \"provenance\": {}", spaced_json(p)));
        }
        out.push_str("\n}\n");
        out
    }
}

/// Single-line JSON with a space after every `,` and `:`.
struct Spaced;

impl serde_json::ser::Formatter for Spaced {
    fn begin_array_value<W: ?Sized + std::io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + std::io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> std::io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b": ")
    }
}

fn spaced_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Spaced);
    value.serialize(&mut ser).expect("documents serialise");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

pub fn parse_configuration(text: &str) -> Result<Configuration, IoError> {
    ConfigDocument::parse(text)?.to_configuration()
}

pub fn to_json(config: &Configuration, provenance: Option<Provenance>) -> String {
    ConfigDocument::from_config(config, provenance).to_json()
}

pub fn load_document(path: &Path) -> Result<ConfigDocument, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })?;
    ConfigDocument::parse(&text)
}

pub fn load_configuration(path: &Path) -> Result<Configuration, IoError> {
    load_document(path)?.to_configuration()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpec {
    pub d: usize,
    /// Coordinates are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub seed: u64,
    pub mode: CoreMode,
    /// Candidate configurations tried before giving up.
    pub attempts: u64,
}

impl RandomSpec {
    pub fn new(d: usize, bound: i64, seed: u64, mode: CoreMode) -> RandomSpec {
        RandomSpec {
            d,
            bound,
            seed,
            mode,
            attempts: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("no valid configuration after {0} attempts; try a larger coordinate bound")]
    Exhausted(u64),
}

fn random_point<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vec<i64> {
    loop {
        let p: Vec<i64> = (0..d).map(|_| rng.random_range(-bound..=bound)).collect();
        if p.iter().any(|&x| x != 0) {
            return p;
        }
    }
}

fn to_rats(points: Vec<Vec<i64>>) -> Vec<Vec<Rat>> {
    points
        .into_iter()
        .map(|p| p.into_iter().map(Rat::from_int).collect())
        .collect()
}

fn class_contains_origin(points: &[Vec<Rat>], d: usize) -> bool {
    origin_in_hull_interior(points, d).unwrap_or(false)
}

/// A seeded configuration satisfying the core condition of `spec.mode`.
///
/// Full mode samples each class until its hull contains the origin. Diamond
/// mode samples the first `d` classes freely and the last inside a random
/// open half-space, so the last class never has the origin in its hull.
pub fn random_configuration(spec: &RandomSpec) -> Result<Configuration, GenerateError> {
    if spec.d == 0 || spec.bound < 1 || spec.attempts == 0 {
        return Err(GenerateError::Spec(format!(
            "need d >= 1, bound >= 1, attempts >= 1; got d={}, bound={}, attempts={}",
            spec.d, spec.bound, spec.attempts
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (d, n, m) = (spec.d, spec.d + 1, spec.bound);
    for _ in 0..spec.attempts {
        let classes: Vec<Vec<Vec<Rat>>> = match spec.mode {
            CoreMode::Full => {
                let mut classes = Vec::with_capacity(n);
                for _ in 0..n {
                    let class = loop {
                        let c = to_rats((0..n).map(|_| random_point(&mut rng, d, m)).collect());
                        if class_contains_origin(&c, d) {
                            break c;
                        }
                    };
                    classes.push(class);
                }
                classes
            }
            CoreMode::Diamond => {
                let mut classes: Vec<Vec<Vec<Rat>>> = (0..d)
                    .map(|_| to_rats((0..n).map(|_| random_point(&mut rng, d, m)).collect()))
                    .collect();
                let u = random_point(&mut rng, d, m);
                let side = |p: &[i64]| p.iter().zip(&u).map(|(a, b)| a * b).sum::<i64>() > 0;
                let last: Vec<Vec<i64>> = (0..n)
                    .map(|_| loop {
                        let p = random_point(&mut rng, d, m);
                        if side(&p) {
                            break p;
                        }
                    })
                    .collect();
                classes.push(to_rats(last));
                classes
            }
        };
        if let Ok(config) = Configuration::new(d, classes, spec.mode) {
            return Ok(config);
        }
    }
    Err(GenerateError::Exhausted(spec.attempts))
}

/// Searches seeded d = 2 diamond-core configurations for one of depth 3.
///
/// The first two classes are sampled with the origin interior to each hull
/// and the third is clustered around one random direction. Returns the
/// witness and the number of candidates tried.
pub fn find_diamond_witness_d2(
    seed: u64,
    budget: u64,
) -> Result<(Configuration, u64), GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 1000;
    for attempt in 1..=budget {
        let mut classes = Vec::new();
        for _ in 0..2 {
            let class = loop {
                let c = to_rats((0..3).map(|_| random_point(&mut rng, 2, bound)).collect());
                if class_contains_origin(&c, 2) {
                    break c;
                }
            };
            classes.push(class);
        }
        let u = random_point(&mut rng, 2, 20);
        let cluster: Vec<Vec<i64>> = (0..3)
            .map(|_| {
                let scale = rng.random_range(30..=50);
                u.iter()
                    .map(|x| x * scale + rng.random_range(-5..=5))
                    .collect()
            })
            .collect();
        classes.push(to_rats(cluster));
        let Ok(config) = Configuration::new(2, classes, CoreMode::Diamond) else {
            continue;
        };
        if DepthEngine::new(&config).enumerate_depth().depth == 3 {
            return Ok((config, attempt));
        }
    }
    Err(GenerateError::Exhausted(budget))
}
