//! Validated colourful configurations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{IntVec, Rat};
use crate::geometry::{general_position_ints, origin_in_hull_ints, GeoPoint};

/// Which containment hypothesis the configuration satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoreMode {
    /// Origin interior to the hull of every colour class.
    Full,
    /// Origin in the hull of the union of every pair of colour classes.
    Diamond,
}

impl fmt::Display for CoreMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoreMode::Full => "full",
            CoreMode::Diamond => "diamond",
        })
    }
}

impl std::str::FromStr for CoreMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full" => Ok(CoreMode::Full),
            "diamond" => Ok(CoreMode::Diamond),
            other => Err(format!("unknown core mode {other:?}")),
        }
    }
}

/// The class (full mode) or pair of classes (diamond mode) whose hull misses
/// the origin. Colours are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoreViolation {
    Class(usize),
    Pair(usize, usize),
}

impl fmt::Display for CoreViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreViolation::Class(i) => write!(f, "origin not interior to conv(S_{})", i + 1),
            CoreViolation::Pair(i, j) => {
                write!(f, "origin not in conv(S_{} u S_{})", i + 1, j + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("dimension must be at least 1")]
    Dimension,
    #[error("class size: expected {expected} colour classes, found {found}")]
    ClassCount { expected: usize, found: usize },
    #[error("class size: colour {colour} has {found} points, expected {expected}")]
    ClassSize {
        colour: usize,
        expected: usize,
        found: usize,
    },
    #[error("point ({colour}, {index}) has {found} coordinates, expected {expected}")]
    Coordinates {
        colour: usize,
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("point ({colour}, {index}) is the origin")]
    Origin { colour: usize, index: usize },
    #[error("points not distinct: ({0}, {1}) and ({2}, {3})")]
    NotDistinct(usize, usize, usize, usize),
    #[error("points not in general position: {0:?} are linearly dependent")]
    GeneralPosition(Vec<(usize, usize)>),
    #[error("core condition ({mode}) fails: {violation}")]
    Core {
        mode: CoreMode,
        violation: CoreViolation,
    },
}

/// `d + 1` colour classes of `d + 1` points in `R^d`, with the reference
/// point fixed at the origin.
///
/// Construction validates distinctness, general position (every `d`-subset
/// of the point union is linearly independent) and the core condition of
/// the chosen mode. Error messages use one-based colour/point numbers.
#[derive(Debug, Clone)]
pub struct Configuration {
    d: usize,
    mode: CoreMode,
    classes: Vec<Vec<GeoPoint>>,
    ints: Vec<IntVec>,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.mode == other.mode && self.classes == other.classes
    }
}

impl Configuration {
    pub fn new(d: usize, classes: Vec<Vec<Vec<Rat>>>, mode: CoreMode) -> Result<Self, ConfigError> {
        let config = Self::new_unchecked_core(d, classes, mode)?;
        check_core_conditions(&config, mode)
            .map_err(|violation| ConfigError::Core { mode, violation })?;
        Ok(config)
    }

    /// Validates everything except the core condition.
    pub(crate) fn new_unchecked_core(
        d: usize,
        classes: Vec<Vec<Vec<Rat>>>,
        mode: CoreMode,
    ) -> Result<Self, ConfigError> {
        if d == 0 {
            return Err(ConfigError::Dimension);
        }
        let n = d + 1;
        if classes.len() != n {
            return Err(ConfigError::ClassCount {
                expected: n,
                found: classes.len(),
            });
        }
        for (c, class) in classes.iter().enumerate() {
            if class.len() != n {
                return Err(ConfigError::ClassSize {
                    colour: c + 1,
                    expected: n,
                    found: class.len(),
                });
            }
            for (i, p) in class.iter().enumerate() {
                if p.len() != d {
                    return Err(ConfigError::Coordinates {
                        colour: c + 1,
                        index: i + 1,
                        expected: d,
                        found: p.len(),
                    });
                }
                if p.iter().all(|x| x.is_zero()) {
                    return Err(ConfigError::Origin {
                        colour: c + 1,
                        index: i + 1,
                    });
                }
            }
        }
        let classes: Vec<Vec<GeoPoint>> = classes
            .into_iter()
            .enumerate()
            .map(|(c, class)| {
                class
                    .into_iter()
                    .enumerate()
                    .map(|(i, coords)| GeoPoint::new(coords, c, i))
                    .collect()
            })
            .collect();
        let flat: Vec<&GeoPoint> = classes.iter().flatten().collect();
        for (a, p) in flat.iter().enumerate() {
            for q in &flat[a + 1..] {
                if p.coords == q.coords {
                    return Err(ConfigError::NotDistinct(
                        p.colour + 1,
                        p.index + 1,
                        q.colour + 1,
                        q.index + 1,
                    ));
                }
            }
        }
        let ints: Vec<IntVec> = flat.iter().map(|p| IntVec::from_rats(&p.coords)).collect();
        general_position_ints(&ints, d).map_err(|subset| {
            ConfigError::GeneralPosition(subset.iter().map(|&k| (k / n + 1, k % n + 1)).collect())
        })?;
        Ok(Configuration {
            d,
            mode,
            classes,
            ints,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of colours, which is also the size of every class.
    pub fn n(&self) -> usize {
        self.d + 1
    }

    pub fn mode(&self) -> CoreMode {
        self.mode
    }

    pub fn classes(&self) -> &[Vec<GeoPoint>] {
        &self.classes
    }

    pub fn point(&self, colour: usize, index: usize) -> &GeoPoint {
        &self.classes[colour][index]
    }

    /// Flat point id used by bitmask-based bookkeeping.
    pub fn point_id(&self, colour: usize, index: usize) -> usize {
        colour * self.n() + index
    }

    /// Primitive integer direction of a point.
    pub fn int_point(&self, colour: usize, index: usize) -> &IntVec {
        &self.ints[self.point_id(colour, index)]
    }

    pub(crate) fn int_points(&self) -> &[IntVec] {
        &self.ints
    }

    /// Rescales every point by its own positive rational factor.
    pub fn rescaled(&self, factor: impl Fn(usize, usize) -> Rat) -> Configuration {
        let classes = self
            .classes
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|p| {
                        let f = factor(p.colour, p.index);
                        assert!(
                            f.sign() == crate::exact::Sign::Positive,
                            "scale factors must be positive"
                        );
                        p.coords.iter().map(|x| x * &f).collect()
                    })
                    .collect()
            })
            .collect();
        Configuration::new(self.d, classes, self.mode)
            .expect("positive rescaling preserves validity")
    }

    pub fn raw_classes(&self) -> Vec<Vec<Vec<Rat>>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|p| p.coords.clone()).collect())
            .collect()
    }
}

/// Checks the containment hypothesis of `mode` on an already
/// general-position configuration. Hull membership equals interior
/// membership under general position, so no separate strict test is made.
pub fn check_core_conditions(config: &Configuration, mode: CoreMode) -> Result<(), CoreViolation> {
    let n = config.n();
    let class_ints =
        |c: usize| -> Vec<IntVec> { (0..n).map(|i| config.int_point(c, i).clone()).collect() };
    match mode {
        CoreMode::Full => {
            for c in 0..n {
                if !origin_in_hull_ints(&class_ints(c), config.d()) {
                    return Err(CoreViolation::Class(c));
                }
            }
        }
        CoreMode::Diamond => {
            for i in 0..n {
                for j in i + 1..n {
                    let mut pts = class_ints(i);
                    pts.extend(class_ints(j));
                    if !origin_in_hull_ints(&pts, config.d()) {
                        return Err(CoreViolation::Pair(i, j));
                    }
                }
            }
        }
    }
    Ok(())
}
