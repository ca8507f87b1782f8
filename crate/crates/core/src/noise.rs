//! Label-noise models.
//!
//! A [`NoiseSpec`] assigns every point a flip probability `η_x < 0.5`;
//! [`inject`] draws one corrupted labelling from those probabilities.
//!
//! Textual syntax (used by the command line):
//!
//! ```text
//! uniform:0.2
//! cccn:0.1,0.3                         η for +1 points, η for -1 points
//! quadrant:0.15,0.20,0.25,0.30         centre = mean of the first two features
//! quadrant:0.15,0.20,0.25,0.30,auto
//! quadrant:0.15,0.20,0.25,0.30,5.8,3.0
//! perpoint:rates.txt                   one η per line
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use rand::Rng;

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use crate::rng::stream_rng;

/// Origin used to split the first two features into quadrants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadrantCenter {
    /// Mean of the first two features of the dataset the noise is applied to.
    Auto,
    Fixed([f64; 2]),
}

#[derive(Debug, Clone, PartialEq)]
pub enum NoiseSpec {
    Uniform(f64),
    /// One rate per point; `source` records where the table came from.
    PerPoint {
        rates: Vec<f64>,
        source: Option<PathBuf>,
    },
    ClassConditional {
        positive: f64,
        negative: f64,
    },
    /// Rates for quadrants 1..4 counter-clockwise: (+,+), (-,+), (-,-), (+,-).
    Quadrant {
        rates: [f64; 4],
        center: QuadrantCenter,
    },
}

fn check_rate(rate: f64) -> Result<f64> {
    if rate.is_finite() && (0.0..0.5).contains(&rate) {
        Ok(rate)
    } else {
        Err(Error::InvalidNoise(format!("rate {rate} is outside [0, 0.5)")))
    }
}

fn parse_number(text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| Error::InvalidNoise(format!("'{text}' is not a number")))
}

impl NoiseSpec {
    pub fn none() -> NoiseSpec {
        NoiseSpec::Uniform(0.0)
    }

    pub fn per_point(rates: Vec<f64>) -> NoiseSpec {
        NoiseSpec::PerPoint { rates, source: None }
    }

    /// Checks every rate is in `[0, 0.5)`. Dataset-dependent checks happen
    /// in [`flip_probabilities`].
    pub fn validate(&self) -> Result<()> {
        match self {
            NoiseSpec::Uniform(r) => check_rate(*r).map(drop),
            NoiseSpec::PerPoint { rates, .. } => rates.iter().try_for_each(|&r| check_rate(r).map(drop)),
            NoiseSpec::ClassConditional { positive, negative } => {
                check_rate(*positive)?;
                check_rate(*negative).map(drop)
            }
            NoiseSpec::Quadrant { rates, center } => {
                rates.iter().try_for_each(|&r| check_rate(r).map(drop))?;
                match center {
                    QuadrantCenter::Fixed(c) if c.iter().any(|v| !v.is_finite()) => {
                        Err(Error::InvalidNoise("quadrant centre is not finite".into()))
                    }
                    _ => Ok(()),
                }
            }
        }
    }

    /// Parses the textual syntax. `perpoint:` paths are read immediately and
    /// resolved relative to `base_dir` when relative.
    pub fn parse_with_base(text: &str, base_dir: Option<&Path>) -> Result<NoiseSpec> {
        if text.trim() == "none" {
            return Ok(NoiseSpec::none());
        }
        let (kind, args) = text
            .split_once(':')
            .ok_or_else(|| Error::InvalidNoise(format!("'{text}' has no 'kind:' prefix")))?;
        let spec = match kind.trim() {
            "uniform" => NoiseSpec::Uniform(parse_number(args)?),
            "none" if args.trim().is_empty() => NoiseSpec::none(),
            "cccn" => {
                let v = args.split(',').map(parse_number).collect::<Result<Vec<_>>>()?;
                match v.as_slice() {
                    [p, n] => NoiseSpec::ClassConditional {
                        positive: *p,
                        negative: *n,
                    },
                    _ => return Err(Error::InvalidNoise(format!("cccn needs 2 rates, got '{args}'"))),
                }
            }
            "quadrant" => {
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                if parts.len() < 4 {
                    return Err(Error::InvalidNoise(format!("quadrant needs 4 rates, got '{args}'")));
                }
                let mut rates = [0.0; 4];
                for (r, p) in rates.iter_mut().zip(&parts[..4]) {
                    *r = parse_number(p)?;
                }
                let center = match &parts[4..] {
                    [] | ["auto"] => QuadrantCenter::Auto,
                    [x, y] => QuadrantCenter::Fixed([parse_number(x)?, parse_number(y)?]),
                    _ => {
                        return Err(Error::InvalidNoise(format!(
                            "quadrant centre must be 'auto' or 'cx,cy', got '{}'",
                            parts[4..].join(",")
                        )))
                    }
                };
                NoiseSpec::Quadrant { rates, center }
            }
            "perpoint" => {
                let raw = PathBuf::from(args.trim());
                let path = match base_dir {
                    Some(base) if raw.is_relative() => base.join(&raw),
                    _ => raw.clone(),
                };
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Io {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                let rates = text
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(parse_number)
                    .collect::<Result<Vec<_>>>()?;
                NoiseSpec::PerPoint {
                    rates,
                    source: Some(raw),
                }
            }
            other => return Err(Error::InvalidNoise(format!("unknown noise kind '{other}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn parse(text: &str) -> Result<NoiseSpec> {
        NoiseSpec::parse_with_base(text, None)
    }

    /// True when every rate is zero.
    pub fn is_noise_free(&self) -> bool {
        match self {
            NoiseSpec::Uniform(r) => *r == 0.0,
            NoiseSpec::PerPoint { rates, .. } => rates.iter().all(|r| *r == 0.0),
            NoiseSpec::ClassConditional { positive, negative } => *positive == 0.0 && *negative == 0.0,
            NoiseSpec::Quadrant { rates, .. } => rates.iter().all(|r| *r == 0.0),
        }
    }
}

impl std::str::FromStr for NoiseSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NoiseSpec::parse(s)
    }
}

impl fmt::Display for NoiseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseSpec::Uniform(r) if *r == 0.0 => f.write_str("none"),
            NoiseSpec::Uniform(r) => write!(f, "uniform:{r}"),
            NoiseSpec::PerPoint { source: Some(p), .. } => write!(f, "perpoint:{}", p.display()),
            NoiseSpec::PerPoint { rates, source: None } => write!(f, "perpoint:<{} rates>", rates.len()),
            NoiseSpec::ClassConditional { positive, negative } => write!(f, "cccn:{positive},{negative}"),
            NoiseSpec::Quadrant { rates, center } => {
                write!(f, "quadrant:{},{},{},{}", rates[0], rates[1], rates[2], rates[3])?;
                if let QuadrantCenter::Fixed([x, y]) = center {
                    write!(f, ",{x},{y}")?;
                }
                Ok(())
            }
        }
    }
}

/// Component-wise mean of the first two features.
pub fn auto_center(data: &Dataset) -> Result<[f64; 2]> {
    if data.dim() < 2 {
        return Err(Error::InvalidNoise(format!(
            "quadrants need at least 2 features, dataset has {}",
            data.dim()
        )));
    }
    let n = data.len() as f64;
    let (sx, sy) = data
        .points()
        .iter()
        .fold((0.0, 0.0), |(sx, sy), p| (sx + p[0], sy + p[1]));
    Ok([sx / n, sy / n])
}

/// Quadrant index in `0..4` for (+,+), (-,+), (-,-), (+,-); a coordinate equal
/// to the centre counts as `+`.
pub fn quadrant_of(point: &[f64], center: [f64; 2]) -> usize {
    let right = point[0] >= center[0];
    let up = point[1] >= center[1];
    match (right, up) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    }
}

/// Per-point flip probabilities of `spec` on `data`.
pub fn flip_probabilities(data: &Dataset, spec: &NoiseSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    match spec {
        NoiseSpec::Uniform(r) => Ok(vec![*r; data.len()]),
        NoiseSpec::PerPoint { rates, .. } => {
            if rates.len() != data.len() {
                return Err(Error::InvalidNoise(format!(
                    "per-point table has {} rates for {} points",
                    rates.len(),
                    data.len()
                )));
            }
            Ok(rates.clone())
        }
        NoiseSpec::ClassConditional { positive, negative } => Ok(data
            .labels()
            .iter()
            .map(|l| match l {
                Label::Positive => *positive,
                Label::Negative => *negative,
            })
            .collect()),
        NoiseSpec::Quadrant { rates, center } => {
            let center = match center {
                QuadrantCenter::Auto => auto_center(data)?,
                QuadrantCenter::Fixed(c) => {
                    auto_center(data)?; // dimension check
                    *c
                }
            };
            Ok(data.points().iter().map(|p| rates[quadrant_of(p, center)]).collect())
        }
    }
}

/// A clean dataset together with one corrupted labelling of it.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisyDataset {
    base: Dataset,
    noisy_labels: Vec<Label>,
    flipped: Vec<bool>,
    seed: u64,
    stream: u64,
}

impl NoisyDataset {
    pub fn base(&self) -> &Dataset {
        &self.base
    }

    pub fn noisy_labels(&self) -> &[Label] {
        &self.noisy_labels
    }

    pub fn flipped(&self) -> &[bool] {
        &self.flipped
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn flip_count(&self) -> usize {
        self.flipped.iter().filter(|&&f| f).count()
    }

    /// The observed training set: clean points and masses, noisy labels.
    pub fn training_set(&self) -> Dataset {
        self.base
            .with_labels(self.noisy_labels.clone())
            .expect("label count matches by construction")
    }
}

/// Flips each label independently with its probability, using stream 0 of `seed`.
pub fn inject(data: &Dataset, spec: &NoiseSpec, seed: u64) -> Result<NoisyDataset> {
    inject_stream(data, spec, seed, 0)
}

/// [`inject`] reading stream `stream` of `seed`.
pub fn inject_stream(data: &Dataset, spec: &NoiseSpec, seed: u64, stream: u64) -> Result<NoisyDataset> {
    let etas = flip_probabilities(data, spec)?;
    let mut rng = stream_rng(seed, stream);
    // one uniform draw per point, regardless of its rate, keeps streams aligned
    let flipped: Vec<bool> = etas.iter().map(|&eta| rng.random::<f64>() < eta).collect();
    let noisy_labels = data
        .labels()
        .iter()
        .zip(&flipped)
        .map(|(&l, &f)| if f { l.flipped() } else { l })
        .collect();
    Ok(NoisyDataset {
        base: data.clone(),
        noisy_labels,
        flipped,
        seed,
        stream,
    })
}
