//! Deterministic generators for the experimental distributions.

use serde::{Deserialize, Serialize};

use crate::data::DataSet;
use crate::error::{DepthError, Result};
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    /// Standard normal `N(0, I)`.
    Normal,
    /// Uniform on the annulus `r1 <= |x| <= r2` in the plane.
    Ring,
    /// The three vertices `(0, 1), (-1, 0), (1, 0)`.
    Triangle,
}

impl std::str::FromStr for Distribution {
    type Err = DepthError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normal" => Ok(Self::Normal),
            "ring" => Ok(Self::Ring),
            "triangle" => Ok(Self::Triangle),
            other => Err(DepthError::InvalidSpec(format!(
                "unknown distribution {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: Distribution,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub radii: (f64, f64),
}

impl GeneratorSpec {
    pub fn normal(n: usize, d: usize, seed: u64) -> Self {
        Self {
            kind: Distribution::Normal,
            n,
            d,
            seed,
            radii: (1.0, 2.0),
        }
    }

    pub fn ring(n: usize, seed: u64) -> Self {
        Self {
            kind: Distribution::Ring,
            n,
            d: 2,
            seed,
            radii: (1.0, 2.0),
        }
    }

    pub fn triangle() -> Self {
        Self {
            kind: Distribution::Triangle,
            n: 3,
            d: 2,
            seed: 0,
            radii: (1.0, 2.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(DepthError::InvalidSpec(msg));
        match self.kind {
            Distribution::Normal => {
                if self.n == 0 || self.d == 0 {
                    return bad("normal needs n >= 1 and d >= 1".into());
                }
            }
            Distribution::Ring => {
                let (r1, r2) = self.radii;
                if self.d != 2 {
                    return bad(format!("ring is planar, got d = {}", self.d));
                }
                if self.n == 0 {
                    return bad("ring needs n >= 1".into());
                }
                if !(r1 > 0.0 && r1 < r2 && r2.is_finite()) {
                    return bad(format!("ring needs 0 < r1 < r2, got ({r1}, {r2})"));
                }
            }
            Distribution::Triangle => {
                if self.d != 2 {
                    return bad(format!("triangle is planar, got d = {}", self.d));
                }
            }
        }
        Ok(())
    }
}

/// Norm used for the annulus bounds, shared with callers that check them.
pub fn planar_norm(x: f64, y: f64) -> f64 {
    (x * x + y * y).sqrt()
}

pub fn generate(spec: &GeneratorSpec) -> Result<DataSet> {
    spec.validate()?;
    let mut stream = Stream::new(spec.seed);
    match spec.kind {
        Distribution::Normal => {
            let coords = (0..spec.n * spec.d)
                .map(|_| stream.standard_normal())
                .collect();
            DataSet::from_flat(coords, spec.d)
        }
        Distribution::Ring => {
            // Rejection from the bounding square: exactly uniform, and the
            // accepted points satisfy the bounds under `planar_norm`.
            let (r1, r2) = spec.radii;
            let mut coords = Vec::with_capacity(2 * spec.n);
            while coords.len() < 2 * spec.n {
                let x = stream.uniform_in(-r2, r2);
                let y = stream.uniform_in(-r2, r2);
                let r = planar_norm(x, y);
                if r1 <= r && r <= r2 {
                    coords.extend([x, y]);
                }
            }
            DataSet::from_flat(coords, 2)
        }
        Distribution::Triangle => DataSet::new(&[[0.0, 1.0], [-1.0, 0.0], [1.0, 0.0]]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_vertices() {
        let t = generate(&GeneratorSpec::triangle()).unwrap();
        assert_eq!(
            t.to_vecs(),
            vec![vec![0.0, 1.0], vec![-1.0, 0.0], vec![1.0, 0.0]]
        );
    }

    #[test]
    fn ring_area_fraction() {
        let ring = generate(&GeneratorSpec::ring(10_000, 4)).unwrap();
        let mut inner = 0;
        for p in ring.points() {
            let r = planar_norm(p[0], p[1]);
            assert!((1.0..=2.0).contains(&r));
            if r <= 1.5 {
                inner += 1;
            }
        }
        let frac = inner as f64 / 10_000.0;
        assert!((frac - 1.25 / 3.0).abs() < 0.02, "{frac}");
    }

    #[test]
    fn normal_moments() {
        let data = generate(&GeneratorSpec::normal(10_000, 2, 8)).unwrap();
        for k in 0..2 {
            let xs: Vec<f64> = data.points().map(|p| p[k]).collect();
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
            assert!(mean.abs() < 0.05, "mean {mean}");
            assert!((var - 1.0).abs() < 0.1, "var {var}");
        }
    }

    #[test]
    fn invalid_specs() {
        let mut s = GeneratorSpec::ring(10, 0);
        s.d = 3;
        assert!(generate(&s).is_err());
        let mut s = GeneratorSpec::ring(10, 0);
        s.radii = (2.0, 1.0);
        assert!(generate(&s).is_err());
        assert!(generate(&GeneratorSpec::normal(0, 2, 0)).is_err());
        assert!("cauchy".parse::<Distribution>().is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate(&GeneratorSpec::normal(100, 3, 21)).unwrap();
        let b = generate(&GeneratorSpec::normal(100, 3, 21)).unwrap();
        let c = generate(&GeneratorSpec::normal(100, 3, 22)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
