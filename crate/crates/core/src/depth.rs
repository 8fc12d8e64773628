use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A depth value `numerator / denominator`, where the denominator is the
/// sample size. Sample depths are always of this form, so they are kept as
/// integer pairs and compared exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "DepthRepr", from = "DepthRepr")]
pub struct Depth {
    pub numerator: usize,
    pub denominator: usize,
}

impl Depth {
    pub fn new(numerator: usize, denominator: usize) -> Self {
        assert!(denominator > 0, "depth denominator must be positive");
        Self {
            numerator,
            denominator,
        }
    }

    pub fn value(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl PartialOrd for Depth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Depth {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as u128 * other.denominator as u128;
        let rhs = other.numerator as u128 * self.denominator as u128;
        lhs.cmp(&rhs)
            .then_with(|| self.denominator.cmp(&other.denominator))
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[derive(Serialize, Deserialize)]
struct DepthRepr {
    numerator: usize,
    denominator: usize,
    #[serde(default)]
    value: f64,
}

impl From<Depth> for DepthRepr {
    fn from(d: Depth) -> Self {
        Self {
            numerator: d.numerator,
            denominator: d.denominator,
            value: d.value(),
        }
    }
}

impl From<DepthRepr> for Depth {
    fn from(r: DepthRepr) -> Self {
        Self {
            numerator: r.numerator,
            denominator: r.denominator.max(1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compares_as_rationals() {
        assert!(Depth::new(1, 3) < Depth::new(1, 2));
        assert!(Depth::new(2, 4) > Depth::new(1, 3));
        assert_eq!(
            Depth::new(2, 4).cmp(&Depth::new(1, 2)),
            Ordering::Greater,
            "equal values order by denominator"
        );
    }

    #[test]
    fn serializes_pair_and_decimal() {
        let s = serde_json::to_string(&Depth::new(9, 23)).unwrap();
        assert!(s.starts_with(r#"{"numerator":9,"denominator":23,"value":0.391304347826"#));
        let back: Depth = serde_json::from_str(&s).unwrap();
        assert_eq!(back, Depth::new(9, 23));
    }
}
