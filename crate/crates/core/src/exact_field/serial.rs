//! JSON form of exact values: `{"level": M, "coords": ["p/q", ...]}` for
//! numbers, and the canonical `a + b*sqrt(d)` string for surds.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::number::ExactNumber;
use super::polynomial::ExactPolynomial;
use super::surd::{parse_rational, QuadSurd};

#[derive(Serialize, Deserialize)]
struct NumberRepr {
    level: u64,
    coords: Vec<String>,
}

impl Serialize for ExactNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        NumberRepr {
            level: self.level(),
            coords: self.coords().iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = NumberRepr::deserialize(deserializer)?;
        if repr.level == 0 {
            return Err(D::Error::custom("level must be positive"));
        }
        let coords = repr
            .coords
            .iter()
            .map(|c| parse_rational(c))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        ExactNumber::from_coords(repr.level, &coords).map_err(D::Error::custom)
    }
}

/// Polynomials serialize as their coefficient list, leading coefficient first.
impl Serialize for ExactPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coefficients_descending().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(ExactPolynomial::from_descending(Vec::deserialize(deserializer)?))
    }
}

impl Serialize for QuadSurd {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadSurd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(D::Error::custom)
    }
}
