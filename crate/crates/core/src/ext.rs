//! Naturals extended with infinity, and exact rationals.

use serde::{Deserialize, Serialize};
use std::fmt;

pub type Rational = num_rational::Ratio<u64>;

/// A natural number or infinity. Serialized as a plain integer or the string
/// `"infinity"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExtNat {
    Finite(u64),
    #[serde(with = "infinity_str")]
    Infinity,
}

mod infinity_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("infinity")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let v = String::deserialize(d)?;
        if v == "infinity" {
            Ok(())
        } else {
            Err(de::Error::custom("expected \"infinity\""))
        }
    }
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinity => None,
        }
    }

    /// Addition with `a + infinity = infinity`.
    pub fn saturating_add(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => {
                ExtNat::Finite(a.checked_add(b).expect("extended natural overflow"))
            }
            _ => ExtNat::Infinity,
        }
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Infinity) => std::cmp::Ordering::Less,
            (ExtNat::Infinity, ExtNat::Finite(_)) => std::cmp::Ordering::Greater,
            (ExtNat::Infinity, ExtNat::Infinity) => std::cmp::Ordering::Equal,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Finite(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinity => write!(f, "infinity"),
        }
    }
}

/// A value together with how it was established: exactly, by a bounded scan,
/// or not at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reported<T> {
    Exact(T),
    BoxRelative(T),
    Unknown,
}

impl<T> Reported<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Reported::Exact(v) | Reported::BoxRelative(v) => Some(v),
            Reported::Unknown => None,
        }
    }

    pub fn provenance(&self) -> &'static str {
        match self {
            Reported::Exact(_) => "exact",
            Reported::BoxRelative(_) => "box-relative",
            Reported::Unknown => "unknown",
        }
    }
}

/// Render a rational as `"p/q"` (or `"p"` when integral), for report output.
pub fn rational_string(r: Rational) -> String {
    if *r.denom() == 1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
