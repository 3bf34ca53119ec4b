//! Monoid spec files: the JSON descriptions accepted by `--monoid` and
//! written back out for fuzz counterexamples.
//!
//! The schema is strict: unknown fields are rejected, and exactly the
//! payload matching `kind` must be present. Axis indices in files are
//! 1-based.

use crate::backslash::BackslashMonoid;
use crate::error::{Error, Result};
use crate::factor::{AtomBasis, AtomSetMonoid};
use crate::lattice::Point;
use crate::monoid::IdealExtension;
use crate::numsgp::NumericalSemigroup;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: String,
    dim: usize,
    #[serde(default)]
    minimals: Option<Vec<Vec<u64>>>,
    #[serde(default, rename = "J")]
    j: Option<Vec<usize>>,
    #[serde(default, rename = "T")]
    t: Option<RawSemigroup>,
    #[serde(default)]
    lambda: Option<Vec<u64>>,
    #[serde(default)]
    atoms: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSemigroup {
    #[serde(default)]
    gaps: Option<Vec<u64>>,
    #[serde(default)]
    generators: Option<Vec<u64>>,
    #[serde(default)]
    ordinary: Option<u64>,
}

/// A loaded monoid of any supported kind.
#[derive(Debug)]
pub enum LoadedMonoid {
    Ideal {
        monoid: IdealExtension,
        /// Dominated generators dropped during construction.
        dropped: Vec<Point>,
    },
    Backslash(BackslashMonoid),
    Atoms(AtomSetMonoid),
}

impl LoadedMonoid {
    pub fn kind_name(&self) -> &'static str {
        match self {
            LoadedMonoid::Ideal { .. } => "ideal_extension",
            LoadedMonoid::Backslash(_) => "backslash",
            LoadedMonoid::Atoms(_) => "atoms",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LoadedMonoid::Ideal { monoid, .. } => monoid.dim(),
            LoadedMonoid::Backslash(b) => b.dim(),
            LoadedMonoid::Atoms(a) => a.basis().dim(),
        }
    }

    pub fn as_monoid(&self) -> &dyn crate::monoid::Monoid {
        match self {
            LoadedMonoid::Ideal { monoid, .. } => monoid,
            LoadedMonoid::Backslash(b) => b,
            LoadedMonoid::Atoms(a) => a,
        }
    }
}

fn spec_error(msg: impl Into<String>) -> Error {
    Error::SpecFile(msg.into())
}

/// Parse a spec from JSON text.
pub fn parse_monoid_spec(text: &str) -> Result<LoadedMonoid> {
    let raw: RawSpec =
        serde_json::from_str(text).map_err(|e| spec_error(format!("invalid spec: {e}")))?;
    if raw.dim == 0 {
        return Err(spec_error("dim must be at least 1"));
    }
    let reject = |field: &str, kind: &str| {
        spec_error(format!("field {field:?} is not valid for kind {kind:?}"))
    };
    match raw.kind.as_str() {
        "ideal_extension" => {
            if raw.j.is_some() || raw.t.is_some() || raw.lambda.is_some() {
                return Err(reject("J/T/lambda", "ideal_extension"));
            }
            if raw.atoms.is_some() {
                return Err(reject("atoms", "ideal_extension"));
            }
            let minimals = raw
                .minimals
                .ok_or_else(|| spec_error("kind \"ideal_extension\" requires \"minimals\""))?;
            let points = to_points(raw.dim, minimals)?;
            let (monoid, dropped) = IdealExtension::from_generators(raw.dim, points)?;
            Ok(LoadedMonoid::Ideal { monoid, dropped })
        }
        "backslash" => {
            if raw.minimals.is_some() {
                return Err(reject("minimals", "backslash"));
            }
            if raw.atoms.is_some() {
                return Err(reject("atoms", "backslash"));
            }
            let j = raw
                .j
                .ok_or_else(|| spec_error("kind \"backslash\" requires \"J\""))?;
            let t = raw
                .t
                .ok_or_else(|| spec_error("kind \"backslash\" requires \"T\""))?;
            for &axis in &j {
                if axis == 0 || axis > raw.dim {
                    return Err(spec_error(format!(
                        "J contains axis {axis}, outside 1..={}",
                        raw.dim
                    )));
                }
            }
            let j_zero: Vec<usize> = j.iter().map(|&axis| axis - 1).collect();
            if let Some(lambda) = &raw.lambda {
                // Reserved field: only the indicator of J is supported.
                if lambda.len() != raw.dim {
                    return Err(Error::UnsupportedWeights);
                }
                let indicator: Vec<u64> = (0..raw.dim)
                    .map(|i| u64::from(j_zero.contains(&i)))
                    .collect();
                if *lambda != indicator {
                    return Err(Error::UnsupportedWeights);
                }
            }
            let semigroup = parse_semigroup(&t)?;
            Ok(LoadedMonoid::Backslash(BackslashMonoid::new(
                raw.dim, j_zero, semigroup,
            )?))
        }
        "atoms" => {
            if raw.minimals.is_some() || raw.j.is_some() || raw.t.is_some() || raw.lambda.is_some()
            {
                return Err(reject("minimals/J/T/lambda", "atoms"));
            }
            let atoms = raw
                .atoms
                .ok_or_else(|| spec_error("kind \"atoms\" requires \"atoms\""))?;
            let points = to_points(raw.dim, atoms)?;
            let basis = AtomBasis::new(raw.dim, points)?;
            Ok(LoadedMonoid::Atoms(AtomSetMonoid::new(basis)))
        }
        other => Err(spec_error(format!(
            "unknown kind {other:?}; expected \"ideal_extension\", \"backslash\", or \"atoms\""
        ))),
    }
}

fn parse_semigroup(raw: &RawSemigroup) -> Result<NumericalSemigroup> {
    match (&raw.gaps, &raw.generators, &raw.ordinary) {
        (Some(gaps), None, None) => NumericalSemigroup::from_gaps(gaps.iter().copied()),
        (None, Some(gens), None) => NumericalSemigroup::from_generators(gens.iter().copied()),
        (None, None, Some(m)) => {
            let m = *m;
            if m == 0 {
                return Err(spec_error("ordinary multiplicity must be at least 1"));
            }
            Ok(NumericalSemigroup::ordinary(m))
        }
        _ => Err(spec_error(
            "T must have exactly one of \"gaps\", \"generators\", \"ordinary\"",
        )),
    }
}

fn to_points(dim: usize, rows: Vec<Vec<u64>>) -> Result<Vec<Point>> {
    rows.into_iter()
        .map(|coords| {
            if coords.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: coords.len(),
                });
            }
            Ok(Point::new(coords))
        })
        .collect()
}

/// Canonical spec JSON for an ideal extension (used for counterexample
/// files; keys serialize in sorted order, so output is deterministic).
pub fn ideal_extension_spec_json(monoid: &IdealExtension) -> Value {
    json!({
        "kind": "ideal_extension",
        "dim": monoid.dim(),
        "minimals": monoid
            .minimals()
            .iter()
            .map(|m| m.coords().to_vec())
            .collect::<Vec<_>>(),
    })
}
