//! Degeneration config files: JSON or TOML, with exact rational entries.
//!
//! Rationals are encoded as integers or `"p/q"` strings; decimal literals in
//! rational slots are rejected so no exactness is silently lost. Complex
//! analytic parameters (z, central charges) are two-element float arrays.

use num_complex::Complex64 as C64;
use serde::Deserialize;

use conifold_core::error::Error as CoreError;
use conifold_core::lattice::{CycleConfig, IntersectionLattice};
use conifold_core::qmat::{parse_rat, QMat, Rat};

/// An exact rational literal: integer or `"p/q"` string. Floats fail to
/// deserialize into this type.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RatLit {
    Int(i64),
    Frac(String),
}

impl RatLit {
    pub fn to_rat(&self) -> Result<Rat, CoreError> {
        match self {
            RatLit::Int(n) => Ok(conifold_core::qmat::q(*n)),
            RatLit::Frac(s) => parse_rat(s),
        }
    }
}

pub fn rat_vec(lits: &[RatLit]) -> Result<Vec<Rat>, CoreError> {
    lits.iter().map(RatLit::to_rat).collect()
}

pub fn rat_matrix(rows: &[Vec<RatLit>]) -> Result<QMat, CoreError> {
    let rows = rows
        .iter()
        .map(|r| rat_vec(r))
        .collect::<Result<Vec<_>, _>>()?;
    QMat::from_rows(rows)
}

fn complex_from_pair(pair: &[f64; 2]) -> C64 {
    C64::new(pair[0], pair[1])
}

/// Optional Frobenius block: the connection parameter z (default 1 + 0i).
#[derive(Clone, Debug, Deserialize)]
pub struct FrobeniusSection {
    pub z: Option<[f64; 2]>,
}

/// Optional K-class data: chi vectors for the outer-product Stokes matrix,
/// and (optionally) the Euler pairing, spherical class, and Chern-character
/// correspondence for the decategorification square, plus flat-pairing data
/// for the compatibility check.
#[derive(Clone, Debug, Deserialize)]
pub struct KDataSection {
    pub chi_with_s: Vec<RatLit>,
    pub chi_s_with: Vec<RatLit>,
    pub euler_pairing: Option<Vec<Vec<RatLit>>>,
    pub s: Option<Vec<RatLit>>,
    pub ch: Option<Vec<Vec<RatLit>>>,
    /// 1-based cycle index the twist should decategorify to (default 1).
    pub cycle: Option<usize>,
    pub flat_pairing: Option<Vec<Vec<RatLit>>>,
    pub solutions: Option<Vec<Vec<RatLit>>>,
}

/// Optional cluster block: central charges as [re, im] pairs.
#[derive(Clone, Debug, Deserialize)]
pub struct ClusterSection {
    pub charges: Vec<[f64; 2]>,
    pub z: Option<[f64; 2]>,
}

/// The raw on-disk schema.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub rank: usize,
    pub pairing: Vec<Vec<RatLit>>,
    pub cycles: Vec<Vec<RatLit>>,
    pub frobenius: Option<FrobeniusSection>,
    pub kdata: Option<KDataSection>,
    pub cluster: Option<ClusterSection>,
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct DegenerationConfig {
    pub cycles: CycleConfig,
    pub z: C64,
    pub kdata: Option<KDataSection>,
    pub cluster: Option<ClusterSection>,
    /// Canonical bytes of the source file, for hashing.
    pub source: String,
}

impl DegenerationConfig {
    pub fn from_str(text: &str, format: ConfigFormat) -> Result<Self, CoreError> {
        let raw: RawConfig = match format {
            ConfigFormat::Json => serde_json::from_str(text).map_err(|e| {
                CoreError::InvalidInput(format!("config parse error: {e}"))
            })?,
            ConfigFormat::Toml => toml::from_str(text).map_err(|e| {
                CoreError::InvalidInput(format!("config parse error: {e}"))
            })?,
        };
        Self::from_raw(raw, text.to_string())
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, CoreError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CoreError::InvalidInput(format!("cannot read {}: {e}", path.display()))
        })?;
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => ConfigFormat::Toml,
            _ => ConfigFormat::Json,
        };
        Self::from_str(&text, format)
    }

    fn from_raw(raw: RawConfig, source: String) -> Result<Self, CoreError> {
        let pairing = rat_matrix(&raw.pairing)?;
        if pairing.rows() != raw.rank {
            return Err(CoreError::DimensionMismatch(format!(
                "declared rank {} but pairing has {} rows",
                raw.rank,
                pairing.rows()
            )));
        }
        let lattice = IntersectionLattice::new(pairing).map_err(|e| match e {
            CoreError::NotSkew => {
                CoreError::InvalidInput("pairing not skew-symmetric".into())
            }
            other => other,
        })?;
        let cycles = raw
            .cycles
            .iter()
            .map(|c| rat_vec(c))
            .collect::<Result<Vec<_>, _>>()?;
        let cycles = CycleConfig::new(lattice, cycles)?;

        let z = raw
            .frobenius
            .as_ref()
            .and_then(|f| f.z)
            .map(|p| complex_from_pair(&p))
            .unwrap_or_else(|| C64::new(1.0, 0.0));
        if z.norm() == 0.0 {
            return Err(CoreError::InvalidInput("frobenius z must be nonzero".into()));
        }

        if let Some(k) = &raw.kdata {
            if k.chi_with_s.len() != k.chi_s_with.len() {
                return Err(CoreError::DimensionMismatch(
                    "kdata chi vectors must have equal length".into(),
                ));
            }
            if let (Some(ch), Some(s)) = (&k.ch, &k.s) {
                if ch.len() != cycles.rank() {
                    return Err(CoreError::DimensionMismatch(format!(
                        "kdata ch must have {} rows (lattice rank)",
                        cycles.rank()
                    )));
                }
                if ch.iter().any(|row| row.len() != s.len()) {
                    return Err(CoreError::DimensionMismatch(
                        "kdata ch columns must match the length of s".into(),
                    ));
                }
                if let Some(cyc) = k.cycle {
                    if cyc == 0 || cyc > cycles.num_cycles() {
                        return Err(CoreError::IndexOutOfRange {
                            index: cyc,
                            len: cycles.num_cycles(),
                        });
                    }
                }
            }
        }

        if let Some(cl) = &raw.cluster {
            if cl.charges.len() != cycles.num_cycles() {
                return Err(CoreError::DimensionMismatch(format!(
                    "cluster block has {} charges for {} cycles",
                    cl.charges.len(),
                    cycles.num_cycles()
                )));
            }
        }

        Ok(DegenerationConfig {
            cycles,
            z,
            kdata: raw.kdata,
            cluster: raw.cluster,
            source,
        })
    }

    pub fn cluster_z(&self) -> C64 {
        self.cluster
            .as_ref()
            .and_then(|c| c.z)
            .map(|p| complex_from_pair(&p))
            .unwrap_or(self.z)
    }

    pub fn cluster_charges(&self) -> Option<Vec<C64>> {
        self.cluster
            .as_ref()
            .map(|c| c.charges.iter().map(complex_from_pair).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfigFormat {
    Json,
    Toml,
}
