//! JSON schemas for configurations, transforms, maps and complex exports.
//!
//! Scalars are serialized as `{"re":"p/q","im":"r/s"}` with both components
//! in lowest terms and positive denominators, so files are canonical and
//! diffable. Parsers accept plain integers (`"5"`) as well.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::{Configuration, ProjectiveTransform, Space};
use crate::dcr::Dcr;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::GaussianRational;
use crate::tame::{TameMap, TauSpec};

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ScalarDto {
    pub re: String,
    pub im: String,
}

impl ScalarDto {
    pub fn from_scalar(x: &GaussianRational) -> Self {
        ScalarDto {
            re: GaussianRational::rational_string(x.re()),
            im: GaussianRational::rational_string(x.im()),
        }
    }

    pub fn to_scalar(&self) -> Result<GaussianRational> {
        Ok(GaussianRational::new(
            GaussianRational::parse_rational(&self.re)?,
            GaussianRational::parse_rational(&self.im)?,
        ))
    }
}

pub type MatrixDto = Vec<Vec<ScalarDto>>;

pub fn matrix_to_dto(rows: &[Vec<GaussianRational>]) -> MatrixDto {
    rows.iter()
        .map(|r| r.iter().map(ScalarDto::from_scalar).collect())
        .collect()
}

pub fn matrix_from_dto(dto: &MatrixDto) -> Result<Vec<Vec<GaussianRational>>> {
    dto.iter()
        .map(|r| r.iter().map(ScalarDto::to_scalar).collect())
        .collect()
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ConfigurationDto {
    pub m: usize,
    pub n: usize,
    pub space: String,
    pub rows: MatrixDto,
}

impl ConfigurationDto {
    pub fn from_config(c: &Configuration) -> Self {
        ConfigurationDto {
            m: c.m(),
            n: c.n(),
            space: c.space().as_str().to_string(),
            rows: matrix_to_dto(c.rows()),
        }
    }

    pub fn to_config(&self) -> Result<Configuration> {
        Configuration::new(
            self.m,
            self.n,
            Space::parse(&self.space)?,
            matrix_from_dto(&self.rows)?,
        )
    }
}

pub fn config_to_json(c: &Configuration) -> String {
    serde_json::to_string_pretty(&ConfigurationDto::from_config(c)).expect("serialization")
}

pub fn config_from_json(s: &str) -> Result<Configuration> {
    let dto: ConfigurationDto = serde_json::from_str(s)?;
    dto.to_config()
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TauDto {
    Constant {
        matrix: MatrixDto,
    },
    Parametric {
        orbit_dcr: String,
        template: PencilDto,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PencilDto {
    pub base: MatrixDto,
    pub direction: MatrixDto,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TameMapDto {
    pub sigma: Vec<usize>,
    pub tau: TauDto,
}

impl TameMapDto {
    pub fn from_map(f: &TameMap) -> Self {
        let tau = match f.tau() {
            TauSpec::Constant(t) => TauDto::Constant {
                matrix: matrix_to_dto(t.matrix()),
            },
            TauSpec::Parametric {
                orbit_dcr,
                base,
                direction,
            } => TauDto::Parametric {
                orbit_dcr: orbit_dcr.text(),
                template: PencilDto {
                    base: matrix_to_dto(base),
                    direction: matrix_to_dto(direction),
                },
            },
        };
        TameMapDto {
            sigma: f.sigma().images().to_vec(),
            tau,
        }
    }

    pub fn to_map(&self) -> Result<TameMap> {
        let sigma = Permutation::from_images(self.sigma.clone())?;
        let n = sigma.n();
        match &self.tau {
            TauDto::Constant { matrix } => {
                let rows = matrix_from_dto(matrix)?;
                if rows.is_empty() {
                    return Err(Error::Mismatch("empty transform matrix".into()));
                }
                let m = rows.len() - 1;
                TameMap::new(m, n, sigma, TauSpec::Constant(ProjectiveTransform::new(rows)?))
            }
            TauDto::Parametric {
                orbit_dcr,
                template,
            } => {
                let orbit_dcr = Dcr::parse(orbit_dcr)?;
                let m = orbit_dcr.m();
                TameMap::new(
                    m,
                    n,
                    sigma,
                    TauSpec::Parametric {
                        orbit_dcr,
                        base: matrix_from_dto(&template.base)?,
                        direction: matrix_from_dto(&template.direction)?,
                    },
                )
            }
        }
    }
}

pub fn tame_map_to_json(f: &TameMap) -> String {
    serde_json::to_string_pretty(&TameMapDto::from_map(f)).expect("serialization")
}

pub fn tame_map_from_json(s: &str) -> Result<TameMap> {
    let dto: TameMapDto = serde_json::from_str(s)?;
    dto.to_map()
}

/// Output of the normalization command.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct NormalizationDto {
    pub gamma: MatrixDto,
    pub reduced: ConfigurationDto,
}

/// Export of a divisibility complex, with optional orbit data keyed by
/// dimension. Each orbit is reported through one representative simplex
/// given as vertex indices.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ComplexDto {
    pub m: usize,
    pub n: usize,
    pub dimension: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub orbits: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub orbit_counts: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub orbit_sizes: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub orbit_types: BTreeMap<String, Vec<String>>,
}
