//! Representation spec files.

use std::fs;
use std::path::Path;

use margulis_core::invariant::AffineElement;
use margulis_core::liegroup::is_loxodromic;
use margulis_core::{AffineRep, GroupElement, ModelSpec, VElement};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::Failure;

const DET_TOL: f64 = 1e-6;
const TRACE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpecFile {
    pub model: ModelJson,
    pub generators: Vec<GeneratorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub family: String,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub g: MatrixJson,
    #[serde(rename = "X")]
    pub x: MatrixJson,
}

/// Row-major matrix, either as nested rows or as one flat array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl MatrixJson {
    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        MatrixJson::Rows(
            m.row_iter()
                .map(|r| r.iter().copied().collect())
                .collect(),
        )
    }

    fn to_matrix(&self, n: usize, field: &str) -> Result<DMatrix<f64>, Failure> {
        let entries: Vec<f64> = match self {
            MatrixJson::Rows(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Failure::invalid(format!("{field}: expected a {n}x{n} matrix")));
                }
                rows.iter().flatten().copied().collect()
            }
            MatrixJson::Flat(v) => {
                if v.len() != n * n {
                    return Err(Failure::invalid(format!(
                        "{field}: expected {} row-major entries, found {}",
                        n * n,
                        v.len()
                    )));
                }
                v.clone()
            }
        };
        if let Some(k) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Failure::invalid(format!(
                "{field}: entry ({}, {}) is not finite",
                k / n + 1,
                k % n + 1
            )));
        }
        Ok(DMatrix::from_row_slice(n, n, &entries))
    }
}

impl RepSpecFile {
    pub fn from_rep(rep: &AffineRep, label: Option<String>, seed: Option<u64>) -> Self {
        let metadata = (label.is_some() || seed.is_some()).then_some(Metadata { label, seed });
        RepSpecFile {
            model: ModelJson {
                family: rep.model().family().to_string(),
                n: rep.n(),
            },
            generators: rep
                .generators()
                .iter()
                .map(|a| GeneratorJson {
                    g: MatrixJson::from_matrix(a.linear().mat()),
                    x: MatrixJson::from_matrix(a.translation().mat()),
                })
                .collect(),
            metadata,
        }
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::invalid(format!("malformed spec: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|f| f.context(&path.display().to_string()))
    }

    /// Validates and builds the representation. Determinants within `1e-6`
    /// of `+-1` are normalized to `+1`; translations must be traceless to
    /// `1e-8`.
    pub fn to_rep(&self, loxodromy_tol: f64) -> Result<AffineRep, Failure> {
        if self.model.family != "adjoint_sl" {
            return Err(Failure::invalid(format!(
                "model.family: unsupported family {:?}, expected \"adjoint_sl\"",
                self.model.family
            )));
        }
        let n = self.model.n;
        let model = ModelSpec::adjoint_sl(n)
            .map_err(|e| Failure::invalid(format!("model.n: {e}")))?;
        if self.generators.is_empty() {
            return Err(Failure::invalid("generators: at least one generator is required"));
        }
        let mut elements = Vec::with_capacity(self.generators.len());
        for (i, gen) in self.generators.iter().enumerate() {
            let field = format!("generators[{i}]");
            let g = gen.g.to_matrix(n, &format!("{field}.g"))?;
            let det = g.determinant();
            if (det.abs() - 1.0).abs() > DET_TOL {
                return Err(Failure::invalid(format!(
                    "{field}.g: determinant {det} is not within {DET_TOL:e} of +-1"
                )));
            }
            let g = GroupElement::normalized(g)
                .map_err(|e| Failure::invalid(format!("{field}.g: {e}")))?;
            let x = gen.x.to_matrix(n, &format!("{field}.X"))?;
            let tr = x.trace();
            if tr.abs() > TRACE_TOL {
                return Err(Failure::invalid(format!(
                    "{field}.X: trace {tr} is not within {TRACE_TOL:e} of 0"
                )));
            }
            if !is_loxodromic(&g, loxodromy_tol) {
                return Err(Failure::not_loxodromic(format!(
                    "{field}.g: linear part is not loxodromic at tolerance {loxodromy_tol:e}"
                )));
            }
            let a = AffineElement::new(g, VElement::project(x))
                .map_err(|e| Failure::invalid(format!("{field}: {e}")))?;
            elements.push(a);
        }
        AffineRep::new(model, elements, loxodromy_tol)
            .map_err(|e| Failure::invalid(format!("generators: {e}")))
    }
}

pub fn load_rep(path: &Path, loxodromy_tol: f64) -> Result<AffineRep, Failure> {
    RepSpecFile::load(path)?
        .to_rep(loxodromy_tol)
        .map_err(|f| f.context(&path.display().to_string()))
}
