//! JSON file form of a finite calculus.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::CalculusSpec;
use crate::error::{Error, Result};
use crate::liealg::catalog::catalog;
use crate::liealg::json::{sparse_from_json, sparse_to_json, AlgebraFile, BracketEntry};
use crate::liealg::LieAlgebra;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Named(String),
    Inline(AlgebraFile),
}

/// `{"algebra":"heisenberg(1)","A":[{"i":1,"j":2,"out":{"0":"1/2"}}],"parameters":[]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CalculusFile {
    pub algebra: AlgebraRef,
    #[serde(rename = "A", default)]
    pub entries: Vec<BracketEntry>,
    #[serde(default)]
    pub parameters: Vec<String>,
}

impl CalculusFile {
    pub fn into_calculus(self, name: &str) -> Result<CalculusSpec> {
        let algebra: LieAlgebra = match self.algebra {
            AlgebraRef::Named(id) => catalog(&id)?,
            AlgebraRef::Inline(file) => file.into_algebra(name)?,
        };
        let n = algebra.dimension().ok_or(Error::NotFinite)?;
        let entries = self
            .entries
            .iter()
            .map(|e| Ok((e.i, e.j, sparse_from_json(&e.out, n)?)))
            .collect::<Result<Vec<_>>>()?;
        let cal = CalculusSpec::from_table(name, algebra, entries)?;
        let declared: BTreeSet<&str> = self.parameters.iter().map(String::as_str).collect();
        let undeclared: Vec<String> = cal
            .parameters()
            .iter()
            .filter(|p| !declared.contains(p.as_str()))
            .cloned()
            .collect();
        if !undeclared.is_empty() {
            return Err(Error::BadParams(format!("undeclared parameters: {}", undeclared.join(", "))));
        }
        Ok(cal)
    }

    pub fn from_calculus(cal: &CalculusSpec) -> Result<Self> {
        let entries = cal
            .table_entries()?
            .into_iter()
            .map(|(i, j, v)| BracketEntry { i, j, out: sparse_to_json(&v) })
            .collect();
        Ok(CalculusFile {
            algebra: AlgebraRef::Inline(AlgebraFile::from_algebra(cal.algebra())?),
            entries,
            parameters: cal.parameters().to_vec(),
        })
    }
}

impl CalculusSpec {
    pub fn from_json(text: &str, name: &str) -> Result<Self> {
        let file: CalculusFile = serde_json::from_str(text)?;
        file.into_calculus(name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&CalculusFile::from_calculus(self)?)?)
    }
}
