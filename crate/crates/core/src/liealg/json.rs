//! JSON file form of a finite-dimensional algebra.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AlgebraKind, GenIndex, LieAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::foundations::ParamPoly;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<String, ParamPoly>,
}

/// `{"kind":"finite","names":[..],"brackets":[{"i":0,"j":1,"out":{"1":"2"}}]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraFile {
    pub kind: String,
    pub names: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

pub(crate) fn parse_basis_key(key: &str, dim: usize) -> Result<GenIndex> {
    let k: usize = key
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("basis index `{key}` is not a non-negative integer")))?;
    if k >= dim {
        return Err(Error::IndexOutOfRange {
            index: key.to_string(),
            dim,
        });
    }
    Ok(GenIndex::Basis(k))
}

pub(crate) fn sparse_from_json(out: &BTreeMap<String, ParamPoly>, dim: usize) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for (k, c) in out {
        v.add(parse_basis_key(k, dim)?, c);
    }
    Ok(v)
}

pub(crate) fn sparse_to_json(v: &SparseVec) -> BTreeMap<String, ParamPoly> {
    v.iter().map(|(k, c)| (k.to_string(), c.clone())).collect()
}

impl AlgebraFile {
    pub fn into_algebra(self, name: &str) -> Result<LieAlgebra> {
        if self.kind != "finite" {
            return Err(Error::BadParams(format!("unsupported algebra kind `{}`", self.kind)));
        }
        let n = self.names.len();
        let brackets = self
            .brackets
            .iter()
            .map(|b| Ok((b.i, b.j, sparse_from_json(&b.out, n)?)))
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::from_brackets(name, self.names, brackets)
    }

    pub fn from_algebra(g: &LieAlgebra) -> Result<Self> {
        let AlgebraKind::Finite { names } = g.kind() else {
            return Err(Error::NotFinite);
        };
        let n = names.len();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = g.bracket_unchecked(GenIndex::Basis(i), GenIndex::Basis(j));
                if !v.is_zero() {
                    brackets.push(BracketEntry {
                        i,
                        j,
                        out: sparse_to_json(&v),
                    });
                }
            }
        }
        Ok(AlgebraFile {
            kind: "finite".into(),
            names: names.clone(),
            brackets,
        })
    }
}

impl LieAlgebra {
    pub fn from_json(text: &str, name: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        file.into_algebra(name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&AlgebraFile::from_algebra(self)?)?)
    }
}
