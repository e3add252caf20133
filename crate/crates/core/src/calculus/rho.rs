use std::collections::BTreeMap;

use serde::Serialize;

use super::CalculusSpec;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::foundations::ParamPoly;
use crate::liealg::{GenIndex, SparseVec, Window};
use crate::matrix::PolyMatrix;

/// `ρ(x^i)` as a matrix: entry `(b, a)` is `A^{ia}_b`.
pub fn rho_matrix(cal: &CalculusSpec, i: GenIndex) -> Result<PolyMatrix> {
    let n = cal.algebra().dimension().ok_or(Error::NotFinite)?;
    cal.algebra().check_index(i)?;
    Ok(PolyMatrix::from_fn(n, n, |b, a| {
        cal.acoef(i, GenIndex::Basis(a)).get(&GenIndex::Basis(b))
    }))
}

/// `ρ(x^i)` applied to a vector, valid for either kind of algebra.
pub fn rho_apply(cal: &CalculusSpec, i: GenIndex, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (a, c) in v.iter() {
        out.add_scaled(c, &cal.acoef(i, *a));
    }
    out
}

/// Column `a` of `[ρ(x^i), ρ(x^j)] − ρ([x^i, x^j])` where it is nonzero.
#[derive(Clone, Debug, Serialize)]
pub struct RepFailure {
    pub i: GenIndex,
    pub j: GenIndex,
    pub a: GenIndex,
    pub residual: SparseVec,
}

/// Nonzero `ρ(x^i) x^j − ρ(x^j) x^i − [x^i, x^j]`.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleFailure {
    pub i: GenIndex,
    pub j: GenIndex,
    pub residual: SparseVec,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RepReport {
    pub representation: Vec<RepFailure>,
    pub cocycle: Vec<CocycleFailure>,
}

impl RepReport {
    pub fn is_clean(&self) -> bool {
        self.representation.is_empty() && self.cocycle.is_empty()
    }
}

pub fn check_representation(cal: &CalculusSpec, window: &Window) -> Result<RepReport> {
    check_representation_with(cal, window, Exec::default())
}

/// Checks that `ρ` is a representation and that `x^i ↦ x^i` is a 1-cocycle
/// for it. Finite algebras go through matrix products; integer-indexed ones
/// apply `ρ` coefficientwise to each basis vector in the window.
pub fn check_representation_with(cal: &CalculusSpec, window: &Window, exec: Exec) -> Result<RepReport> {
    let g = cal.algebra();
    let idx = g.window_indices(window)?;
    let mut pairs = Vec::new();
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            pairs.push((i, j));
        }
    }
    let mats = if g.is_finite() {
        Some(
            idx.iter()
                .map(|&i| Ok((i, rho_matrix(cal, i)?)))
                .collect::<Result<BTreeMap<_, _>>>()?,
        )
    } else {
        None
    };
    let rep = exec::map(exec, &pairs, |&(i, j)| {
        let bracket = cal.bracket(i, j);
        let mut out = Vec::new();
        match &mats {
            Some(m) => {
                let n = g.dimension().unwrap();
                let mut rhs = PolyMatrix::zeros(n, n);
                for (k, c) in bracket.iter() {
                    rhs = rhs.add(&m[k].scale(c));
                }
                let res = m[&i].commutator(&m[&j]).sub(&rhs);
                for a in 0..n {
                    let col = SparseVec::from_pairs(
                        res.column(a)
                            .into_iter()
                            .enumerate()
                            .map(|(b, c)| (GenIndex::Basis(b), c)),
                    );
                    if !col.is_zero() {
                        out.push(RepFailure {
                            i,
                            j,
                            a: GenIndex::Basis(a),
                            residual: col,
                        });
                    }
                }
            }
            None => {
                for &a in &idx {
                    let e = SparseVec::unit(a);
                    let mut res = rho_apply(cal, i, &rho_apply(cal, j, &e));
                    res = res.sub(&rho_apply(cal, j, &rho_apply(cal, i, &e)));
                    for (k, c) in bracket.iter() {
                        res.add_scaled(&-c, &rho_apply(cal, *k, &e));
                    }
                    if !res.is_zero() {
                        out.push(RepFailure { i, j, a, residual: res });
                    }
                }
            }
        }
        out
    });
    let cocycle = exec::filter_map(exec, &pairs, |&(i, j)| {
        let res = cal.acoef(i, j).sub(&cal.acoef(j, i)).sub(&cal.bracket(i, j));
        (!res.is_zero()).then_some(CocycleFailure { i, j, residual: res })
    });
    Ok(RepReport {
        representation: rep.into_iter().flatten().collect(),
        cocycle,
    })
}

/// Basis-independent data of a finite calculus: rank and trace of every `ρ(x^i)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhoInvariants {
    pub ranks: Vec<usize>,
    pub traces: Vec<ParamPoly>,
}

pub fn invariants(cal: &CalculusSpec) -> Result<RhoInvariants> {
    let basis = cal.algebra().basis()?;
    let mut ranks = Vec::new();
    let mut traces = Vec::new();
    for i in basis {
        let m = rho_matrix(cal, i)?;
        ranks.push(m.rank());
        traces.push(m.trace());
    }
    Ok(RhoInvariants { ranks, traces })
}
