use serde::Serialize;

use super::CalculusSpec;
use crate::error::Result;
use crate::exec::{self, Exec};
use crate::foundations::ParamPoly;
use crate::liealg::{GenIndex, SparseVec, Window};

/// Nonzero residual of `A^{ij}_k − A^{ji}_k = c^{ij}_k`.
#[derive(Clone, Debug, Serialize)]
pub struct LinearFailure {
    pub i: GenIndex,
    pub j: GenIndex,
    pub k: GenIndex,
    pub residual: ParamPoly,
}

/// Nonzero residual of `A^{jk}_s A^{is}_r − A^{ik}_s A^{js}_r = c^{ij}_s A^{sk}_r`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadraticFailure {
    pub i: GenIndex,
    pub j: GenIndex,
    pub k: GenIndex,
    pub r: GenIndex,
    pub residual: ParamPoly,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PbwReport {
    pub linear: Vec<LinearFailure>,
    pub quadratic: Vec<QuadraticFailure>,
}

impl PbwReport {
    pub fn is_clean(&self) -> bool {
        self.linear.is_empty() && self.quadratic.is_empty()
    }
}

/// `A^{ij} − A^{ji} − [x^i, x^j]` as a vector over `k`.
pub fn linear_residual(cal: &CalculusSpec, i: GenIndex, j: GenIndex) -> SparseVec {
    cal.acoef(i, j).sub(&cal.acoef(j, i)).sub(&cal.bracket(i, j))
}

/// `Σ_s (A^{jk}_s A^{is}_r − A^{ik}_s A^{js}_r − c^{ij}_s A^{sk}_r)` as a vector over `r`.
/// The sum runs over every `s` in the support, inside the window or not.
pub fn quadratic_residual(cal: &CalculusSpec, i: GenIndex, j: GenIndex, k: GenIndex) -> SparseVec {
    let mut out = SparseVec::new();
    for (s, a) in cal.acoef(j, k).iter() {
        out.add_scaled(a, &cal.acoef(i, *s));
    }
    let minus = ParamPoly::int(-1);
    for (s, a) in cal.acoef(i, k).iter() {
        out.add_scaled(&(&minus * a), &cal.acoef(j, *s));
    }
    for (s, c) in cal.bracket(i, j).iter() {
        out.add_scaled(&(&minus * c), &cal.acoef(*s, k));
    }
    out
}

pub fn check_pbw_conditions(cal: &CalculusSpec, window: &Window) -> Result<PbwReport> {
    check_pbw_conditions_with(cal, window, Exec::default())
}

/// Evaluates both conditions symbolically over all `i < j` (and all `k`) in
/// the window. A failure is any residual that is not the zero polynomial.
pub fn check_pbw_conditions_with(cal: &CalculusSpec, window: &Window, exec: Exec) -> Result<PbwReport> {
    let idx = cal.algebra().window_indices(window)?;
    let mut pairs = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            pairs.push((i, j));
        }
    }
    let linear = exec::map(exec, &pairs, |&(i, j)| {
        linear_residual(cal, i, j)
            .iter()
            .map(|(k, c)| LinearFailure {
                i,
                j,
                k: *k,
                residual: c.clone(),
            })
            .collect::<Vec<_>>()
    });
    let quadratic = exec::map(exec, &pairs, |&(i, j)| {
        let mut v = Vec::new();
        for &k in &idx {
            for (r, c) in quadratic_residual(cal, i, j, k).iter() {
                v.push(QuadraticFailure {
                    i,
                    j,
                    k,
                    r: *r,
                    residual: c.clone(),
                });
            }
        }
        v
    });
    Ok(PbwReport {
        linear: linear.into_iter().flatten().collect(),
        quadratic: quadratic.into_iter().flatten().collect(),
    })
}
