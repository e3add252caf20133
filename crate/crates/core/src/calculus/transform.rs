use serde::Deserialize;

use super::rho::rho_matrix;
use super::CalculusSpec;
use crate::error::{Error, Result};
use crate::foundations::ParamPoly;
use crate::liealg::{GenIndex, LieAlgebra, SparseVec};
use crate::matrix::PolyMatrix;

/// An invertible change of basis `x̄^i = Σ_s M[s][i] x^s`: column `i` of the
/// matrix holds the old coordinates of the new generator `x̄^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    tau: PolyMatrix,
    sigma: PolyMatrix,
}

#[derive(Deserialize)]
struct TauFile {
    tau: Vec<Vec<serde_json::Value>>,
}

impl BasisChange {
    pub fn new(tau: PolyMatrix) -> Result<Self> {
        if !tau.is_square() {
            return Err(Error::Dimension("basis change must be square".into()));
        }
        let sigma = tau.inverse()?;
        Ok(BasisChange { tau, sigma })
    }

    pub fn identity(n: usize) -> Self {
        BasisChange {
            tau: PolyMatrix::identity(n),
            sigma: PolyMatrix::identity(n),
        }
    }

    /// Parses `{"tau": [[...], ...]}`; entries are numbers or polynomial strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TauFile = serde_json::from_str(text)?;
        let rows = file
            .tau
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| match v {
                        serde_json::Value::String(s) => s.parse::<ParamPoly>(),
                        serde_json::Value::Number(n) => n.to_string().parse::<ParamPoly>(),
                        other => Err(Error::Parse(format!("bad matrix entry {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(PolyMatrix::from_rows(rows)?)
    }

    pub fn dimension(&self) -> usize {
        self.tau.rows()
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.tau
    }

    pub fn inverse_matrix(&self) -> &PolyMatrix {
        &self.sigma
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange {
            tau: self.sigma.clone(),
            sigma: self.tau.clone(),
        }
    }

    /// Coordinates of `x̄^i` in the old basis.
    pub fn new_generator(&self, i: usize) -> SparseVec {
        SparseVec::from_pairs(
            self.tau
                .column(i)
                .into_iter()
                .enumerate()
                .map(|(s, c)| (GenIndex::Basis(s), c)),
        )
    }

    /// Rewrites a vector given in the old basis in terms of the new one.
    pub fn to_new_coordinates(&self, v: &SparseVec) -> SparseVec {
        let n = self.dimension();
        let mut out = SparseVec::new();
        for (t, c) in v.iter() {
            let GenIndex::Basis(t) = *t else { continue };
            for k in 0..n {
                let s = &self.sigma[(k, t)];
                if !s.is_zero() {
                    out.add(GenIndex::Basis(k), &(s * c));
                }
            }
        }
        out
    }

    fn check_dimension(&self, g: &LieAlgebra) -> Result<usize> {
        let n = g.dimension().ok_or(Error::NotFinite)?;
        if n != self.dimension() {
            return Err(Error::Dimension(format!(
                "basis change has size {} but the algebra has dimension {n}",
                self.dimension()
            )));
        }
        Ok(n)
    }

    /// Applies a bilinear table `f(x^s, x^r)` to `(x̄^i, x̄^j)` and returns the
    /// result in new coordinates.
    fn transport(&self, n: usize, i: usize, j: usize, f: impl Fn(GenIndex, GenIndex) -> SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for s in 0..n {
            let ts = &self.tau[(s, i)];
            if ts.is_zero() {
                continue;
            }
            for r in 0..n {
                let tr = &self.tau[(r, j)];
                if tr.is_zero() {
                    continue;
                }
                acc.add_scaled(&(ts * tr), &f(GenIndex::Basis(s), GenIndex::Basis(r)));
            }
        }
        self.to_new_coordinates(&acc)
    }

    /// The bracket table in the new basis.
    pub fn transform_algebra(&self, g: &LieAlgebra) -> Result<LieAlgebra> {
        let n = self.check_dimension(g)?;
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.transport(n, i, j, |s, r| g.bracket_unchecked(s, r)))
                    .collect()
            })
            .collect();
        LieAlgebra::from_full_table(g.name(), g.names().to_vec(), table)
    }

    /// Whether the basis change preserves every structure constant.
    pub fn is_automorphism(&self, g: &LieAlgebra) -> Result<bool> {
        let n = self.check_dimension(g)?;
        for i in 0..n {
            for j in 0..n {
                let moved = self.transport(n, i, j, |s, r| g.bracket_unchecked(s, r));
                if moved != g.bracket_unchecked(GenIndex::Basis(i), GenIndex::Basis(j)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `Ā^{ij}_k = τ^i_s τ^j_r σ^t_k A^{sr}_t` together with the transported
    /// algebra. The result is unverified.
    pub fn transform(&self, cal: &CalculusSpec) -> Result<CalculusSpec> {
        let n = self.check_dimension(cal.algebra())?;
        let algebra = self.transform_algebra(cal.algebra())?;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = self.transport(n, i, j, |s, r| cal.acoef(s, r));
                if !v.is_zero() {
                    entries.push((i, j, v));
                }
            }
        }
        CalculusSpec::from_table(format!("{}'", cal.name()), algebra, entries)
    }

    /// `ρ̄(x̄^i)` computed as `M⁻¹ ρ(x̄^i) M`, independent of the index formula.
    pub fn conjugated_rho(&self, cal: &CalculusSpec, i: usize) -> Result<PolyMatrix> {
        let n = self.check_dimension(cal.algebra())?;
        let mut rho = PolyMatrix::zeros(n, n);
        for s in 0..n {
            let ts = &self.tau[(s, i)];
            if !ts.is_zero() {
                rho = rho.add(&rho_matrix(cal, GenIndex::Basis(s))?.scale(ts));
            }
        }
        Ok(self.sigma.mul(&rho).mul(&self.tau))
    }
}
