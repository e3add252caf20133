use std::collections::BTreeSet;
use std::fmt;

use super::conditions::{check_pbw_conditions_with, PbwReport};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::foundations::{Assignment, ParamPoly, Scalar};
use crate::liealg::{GenIndex, LieAlgebra, SparseVec, Window};

/// Name of the free parameter in the Witt and Virasoro calculi.
pub const MU: &str = "mu";

#[derive(Clone, Debug)]
pub(crate) enum Acoef {
    /// Row-major `n x n` table, `table[i*n + j] = A^{ij}`.
    Table(Vec<SparseVec>),
    /// `A^{ij}_k = (j + μ) δ^{i+j}_k`.
    WittShift,
    /// The Witt rule on integer indices plus `A^{n,m}_t = (m^3 − m)/24 δ^{n,−m}`;
    /// every other coefficient involving `t` vanishes.
    VirasoroShift,
}

/// The coefficients `A^{ij}_k` of `x^i y^j = y^j x^i + A^{ij}_k y^k` together
/// with their Lie algebra.
#[derive(Clone, Debug)]
pub struct CalculusSpec {
    name: String,
    algebra: LieAlgebra,
    acoef: Acoef,
    parameters: Vec<String>,
    verified: Option<Window>,
}

impl CalculusSpec {
    /// A finite calculus from its `A^{ij}` vectors, given as `(i, j, A^{ij})`.
    /// Unlisted pairs are zero.
    pub fn from_table(
        name: impl Into<String>,
        algebra: LieAlgebra,
        entries: impl IntoIterator<Item = (usize, usize, SparseVec)>,
    ) -> Result<Self> {
        let n = algebra.dimension().ok_or(Error::NotFinite)?;
        let mut table = vec![SparseVec::new(); n * n];
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: format!("({i}, {j})"),
                    dim: n,
                });
            }
            for k in v.indices() {
                algebra.check_index(k)?;
            }
            table[i * n + j].add_scaled(&ParamPoly::one(), &v);
        }
        Ok(Self::with_acoef(name, algebra, Acoef::Table(table)))
    }

    /// A finite calculus from the matrices `ρ(x^i)` in the column convention:
    /// entry `(b, a)` of `rho[i]` is `A^{ia}_b`.
    pub fn from_rho(name: impl Into<String>, algebra: LieAlgebra, rho: &[crate::matrix::PolyMatrix]) -> Result<Self> {
        let n = algebra.dimension().ok_or(Error::NotFinite)?;
        if rho.len() != n || rho.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Dimension(format!("need {n} matrices of size {n}x{n}")));
        }
        let mut entries = Vec::new();
        for (i, m) in rho.iter().enumerate() {
            for a in 0..n {
                let v = SparseVec::from_pairs((0..n).map(|b| (GenIndex::Basis(b), m[(b, a)].clone())));
                entries.push((i, a, v));
            }
        }
        Self::from_table(name, algebra, entries)
    }

    pub(crate) fn with_acoef(name: impl Into<String>, algebra: LieAlgebra, acoef: Acoef) -> Self {
        let mut cal = CalculusSpec {
            name: name.into(),
            algebra,
            acoef,
            parameters: Vec::new(),
            verified: None,
        };
        cal.parameters = cal.collect_parameters();
        cal
    }

    fn collect_parameters(&self) -> Vec<String> {
        let mut set: BTreeSet<String> = self.algebra.parameters().into_iter().collect();
        match &self.acoef {
            Acoef::Table(t) => {
                for v in t {
                    for (_, c) in v.iter() {
                        set.extend(c.parameters());
                    }
                }
            }
            Acoef::WittShift | Acoef::VirasoroShift => {
                set.insert(MU.to_string());
            }
        }
        set.into_iter().collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Free parameters, sorted by name.
    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn is_table(&self) -> bool {
        matches!(self.acoef, Acoef::Table(_))
    }

    /// `A^{ij}` as a coefficient vector over `k`.
    pub fn acoef(&self, i: GenIndex, j: GenIndex) -> SparseVec {
        match &self.acoef {
            Acoef::Table(t) => match (i, j) {
                (GenIndex::Basis(a), GenIndex::Basis(b)) => {
                    let n = self.algebra.dimension().unwrap();
                    t[a * n + b].clone()
                }
                _ => SparseVec::new(),
            },
            Acoef::WittShift | Acoef::VirasoroShift => match (i, j) {
                (GenIndex::Int(n), GenIndex::Int(m)) => {
                    let mut v = SparseVec::single(GenIndex::Int(n + m), &ParamPoly::var(MU) + &ParamPoly::int(m));
                    if matches!(self.acoef, Acoef::VirasoroShift) && n + m == 0 {
                        v.add(GenIndex::Central, &ParamPoly::constant(Scalar::ratio(m * m * m - m, 24)));
                    }
                    v
                }
                _ => SparseVec::new(),
            },
        }
    }

    pub fn bracket(&self, i: GenIndex, j: GenIndex) -> SparseVec {
        self.algebra.bracket_unchecked(i, j)
    }

    /// Runs both consistency conditions on `window` and, when they hold,
    /// marks the calculus verified.
    pub fn verify(&mut self, window: &Window) -> Result<PbwReport> {
        self.verify_with(window, Exec::default())
    }

    pub fn verify_with(&mut self, window: &Window, exec: Exec) -> Result<PbwReport> {
        let report = check_pbw_conditions_with(self, window, exec)?;
        if report.is_clean() {
            self.verified = Some(*window);
        }
        Ok(report)
    }

    /// Builder form of [`verify`](Self::verify) that fails on a dirty report.
    pub fn verified(mut self, window: &Window) -> Result<Self> {
        let report = self.verify(window)?;
        if report.is_clean() {
            Ok(self)
        } else {
            Err(Error::UnverifiedCalculus(self.name.clone()))
        }
    }

    pub fn is_verified(&self) -> bool {
        self.verified.is_some()
    }

    pub fn verified_window(&self) -> Option<Window> {
        self.verified
    }

    /// The finite `A` table as `(i, j, A^{ij})` for nonzero entries.
    pub fn table_entries(&self) -> Result<Vec<(usize, usize, SparseVec)>> {
        let n = self.algebra.dimension().ok_or(Error::NotFinite)?;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = self.acoef(GenIndex::Basis(i), GenIndex::Basis(j));
                if !v.is_zero() {
                    out.push((i, j, v));
                }
            }
        }
        Ok(out)
    }

    /// Substitutes values (or polynomials) for parameters of a finite calculus.
    /// The result is unverified.
    pub fn substitute(&self, assignment: &std::collections::BTreeMap<String, ParamPoly>) -> Result<Self> {
        let entries = self
            .table_entries()?
            .into_iter()
            .map(|(i, j, v)| {
                let v = SparseVec::from_pairs(v.iter().map(|(k, c)| (*k, c.substitute(assignment))));
                (i, j, v)
            })
            .collect::<Vec<_>>();
        Self::from_table(self.name.clone(), self.algebra.clone(), entries)
    }

    pub fn substitute_values(&self, assignment: &Assignment) -> Result<Self> {
        let a = assignment
            .iter()
            .map(|(k, v)| (k.clone(), ParamPoly::constant(v.clone())))
            .collect();
        self.substitute(&a)
    }
}

impl fmt::Display for CalculusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "calculus {} on {}", self.name, self.algebra.name())?;
        if !self.parameters.is_empty() {
            writeln!(f, "parameters: {}", self.parameters.join(", "))?;
        }
        match &self.acoef {
            Acoef::Table(_) => {
                for (i, j, v) in self.table_entries().map_err(|_| fmt::Error)? {
                    let (a, b) = (GenIndex::Basis(i), GenIndex::Basis(j));
                    write!(f, "A[{}, {}] =", self.algebra.index_name(a), self.algebra.index_name(b))?;
                    for (n, (k, c)) in v.iter().enumerate() {
                        let sep = if n == 0 { "" } else { " +" };
                        write!(f, "{sep} ({c})*{}", self.algebra.index_name(*k))?;
                    }
                    writeln!(f)?;
                }
                Ok(())
            }
            Acoef::WittShift => writeln!(f, "A[i, j] = (j + mu) x[i+j]"),
            Acoef::VirasoroShift => {
                writeln!(f, "A[n, m] = (m + mu) x[n+m] + (m^3 - m)/24 δ(n+m, 0) t")
            }
        }
    }
}
