//! Solution families of the consistency conditions: the general solution of
//! the linear condition, residuals of the quadratic one, family
//! verification, and evidence against solutions on semisimple algebras.

mod certificate;

use serde::Serialize;

use crate::calculus::{self, check_pbw_conditions, quadratic_residual, CalculusSpec};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::foundations::{Assignment, ParamPoly, Scalar};
use crate::liealg::{GenIndex, LieAlgebra, SparseVec, Window};
use crate::sampling;

pub use certificate::{inconsistency_certificate, Certificate, CertificateOutcome, InconclusiveReason};

/// A calculus whose coefficients carry named unknowns.
#[derive(Clone, Debug)]
pub struct ParamCalculus {
    pub base: CalculusSpec,
    /// The unknowns introduced by the parametrization, sorted.
    pub unknowns: Vec<String>,
}

impl ParamCalculus {
    pub fn substitute(&self, assignment: &Assignment) -> Result<CalculusSpec> {
        self.base.substitute_values(assignment)
    }

    /// The assignment sending every unknown to zero.
    pub fn zero_assignment(&self) -> Assignment {
        self.unknowns.iter().map(|u| (u.clone(), Scalar::zero())).collect()
    }
}

/// Name of the unknown `s^{ij}_k` (`i ≤ j`).
pub fn symmetric_unknown(i: usize, j: usize, k: usize) -> String {
    format!("s_{i}_{j}_{k}")
}

/// `A^{ij}_k = ½c^{ij}_k + s^{ij}_k` with `s^{ij}_k = s^{ji}_k` free; the
/// complete solution set of the linear condition.
pub fn general_linear_solution(g: &LieAlgebra) -> Result<ParamCalculus> {
    let n = g.dimension().ok_or(Error::NotFinite)?;
    let params = g.parameters();
    if !params.is_empty() {
        return Err(Error::Parametric(params));
    }
    let half = ParamPoly::ratio(1, 2);
    let mut entries = Vec::with_capacity(n * n);
    let mut unknowns = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut v = g.bracket_unchecked(GenIndex::Basis(i), GenIndex::Basis(j)).scale(&half);
            for k in 0..n {
                let name = symmetric_unknown(i.min(j), i.max(j), k);
                v.add(GenIndex::Basis(k), &ParamPoly::var(&name));
                if i <= j {
                    unknowns.push(name);
                }
            }
            entries.push((i, j, v));
        }
    }
    unknowns.sort();
    let base = CalculusSpec::from_table(format!("{}:general", g.name()), g.clone(), entries)?;
    Ok(ParamCalculus { base, unknowns })
}

/// One component of the quadratic condition, zero or not.
#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub i: GenIndex,
    pub j: GenIndex,
    pub k: GenIndex,
    pub r: GenIndex,
    pub poly: ParamPoly,
}

/// One polynomial per `(i < j, k, r)` with `i, j, k` in the window and `r`
/// ranging over the window and any index the residual reaches outside it.
pub fn quadratic_residuals(cal: &CalculusSpec, window: &Window) -> Result<Vec<Residual>> {
    quadratic_residuals_with(cal, window, Exec::default())
}

pub fn quadratic_residuals_with(cal: &CalculusSpec, window: &Window, exec: Exec) -> Result<Vec<Residual>> {
    let idx = cal.algebra().window_indices(window)?;
    let mut triples = Vec::new();
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            for &k in &idx {
                triples.push((i, j, k));
            }
        }
    }
    let per = exec::map(exec, &triples, |&(i, j, k)| {
        let res: SparseVec = quadratic_residual(cal, i, j, k);
        let mut rs: Vec<GenIndex> = idx.clone();
        rs.extend(res.indices().filter(|r| !idx.contains(r)));
        rs.sort();
        rs.into_iter()
            .map(|r| Residual { i, j, k, r, poly: res.get(&r) })
            .collect::<Vec<_>>()
    });
    Ok(per.into_iter().flatten().collect())
}

/// A nonzero residual pinned to its indices.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub condition: &'static str,
    pub i: GenIndex,
    pub j: GenIndex,
    pub k: GenIndex,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<GenIndex>,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyVerdict {
    pub id: String,
    pub window: String,
    pub parameters: Vec<String>,
    pub pass: bool,
    pub linear_failures: usize,
    pub quadratic_failures: usize,
    pub witness: Option<Witness>,
}

/// The solution families the paper lists, by catalog id.
pub fn family_ids() -> Vec<String> {
    let mut ids: Vec<String> = ["i", "ii", "iii", "iv", "v", "A1", "A2", "B1"]
        .iter()
        .map(|f| format!("solvable2:{f}"))
        .collect();
    for g in ["I0", "I1", "II0", "II1", "IIIa", "IIIb", "IV"] {
        ids.push(format!("heisenberg:1:{g}"));
    }
    for n in 1..=3 {
        ids.push(format!("heisenberg:{n}:half-c"));
    }
    for n in 1..=3 {
        ids.push(format!("gl:{n}:leftmult"));
    }
    for n in 1..=3 {
        ids.push(format!("abelian:{n}:regular"));
    }
    ids.push("witt:mu".into());
    ids.push("virasoro:mu-central".into());
    ids
}

/// Window used by [`verify_family`]: the whole basis, or `[−12, 12]`.
pub fn family_window(g: &LieAlgebra) -> Window {
    if g.is_finite() {
        Window::Full
    } else {
        Window::range(-12, 12)
    }
}

pub fn verify_family(id: &str) -> Result<FamilyVerdict> {
    let cal = calculus::calculus(id).map_err(|e| match e {
        Error::UnknownName(n) => Error::UnknownFamily(n),
        other => other,
    })?;
    let window = family_window(cal.algebra());
    verify_calculus(&cal, &window)
}

/// Both conditions as polynomial identities in every family parameter.
pub fn verify_calculus(cal: &CalculusSpec, window: &Window) -> Result<FamilyVerdict> {
    let report = check_pbw_conditions(cal, window)?;
    let witness = report
        .linear
        .first()
        .map(|f| Witness {
            condition: "linear",
            i: f.i,
            j: f.j,
            k: f.k,
            r: None,
            residual: f.residual.to_string(),
        })
        .or_else(|| {
            report.quadratic.first().map(|f| Witness {
                condition: "quadratic",
                i: f.i,
                j: f.j,
                k: f.k,
                r: Some(f.r),
                residual: f.residual.to_string(),
            })
        });
    Ok(FamilyVerdict {
        id: cal.name().to_string(),
        window: window.to_string(),
        parameters: cal.parameters().to_vec(),
        pass: report.is_clean(),
        linear_failures: report.linear.len(),
        quadratic_failures: report.quadratic.len(),
        witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RefuteWitness {
    pub i: GenIndex,
    pub j: GenIndex,
    pub k: GenIndex,
    pub r: GenIndex,
    pub residual: Scalar,
}

/// Outcome of [`refute_random`]. `violations` counts samples with at least
/// one nonzero residual; `min_nonzero` is the fewest nonzero residuals seen
/// in any sample.
#[derive(Clone, Debug, Serialize)]
pub struct RefuteReport {
    pub algebra: String,
    pub seed: u64,
    pub samples: usize,
    pub violations: usize,
    pub min_nonzero: usize,
    pub witness: Option<RefuteWitness>,
}

impl RefuteReport {
    pub fn all_violated(&self) -> bool {
        self.violations == self.samples
    }
}

pub fn refute_random(g: &LieAlgebra, samples: usize, seed: u64) -> Result<RefuteReport> {
    refute_random_with(g, samples, seed, Exec::default())
}

/// Draws random rational values for the symmetric part of the general
/// solution and evaluates every quadratic residual. Only semisimple algebras
/// are accepted.
pub fn refute_random_with(g: &LieAlgebra, samples: usize, seed: u64, exec: Exec) -> Result<RefuteReport> {
    if !g.is_semisimple()? {
        return Err(Error::NotSemisimple);
    }
    let pc = general_linear_solution(g)?;
    let residuals: Vec<Residual> = quadratic_residuals_with(&pc.base, &Window::Full, exec)?
        .into_iter()
        .filter(|r| !r.poly.is_zero())
        .collect();
    let ids: Vec<u64> = (0..samples as u64).collect();
    let outcomes = exec::map(exec, &ids, |&s| {
        let mut rng = sampling::stream(seed, s);
        let assignment: Assignment = pc
            .unknowns
            .iter()
            .map(|u| (u.clone(), sampling::random_scalar(&mut rng)))
            .collect();
        let mut first = None;
        let mut count = 0;
        for res in &residuals {
            let v = res.poly.eval(&assignment).expect("all unknowns assigned");
            if !v.is_zero() {
                count += 1;
                if first.is_none() {
                    first = Some(RefuteWitness {
                        i: res.i,
                        j: res.j,
                        k: res.k,
                        r: res.r,
                        residual: v,
                    });
                }
            }
        }
        (count, first)
    });
    let violations = outcomes.iter().filter(|(c, _)| *c > 0).count();
    let min_nonzero = outcomes.iter().map(|(c, _)| *c).min().unwrap_or(0);
    let witness = outcomes.into_iter().find_map(|(_, w)| w);
    Ok(RefuteReport {
        algebra: g.name().to_string(),
        seed,
        samples,
        violations,
        min_nonzero,
        witness,
    })
}

/// The nonzero quadratic residuals of the general solution: the polynomial
/// system whose common zeros are exactly the calculi on `g`.
pub fn residual_system(g: &LieAlgebra) -> Result<Vec<ParamPoly>> {
    let pc = general_linear_solution(g)?;
    let mut polys: Vec<ParamPoly> = quadratic_residuals(&pc.base, &Window::Full)?
        .into_iter()
        .map(|r| r.poly)
        .filter(|p| !p.is_zero())
        .collect();
    polys.dedup();
    Ok(polys)
}
