//! Named calculi. Ids are `ALGEBRA:NAME`, e.g. `heisenberg:1:IV`,
//! `solvable2:iii`, `witt:mu`, `sl2:half-c`.

use super::spec::{Acoef, CalculusSpec};
use crate::error::{Error, Result};
use crate::foundations::ParamPoly;
use crate::liealg::catalog::{catalog as algebra_catalog, split_algebra_id};
use crate::liealg::{GenIndex, LieAlgebra, SparseVec, Window};
use crate::matrix::PolyMatrix;

/// Every catalog id, with `N` standing for a dimension argument.
pub const CALCULUS_NAMES: &[&str] = &[
    "abelian:N:regular",
    "solvable2:i",
    "solvable2:ii",
    "solvable2:iii",
    "solvable2:iv",
    "solvable2:v",
    "solvable2:A1",
    "solvable2:A2",
    "solvable2:B1",
    "heisenberg:1:I0",
    "heisenberg:1:I1",
    "heisenberg:1:II0",
    "heisenberg:1:II1",
    "heisenberg:1:IIIa",
    "heisenberg:1:IIIb",
    "heisenberg:1:IV",
    "gl:N:leftmult",
    "witt:mu",
    "virasoro:mu-central",
    "ALGEBRA:half-c",
    "ALGEBRA:zero",
];

fn matrix(rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| s.parse().expect("static entry")).collect())
            .collect(),
    )
    .expect("static matrix")
}

fn from_rho(name: &str, g: LieAlgebra, rho: &[&[&[&str]]]) -> CalculusSpec {
    let mats: Vec<_> = rho.iter().map(|m| matrix(m)).collect();
    CalculusSpec::from_rho(name, g, &mats).expect("static calculus")
}

/// `A^{ij} = ½ [x^i, x^j]`.
pub fn half_c(g: &LieAlgebra) -> Result<CalculusSpec> {
    let n = g.dimension().ok_or(Error::NotFinite)?;
    let half = ParamPoly::ratio(1, 2);
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = g.bracket_unchecked(GenIndex::Basis(i), GenIndex::Basis(j)).scale(&half);
            if !v.is_zero() {
                entries.push((i, j, v));
            }
        }
    }
    CalculusSpec::from_table(format!("{}:half-c", g.name()), g.clone(), entries)
}

/// `A ≡ 0`.
pub fn zero(g: &LieAlgebra) -> Result<CalculusSpec> {
    CalculusSpec::from_table(format!("{}:zero", g.name()), g.clone(), [])
}

/// `A^{ii}_i = 1` on the abelian algebra: `x^i y^i = y^i x^i + y^i`.
pub fn abelian_regular(n: usize) -> Result<CalculusSpec> {
    let g = crate::liealg::catalog::abelian(n)?;
    let entries = (0..n).map(|i| (i, i, SparseVec::single(GenIndex::Basis(i), ParamPoly::one())));
    CalculusSpec::from_table(format!("abelian:{n}:regular"), g, entries)
}

/// `A^{(ab),(cd)} = δ_bc E_ad`: `ρ` is left multiplication on matrices.
pub fn gl_leftmult(n: usize) -> Result<CalculusSpec> {
    let g = crate::liealg::catalog::gl(n)?;
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                entries.push((a * n + b, b * n + d, SparseVec::single(GenIndex::Basis(a * n + d), ParamPoly::one())));
            }
        }
    }
    CalculusSpec::from_table(format!("gl:{n}:leftmult"), g, entries)
}

/// `A^{ij} = (j + μ) x^{i+j}`.
pub fn witt_mu() -> CalculusSpec {
    CalculusSpec::with_acoef("witt:mu", crate::liealg::catalog::witt(), Acoef::WittShift)
}

/// The Witt rule plus the central term `A^{n,−n}_t = (n^3 − n)/24` keyed by the second index.
pub fn virasoro_mu_central() -> CalculusSpec {
    CalculusSpec::with_acoef(
        "virasoro:mu-central",
        crate::liealg::catalog::virasoro(),
        Acoef::VirasoroShift,
    )
}

/// The 2-dimensional solvable algebra `[x, y] = 2y`. `ρ(x)` and `ρ(y)` are given
/// in the basis `(x, y)`.
pub fn solvable2(name: &str) -> Result<CalculusSpec> {
    let g = crate::liealg::catalog::solvable2();
    let zero: &[&[&str]] = &[&["0", "0"], &["0", "0"]];
    let id = format!("solvable2:{name}");
    let cal = match name {
        "A1" => from_rho(&id, g, &[&[&["alpha", "0"], &["beta*(alpha - 2)", "2"]], zero]),
        "i" => from_rho(&id, g, &[&[&["alpha", "0"], &["0", "2"]], zero]),
        "A2" => from_rho(&id, g, &[&[&["2", "0"], &["beta", "2"]], zero]),
        "ii" => from_rho(&id, g, &[&[&["2", "0"], &["1", "2"]], zero]),
        "B1" => from_rho(
            &id,
            g,
            &[&[&["alpha - 1", "0"], &["beta", "alpha + 1"]], &[&["0", "0"], &["alpha - 1", "0"]]],
        ),
        "iii" => from_rho(
            &id,
            g,
            &[&[&["alpha - 1", "0"], &["0", "alpha + 1"]], &[&["0", "0"], &["alpha - 1", "0"]]],
        ),
        "iv" => from_rho(&id, g, &[&[&["-2", "0"], &["1", "0"]], &[&["0", "0"], &["-2", "0"]]]),
        "v" => from_rho(&id, g, &[&[&["4", "0"], &["0", "2"]], &[&["0", "1"], &["0", "0"]]]),
        _ => return Err(Error::UnknownName(id)),
    };
    Ok(cal)
}

/// The seven normal forms on `heisenberg:1`, basis `(c, p, q)`.
pub fn heisenberg1(name: &str) -> Result<CalculusSpec> {
    let g = crate::liealg::catalog::heisenberg(1)?;
    let id = format!("heisenberg:1:{name}");
    let zero: &[&[&str]] = &[&["0", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]];
    let e02: &[&[&str]] = &[&["0", "0", "1"], &["0", "0", "0"], &["0", "0", "0"]];
    let cal = match name {
        "I0" | "I1" => {
            let eps = if name == "I0" { "0" } else { "1" };
            from_rho(
                &id,
                g,
                &[
                    e02,
                    &[&["0", eps, "0"], &["0", "0", "1"], &["0", "0", "0"]],
                    &[&["1", "-1", "0"], &["0", "1", "0"], &["0", "0", "1"]],
                ],
            )
        }
        "II0" | "II1" => {
            let eps = if name == "II0" { "0" } else { "1" };
            from_rho(
                &id,
                g,
                &[
                    zero,
                    &[&["0", eps, "0"], &["0", "0", "0"], &["0", "0", "0"]],
                    &[&["0", "-1", "0"], &["0", "0", "0"], &["0", "0", "1"]],
                ],
            )
        }
        "IIIa" => from_rho(
            &id,
            g,
            &[
                zero,
                &[&["0", "1", "0"], &["0", "0", "0"], &["0", "0", "0"]],
                &[&["0", "-1", "alpha"], &["0", "0", "0"], &["0", "0", "0"]],
            ],
        ),
        "IIIb" => from_rho(
            &id,
            g,
            &[
                zero,
                &[&["0", "0", "1 + alpha"], &["0", "0", "0"], &["0", "0", "0"]],
                &[&["0", "alpha", "0"], &["0", "0", "1"], &["0", "0", "0"]],
            ],
        ),
        "IV" => from_rho(
            &id,
            g,
            &[
                zero,
                &[&["0", "0", "1/2"], &["0", "0", "0"], &["0", "0", "0"]],
                &[&["0", "-1/2", "0"], &["0", "0", "0"], &["0", "0", "0"]],
            ],
        ),
        _ => return Err(Error::UnknownName(id)),
    };
    Ok(cal)
}

/// Looks up a calculus by id. The result is not yet verified.
pub fn calculus(id: &str) -> Result<CalculusSpec> {
    let id = id.trim();
    let (alg_id, name) = split_calculus_id(id)?;
    calculus_on(&alg_id, name)
}

/// Looks up the calculus `name` on the algebra `alg_id`.
pub fn calculus_on(alg_id: &str, name: &str) -> Result<CalculusSpec> {
    let g = algebra_catalog(alg_id)?;
    let unknown = || Error::UnknownName(format!("{}:{name}", g.name()));
    match name {
        "half-c" => return half_c(&g),
        "zero" => return zero(&g),
        _ => {}
    }
    let (head, _) = split_algebra_id(alg_id);
    match (head, name) {
        ("abelian", "regular") => abelian_regular(g.dimension().unwrap()),
        ("gl", "leftmult") => gl_leftmult((g.dimension().unwrap() as f64).sqrt() as usize),
        ("witt", "mu") => Ok(witt_mu()),
        ("virasoro", "mu-central") => Ok(virasoro_mu_central()),
        ("solvable2", _) => solvable2(name),
        ("heisenberg", _) if g.dimension() == Some(3) => heisenberg1(name),
        _ => Err(unknown()),
    }
}

/// Splits a calculus id into its algebra id and calculus name.
pub fn split_calculus_id(id: &str) -> Result<(String, &str)> {
    let bad = || Error::UnknownName(id.to_string());
    if let Some(pos) = id.find(')') {
        let name = id[pos + 1..].strip_prefix(':').ok_or_else(bad)?;
        return Ok((id[..=pos].to_string(), name));
    }
    let parts: Vec<&str> = id.splitn(3, ':').collect();
    match parts.as_slice() {
        [head, arg, name] if matches!(*head, "abelian" | "heisenberg" | "gl") => {
            Ok((format!("{head}:{arg}"), *name))
        }
        [head, rest @ ..] if !rest.is_empty() && !matches!(*head, "abelian" | "heisenberg" | "gl") => {
            let name_start = head.len() + 1;
            Ok((head.to_string(), &id[name_start..]))
        }
        _ => Err(bad()),
    }
}

/// The window a calculus is checked on when none is given: everything for
/// finite algebras, `[−10, 10]` for integer-indexed ones.
pub fn default_window(g: &LieAlgebra) -> Window {
    if g.is_finite() {
        Window::Full
    } else {
        Window::range(-10, 10)
    }
}
