//! Named algebras: abelian, the 2-dimensional solvable algebra, Heisenberg,
//! gl(n), sl2, Witt and Virasoro.

use super::{GenIndex, LieAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::foundations::ParamPoly;

pub const ALGEBRA_NAMES: &[&str] = &[
    "abelian:N",
    "solvable2",
    "heisenberg:N",
    "gl:N",
    "sl2",
    "witt",
    "virasoro",
];

fn unit(k: usize, c: i64) -> SparseVec {
    SparseVec::single(GenIndex::Basis(k), ParamPoly::int(c))
}

pub fn abelian(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::BadParams("abelian(n) needs n >= 1".into()));
    }
    let names = (0..n).map(|k| format!("x{k}")).collect();
    LieAlgebra::from_brackets(format!("abelian:{n}"), names, [])
}

/// `[x, y] = 2y` on the basis `x = x^0`, `y = x^1`.
pub fn solvable2() -> LieAlgebra {
    LieAlgebra::from_brackets("solvable2", vec!["x".into(), "y".into()], [(0, 1, unit(1, 2))])
        .expect("static table")
}

/// Basis `c, p1, q1, ..., pn, qn` (positions `0, 1, 2, ...`), `[p_i, q_i] = c`.
pub fn heisenberg(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::BadParams("heisenberg(n) needs n >= 1".into()));
    }
    let mut names = vec!["c".to_string()];
    for i in 1..=n {
        names.push(format!("p{i}"));
        names.push(format!("q{i}"));
    }
    let brackets = (1..=n).map(|i| (2 * i - 1, 2 * i, unit(0, 1)));
    LieAlgebra::from_brackets(format!("heisenberg:{n}"), names, brackets)
}

/// Matrix units `E_ab` ordered by `(a, b)`; `[E_ab, E_cd] = δ_bc E_ad − δ_da E_cb`.
pub fn gl(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::BadParams("gl(n) needs n >= 1".into()));
    }
    let idx = |a: usize, b: usize| a * n + b;
    let mut names = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            names.push(format!("E{}{}", a + 1, b + 1));
        }
    }
    let mut brackets = Vec::new();
    for i in 0..n * n {
        for j in i + 1..n * n {
            let (a, b, c, d) = (i / n, i % n, j / n, j % n);
            let mut v = SparseVec::new();
            if b == c {
                v.add(GenIndex::Basis(idx(a, d)), &ParamPoly::one());
            }
            if d == a {
                v.add(GenIndex::Basis(idx(c, b)), &ParamPoly::int(-1));
            }
            if !v.is_zero() {
                brackets.push((i, j, v));
            }
        }
    }
    LieAlgebra::from_brackets(format!("gl:{n}"), names, brackets)
}

/// Basis `h, e, f` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_brackets(
        "sl2",
        vec!["h".into(), "e".into(), "f".into()],
        [(0, 1, unit(1, 2)), (0, 2, unit(2, -2)), (1, 2, unit(0, 1))],
    )
    .expect("static table")
}

pub fn witt() -> LieAlgebra {
    LieAlgebra::witt_rule("witt", false)
}

pub fn virasoro() -> LieAlgebra {
    LieAlgebra::witt_rule("virasoro", true)
}

/// Splits `heisenberg:2` / `heisenberg(2)` into the family name and its
/// numeric argument.
pub(crate) fn split_algebra_id(id: &str) -> (&str, Option<&str>) {
    if let Some((head, rest)) = id.split_once('(') {
        if let Some(arg) = rest.strip_suffix(')') {
            return (head, Some(arg));
        }
    }
    match id.split_once(':') {
        Some((head, arg)) => (head, Some(arg)),
        None => (id, None),
    }
}

/// Looks up an algebra by name, e.g. `sl2`, `gl:3`, `heisenberg(1)`.
pub fn catalog(id: &str) -> Result<LieAlgebra> {
    let (head, arg) = split_algebra_id(id.trim());
    let size = || -> Result<usize> {
        let arg = arg.ok_or_else(|| Error::BadParams(format!("`{head}` needs a dimension argument")))?;
        arg.parse().map_err(|_| Error::BadParams(format!("bad dimension `{arg}`")))
    };
    let no_arg = |g: LieAlgebra| -> Result<LieAlgebra> {
        match arg {
            None => Ok(g),
            Some(a) => Err(Error::BadParams(format!("`{head}` takes no argument, got `{a}`"))),
        }
    };
    match head {
        "abelian" => abelian(size()?),
        "heisenberg" => heisenberg(size()?),
        "gl" => gl(size()?),
        "solvable2" => no_arg(solvable2()),
        "sl2" => no_arg(sl2()),
        "witt" => no_arg(witt()),
        "virasoro" => no_arg(virasoro()),
        _ => Err(Error::UnknownName(id.to_string())),
    }
}
