//! Lie algebras given by structure constants on an indexed basis.

pub(crate) mod catalog;
pub(crate) mod json;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::foundations::{ParamPoly, Scalar};
use crate::matrix::PolyMatrix;

pub use catalog::{abelian, catalog, gl, heisenberg, sl2, solvable2, virasoro, witt, ALGEBRA_NAMES};
pub use json::{AlgebraFile, BracketEntry};

/// Index of a basis element. The derived order is the generator order:
/// the central element precedes every integer index, integers compare
/// numerically and finite basis positions by position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GenIndex {
    Central,
    Int(i64),
    Basis(usize),
}

impl fmt::Display for GenIndex {
    /// The bracket form used inside `x[..]` / `y[..]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenIndex::Central => write!(f, "t"),
            GenIndex::Int(n) => write!(f, "{n}"),
            GenIndex::Basis(k) => write!(f, "{k}"),
        }
    }
}

impl Serialize for GenIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GenIndex::Basis(k) => s.serialize_u64(*k as u64),
            GenIndex::Int(n) => s.serialize_i64(*n),
            GenIndex::Central => s.serialize_str("t"),
        }
    }
}

/// A finite linear combination of basis elements; zero entries are dropped.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct SparseVec(BTreeMap<GenIndex, ParamPoly>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn unit(i: GenIndex) -> Self {
        Self::single(i, ParamPoly::one())
    }

    pub fn single(i: GenIndex, c: ParamPoly) -> Self {
        let mut v = SparseVec::new();
        v.add(i, &c);
        v
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (GenIndex, ParamPoly)>) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in pairs {
            v.add(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: &GenIndex) -> ParamPoly {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenIndex, &ParamPoly)> {
        self.0.iter()
    }

    pub fn add(&mut self, i: GenIndex, c: &ParamPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(i).or_default();
        slot.add_assign_ref(c);
        if slot.is_zero() {
            self.0.remove(&i);
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, factor: &ParamPoly, other: &SparseVec) {
        if factor.is_zero() {
            return;
        }
        for (i, c) in &other.0 {
            self.add(*i, &(factor * c));
        }
    }

    pub fn scale(&self, factor: &ParamPoly) -> SparseVec {
        let mut out = SparseVec::new();
        out.add_scaled(factor, self);
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&ParamPoly::int(-1), other);
        out
    }

    pub fn plus(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(&ParamPoly::one(), other);
        out
    }

    pub fn indices(&self) -> impl Iterator<Item = GenIndex> + '_ {
        self.0.keys().copied()
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter().map(|(k, v)| (k, v.to_string()))).finish()
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (k, v)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SparseVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(&k.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

/// A finite range of indices to run verification over. `Full` means the
/// whole basis and is only meaningful for finite-dimensional algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    Full,
    Range { lo: i64, hi: i64 },
}

impl Window {
    pub fn range(lo: i64, hi: i64) -> Self {
        Window::Range { lo, hi }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::Full => write!(f, "full"),
            Window::Range { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

impl std::str::FromStr for Window {
    type Err = Error;

    /// Accepts `LO..HI` (inclusive) or `full`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "full" {
            return Ok(Window::Full);
        }
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("window `{s}` is not LO..HI")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("window `{s}` is not LO..HI")))
        };
        Ok(Window::range(parse(lo)?, parse(hi)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Finite { names: Vec<String> },
    IntIndexed { central: bool },
}

#[derive(Clone, Debug)]
enum Brackets {
    /// Row-major `n x n` table of `[x^i, x^j]`.
    Table(Vec<SparseVec>),
    /// `[x^i, x^j] = (j - i) x^{i+j}`, plus `(j^3 - j)/12 δ^{j,-i} t` when central.
    Witt,
}

/// A Lie algebra with basis `x^i` and structure constants `c^{ij}_k`.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    kind: AlgebraKind,
    brackets: Brackets,
}

impl LieAlgebra {
    /// Builds a finite-dimensional algebra from the brackets `[x^i, x^j]`
    /// with `i < j`; the remaining entries follow by antisymmetry.
    pub fn from_brackets(
        name: impl Into<String>,
        names: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, SparseVec)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut table = vec![SparseVec::new(); n * n];
        for (i, j, out) in brackets {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange {
                    index: format!("({i}, {j})"),
                    dim: n,
                });
            }
            if i >= j {
                return Err(Error::BadParams(format!(
                    "bracket ({i}, {j}) must be given with i < j"
                )));
            }
            if let Some(bad) = out.indices().find(|k| !matches!(k, GenIndex::Basis(k) if *k < n)) {
                return Err(Error::IndexOutOfRange {
                    index: bad.to_string(),
                    dim: n,
                });
            }
            table[j * n + i] = out.scale(&ParamPoly::int(-1));
            table[i * n + j] = out;
        }
        Ok(LieAlgebra {
            name: name.into(),
            kind: AlgebraKind::Finite { names },
            brackets: Brackets::Table(table),
        })
    }

    /// Builds a finite algebra from a complete table without imposing
    /// antisymmetry. `table[i][j] = [x^i, x^j]`.
    pub fn from_full_table(name: impl Into<String>, names: Vec<String>, table: Vec<Vec<SparseVec>>) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("bracket table must be {n}x{n}")));
        }
        Ok(LieAlgebra {
            name: name.into(),
            kind: AlgebraKind::Finite { names },
            brackets: Brackets::Table(table.into_iter().flatten().collect()),
        })
    }

    pub(crate) fn witt_rule(name: &str, central: bool) -> Self {
        LieAlgebra {
            name: name.to_string(),
            kind: AlgebraKind::IntIndexed { central },
            brackets: Brackets::Witt,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, AlgebraKind::Finite { .. })
    }

    pub fn dimension(&self) -> Option<usize> {
        match &self.kind {
            AlgebraKind::Finite { names } => Some(names.len()),
            AlgebraKind::IntIndexed { .. } => None,
        }
    }

    pub fn names(&self) -> &[String] {
        match &self.kind {
            AlgebraKind::Finite { names } => names,
            AlgebraKind::IntIndexed { .. } => &[],
        }
    }

    pub fn has_central(&self) -> bool {
        matches!(self.kind, AlgebraKind::IntIndexed { central: true })
    }

    /// The basis of a finite algebra, in generator order.
    pub fn basis(&self) -> Result<Vec<GenIndex>> {
        let n = self.dimension().ok_or(Error::NotFinite)?;
        Ok((0..n).map(GenIndex::Basis).collect())
    }

    pub fn check_index(&self, i: GenIndex) -> Result<()> {
        let ok = match (&self.kind, i) {
            (AlgebraKind::Finite { names }, GenIndex::Basis(k)) => k < names.len(),
            (AlgebraKind::IntIndexed { .. }, GenIndex::Int(_)) => true,
            (AlgebraKind::IntIndexed { central }, GenIndex::Central) => *central,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i.to_string(),
                dim: self.dimension().unwrap_or(0),
            })
        }
    }

    /// The indices a verification runs over.
    pub fn window_indices(&self, window: &Window) -> Result<Vec<GenIndex>> {
        match (&self.kind, window) {
            (AlgebraKind::Finite { names }, Window::Full) => Ok((0..names.len()).map(GenIndex::Basis).collect()),
            (AlgebraKind::Finite { names }, Window::Range { lo, hi }) => Ok((0..names.len())
                .filter(|&k| (k as i64) >= *lo && (k as i64) <= *hi)
                .map(GenIndex::Basis)
                .collect()),
            (AlgebraKind::IntIndexed { .. }, Window::Full) => Err(Error::UnboundedWindow),
            (AlgebraKind::IntIndexed { central }, Window::Range { lo, hi }) => {
                let mut v = Vec::new();
                if *central {
                    v.push(GenIndex::Central);
                }
                v.extend((*lo..=*hi).map(GenIndex::Int));
                Ok(v)
            }
        }
    }

    /// The display name of a generator (`p1`, `h`, `x[3]`, ...).
    pub fn index_name(&self, i: GenIndex) -> String {
        match (&self.kind, i) {
            (AlgebraKind::Finite { names }, GenIndex::Basis(k)) if k < names.len() => names[k].clone(),
            (_, GenIndex::Central) => "t".to_string(),
            _ => format!("x[{i}]"),
        }
    }

    /// Resolves a named alias (`p1`, `c`, `t`, ...) to its index.
    pub fn resolve_name(&self, name: &str) -> Option<GenIndex> {
        match &self.kind {
            AlgebraKind::Finite { names } => names.iter().position(|n| n == name).map(GenIndex::Basis),
            AlgebraKind::IntIndexed { central } => (*central && name == "t").then_some(GenIndex::Central),
        }
    }

    /// `[x^i, x^j]` as a coefficient vector.
    pub fn bracket(&self, i: GenIndex, j: GenIndex) -> Result<SparseVec> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.bracket_unchecked(i, j))
    }

    pub(crate) fn bracket_unchecked(&self, i: GenIndex, j: GenIndex) -> SparseVec {
        match &self.brackets {
            Brackets::Table(t) => match (i, j) {
                (GenIndex::Basis(a), GenIndex::Basis(b)) => t[a * self.dimension().unwrap() + b].clone(),
                _ => SparseVec::new(),
            },
            Brackets::Witt => match (i, j) {
                (GenIndex::Int(n), GenIndex::Int(m)) => {
                    let mut v = SparseVec::single(GenIndex::Int(n + m), ParamPoly::int(m - n));
                    if self.has_central() && n + m == 0 {
                        let c = Scalar::ratio(m * m * m - m, 12);
                        v.add(GenIndex::Central, &ParamPoly::constant(c));
                    }
                    v
                }
                _ => SparseVec::new(),
            },
        }
    }

    /// Bilinear extension of the bracket.
    pub fn bracket_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, ci) in a.iter() {
            for (j, cj) in b.iter() {
                out.add_scaled(&(ci * cj), &self.bracket_unchecked(*i, *j));
            }
        }
        out
    }

    /// Parameters occurring in the structure constants of a finite algebra.
    pub fn parameters(&self) -> Vec<String> {
        let mut out = std::collections::BTreeSet::new();
        if let Brackets::Table(t) = &self.brackets {
            for v in t {
                for (_, c) in v.iter() {
                    out.extend(c.parameters());
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn check_lie_axioms(&self, window: &Window) -> Result<LieAxiomReport> {
        self.check_lie_axioms_with(window, Exec::default())
    }

    pub fn check_lie_axioms_with(&self, window: &Window, exec: Exec) -> Result<LieAxiomReport> {
        let idx = self.window_indices(window)?;
        let mut report = LieAxiomReport::default();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a..] {
                let s = self.bracket_unchecked(i, j).plus(&self.bracket_unchecked(j, i));
                if !s.is_zero() {
                    report.antisymmetry.push(AntisymmetryViolation { i, j, residual: s });
                }
            }
        }
        let mut triples = Vec::new();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                for &k in &idx[b + 1..] {
                    triples.push((i, j, k));
                }
            }
        }
        let jac = exec::filter_map(exec, &triples, |&(i, j, k)| {
            let r = self.jacobiator(i, j, k);
            (!r.is_zero()).then_some(JacobiViolation { i, j, k, residual: r })
        });
        report.jacobi = jac;
        Ok(report)
    }

    /// `[[i,j],k] + [[j,k],i] + [[k,i],j]`
    pub fn jacobiator(&self, i: GenIndex, j: GenIndex, k: GenIndex) -> SparseVec {
        let u = |a| SparseVec::unit(a);
        let mut r = self.bracket_vec(&self.bracket_unchecked(i, j), &u(k));
        r = r.plus(&self.bracket_vec(&self.bracket_unchecked(j, k), &u(i)));
        r.plus(&self.bracket_vec(&self.bracket_unchecked(k, i), &u(j)))
    }

    /// Matrix of `ad x^i` acting on coordinate columns: entry `(b, a) = c^{ia}_b`.
    pub fn ad_matrix(&self, i: GenIndex) -> Result<PolyMatrix> {
        let n = self.dimension().ok_or(Error::NotFinite)?;
        self.check_index(i)?;
        let mut m = PolyMatrix::zeros(n, n);
        for a in 0..n {
            for (b, c) in self.bracket_unchecked(i, GenIndex::Basis(a)).iter() {
                if let GenIndex::Basis(b) = b {
                    m[(*b, a)] = c.clone();
                }
            }
        }
        Ok(m)
    }

    /// `K_{ij} = tr(ad x^i ∘ ad x^j)`.
    pub fn killing_form(&self) -> Result<PolyMatrix> {
        let basis = self.basis()?;
        let ads = basis.iter().map(|&i| self.ad_matrix(i)).collect::<Result<Vec<_>>>()?;
        let n = basis.len();
        Ok(PolyMatrix::from_fn(n, n, |i, j| ads[i].mul(&ads[j]).trace()))
    }

    /// Cartan's criterion: semisimple iff the Killing form is nondegenerate.
    pub fn is_semisimple(&self) -> Result<bool> {
        let params = self.parameters();
        if !params.is_empty() {
            return Err(Error::Parametric(params));
        }
        let k = self.killing_form()?;
        let k = k.as_constant().expect("parameter-free structure constants");
        Ok(k.rank() == k.rows())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AntisymmetryViolation {
    pub i: GenIndex,
    pub j: GenIndex,
    pub residual: SparseVec,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiViolation {
    pub i: GenIndex,
    pub j: GenIndex,
    pub k: GenIndex,
    pub residual: SparseVec,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LieAxiomReport {
    pub antisymmetry: Vec<AntisymmetryViolation>,
    pub jacobi: Vec<JacobiViolation>,
}

impl LieAxiomReport {
    pub fn is_clean(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GenIndex::{Basis, Central, Int};

    fn c(n: i64, d: i64) -> ParamPoly {
        ParamPoly::ratio(n, d)
    }

    #[test]
    fn index_order() {
        assert!(Central < Int(-100));
        assert!(Int(-3) < Int(2));
        assert!(Basis(0) < Basis(1));
    }

    #[test]
    fn bracket_examples() {
        let h = heisenberg(1).unwrap();
        assert_eq!(h.bracket(Basis(1), Basis(2)).unwrap(), SparseVec::unit(Basis(0)));
        let w = witt();
        assert_eq!(w.bracket(Int(2), Int(3)).unwrap(), SparseVec::unit(Int(5)));
        let a = abelian(3).unwrap();
        assert!(a.bracket(Basis(0), Basis(1)).unwrap().is_zero());
        let v = virasoro();
        let expect = SparseVec::from_pairs([(Int(0), c(-4, 1)), (Central, c(-1, 2))]);
        assert_eq!(v.bracket(Int(2), Int(-2)).unwrap(), expect);
    }

    #[test]
    fn bracket_out_of_range() {
        let h = heisenberg(1).unwrap();
        assert!(matches!(h.bracket(Basis(0), Basis(3)), Err(Error::IndexOutOfRange { .. })));
        assert!(witt().bracket(Central, Int(1)).is_err());
    }

    #[test]
    fn axioms_hold_on_catalog() {
        assert!(heisenberg(2).unwrap().check_lie_axioms(&Window::Full).unwrap().is_clean());
        assert!(witt().check_lie_axioms(&Window::range(-6, 6)).unwrap().is_clean());
        for name in ["abelian:3", "solvable2", "heisenberg:1", "heisenberg:3", "gl:2", "gl:3", "sl2"] {
            let g = catalog(name).unwrap();
            assert!(g.check_lie_axioms(&Window::Full).unwrap().is_clean(), "{name}");
        }
        for g in [witt(), virasoro()] {
            assert!(g.check_lie_axioms(&Window::range(-10, 10)).unwrap().is_clean());
        }
    }

    #[test]
    fn corrupted_antisymmetry_detected() {
        let names = vec!["x".to_string(), "y".to_string()];
        let mut table = vec![vec![SparseVec::new(); 2]; 2];
        table[0][1] = SparseVec::single(Basis(1), ParamPoly::int(2));
        table[1][0] = SparseVec::single(Basis(1), ParamPoly::int(-3));
        let g = LieAlgebra::from_full_table("corrupt", names, table).unwrap();
        let r = g.check_lie_axioms(&Window::Full).unwrap();
        assert_eq!(r.antisymmetry.len(), 1);
        assert_eq!((r.antisymmetry[0].i, r.antisymmetry[0].j), (Basis(0), Basis(1)));
    }

    /// Killing form by explicit matrices of ad, written out by hand.
    #[test]
    fn killing_sl2() {
        let k = sl2().killing_form().unwrap();
        let expected = [[8, 0, 0], [0, 0, 4], [0, 4, 0]];
        for r in 0..3 {
            for col in 0..3 {
                assert_eq!(k[(r, col)], ParamPoly::int(expected[r][col]));
            }
        }
        assert_eq!(k.determinant(), ParamPoly::int(-128));
    }

    #[test]
    fn killing_degenerate() {
        assert!(heisenberg(1).unwrap().killing_form().unwrap().is_zero());
        assert!(abelian(4).unwrap().killing_form().unwrap().is_zero());
        assert!(matches!(witt().killing_form(), Err(Error::NotFinite)));
        assert_eq!(solvable2().killing_form().unwrap().rank(), 1);
    }

    #[test]
    fn semisimplicity() {
        assert!(sl2().is_semisimple().unwrap());
        assert!(!solvable2().is_semisimple().unwrap());
        assert!(!abelian(1).unwrap().is_semisimple().unwrap());
        assert!(!heisenberg(1).unwrap().is_semisimple().unwrap());
        for n in 1..=3 {
            assert!(!gl(n).unwrap().is_semisimple().unwrap());
        }
        assert!(matches!(virasoro().is_semisimple(), Err(Error::NotFinite)));
    }

    #[test]
    fn killing_symmetric() {
        for name in ["solvable2", "heisenberg:2", "gl:2", "gl:3", "sl2", "abelian:2"] {
            let k = catalog(name).unwrap().killing_form().unwrap();
            assert_eq!(k, k.transpose(), "{name}");
        }
    }

    #[test]
    fn window_parse() {
        assert_eq!("-20..20".parse::<Window>().unwrap(), Window::range(-20, 20));
        assert_eq!("full".parse::<Window>().unwrap(), Window::Full);
        assert!("3".parse::<Window>().is_err());
        assert!(matches!(witt().window_indices(&Window::Full), Err(Error::UnboundedWindow)));
    }
}
