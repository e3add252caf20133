//! Sparse multivariate polynomials over the rationals in named parameters.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Scalar;
use crate::error::{Error, Result};

/// A power product of parameters. Factors are sorted by parameter name and
/// every stored exponent is positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Arc<str>, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(Arc::from(name), 1)])
    }

    pub fn from_powers<'a>(powers: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let mut m = Monomial::one();
        for (name, e) in powers {
            if e > 0 {
                m = &m * &Monomial(vec![(Arc::from(name), e)]);
            }
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn powers(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(n, e)| (&**n, *e))
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0
            .iter()
            .find(|(n, _)| &**n == name)
            .map_or(0, |(_, e)| *e)
    }

    /// `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(n, e)| other.exponent(n) >= *e)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let powers = other
            .0
            .iter()
            .filter_map(|(n, e)| {
                let r = e - self.exponent(n);
                (r > 0).then(|| (n.clone(), r))
            })
            .collect();
        Monomial(powers)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<Arc<str>, u32> = self.0.iter().cloned().collect();
        for (n, e) in &other.0 {
            let slot = out.entry(n.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        Monomial(out.into_iter().collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(n, _)| other.exponent(n) == 0)
    }

    /// Graded reverse lexicographic order with parameters ranked by name
    /// (`a > b > ...`).
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let names: BTreeSet<&str> = self.powers().chain(other.powers()).map(|(n, _)| n).collect();
        // Smallest variable decides; a larger exponent there means a smaller monomial.
        for name in names.iter().rev() {
            match self.exponent(name).cmp(&other.exponent(name)) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + rhs.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), rhs.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap().clone()),
                    Ordering::Equal => {
                        let (n, e) = a.next().unwrap();
                        let (_, f) = b.next().unwrap();
                        out.push((n.clone(), e + f));
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (n, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial in named parameters with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        ParamPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = ParamPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        ParamPoly::constant(Scalar::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ParamPoly::constant(Scalar::ratio(num, den))
    }

    pub fn var(name: &str) -> Self {
        ParamPoly::term(Scalar::one(), Monomial::var(name))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut p = ParamPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial has no parameters.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().map(|(n, _)| n.to_string()))
            .collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: &Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &ParamPoly) {
        for (m, c) in &other.terms {
            self.add_term(m, c);
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, factor: &ParamPoly, other: &ParamPoly) {
        for (m1, c1) in &factor.terms {
            for (m2, c2) in &other.terms {
                self.add_term(&(m1 * m2), &(c1 * c2));
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(n, d)| (n * m, d * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation; every parameter occurring in `self` must be assigned.
    pub fn eval(&self, assignment: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (name, e) in m.powers() {
                let x = assignment
                    .get(name)
                    .ok_or_else(|| Error::MissingParameter(name.to_string()))?;
                v *= &x.pow(e);
            }
            acc += &v;
        }
        Ok(acc)
    }

    /// Substitutes polynomials for some parameters; unassigned ones stay symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<String, ParamPoly>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut value = ParamPoly::constant(c.clone());
            for (name, e) in m.powers() {
                match assignment.get(name) {
                    Some(p) => value = &value * &p.pow(e),
                    None => rest.push((name, e)),
                }
            }
            let rest = Monomial::from_powers(rest);
            out.add_assign_ref(&value.mul_monomial(&rest, &Scalar::one()));
        }
        out
    }

    /// Leading term under grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| a.0.grevlex_cmp(b.0))
    }

    /// Display order: higher total degree first, then storage order.
    fn display_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// True when printing needs parentheses to be used as a factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Scalar) -> fmt::Result {
    if m.is_one() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{m}")
    } else if (-c).is_one() {
        write!(f, "-{m}")
    } else {
        write!(f, "{c}*{m}")
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.display_terms().into_iter().enumerate() {
            if k == 0 {
                write_term(f, m, c)?;
            } else if c.is_negative() {
                write!(f, " - ")?;
                write_term(f, m, &c.abs())?;
            } else {
                write!(f, " + ")?;
                write_term(f, m, c)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl From<Scalar> for ParamPoly {
    fn from(c: Scalar) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(n: i64) -> Self {
        ParamPoly::int(n)
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(mut self, rhs: ParamPoly) -> ParamPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m, &-c);
        }
        out
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        &self - &rhs
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        out.add_scaled(self, rhs);
        out
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

pub fn poly_add(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    a + b
}

pub fn poly_mul(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    a * b
}

pub fn poly_eval(p: &ParamPoly, assignment: &BTreeMap<String, Scalar>) -> Result<Scalar> {
    p.eval(assignment)
}

// ---- canonical string form -------------------------------------------------

struct PolyParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.src.as_bytes().get(self.pos).is_some_and(|&b| pred(b)) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<ParamPoly> {
        let mut acc = ParamPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<ParamPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ParamPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.take_while(|b| b.is_ascii_digit());
                let mut text = num.to_string();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.take_while(|b| b.is_ascii_digit());
                    if den.is_empty() {
                        return Err(self.err("expected denominator"));
                    }
                    text = format!("{num}/{den}");
                }
                Ok(ParamPoly::constant(text.parse()?))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let name = self.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
                let mut exp = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let e = self.take_while(|b| b.is_ascii_digit());
                    exp = e.parse().map_err(|_| self.err("expected exponent"))?;
                }
                Ok(ParamPoly::term(Scalar::one(), Monomial::from_powers([(name, exp)])))
            }
            _ => Err(self.err("expected number, parameter or `(`")),
        }
    }
}

impl FromStr for ParamPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = PolyParser { src: s, pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Serialize for ParamPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
