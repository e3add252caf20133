use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::reduce::{add_term, Reducer, Strategy, Terms};
use super::word::{Letter, Word};
use crate::calculus::CalculusSpec;
use crate::error::{Error, Result};
use crate::foundations::ParamPoly;
use crate::liealg::GenIndex;

/// A linear combination of arbitrary, possibly non-normal, words. The only
/// way in to [`normal_form`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawElement {
    terms: Terms,
}

impl RawElement {
    pub fn new() -> Self {
        RawElement::default()
    }

    pub fn word(letters: Vec<Letter>) -> Self {
        let mut r = RawElement::new();
        r.push(Word::new(letters), ParamPoly::one());
        r
    }

    pub fn push(&mut self, w: Word, c: ParamPoly) {
        add_term(&mut self.terms, w, &c);
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }
}

/// An element of the graded algebra, stored as normal words with
/// coefficients. Every stored word is normal.
#[derive(Clone)]
pub struct Element {
    terms: Terms,
    cal: Arc<CalculusSpec>,
}

pub fn normal_form(raw: &RawElement, cal: &Arc<CalculusSpec>) -> Element {
    normal_form_with(raw, cal, Strategy::default())
}

pub fn normal_form_with(raw: &RawElement, cal: &Arc<CalculusSpec>, strategy: Strategy) -> Element {
    let mut r = Reducer::with_strategy(cal, strategy);
    Element {
        terms: r.normalize(&raw.terms),
        cal: cal.clone(),
    }
}

pub fn multiply(a: &Element, b: &Element) -> Result<Element> {
    a.multiply(b)
}

impl Element {
    pub fn zero(cal: &Arc<CalculusSpec>) -> Self {
        Element {
            terms: Terms::new(),
            cal: cal.clone(),
        }
    }

    pub fn constant(cal: &Arc<CalculusSpec>, c: ParamPoly) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, Word::empty(), &c);
        Element { terms, cal: cal.clone() }
    }

    pub fn one(cal: &Arc<CalculusSpec>) -> Self {
        Self::constant(cal, ParamPoly::one())
    }

    pub fn x(cal: &Arc<CalculusSpec>, i: GenIndex) -> Result<Self> {
        cal.algebra().check_index(i)?;
        Ok(Self::letter(cal, Letter::x(i)))
    }

    pub fn y(cal: &Arc<CalculusSpec>, i: GenIndex) -> Result<Self> {
        cal.algebra().check_index(i)?;
        Ok(Self::letter(cal, Letter::y(i)))
    }

    fn letter(cal: &Arc<CalculusSpec>, l: Letter) -> Self {
        let mut terms = Terms::new();
        terms.insert(Word::new(vec![l]), ParamPoly::one());
        Element { terms, cal: cal.clone() }
    }

    /// Wraps terms already known to be normal.
    pub(crate) fn from_normal_terms(cal: &Arc<CalculusSpec>, terms: Terms) -> Self {
        debug_assert!(terms.keys().all(Word::is_normal));
        Element { terms, cal: cal.clone() }
    }

    pub fn calculus(&self) -> &Arc<CalculusSpec> {
        &self.cal
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> ParamPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Splits into homogeneous components keyed by form degree.
    pub fn degree_parts(&self) -> BTreeMap<usize, Element> {
        let mut parts: BTreeMap<usize, Terms> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts.entry(w.degree()).or_default().insert(w.clone(), c.clone());
        }
        parts
            .into_iter()
            .map(|(d, terms)| (d, Element::from_normal_terms(&self.cal, terms)))
            .collect()
    }

    /// The degree, when the element is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Word::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.cal, &other.cal) {
            Ok(())
        } else {
            Err(Error::CalculusMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_term(&mut terms, w.clone(), c);
        }
        Ok(Element { terms, cal: self.cal.clone() })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(&ParamPoly::int(-1)))
    }

    pub fn scale(&self, c: &ParamPoly) -> Element {
        let mut terms = Terms::new();
        for (w, d) in &self.terms {
            add_term(&mut terms, w.clone(), &(c * d));
        }
        Element { terms, cal: self.cal.clone() }
    }

    pub fn neg(&self) -> Element {
        self.scale(&ParamPoly::int(-1))
    }

    /// Normal form of the concatenation product.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut r = Reducer::new(&self.cal);
        Ok(self.multiply_in(other, &mut r))
    }

    pub(crate) fn multiply_in(&self, other: &Element, r: &mut Reducer<'_>) -> Element {
        let pairs = self.terms.iter().flat_map(|(w1, c1)| {
            other.terms.iter().map(move |(w2, c2)| (w1.concat(w2), c1 * c2))
        });
        let terms = r.normalize_pairs(pairs);
        Element { terms, cal: self.cal.clone() }
    }

    /// Re-normalises; a no-op on well-formed elements.
    pub fn renormalize(&self) -> Element {
        let mut r = Reducer::new(&self.cal);
        Element {
            terms: r.normalize(&self.terms),
            cal: self.cal.clone(),
        }
    }

    pub fn to_raw(&self) -> RawElement {
        RawElement {
            terms: self.terms.clone(),
        }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

fn write_coefficient_term(f: &mut fmt::Formatter<'_>, w: &Word, c: &ParamPoly, first: bool) -> fmt::Result {
    if c.is_compound() {
        if !first {
            write!(f, " + ")?;
        }
        return if w.is_empty() { write!(f, "({c})") } else { write!(f, "({c})*{w}") };
    }
    let (neg, abs) = match c.terms().next() {
        Some((_, s)) if s.is_negative() => (true, -c),
        _ => (false, c.clone()),
    };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if w.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{w}")
    } else {
        write!(f, "{abs}*{w}")
    }
}

impl fmt::Display for Element {
    /// Terms in descending word order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            write_coefficient_term(f, w, c, k == 0)?;
        }
        Ok(())
    }
}
