use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::foundations::ParamPoly;
use crate::liealg::GenIndex;
use crate::rewrite::{Element, Letter, RawElement, Reducer, Terms, Word};

/// The differential on the free algebra: `d(x^i) = y^i`, `d(y^i) = 0`,
/// extended by the graded Leibniz rule. Each `x` at position `s` becomes a
/// `y` with sign `(−1)^{number of y before s}`.
pub fn tensor_differential(raw: &RawElement) -> RawElement {
    let mut out = RawElement::new();
    for (w, c) in raw.terms() {
        for (nw, sign) in word_differential(w) {
            out.push(nw, c.scale(&sign.into()));
        }
    }
    out
}

fn word_differential(w: &Word) -> Vec<(Word, i64)> {
    let letters = w.letters();
    let mut ys = 0;
    let mut out = Vec::new();
    for (s, l) in letters.iter().enumerate() {
        if l.is_x() {
            let mut v = letters.to_vec();
            v[s] = Letter::y(l.index);
            out.push((Word::new(v), if ys % 2 == 0 { 1 } else { -1 }));
        } else {
            ys += 1;
        }
    }
    out
}

fn require_verified(e: &Element) -> Result<()> {
    if e.calculus().is_verified() {
        Ok(())
    } else {
        Err(Error::UnverifiedCalculus(e.calculus().name().to_string()))
    }
}

/// `d(e)`: the signed Leibniz expansion of each normal word, brought back to
/// normal form.
pub fn differential(e: &Element) -> Result<Element> {
    require_verified(e)?;
    let cal = e.calculus();
    let mut r = Reducer::new(cal);
    let pairs = e.terms().iter().flat_map(|(w, c)| {
        word_differential(w)
            .into_iter()
            .map(move |(nw, sign)| (nw, c.scale(&sign.into())))
    });
    let terms = r.normalize_pairs(pairs);
    Ok(Element::from_normal_terms(cal, terms))
}

/// The coefficients `∂_i f` in `d f = Σ_i y^i ∂_i f` for `f` of degree 0.
/// Only nonzero operators are listed.
pub fn partials(f: &Element) -> Result<BTreeMap<GenIndex, Element>> {
    if f.terms().keys().any(|w| w.degree() > 0) {
        return Err(Error::NotDegreeZero);
    }
    let df = differential(f)?;
    let mut parts: BTreeMap<GenIndex, Terms> = BTreeMap::new();
    for (w, c) in df.terms() {
        let (head, rest) = w.letters().split_first().expect("d f has no constant term");
        debug_assert!(head.is_y());
        let slot = parts.entry(head.index).or_default();
        let rest = Word::new(rest.to_vec());
        let entry = slot.entry(rest).or_insert_with(ParamPoly::zero);
        entry.add_assign_ref(c);
    }
    Ok(parts
        .into_iter()
        .map(|(i, t)| (i, Element::from_normal_terms(f.calculus(), t)))
        .filter(|(_, e)| !e.is_zero())
        .collect())
}
