#![allow(dead_code)]

use std::sync::Arc;

use pbwcalc::calculus::{calculus, CalculusSpec};
use pbwcalc::foundations::ParamPoly;
use pbwcalc::liealg::{GenIndex, Window};
use pbwcalc::rewrite::{normal_form, Element, Letter, RawElement};

pub fn b(k: usize) -> GenIndex {
    GenIndex::Basis(k)
}

pub fn n(k: i64) -> GenIndex {
    GenIndex::Int(k)
}

pub fn poly(s: &str) -> ParamPoly {
    s.parse().unwrap()
}

pub fn solvable_families() -> Vec<String> {
    ["i", "ii", "iii", "iv", "v"].iter().map(|f| format!("solvable2:{f}")).collect()
}

pub fn heisenberg_groups() -> Vec<String> {
    ["I0", "I1", "II0", "II1", "IIIa", "IIIb", "IV"]
        .iter()
        .map(|f| format!("heisenberg:1:{f}"))
        .collect()
}

/// Calculi expected to pass both conditions, each with its checking window.
pub fn consistent_calculi() -> Vec<(String, Window)> {
    let mut out: Vec<(String, Window)> = solvable_families()
        .into_iter()
        .chain(heisenberg_groups())
        .map(|id| (id, Window::Full))
        .collect();
    for k in 1..=3 {
        out.push((format!("heisenberg:{k}:half-c"), Window::Full));
    }
    for k in 1..=3 {
        out.push((format!("gl:{k}:leftmult"), Window::Full));
    }
    out.push(("witt:mu".into(), Window::range(-20, 20)));
    out
}

pub fn verified(id: &str, window: &Window) -> Arc<CalculusSpec> {
    Arc::new(calculus(id).unwrap().verified(window).unwrap())
}

pub fn unverified(id: &str) -> Arc<CalculusSpec> {
    Arc::new(calculus(id).unwrap())
}

pub fn word(cal: &Arc<CalculusSpec>, letters: Vec<Letter>) -> Element {
    normal_form(&RawElement::word(letters), cal)
}

/// `x^i · y^j` brought to normal form.
pub fn x_dy(cal: &Arc<CalculusSpec>, i: GenIndex, j: GenIndex) -> Element {
    word(cal, vec![Letter::x(i), Letter::y(j)])
}

/// `y^j · x^i` (already normal).
pub fn dy_x(cal: &Arc<CalculusSpec>, j: GenIndex, i: GenIndex) -> Element {
    word(cal, vec![Letter::y(j), Letter::x(i)])
}

pub fn dy(cal: &Arc<CalculusSpec>, j: GenIndex) -> Element {
    Element::y(cal, j).unwrap()
}

/// Indices sampled for random elements on `cal`'s algebra.
pub fn sample_indices(cal: &CalculusSpec) -> Vec<GenIndex> {
    match cal.algebra().basis() {
        Ok(basis) => basis,
        Err(_) => (-4..=4).map(GenIndex::Int).collect(),
    }
}
