use std::sync::Arc;

use super::*;
use crate::calculus::{calculus, CalculusSpec};
use crate::foundations::ParamPoly;
use crate::liealg::{GenIndex, Window};

fn cal(id: &str) -> Arc<CalculusSpec> {
    Arc::new(calculus(id).unwrap())
}

fn b(k: usize) -> GenIndex {
    GenIndex::Basis(k)
}

fn nf(c: &Arc<CalculusSpec>, letters: Vec<Letter>) -> Element {
    normal_form(&RawElement::word(letters), c)
}

#[test]
fn heisenberg_reorders_and_commutes_past_forms() {
    let c = cal("heisenberg:1:IV");
    let (cc, p, q) = (b(0), b(1), b(2));
    let e = nf(&c, vec![Letter::x(q), Letter::x(p)]);
    assert_eq!(e.to_string(), "x[1]*x[2] - x[0]");
    assert_eq!(e.coefficient(&Word::new(vec![Letter::x(cc)])), ParamPoly::int(-1));
    let e = nf(&c, vec![Letter::x(p), Letter::y(q)]);
    assert_eq!(e.to_string(), "y[2]*x[1] + 1/2*y[0]");
    assert!(nf(&c, vec![Letter::y(p), Letter::y(p)]).is_zero());
    assert_eq!(nf(&c, vec![Letter::y(q), Letter::y(p)]).to_string(), "-y[1]*y[2]");
}

#[test]
fn witt_and_virasoro_examples() {
    let w = cal("witt:mu");
    let e = nf(&w, vec![Letter::x(GenIndex::Int(1)), Letter::y(GenIndex::Int(2))]);
    assert_eq!(e.to_string(), "y[2]*x[1] + (mu + 2)*y[3]");

    let v = cal("virasoro:mu-central");
    let e = nf(&v, vec![Letter::x(GenIndex::Int(2)), Letter::y(GenIndex::Int(-2))]);
    assert_eq!(e.to_string(), "y[-2]*x[2] + (mu - 2)*y[0] - 1/4*y[t]");
    // [x^2, x^{-2}] = -4 x^0 + ((-2)^3 + 2)/12 t
    let e = nf(&v, vec![Letter::x(GenIndex::Int(2)), Letter::x(GenIndex::Int(-2))]);
    assert_eq!(e.to_string(), "x[-2]*x[2] - 4*x[0] - 1/2*x[t]");
}

#[test]
fn multiply_examples() {
    let c = cal("heisenberg:1:IV");
    let p = Element::x(&c, b(1)).unwrap();
    let dq = Element::y(&c, b(2)).unwrap();
    assert_eq!(p.multiply(&dq).unwrap().to_string(), "y[2]*x[1] + 1/2*y[0]");
    let one = Element::one(&c);
    assert_eq!(one.multiply(&p).unwrap(), p);
    assert!(Element::zero(&c).multiply(&p).unwrap().is_zero());
    let other = cal("heisenberg:1:IV");
    assert!(matches!(p.multiply(&Element::x(&other, b(1)).unwrap()), Err(crate::Error::CalculusMismatch)));
}

fn all_words(idx: &[GenIndex], max_len: usize) -> Vec<Word> {
    let mut letters = Vec::new();
    for &i in idx {
        letters.push(Letter::x(i));
        letters.push(Letter::y(i));
    }
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                next.push(w.concat(&Word::new(vec![l])));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn every_step_lowers_the_measure() {
    for (id, idx) in [
        ("heisenberg:1:I1", vec![b(0), b(1), b(2)]),
        ("witt:mu", (-1..=1).map(GenIndex::Int).collect()),
    ] {
        let c = cal(id);
        let r = Reducer::new(&c);
        for w in all_words(&idx, 3) {
            for p in 0..w.len().saturating_sub(1) {
                if !is_redex(w.letters()[p], w.letters()[p + 1]) {
                    continue;
                }
                for (next, _) in r.step(&w, p) {
                    assert!(next.measure() < w.measure(), "{w} -> {next}");
                }
            }
        }
    }
}

#[test]
fn strategies_agree_and_normal_form_is_idempotent() {
    for id in ["heisenberg:1:IIIb", "solvable2:v", "sl2:zero"] {
        let c = cal(id);
        let n = c.algebra().dimension().unwrap();
        let idx: Vec<_> = (0..n).map(b).collect();
        for w in all_words(&idx, 3) {
            let raw = RawElement::word(w.letters().to_vec());
            let left = normal_form_with(&raw, &c, Strategy::Leftmost);
            let right = normal_form_with(&raw, &c, Strategy::Rightmost);
            assert_eq!(left, right, "{id}: {w}");
            assert!(left.terms().keys().all(Word::is_normal));
            assert_eq!(left.renormalize(), left);
        }
    }
}

#[test]
fn multiplication_is_associative() {
    let c = cal("heisenberg:1:I0");
    let idx: Vec<_> = (0..3).map(b).collect();
    let words = all_words(&idx, 2);
    let elems: Vec<Element> = words
        .iter()
        .step_by(3)
        .map(|w| normal_form(&RawElement::word(w.letters().to_vec()), &c))
        .collect();
    for a in elems.iter().take(8) {
        for bb in elems.iter().skip(3).take(8) {
            for cc in elems.iter().skip(7).take(6) {
                let l = a.multiply(bb).unwrap().multiply(cc).unwrap();
                let r = a.multiply(&bb.multiply(cc).unwrap()).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn confluence_matches_conditions() {
    let good = calculus("heisenberg:1:IV").unwrap();
    assert!(confluence_report(&good, &Window::Full).unwrap().is_empty());
    let bad = calculus("sl2:half-c").unwrap();
    let failures = confluence_report(&bad, &Window::Full).unwrap();
    assert!(!failures.is_empty());
    assert!(failures.iter().all(|f| f.case == OverlapCase::Xxy));
    let witt = calculus("witt:mu").unwrap();
    assert!(confluence_report(&witt, &Window::range(-4, 4)).unwrap().is_empty());
}
