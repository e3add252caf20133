mod common;

use std::sync::Arc;

use common::*;
use pbwcalc::calculus::{
    calculus, check_pbw_conditions, check_pbw_conditions_with, check_representation, differential,
    tensor_differential, CalculusSpec,
};
use pbwcalc::exec::Exec;
use pbwcalc::expr::eval_str;
use pbwcalc::foundations::ParamPoly;
use pbwcalc::liealg::{self, Window};
use pbwcalc::rewrite::{confluence_report_with, normal_form, normal_form_with, Element, Strategy};
use pbwcalc::sampling::{self, random_a_table, random_element, random_raw};
use pbwcalc::solver::{inconsistency_certificate, CertificateOutcome};
use proptest::prelude::*;

const CALCULI: &[(&str, Option<(i64, i64)>)] = &[
    ("solvable2:iii", None),
    ("solvable2:v", None),
    ("heisenberg:1:IV", None),
    ("heisenberg:1:IIIb", None),
    ("heisenberg:2:half-c", None),
    ("gl:2:leftmult", None),
    ("abelian:3:regular", None),
    ("witt:mu", Some((-12, 12))),
];

fn pick(k: usize) -> Arc<CalculusSpec> {
    let (id, window) = CALCULI[k % CALCULI.len()];
    let w = window.map_or(Window::Full, |(lo, hi)| Window::range(lo, hi));
    verified(id, &w)
}

fn sample(cal: &Arc<CalculusSpec>, seed: u64, with_forms: bool) -> Element {
    let mut rng = sampling::rng(seed);
    random_element(&mut rng, cal, &sample_indices(cal), 4, 3, with_forms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(k in 0usize..64, seed in any::<u64>()) {
        let cal = pick(k);
        let e = sample(&cal, seed, true);
        let de = differential(&e).unwrap();
        prop_assert!(differential(&de).unwrap().is_zero());
    }

    #[test]
    fn graded_leibniz(k in 0usize..64, s1 in any::<u64>(), s2 in any::<u64>()) {
        let cal = pick(k);
        let (a, bb) = (sample(&cal, s1, true), sample(&cal, s2, true));
        let lhs = differential(&a.multiply(&bb).unwrap()).unwrap();
        let mut rhs = Element::zero(&cal);
        for (deg, part) in a.degree_parts() {
            let sign = ParamPoly::int(if deg % 2 == 0 { 1 } else { -1 });
            let first = differential(&part).unwrap().multiply(&bb).unwrap();
            let second = part.multiply(&differential(&bb).unwrap()).unwrap().scale(&sign);
            rhs = rhs.add(&first).unwrap().add(&second).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_commutes_with_normal_form(k in 0usize..64, seed in any::<u64>()) {
        let cal = pick(k);
        let mut rng = sampling::rng(seed);
        let raw = random_raw(&mut rng, &sample_indices(&cal), 4, 3, true);
        let via_tensor = normal_form(&tensor_differential(&raw), &cal);
        let via_normal = differential(&normal_form(&raw, &cal)).unwrap();
        prop_assert_eq!(via_tensor, via_normal);
    }

    #[test]
    fn strategies_agree(k in 0usize..64, seed in any::<u64>()) {
        let cal = pick(k);
        let mut rng = sampling::rng(seed);
        let raw = random_raw(&mut rng, &sample_indices(&cal), 5, 3, true);
        let left = normal_form_with(&raw, &cal, Strategy::Leftmost);
        let right = normal_form_with(&raw, &cal, Strategy::Rightmost);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_is_associative(k in 0usize..64, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let cal = pick(k);
        let (a, bb, c) = (sample(&cal, s1, true), sample(&cal, s2, true), sample(&cal, s3, true));
        let left = a.multiply(&bb).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&bb.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn printed_elements_parse_back(k in 0usize..64, seed in any::<u64>()) {
        let cal = pick(k);
        let e = sample(&cal, seed, true);
        prop_assert_eq!(eval_str(&e.to_string(), &cal).unwrap(), e);
    }

    #[test]
    fn conditions_match_representation(solvable in any::<bool>(), seed in any::<u64>()) {
        let g = if solvable { liealg::solvable2() } else { liealg::heisenberg(1).unwrap() };
        let table = random_a_table(&mut sampling::rng(seed), &g);
        let pbw = check_pbw_conditions(&table, &Window::Full).unwrap();
        let rep = check_representation(&table, &Window::Full).unwrap();
        prop_assert_eq!(pbw.quadratic.is_empty(), rep.representation.is_empty());
        prop_assert_eq!(pbw.linear.is_empty(), rep.cocycle.is_empty());
        let overlaps = confluence_report_with(&table, &Window::Full, Exec::Sequential).unwrap();
        prop_assert_eq!(pbw.quadratic.is_empty(), overlaps.is_empty());
    }

    #[test]
    fn automorphisms_transport_calculi(family in 0usize..12, seed in any::<u64>()) {
        let ids: Vec<String> = solvable_families().into_iter().chain(heisenberg_groups()).collect();
        let id = &ids[family % ids.len()];
        let cal = calculus(id).unwrap();
        let mut rng = sampling::rng(seed);
        let tau = if id.starts_with("solvable2") {
            sampling::random_solvable2_automorphism(&mut rng)
        } else {
            sampling::random_heisenberg1_automorphism(&mut rng)
        };
        prop_assert!(tau.is_automorphism(cal.algebra()).unwrap());
        let moved = tau.transform(&cal).unwrap();
        prop_assert!(check_pbw_conditions(&moved, &Window::Full).unwrap().is_clean());
        let back = tau.inverse().transform(&moved).unwrap();
        prop_assert_eq!(back.table_entries().unwrap(), cal.table_entries().unwrap());
    }

    #[test]
    fn sequential_and_parallel_reports_agree(seed in any::<u64>()) {
        let table = random_a_table(&mut sampling::rng(seed), &liealg::sl2());
        let seq = check_pbw_conditions_with(&table, &Window::Full, Exec::Sequential).unwrap();
        let par = check_pbw_conditions_with(&table, &Window::Full, Exec::Parallel).unwrap();
        prop_assert_eq!(format!("{seq:?}"), format!("{par:?}"));
    }
}

fn linear(var: &str, value: i64) -> ParamPoly {
    &ParamPoly::var(var) - &ParamPoly::int(value)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Pinning `x` and `y` and then asking `f(x, y)` to differ from its value
    /// at the pin has no solution; every certificate must replay.
    #[test]
    fn certificates_replay(a in -5i64..5, bb in -5i64..5, c1 in -3i64..3, c2 in -3i64..3) {
        let (x, y) = (ParamPoly::var("x"), ParamPoly::var("y"));
        let f = &(&(&(&x * &x) * &y).scale(&c1.into()) + &(&x * &y).scale(&c2.into())) + &(&y * &y);
        let at = c1 * a * a * bb + c2 * a * bb + bb * bb;
        let system = vec![linear("x", a), linear("y", bb), &f - &ParamPoly::int(at + 1)];
        let out = inconsistency_certificate(&system, 4, 10_000);
        let cert = out.certificate().expect("pinned system is inconsistent");
        prop_assert!(cert.is_valid());
    }

    /// A system with a rational point never gets a certificate.
    #[test]
    fn consistent_systems_are_never_certified(a in -5i64..5, bb in -5i64..5, c in -3i64..3) {
        let (x, y) = (ParamPoly::var("x"), ParamPoly::var("y"));
        let f = &(&x * &y) + &(&y * &y).scale(&c.into());
        let at = a * bb + c * bb * bb;
        let system = vec![linear("x", a), &f - &ParamPoly::int(at), &(&x * &x) - &ParamPoly::int(a * a)];
        let out = inconsistency_certificate(&system, 4, 10_000);
        let completed = matches!(out, CertificateOutcome::Inconclusive { .. });
        prop_assert!(completed);
    }
}
