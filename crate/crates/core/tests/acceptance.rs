//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria that cannot be met are listed in `KNOWN_FAILURES` together with
//! the item that fails. The run exits nonzero only on failures outside that
//! list.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use pbwcalc::calculus::{
    calculus, check_pbw_conditions, check_representation, differential, invariants, partials, BasisChange,
    CalculusSpec,
};
use pbwcalc::expr::eval_str;
use pbwcalc::foundations::{Assignment, ParamPoly, Scalar};
use pbwcalc::liealg::{self, GenIndex, Window};
use pbwcalc::matrix::PolyMatrix;
use pbwcalc::rewrite::{confluence_report, Element, Letter};
use pbwcalc::sampling::{self, random_a_table, random_element, seed_from_env, DEFAULT_SEED};
use pbwcalc::solver::{inconsistency_certificate, refute_random, residual_system, CertificateOutcome};

/// `(criterion, failing item)` pairs that are expected and explained in the
/// project notes.
const KNOWN_FAILURES: &[(u32, &str)] = &[(2, "virasoro:mu-central"), (3, "virasoro:mu-central")];

struct Verdict {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, item: impl Into<String>) {
        if !ok {
            self.failures.push(item.into());
        }
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn within(&mut self, started: Instant, limit: Duration, what: &str) {
        let took = started.elapsed();
        self.require(took <= limit, format!("{what} took {took:.2?} > {limit:?}"));
    }
}

fn golden_relations() -> Verdict {
    let mut v = Verdict::new();
    let half = ParamPoly::ratio(1, 2);

    let t = Instant::now();
    let h = unverified("heisenberg:1:IV");
    let (c, p, q) = (b(0), b(1), b(2));
    let pdq = dy_x(&h, q, p).add(&dy(&h, c).scale(&half)).unwrap();
    let qdp = dy_x(&h, p, q).sub(&dy(&h, c).scale(&half)).unwrap();
    v.require(x_dy(&h, p, q) == pdq, "heisenberg p dq");
    v.require(x_dy(&h, q, p) == qdp, "heisenberg q dp");
    v.within(t, Duration::from_secs(1), "heisenberg relations");

    let t = Instant::now();
    let w = unverified("witt:mu");
    for i in -8..=8 {
        for j in -8..=8 {
            let expect = dy_x(&w, n(j), n(i))
                .add(&dy(&w, n(i + j)).scale(&poly(&format!("{j} + mu"))))
                .unwrap();
            v.require(x_dy(&w, n(i), n(j)) == expect, format!("witt ({i}, {j})"));
        }
    }
    v.within(t, Duration::from_secs(1), "witt relations");

    let t = Instant::now();
    let vir = unverified("virasoro:mu-central");
    for a in -8..=8i64 {
        for m in -8..=8i64 {
            let mut expect = dy_x(&vir, n(m), n(a))
                .add(&dy(&vir, n(a + m)).scale(&poly(&format!("{m} + mu"))))
                .unwrap();
            if a + m == 0 {
                let central = ParamPoly::constant(Scalar::ratio(m * m * m - m, 24));
                expect = expect.add(&dy(&vir, GenIndex::Central).scale(&central)).unwrap();
            }
            v.require(x_dy(&vir, n(a), n(m)) == expect, format!("virasoro ({a}, {m})"));
        }
    }
    let dt = pbwcalc::rewrite::Word::new(vec![Letter::y(GenIndex::Central)]);
    let quarter = x_dy(&vir, n(2), n(-2)).coefficient(&dt);
    v.require(quarter == ParamPoly::ratio(-1, 4), format!("virasoro dt coefficient at (2, -2) is {quarter}"));
    v.within(t, Duration::from_secs(1), "virasoro relations");

    let t = Instant::now();
    let ab = unverified("abelian:3:regular");
    for i in 0..3 {
        for j in 0..3 {
            let mut expect = dy_x(&ab, b(j), b(i));
            if i == j {
                expect = expect.add(&dy(&ab, b(j))).unwrap();
            }
            v.require(x_dy(&ab, b(i), b(j)) == expect, format!("abelian ({i}, {j})"));
        }
    }
    v.within(t, Duration::from_secs(1), "abelian relations");
    v
}

fn condition_calculi() -> Vec<(String, Window)> {
    let mut all = consistent_calculi();
    all.push(("virasoro:mu-central".into(), Window::range(-12, 12)));
    all
}

fn condition_verification() -> Verdict {
    let mut v = Verdict::new();
    let t = Instant::now();
    for (id, window) in condition_calculi() {
        let report = check_pbw_conditions(&calculus(&id).unwrap(), &window).unwrap();
        if !report.is_clean() {
            v.note(format!(
                "{id} on {window}: {} linear, {} quadratic failures",
                report.linear.len(),
                report.quadratic.len()
            ));
        }
        v.require(report.is_clean(), id);
    }
    v.within(t, Duration::from_secs(30), "condition checks");
    v
}

fn confluence_matches_conditions() -> Verdict {
    let mut v = Verdict::new();
    let t = Instant::now();
    for (id, window) in condition_calculi() {
        let failures = confluence_report(&calculus(&id).unwrap(), &window).unwrap();
        if let Some(first) = failures.first() {
            v.note(format!("{id}: {} overlaps fail, first at {}", failures.len(), first.word));
        }
        v.require(failures.is_empty(), id);
    }
    let zero = calculus("solvable2:zero").unwrap();
    v.require(confluence_report(&zero, &Window::Full).unwrap().is_empty(), "solvable2:zero overlaps");
    let linear = check_pbw_conditions(&zero, &Window::Full).unwrap().linear;
    let pairs: BTreeSet<(GenIndex, GenIndex)> = linear.iter().map(|f| (f.i, f.j)).collect();
    v.require(
        pairs == BTreeSet::from([(b(0), b(1))]),
        format!("solvable2:zero linear failures at {pairs:?}"),
    );
    let half_c = calculus("sl2:half-c").unwrap();
    v.require(!confluence_report(&half_c, &Window::Full).unwrap().is_empty(), "sl2:half-c overlaps");
    v.within(t, Duration::from_secs(60), "confluence checks");
    v
}

fn differential_properties(seed: u64) -> Verdict {
    let mut v = Verdict::new();
    let t = Instant::now();
    let mut ids = consistent_calculi();
    ids.push(("abelian:3:regular".into(), Window::Full));
    for (id, window) in ids {
        let cal = verified(&id, &window);
        let indices = sample_indices(&cal);
        let mut rng = sampling::rng(seed);
        let elems: Vec<Element> = (0..100)
            .map(|_| random_element(&mut rng, &cal, &indices, 4, 3, true))
            .collect();
        for (k, a) in elems.iter().enumerate() {
            let da = differential(a).unwrap();
            v.require(differential(&da).unwrap().is_zero(), format!("{id}: d^2 on sample {k}"));
            let bb = &elems[(k + 1) % elems.len()];
            let db = differential(bb).unwrap();
            let lhs = differential(&a.multiply(bb).unwrap()).unwrap();
            let mut rhs = Element::zero(&cal);
            for (deg, part) in a.degree_parts() {
                let sign = ParamPoly::int(if deg % 2 == 0 { 1 } else { -1 });
                let term = differential(&part)
                    .unwrap()
                    .multiply(bb)
                    .unwrap()
                    .add(&part.multiply(&db).unwrap().scale(&sign))
                    .unwrap();
                rhs = rhs.add(&term).unwrap();
            }
            v.require(lhs == rhs, format!("{id}: Leibniz on sample {k}"));
        }
    }
    v.within(t, Duration::from_secs(60), "differential properties");
    v
}

/// Normal forms of all commutative monomials of degree at most 3 in `gens`.
fn monomials(cal: &Arc<CalculusSpec>, gens: &[GenIndex]) -> Vec<Element> {
    let mut out = vec![Element::one(cal)];
    let mut frontier: Vec<(usize, Vec<GenIndex>)> = vec![(0, vec![])];
    for _ in 0..3 {
        let mut next = Vec::new();
        for (start, letters) in &frontier {
            for (k, g) in gens.iter().enumerate().skip(*start) {
                let mut l = letters.clone();
                l.push(*g);
                out.push(word(cal, l.iter().map(|i| Letter::x(*i)).collect()));
                next.push((k, l));
            }
        }
        frontier = next;
    }
    out
}

fn operator_of(parts: &BTreeMap<GenIndex, Element>, i: GenIndex, cal: &Arc<CalculusSpec>) -> Element {
    parts.get(&i).cloned().unwrap_or_else(|| Element::zero(cal))
}

fn operator_relations() -> Verdict {
    let mut v = Verdict::new();
    let t = Instant::now();

    for n_pairs in 1..=2usize {
        let id = if n_pairs == 1 {
            "heisenberg:1:IV".to_string()
        } else {
            format!("heisenberg:{n_pairs}:half-c")
        };
        let cal = verified(&id, &Window::Full);
        let gens = cal.algebra().basis().unwrap();
        let half = ParamPoly::ratio(1, 2);
        // basis order: c, p_1, q_1, p_2, q_2, ...
        let partner = |g: usize| -> Option<(usize, ParamPoly)> {
            match g {
                0 => None,
                g if g % 2 == 1 => Some((g + 1, half.clone())),
                g => Some((g - 1, ParamPoly::ratio(-1, 2))),
            }
        };
        for f in monomials(&cal, &gens) {
            let df = partials(&f).unwrap();
            for &g in &gens {
                let xg = Element::x(&cal, g).unwrap();
                let lhs = partials(&xg.multiply(&f).unwrap()).unwrap();
                for &a in &gens {
                    let mut expect = xg.multiply(&operator_of(&df, a, &cal)).unwrap();
                    if a == g {
                        expect = expect.add(&f).unwrap();
                    }
                    let GenIndex::Basis(gi) = g else { unreachable!() };
                    if a == b(0) {
                        if let Some((other, coef)) = partner(gi) {
                            expect = expect.add(&operator_of(&df, b(other), &cal).scale(&coef)).unwrap();
                        }
                    }
                    v.require(operator_of(&lhs, a, &cal) == expect, format!("{id}: d_{a} {g} on {f}"));
                }
            }
        }
    }

    let cal = verified("witt:mu", &Window::range(-20, 20));
    let gens: Vec<GenIndex> = (-4..=4).map(GenIndex::Int).collect();
    for f in monomials(&cal, &gens) {
        let df = partials(&f).unwrap();
        for k in -4..=4i64 {
            let xk = Element::x(&cal, n(k)).unwrap();
            let lhs = partials(&xk.multiply(&f).unwrap()).unwrap();
            let mut ps: BTreeSet<i64> = BTreeSet::from([k]);
            for key in lhs.keys().chain(df.keys()) {
                let GenIndex::Int(q) = *key else { unreachable!() };
                ps.insert(q);
                ps.insert(q + k);
            }
            for p in ps {
                let mut expect = xk.multiply(&operator_of(&df, n(p), &cal)).unwrap();
                if p == k {
                    expect = expect.add(&f).unwrap();
                }
                let shift = operator_of(&df, n(p - k), &cal).scale(&poly(&format!("{} + mu", p - k)));
                expect = expect.add(&shift).unwrap();
                v.require(operator_of(&lhs, n(p), &cal) == expect, format!("witt: d_{p} x^{k} on {f}"));
            }
        }
    }
    v.within(t, Duration::from_secs(60), "operator relations");
    v
}

fn representation_equivalence(seed: u64) -> Verdict {
    let mut v = Verdict::new();
    for g in [liealg::solvable2(), liealg::heisenberg(1).unwrap()] {
        let mut rng = sampling::rng(seed);
        let (mut quad_clean, mut lin_clean) = (0, 0);
        for k in 0..50 {
            let table = random_a_table(&mut rng, &g);
            let pbw = check_pbw_conditions(&table, &Window::Full).unwrap();
            let rep = check_representation(&table, &Window::Full).unwrap();
            v.require(
                pbw.quadratic.is_empty() == rep.representation.is_empty(),
                format!("{} table {k}: quadratic vs representation", g.name()),
            );
            v.require(
                pbw.linear.is_empty() == rep.cocycle.is_empty(),
                format!("{} table {k}: linear vs cocycle", g.name()),
            );
            quad_clean += pbw.quadratic.is_empty() as usize;
            lin_clean += pbw.linear.is_empty() as usize;
        }
        v.note(format!(
            "{}: {quad_clean}/50 satisfy the quadratic condition, {lin_clean}/50 the linear one",
            g.name()
        ));
    }
    v
}

fn change(rows: &[&[&str]]) -> BasisChange {
    BasisChange::new(PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| poly(s)).collect()).collect()).unwrap())
        .unwrap()
}

fn same_table(a: &CalculusSpec, b: &CalculusSpec) -> bool {
    a.table_entries().unwrap() == b.table_entries().unwrap()
}

fn transport(seed: u64) -> Verdict {
    let mut v = Verdict::new();
    let families = solvable_families().into_iter().chain(heisenberg_groups());
    for id in families {
        let cal = calculus(&id).unwrap();
        let mut rng = sampling::rng(seed);
        for k in 0..20 {
            let tau = if id.starts_with("solvable2") {
                sampling::random_solvable2_automorphism(&mut rng)
            } else {
                sampling::random_heisenberg1_automorphism(&mut rng)
            };
            v.require(tau.is_automorphism(cal.algebra()).unwrap(), format!("{id}: sample {k} is not an automorphism"));
            let moved = tau.transform(&cal).unwrap();
            v.require(check_pbw_conditions(&moved, &Window::Full).unwrap().is_clean(), format!("{id}: sample {k}"));
        }
    }

    let a1 = calculus("solvable2:A1").unwrap();
    let to_zero = change(&[&["1", "0"], &["beta", "1"]]).transform(&a1).unwrap();
    v.require(same_table(&to_zero, &calculus("solvable2:i").unwrap()), "A1 to beta = 0");

    let a2 = calculus("solvable2:A2").unwrap();
    let ii = calculus("solvable2:ii").unwrap();
    for beta in [1, 2, -3, 7] {
        let fixed = a2.substitute_values(&Assignment::from([("beta".to_string(), beta.into())])).unwrap();
        let tau = change(&[&["1", "0"], &["0", &beta.to_string()]]);
        v.require(same_table(&tau.transform(&fixed).unwrap(), &ii), format!("A2 to beta = 1 from beta = {beta}"));
    }
    v.note("A2 normalized by tau = diag(1, beta); diag(1, 1/beta) squares beta instead");
    v
}

fn nonexistence() -> Verdict {
    let mut v = Verdict::new();
    let t = Instant::now();
    let g = liealg::sl2();
    let report = refute_random(&g, 1000, 42).unwrap();
    v.require(
        report.violations == 1000,
        format!("refutation: {}/{} samples violated", report.violations, report.samples),
    );
    v.note(format!("refutation: {}/{} samples violated", report.violations, report.samples));
    let system = residual_system(&g).unwrap();
    match inconsistency_certificate(&system, 4, 1_000_000) {
        CertificateOutcome::Certificate(cert) => {
            v.require(cert.is_valid(), "certificate does not replay to 1");
            v.note(format!(
                "certificate: {} residuals, {}-step derivation replays to {}",
                system.len(),
                cert.steps.len(),
                cert.replay()
            ));
        }
        CertificateOutcome::Inconclusive { reason, steps, .. } => {
            v.note(format!("certificate: inconclusive ({reason:?}) after {steps} steps; refutation stands"));
        }
    }
    v.note(format!("took {:.2?}", t.elapsed()));
    v
}

/// Family parameter values where the paper's own case analysis makes two
/// records meet.
const COINCIDENCES: &[(&str, i64)] = &[("i", 2), ("iii", 1), ("iii", -1), ("iii", 3)];

fn classification_separation() -> Verdict {
    let mut v = Verdict::new();
    let names = ["i", "ii", "iii", "iv", "v"];
    for alpha in [0i64, 5, -7] {
        let assignment = Assignment::from([("alpha".to_string(), alpha.into())]);
        let records: Vec<(&str, (usize, ParamPoly))> = names
            .iter()
            .filter(|f| !COINCIDENCES.contains(&(**f, alpha)))
            .map(|f| {
                let cal = calculus(&format!("solvable2:{f}")).unwrap().substitute_values(&assignment).unwrap();
                let inv = invariants(&cal).unwrap();
                (*f, (inv.ranks[1], inv.traces[0].clone()))
            })
            .collect();
        for (a, ra) in &records {
            for (bname, rb) in &records {
                if a < bname {
                    v.require(ra != rb, format!("{a} and {bname} share {ra:?} at alpha = {alpha}"));
                }
            }
        }
        let lookup = |f: &str| records.iter().find(|(n, _)| *n == f).map(|(_, r)| r.clone());
        v.require(lookup("iv") == Some((1, ParamPoly::int(-2))), "family iv record");
        v.require(lookup("v") == Some((1, ParamPoly::int(6))), "family v record");
    }
    v
}

fn run_cli(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_pbwcalc")).args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap_or(-1))
}

fn parser_round_trip(seed: u64) -> Verdict {
    let mut v = Verdict::new();
    let ids = ["heisenberg:1:IV", "sl2:half-c", "solvable2:iii", "witt:mu", "virasoro:mu-central"];
    let mut rng = sampling::rng(seed);
    for k in 0..200 {
        let cal = unverified(ids[k % ids.len()]);
        let e = random_element(&mut rng, &cal, &sample_indices(&cal), 4, 4, true);
        let text = e.to_string();
        match eval_str(&text, &cal) {
            Ok(back) => v.require(back == e, format!("case {k}: {text}")),
            Err(err) => v.require(false, format!("case {k}: {text}: {err}")),
        }
    }

    let golden_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    let cases: [(&[&str], &str, i32); 3] = [
        (&["nf", "-a", "heisenberg:1", "-c", "IV", "p1*d(q1)"], "nf_heisenberg_iv.txt", 0),
        (&["check", "-c", "witt:mu", "--window", "-20..20"], "check_witt_mu.txt", 0),
        (&["check", "-c", "sl2:half-c"], "check_sl2_half_c.txt", 1),
    ];
    for (args, file, code) in cases {
        let expected = std::fs::read_to_string(format!("{golden_dir}/{file}")).unwrap();
        let (stdout, status) = run_cli(args);
        v.require(stdout == expected, format!("{file}: output differs"));
        v.require(status == code, format!("{file}: exit {status}, expected {code}"));
    }
    v
}

type Check = (u32, &'static str, Box<dyn Fn() -> Verdict>);

fn main() {
    let seed = seed_from_env(DEFAULT_SEED);
    let criteria: Vec<Check> = vec![
        (1, "golden relations", Box::new(golden_relations)),
        (2, "condition verification", Box::new(condition_verification)),
        (3, "confluence matches the conditions", Box::new(confluence_matches_conditions)),
        (4, "d^2 = 0 and graded Leibniz", Box::new(move || differential_properties(seed))),
        (5, "operator relations", Box::new(operator_relations)),
        (6, "representation equivalence", Box::new(move || representation_equivalence(seed))),
        (7, "transport under automorphisms", Box::new(move || transport(seed))),
        (8, "sl2 nonexistence", Box::new(nonexistence)),
        (9, "classification separation", Box::new(classification_separation)),
        (10, "parser round trip and CLI goldens", Box::new(move || parser_round_trip(seed))),
    ];
    println!("acceptance run, seed {seed}");
    let mut unexpected = 0;
    let mut passed = 0;
    for (id, title, run) in criteria {
        let t = Instant::now();
        let verdict = run();
        let took = t.elapsed();
        let documented: BTreeSet<&str> = KNOWN_FAILURES
            .iter()
            .filter(|(c, _)| *c == id)
            .map(|(_, item)| *item)
            .collect();
        let status = if verdict.failures.is_empty() {
            passed += 1;
            "PASS"
        } else {
            "FAIL"
        };
        let stray: Vec<&String> = verdict
            .failures
            .iter()
            .filter(|f| !documented.contains(f.as_str()))
            .collect();
        let tag = if status == "FAIL" && stray.is_empty() {
            " (known)"
        } else {
            ""
        };
        println!("criterion {id:>2}: {status}{tag}  {title}  [{took:.2?}]");
        for note in &verdict.notes {
            println!("    {note}");
        }
        for f in verdict.failures.iter().take(5) {
            println!("    failed: {f}");
        }
        unexpected += stray.len();
    }
    println!("{passed}/10 criteria pass; {unexpected} unexpected failures");
    if unexpected > 0 {
        std::process::exit(1);
    }
}
