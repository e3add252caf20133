//! Degree-bounded Buchberger completion used to prove that a polynomial
//! system has no common zero by deriving `1` from it.
//!
//! The search runs on dense exponent vectors. Every basis element records how
//! it was derived, and the certificate is that record restricted to the
//! elements the constant depends on. Expanding it into one cofactor per input
//! is possible in principle but the cofactor degrees grow with the depth of
//! the derivation.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::foundations::{Monomial, ParamPoly, Scalar};

/// Where a derived polynomial starts from.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepBase {
    Input(usize),
    /// `ma · step[a] − mb · step[b]`.
    Pair { a: usize, ma: Monomial, b: usize, mb: Monomial },
}

/// Subtract `coeff · monomial · step[by]`.
#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub by: usize,
    pub monomial: Monomial,
    pub coeff: Scalar,
}

/// `scale · (base − Σ reductions)`; every index points at an earlier step.
#[derive(Clone, Debug, Serialize)]
pub struct DerivationStep {
    pub base: StepBase,
    pub reductions: Vec<Reduction>,
    pub scale: Scalar,
}

/// A straight-line derivation whose last step evaluates to `1`.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub inputs: Vec<ParamPoly>,
    pub steps: Vec<DerivationStep>,
}

impl Certificate {
    /// The value of every step, recomputed from the inputs.
    pub fn values(&self) -> Vec<ParamPoly> {
        let mut values: Vec<ParamPoly> = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            let mut v = match &step.base {
                StepBase::Input(i) => self.inputs[*i].clone(),
                StepBase::Pair { a, ma, b, mb } => {
                    let mut v = values[*a].mul_monomial(ma, &Scalar::one());
                    v.add_assign_ref(&values[*b].mul_monomial(mb, &Scalar::from_int(-1)));
                    v
                }
            };
            for r in &step.reductions {
                v.add_assign_ref(&values[r.by].mul_monomial(&r.monomial, &-&r.coeff));
            }
            values.push(v.scale(&step.scale));
        }
        values
    }

    pub fn replay(&self) -> ParamPoly {
        self.values().pop().unwrap_or_else(ParamPoly::zero)
    }

    pub fn is_valid(&self) -> bool {
        self.replay().is_one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InconclusiveReason {
    /// The step budget ran out.
    BudgetExhausted,
    /// Every pair within the degree bound was processed without reaching a
    /// constant. Says nothing about consistency.
    Completed,
}

#[derive(Clone, Debug, Serialize)]
pub enum CertificateOutcome {
    Certificate(Certificate),
    Inconclusive {
        reason: InconclusiveReason,
        steps: u64,
        basis_size: usize,
        skipped_pairs: usize,
    },
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertificateOutcome::Certificate(c) => Some(c),
            CertificateOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Coefficient field of the search.
trait Coeff: Clone {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Coeff for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip().expect("nonzero pivot")
    }
}

const PRIME: u64 = 2_147_483_647;

/// Residues modulo `PRIME`; used to locate a derivation cheaply before it is
/// replayed over the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fp(u64);

impl Fp {
    fn from_scalar(s: &Scalar) -> Option<Fp> {
        let p = BigInt::from(PRIME);
        let residue = |n: &BigInt| n.mod_floor(&p).to_u64().expect("reduced residue");
        let den = Fp(residue(s.denom()));
        if den.is_zero() {
            return None;
        }
        Some(Fp(residue(s.numer())).mul(&den.inv()))
    }
}

impl Coeff for Fp {
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % PRIME)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(self.0 * other.0 % PRIME)
    }
    fn neg(&self) -> Self {
        Fp((PRIME - self.0) % PRIME)
    }
    fn inv(&self) -> Self {
        let (mut base, mut exp, mut acc) = (self.0, PRIME - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % PRIME;
            }
            base = base * base % PRIME;
            exp >>= 1;
        }
        Fp(acc)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Mono {
    deg: u32,
    exps: Box<[u16]>,
}

impl Mono {
    fn mul(&self, other: &Mono) -> Mono {
        Mono {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`.
    fn quotient_of(&self, other: &Mono) -> Mono {
        Mono {
            deg: other.deg - self.deg,
            exps: other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect(),
        }
    }

    fn lcm(&self, other: &Mono) -> Mono {
        let exps: Box<[u16]> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        Mono {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    fn is_coprime(&self, other: &Mono) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Mono {
    /// Graded reverse lexicographic; variable 0 is the largest.
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms sorted ascending; the leading term is last.
#[derive(Clone, Debug)]
struct Poly<C>(Vec<(Mono, C)>);

impl<C: Coeff> Poly<C> {
    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn leading(&self) -> Option<&(Mono, C)> {
        self.0.last()
    }

    fn coefficient(&self, m: &Mono) -> Option<&C> {
        self.0.binary_search_by(|(t, _)| t.cmp(m)).ok().map(|i| &self.0[i].1)
    }

    /// `self − c · m · g`.
    fn sub_mul(&mut self, c: &C, m: &Mono, g: &Poly<C>) {
        let neg = c.neg();
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let mut mine = std::mem::take(&mut self.0).into_iter().peekable();
        let mut theirs = g.0.iter().map(|(gm, gc)| (gm.mul(m), neg.mul(gc))).peekable();
        loop {
            let ord = match (mine.peek(), theirs.peek()) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(mine.next().unwrap()),
                Ordering::Greater => out.push(theirs.next().unwrap()),
                Ordering::Equal => {
                    let (m1, c1) = mine.next().unwrap();
                    let (_, c2) = theirs.next().unwrap();
                    let s = c1.add(&c2);
                    if !s.is_zero() {
                        out.push((m1, s));
                    }
                }
            }
        }
        self.0 = out;
    }

    fn scale(&mut self, c: &C) {
        for (_, v) in &mut self.0 {
            *v = v.mul(c);
        }
    }

    fn s_poly(ma: &Mono, ga: &Poly<C>, mb: &Mono, gb: &Poly<C>) -> Poly<C> {
        let mut s = Poly::zero();
        s.sub_mul(&C::one().neg(), ma, ga);
        s.sub_mul(&C::one(), mb, gb);
        s
    }
}

#[derive(Clone)]
enum Base {
    Input(usize),
    /// `ma · g[a] − mb · g[b]`.
    Pair { a: usize, ma: Mono, b: usize, mb: Mono },
}

/// `value = scale · (base − Σ c · m · g[idx])`.
#[derive(Clone)]
struct Derivation<C> {
    base: Base,
    steps: Vec<(usize, Mono, C)>,
    scale: C,
}

struct BasisElem<C> {
    poly: Poly<C>,
    lm: Mono,
    how: Derivation<C>,
}

struct Ring {
    vars: Vec<String>,
}

impl Ring {
    fn convert(&self, p: &ParamPoly) -> Poly<Scalar> {
        let mut terms: Vec<(Mono, Scalar)> = p
            .terms()
            .map(|(m, c)| {
                let mut exps = vec![0u16; self.vars.len()];
                for (name, e) in m.powers() {
                    let v = self.vars.binary_search_by(|x| x.as_str().cmp(name)).expect("known variable");
                    exps[v] = e as u16;
                }
                (
                    Mono {
                        deg: m.degree(),
                        exps: exps.into_boxed_slice(),
                    },
                    c.clone(),
                )
            })
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly(terms)
    }

    fn monomial(&self, m: &Mono) -> Monomial {
        let powers = self
            .vars
            .iter()
            .zip(m.exps.iter())
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| (v.as_str(), e as u32));
        Monomial::from_powers(powers)
    }
}

#[derive(PartialEq, Eq)]
struct PairKey {
    lcm: Mono,
    a: usize,
    b: usize,
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lcm.cmp(&other.lcm).then_with(|| (self.a, self.b).cmp(&(other.a, other.b)))
    }
}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Search<C> {
    basis: Vec<BasisElem<C>>,
    queue: BinaryHeap<Reverse<PairKey>>,
    pending: HashSet<(usize, usize)>,
    steps: u64,
    budget: u64,
    degree_bound: u32,
    skipped: usize,
}

enum Reduced<C> {
    Zero,
    Kept(Poly<C>, Vec<(usize, Mono, C)>),
    OutOfBudget,
}

enum Run {
    /// Index of a basis element with constant leading monomial.
    Unit(usize),
    Stopped(InconclusiveReason),
}

impl<C: Coeff> Search<C> {
    fn new(degree_bound: u32, budget: u64) -> Self {
        Search {
            basis: Vec::new(),
            queue: BinaryHeap::new(),
            pending: HashSet::new(),
            steps: 0,
            budget,
            degree_bound,
            skipped: 0,
        }
    }

    fn charge(&mut self) -> bool {
        self.steps += 1;
        self.steps <= self.budget
    }

    /// Full reduction modulo the current basis.
    fn reduce(&mut self, mut h: Poly<C>) -> Reduced<C> {
        let mut rest: Vec<(Mono, C)> = Vec::new();
        let mut log = Vec::new();
        while let Some((m, c)) = h.0.last().cloned() {
            match self.basis.iter().position(|g| g.lm.divides(&m)) {
                Some(k) => {
                    if !self.charge() {
                        return Reduced::OutOfBudget;
                    }
                    let q = self.basis[k].lm.quotient_of(&m);
                    h.sub_mul(&c, &q, &self.basis[k].poly);
                    log.push((k, q, c));
                }
                None => {
                    h.0.pop();
                    rest.push((m, c));
                }
            }
        }
        if rest.is_empty() {
            return Reduced::Zero;
        }
        rest.reverse();
        Reduced::Kept(Poly(rest), log)
    }

    fn add(&mut self, mut poly: Poly<C>, base: Base, steps: Vec<(usize, Mono, C)>) -> usize {
        let lm = poly.leading().expect("nonzero").0.clone();
        let scale = poly.leading().expect("nonzero").1.inv();
        poly.scale(&scale);
        let new = self.basis.len();
        for (old, g) in self.basis.iter().enumerate() {
            if g.lm.is_coprime(&lm) {
                continue;
            }
            let l = g.lm.lcm(&lm);
            if l.deg > self.degree_bound {
                self.skipped += 1;
                continue;
            }
            self.pending.insert((old, new));
            self.queue.push(Reverse(PairKey { lcm: l, a: old, b: new }));
        }
        self.basis.push(BasisElem {
            poly,
            lm,
            how: Derivation { base, steps, scale },
        });
        new
    }

    /// Buchberger's chain criterion: some `g_k` with leading monomial dividing
    /// the lcm, whose pairs with both ends are already settled.
    fn chain_redundant(&self, a: usize, b: usize, lcm: &Mono) -> bool {
        let key = |x: usize, y: usize| (x.min(y), x.max(y));
        (0..self.basis.len()).any(|k| {
            k != a
                && k != b
                && self.basis[k].lm.divides(lcm)
                && !self.pending.contains(&key(a, k))
                && !self.pending.contains(&key(b, k))
        })
    }

    fn absorb(&mut self, reduced: Reduced<C>, base: Base) -> Option<Run> {
        match reduced {
            Reduced::Zero => None,
            Reduced::OutOfBudget => Some(Run::Stopped(InconclusiveReason::BudgetExhausted)),
            Reduced::Kept(poly, log) => {
                let k = self.add(poly, base, log);
                (self.basis[k].lm.deg == 0).then_some(Run::Unit(k))
            }
        }
    }

    fn run(&mut self, inputs: Vec<Poly<C>>) -> Run {
        for (i, p) in inputs.into_iter().enumerate() {
            let reduced = self.reduce(p);
            if let Some(stop) = self.absorb(reduced, Base::Input(i)) {
                return stop;
            }
        }
        while let Some(Reverse(PairKey { lcm, a, b })) = self.queue.pop() {
            self.pending.remove(&(a, b));
            if self.chain_redundant(a, b, &lcm) {
                continue;
            }
            if !self.charge() {
                return Run::Stopped(InconclusiveReason::BudgetExhausted);
            }
            let ma = self.basis[a].lm.quotient_of(&lcm);
            let mb = self.basis[b].lm.quotient_of(&lcm);
            let s = Poly::s_poly(&ma, &self.basis[a].poly, &mb, &self.basis[b].poly);
            let reduced = self.reduce(s);
            if let Some(stop) = self.absorb(reduced, Base::Pair { a, ma, b, mb }) {
                return stop;
            }
        }
        Run::Stopped(InconclusiveReason::Completed)
    }

    /// Basis elements that `target` was derived from, itself included.
    fn ancestry(&self, target: usize) -> BTreeSet<usize> {
        let mut needed = BTreeSet::new();
        let mut stack = vec![target];
        while let Some(k) = stack.pop() {
            if !needed.insert(k) {
                continue;
            }
            let how = &self.basis[k].how;
            if let Base::Pair { a, b, .. } = how.base {
                stack.push(a);
                stack.push(b);
            }
            stack.extend(how.steps.iter().map(|(i, _, _)| *i));
        }
        needed
    }
}

/// Redoes the derivation of the elements in `needed` over the rationals,
/// recomputing every reduction coefficient. `None` if the residue run took a
/// path the rationals do not follow.
fn lift(modular: &Search<Fp>, needed: &BTreeSet<usize>, inputs: &[Poly<Scalar>]) -> Option<Vec<Option<BasisElem<Scalar>>>> {
    let mut lifted: Vec<Option<BasisElem<Scalar>>> = (0..modular.basis.len()).map(|_| None).collect();
    for &k in needed {
        let source = &modular.basis[k];
        let mut h = match &source.how.base {
            Base::Input(i) => inputs[*i].clone(),
            Base::Pair { a, ma, b, mb } => {
                let (ga, gb) = (&lifted[*a].as_ref()?.poly, &lifted[*b].as_ref()?.poly);
                Poly::s_poly(ma, ga, mb, gb)
            }
        };
        let mut steps = Vec::with_capacity(source.how.steps.len());
        for (idx, m, _) in &source.how.steps {
            let g = lifted[*idx].as_ref()?;
            let c = h.coefficient(&m.mul(&g.lm))?.clone();
            h.sub_mul(&c, m, &g.poly);
            steps.push((*idx, m.clone(), c));
        }
        let (lm, lc) = h.leading()?.clone();
        if lm != source.lm {
            return None;
        }
        let scale = lc.inv();
        h.scale(&scale);
        lifted[k] = Some(BasisElem {
            poly: h,
            lm,
            how: Derivation {
                base: source.how.base.clone(),
                steps,
                scale,
            },
        });
    }
    Some(lifted)
}

/// Renumbers the elements in `needed` consecutively and converts them to the
/// public derivation format.
fn export(ring: &Ring, basis: &[Option<BasisElem<Scalar>>], polys: &[ParamPoly]) -> Certificate {
    let mut renumber = vec![usize::MAX; basis.len()];
    let mut steps = Vec::new();
    let mono = |m: &Mono| ring.monomial(m);
    for (k, elem) in basis.iter().enumerate() {
        let Some(elem) = elem else { continue };
        let how = &elem.how;
        let base = match &how.base {
            Base::Input(i) => StepBase::Input(*i),
            Base::Pair { a, ma, b, mb } => StepBase::Pair {
                a: renumber[*a],
                ma: mono(ma),
                b: renumber[*b],
                mb: mono(mb),
            },
        };
        let reductions = how
            .steps
            .iter()
            .map(|(by, m, c)| Reduction {
                by: renumber[*by],
                monomial: mono(m),
                coeff: c.clone(),
            })
            .collect();
        renumber[k] = steps.len();
        steps.push(DerivationStep {
            base,
            reductions,
            scale: how.scale.clone(),
        });
    }
    Certificate {
        inputs: polys.to_vec(),
        steps,
    }
}

/// Tries to write `1` as a polynomial combination of `polys` by critical
/// pair completion in grevlex order, lowest-degree pair first. Pairs whose
/// lcm exceeds `degree_bound` are skipped; each reduction step or
/// S-polynomial costs one step of `step_budget`. Never claims consistency.
///
/// The completion runs on residues modulo a large prime. A derivation found
/// there is replayed over the rationals, and only a replay that yields `1`
/// exactly becomes a certificate; otherwise the search is repeated over the
/// rationals.
pub fn inconsistency_certificate(polys: &[ParamPoly], degree_bound: u32, step_budget: u64) -> CertificateOutcome {
    let vars: BTreeSet<String> = polys.iter().flat_map(|p| p.parameters()).collect();
    let ring = Ring {
        vars: vars.into_iter().collect(),
    };
    let inputs: Vec<Poly<Scalar>> = polys.iter().map(|p| ring.convert(p)).collect();
    let certify = |basis: &[Option<BasisElem<Scalar>>]| {
        let cert = export(&ring, basis, polys);
        cert.is_valid().then_some(cert)
    };
    let inconclusive = |reason, steps, basis_size, skipped_pairs| CertificateOutcome::Inconclusive {
        reason,
        steps,
        basis_size,
        skipped_pairs,
    };

    let residues: Option<Vec<Poly<Fp>>> = inputs
        .iter()
        .map(|p| {
            let terms = p.0.iter().map(|(m, c)| Some((m.clone(), Fp::from_scalar(c)?)));
            let terms: Option<Vec<_>> = terms.collect();
            Some(Poly(terms?.into_iter().filter(|(_, c)| !c.is_zero()).collect()))
        })
        .collect();
    if let Some(residues) = residues {
        let mut modular = Search::<Fp>::new(degree_bound, step_budget);
        match modular.run(residues) {
            Run::Stopped(reason) => {
                return inconclusive(reason, modular.steps, modular.basis.len(), modular.skipped);
            }
            Run::Unit(k) => {
                let needed = modular.ancestry(k);
                if let Some(cert) = lift(&modular, &needed, &inputs).and_then(|basis| certify(&basis)) {
                    return CertificateOutcome::Certificate(cert);
                }
            }
        }
    }

    let mut exact = Search::<Scalar>::new(degree_bound, step_budget);
    match exact.run(inputs) {
        Run::Stopped(reason) => inconclusive(reason, exact.steps, exact.basis.len(), exact.skipped),
        Run::Unit(k) => {
            let needed = exact.ancestry(k);
            let basis: Vec<Option<BasisElem<Scalar>>> = std::mem::take(&mut exact.basis)
                .into_iter()
                .enumerate()
                .map(|(i, e)| needed.contains(&i).then_some(e))
                .collect();
            CertificateOutcome::Certificate(certify(&basis).expect("exact derivation replays"))
        }
    }
}
