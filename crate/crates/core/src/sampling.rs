//! Seeded random inputs for property checks and refutation runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::{BasisChange, CalculusSpec};
use crate::foundations::{ParamPoly, Scalar};
use crate::liealg::{GenIndex, LieAlgebra, SparseVec};
use crate::matrix::PolyMatrix;
use crate::rewrite::{normal_form, Element, Letter, RawElement, Word};
use std::sync::Arc;

pub const DEFAULT_SEED: u64 = 42;

/// Name of the environment variable that overrides default seeds.
pub const SEED_VAR: &str = "PBWCALC_SEED";

pub type SampleRng = ChaCha8Rng;

/// `PBWCALC_SEED` when set to an integer, otherwise `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An independent generator for sample `index` of a run seeded with `seed`,
/// so parallel runs draw the same values as sequential ones.
pub fn stream(seed: u64, index: u64) -> SampleRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Numerator uniform in `[−9, 9]`, denominator uniform in `[1, 9]`.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let s = random_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_word(rng: &mut impl Rng, indices: &[GenIndex], max_len: usize, with_forms: bool) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let i = *indices.choose(rng).expect("non-empty index set");
            if with_forms && rng.gen_bool(0.5) {
                Letter::y(i)
            } else {
                Letter::x(i)
            }
        })
        .collect()
}

pub fn random_raw(
    rng: &mut impl Rng,
    indices: &[GenIndex],
    max_len: usize,
    max_terms: usize,
    with_forms: bool,
) -> RawElement {
    let mut raw = RawElement::new();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let w = random_word(rng, indices, max_len, with_forms);
        raw.push(w, ParamPoly::constant(nonzero_scalar(rng)));
    }
    raw
}

/// Normal form of a random combination of up to `max_terms` words.
pub fn random_element(
    rng: &mut impl Rng,
    cal: &Arc<CalculusSpec>,
    indices: &[GenIndex],
    max_len: usize,
    max_terms: usize,
    with_forms: bool,
) -> Element {
    normal_form(&random_raw(rng, indices, max_len, max_terms, with_forms), cal)
}

fn small_int(rng: &mut impl Rng) -> ParamPoly {
    ParamPoly::int(rng.gen_range(-2..=2))
}

/// A random `A` table on a finite algebra. A third of the draws are the
/// catalog-free ansatz `½c + S` with `S` symmetric (so the linear condition
/// holds), a third are `½c` plus a perturbation of one entry, the rest are
/// unrestricted sparse tables.
pub fn random_a_table(rng: &mut impl Rng, g: &LieAlgebra) -> CalculusSpec {
    let n = g.dimension().expect("finite algebra");
    let half = ParamPoly::ratio(1, 2);
    let mut table = vec![SparseVec::new(); n * n];
    let mode = rng.gen_range(0..3);
    if mode < 2 {
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = g.bracket_unchecked(GenIndex::Basis(i), GenIndex::Basis(j)).scale(&half);
            }
        }
    }
    match mode {
        0 => {
            for i in 0..n {
                for j in i..n {
                    for k in 0..n {
                        if rng.gen_bool(0.3) {
                            let s = small_int(rng);
                            table[i * n + j].add(GenIndex::Basis(k), &s);
                            if i != j {
                                table[j * n + i].add(GenIndex::Basis(k), &s);
                            }
                        }
                    }
                }
            }
        }
        1 => {
            if rng.gen_bool(0.5) {
                let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                table[i * n + j].add(GenIndex::Basis(k), &ParamPoly::int(rng.gen_range(1..=3)));
            }
        }
        _ => {
            for slot in table.iter_mut() {
                for k in 0..n {
                    if rng.gen_bool(0.25) {
                        slot.add(GenIndex::Basis(k), &small_int(rng));
                    }
                }
            }
        }
    }
    let entries = table
        .into_iter()
        .enumerate()
        .map(|(p, v)| (p / n, p % n, v))
        .collect::<Vec<_>>();
    CalculusSpec::from_table("random", g.clone(), entries).expect("indices in range")
}

fn constant_change(rows: Vec<Vec<Scalar>>) -> BasisChange {
    let m = PolyMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(ParamPoly::constant).collect())
            .collect(),
    )
    .expect("square");
    BasisChange::new(m).expect("invertible by construction")
}

/// `x ↦ x + βy`, `y ↦ λy` on the solvable algebra `[x, y] = 2y`, `λ ≠ 0`.
pub fn random_solvable2_automorphism(rng: &mut impl Rng) -> BasisChange {
    let beta = random_scalar(rng);
    let lambda = nonzero_scalar(rng);
    constant_change(vec![vec![Scalar::one(), Scalar::zero()], vec![beta, lambda]])
}

/// `p ↦ ap + bq + uc`, `q ↦ ep + fq + vc`, `c ↦ (af − be)c` on `heisenberg:1`.
pub fn random_heisenberg1_automorphism(rng: &mut impl Rng) -> BasisChange {
    loop {
        let (a, bb, e, f) = (random_scalar(rng), random_scalar(rng), random_scalar(rng), random_scalar(rng));
        let det = &(&a * &f) - &(&bb * &e);
        if det.is_zero() {
            continue;
        }
        let (u, v) = (random_scalar(rng), random_scalar(rng));
        let z = Scalar::zero;
        return constant_change(vec![vec![det, u, v], vec![z(), a, e], vec![z(), bb, f]]);
    }
}
