use serde::Serialize;

use super::reduce::{Reducer, Terms};
use super::word::{Letter, Word};
use crate::calculus::CalculusSpec;
use crate::error::Result;
use crate::exec::{self, Exec};
use crate::liealg::Window;

/// Shape of an overlap `z^i z^j z^k` where both adjacent pairs are redexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OverlapCase {
    /// `x x x`; resolves iff the Jacobi identity holds.
    Xxx,
    /// `x x y`; resolves iff the quadratic condition on `A` holds.
    Xxy,
    /// `x y y`; always resolves.
    Xyy,
    /// `y y y`; always resolves.
    Yyy,
}

#[derive(Clone, Debug)]
pub struct ConfluenceFailure {
    pub case: OverlapCase,
    pub word: Word,
    /// Normal form after rewriting the left pair first.
    pub left: Terms,
    /// Normal form after rewriting the right pair first.
    pub right: Terms,
}

/// All overlap words over the indices of `window`.
pub fn overlaps(cal: &CalculusSpec, window: &Window) -> Result<Vec<(OverlapCase, Word)>> {
    let idx = cal.algebra().window_indices(window)?;
    let (x, y) = (Letter::x, Letter::y);
    let mut out = Vec::new();
    for &i in &idx {
        for &j in idx.iter().filter(|&&j| j < i) {
            for &k in idx.iter().filter(|&&k| k < j) {
                out.push((OverlapCase::Xxx, Word::new(vec![x(i), x(j), x(k)])));
            }
        }
    }
    for &i in &idx {
        for &j in idx.iter().filter(|&&j| j < i) {
            for &k in &idx {
                out.push((OverlapCase::Xxy, Word::new(vec![x(i), x(j), y(k)])));
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            for &k in idx.iter().filter(|&&k| k <= j) {
                out.push((OverlapCase::Xyy, Word::new(vec![x(i), y(j), y(k)])));
            }
        }
    }
    for &i in &idx {
        for &j in idx.iter().filter(|&&j| j <= i) {
            for &k in idx.iter().filter(|&&k| k <= j) {
                out.push((OverlapCase::Yyy, Word::new(vec![y(i), y(j), y(k)])));
            }
        }
    }
    Ok(out)
}

/// Resolves one overlap both ways; `None` when both sides agree.
pub fn check_overlap(r: &mut Reducer<'_>, case: OverlapCase, w: &Word) -> Option<ConfluenceFailure> {
    let left = r.normalize_pairs(r.step(w, 0));
    let right = r.normalize_pairs(r.step(w, 1));
    (left != right).then(|| ConfluenceFailure {
        case,
        word: w.clone(),
        left,
        right,
    })
}

/// Diamond-lemma check: reduces every overlap in the window along both
/// paths and lists those whose normal forms differ.
pub fn confluence_report(cal: &CalculusSpec, window: &Window) -> Result<Vec<ConfluenceFailure>> {
    confluence_report_with(cal, window, Exec::default())
}

pub fn confluence_report_with(cal: &CalculusSpec, window: &Window, exec: Exec) -> Result<Vec<ConfluenceFailure>> {
    let words = overlaps(cal, window)?;
    let results = exec::map_init(exec, &words, || Reducer::new(cal), |r, (case, w)| check_overlap(r, *case, w));
    Ok(results.into_iter().flatten().collect())
}
