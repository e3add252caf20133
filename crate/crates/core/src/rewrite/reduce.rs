use std::collections::{BTreeMap, HashMap};

use super::word::{Letter, LetterKind, Word};
use crate::calculus::CalculusSpec;
use crate::foundations::ParamPoly;

/// Linear combination of words, zero coefficients dropped.
pub type Terms = BTreeMap<Word, ParamPoly>;

pub(crate) fn add_term(terms: &mut Terms, w: Word, c: &ParamPoly) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&w) {
        Some(slot) => {
            slot.add_assign_ref(c);
            if slot.is_zero() {
                terms.remove(&w);
            }
        }
        None => {
            terms.insert(w, c.clone());
        }
    }
}

/// Which redex a reduction step rewrites.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// The first reducible adjacent pair scanning from the left.
    #[default]
    Leftmost,
    /// The last reducible adjacent pair.
    Rightmost,
}

/// Reduces words to normal form under the three rule families
///
/// ```text
/// x^i x^j -> x^j x^i + c^{ij}_k x^k     (j < i)
/// x^i y^j -> y^j x^i + A^{ij}_k y^k
/// y^i y^j -> -y^j y^i                   (j < i),   y^i y^i -> 0
/// ```
///
/// Normal forms of visited words are memoised for the reducer's lifetime.
pub struct Reducer<'a> {
    cal: &'a CalculusSpec,
    strategy: Strategy,
    cache: HashMap<Word, Terms>,
}

impl<'a> Reducer<'a> {
    pub fn new(cal: &'a CalculusSpec) -> Self {
        Self::with_strategy(cal, Strategy::default())
    }

    pub fn with_strategy(cal: &'a CalculusSpec, strategy: Strategy) -> Self {
        Reducer {
            cal,
            strategy,
            cache: HashMap::new(),
        }
    }

    pub fn calculus(&self) -> &'a CalculusSpec {
        self.cal
    }

    /// One rule application at positions `p, p+1`. Returns an empty list for
    /// `y^i y^i`; panics if the pair is not a redex.
    pub fn step(&self, w: &Word, p: usize) -> Vec<(Word, ParamPoly)> {
        let (a, b) = (w.letters()[p], w.letters()[p + 1]);
        match (a.kind, b.kind) {
            (LetterKind::X, LetterKind::X) => {
                assert!(b.index < a.index, "x^i x^j with j >= i is not a redex");
                let mut out = vec![(w.splice(p, &[b, a]), ParamPoly::one())];
                for (k, c) in self.cal.bracket(a.index, b.index).iter() {
                    out.push((w.splice(p, &[Letter::x(*k)]), c.clone()));
                }
                out
            }
            (LetterKind::X, LetterKind::Y) => {
                let mut out = vec![(w.splice(p, &[b, a]), ParamPoly::one())];
                for (k, c) in self.cal.acoef(a.index, b.index).iter() {
                    out.push((w.splice(p, &[Letter::y(*k)]), c.clone()));
                }
                out
            }
            (LetterKind::Y, LetterKind::Y) => {
                assert!(b.index <= a.index, "y^i y^j with j > i is not a redex");
                if a.index == b.index {
                    Vec::new()
                } else {
                    vec![(w.splice(p, &[b, a]), ParamPoly::int(-1))]
                }
            }
            (LetterKind::Y, LetterKind::X) => panic!("y^i x^j is not a redex"),
        }
    }

    fn pick(&self, w: &Word) -> Option<usize> {
        match self.strategy {
            Strategy::Leftmost => w.first_redex(),
            Strategy::Rightmost => w.last_redex(),
        }
    }

    pub fn normalize_word(&mut self, w: &Word) -> Terms {
        if let Some(t) = self.cache.get(w) {
            return t.clone();
        }
        let out = match self.pick(w) {
            None => {
                let mut t = Terms::new();
                t.insert(w.clone(), ParamPoly::one());
                t
            }
            Some(p) => {
                let mut acc = Terms::new();
                for (next, c) in self.step(w, p) {
                    for (nw, nc) in self.normalize_word(&next) {
                        add_term(&mut acc, nw, &(&c * &nc));
                    }
                }
                acc
            }
        };
        self.cache.insert(w.clone(), out.clone());
        out
    }

    pub fn normalize(&mut self, terms: &Terms) -> Terms {
        let mut acc = Terms::new();
        for (w, c) in terms {
            for (nw, nc) in self.normalize_word(w) {
                add_term(&mut acc, nw, &(c * &nc));
            }
        }
        acc
    }

    /// Normal form of a word list with coefficients, where each word may be
    /// arbitrary.
    pub fn normalize_pairs(&mut self, pairs: impl IntoIterator<Item = (Word, ParamPoly)>) -> Terms {
        let mut acc = Terms::new();
        for (w, c) in pairs {
            for (nw, nc) in self.normalize_word(&w) {
                add_term(&mut acc, nw, &(&c * &nc));
            }
        }
        acc
    }
}
