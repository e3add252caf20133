use std::cmp::Ordering;
use std::fmt;

use crate::liealg::GenIndex;

/// `Y < X`: every `x^i` is larger than every `y^j`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LetterKind {
    Y,
    X,
}

/// A generator `x^i` of the enveloping algebra or its differential `y^i = d(x^i)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub kind: LetterKind,
    pub index: GenIndex,
}

impl Letter {
    pub fn x(index: GenIndex) -> Self {
        Letter {
            kind: LetterKind::X,
            index,
        }
    }

    pub fn y(index: GenIndex) -> Self {
        Letter {
            kind: LetterKind::Y,
            index,
        }
    }

    pub fn is_x(&self) -> bool {
        self.kind == LetterKind::X
    }

    pub fn is_y(&self) -> bool {
        self.kind == LetterKind::Y
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::X => write!(f, "x[{}]", self.index),
            LetterKind::Y => write!(f, "y[{}]", self.index),
        }
    }
}

/// Whether the adjacent pair `a b` is the left-hand side of a rewrite rule.
pub fn is_redex(a: Letter, b: Letter) -> bool {
    match (a.kind, b.kind) {
        (LetterKind::X, LetterKind::X) => b.index < a.index,
        (LetterKind::X, LetterKind::Y) => true,
        (LetterKind::Y, LetterKind::Y) => b.index <= a.index,
        (LetterKind::Y, LetterKind::X) => false,
    }
}

/// A monomial in the letters `x^i`, `y^j`. Ordered by length first, then
/// lexicographically by letters.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of `y` letters: the form degree.
    pub fn degree(&self) -> usize {
        self.0.iter().filter(|l| l.is_y()).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Normal words: `y`s first with strictly increasing indices, then `x`s
    /// with non-decreasing indices.
    pub fn is_normal(&self) -> bool {
        self.first_redex().is_none()
    }

    pub fn first_redex(&self) -> Option<usize> {
        self.0.windows(2).position(|p| is_redex(p[0], p[1]))
    }

    pub fn last_redex(&self) -> Option<usize> {
        self.0.windows(2).rposition(|p| is_redex(p[0], p[1]))
    }

    /// Pairs of positions standing in the wrong relative order. Together with
    /// the length this is the termination measure of the rewrite system.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for (p, &a) in self.0.iter().enumerate() {
            for &b in &self.0[p + 1..] {
                if is_redex(a, b) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn measure(&self) -> (usize, usize) {
        (self.len(), self.inversions())
    }

    /// Replaces positions `p, p+1` by `mid`.
    pub(crate) fn splice(&self, p: usize, mid: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + mid.len());
        v.extend_from_slice(&self.0[..p]);
        v.extend_from_slice(mid);
        v.extend_from_slice(&self.0[p + 2..]);
        Word(v)
    }
}

pub fn word_compare(a: &Word, b: &Word) -> Ordering {
    a.cmp(b)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GenIndex::Basis;

    fn x(k: usize) -> Letter {
        Letter::x(Basis(k))
    }
    fn y(k: usize) -> Letter {
        Letter::y(Basis(k))
    }

    #[test]
    fn compare_examples() {
        let w = |v: Vec<Letter>| Word::new(v);
        assert_eq!(word_compare(&w(vec![x(1)]), &w(vec![y(9)])), Ordering::Greater);
        assert_eq!(word_compare(&w(vec![x(1), x(2)]), &w(vec![x(5)])), Ordering::Greater);
        assert_eq!(word_compare(&w(vec![y(1), x(2)]), &w(vec![y(2), x(1)])), Ordering::Less);
    }

    #[test]
    fn normality() {
        assert!(Word::new(vec![y(1), y(3), x(0), x(0), x(2)]).is_normal());
        assert!(!Word::new(vec![y(1), y(1)]).is_normal());
        assert!(!Word::new(vec![x(0), y(1)]).is_normal());
        assert!(!Word::new(vec![x(2), x(1)]).is_normal());
        assert!(Word::empty().is_normal());
    }

    #[test]
    fn canonical_text() {
        let w = Word::new(vec![y(1), y(3), x(0), x(0), x(2)]);
        assert_eq!(w.to_string(), "y[1]*y[3]*x[0]*x[0]*x[2]");
        assert_eq!(Word::new(vec![Letter::y(GenIndex::Central), Letter::x(GenIndex::Int(-2))]).to_string(), "y[t]*x[-2]");
    }

    #[test]
    fn inversions_count() {
        assert_eq!(Word::new(vec![x(2), x(1), y(0)]).inversions(), 3);
        assert_eq!(Word::new(vec![y(0), x(1)]).inversions(), 0);
    }
}
