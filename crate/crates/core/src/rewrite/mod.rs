//! Words in `x^i`, `y^j`, the rewrite rules to normal form, and the overlap
//! (critical pair) check.

mod confluence;
mod element;
mod reduce;
mod word;

pub use confluence::{check_overlap, confluence_report, confluence_report_with, overlaps, ConfluenceFailure, OverlapCase};
pub use element::{multiply, normal_form, normal_form_with, Element, RawElement};
pub use reduce::{Reducer, Strategy, Terms};
pub use word::{is_redex, word_compare, Letter, LetterKind, Word};

#[cfg(test)]
mod tests;
