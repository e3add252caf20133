//! Text syntax for elements:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | 'x[' index ']' | 'y[' index ']' | name | param ['^' int]
//!         | 'd(' expr ')' | '(' expr ')'
//! ```
//!
//! `index` is an integer or `t`; `name` is a generator alias of the algebra
//! (`p1`, `h`, ...) and stands for the corresponding `x`.

use std::fmt;
use std::sync::Arc;

use crate::calculus::{differential, CalculusSpec};
use crate::error::{Error, Result};
use crate::foundations::{Monomial, ParamPoly, Scalar};
use crate::liealg::{AlgebraKind, GenIndex, LieAlgebra};
use crate::rewrite::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Sum(Vec<ExprAst>),
    Product(Vec<ExprAst>),
    Scalar(ParamPoly),
    Gen(GenKind, GenIndex),
    DApply(Box<ExprAst>),
}

pub fn parse_expression(text: &str, algebra: &LieAlgebra, params: &[String]) -> Result<ExprAst> {
    let mut p = Parser {
        src: text,
        pos: 0,
        algebra,
        params,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    algebra: &'a LieAlgebra,
    params: &'a [String],
}

fn negate(term: ExprAst) -> ExprAst {
    match term {
        ExprAst::Scalar(s) => ExprAst::Scalar(-s),
        ExprAst::Product(mut fs) => {
            if let Some(ExprAst::Scalar(s)) = fs.first_mut() {
                *s = -&*s;
            } else {
                fs.insert(0, ExprAst::Scalar(ParamPoly::int(-1)));
            }
            ExprAst::Product(fs)
        }
        other => ExprAst::Product(vec![ExprAst::Scalar(ParamPoly::int(-1)), other]),
    }
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        let len = self.rest().find(|c: char| !f(c)).unwrap_or(self.rest().len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut items = Vec::new();
        let leading_minus = self.eat('-');
        let first = self.term()?;
        items.push(if leading_minus { negate(first) } else { first });
        loop {
            if self.eat('+') {
                items.push(self.term()?);
            } else if self.eat('-') {
                let t = self.term()?;
                items.push(negate(t));
            } else {
                break;
            }
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            ExprAst::Sum(items)
        })
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            ExprAst::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<ExprAst> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                let next = self.peek();
                match (name, next) {
                    ("x", Some('[')) => self.generator(GenKind::X),
                    ("y", Some('[')) => self.generator(GenKind::Y),
                    ("d", Some('(')) => {
                        self.pos += 1;
                        let inner = self.expr()?;
                        self.expect(')')?;
                        Ok(ExprAst::DApply(Box::new(inner)))
                    }
                    _ => {
                        if let Some(i) = self.algebra.resolve_name(name) {
                            return Ok(ExprAst::Gen(GenKind::X, i));
                        }
                        if !self.params.iter().any(|p| p == name) {
                            return Err(Error::UnknownGenerator(name.to_string()));
                        }
                        let mut exp = 1;
                        if self.eat('^') {
                            self.skip_ws();
                            let digits = self.take_while(|c| c.is_ascii_digit());
                            exp = digits.parse().map_err(|_| self.error("expected an exponent"))?;
                        }
                        let m = Monomial::from_powers([(name, exp)]);
                        Ok(ExprAst::Scalar(ParamPoly::term(Scalar::one(), m)))
                    }
                }
            }
            _ => {
                self.pos = start;
                Err(self.error("expected a factor"))
            }
        }
    }

    fn rational(&mut self) -> Result<ExprAst> {
        let start = self.pos;
        let num = self.take_while(|c| c.is_ascii_digit());
        let mut text = num.to_string();
        if self.rest().starts_with('/') {
            self.pos += 1;
            let den = self.take_while(|c| c.is_ascii_digit());
            if den.is_empty() {
                return Err(self.error("expected a denominator"));
            }
            text = format!("{num}/{den}");
        }
        let s: Scalar = text.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("bad number `{text}`"),
        })?;
        Ok(ExprAst::Scalar(ParamPoly::constant(s)))
    }

    fn generator(&mut self, kind: GenKind) -> Result<ExprAst> {
        self.expect('[')?;
        self.skip_ws();
        let start = self.pos;
        let text = if self.rest().starts_with('t') {
            self.pos += 1;
            "t"
        } else {
            let neg = self.rest().starts_with('-');
            if neg {
                self.pos += 1;
            }
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.error("expected an index"));
            }
            &self.src[start..self.pos]
        };
        self.expect(']')?;
        let unknown = || Error::UnknownGenerator(format!("{}[{text}]", if kind == GenKind::X { "x" } else { "y" }));
        let index = match (self.algebra.kind(), text) {
            (AlgebraKind::IntIndexed { central: true }, "t") => GenIndex::Central,
            (AlgebraKind::IntIndexed { .. }, t) if t != "t" => GenIndex::Int(t.parse().map_err(|_| unknown())?),
            (AlgebraKind::Finite { .. }, t) => GenIndex::Basis(t.parse().map_err(|_| unknown())?),
            _ => return Err(unknown()),
        };
        self.algebra.check_index(index).map_err(|_| unknown())?;
        Ok(ExprAst::Gen(kind, index))
    }
}

fn leading_negative(s: &ParamPoly) -> bool {
    s.len() == 1 && s.terms().next().is_some_and(|(_, c)| c.is_negative())
}

/// Splits off a leading minus sign, returning the item with its first
/// scalar made positive.
fn split_sign(item: &ExprAst) -> Option<ExprAst> {
    match item {
        ExprAst::Scalar(s) if leading_negative(s) => Some(ExprAst::Scalar(-s)),
        ExprAst::Product(fs) => match fs.first() {
            Some(ExprAst::Scalar(s)) if leading_negative(s) => {
                let mut fs = fs.clone();
                fs[0] = ExprAst::Scalar(-s);
                Some(ExprAst::Product(fs))
            }
            _ => None,
        },
        _ => None,
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, e: &ExprAst) -> fmt::Result {
    match e {
        ExprAst::Sum(_) | ExprAst::Product(_) => write!(f, "({e})"),
        ExprAst::Scalar(s) if leading_negative(s) || s.is_compound() => write!(f, "({s})"),
        _ => write_plain(f, e),
    }
}

/// Writes an item whose sign has already been handled.
fn write_plain(f: &mut fmt::Formatter<'_>, e: &ExprAst) -> fmt::Result {
    match e {
        ExprAst::Sum(_) => write!(f, "({e})"),
        ExprAst::Product(fs) => {
            for (k, x) in fs.iter().enumerate() {
                if k > 0 {
                    write!(f, "*")?;
                }
                match x {
                    ExprAst::Scalar(s) if k == 0 && !s.is_compound() => write!(f, "{s}")?,
                    _ => write_factor(f, x)?,
                }
            }
            Ok(())
        }
        ExprAst::Scalar(s) if s.is_compound() => write!(f, "({s})"),
        ExprAst::Scalar(s) => write!(f, "{s}"),
        ExprAst::Gen(GenKind::X, i) => write!(f, "x[{i}]"),
        ExprAst::Gen(GenKind::Y, i) => write!(f, "y[{i}]"),
        ExprAst::DApply(inner) => write!(f, "d({inner})"),
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: &[ExprAst] = match self {
            ExprAst::Sum(items) => items,
            other => std::slice::from_ref(other),
        };
        for (k, item) in items.iter().enumerate() {
            match (split_sign(item), k) {
                (Some(pos), 0) => {
                    write!(f, "-")?;
                    write_plain(f, &pos)?;
                }
                (Some(pos), _) => {
                    write!(f, " - ")?;
                    write_plain(f, &pos)?;
                }
                (None, 0) => write_plain(f, item)?,
                (None, _) => {
                    write!(f, " + ")?;
                    write_plain(f, item)?;
                }
            }
        }
        Ok(())
    }
}

/// Evaluates to a normal-form element. `d(..)` needs a verified calculus.
pub fn evaluate(ast: &ExprAst, cal: &Arc<CalculusSpec>) -> Result<Element> {
    match ast {
        ExprAst::Scalar(s) => Ok(Element::constant(cal, s.clone())),
        ExprAst::Gen(GenKind::X, i) => Element::x(cal, *i),
        ExprAst::Gen(GenKind::Y, i) => Element::y(cal, *i),
        ExprAst::Sum(items) => {
            let mut acc = Element::zero(cal);
            for item in items {
                acc = acc.add(&evaluate(item, cal)?)?;
            }
            Ok(acc)
        }
        ExprAst::Product(fs) => {
            let mut acc = Element::one(cal);
            for x in fs {
                acc = acc.multiply(&evaluate(x, cal)?)?;
            }
            Ok(acc)
        }
        ExprAst::DApply(inner) => differential(&evaluate(inner, cal)?),
    }
}

/// Parses against the calculus's algebra and parameters, then evaluates.
pub fn eval_str(text: &str, cal: &Arc<CalculusSpec>) -> Result<Element> {
    let ast = parse_expression(text, cal.algebra(), cal.parameters())?;
    evaluate(&ast, cal)
}
