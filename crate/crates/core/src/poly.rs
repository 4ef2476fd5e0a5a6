//! Noncommutative polynomials over Q with the degree-lexicographic ordering.
//!
//! Monomials are words of variable indices, multiplication is concatenation,
//! coefficients are arbitrary-precision rationals. `deg(0) = -1` by
//! convention.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("invalid variable table: {0}")]
    InvalidVariableTable(String),
}

/// Ordered table of distinct variable names. The order of the names defines
/// the lexicographic tie-break `x_1 < x_2 < ...` used by `deglex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableTable {
    names: Vec<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableTable {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(PolyError::InvalidVariableTable(format!(
                    "`{name}` is not a valid variable name"
                )));
            }
            if names[..i].iter().any(|other| other == name) {
                return Err(PolyError::InvalidVariableTable(format!(
                    "duplicate variable `{name}`"
                )));
            }
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: u32) -> &str {
        &self.names[index as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }
}

/// A word in the free monoid: a sequence of variable indices. The empty word
/// is the monomial `1`.
///
/// `Ord` is the degree-lexicographic ordering: words are compared by length
/// first, ties broken left to right by variable index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn letter(index: u32) -> Self {
        Self { letters: vec![index] }
    }

    pub fn from_letters(letters: Vec<u32>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, exp: u32) -> Word {
        let mut letters = Vec::with_capacity(self.len() * exp as usize);
        for _ in 0..exp {
            letters.extend_from_slice(&self.letters);
        }
        Word { letters }
    }

    /// `other` placed around `self`: `a * self * b`.
    pub fn sandwich(&self, a: &Word, b: &Word) -> Word {
        let mut letters = Vec::with_capacity(a.len() + self.len() + b.len());
        letters.extend_from_slice(&a.letters);
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&b.letters);
        Word { letters }
    }

    /// Remainder after removing `prefix` from the front, if present.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.letters
            .strip_prefix(prefix.letters.as_slice())
            .map(|rest| Word { letters: rest.to_vec() })
    }

    /// Remainder after removing `suffix` from the back, if present.
    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.letters
            .strip_suffix(suffix.letters.as_slice())
            .map(|rest| Word { letters: rest.to_vec() })
    }

    /// Start positions of all occurrences of `factor` (nonempty) in `self`.
    pub fn occurrences(&self, factor: &Word) -> Vec<usize> {
        if factor.is_empty() || factor.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - factor.len())
            .filter(|&p| self.letters[p..p + factor.len()] == factor.letters[..])
            .collect()
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word { letters: self.letters[start..end].to_vec() }
    }

    pub fn is_valid_for(&self, vars: &VariableTable) -> bool {
        self.letters.iter().all(|&i| (i as usize) < vars.len())
    }

    pub fn to_text(&self, vars: &VariableTable) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&i| vars.name(i))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-lexicographic comparison of two words. This is exactly `Word`'s
/// `Ord` instance; the free function mirrors the usual ordering-as-operation
/// presentation.
pub fn cmp_deglex(u: &Word, w: &Word) -> Ordering {
    u.cmp(w)
}

/// A noncommutative polynomial: a finite map from words to nonzero rational
/// coefficients. The term map is kept ascending in deglex order, so the
/// leading monomial is the last key.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rat>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(Word::one(), c)
    }

    pub fn monomial(word: Word, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Self { terms }
    }

    pub fn variable(index: u32) -> Self {
        Self::monomial(Word::letter(index), Rat::one())
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, Rat)>,
    {
        let mut poly = Self::zero();
        for (word, coeff) in terms {
            poly.add_term(word, coeff);
        }
        poly
    }

    fn add_term(&mut self, word: Word, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, word: &Word) -> Option<&Rat> {
        self.terms.get(word)
    }

    /// Leading monomial w.r.t. deglex; `None` for the zero polynomial.
    pub fn lm(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    /// Leading coefficient; `None` for the zero polynomial.
    pub fn lc(&self) -> Option<&Rat> {
        self.terms.values().next_back()
    }

    /// Degree with the convention `deg(0) = -1`.
    pub fn deg(&self) -> i64 {
        self.lm().map_or(-1, |w| w.len() as i64)
    }

    /// Minimal support length, `-1` for the zero polynomial.
    pub fn degmin(&self) -> i64 {
        self.terms.keys().next().map_or(-1, |w| w.len() as i64)
    }

    /// `deg - degmin`, and `0` for the zero polynomial.
    pub fn degdiff(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.deg() - self.degmin()
        }
    }

    pub fn stats(&self) -> Result<PolyStats, PolyError> {
        let lm = self.lm().ok_or(PolyError::ZeroPolynomial)?.clone();
        let deg = self.deg() as usize;
        let degmin = self.degmin() as usize;
        Ok(PolyStats { lm, deg, degmin, degdiff: deg - degmin })
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    pub fn scale_in_place(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for coeff in self.terms.values_mut() {
            *coeff *= c;
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rat, other: &NcPoly) {
        if c.is_zero() {
            return;
        }
        for (word, coeff) in &other.terms {
            self.add_term(word.clone(), coeff * c);
        }
    }

    /// `self += c * a * other * b` with words `a`, `b`.
    pub fn add_scaled_sandwich(&mut self, c: &Rat, a: &Word, other: &NcPoly, b: &Word) {
        if c.is_zero() {
            return;
        }
        for (word, coeff) in &other.terms {
            self.add_term(word.sandwich(a, b), coeff * c);
        }
    }

    /// `a * self * b` with words `a`, `b`. Word maps are injective, so no
    /// cancellation happens here.
    pub fn sandwich(&self, a: &Word, b: &Word) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.sandwich(a, b), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, c) in &self.terms {
            for (w, d) in &other.terms {
                out.add_term(u.concat(w), c * d);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> NcPoly {
        let mut out = NcPoly::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Canonical text form: terms in descending deglex order, `p/q`
    /// coefficients. Parsing the result reproduces the polynomial.
    pub fn to_text(&self, vars: &VariableTable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (word, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if word.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&word.to_text(vars));
            } else {
                out.push_str(&format!("{}*{}", abs, word.to_text(vars)));
            }
        }
        out
    }
}

impl std::ops::Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(&Rat::one(), rhs);
        out
    }
}

impl std::ops::Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(&-Rat::one(), rhs);
        out
    }
}

impl std::ops::Mul<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.mul(rhs)
    }
}

/// Leading monomial and degree statistics of a nonzero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyStats {
    pub lm: Word,
    pub deg: usize,
    pub degmin: usize,
    pub degdiff: usize,
}

/// Leading monomial plus degree data; errors on the zero polynomial.
pub fn poly_stats(f: &NcPoly) -> Result<PolyStats, PolyError> {
    f.stats()
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(num_bigint::BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, PolyError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        let tok = match c {
            '+' => {
                advance(&mut chars);
                Tok::Plus
            }
            '-' => {
                advance(&mut chars);
                Tok::Minus
            }
            '*' => {
                advance(&mut chars);
                Tok::Star
            }
            '^' => {
                advance(&mut chars);
                Tok::Caret
            }
            '/' => {
                advance(&mut chars);
                Tok::Slash
            }
            '(' => {
                advance(&mut chars);
                Tok::LParen
            }
            ')' => {
                advance(&mut chars);
                Tok::RParen
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(advance(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Number(digits.parse().expect("digit string"))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        ident.push(advance(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Ident(ident)
            }
            other => {
                return Err(PolyError::Syntax {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Spanned { tok, line: tline, col: tcol });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a VariableTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        let t = self.peek();
        PolyError::Syntax { line: t.line, col: t.col, msg: msg.into() }
    }

    fn poly(&mut self) -> Result<NcPoly, PolyError> {
        let mut sign = Rat::one();
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                sign = -sign;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?.scale(&sign);
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc.add_scaled(&Rat::one(), &t);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc.add_scaled(&-Rat::one(), &t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NcPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NcPoly, PolyError> {
        let base = self.primary()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            match self.bump().tok {
                Tok::Number(n) => {
                    use num_traits::ToPrimitive;
                    let exp = n
                        .to_u32()
                        .filter(|&e| e >= 1)
                        .ok_or_else(|| self.err("exponent must be a positive integer"))?;
                    Ok(base.pow(exp))
                }
                _ => Err(self.err("expected a positive integer exponent after `^`")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<NcPoly, PolyError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(name) => {
                self.bump();
                match self.vars.index_of(&name) {
                    Some(i) => Ok(NcPoly::variable(i)),
                    None => Err(PolyError::UnknownVariable { name, line: t.line, col: t.col }),
                }
            }
            Tok::Number(n) => {
                self.bump();
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    match self.bump().tok {
                        Tok::Number(d) => {
                            if d == num_bigint::BigInt::from(0) {
                                return Err(self.err("zero denominator"));
                            }
                            Ok(NcPoly::constant(Rat::new(n, d)))
                        }
                        _ => Err(self.err("expected an integer denominator after `/`")),
                    }
                } else {
                    Ok(NcPoly::constant(Rat::from_integer(n)))
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.poly()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Eof => Err(self.err("unexpected end of input")),
            _ => Err(self.err("expected a variable, number, or `(`")),
        }
    }
}

/// Parse a polynomial from text. The grammar:
///
/// ```text
/// poly   := ['+'|'-'] term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := primary ['^' posint]
/// primary:= var | '(' poly ')' | int ['/' int]
/// ```
///
/// Whitespace is insignificant. Formatting a parsed polynomial and parsing it
/// again is a fixed point.
pub fn parse_poly(text: &str, vars: &VariableTable) -> Result<NcPoly, PolyError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, vars };
    let poly = parser.poly()?;
    if parser.peek().tok != Tok::Eof {
        return Err(parser.err("trailing input after polynomial"));
    }
    Ok(poly)
}

impl fmt::Display for PolyStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "deg {} degmin {} degdiff {}",
            self.deg, self.degmin, self.degdiff
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> VariableTable {
        VariableTable::new(names.iter().copied()).unwrap()
    }

    fn p(text: &str, vt: &VariableTable) -> NcPoly {
        parse_poly(text, vt).unwrap()
    }

    #[test]
    fn parse_two_term_poly() {
        let vt = vars(&["a", "b"]);
        let f = p("a*b - 1", &vt);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&Word::from_letters(vec![0, 1])), Some(&Rat::one()));
        assert_eq!(f.coeff(&Word::one()), Some(&(-Rat::one())));
    }

    #[test]
    fn parse_commutator() {
        let vt = vars(&["x", "y"]);
        let f = p("x*y - y*x", &vt);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&Word::from_letters(vec![0, 1])), Some(&Rat::one()));
        assert_eq!(f.coeff(&Word::from_letters(vec![1, 0])), Some(&(-Rat::one())));
    }

    #[test]
    fn parse_word_power() {
        let vt = vars(&["x", "y"]);
        let f = p("(x*y)^2 - 1", &vt);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(
            f.coeff(&Word::from_letters(vec![0, 1, 0, 1])),
            Some(&Rat::one())
        );
        assert_eq!(f.coeff(&Word::one()), Some(&(-Rat::one())));
    }

    #[test]
    fn parse_rational_coefficients() {
        let vt = vars(&["x"]);
        let f = p("1/2*x + 3/2*x", &vt);
        assert_eq!(f, p("2*x", &vt));
        assert!(p("x - x", &vt).is_zero());
    }

    #[test]
    fn parse_errors() {
        let vt = vars(&["x"]);
        match parse_poly("x + z", &vt) {
            Err(PolyError::UnknownVariable { name, col, .. }) => {
                assert_eq!(name, "z");
                assert_eq!(col, 5);
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(matches!(
            parse_poly("x + + ", &vt),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x^0", &vt),
            Err(PolyError::Syntax { .. })
        ));
    }

    #[test]
    fn deglex_examples() {
        let vt = vars(&["x", "y"]);
        let x = Word::letter(0);
        let y = Word::letter(1);
        let xy = Word::from_letters(vec![0, 1]);
        let yx = Word::from_letters(vec![1, 0]);
        let xx = Word::from_letters(vec![0, 0]);
        let _ = &vt;
        assert_eq!(cmp_deglex(&x, &y), Ordering::Less);
        assert_eq!(cmp_deglex(&yx, &xy), Ordering::Greater);
        assert_eq!(cmp_deglex(&xx, &y), Ordering::Greater);
    }

    #[test]
    fn stats_examples() {
        // a*ad*a - a over (a, ad): deg 3, degmin 1, degdiff 2.
        let vt = vars(&["a", "ad"]);
        let f = p("a*ad*a - a", &vt);
        let s = f.stats().unwrap();
        assert_eq!((s.deg, s.degmin, s.degdiff), (3, 1, 2));

        // Homogeneous difference: degdiff 0.
        let vt2 = vars(&["as", "ads", "ad", "a"]);
        let g = p("as*ads - ad*a", &vt2);
        let s2 = g.stats().unwrap();
        assert_eq!((s2.deg, s2.degmin, s2.degdiff), (2, 2, 0));

        // ab - 1: lm [a,b], deg 2, degmin 0, degdiff 2.
        let vt3 = vars(&["a", "b"]);
        let h = p("a*b - 1", &vt3);
        let s3 = h.stats().unwrap();
        assert_eq!(s3.lm, Word::from_letters(vec![0, 1]));
        assert_eq!((s3.deg, s3.degmin, s3.degdiff), (2, 0, 2));

        assert!(NcPoly::zero().stats().is_err());
        assert_eq!(NcPoly::zero().deg(), -1);
    }

    #[test]
    fn format_round_trip() {
        let vt = vars(&["x", "y"]);
        let cases = ["x*y - y*x", "-x + 2", "3/2*x*x - 1/3", "0", "x", "-1"];
        for case in cases {
            let f = p(case, &vt);
            let text = f.to_text(&vt);
            assert_eq!(p(&text, &vt), f, "round trip failed for `{case}` -> `{text}`");
        }
    }

    #[test]
    fn word_occurrences() {
        let xyx = Word::from_letters(vec![0, 1, 0]);
        let y = Word::letter(1);
        assert_eq!(xyx.occurrences(&y), vec![1]);
        let xx = Word::from_letters(vec![0, 0, 0]);
        assert_eq!(xx.occurrences(&Word::from_letters(vec![0, 0])), vec![0, 1]);
    }
}
