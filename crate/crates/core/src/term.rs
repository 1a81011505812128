//! Terms over the lattice/arrow/tense signatures, plus the infix
//! mini-language used by the CLI: `&, |, ->, <-, ~, G, H, P, F, 0, 1`
//! and variables `x1..xk`.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    Not(Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    To(Box<Term>, Box<Term>),
    From(Box<Term>, Box<Term>),
    G(Box<Term>),
    H(Box<Term>),
    P(Box<Term>),
    F(Box<Term>),
}

/// Signature tags: L = {∧,∨,→,←,0,1}, L' = L ∪ {¬},
/// Lt = {∧,∨,¬,G,H,P,F,0,1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    Arrow,
    ArrowNeg,
    Tense,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("unbound variable x{0}")]
    UnboundVariable(usize),
    #[error("symbol {0} is not interpreted in this algebra")]
    UninterpretedSymbol(&'static str),
    #[error("term does not fit the {0:?} signature")]
    SignatureMismatch(Signature),
    #[error("parse error: {0}")]
    Parse(String),
}

pub fn var(i: usize) -> Term {
    Term::Var(i)
}

pub fn meet(a: Term, b: Term) -> Term {
    Term::Meet(Box::new(a), Box::new(b))
}

pub fn join(a: Term, b: Term) -> Term {
    Term::Join(Box::new(a), Box::new(b))
}

pub fn to(a: Term, b: Term) -> Term {
    Term::To(Box::new(a), Box::new(b))
}

pub fn from(a: Term, b: Term) -> Term {
    Term::From(Box::new(a), Box::new(b))
}

pub fn not(a: Term) -> Term {
    Term::Not(Box::new(a))
}

impl Term {
    pub fn g(a: Term) -> Term {
        Term::G(Box::new(a))
    }

    pub fn h(a: Term) -> Term {
        Term::H(Box::new(a))
    }

    pub fn p(a: Term) -> Term {
        Term::P(Box::new(a))
    }

    pub fn f(a: Term) -> Term {
        Term::F(Box::new(a))
    }

    /// Largest variable index + 1.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Zero | Term::One => 0,
            Term::Not(a) | Term::G(a) | Term::H(a) | Term::P(a) | Term::F(a) => a.arity(),
            Term::Meet(a, b) | Term::Join(a, b) | Term::To(a, b) | Term::From(a, b) => {
                a.arity().max(b.arity())
            }
        }
    }

    pub fn fits(&self, sig: Signature) -> bool {
        match self {
            Term::Var(_) | Term::Zero | Term::One => true,
            Term::Not(a) => sig != Signature::Arrow && a.fits(sig),
            Term::Meet(a, b) | Term::Join(a, b) => a.fits(sig) && b.fits(sig),
            Term::To(a, b) | Term::From(a, b) => {
                sig != Signature::Tense && a.fits(sig) && b.fits(sig)
            }
            Term::G(a) | Term::H(a) | Term::P(a) | Term::F(a) => {
                sig == Signature::Tense && a.fits(sig)
            }
        }
    }

    /// Rewrites arrow operations into tense operations:
    /// `x -> y := G(~x | y)` and `x <- y := P(x & ~y)`.
    pub fn to_tense(&self) -> Result<Term, TermError> {
        if !self.fits(Signature::ArrowNeg) {
            return Err(TermError::SignatureMismatch(Signature::ArrowNeg));
        }
        Ok(self.rewrite_arrows())
    }

    fn rewrite_arrows(&self) -> Term {
        match self {
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Not(a) => not(a.rewrite_arrows()),
            Term::Meet(a, b) => meet(a.rewrite_arrows(), b.rewrite_arrows()),
            Term::Join(a, b) => join(a.rewrite_arrows(), b.rewrite_arrows()),
            Term::To(a, b) => Term::g(join(not(a.rewrite_arrows()), b.rewrite_arrows())),
            Term::From(a, b) => Term::p(meet(a.rewrite_arrows(), not(b.rewrite_arrows()))),
            Term::G(_) | Term::H(_) | Term::P(_) | Term::F(_) => unreachable!(),
        }
    }

    /// Rewrites tense operations into arrow operations with negation:
    /// `G(x) := 1 -> x`, `H(x) := ~(~x <- 0)`, `P(x) := ~H(~x)`,
    /// `F(x) := ~G(~x)`.
    pub fn to_arrows(&self) -> Result<Term, TermError> {
        if !self.fits(Signature::Tense) {
            return Err(TermError::SignatureMismatch(Signature::Tense));
        }
        Ok(self.rewrite_tense())
    }

    fn rewrite_tense(&self) -> Term {
        match self {
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Not(a) => not(a.rewrite_tense()),
            Term::Meet(a, b) => meet(a.rewrite_tense(), b.rewrite_tense()),
            Term::Join(a, b) => join(a.rewrite_tense(), b.rewrite_tense()),
            Term::G(a) => to(Term::One, a.rewrite_tense()),
            Term::H(a) => not(from(not(a.rewrite_tense()), Term::Zero)),
            Term::P(a) => not(not(from(not(not(a.rewrite_tense())), Term::Zero))),
            Term::F(a) => not(to(Term::One, not(a.rewrite_tense()))),
            Term::To(_, _) | Term::From(_, _) => unreachable!(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(w, "x{}", i + 1),
            Term::Zero => write!(w, "0"),
            Term::One => write!(w, "1"),
            Term::Not(a) => write!(w, "~{}", Atom(a)),
            Term::Meet(a, b) => write!(w, "{} & {}", Atom(a), Atom(b)),
            Term::Join(a, b) => write!(w, "{} | {}", Atom(a), Atom(b)),
            Term::To(a, b) => write!(w, "{} -> {}", Atom(a), Atom(b)),
            Term::From(a, b) => write!(w, "{} <- {}", Atom(a), Atom(b)),
            Term::G(a) => write!(w, "G{}", Atom(a)),
            Term::H(a) => write!(w, "H{}", Atom(a)),
            Term::P(a) => write!(w, "P{}", Atom(a)),
            Term::F(a) => write!(w, "F{}", Atom(a)),
        }
    }
}

struct Atom<'a>(&'a Term);

impl fmt::Display for Atom<'_> {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Term::Var(_) | Term::Zero | Term::One => write!(w, "{}", self.0),
            _ => write!(w, "({})", self.0),
        }
    }
}

/// An equation `lhs = rhs` or inequality `lhs <= rhs`; inequalities are
/// checked as the meet-absorption equation `lhs & rhs = lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn equal(lhs: Term, rhs: Term) -> Equation {
        Equation { lhs, rhs }
    }

    pub fn leq(s: Term, t: Term) -> Equation {
        Equation { lhs: meet(s.clone(), t), rhs: s }
    }

    pub fn arity(&self) -> usize {
        self.lhs.arity().max(self.rhs.arity())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "{} = {}", self.lhs, self.rhs)
    }
}

/// Parses `lhs = rhs` or `lhs <= rhs`.
pub fn parse_equation(input: &str) -> Result<Equation, TermError> {
    let mut p = Parser::new(input);
    let lhs = p.expr()?;
    match p.next_token()? {
        Some(Tok::Eq) => {
            let rhs = p.expr()?;
            p.expect_end()?;
            Ok(Equation::equal(lhs, rhs))
        }
        Some(Tok::Leq) => {
            let rhs = p.expr()?;
            p.expect_end()?;
            Ok(Equation::leq(lhs, rhs))
        }
        other => Err(TermError::Parse(format!("expected '=' or '<=', got {other:?}"))),
    }
}

/// Parses a bare term.
pub fn parse_term(input: &str) -> Result<Term, TermError> {
    let mut p = Parser::new(input);
    let t = p.expr()?;
    p.expect_end()?;
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var(usize),
    Zero,
    One,
    And,
    Or,
    To,
    From,
    Not,
    G,
    H,
    P,
    F,
    LPar,
    RPar,
    Eq,
    Leq,
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    peeked: Option<Tok>,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { chars: s.chars().peekable(), peeked: None }
    }

    fn next_token(&mut self) -> Result<Option<Tok>, TermError> {
        if let Some(t) = self.peeked.take() {
            return Ok(Some(t));
        }
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
        let Some(&c) = self.chars.peek() else { return Ok(None) };
        let tok = match c {
            '&' => {
                self.chars.next();
                Tok::And
            }
            '|' => {
                self.chars.next();
                Tok::Or
            }
            '~' => {
                self.chars.next();
                Tok::Not
            }
            '(' => {
                self.chars.next();
                Tok::LPar
            }
            ')' => {
                self.chars.next();
                Tok::RPar
            }
            '0' => {
                self.chars.next();
                Tok::Zero
            }
            '1' => {
                self.chars.next();
                Tok::One
            }
            '=' => {
                self.chars.next();
                Tok::Eq
            }
            '-' => {
                self.chars.next();
                if self.chars.next() != Some('>') {
                    return Err(TermError::Parse("expected '->'".into()));
                }
                Tok::To
            }
            '<' => {
                self.chars.next();
                match self.chars.next() {
                    Some('-') => Tok::From,
                    Some('=') => Tok::Leq,
                    other => return Err(TermError::Parse(format!("expected '<-' or '<=', got {other:?}"))),
                }
            }
            'G' => {
                self.chars.next();
                Tok::G
            }
            'H' => {
                self.chars.next();
                Tok::H
            }
            'P' => {
                self.chars.next();
                Tok::P
            }
            'F' => {
                self.chars.next();
                Tok::F
            }
            'x' => {
                self.chars.next();
                let mut digits = String::new();
                while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                    digits.push(self.chars.next().unwrap());
                }
                let k: usize = digits
                    .parse()
                    .map_err(|_| TermError::Parse("variable must be x1, x2, ...".into()))?;
                if k == 0 {
                    return Err(TermError::Parse("variables are numbered from x1".into()));
                }
                Tok::Var(k - 1)
            }
            other => return Err(TermError::Parse(format!("unexpected character '{other}'"))),
        };
        Ok(Some(tok))
    }

    fn peek_token(&mut self) -> Result<Option<Tok>, TermError> {
        if self.peeked.is_none() {
            self.peeked = self.next_token()?;
        }
        Ok(self.peeked)
    }

    fn expect_end(&mut self) -> Result<(), TermError> {
        match self.next_token()? {
            None => Ok(()),
            Some(t) => Err(TermError::Parse(format!("trailing token {t:?}"))),
        }
    }

    // arrows, lowest precedence, left-associative
    fn expr(&mut self) -> Result<Term, TermError> {
        let mut acc = self.or_expr()?;
        loop {
            match self.peek_token()? {
                Some(Tok::To) => {
                    self.peeked = None;
                    acc = to(acc, self.or_expr()?);
                }
                Some(Tok::From) => {
                    self.peeked = None;
                    acc = from(acc, self.or_expr()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn or_expr(&mut self) -> Result<Term, TermError> {
        let mut acc = self.and_expr()?;
        while self.peek_token()? == Some(Tok::Or) {
            self.peeked = None;
            acc = join(acc, self.and_expr()?);
        }
        Ok(acc)
    }

    fn and_expr(&mut self) -> Result<Term, TermError> {
        let mut acc = self.unary()?;
        while self.peek_token()? == Some(Tok::And) {
            self.peeked = None;
            acc = meet(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Term, TermError> {
        match self.peek_token()? {
            Some(Tok::Not) => {
                self.peeked = None;
                Ok(not(self.unary()?))
            }
            Some(Tok::G) => {
                self.peeked = None;
                Ok(Term::g(self.unary()?))
            }
            Some(Tok::H) => {
                self.peeked = None;
                Ok(Term::h(self.unary()?))
            }
            Some(Tok::P) => {
                self.peeked = None;
                Ok(Term::p(self.unary()?))
            }
            Some(Tok::F) => {
                self.peeked = None;
                Ok(Term::f(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        match self.next_token()? {
            Some(Tok::Var(i)) => Ok(Term::Var(i)),
            Some(Tok::Zero) => Ok(Term::Zero),
            Some(Tok::One) => Ok(Term::One),
            Some(Tok::LPar) => {
                let t = self.expr()?;
                if self.next_token()? != Some(Tok::RPar) {
                    return Err(TermError::Parse("expected ')'".into()));
                }
                Ok(t)
            }
            other => Err(TermError::Parse(format!("expected a term, got {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_infix() {
        let e = parse_equation("x1 & (x1 -> x2) <= x2").unwrap();
        let r = to(var(0), var(1));
        assert_eq!(e, Equation::leq(meet(var(0), r), var(1)));
    }

    #[test]
    fn parses_tense_ops() {
        let t = parse_term("G(~x1 | x2)").unwrap();
        assert_eq!(t, Term::g(join(not(var(0)), var(1))));
        assert!(t.fits(Signature::Tense));
        assert!(!t.fits(Signature::Arrow));
    }

    #[test]
    fn round_trip_display() {
        let t = parse_term("(x1 <- x2) & ~x3").unwrap();
        assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn translation_directions() {
        let t = to(var(0), var(1));
        assert_eq!(t.to_tense().unwrap(), Term::g(join(not(var(0)), var(1))));
        let g = Term::g(var(0));
        assert_eq!(g.to_arrows().unwrap(), to(Term::One, var(0)));
        assert!(g.to_tense().is_err());
    }

    #[test]
    fn d_term_translates() {
        // d(x) = x & G(x) & H(x) -> x & (1 -> x) & ~(~x <- 0)
        let d = meet(meet(var(0), Term::g(var(0))), Term::h(var(0)));
        let a = d.to_arrows().unwrap();
        assert_eq!(
            a,
            meet(meet(var(0), to(Term::One, var(0))), not(from(not(var(0)), Term::Zero)))
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_equation("x1 -").is_err());
        assert!(parse_equation("x0 = x1").is_err());
        assert!(parse_equation("x1 = x2 x3").is_err());
    }
}
