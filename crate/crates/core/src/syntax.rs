//! Text syntax for exponential polynomials and operator expressions.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := base ('^' natural)?
//! base    := rational | 'i' | var | 'exp' '(' expr ')' | '(' expr ')'
//! var     := 't' | 'x' natural
//!
//! op      := oterm (('+'|'-') oterm)*
//! oterm   := (scalar '*')* word | scalar
//! word    := gen (' . ' gen)*
//! gen     := 'D' natural | 'A' natural | 'subst' matrix | 'mul(' expr ')' | '1'
//! ```
//!
//! The argument of `exp` must be a linear form without constant term.

use num_traits::{One, Signed, Zero};

use crate::error::ParseError;
use crate::exppoly::{ExpPoly, Frequency};
use crate::matrix::LinearSubst;
use crate::operator::{Generator, OperatorExpr};
use crate::poly::{Monomial, Poly};
use crate::scalar::ExactComplex;

/// Variable indices above this are rejected as overflow.
pub const MAX_VAR: usize = 4096;

const MAX_POWER: u32 = 1 << 16;

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<u8> {
        self.src.get(self.pos + k).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn at_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let end = self.pos + kw.len();
        self.src.len() >= end
            && &self.src[self.pos..end] == kw.as_bytes()
            && !self.src.get(end).is_some_and(|c| c.is_ascii_alphanumeric())
    }

    fn ident_boundary(&self, k: usize) -> bool {
        !self.peek_at(k).is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
    }

    fn natural(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::new(start, "number too large"))
    }

    fn big_natural(&mut self) -> PResult<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn rational(&mut self) -> PResult<ExactComplex> {
        let num = self.big_natural()?;
        let den = if self.peek() == Some(b'/') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let at = self.pos;
            let d = self.big_natural()?;
            if d.is_zero() {
                return Err(ParseError::new(at, "zero denominator"));
            }
            d
        } else {
            num_bigint::BigInt::one()
        };
        Ok(ExactComplex::from_real(num_rational::BigRational::new(num, den)))
    }

    fn var_index(&mut self) -> PResult<Option<usize>> {
        self.skip_ws();
        match self.peek_at(0) {
            Some(b't') if self.ident_boundary(1) => {
                self.pos += 1;
                Ok(Some(0))
            }
            Some(b'x') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => {
                self.pos += 1;
                let at = self.pos;
                let k = self.natural()?;
                if k == 0 {
                    return Err(ParseError::new(at, "space variables start at x1"));
                }
                if k as usize > MAX_VAR {
                    return Err(ParseError::new(at, format!("variable index {k} overflows")));
                }
                Ok(Some(k as usize))
            }
            _ => Ok(None),
        }
    }

    fn expr(&mut self) -> PResult<ExpPoly> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<ExpPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<ExpPoly> {
        let base = self.base()?;
        if self.eat(b'^') {
            let at = self.pos;
            let e = self.natural()?;
            if e > MAX_POWER as u64 {
                return Err(ParseError::new(at, "exponent too large"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn base(&mut self) -> PResult<ExpPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(ExpPoly::constant(self.rational()?)),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'-') => {
                // unary minus inside a product, e.g. `2*-x1`
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'i') if self.ident_boundary(1) => {
                self.pos += 1;
                Ok(ExpPoly::constant(ExactComplex::i()))
            }
            Some(_) if self.at_keyword("exp") => {
                self.pos += 3;
                self.expect(b'(')?;
                let at = self.pos;
                let arg = self.expr()?;
                self.expect(b')')?;
                let freq = linear_form(&arg)
                    .ok_or_else(|| ParseError::new(at, "exponent must be linear in the variables with no constant"))?;
                Ok(ExpPoly::with_frequency(freq, Poly::constant(ExactComplex::one())))
            }
            Some(_) => match self.var_index()? {
                Some(k) => Ok(ExpPoly::var(k)),
                None => Err(self.err("expected number, variable, 'i', 'exp' or '('")),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn finish(&mut self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
        }
    }

    // ---- operators ----

    fn scalar_start(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'(' => true,
            Some(b'i') => self.ident_boundary(1),
            _ => false,
        }
    }

    fn generator_start(&mut self) -> bool {
        match self.peek() {
            Some(b'D') | Some(b'A') => self.peek_at(1).is_some_and(|c| c.is_ascii_digit()),
            _ => self.at_keyword("subst") || self.at_keyword("mul"),
        }
    }

    fn operator(&mut self) -> PResult<OperatorExpr> {
        let mut acc = if self.eat(b'-') {
            self.oterm()?.neg()
        } else {
            self.eat(b'+');
            self.oterm()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.oterm()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.oterm()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn oterm(&mut self) -> PResult<OperatorExpr> {
        let mut coeff = ExactComplex::one();
        let mut saw_scalar = false;
        while self.scalar_start() {
            let at = self.pos;
            let f = self.factor()?;
            let c = f.as_constant().ok_or_else(|| ParseError::new(at, "operator coefficient must be a constant"))?;
            coeff = &coeff * &c;
            saw_scalar = true;
            if !self.eat(b'*') {
                return Ok(OperatorExpr::scalar(coeff));
            }
        }
        if !self.generator_start() {
            return Err(self.err(if saw_scalar { "expected generator after '*'" } else { "expected operator term" }));
        }
        let mut word = vec![self.generator()?];
        while self.eat(b'.') {
            if self.peek() == Some(b'1') && self.ident_boundary(1) {
                self.pos += 1;
                continue;
            }
            word.push(self.generator()?);
        }
        Ok(OperatorExpr::word(word).scale(&coeff))
    }

    fn generator(&mut self) -> PResult<Generator> {
        self.skip_ws();
        match self.peek_at(0) {
            Some(b'D') | Some(b'A') => {
                let kind = self.src[self.pos];
                self.pos += 1;
                let at = self.pos;
                let k = self.natural()? as usize;
                if k > MAX_VAR {
                    return Err(ParseError::new(at, format!("variable index {k} overflows")));
                }
                Ok(if kind == b'D' { Generator::Diff(k) } else { Generator::Int(k) })
            }
            _ if self.at_keyword("subst") => {
                self.pos += 5;
                Ok(Generator::Subst(self.matrix()?))
            }
            _ if self.at_keyword("mul") => {
                self.pos += 3;
                self.expect(b'(')?;
                let f = self.expr()?;
                self.expect(b')')?;
                Ok(Generator::MulBy(f))
            }
            _ => Err(self.err("expected D<i>, A<i>, subst[...] or mul(...)")),
        }
    }

    fn matrix(&mut self) -> PResult<LinearSubst> {
        self.expect(b'[')?;
        let mut rows = Vec::new();
        if self.eat(b']') {
            return Ok(LinearSubst::identity());
        }
        loop {
            self.expect(b'[')?;
            let mut row = Vec::new();
            loop {
                row.push(self.matrix_entry()?);
                if self.eat(b']') {
                    break;
                }
                self.expect(b',')?;
            }
            rows.push(row);
            if self.eat(b']') {
                break;
            }
            self.expect(b',')?;
        }
        let at = self.pos;
        LinearSubst::from_rows(rows).map_err(|e| ParseError::new(at, e.to_string()))
    }

    /// Entries accept the compact scalar notation (`3/2+1/2i`) as well as a
    /// constant expression.
    fn matrix_entry(&mut self) -> PResult<ExactComplex> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        let mut end = start;
        while let Some(&c) = self.src.get(end) {
            match c {
                b'(' => depth += 1,
                b')' => depth = depth.saturating_sub(1),
                b',' | b']' if depth == 0 => break,
                _ => {}
            }
            end += 1;
        }
        let text = std::str::from_utf8(&self.src[start..end]).unwrap();
        if let Ok(c) = text.parse::<ExactComplex>() {
            self.pos = end;
            return Ok(c);
        }
        let e = self.expr()?;
        e.as_constant().ok_or_else(|| ParseError::new(start, "matrix entry must be a constant"))
    }
}

fn linear_form(arg: &ExpPoly) -> Option<Frequency> {
    let p = arg.as_poly()?;
    let mut pairs = Vec::new();
    for (m, c) in p.terms() {
        if m.degree() != 1 {
            return None;
        }
        let k = m.exponents().iter().position(|&e| e == 1)?;
        pairs.push((k, c.clone()));
    }
    Some(Frequency::from_pairs(pairs))
}

pub fn parse_exppoly(text: &str) -> Result<ExpPoly, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_operator(text: &str) -> Result<OperatorExpr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.operator()?;
    p.finish()?;
    Ok(e)
}

// ---- printing ----

fn rational_str(r: &num_rational::BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scalar with nonnegative leading part as a factor; `None` for `1`.
fn scalar_factor(c: &ExactComplex) -> Option<String> {
    if c.is_one() {
        return None;
    }
    let (re, im) = (c.re(), c.im());
    Some(if im.is_zero() {
        rational_str(re)
    } else if re.is_zero() {
        if im.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", rational_str(im))
        }
    } else {
        let sign = if im.is_negative() { '-' } else { '+' };
        let mag = im.abs();
        let imag = if mag.is_one() { "i".to_string() } else { format!("{}*i", rational_str(&mag)) };
        format!("({} {sign} {imag})", rational_str(re))
    })
}

/// Scalar standing on its own, e.g. a coefficient of the identity.
pub fn print_scalar(c: &ExactComplex) -> String {
    if c.is_negative_leading() {
        format!("-{}", scalar_factor(&-c).unwrap_or_else(|| "1".into()))
    } else {
        scalar_factor(c).unwrap_or_else(|| "1".into())
    }
}

fn var_name(k: usize) -> String {
    if k == 0 {
        "t".to_string()
    } else {
        format!("x{k}")
    }
}

fn monomial_str(m: &Monomial) -> Option<String> {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| if e == 1 { var_name(k) } else { format!("{}^{e}", var_name(k)) })
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

/// Joins signed terms as `a + b - c`.
fn join_signed(terms: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (k, (neg, body)) in terms.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

/// Signed product of a coefficient with further factors (which may be empty).
fn signed_product(c: &ExactComplex, factors: Vec<String>) -> (bool, String) {
    let neg = c.is_negative_leading();
    let mag = if neg { -c } else { c.clone() };
    let mut parts = Vec::new();
    parts.extend(scalar_factor(&mag));
    parts.extend(factors);
    if parts.is_empty() {
        parts.push("1".into());
    }
    (neg, parts.join("*"))
}

fn frequency_str(f: &Frequency) -> String {
    let terms = f.entries().rev().map(|(k, lam)| signed_product(lam, vec![var_name(*k)])).collect();
    join_signed(terms)
}

/// Deterministic rendering: exponential groups in descending frequency order,
/// the purely polynomial part last, monomials in descending graded order.
pub fn print_exppoly(u: &ExpPoly) -> String {
    if u.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (freq, poly) in u.groups().rev() {
        let exp = (!freq.is_zero()).then(|| format!("exp({})", frequency_str(freq)));
        for (m, c) in poly.terms().rev() {
            let mut factors: Vec<String> = monomial_str(m).into_iter().collect();
            factors.extend(exp.clone());
            terms.push(signed_product(c, factors));
        }
    }
    join_signed(terms)
}

pub fn print_generator(g: &Generator) -> String {
    match g {
        Generator::Diff(i) => format!("D{i}"),
        Generator::Int(i) => format!("A{i}"),
        Generator::Subst(m) => m.to_string(),
        Generator::MulBy(f) => format!("mul({})", print_exppoly(f)),
    }
}

pub fn print_operator(op: &OperatorExpr) -> String {
    if op.is_zero() {
        return "0".to_string();
    }
    let terms = op
        .terms()
        .map(|(word, c)| {
            let body = if word.is_empty() {
                Vec::new()
            } else {
                vec![word.iter().map(print_generator).collect::<Vec<_>>().join(" . ")]
            };
            signed_product(c, body)
        })
        .collect();
    join_signed(terms)
}
