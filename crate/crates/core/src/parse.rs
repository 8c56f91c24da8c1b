//! Text syntax for forms, maps, points, places and scalars.
//!
//! Form expressions are built from integer literals, the variables x0 and
//! x1, and (over a function field) the generator t, with the operators
//! + - * / ^ and parentheses. Division is only by scalar subexpressions.
//! Examples: "2*x0^2 - 3*x0*x1 + x1^2", "(t^2+1)*x0 - x1/2".
//!
//! Maps are written "[F0 : F1]". Point tuples are comma-separated affine
//! values (scalar expressions) with "inf" for the point at infinity, or
//! projective pairs "[a : b]". Places are primes over Q, polynomials in t
//! over F_p(t), and "inf" for the infinite place.

use crate::divisors::{PointTuple, ProjPoint};
use crate::exactalg::{BaseField, FieldElement, Place};
use crate::forms::BinaryForm;
use crate::fppoly::FpPoly;
use crate::ratmap::RationalMapModel;
use num_bigint::BigInt;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("parse error: {0}")]
    Syntax(String),
    #[error("expression is not homogeneous")]
    NotHomogeneous,
    #[error("expression is not a scalar")]
    NotScalar,
    #[error("division by a non-scalar or zero expression")]
    BadDivision,
    #[error("invalid place: {0}")]
    BadPlace(String),
    #[error("invalid point: {0}")]
    BadPoint(String),
}

/// Bivariate polynomial in (x0, x1) over K, the intermediate value of the
/// expression parser.
#[derive(Clone, Debug)]
struct BiPoly {
    base: BaseField,
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl BiPoly {
    fn scalar(base: BaseField, c: FieldElement) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((0, 0), c);
        }
        BiPoly { base, terms: t }
    }

    fn var(base: BaseField, which: usize) -> Self {
        let mut t = BTreeMap::new();
        let key = if which == 0 { (1, 0) } else { (0, 1) };
        t.insert(key, FieldElement::one_in(base));
        BiPoly { base, terms: t }
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut t = self.terms.clone();
        for (k, v) in &rhs.terms {
            let entry = t
                .entry(*k)
                .or_insert_with(|| FieldElement::zero_in(self.base));
            *entry = entry.add(v);
        }
        t.retain(|_, v| !v.is_zero());
        BiPoly {
            base: self.base,
            terms: t,
        }
    }

    fn neg(&self) -> Self {
        BiPoly {
            base: self.base,
            terms: self.terms.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut t: BTreeMap<(u32, u32), FieldElement> = BTreeMap::new();
        for ((a1, b1), v1) in &self.terms {
            for ((a2, b2), v2) in &rhs.terms {
                let k = (a1 + a2, b1 + b2);
                let entry = t
                    .entry(k)
                    .or_insert_with(|| FieldElement::zero_in(self.base));
                *entry = entry.add(&v1.mul(v2));
            }
        }
        t.retain(|_, v| !v.is_zero());
        BiPoly {
            base: self.base,
            terms: t,
        }
    }

    fn as_scalar(&self) -> Result<FieldElement, ParseError> {
        if self.terms.is_empty() {
            return Ok(FieldElement::zero_in(self.base));
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Ok(c.clone());
            }
        }
        Err(ParseError::NotScalar)
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::scalar(self.base, FieldElement::one_in(self.base));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn into_form(self) -> Result<BinaryForm, ParseError> {
        if self.terms.is_empty() {
            return Err(ParseError::Syntax("the zero form is not allowed".into()));
        }
        let degree = self
            .terms
            .keys()
            .map(|(a, b)| a + b)
            .max()
            .unwrap();
        if self.terms.keys().any(|(a, b)| a + b != degree) {
            return Err(ParseError::NotHomogeneous);
        }
        let mut coeffs =
            vec![FieldElement::zero_in(self.base); degree as usize + 1];
        for ((a, b), v) in self.terms {
            let _ = a;
            coeffs[b as usize] = v;
        }
        Ok(BinaryForm::new(coeffs))
    }
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.bump() {
            Some(x) if x == c => Ok(()),
            _ => Err(ParseError::Syntax(format!(
                "expected '{c}' in \"{}\"",
                self.src
            ))),
        }
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::Syntax(format!(
                "expected a number at position {start} in \"{}\"",
                self.src
            )));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>()
            .map_err(|_| ParseError::Syntax(format!("bad integer literal {s}")))
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }
}

fn parse_expr(lx: &mut Lexer, base: BaseField) -> Result<BiPoly, ParseError> {
    let mut acc = parse_term(lx, base)?;
    loop {
        match lx.peek() {
            Some('+') => {
                lx.bump();
                acc = acc.add(&parse_term(lx, base)?);
            }
            Some('-') => {
                lx.bump();
                acc = acc.add(&parse_term(lx, base)?.neg());
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(lx: &mut Lexer, base: BaseField) -> Result<BiPoly, ParseError> {
    let mut acc = parse_unary(lx, base)?;
    loop {
        match lx.peek() {
            Some('*') => {
                lx.bump();
                acc = acc.mul(&parse_unary(lx, base)?);
            }
            Some('/') => {
                lx.bump();
                let d = parse_unary(lx, base)?.as_scalar().map_err(|_| ParseError::BadDivision)?;
                if d.is_zero() {
                    return Err(ParseError::BadDivision);
                }
                acc = acc.mul(&BiPoly::scalar(base, d.inv()));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_unary(lx: &mut Lexer, base: BaseField) -> Result<BiPoly, ParseError> {
    if lx.peek() == Some('-') {
        lx.bump();
        return Ok(parse_unary(lx, base)?.neg());
    }
    if lx.peek() == Some('+') {
        lx.bump();
        return parse_unary(lx, base);
    }
    parse_atom_with_power(lx, base)
}

fn parse_atom_with_power(lx: &mut Lexer, base: BaseField) -> Result<BiPoly, ParseError> {
    let atom = parse_atom(lx, base)?;
    if lx.peek() == Some('^') {
        lx.bump();
        let e = lx.number()?;
        let e: u32 = e
            .try_into()
            .map_err(|_| ParseError::Syntax("exponent out of range".into()))?;
        return Ok(atom.pow(e));
    }
    Ok(atom)
}

fn parse_atom(lx: &mut Lexer, base: BaseField) -> Result<BiPoly, ParseError> {
    match lx.peek() {
        Some('(') => {
            lx.bump();
            let inner = parse_expr(lx, base)?;
            lx.expect(')')?;
            Ok(inner)
        }
        Some('x') => {
            lx.bump();
            match lx.bump() {
                Some('0') => Ok(BiPoly::var(base, 0)),
                Some('1') => Ok(BiPoly::var(base, 1)),
                _ => Err(ParseError::Syntax("expected x0 or x1".into())),
            }
        }
        Some('t') => {
            lx.bump();
            match base {
                BaseField::FunctionField { p } => Ok(BiPoly::scalar(
                    base,
                    FieldElement::from_fppoly(FpPoly::gen(p)),
                )),
                BaseField::Rationals => Err(ParseError::Syntax(
                    "the generator t needs a function-field base (use --field p,t)".into(),
                )),
            }
        }
        Some(c) if c.is_ascii_digit() => {
            let n = lx.number()?;
            let val = match base {
                BaseField::Rationals => FieldElement::from_bigint(n),
                BaseField::FunctionField { p } => {
                    let m = BigInt::from(p);
                    let r = ((&n % &m) + &m) % &m;
                    let digits = r.to_u64_digits().1;
                    FieldElement::from_fppoly(FpPoly::constant(
                        p,
                        digits.first().copied().unwrap_or(0),
                    ))
                }
            };
            Ok(BiPoly::scalar(base, val))
        }
        other => Err(ParseError::Syntax(format!(
            "unexpected token {other:?} in \"{}\"",
            lx.src
        ))),
    }
}

/// Parses a scalar expression (no x0, x1).
pub fn parse_scalar(src: &str, base: BaseField) -> Result<FieldElement, ParseError> {
    let mut lx = Lexer::new(src);
    let v = parse_expr(&mut lx, base)?;
    if !lx.done() {
        return Err(ParseError::Syntax(format!("trailing input in \"{src}\"")));
    }
    v.as_scalar()
}

/// Parses a homogeneous form expression in x0, x1.
pub fn parse_form(src: &str, base: BaseField) -> Result<BinaryForm, ParseError> {
    let mut lx = Lexer::new(src);
    let v = parse_expr(&mut lx, base)?;
    if !lx.done() {
        return Err(ParseError::Syntax(format!("trailing input in \"{src}\"")));
    }
    v.into_form()
}

/// Splits at top level (outside any parentheses or brackets) on `sep`.
fn split_top_level(src: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in src.chars() {
        match c {
            '(' | '[' => {
                depth += 1;
                cur.push(c);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(c);
            }
            c if c == sep && depth == 0 => {
                out.push(cur.clone());
                cur.clear();
            }
            c => cur.push(c),
        }
    }
    out.push(cur);
    out
}

/// Parses "[F0 : F1]" (brackets optional).
pub fn parse_map(src: &str, base: BaseField) -> Result<RationalMapModel, ParseError> {
    let inner = src.trim();
    let inner = inner
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(inner);
    let parts = split_top_level(inner, ':');
    if parts.len() != 2 {
        return Err(ParseError::Syntax(
            "a map needs exactly two components separated by ':'".into(),
        ));
    }
    let f0 = parse_form(&parts[0], base)?;
    let f1 = parse_form(&parts[1], base)?;
    RationalMapModel::new(f0, f1).map_err(|e| ParseError::Syntax(e.to_string()))
}

/// Parses a place: a prime over Q, a polynomial in t (made monic) or "inf"
/// over a function field.
pub fn parse_place(src: &str, base: BaseField) -> Result<Place, ParseError> {
    let s = src.trim();
    match base {
        BaseField::Rationals => {
            let n = parse_scalar(s, base)?;
            let r = n.as_rat();
            if !num_traits::One::is_one(r.denom()) {
                return Err(ParseError::BadPlace(s.into()));
            }
            Place::prime(r.numer().magnitude().clone())
                .map_err(|e| ParseError::BadPlace(format!("{s}: {e}")))
        }
        BaseField::FunctionField { .. } => {
            if s == "inf" {
                return Ok(Place::fn_infinity(match base {
                    BaseField::FunctionField { p } => p,
                    _ => unreachable!(),
                }));
            }
            let v = parse_scalar(s, base)?;
            let f = v.as_fn();
            if !f.den().is_one() {
                return Err(ParseError::BadPlace(s.into()));
            }
            Place::fn_finite(f.num().monic())
                .map_err(|e| ParseError::BadPlace(format!("{s}: {e}")))
        }
    }
}

/// Parses a comma-separated list of places; the empty string is the empty
/// set.
pub fn parse_places(src: &str, base: BaseField) -> Result<Vec<Place>, ParseError> {
    let s = src.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in split_top_level(s, ',') {
        out.push(parse_place(&part, base)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Parses a single point: "inf", an affine scalar expression, or "[a : b]".
pub fn parse_point(src: &str, base: BaseField) -> Result<ProjPoint, ParseError> {
    let s = src.trim();
    if s == "inf" {
        return Ok(ProjPoint::infinity(base));
    }
    if let Some(body) = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
        let parts = split_top_level(body, ':');
        if parts.len() != 2 {
            return Err(ParseError::BadPoint(s.into()));
        }
        let a = parse_scalar(&parts[0], base)?;
        let b = parse_scalar(&parts[1], base)?;
        if a.is_zero() && b.is_zero() {
            return Err(ParseError::BadPoint(s.into()));
        }
        return Ok(ProjPoint::new(a, b));
    }
    Ok(ProjPoint::from_affine(parse_scalar(s, base)?))
}

/// Parses a comma-separated tuple of at least three distinct points.
pub fn parse_point_tuple(src: &str, base: BaseField) -> Result<PointTuple, ParseError> {
    let mut pts = Vec::new();
    for part in split_top_level(src.trim(), ',') {
        pts.push(parse_point(&part, base)?);
    }
    PointTuple::new(pts).map_err(|e| ParseError::BadPoint(e.to_string()))
}

/// Parses "--field p,t" style descriptors.
pub fn parse_field(src: &str) -> Result<BaseField, ParseError> {
    let parts: Vec<&str> = src.split(',').map(|s| s.trim()).collect();
    if parts.len() != 2 || parts[1] != "t" {
        return Err(ParseError::Syntax(format!(
            "field descriptor must look like \"p,t\", got \"{src}\""
        )));
    }
    let p: u64 = parts[0]
        .parse()
        .map_err(|_| ParseError::Syntax(format!("bad characteristic {}", parts[0])))?;
    BaseField::function_field(p).map_err(|e| ParseError::Syntax(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::resultant;

    #[test]
    fn parse_rational_forms() {
        let base = BaseField::Rationals;
        let f = parse_form("2*x0^2 - 3*x0*x1 + x1^2", base).unwrap();
        assert_eq!(f, BinaryForm::from_ints(base, &[2, -3, 1]));
        let g = parse_form("x0^2/2 + x1^2/2", base).unwrap();
        assert_eq!(g.coeff(0), &FieldElement::from_ratio(1.into(), 2.into()));
        assert!(matches!(
            parse_form("x0 + 1", base),
            Err(ParseError::NotHomogeneous)
        ));
        assert!(parse_form("x0 + ", base).is_err());
        let neg = parse_form("-x0*(x0 - x1)", base).unwrap();
        assert_eq!(neg, BinaryForm::from_ints(base, &[-1, 1, 0]));
    }

    #[test]
    fn parse_function_field_forms() {
        let base = BaseField::function_field(3).unwrap();
        let f = parse_form("t*x0 + t^2*x1", base).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.coeff(0).to_string(), "t");
        assert_eq!(f.coeff(1).to_string(), "t^2");
        assert!(parse_form("t*x0", BaseField::Rationals).is_err());
    }

    #[test]
    fn parse_maps_and_places() {
        let base = BaseField::Rationals;
        let m = parse_map("[x0^2 - x1^2 : 2*x0*x1]", base).unwrap();
        assert_eq!(m.degree(), 2);
        assert!(!resultant(m.forms().0, m.forms().1).unwrap().is_zero());
        let p = parse_place("7", base).unwrap();
        assert_eq!(p, Place::prime_u64(7).unwrap());
        assert!(parse_place("6", base).is_err());
        let ff = BaseField::function_field(5).unwrap();
        let v = parse_place("t^2+2", ff).unwrap();
        assert!(matches!(v, Place::FnFinite(_)));
        assert!(matches!(
            parse_place("inf", ff).unwrap(),
            Place::FnInfinity { .. }
        ));
        let s = parse_places("2, 3, 5", base).unwrap();
        assert_eq!(s.len(), 3);
        assert!(parse_places("", base).unwrap().is_empty());
    }

    #[test]
    fn parse_points_examples() {
        let base = BaseField::Rationals;
        let t = parse_point_tuple("0, 1, inf, 5/2", base).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.points()[2].is_infinity());
        let pr = parse_point("[3 : 4]", base).unwrap();
        assert_eq!(
            pr,
            ProjPoint::from_affine(FieldElement::from_ratio(3.into(), 4.into()))
        );
        assert!(parse_point_tuple("0, 0, 1", base).is_err());
    }
}
