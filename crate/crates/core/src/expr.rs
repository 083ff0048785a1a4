//! Expression syntax shared by the CLI and the file formats.
//!
//! Integers, `x`, `y`, declared parameters, `Dx`, `Dy`, `+ - * / ^` and
//! parentheses; `^` takes a nonnegative integer exponent. Printing always
//! uses explicit `*` and re-parses to the same value.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{FieldSpec, Poly, Rat, RatFunc};
use crate::ore::{OreOperator, OreSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{msg} at offset {offset}")]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(s[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError { offset: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

#[derive(Clone)]
enum Value {
    Scalar(RatFunc),
    Op(OreOperator),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    field: &'a FieldSpec,
    spec: Option<&'a OreSpec>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let offset = self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end);
        Err(ParseError { offset, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, false);
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, true);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs);
            } else if self.eat('/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = match (acc, rhs) {
                    (lhs, Value::Scalar(d)) => {
                        let inv = match d.inv() {
                            Ok(inv) => inv,
                            Err(_) => {
                                self.pos = at;
                                return self.err("division by zero");
                            }
                        };
                        self.mul(lhs, Value::Scalar(inv))
                    }
                    (_, Value::Op(_)) => {
                        self.pos = at;
                        return self.err("cannot divide by an operator");
                    }
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(match v {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Op(o) => Value::Op(-&o),
            });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = match self.peek() {
            Some(Tok::Int(n)) => match u32::try_from(n.clone()) {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            },
            _ => return self.err("expected a nonnegative integer exponent"),
        };
        self.pos += 1;
        Ok(match base {
            Value::Scalar(s) => Value::Scalar(s.pow(e)),
            Value::Op(o) => {
                let mut acc = Value::Scalar(RatFunc::one());
                for _ in 0..e {
                    acc = self.mul(acc, Value::Op(o.clone()));
                }
                acc
            }
        })
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of expression"),
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Value::Scalar(RatFunc::from_rat(Rat::from_integer(n))))
            }
            Tok::Ident(name) => {
                if name == "Dx" || name == "Dy" {
                    if self.spec.is_none() {
                        return self.err(format!("operator `{name}` not allowed here"));
                    }
                    self.pos += 1;
                    return Ok(Value::Op(if name == "Dx" { OreOperator::dx() } else { OreOperator::dy() }));
                }
                match self.field.lookup(&name) {
                    Some(v) => {
                        self.pos += 1;
                        Ok(Value::Scalar(RatFunc::var(v)))
                    }
                    None => self.err(format!("unknown symbol `{name}`")),
                }
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            Tok::Sym(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn add(&self, a: Value, b: Value, negate: bool) -> Value {
        match (a, b) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(if negate { &a - &b } else { &a + &b }),
            (a, b) => {
                let (a, b) = (to_op(a), to_op(b));
                Value::Op(if negate { &a - &b } else { &a + &b })
            }
        }
    }

    fn mul(&self, a: Value, b: Value) -> Value {
        match (a, b) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a * &b),
            (Value::Scalar(a), Value::Op(b)) => Value::Op(b.scale_left(&a)),
            (a, b) => {
                let spec = self.spec.expect("operators only parse with a spec");
                Value::Op(to_op(a).mul(&to_op(b), spec))
            }
        }
    }
}

fn to_op(v: Value) -> OreOperator {
    match v {
        Value::Scalar(s) => OreOperator::from_coeff(s),
        Value::Op(o) => o,
    }
}

fn parse_value(
    s: &str,
    field: &FieldSpec,
    spec: Option<&OreSpec>,
) -> Result<Value, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, end: s.len(), field, spec };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

pub fn parse_ratfunc(s: &str, field: &FieldSpec) -> Result<RatFunc, ParseError> {
    match parse_value(s, field, None)? {
        Value::Scalar(r) => Ok(r),
        Value::Op(_) => unreachable!("operators are rejected without a spec"),
    }
}

pub fn parse_poly(s: &str, field: &FieldSpec) -> Result<Poly, ParseError> {
    let r = parse_ratfunc(s, field)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(ParseError { offset: 0, msg: "expected a polynomial".into() }),
    }
}

pub fn parse_operator(s: &str, field: &FieldSpec, spec: &OreSpec) -> Result<OreOperator, ParseError> {
    Ok(to_op(parse_value(s, field, Some(spec))?))
}

pub fn format_poly(p: &Poly, field: &FieldSpec) -> String {
    p.to_string_with(&|v| field.var_name(v))
}

pub fn format_ratfunc(r: &RatFunc, field: &FieldSpec) -> String {
    if r.is_poly() {
        format_poly(r.num(), field)
    } else {
        format!("({})/({})", format_poly(r.num(), field), format_poly(r.den(), field))
    }
}

fn dpow(name: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    }
}

/// Operator terms by descending `(i, j)`, coefficients parenthesized unless
/// they are rational constants.
pub fn format_operator(op: &OreOperator, field: &FieldSpec) -> String {
    if op.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (&(i, j), c)) in op.terms().iter().rev().enumerate() {
        let ds: Vec<String> = [dpow("Dx", i), dpow("Dy", j)].into_iter().flatten().collect();
        let (neg, coeff) = match c.constant_value() {
            Some(q) => {
                let text = if q.abs().is_one() && !ds.is_empty() { None } else { Some(q.abs().to_string()) };
                (q.is_negative(), text)
            }
            None if c.is_poly() && c.num().num_terms() == 1 => (false, Some(format_ratfunc(c, field))),
            None => (false, Some(format!("({})", format_ratfunc(c, field)))),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let parts: Vec<String> = coeff.into_iter().chain(ds).collect();
        out.push_str(&parts.join("*"));
    }
    out
}
