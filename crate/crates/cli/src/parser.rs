//! Expression parser for the symbolic engine.
//!
//! A small Pratt parser over atoms `a b c q t`, the sl3 tags `e1..f3`, the
//! sl2 tags `e h f` with central `K`, the loop centrals `K1 K2`, the
//! Virasoro constructor `L(...)`, rational literals, and the operators
//! `+ - * ^` with parentheses. `q` is a first-class token; juxtaposition
//! multiplies, so the canonical print form parses back verbatim.

use std::fmt;

use genkac_core::coeff::{self, Coeff};
use genkac_core::funm::FunM;
use genkac_core::gv::GvElem;
use genkac_core::sl2::{AffineSl2, Laurent, Sl2Tag};
use genkac_core::sl3::{Sl3Elem, Sl3Tag};
use genkac_core::vir::VirElem;
use num_traits::Zero;

/// Parse/evaluation errors; all map to the usage exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { pos: usize, expected: String },
    NegativeExponent(String),
    UnknownSymbol(String),
    Type(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, expected } => {
                write!(f, "syntax error at position {}: expected {}", pos, expected)
            }
            ParseError::NegativeExponent(what) => {
                write!(f, "negative exponent on a non-invertible element: {}", what)
            }
            ParseError::UnknownSymbol(s) => write!(f, "unknown symbol: {}", s),
            ParseError::Type(msg) => write!(f, "type error: {}", msg),
        }
    }
}

type PResult<T> = Result<T, ParseError>;

/// A parsed, normalized value.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Value {
    Rat(Coeff),
    Fun(FunM),
    Sl3(Sl3Elem),
    Gv(GvElem),
    Vir(VirElem),
    Lau(Laurent),
    Sl2(AffineSl2),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rat(c) => write!(f, "{}", coeff::display(c)),
            Value::Fun(x) => write!(f, "{}", x),
            Value::Sl3(x) => write!(f, "{}", x),
            Value::Gv(x) => write!(f, "{}", x),
            Value::Vir(x) => write!(f, "{}", x),
            Value::Lau(x) => write!(f, "{}", x),
            Value::Sl2(x) => write!(f, "{}", x),
        }
    }
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Rat(_) => "rational",
            Value::Fun(_) => "function",
            Value::Sl3(_) => "sl3 element",
            Value::Gv(_) => "loop-algebra element",
            Value::Vir(_) => "Virasoro element",
            Value::Lau(_) => "Laurent polynomial",
            Value::Sl2(_) => "affine sl2 element",
        }
    }

    pub fn into_fun(self) -> PResult<FunM> {
        match self {
            Value::Fun(f) => Ok(f),
            Value::Rat(c) => Ok(FunM::one().scale(&c)),
            other => Err(ParseError::Type(format!(
                "expected a function, got a {}",
                other.type_name()
            ))),
        }
    }

    pub fn into_gv(self) -> PResult<GvElem> {
        match self {
            Value::Gv(g) => Ok(g),
            Value::Sl3(a) => Ok(GvElem::tensor_elem(&a, &FunM::one())),
            other => Err(ParseError::Type(format!(
                "expected a loop-algebra element, got a {}",
                other.type_name()
            ))),
        }
    }

    pub fn into_sl3(self) -> PResult<Sl3Elem> {
        match self {
            Value::Sl3(a) => Ok(a),
            other => Err(ParseError::Type(format!(
                "expected an sl3 element, got a {}",
                other.type_name()
            ))),
        }
    }

    pub fn into_vir(self) -> PResult<VirElem> {
        match self {
            Value::Vir(v) => Ok(v),
            other => Err(ParseError::Type(format!(
                "expected a Virasoro element, got a {}",
                other.type_name()
            ))),
        }
    }

    pub fn into_lau(self) -> PResult<Laurent> {
        match self {
            Value::Lau(l) => Ok(l),
            Value::Rat(c) => Ok(Laurent::one().scale(&c)),
            other => Err(ParseError::Type(format!(
                "expected a Laurent polynomial, got a {}",
                other.type_name()
            ))),
        }
    }

    pub fn into_sl2(self) -> PResult<AffineSl2> {
        match self {
            Value::Sl2(x) => Ok(x),
            other => Err(ParseError::Type(format!(
                "expected an affine sl2 element, got a {}",
                other.type_name()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    src_len: usize,
}

fn lex(src: &str) -> PResult<Lexer> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let v: i64 = text.parse().map_err(|_| ParseError::Syntax {
                    pos: start,
                    expected: "an integer literal that fits 64 bits".into(),
                })?;
                tokens.push((start, Token::Int(v)));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    expected: format!("a token, found {:?}", ch),
                })
            }
        }
    }
    Ok(Lexer {
        tokens,
        pos: 0,
        src_len: src.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn peek_pos(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.src_len, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, token: Token, what: &str) -> PResult<()> {
        if self.peek() == Some(&token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.peek_pos(),
                expected: what.into(),
            })
        }
    }
}

const BP_ADD: u8 = 1;
const BP_MUL: u8 = 3;
const BP_PREFIX: u8 = 5;
const BP_POW: u8 = 7;

fn parse_expr(lx: &mut Lexer, min_bp: u8) -> PResult<Value> {
    let mut lhs = parse_prefix(lx)?;
    loop {
        let (lbp, op) = match lx.peek() {
            Some(Token::Plus) => (BP_ADD, Some(Token::Plus)),
            Some(Token::Minus) => (BP_ADD, Some(Token::Minus)),
            Some(Token::Star) => (BP_MUL, Some(Token::Star)),
            Some(Token::Caret) => (BP_POW, Some(Token::Caret)),
            // Juxtaposition multiplies.
            Some(Token::Int(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => (BP_MUL, None),
            _ => break,
        };
        if lbp < min_bp {
            break;
        }
        match op {
            Some(Token::Caret) => {
                lx.next();
                let exp = parse_exponent(lx)?;
                lhs = pow_value(lhs, exp)?;
            }
            Some(tok) => {
                lx.next();
                let rhs = parse_expr(lx, lbp + 1)?;
                lhs = match tok {
                    Token::Plus => add_values(lhs, rhs)?,
                    Token::Minus => add_values(lhs, neg_value(rhs))?,
                    Token::Star => mul_values(lhs, rhs)?,
                    _ => unreachable!(),
                };
            }
            None => {
                let rhs = parse_expr(lx, BP_MUL + 1)?;
                lhs = mul_values(lhs, rhs)?;
            }
        }
    }
    Ok(lhs)
}

fn parse_exponent(lx: &mut Lexer) -> PResult<i64> {
    let negative = if lx.peek() == Some(&Token::Minus) {
        lx.next();
        true
    } else {
        false
    };
    match lx.next() {
        Some(Token::Int(v)) => Ok(if negative { -v } else { v }),
        _ => Err(ParseError::Syntax {
            pos: lx.peek_pos(),
            expected: "an integer exponent".into(),
        }),
    }
}

fn parse_prefix(lx: &mut Lexer) -> PResult<Value> {
    match lx.peek() {
        Some(Token::Minus) => {
            lx.next();
            let v = parse_expr(lx, BP_PREFIX)?;
            Ok(neg_value(v))
        }
        _ => parse_atom(lx),
    }
}

fn parse_atom(lx: &mut Lexer) -> PResult<Value> {
    let pos = lx.peek_pos();
    match lx.next() {
        Some(Token::Int(v)) => {
            // Rational literal `int/int`.
            if lx.peek() == Some(&Token::Slash) {
                lx.next();
                match lx.next() {
                    Some(Token::Int(d)) if d != 0 => Ok(Value::Rat(coeff::rat(v, d))),
                    _ => Err(ParseError::Syntax {
                        pos: lx.peek_pos(),
                        expected: "a nonzero integer denominator".into(),
                    }),
                }
            } else {
                Ok(Value::Rat(coeff::int(v)))
            }
        }
        Some(Token::LParen) => {
            let v = parse_expr(lx, 0)?;
            lx.expect(Token::RParen, "a closing parenthesis")?;
            Ok(v)
        }
        Some(Token::Ident(name)) => atom_value(lx, &name),
        _ => Err(ParseError::Syntax {
            pos,
            expected: "an expression".into(),
        }),
    }
}

fn atom_value(lx: &mut Lexer, name: &str) -> PResult<Value> {
    match name {
        "a" => Ok(Value::Fun(FunM::var_a())),
        "b" => Ok(Value::Fun(FunM::var_b())),
        "c" => Ok(Value::Fun(FunM::var_c())),
        "q" => Ok(Value::Fun(FunM::var_q())),
        "t" => Ok(Value::Lau(Laurent::monomial(1))),
        "K" => Ok(Value::Sl2(AffineSl2::central(coeff::int(1)))),
        "K1" => Ok(Value::Gv(GvElem::k1())),
        "K2" => Ok(Value::Gv(GvElem::k2())),
        "e" => Ok(Value::Sl2(AffineSl2::tensor(Sl2Tag::E, Laurent::one()))),
        "h" => Ok(Value::Sl2(AffineSl2::tensor(Sl2Tag::H, Laurent::one()))),
        "f" => Ok(Value::Sl2(AffineSl2::tensor(Sl2Tag::F, Laurent::one()))),
        "L" => {
            lx.expect(Token::LParen, "( after L")?;
            let arg = parse_expr(lx, 0)?;
            lx.expect(Token::RParen, "a closing parenthesis")?;
            Ok(Value::Vir(VirElem::new(arg.into_fun()?)))
        }
        _ => {
            if let Some(tag) = Sl3Tag::from_name(name) {
                Ok(Value::Sl3(Sl3Elem::basis(tag)))
            } else {
                Err(ParseError::UnknownSymbol(name.to_string()))
            }
        }
    }
}

fn neg_value(v: Value) -> Value {
    let m1 = coeff::int(-1);
    match v {
        Value::Rat(c) => Value::Rat(-c),
        Value::Fun(f) => Value::Fun(f.neg()),
        Value::Sl3(x) => Value::Sl3(x.neg()),
        Value::Gv(x) => Value::Gv(x.scale(&m1)),
        Value::Vir(x) => Value::Vir(x.scale(&m1)),
        Value::Lau(x) => Value::Lau(x.scale(&m1)),
        Value::Sl2(x) => Value::Sl2(x.scale(&m1)),
    }
}

fn add_values(lhs: Value, rhs: Value) -> PResult<Value> {
    use Value::*;
    Ok(match (lhs, rhs) {
        (Rat(x), Rat(y)) => Rat(x + y),
        (Rat(x), Fun(y)) | (Fun(y), Rat(x)) => Fun(y.add(&FunM::one().scale(&x))),
        (Fun(x), Fun(y)) => Fun(x.add(&y)),
        (Rat(x), Lau(y)) | (Lau(y), Rat(x)) => Lau(y.add(&Laurent::one().scale(&x))),
        (Lau(x), Lau(y)) => Lau(x.add(&y)),
        (Sl3(x), Sl3(y)) => Sl3(x.add(&y)),
        (Gv(x), Gv(y)) => Gv(x.add(&y)),
        (Sl3(x), Gv(y)) | (Gv(y), Sl3(x)) => Gv(GvElem::tensor_elem(&x, &FunM::one()).add(&y)),
        (Vir(x), Vir(y)) => Vir(x.add(&y)),
        (Sl2(x), Sl2(y)) => Sl2(x.add(&y)),
        (l, r) => {
            return Err(ParseError::Type(format!(
                "cannot add a {} and a {}",
                l.type_name(),
                r.type_name()
            )))
        }
    })
}

fn mul_values(lhs: Value, rhs: Value) -> PResult<Value> {
    use Value::*;
    Ok(match (lhs, rhs) {
        (Rat(x), Rat(y)) => Rat(x * y),
        (Rat(x), v) | (v, Rat(x)) => scale_value(v, &x),
        (Fun(x), Fun(y)) => Fun(x.mul(&y)),
        (Sl3(x), Fun(y)) | (Fun(y), Sl3(x)) => Gv(GvElem::tensor_elem(&x, &y)),
        (Lau(x), Lau(y)) => Lau(x.mul(&y)),
        (Sl2(x), Lau(y)) | (Lau(y), Sl2(x)) => {
            if !x.central.is_zero() {
                return Err(ParseError::Type(
                    "cannot multiply the sl2 central by a Laurent polynomial".into(),
                ));
            }
            let mut out = AffineSl2::zero();
            for (tag, f) in x.terms() {
                out.add_tensor(*tag, f.mul(&y));
            }
            Sl2(out)
        }
        (l, r) => {
            return Err(ParseError::Type(format!(
                "cannot multiply a {} and a {}",
                l.type_name(),
                r.type_name()
            )))
        }
    })
}

fn scale_value(v: Value, s: &Coeff) -> Value {
    match v {
        Value::Rat(c) => Value::Rat(c * s),
        Value::Fun(f) => Value::Fun(f.scale(s)),
        Value::Sl3(x) => Value::Sl3(x.scale(s)),
        Value::Gv(x) => Value::Gv(x.scale(s)),
        Value::Vir(x) => Value::Vir(x.scale(s)),
        Value::Lau(x) => Value::Lau(x.scale(s)),
        Value::Sl2(x) => Value::Sl2(x.scale(s)),
    }
}

fn pow_value(v: Value, exp: i64) -> PResult<Value> {
    match v {
        Value::Rat(c) => coeff::pow(&c, exp)
            .map(Value::Rat)
            .ok_or_else(|| ParseError::NegativeExponent("zero".into())),
        Value::Fun(f) => f
            .pow(exp)
            .map(Value::Fun)
            .map_err(|e| ParseError::NegativeExponent(format!("{}", e))),
        Value::Lau(l) => l
            .pow(exp)
            .map(Value::Lau)
            .map_err(|e| ParseError::NegativeExponent(format!("{}", e))),
        other => Err(ParseError::Type(format!(
            "cannot raise a {} to a power",
            other.type_name()
        ))),
    }
}

/// Parses a source expression to a normalized value.
pub fn parse(src: &str) -> PResult<Value> {
    let mut lx = lex(src)?;
    if lx.peek().is_none() {
        return Err(ParseError::Syntax {
            pos: 0,
            expected: "a nonempty expression".into(),
        });
    }
    let v = parse_expr(&mut lx, 0)?;
    if lx.peek().is_some() {
        return Err(ParseError::Syntax {
            pos: lx.peek_pos(),
            expected: "end of input".into(),
        });
    }
    Ok(v)
}

/// Parses a comma-separated rational triple, e.g. `1/2,-3,5`.
pub fn parse_point(src: &str) -> PResult<(Coeff, Coeff, Coeff)> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 3 {
        return Err(ParseError::Syntax {
            pos: 0,
            expected: "three comma-separated rationals".into(),
        });
    }
    let mut vals = Vec::new();
    for p in parts {
        match parse(p.trim())? {
            Value::Rat(c) => vals.push(c),
            _ => {
                return Err(ParseError::Syntax {
                    pos: 0,
                    expected: "a rational coordinate".into(),
                })
            }
        }
    }
    let c = vals.pop().unwrap();
    let b = vals.pop().unwrap();
    let a = vals.pop().unwrap();
    Ok((a, b, c))
}
