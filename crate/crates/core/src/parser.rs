//! Equation text to `EquationSpec`.
//!
//! ```text
//! equation := "F" "^" INT "=" expr
//! expr     := term (("+"|"-") term)*
//! term     := factor (("*"|"/") factor)*
//! factor   := base ("^" INT)?
//! base     := "f" | "z" | INT | "i" | "eta" | "sqrt2" | "sqrt3" | "(" expr ")" | "-" factor
//! ```
//!
//! `F` is f(z+1), `f` is f(z).

use crate::algebra::{Cyclo24, FPoly, RatZ};
use crate::equation::EquationSpec;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    BigF,
    SmallF,
    Z,
    Int(u64),
    Const(&'static str),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let start = k;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                k += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{00b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            '0'..='9' => {
                let mut v: u64 = 0;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[k].to_digit(10).unwrap() as u64))
                        .ok_or(ParseError::Syntax {
                            pos: start,
                            msg: "integer literal too large".into(),
                        })?;
                    k += 1;
                }
                out.push((start, Tok::Int(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut w = String::new();
                while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                    w.push(chars[k]);
                    k += 1;
                }
                let t = match w.as_str() {
                    "F" => Tok::BigF,
                    "f" => Tok::SmallF,
                    "z" => Tok::Z,
                    "i" => Tok::Const("i"),
                    "eta" => Tok::Const("eta"),
                    "sqrt2" => Tok::Const("sqrt2"),
                    "sqrt3" => Tok::Const("sqrt3"),
                    _ => {
                        return Err(ParseError::Syntax {
                            pos: start,
                            msg: format!("unknown identifier '{}'", w),
                        })
                    }
                };
                out.push((start, t));
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{}'", c),
                })
            }
        };
        out.push((start, tok));
        k += 1;
    }
    Ok(out)
}

/// Unreduced quotient of two polynomials in f.
#[derive(Clone)]
struct Frac {
    num: FPoly,
    den: FPoly,
}

impl Frac {
    fn poly(p: FPoly) -> Self {
        Frac { num: p, den: FPoly::one() }
    }
    fn add(self, o: Frac, sign: bool) -> Frac {
        let on = if sign { o.num } else { -o.num };
        if self.den == o.den {
            return Frac { num: &self.num + &on, den: self.den };
        }
        Frac {
            num: &(&self.num * &o.den) + &(&on * &self.den),
            den: &self.den * &o.den,
        }
    }
    fn mul(self, o: Frac) -> Frac {
        Frac { num: &self.num * &o.num, den: &self.den * &o.den }
    }
    fn div(self, o: Frac, pos: usize) -> Result<Frac, ParseError> {
        if o.num.is_zero() {
            return Err(ParseError::Syntax { pos, msg: "division by zero".into() });
        }
        Ok(Frac { num: &self.num * &o.den, den: &self.den * &o.num })
    }
    fn pow(self, e: u32) -> Frac {
        Frac { num: self.num.pow(e), den: self.den.pow(e) }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    k: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|(_, t)| t)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.k).map(|(p, _)| *p).unwrap_or(self.end)
    }
    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }
    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.k += 1;
            Ok(())
        } else {
            self.err(&format!("expected {}", what))
        }
    }
    fn int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.k += 1;
                Ok(v)
            }
            Some(Tok::Minus) => Err(ParseError::NegativePower { pos: self.pos() }),
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn expr(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.k += 1;
                    acc = acc.add(self.term()?, true);
                }
                Some(Tok::Minus) => {
                    self.k += 1;
                    acc = acc.add(self.term()?, false);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.k += 1;
                    acc = acc.mul(self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.k += 1;
                    let pos = self.pos();
                    acc = acc.div(self.factor()?, pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Frac, ParseError> {
        let b = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.k += 1;
            let e = self.int()?;
            let e = u32::try_from(e).ok().filter(|&e| e <= 4096);
            return match e {
                Some(e) => Ok(b.pow(e)),
                None => self.err("exponent too large"),
            };
        }
        Ok(b)
    }

    fn base(&mut self) -> Result<Frac, ParseError> {
        let t = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        self.k += 1;
        let c = |x: Cyclo24| Ok(Frac::poly(FPoly::constant(RatZ::from_const(x))));
        match t {
            Tok::SmallF => Ok(Frac::poly(FPoly::x())),
            Tok::Z => Ok(Frac::poly(FPoly::constant(RatZ::z()))),
            Tok::Int(v) => c(Cyclo24::from_rational(num_rational::BigRational::from_integer(v.into()))),
            Tok::Const("i") => c(Cyclo24::i()),
            Tok::Const("eta") => c(Cyclo24::eta()),
            Tok::Const("sqrt2") => c(Cyclo24::sqrt2()),
            Tok::Const(_) => c(Cyclo24::sqrt3()),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Minus => {
                let v = self.factor()?;
                Ok(Frac { num: -v.num, den: v.den })
            }
            Tok::BigF => {
                self.k -= 1;
                self.err("F (the shifted unknown) may only appear on the left side")
            }
            _ => {
                self.k -= 1;
                self.err("expected an operand")
            }
        }
    }
}

/// Parse result with the common factor removed during canonicalization.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub spec: EquationSpec,
    pub cancelled: FPoly,
}

pub fn parse_equation(text: &str) -> Result<EquationSpec, ParseError> {
    parse_equation_full(text).map(|p| p.spec)
}

pub fn parse_equation_full(text: &str) -> Result<Parsed, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Syntax { pos: 0, msg: "empty input".into() });
    }
    let toks = tokenize(text)?;
    let mut ps = Parser { toks, k: 0, end: text.chars().count() };
    ps.expect(Tok::BigF, "'F' on the left side")?;
    ps.expect(Tok::Caret, "'^' after F")?;
    let n = ps.int()?;
    if n == 0 {
        return Err(ParseError::ZeroPower);
    }
    let n = u32::try_from(n).map_err(|_| ParseError::Syntax { pos: 0, msg: "n too large".into() })?;
    ps.expect(Tok::Eq, "'='")?;
    let rhs = ps.expr()?;
    if ps.k != ps.toks.len() {
        return ps.err("unexpected trailing input");
    }
    if rhs.den.is_zero() {
        return Err(ParseError::ZeroDenominator);
    }
    if rhs.num.is_zero() {
        return Err(ParseError::Syntax { pos: 0, msg: "right side is identically zero".into() });
    }
    let (spec, cancelled) = EquationSpec::new(n, rhs.num, rhs.den);
    Ok(Parsed { spec, cancelled })
}

/// Canonical text for a spec; `parse_equation` inverts it.
pub fn format_equation(spec: &EquationSpec) -> String {
    spec.to_string()
}
