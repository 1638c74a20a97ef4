//! Infix polynomial text: `3*x^2*y - 1/2*y + 4`.
//!
//! Grammar: sums of products of powers; `^` (or `**`) takes a nonnegative
//! integer exponent; `/` is allowed wherever the result stays a polynomial
//! (or, through [`parse_rational_function`], a quotient of polynomials).
//! Numbers may be integers, decimals or scientific literals, read exactly.

use num_traits::{One, Signed};

use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::multipoly::{gcd, MultiPoly};
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part, only when followed by a digit
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let v = parse_rational(&lit).ok_or_else(|| Error::parse(0, format!("bad number {lit:?}")))?;
            out.push(Tok::Num(v));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c == '*' && chars.get(i + 1) == Some(&'*') {
            out.push(Tok::Op('^'));
            i += 2;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::parse(0, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// Numerator / denominator pair.
#[derive(Clone, Debug)]
struct RatFun {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFun {
    fn poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RatFun { num: p, den }
    }

    fn add(&self, o: &RatFun, sign: bool) -> RatFun {
        let b = &o.num * &self.den;
        let a = &self.num * &o.den;
        let num = if sign { &a + &b } else { &a - &b };
        RatFun {
            num,
            den: &self.den * &o.den,
        }
        .reduce()
    }

    fn mul(&self, o: &RatFun) -> RatFun {
        RatFun {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .reduce()
    }

    fn div(&self, o: &RatFun) -> Result<RatFun> {
        if o.num.is_zero() {
            return Err(Error::parse(0, "division by zero"));
        }
        Ok(RatFun {
            num: &self.num * &o.den,
            den: &self.den * &o.num,
        }
        .reduce())
    }

    fn reduce(self) -> RatFun {
        if self.num.is_zero() {
            return RatFun::poly(MultiPoly::zero(self.num.vars()));
        }
        let mut num = self.num;
        let mut den = self.den;
        if !den.is_constant() {
            let g = gcd(&num, &den);
            if !g.is_constant() {
                num = num.div_exact(&g).unwrap();
                den = den.div_exact(&g).unwrap();
            }
        }
        // Monic-like normalization: denominator lex-leading coefficient 1.
        let lc = den.leading_term().unwrap().1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?, true);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?, false);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else if matches!(self.peek(), Some(Tok::Op('('))) {
                // implicit product "2(x+1)" is rejected to keep the format strict
                return Err(Error::parse(0, "missing operator before '('"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(RatFun {
                num: -&v.num,
                den: v.den,
            });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                    self.pos += 1;
                    u32::try_from(n.to_integer()).map_err(|_| Error::parse(0, "exponent too large"))?
                }
                _ => return Err(Error::parse(0, "exponent must be a nonnegative integer literal")),
            };
            let mut acc = RatFun::poly(MultiPoly::one(self.vars));
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            if neg {
                let one = RatFun::poly(MultiPoly::one(self.vars));
                acc = one.div(&acc)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFun::poly(MultiPoly::constant(n, self.vars)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if !self.vars.contains(&name) {
                    return Err(Error::parse(0, format!("undeclared identifier {name:?}")));
                }
                Ok(RatFun::poly(MultiPoly::var(&name, self.vars)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(0, "expected ')'"));
                }
                Ok(v)
            }
            Some(t) => Err(Error::parse(0, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(0, "unexpected end of input")),
        }
    }
}

fn parse_ratfun(s: &str, vars: &[String]) -> Result<RatFun> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, vars };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(0, format!("trailing input at token {:?}", p.toks[p.pos])));
    }
    Ok(v)
}

/// Parses a polynomial over the declared variables. An equation `lhs = rhs`
/// is read as `lhs - rhs`.
pub fn parse_poly(s: &str, vars: &[String]) -> Result<MultiPoly> {
    let r = match s.split_once('=') {
        Some((l, r)) => parse_ratfun(l, vars)?.add(&parse_ratfun(r, vars)?, false),
        None => parse_ratfun(s, vars)?,
    };
    match r.den.constant_value() {
        Some(c) => Ok(r.num.scale(&c.recip())),
        None => Err(Error::parse(0, "expression is not a polynomial")),
    }
}

pub fn parse_unipoly(s: &str, var: &str) -> Result<UniPoly> {
    let vars = vec![var.to_string()];
    Ok(parse_poly(s, &vars)?.to_unipoly_in(0))
}

/// Parses a quotient of polynomials, returned reduced as `(num, den)` with
/// the denominator's lex-leading coefficient equal to 1.
pub fn parse_rational_function(s: &str, vars: &[String]) -> Result<(MultiPoly, MultiPoly)> {
    let r = parse_ratfun(s, vars)?;
    Ok((r.num, r.den))
}

/// Appends `c * mono` to a sum being rendered; `mono` may be empty.
pub(crate) fn push_term(s: &mut String, c: &Rational, mono: &str) {
    let neg = c.is_negative();
    if s.is_empty() {
        if neg {
            s.push('-');
        }
    } else {
        s.push_str(if neg { " - " } else { " + " });
    }
    let a = c.abs();
    if mono.is_empty() {
        s.push_str(&a.to_string());
    } else if a.is_one() {
        s.push_str(mono);
    } else {
        s.push_str(&format!("{a}*{mono}"));
    }
}
