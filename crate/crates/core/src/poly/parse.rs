//! Text syntax for polynomials.
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := coeff ('*'? factor ('*' factor)*)? | factor ('*' factor)*
//! factor := 'x' digits ('^' digits)?
//! coeff  := digits ('/' digits)?
//! ```
//!
//! Whitespace is ignored. Variables are `x0 .. x{n}`; coefficients are
//! rationals and are mapped into the ring's field (a denominator divisible
//! by the characteristic is an error).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::Field;
use crate::poly::monomial::Monomial;
use crate::poly::ring::{Poly, PolyRing};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }
    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        self.pos += 1;
        c
    }
    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        message: msg.into(),
    }
}

pub fn parse_poly<F: Field>(ring: &PolyRing<F>, text: &str) -> Result<Poly<F>> {
    let cleaned: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(err("empty polynomial"));
    }
    let f = ring.field();
    let mut cur = Cursor { s: &cleaned, pos: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
            }
            Some(b'-') => {
                cur.bump();
                negative = true;
            }
            _ if !first => return Err(err(format!("expected '+' or '-' at offset {}", cur.pos))),
            _ => {}
        }
        first = false;
        let (mono, coeff) = parse_term(ring, &mut cur)?;
        let coeff = if negative { f.neg(&coeff) } else { coeff };
        terms.push((mono, coeff));
    }
    Ok(ring.from_terms(terms))
}

fn parse_term<F: Field>(ring: &PolyRing<F>, cur: &mut Cursor<'_>) -> Result<(Monomial, F::Elem)> {
    let f = ring.field();
    let mut coeff = f.one();
    let mut mono = Monomial::one();
    if let Some(num) = cur.digits() {
        let n: BigInt = num.parse().map_err(|_| err("bad integer"))?;
        coeff = f.from_bigint(&n);
        if cur.peek() == Some(b'/') {
            cur.bump();
            let den = cur.digits().ok_or_else(|| err("expected denominator"))?;
            let d: BigInt = den.parse().map_err(|_| err("bad integer"))?;
            let d = f.from_bigint(&d);
            if f.is_zero(&d) {
                return Err(err("denominator vanishes in the coefficient field"));
            }
            coeff = f.div(&coeff, &d);
        }
        if cur.peek() == Some(b'*') {
            cur.bump();
        } else if cur.peek() != Some(b'x') {
            return Ok((mono, coeff));
        }
    }
    loop {
        match cur.peek() {
            Some(b'x') => {
                cur.bump();
                let idx: usize = cur
                    .digits()
                    .ok_or_else(|| err("expected variable index after 'x'"))?
                    .parse()
                    .map_err(|_| err("bad variable index"))?;
                if idx >= ring.nvars() {
                    return Err(err(format!(
                        "variable x{idx} not in a ring of {} variables",
                        ring.nvars()
                    )));
                }
                let mut e: u16 = 1;
                if cur.peek() == Some(b'^') {
                    cur.bump();
                    e = cur
                        .digits()
                        .ok_or_else(|| err("expected exponent"))?
                        .parse()
                        .map_err(|_| err("bad exponent"))?;
                }
                let mut exps = vec![0u16; ring.nvars()];
                exps[idx] = e;
                mono = mono.mul(&Monomial::from_exponents(&exps));
            }
            Some(c) => return Err(err(format!("unexpected '{}' at offset {}", c as char, cur.pos))),
            None => return Err(err("unexpected end of input")),
        }
        if cur.peek() == Some(b'*') {
            cur.bump();
            continue;
        }
        break;
    }
    Ok((mono, coeff))
}
