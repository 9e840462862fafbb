//! Operator strings: `x1..xn`, `d1..dn`, integer and rational literals, named
//! parameters, `+ - * / ^` and parentheses. Products are normally ordered.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::weyl::{WeylElement, WeylRing};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = col;
        if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            let v: BigInt = s.parse().map_err(|_| syntax(line, start, "bad integer"))?;
            out.push(Token { tok: Tok::Num(v), line, column: start });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line, column: start });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), line, column: start });
            i += 1;
            col += 1;
        } else {
            return Err(syntax(line, start, format!("unexpected character '{c}'")));
        }
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: &'a Arc<WeylRing>,
    params: &'a BTreeMap<String, Scalar>,
}

enum Atom {
    X(usize),
    Other(WeylElement),
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_op(&self, c: char) -> bool {
        self.peek().tok == Tok::Op(c)
    }

    fn expr(&mut self) -> Result<WeylElement> {
        let mut acc = self.term()?;
        loop {
            if self.is_op('+') {
                self.next();
                acc = acc.add(&self.term()?);
            } else if self.is_op('-') {
                self.next();
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WeylElement> {
        let mut acc = self.unary()?;
        loop {
            if self.is_op('*') {
                self.next();
                acc = acc.mul(&self.unary()?);
            } else if self.is_op('/') {
                let t = self.next();
                let d = self.unary()?;
                let c = match d.as_constant() {
                    Some(c) => c,
                    None => return Err(syntax(t.line, t.column, "division by a non-constant")),
                };
                let inv = self.ring.field().inv(&c).ok_or(Error::DivisionByZero)?;
                acc = acc.scale(&inv);
            } else {
                let t = self.peek();
                if matches!(t.tok, Tok::Num(_) | Tok::Ident(_)) || t.tok == Tok::Op('(') {
                    return Err(syntax(t.line, t.column, "expected an operator between factors"));
                }
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<WeylElement> {
        if self.is_op('-') {
            self.next();
            return Ok(self.unary()?.neg());
        }
        if self.is_op('+') {
            self.next();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<WeylElement> {
        let (atom, at) = self.atom()?;
        if !self.is_op('^') {
            return Ok(match atom {
                Atom::X(i) => WeylElement::x(self.ring, i),
                Atom::Other(e) => e,
            });
        }
        self.next();
        let negative = if self.is_op('-') {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let Tok::Num(v) = t.tok else { return Err(syntax(t.line, t.column, "exponent must be an integer")) };
        let e: i32 = v.to_string().parse().map_err(|_| syntax(t.line, t.column, "exponent too large"))?;
        if negative {
            return match atom {
                Atom::X(i) if self.ring.is_inverted(i) => WeylElement::x_pow(self.ring, i, -e),
                _ => Err(syntax(at.0, at.1, "negative exponents need a variable inverted on the chart")),
            };
        }
        if e == 0 {
            return Err(syntax(t.line, t.column, "exponent must be positive"));
        }
        Ok(match atom {
            Atom::X(i) => WeylElement::x_pow(self.ring, i, e)?,
            Atom::Other(b) => b.pow(e as u64),
        })
    }

    fn atom(&mut self) -> Result<(Atom, (usize, usize))> {
        let t = self.next();
        let at = (t.line, t.column);
        let field = self.ring.field().clone();
        match t.tok {
            Tok::Num(v) => Ok((Atom::Other(WeylElement::constant(self.ring, field.from_bigint(&v))), at)),
            Tok::Ident(name) => {
                if let Some(c) = self.params.get(&name) {
                    return Ok((Atom::Other(WeylElement::constant(self.ring, c.clone())), at));
                }
                match variable(&name, self.ring.n()) {
                    Some(('x', i)) => Ok((Atom::X(i), at)),
                    Some((_, i)) => Ok((Atom::Other(WeylElement::d(self.ring, i)), at)),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                let close = self.next();
                if close.tok != Tok::Op(')') {
                    return Err(syntax(close.line, close.column, "expected ')'"));
                }
                Ok((Atom::Other(e), at))
            }
            Tok::End => Err(syntax(t.line, t.column, "unexpected end of input")),
            Tok::Op(c) => Err(syntax(t.line, t.column, format!("unexpected '{c}'"))),
        }
    }
}

/// `x3` -> `('x', 2)` when `3 <= n`.
fn variable(name: &str, n: usize) -> Option<(char, usize)> {
    let kind = name.chars().next()?;
    if kind != 'x' && kind != 'd' {
        return None;
    }
    let idx: usize = name[1..].parse().ok()?;
    if name[1..].starts_with('0') || idx == 0 || idx > n {
        return None;
    }
    Some((kind, idx - 1))
}

/// Parses an operator over `ring`, binding identifiers in `params`.
pub fn parse_operator(text: &str, ring: &Arc<WeylRing>, params: &BTreeMap<String, Scalar>) -> Result<WeylElement> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, ring, params };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.line, t.column, "unexpected trailing input"));
    }
    Ok(e)
}

impl WeylElement {
    /// The value of a constant element (zero included).
    pub fn as_constant(&self) -> Option<Scalar> {
        let f = self.field();
        match self.num_terms() {
            0 => Some(f.zero()),
            1 => {
                let (k, c) = self.terms().next()?;
                k.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}
