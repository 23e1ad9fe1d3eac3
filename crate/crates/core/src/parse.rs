//! Tokenizer and term grammar shared by every textual input: polynomials,
//! field descriptions, bivariate curves and parameter values.
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor ([`*`] factor)*
//! factor := int | `(` int (`,` int)* `)` | var [`^` int]
//! var    := x | y | a | g          (case-insensitive)
//! ```

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Var(Var),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

/// Variables recognised by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    A,
    G,
}

/// One parsed term, before any field is attached.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawTerm {
    pub negative: bool,
    /// Product of the integer factors.
    pub int: u128,
    /// Coordinate tuples multiplied into the coefficient.
    pub tuples: Vec<Vec<u64>>,
    pub x_pow: u64,
    pub y_pow: u64,
    pub a_pow: u64,
    pub g_pow: u64,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or_else(|| Error::syntax(start, "integer literal overflows"))?;
                    i += 1;
                }
                out.push((start, Tok::Num(v)));
                continue;
            }
            'x' | 'X' => Tok::Var(Var::X),
            'y' | 'Y' => Tok::Var(Var::Y),
            'a' | 'A' => Tok::Var(Var::A),
            'g' | 'G' => Tok::Var(Var::G),
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => return Err(Error::syntax(start, format!("unexpected character {other:?}"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn expect_num(&mut self) -> Result<u64> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(v),
            _ => Err(Error::syntax(at, "expected an integer")),
        }
    }

    fn factor(&mut self, term: &mut RawTerm) -> Result<()> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(v)) => {
                term.int = term
                    .int
                    .checked_mul(v as u128)
                    .ok_or_else(|| Error::syntax(at, "coefficient overflows"))?;
            }
            Some(Tok::LParen) => {
                let mut coords = vec![self.expect_num()?];
                loop {
                    let at = self.offset();
                    match self.bump() {
                        Some(Tok::Comma) => coords.push(self.expect_num()?),
                        Some(Tok::RParen) => break,
                        _ => return Err(Error::syntax(at, "expected `,` or `)`")),
                    }
                }
                if coords.len() == 1 {
                    term.int = term
                        .int
                        .checked_mul(coords[0] as u128)
                        .ok_or_else(|| Error::syntax(at, "coefficient overflows"))?;
                } else {
                    term.tuples.push(coords);
                }
            }
            Some(Tok::Var(v)) => {
                let exp = if self.peek() == Some(Tok::Caret) {
                    self.bump();
                    self.expect_num()?
                } else {
                    1
                };
                let slot = match v {
                    Var::X => &mut term.x_pow,
                    Var::Y => &mut term.y_pow,
                    Var::A => &mut term.a_pow,
                    Var::G => &mut term.g_pow,
                };
                *slot = slot
                    .checked_add(exp)
                    .ok_or_else(|| Error::syntax(at, "exponent overflows"))?;
            }
            _ => return Err(Error::syntax(at, "expected a factor")),
        }
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm> {
        let mut term = RawTerm {
            negative,
            int: 1,
            ..RawTerm::default()
        };
        self.factor(&mut term)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    self.factor(&mut term)?;
                }
                Some(Tok::Num(_)) | Some(Tok::LParen) | Some(Tok::Var(_)) => {
                    self.factor(&mut term)?
                }
                _ => return Ok(term),
            }
        }
    }
}

/// Parses an expression into its terms.
pub fn parse_terms(s: &str) -> Result<Vec<RawTerm>> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::syntax(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        len: s.len(),
    };
    let mut terms = Vec::new();
    let mut negative = match p.peek() {
        Some(Tok::Minus) => {
            p.bump();
            true
        }
        Some(Tok::Plus) => {
            p.bump();
            false
        }
        _ => false,
    };
    loop {
        terms.push(p.term(negative)?);
        let at = p.offset();
        match p.bump() {
            None => return Ok(terms),
            Some(Tok::Plus) => negative = false,
            Some(Tok::Minus) => negative = true,
            Some(_) => return Err(Error::syntax(at, "expected `+` or `-`")),
        }
    }
}

/// Parses a single coordinate tuple such as `(1,0,2)`.
pub fn parse_tuple(s: &str) -> Result<Vec<u64>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::syntax(0, "expected a parenthesized tuple"))?;
    inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<u64>()
                .map_err(|_| Error::syntax(0, format!("bad tuple entry {c:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_and_explicit_products() {
        let t = parse_terms("x^4+2x^3+2").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!((t[1].int, t[1].x_pow), (2, 3));
        let t = parse_terms("- 2*a^2*x^6").unwrap();
        assert!(t[0].negative);
        assert_eq!((t[0].int, t[0].a_pow, t[0].x_pow), (2, 2, 6));
    }

    #[test]
    fn tuples_and_bivariate() {
        let t = parse_terms("x^2+y^2-(1)").unwrap();
        assert_eq!(t.len(), 3);
        assert!(t[2].negative);
        assert_eq!(t[2].int, 1);
        let t = parse_terms("(1,2)*X*Y^3").unwrap();
        assert_eq!(t[0].tuples, vec![vec![1, 2]]);
        assert_eq!((t[0].x_pow, t[0].y_pow), (1, 3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_terms("x^"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_terms("x $ 2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_terms(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_terms("x y +"), Err(Error::Syntax { .. })));
    }
}
