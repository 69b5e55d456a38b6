//! Expression grammar for scalar input.
//!
//! Infix with the usual precedence, `^` binding tightest (right side must be
//! a non-negative integer literal), then unary minus, then `*` `/`, then
//! `+` `-`. Identifiers must name chart coordinates; literals are integers,
//! rationals arise through `/`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::chart::Chart;
use super::scalar::{ScalarError, ScalarField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("division by the zero polynomial at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("exponent at position {pos} must be a non-negative integer literal")]
    BadExponent { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: BigInt = src[start..i].parse().expect("digit run parses");
                toks.push((start, Tok::Int(lit)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    chart: &'a Chart,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<ScalarField, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some((_, Tok::Plus)) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some((_, Tok::Minus)) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarField, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some((_, Tok::Star)) => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Some(&(pos, Tok::Slash)) => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = acc.try_div(&rhs).map_err(|e| match e {
                        ScalarError::DivisionByZero => ParseError::DivisionByZero { pos },
                        other => ParseError::Syntax {
                            pos,
                            msg: other.to_string(),
                        },
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarField, ParseError> {
        if let Some((_, Tok::Minus)) = self.peek() {
            self.next();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarField, ParseError> {
        let base = self.atom()?;
        if let Some((_, Tok::Caret)) = self.peek() {
            self.next();
            let pos = self.here();
            match self.next() {
                Some((_, Tok::Int(e))) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| ParseError::BadExponent { pos })?;
                    return Ok(base.pow(e));
                }
                _ => return Err(ParseError::BadExponent { pos }),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ScalarField, ParseError> {
        let pos = self.here();
        match self.next() {
            Some((_, Tok::Int(n))) => Ok(ScalarField::constant(
                self.chart,
                BigRational::from(n),
            )),
            Some((p, Tok::Ident(name))) => match self.chart.index_of(&name) {
                Some(i) => Ok(ScalarField::var(self.chart, i)),
                None => Err(ParseError::UnknownIdentifier { pos: p, name }),
            },
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    other => Err(ParseError::Syntax {
                        pos: other.map(|(p, _)| p).unwrap_or(self.end),
                        msg: "expected `)`".to_string(),
                    }),
                }
            }
            Some((p, t)) => Err(ParseError::Syntax {
                pos: p,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".to_string(),
            }),
        }
    }
}

/// Parses `src` as an exact rational function over the chart coordinates.
pub fn parse_scalar(src: &str, chart: &Chart) -> Result<ScalarField, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        chart,
        toks,
        pos: 0,
        end: src.len(),
    };
    let value = p.expr()?;
    if let Some((pos, t)) = p.peek() {
        return Err(ParseError::Syntax {
            pos: *pos,
            msg: format!("trailing input starting with {t:?}"),
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::poly::Poly;

    fn chart() -> Chart {
        Chart::new(["x1", "x2", "p1", "p2"]).unwrap()
    }

    #[test]
    fn parses_mixed_expression() {
        let c = chart();
        let f = parse_scalar("x1*p2 - 1/2", &c).unwrap();
        let x1 = ScalarField::var(&c, 0);
        let p2 = ScalarField::var(&c, 3);
        let half = crate::symkernel::scalar::sf_rat(&c, 1, 2);
        assert_eq!(f, &(&x1 * &p2) - &half);
    }

    #[test]
    fn canonical_reduction_on_parse() {
        let c = chart();
        let f = parse_scalar("x1/x1", &c).unwrap();
        assert!(f.is_one());
    }

    #[test]
    fn sigma_two_expression() {
        let c = Chart::new(["y1", "y2"]).unwrap();
        let f = parse_scalar("y2 + y1^2/2", &c).unwrap();
        // derivative in y1 is y1
        assert_eq!(f.partial(0), ScalarField::var(&c, 0));
    }

    #[test]
    fn precedence_and_unary_minus() {
        let c = chart();
        let f = parse_scalar("-x1^2", &c).unwrap();
        let x1 = ScalarField::var(&c, 0);
        assert_eq!(f, -&(&x1 * &x1));
        let g = parse_scalar("2*-x1", &c).unwrap();
        assert_eq!(g, (-&x1).scale(&crate::symkernel::poly::rat_int(2)));
    }

    #[test]
    fn errors_carry_positions() {
        let c = chart();
        match parse_scalar("x1 + q3", &c) {
            Err(ParseError::UnknownIdentifier { pos, name }) => {
                assert_eq!(pos, 5);
                assert_eq!(name, "q3");
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
        match parse_scalar("x1/(x2 - x2)", &c) {
            Err(ParseError::DivisionByZero { pos }) => assert_eq!(pos, 2),
            other => panic!("expected division by zero, got {other:?}"),
        }
        assert!(matches!(
            parse_scalar("x1^-2", &c),
            Err(ParseError::BadExponent { .. })
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        let c = chart();
        let x1 = ScalarField::var(&c, 0);
        let p2 = ScalarField::var(&c, 3);
        let f = &(&(&x1 * &x1) - &p2) / &(&x1 + &ScalarField::one(&c));
        let printed = f.to_string();
        let back = parse_scalar(&printed, &c).unwrap();
        assert_eq!(back, f);
        let zero = ScalarField::zero(&c);
        assert_eq!(parse_scalar(&zero.to_string(), &c).unwrap(), zero);
        let _ = Poly::zero(&c);
    }
}
