//! ASCII polynomial syntax.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | var | '(' expr ')'
//! ```
//!
//! A leading minus is accepted so that serialized polynomials with a negative
//! leading coefficient re-parse.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{MPoly, Var};
use super::{AlgebraError, Rat};

#[derive(Clone, PartialEq, Debug)]
pub enum PolyExpr {
    Rational(Rat),
    Var(Var),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn expand(&self) -> MPoly {
        match self {
            PolyExpr::Rational(r) => MPoly::constant(r.clone()),
            PolyExpr::Var(v) => MPoly::variable(*v),
            PolyExpr::Neg(a) => -&a.expand(),
            PolyExpr::Add(a, b) => &a.expand() + &b.expand(),
            PolyExpr::Sub(a, b) => &a.expand() - &b.expand(),
            PolyExpr::Mul(a, b) => &a.expand() * &b.expand(),
            PolyExpr::Pow(a, e) => a.expand().pow(*e),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub(crate) enum Tok {
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

pub(crate) struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(AlgebraError::Syntax {
                    pos: start,
                    message: format!("unexpected character {:?}", c as char),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self, AlgebraError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> AlgebraError {
        AlgebraError::Syntax {
            pos: self.offset(),
            message: message.into(),
        }
    }

    pub(crate) fn expect(&mut self, t: Tok, what: &str) -> Result<(), AlgebraError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    pub(crate) fn expr(&mut self) -> Result<PolyExpr, AlgebraError> {
        let mut lhs = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            PolyExpr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, AlgebraError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<PolyExpr, AlgebraError> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.nat()?;
            return Ok(PolyExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    pub(crate) fn nat(&mut self) -> Result<u32, AlgebraError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => u32::try_from(&n).map_err(|_| AlgebraError::Syntax {
                pos: at,
                message: "exponent too large".into(),
            }),
            Some(Tok::Minus) => Err(AlgebraError::NegativeExponent { pos: at }),
            _ => Err(AlgebraError::Syntax {
                pos: at,
                message: "expected a non-negative integer exponent".into(),
            }),
        }
    }

    /// `int ('/' posint)?`
    pub(crate) fn rational(&mut self) -> Result<Rat, AlgebraError> {
        let at = self.offset();
        let Some(Tok::Int(n)) = self.bump() else {
            return Err(AlgebraError::Syntax {
                pos: at,
                message: "expected an integer".into(),
            });
        };
        if self.peek() == Some(&Tok::Slash) {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Tok::Int(d)) if !d.is_zero() => return Ok(Rat::new(n, d)),
                _ => {
                    return Err(AlgebraError::Syntax {
                        pos: at,
                        message: "expected a positive denominator".into(),
                    })
                }
            }
        }
        Ok(Rat::new(n, BigInt::one()))
    }

    fn base(&mut self) -> Result<PolyExpr, AlgebraError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(_)) => Ok(PolyExpr::Rational(self.rational()?)),
            Some(Tok::Ident(name)) => {
                self.bump();
                Var::from_name(&name)
                    .map(PolyExpr::Var)
                    .ok_or(AlgebraError::UnknownVariable { pos: at, name })
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(self.error("expected a number, a variable or '('")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<PolyExpr, AlgebraError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if !p.at_end() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

pub fn parse_poly(text: &str) -> Result<MPoly, AlgebraError> {
    parse_expr(text).map(|e| e.expand())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Monomial;
    use proptest::prelude::*;

    #[test]
    fn parses_worked_example_polynomial() {
        let p = parse_poly("x^5+x+1").unwrap();
        assert_eq!(p.num_terms(), 3);
        let mut x5 = Monomial::one();
        x5.0[0] = 5;
        assert_eq!(p.coeff(&x5), Rat::one());
        assert_eq!(p.coeff(&Monomial::var(0)), Rat::one());
        assert_eq!(p.coeff(&Monomial::one()), Rat::one());
    }

    #[test]
    fn zero_and_products() {
        assert!(parse_poly("0").unwrap().is_zero());
        assert_eq!(parse_poly("(x+1)*(x-1)").unwrap().to_string(), "x^2-1");
        assert_eq!(
            parse_poly("3/4*v1^2*v3 - 1/2").unwrap().to_string(),
            "3/4*v1^2*v3-1/2"
        );
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_poly("x + y"),
            Err(AlgebraError::UnknownVariable {
                pos: 4,
                name: "y".into()
            })
        );
        assert_eq!(
            parse_poly("x^-2"),
            Err(AlgebraError::NegativeExponent { pos: 2 })
        );
        assert!(matches!(
            parse_poly("(x+1"),
            Err(AlgebraError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("x $"),
            Err(AlgebraError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("1/0"),
            Err(AlgebraError::Syntax { .. })
        ));
    }

    fn arb_mpoly() -> impl Strategy<Value = MPoly> {
        prop::collection::vec(
            ((-20i64..=20), (1i64..=6), prop::array::uniform7(0u32..3)),
            0..6,
        )
        .prop_map(|ts| {
            MPoly::from_terms(
                ts.into_iter()
                    .map(|(n, d, e)| (Monomial(e), Rat::new(n.into(), d.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn serialize_parse_fixed_point(p in arb_mpoly()) {
            let s = p.to_string();
            let q = parse_poly(&s).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_string(), s);
        }

        #[test]
        fn ring_laws(a in arb_mpoly(), b in arb_mpoly(), c in arb_mpoly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
