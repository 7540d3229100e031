//! Text grammar for polynomials:
//!
//! ```text
//! poly    := ['-'] term (('+'|'-') term)*
//! term    := coeff ('*' factor)* | factor ('*' factor)*
//! factor  := varname ('^' uint)?
//! coeff   := int ('/' uint)?
//! ```
//!
//! Whitespace is ignored between tokens.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgebraError, CoordinateSystem, Monomial, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(AlgebraError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    coords: &'a CoordinateSystem,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn syntax<T>(&self, message: &str) -> Result<T, AlgebraError> {
        Err(AlgebraError::Syntax {
            offset: self.offset(),
            message: message.to_string(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn uint(&mut self, what: &str) -> Result<BigInt, AlgebraError> {
        match self.peek() {
            Some(Tok::Int(_)) => match self.bump() {
                Some(Tok::Int(n)) => Ok(n),
                _ => unreachable!(),
            },
            _ => self.syntax(&format!("expected {what}")),
        }
    }

    fn poly(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut out = Polynomial::zero();
        let mut negative = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negative = true;
        }
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                None => break,
                Some(_) => return self.syntax("expected `+`, `-` or end of input"),
            }
            self.bump();
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Rational), AlgebraError> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        match self.peek() {
            Some(Tok::Int(_)) => {
                let num = self.uint("integer")?;
                let mut den = BigInt::one();
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let off = self.offset();
                    den = self.uint("denominator")?;
                    if den.is_zero() {
                        return Err(AlgebraError::Syntax {
                            offset: off,
                            message: "zero denominator".into(),
                        });
                    }
                }
                coeff = Rational::new(num, den);
            }
            Some(Tok::Ident(_)) => factors.push(self.factor()?),
            _ => return self.syntax("expected coefficient or variable"),
        }
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok((Monomial::from_factors(factors), coeff))
    }

    fn factor(&mut self) -> Result<(usize, u32), AlgebraError> {
        let off = self.offset();
        let name = match self.bump() {
            Some(Tok::Ident(name)) => name,
            _ => {
                self.pos -= 1;
                return self.syntax("expected variable");
            }
        };
        let var = self
            .coords
            .lookup(&name)
            .ok_or(AlgebraError::UnknownVariable { name, offset: off })?;
        let mut exp = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            if self.peek() == Some(&Tok::Minus) {
                return Err(AlgebraError::NegativeExponent {
                    offset: self.offset(),
                });
            }
            let off = self.offset();
            let e = self.uint("exponent")?;
            exp = u32::try_from(e).map_err(|_| AlgebraError::Syntax {
                offset: off,
                message: "exponent too large".into(),
            })?;
        }
        Ok((var, exp))
    }
}

/// Parses a polynomial over the names of `coords`.
pub fn parse_poly(text: &str, coords: &CoordinateSystem) -> Result<Polynomial, AlgebraError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(AlgebraError::Syntax {
            offset: 0,
            message: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        coords,
    };
    p.poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn cs() -> CoordinateSystem {
        CoordinateSystem::new(3, 0).unwrap()
    }

    #[test]
    fn zero_and_monomials() {
        let c = cs();
        assert!(parse_poly("0", &c).unwrap().is_zero());
        let p = parse_poly("v1^8", &c).unwrap();
        assert_eq!(p, Polynomial::var(3).pow(8));
    }

    #[test]
    fn fractions_and_signs() {
        let c = cs();
        let p = parse_poly(" 3/2 * v1*u2 -v2 ", &c).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(
            p.coefficient(&Monomial::from_factors([(3, 1), (1, 1)])),
            rat(3, 2)
        );
        assert_eq!(p.coefficient(&Monomial::var(4)), rat(-1, 1));
        let back = parse_poly(&p.to_string_with(&c), &c).unwrap();
        assert_eq!(back, p);
        assert_eq!(
            parse_poly("-2 - v1", &c).unwrap().constant_term(),
            rat(-2, 1)
        );
    }

    #[test]
    fn like_terms_combine() {
        let c = cs();
        assert!(parse_poly("v1*v2 - v2*v1", &c).unwrap().is_zero());
        assert_eq!(
            parse_poly("v1*v1", &c).unwrap(),
            parse_poly("v1^2", &c).unwrap()
        );
    }

    #[test]
    fn errors_carry_offsets() {
        let c = cs();
        assert_eq!(
            parse_poly("v1 + w3", &c),
            Err(AlgebraError::UnknownVariable {
                name: "w3".into(),
                offset: 5
            })
        );
        assert_eq!(
            parse_poly("v1^-2", &c),
            Err(AlgebraError::NegativeExponent { offset: 3 })
        );
        assert!(matches!(
            parse_poly("1/0", &c),
            Err(AlgebraError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            parse_poly("v1 +", &c),
            Err(AlgebraError::Syntax { offset: 4, .. })
        ));
        assert!(matches!(
            parse_poly("+v1", &c),
            Err(AlgebraError::Syntax { offset: 0, .. })
        ));
        assert!(matches!(
            parse_poly("v1 $", &c),
            Err(AlgebraError::Syntax { offset: 3, .. })
        ));
        assert!(parse_poly("", &c).is_err());
        assert!(parse_poly("v1*2", &c).is_err());
    }
}
