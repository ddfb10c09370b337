//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace ignored, implicit multiplication not allowed):
//!
//! ```text
//! expr     := ('+' | '-')? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | variable | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial, Vars};

pub fn parse_polynomial(text: &str, vars: &Vars) -> Result<Polynomial> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0, vars };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::Parse {
            pos: p.pos,
            msg: format!("unexpected trailing input starting at `{}`", p.rest_preview()),
        });
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn rest_preview(&self) -> String {
        let rest = &self.bytes[self.pos..];
        let take = rest.len().min(12);
        String::from_utf8_lossy(&rest[..take]).into_owned()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
            }
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.checked_add(&t)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.checked_sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.checked_mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            match self.peek() {
                Some(b'-') => return Err(Error::NegativeExponent { pos: self.pos }),
                Some(c) if c.is_ascii_digit() => {
                    let e = self.uint()?;
                    let e: u32 = e.try_into().map_err(|_| Error::Parse {
                        pos: self.pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    return Err(Error::Parse {
                        pos: self.pos,
                        msg: "expected an unsigned integer exponent after `^`".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(Error::Parse { pos: self.pos, msg: "expected `)`".into() })
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.uint()?;
                let denom = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    match self.peek() {
                        Some(c2) if c2.is_ascii_digit() => {
                            let d = self.uint()?;
                            if d == BigInt::from(0u8) {
                                return Err(Error::Parse {
                                    pos: self.pos,
                                    msg: "zero denominator".into(),
                                });
                            }
                            d
                        }
                        _ => {
                            return Err(Error::Parse {
                                pos: self.pos,
                                msg: "expected an unsigned integer denominator after `/`".into(),
                            })
                        }
                    }
                } else {
                    BigInt::one()
                };
                Ok(Polynomial::constant(self.vars, Coeff::new(numer, denom)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
                match self.vars.index_of(name) {
                    Some(i) => Polynomial::variable(self.vars, i),
                    None => Err(Error::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            Some(_) => Err(Error::Parse {
                pos: self.pos,
                msg: format!("unexpected input `{}`", self.rest_preview()),
            }),
            None => Err(Error::Parse { pos: self.pos, msg: "unexpected end of input".into() }),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse { pos: start, msg: "expected an unsigned integer".into() });
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        s.parse::<BigInt>()
            .map_err(|e| Error::Parse { pos: start, msg: format!("bad integer: {e}") })
    }
}

/// Parses a rectangular matrix of polynomial expressions.
pub fn parse_matrix(rows: &[Vec<String>], vars: &Vars) -> Result<crate::matrix::PolyMatrix> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_polynomial(s, vars)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    crate::matrix::PolyMatrix::from_rows(parsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars3() -> Vars {
        Vars::new(["z1", "z2", "z3"]).unwrap()
    }

    #[test]
    fn parses_monomials_and_products() {
        let vars = vars3();
        let p = parse_polynomial("z1*z2^2", &vars).unwrap();
        let z1 = Polynomial::variable(&vars, 0).unwrap();
        let z2 = Polynomial::variable(&vars, 1).unwrap();
        let expected = z1.checked_mul(&z2.pow(2)).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn parses_zero() {
        let vars = vars3();
        assert!(parse_polynomial("0", &vars).unwrap().is_zero());
    }

    #[test]
    fn expands_parenthesized_products() {
        let vars = vars3();
        let p = parse_polynomial("(z1-1)*z2", &vars).unwrap();
        let z1 = Polynomial::variable(&vars, 0).unwrap();
        let z2 = Polynomial::variable(&vars, 1).unwrap();
        let expected = z1
            .checked_sub(&Polynomial::one(&vars))
            .unwrap()
            .checked_mul(&z2)
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn rational_coefficients() {
        let vars = vars3();
        let p = parse_polynomial("1/2*z1 + 3", &vars).unwrap();
        assert_eq!(p.to_string(), "1/2*z1 + 3");
    }

    #[test]
    fn error_positions() {
        let vars = vars3();
        match parse_polynomial("z1 + w2", &vars) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w2");
                assert_eq!(pos, 5);
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(matches!(
            parse_polynomial("z1^-2", &vars),
            Err(Error::NegativeExponent { .. })
        ));
        assert!(matches!(parse_polynomial("z1 z2", &vars), Err(Error::Parse { .. })));
        assert!(matches!(parse_polynomial("(z1", &vars), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_round_trip() {
        let vars = vars3();
        for s in [
            "z1^2 - 2*z1 + 1",
            "-z1",
            "z1*z2 - z2",
            "1/3*z1^2*z3 + 5/7",
            "0",
            "z1^2*z2 - 2*z1*z2 + z1*z3 + z1 + z2",
        ] {
            let p = parse_polynomial(s, &vars).unwrap();
            let q = parse_polynomial(&p.to_string(), &vars).unwrap();
            assert_eq!(p, q, "round trip failed for {s}");
        }
    }
}
