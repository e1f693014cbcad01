//! Text grammar for polynomials, operators and rational points.
//!
//! ```text
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := coeff ["*" mono] | mono
//! coeff  := int ["/" int]
//! mono   := factor ("*" factor)*
//! factor := name ["^" ["-"] int]
//! ```
//!
//! Whitespace is insignificant. Operators use the same grammar with the
//! variable names prefixed by `d` (`dx*dy - dy^2`).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::diff::DiffOp;
use crate::poly::{ExponentVector, LaurentPoly};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("operator term at position {pos} has a negative exponent")]
    NegativeOperatorExponent { pos: usize },
    #[error("invalid variable list: {0}")]
    Vars(String),
    #[error("expected {expected} coordinates, found {got}")]
    PointArity { expected: usize, got: usize },
}

/// Splits and validates a comma-separated variable list such as `x,y`.
pub fn parse_vars(src: &str) -> Result<Vec<String>, ParseError> {
    let vars: Vec<String> = src.split(',').map(|s| s.trim().to_string()).collect();
    if vars.iter().any(|v| !is_identifier(v)) {
        return Err(ParseError::Vars(format!("`{src}` is not a list of identifiers")));
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(ParseError::Vars(format!("duplicate variable `{v}`")));
        }
    }
    Ok(vars)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_poly(src: &str, vars: &[String]) -> Result<LaurentPoly, ParseError> {
    let names: HashMap<String, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    Parser::new(src, &names, vars.len()).poly()
}

/// Parses an operator such as `dx*dy - dy^2` into its symbol Λ(ξ).
pub fn parse_op(src: &str, vars: &[String]) -> Result<DiffOp, ParseError> {
    let names: HashMap<String, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (format!("d{v}"), i))
        .collect();
    let mut parser = Parser::new(src, &names, vars.len());
    let symbol = parser.poly()?;
    if let Some(pos) = parser.negative_exponent_at {
        return Err(ParseError::NegativeOperatorExponent { pos });
    }
    Ok(DiffOp::new(symbol).expect("nonnegative exponents checked during parsing"))
}

pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let names = HashMap::new();
    let mut p = Parser::new(src, &names, 1);
    p.skip_ws();
    let negative = p.eat('-');
    let r = p.coeff()?;
    p.skip_ws();
    p.expect_end()?;
    Ok(if negative { -r } else { r })
}

/// Parses `(a,b,...)` with rational coordinates.
pub fn parse_point(src: &str, arity: usize) -> Result<Vec<Rational>, ParseError> {
    let names = HashMap::new();
    let mut p = Parser::new(src, &names, arity);
    let point = p.point()?;
    p.skip_ws();
    p.expect_end()?;
    if point.len() != arity {
        return Err(ParseError::PointArity {
            expected: arity,
            got: point.len(),
        });
    }
    Ok(point)
}

/// Parses an exponent vector `(a,b,...)` with integer entries.
pub fn parse_exponent(src: &str, arity: usize) -> Result<ExponentVector, ParseError> {
    let point = parse_point(src, arity)?;
    let mut out = Vec::with_capacity(arity);
    for c in point {
        if !c.is_integer() {
            return Err(ParseError::Syntax {
                pos: 0,
                message: format!("exponent entry {c} is not an integer"),
            });
        }
        out.push(i64::try_from(c.to_integer()).map_err(|_| ParseError::Syntax {
            pos: 0,
            message: "exponent entry out of range".into(),
        })?);
    }
    Ok(ExponentVector::new(out))
}

/// Parses `;`-separated points, e.g. `(-2,1);(1,-2)`.
pub fn parse_point_list(src: &str, arity: usize) -> Result<Vec<Vec<Rational>>, ParseError> {
    src.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_point(s, arity))
        .collect()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a HashMap<String, usize>,
    arity: usize,
    negative_exponent_at: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, names: &'a HashMap<String, usize>, arity: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            names,
            arity,
            negative_exponent_at: None,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c as u8) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, ParseError> {
        if self.arity == 0 {
            return Err(ParseError::Vars("at least one variable is required".into()));
        }
        let mut out = LaurentPoly::zero(self.arity);
        if self.peek().is_none() {
            return self.error("empty expression");
        }
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (c, e) = self.term()?;
            out.add_term(e, if negative { -c } else { c });
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        self.expect_end()?;
        Ok(out)
    }

    fn term(&mut self) -> Result<(Rational, ExponentVector), ParseError> {
        let mut exponent = vec![0i64; self.arity];
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.coeff()?;
                if self.eat('*') {
                    self.mono(&mut exponent)?;
                }
                Ok((coeff, ExponentVector::new(exponent)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                self.mono(&mut exponent)?;
                Ok((Rational::one(), ExponentVector::new(exponent)))
            }
            Some(c) => self.error(format!("expected a term, found `{}`", c as char)),
            None => self.error("expected a term, found end of input"),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as BigInt"))
    }

    fn coeff(&mut self) -> Result<Rational, ParseError> {
        let num = self.integer()?;
        if self.eat('/') {
            let pos = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(ParseError::Syntax {
                    pos,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn mono(&mut self, exponent: &mut [i64]) -> Result<(), ParseError> {
        loop {
            self.factor(exponent)?;
            if !self.eat('*') {
                return Ok(());
            }
        }
    }

    fn factor(&mut self, exponent: &mut [i64]) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a variable name");
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let index = match self.names.get(name) {
            Some(&i) => i,
            None => {
                return Err(ParseError::UnknownVariable {
                    name: name.to_string(),
                    pos: start,
                })
            }
        };
        let mut power = 1i64;
        if self.eat('^') {
            let negative = self.eat('-');
            let pos = self.pos;
            let value = self.integer()?;
            let value = i64::try_from(value).map_err(|_| ParseError::Syntax {
                pos,
                message: "exponent out of range".into(),
            })?;
            power = if negative { -value } else { value };
            if negative && value != 0 && self.negative_exponent_at.is_none() {
                self.negative_exponent_at = Some(start);
            }
        }
        exponent[index] += power;
        Ok(())
    }

    fn point(&mut self) -> Result<Vec<Rational>, ParseError> {
        if !self.eat('(') {
            return self.error("expected `(`");
        }
        let mut coords = Vec::new();
        if self.eat(')') {
            return Ok(coords);
        }
        loop {
            let negative = self.eat('-');
            let c = self.coeff()?;
            coords.push(if negative { -c } else { c });
            if self.eat(')') {
                return Ok(coords);
            }
            if !self.eat(',') {
                return self.error("expected `,` or `)`");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(s: &str) -> Vec<String> {
        parse_vars(s).unwrap()
    }

    #[test]
    fn parses_sums_of_monomials() {
        let v = vars("x,y");
        let p = parse_poly("x + y", &v).unwrap();
        assert_eq!(p, LaurentPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
    }

    #[test]
    fn parses_fractions_and_negative_exponents() {
        let v = vars("x,y");
        let p = parse_poly("3/4*x^-2*y^3 - 1", &v).unwrap();
        assert_eq!(p.to_text(&v), "3/4*x^-2*y^3 - 1");
        assert_eq!(
            p.coeff_at(&ExponentVector::new(vec![-2, 3])),
            Rational::new(3.into(), 4.into())
        );
    }

    #[test]
    fn repeated_factors_normalize() {
        let v = vars("x");
        assert_eq!(parse_poly("x^2*x", &v).unwrap(), LaurentPoly::var(1, 0).pow(3));
        assert_eq!(parse_poly(" - x +x", &v).unwrap(), LaurentPoly::zero(1));
    }

    #[test]
    fn reports_errors_with_positions() {
        let v = vars("x,y");
        assert_eq!(
            parse_poly("x + w", &v),
            Err(ParseError::UnknownVariable {
                name: "w".into(),
                pos: 4
            })
        );
        assert!(matches!(parse_poly("x +", &v), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("x ^ y", &v), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", &v), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("", &v), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn operators_use_d_prefixed_names() {
        let v = vars("x,y");
        let op = parse_op("dx*dy", &v).unwrap();
        assert_eq!(op.symbol(), &LaurentPoly::from_int_terms(2, &[(&[1, 1], 1)]));
        let op = parse_op("dx - dy^2", &v).unwrap();
        assert_eq!(op.symbol().len(), 2);
        assert!(matches!(
            parse_op("dx^-1", &v),
            Err(ParseError::NegativeOperatorExponent { pos: 0 })
        ));
        assert!(matches!(parse_op("x", &v), Err(ParseError::UnknownVariable { .. })));
    }

    #[test]
    fn points_and_lists() {
        let pts = parse_point_list("(-2,1);(1,-2)", 2).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0][0], Rational::from_integer((-2).into()));
        assert_eq!(
            parse_point("(1/2, 1/2)", 2).unwrap()[1],
            Rational::new(1.into(), 2.into())
        );
        assert!(matches!(parse_point("(1,2,3)", 2), Err(ParseError::PointArity { .. })));
        assert_eq!(parse_exponent("(2,0)", 2).unwrap(), ExponentVector::new(vec![2, 0]));
        assert!(parse_exponent("(1/2,0)", 2).is_err());
        assert_eq!(parse_rational("-3/6").unwrap(), Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn variable_lists_are_validated() {
        assert_eq!(vars(" x , y "), vec!["x".to_string(), "y".to_string()]);
        assert!(parse_vars("x,x").is_err());
        assert!(parse_vars("1x").is_err());
    }
}
