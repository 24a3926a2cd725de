//! Recursive-descent parser for the expression grammar documented in
//! [`super`](crate::expr).

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use super::{Expr, Func};

/// Syntax error with the byte offset at which it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "parse error at offset {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

/// Parses `text` into an expression tree.
///
/// The tree is structurally faithful to the input (no simplification is
/// applied); printing a canonical form and re-parsing it is the identity.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        terms.push(self.term()?);
        loop {
            if self.eat(b'+') {
                terms.push(self.term()?);
            } else if self.eat(b'-') {
                terms.push(-self.term()?);
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Expr::Add(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                acc = acc / self.unary()?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exponent = self.exponent()?;
            Ok(Expr::Pow(Box::new(base), exponent))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<i32, ParseError> {
        let parenthesized = self.eat(b'(');
        let negative = self.eat(b'-');
        let start = self.pos;
        let mut value: i64 = 0;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as i64))
                .ok_or_else(|| self.error("exponent too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer exponent (use sqrt for fractional powers)"));
        }
        self.skip_ws();
        if parenthesized {
            self.expect(b')')?;
        }
        let signed = if negative { -value } else { value };
        i32::try_from(signed).map_err(|_| self.error("exponent too large"))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                self.skip_ws();
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'0'..=b'9' | b'.') => self.number(),
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => self.ident(),
            Some(b) => Err(self.error(&format!("unexpected character `{}`", b as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let mut numer = BigInt::from(0u8);
        let mut denom = BigInt::from(1u8);
        let mut digits = 0usize;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            numer = numer * 10 + (b - b'0');
            digits += 1;
            self.pos += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let mut fraction_digits = 0usize;
            while let Some(b @ b'0'..=b'9') = self.peek() {
                numer = numer * 10 + (b - b'0');
                fraction_digits += 1;
                self.pos += 1;
            }
            if fraction_digits == 0 {
                return Err(self.error("expected digits after decimal point"));
            }
            denom = Pow::pow(BigInt::from(10u8), fraction_digits as u32);
            digits += fraction_digits;
        }
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        self.skip_ws();
        Ok(Expr::Num(BigRational::new(numer, denom)))
    }

    fn ident(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name = core::str::from_utf8(&self.bytes[start..self.pos])
            .expect("identifier bytes are ASCII")
            .to_string();
        self.skip_ws();
        if self.peek() == Some(b'(') {
            let func = Func::from_name(&name).ok_or(ParseError {
                position: start,
                message: format!("unknown function `{name}`"),
            })?;
            self.bump();
            self.skip_ws();
            let arg = self.expr()?;
            self.expect(b')')?;
            Ok(Expr::Apply(func, Box::new(arg)))
        } else {
            Ok(Expr::Coord(name))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn faithful_trees() {
        assert_eq!(
            parse_expr("exp(-2*z)").unwrap(),
            Expr::apply(
                Func::Exp,
                Expr::Mul(vec![Expr::int(-1), Expr::int(2), Expr::coord("z")])
            )
        );
        assert_eq!(parse_expr("0").unwrap(), Expr::zero());
        assert_eq!(
            parse_expr("sqrt(1 - y^2)").unwrap(),
            Expr::apply(
                Func::Sqrt,
                Expr::Add(vec![
                    Expr::one(),
                    Expr::Mul(vec![Expr::int(-1), Expr::coord("y").pow(2)])
                ])
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expr("1 + 2*x^2").unwrap().simplify();
        let expected = (Expr::int(2) * Expr::coord("x").pow(2) + Expr::one()).simplify();
        assert_eq!(e, expected);
        assert_eq!(
            parse_expr("a/b/c").unwrap().simplify(),
            parse_expr("a/(b*c)").unwrap().simplify()
        );
        assert_eq!(
            parse_expr("x^-2").unwrap(),
            parse_expr("x^(-2)").unwrap()
        );
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_expr("0.25").unwrap().simplify(), Expr::rational(1, 4));
        assert_eq!(parse_expr("1.5").unwrap().simplify(), Expr::rational(3, 2));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("1 + foo(2)").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(err.message.contains("unknown function"));

        let err = parse_expr("x^y").unwrap_err();
        assert!(err.message.contains("integer exponent"));

        let err = parse_expr("(x + ").unwrap_err();
        assert!(err.message.contains("unexpected end of input"));
    }
}
