//! Canonical printing. Printing a simplified expression and re-parsing it
//! reproduces the same canonical form; this is what reports embed.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Signed;

use super::Expr;

impl core::fmt::Display for Expr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write_expr(self, f)
    }
}

fn write_expr(e: &Expr, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
    match e {
        Expr::Add(terms) => {
            for (i, term) in terms.iter().enumerate() {
                let (negative, body) = term.sign_split();
                if i == 0 {
                    if negative {
                        write!(f, "-")?;
                    }
                } else if negative {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                write_product_or_lower(&body, f)?;
            }
            Ok(())
        }
        _ => {
            let (negative, body) = e.sign_split();
            if negative {
                write!(f, "-")?;
            }
            write_product_or_lower(&body, f)
        }
    }
}

fn write_product_or_lower(e: &Expr, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
    match e {
        Expr::Mul(factors) => {
            let mut numerator: Vec<Expr> = Vec::new();
            let mut denominator: Vec<(Expr, i32)> = Vec::new();
            for factor in factors {
                match factor {
                    Expr::Pow(base, k) if *k < 0 => denominator.push(((**base).clone(), -k)),
                    Expr::Num(r) if r.denom() != &num_bigint::BigInt::from(1u8) => {
                        // Print p/q * x as p*x/q.
                        let numer = Expr::Num(num_rational::BigRational::from(r.numer().clone()));
                        if !numer.is_one() {
                            numerator.push(numer);
                        }
                        denominator.push((
                            Expr::Num(num_rational::BigRational::from(r.denom().clone())),
                            1,
                        ));
                    }
                    other => numerator.push(other.clone()),
                }
            }
            if numerator.is_empty() {
                write!(f, "1")?;
            } else {
                for (i, factor) in numerator.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write_factor(factor, f)?;
                }
            }
            for (base, k) in denominator {
                write!(f, "/")?;
                write_pow_base(&base, f)?;
                if k != 1 {
                    write!(f, "^{k}")?;
                }
            }
            Ok(())
        }
        Expr::Pow(base, k) if *k < 0 => {
            write!(f, "1/")?;
            write_pow_base(base, f)?;
            if *k != -1 {
                write!(f, "^{}", -k)?;
            }
            Ok(())
        }
        _ => write_factor(e, f),
    }
}

fn write_factor(e: &Expr, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
    match e {
        Expr::Num(r) => {
            if r.is_negative() {
                // Only reachable for non-canonical trees; keep it parseable.
                write!(f, "(")?;
                write!(f, "-")?;
                write_factor(&Expr::Num(-r.clone()), f)?;
                return write!(f, ")");
            }
            if r.denom() == &num_bigint::BigInt::from(1u8) {
                write!(f, "{}", r.numer())
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())
            }
        }
        Expr::Coord(name) => write!(f, "{name}"),
        Expr::Apply(func, arg) => write!(f, "{}({})", func.name(), arg),
        Expr::Pow(base, k) => {
            write_pow_base(base, f)?;
            if *k < 0 {
                write!(f, "^({k})")
            } else {
                write!(f, "^{k}")
            }
        }
        Expr::Add(_) | Expr::Mul(_) => {
            write!(f, "(")?;
            write_expr(e, f)?;
            write!(f, ")")
        }
    }
}

fn write_pow_base(e: &Expr, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
    match e {
        Expr::Coord(_) | Expr::Apply(..) => write_factor(e, f),
        Expr::Num(r) if !r.is_negative() && r.denom() == &num_bigint::BigInt::from(1u8) => {
            write_factor(e, f)
        }
        _ => {
            write!(f, "(")?;
            write_expr(e, f)?;
            write!(f, ")")
        }
    }
}

/// Canonical text of an expression (its simplified form, printed).
pub fn canonical_text(e: &Expr) -> String {
    alloc::format!("{}", e.simplify())
}

#[cfg(test)]
mod tests {
    use super::super::parse_expr;
    use super::*;

    fn roundtrip(text: &str) {
        let canonical = parse_expr(text).unwrap().simplify();
        let printed = alloc::format!("{canonical}");
        let reparsed = parse_expr(&printed)
            .unwrap_or_else(|e| panic!("failed to reparse `{printed}`: {e}"))
            .simplify();
        assert_eq!(reparsed, canonical, "print/parse changed `{text}` -> `{printed}`");
    }

    #[test]
    fn print_parse_identity_on_canonical_forms() {
        for text in [
            "exp(-2*z)",
            "sqrt(1 - y^2)",
            "x - y + 3/2",
            "-x*y/(1 + z^2)",
            "2*x^2 - 1/2*x + 7",
            "1/x",
            "-1/(x*y^3)",
            "arcsin(y) + arctan(z)",
            "(x + y)^2",
            "tan(x)*log(y)/sqrt(z)",
            "-3",
            "0",
        ] {
            roundtrip(text);
        }
    }

    #[test]
    fn readable_output() {
        assert_eq!(canonical_text(&parse_expr("x/y").unwrap()), "x/y");
        assert_eq!(canonical_text(&parse_expr("-2*x + x").unwrap()), "-x");
        assert_eq!(canonical_text(&parse_expr("x*x").unwrap()), "x^2");
        assert_eq!(canonical_text(&parse_expr("1/(2*x)").unwrap()), "1/2/x");
        assert_eq!(canonical_text(&parse_expr("x/2").unwrap()), "x/2");
    }
}
