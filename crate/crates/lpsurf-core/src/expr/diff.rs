//! Exact symbolic differentiation; closed over the expression node set
//! (the `arcsin` rule introduces `sqrt` and a negative power, both of which
//! are nodes of the language).

use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{Expr, Func};

impl Expr {
    /// Partial derivative with respect to the named coordinate, simplified.
    pub fn diff(&self, coord: &str) -> Expr {
        self.diff_raw(coord).simplify()
    }

    fn diff_raw(&self, coord: &str) -> Expr {
        match self {
            Expr::Num(_) => Expr::zero(),
            Expr::Coord(name) => {
                if name == coord {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Expr::Add(items) => Expr::Add(items.iter().map(|e| e.diff_raw(coord)).collect()),
            Expr::Mul(factors) => {
                let mut terms: Vec<Expr> = Vec::with_capacity(factors.len());
                for (i, f) in factors.iter().enumerate() {
                    let mut product: Vec<Expr> = factors.clone();
                    product[i] = f.diff_raw(coord);
                    terms.push(Expr::Mul(product));
                }
                Expr::Add(terms)
            }
            Expr::Pow(base, k) => {
                // d(b^k) = k * b^(k-1) * db
                Expr::int(*k as i64)
                    * Expr::Pow(base.clone(), k - 1)
                    * base.diff_raw(coord)
            }
            Expr::Apply(f, arg) => {
                let da = arg.diff_raw(coord);
                let outer = match f {
                    Func::Exp => Expr::Apply(Func::Exp, arg.clone()),
                    Func::Log => Expr::Pow(arg.clone(), -1),
                    Func::Sin => Expr::Apply(Func::Cos, arg.clone()),
                    Func::Cos => -Expr::Apply(Func::Sin, arg.clone()),
                    // d tan = 1 + tan^2
                    Func::Tan => {
                        Expr::one() + Expr::Pow(Box::new(Expr::Apply(Func::Tan, arg.clone())), 2)
                    }
                    // d arcsin = 1/sqrt(1 - a^2)
                    Func::ArcSin => Expr::Pow(
                        Box::new(Expr::Apply(
                            Func::Sqrt,
                            Box::new(Expr::one() - Expr::Pow(arg.clone(), 2)),
                        )),
                        -1,
                    ),
                    // d arctan = 1/(1 + a^2)
                    Func::ArcTan => {
                        Expr::Pow(Box::new(Expr::one() + Expr::Pow(arg.clone(), 2)), -1)
                    }
                    // d sqrt = 1/(2 sqrt(a))
                    Func::Sqrt => {
                        Expr::rational(1, 2)
                            * Expr::Pow(Box::new(Expr::Apply(Func::Sqrt, arg.clone())), -1)
                    }
                };
                outer * da
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_expr;
    use super::*;

    fn d(text: &str, coord: &str) -> Expr {
        parse_expr(text).unwrap().diff(coord)
    }

    #[test]
    fn table_derivatives() {
        assert_eq!(d("x + y", "x"), Expr::one());
        assert_eq!(d("exp(2*z)", "z"), parse_expr("2*exp(2*z)").unwrap().simplify());
        assert_eq!(d("arcsin(y)", "y"), parse_expr("1/sqrt(1-y^2)").unwrap().simplify());
        assert_eq!(d("x^3", "x"), parse_expr("3*x^2").unwrap().simplify());
        assert_eq!(d("log(x)", "x"), parse_expr("1/x").unwrap().simplify());
        assert_eq!(d("c", "x"), Expr::zero());
    }

    #[test]
    fn product_and_chain_rule() {
        assert_eq!(d("x*exp(x)", "x"), parse_expr("exp(x) + x*exp(x)").unwrap().simplify());
        assert_eq!(
            d("sqrt(1-y^2)", "y"),
            parse_expr("-y/sqrt(1-y^2)").unwrap().simplify()
        );
        assert_eq!(
            d("arctan(y)", "y"),
            parse_expr("1/(1+y^2)").unwrap().simplify()
        );
    }
}
