//! Symbolic scalar expressions over named real coordinates.
//!
//! Expressions are trees of exact rational constants, coordinate symbols,
//! n-ary sums and products, integer powers and the fixed function set
//! `exp, log, sin, cos, tan, arcsin, arctan, sqrt`. Negation is a product
//! with `-1`, a quotient is a product with a negative power; both print back
//! in the usual notation.
//!
//! The concrete grammar accepted by [`parse_expr`]:
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" exponent)?
//! exponent:= "-"? digits | "(" "-"? digits ")"
//! atom    := number | ident | ident "(" expr ")" | "(" expr ")"
//! number  := digits ("." digits)?
//! ident   := (alpha | "_") (alnum | "_")*
//! ```
//!
//! Exponents are integers; write fractional powers with `sqrt`. Numbers are
//! read exactly (`0.25` is the rational 1/4). An identifier followed by `(`
//! must be one of the supported function names.
//!
//! All values are immutable and all operations are pure, so expressions can
//! be shared freely across threads.

mod diff;
mod eval;
mod parse;
mod print;
mod sample;
mod simplify;

pub use eval::{EvalError, SamplePoint};
pub use parse::{parse_expr, ParseError};
pub use print::canonical_text;
pub use sample::{exprs_equivalent, sample_in_domain, DomainBox, EquivError};

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use alloc::collections::BTreeSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The function set closed under differentiation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    ArcSin,
    ArcTan,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::ArcSin => "arcsin",
            Func::ArcTan => "arctan",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "arcsin" => Func::ArcSin,
            "arctan" => Func::ArcTan,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

/// A symbolic scalar expression.
///
/// Constants are exact rationals; irrational values arise only through
/// function nodes, which keeps simplification sound and all checks
/// reproducible. The derived ordering is structural and gives the canonical
/// term/factor order used by the simplifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    /// Exact rational constant.
    Num(BigRational),
    /// Coordinate symbol.
    Coord(String),
    /// n-ary sum.
    Add(Vec<Expr>),
    /// n-ary product.
    Mul(Vec<Expr>),
    /// Integer power; negative exponents express quotients.
    Pow(Box<Expr>, i32),
    /// Function application.
    Apply(Func, Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Num(BigRational::from(BigInt::from(n)))
    }

    /// Exact rational constant `n/d`. Panics if `d == 0`.
    pub fn rational(n: i64, d: i64) -> Expr {
        assert!(d != 0, "rational constant with zero denominator");
        Expr::Num(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn coord(name: &str) -> Expr {
        Expr::Coord(name.to_string())
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    /// Structural test against the constant 0 (use after [`Expr::simplify`]).
    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Num(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Num(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Expr::Num(r) => Some(r),
            _ => None,
        }
    }

    pub fn pow(self, exponent: i32) -> Expr {
        Expr::Pow(Box::new(self), exponent)
    }

    pub fn apply(func: Func, arg: Expr) -> Expr {
        Expr::Apply(func, Box::new(arg))
    }

    pub fn exp(self) -> Expr {
        Expr::apply(Func::Exp, self)
    }

    pub fn log(self) -> Expr {
        Expr::apply(Func::Log, self)
    }

    pub fn sin(self) -> Expr {
        Expr::apply(Func::Sin, self)
    }

    pub fn cos(self) -> Expr {
        Expr::apply(Func::Cos, self)
    }

    pub fn sqrt(self) -> Expr {
        Expr::apply(Func::Sqrt, self)
    }

    /// Collects the coordinate names occurring in the expression.
    pub fn free_coords(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_coords(&mut out);
        out
    }

    fn collect_coords(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Coord(name) => {
                out.insert(name.clone());
            }
            Expr::Add(items) | Expr::Mul(items) => {
                for item in items {
                    item.collect_coords(out);
                }
            }
            Expr::Pow(base, _) => base.collect_coords(out),
            Expr::Apply(_, arg) => arg.collect_coords(out),
        }
    }

    /// Substitutes coordinates by expressions and simplifies the result.
    ///
    /// Coordinates missing from `map` are left untouched, so partial
    /// substitutions are fine.
    pub fn subst(&self, map: &alloc::collections::BTreeMap<String, Expr>) -> Expr {
        self.subst_raw(map).simplify()
    }

    fn subst_raw(&self, map: &alloc::collections::BTreeMap<String, Expr>) -> Expr {
        match self {
            Expr::Num(_) => self.clone(),
            Expr::Coord(name) => match map.get(name) {
                Some(replacement) => replacement.clone(),
                None => self.clone(),
            },
            Expr::Add(items) => Expr::Add(items.iter().map(|e| e.subst_raw(map)).collect()),
            Expr::Mul(items) => Expr::Mul(items.iter().map(|e| e.subst_raw(map)).collect()),
            Expr::Pow(base, k) => Expr::Pow(Box::new(base.subst_raw(map)), *k),
            Expr::Apply(f, arg) => Expr::Apply(*f, Box::new(arg.subst_raw(map))),
        }
    }

    /// Splits off a negative sign for printing: returns `(true, -e)` when the
    /// leading rational coefficient is negative.
    pub(crate) fn sign_split(&self) -> (bool, Expr) {
        match self {
            Expr::Num(r) if r.is_negative() => (true, Expr::Num(-r.clone())),
            Expr::Mul(factors) => {
                if let Some(Expr::Num(r)) = factors.first() {
                    if r.is_negative() {
                        let mut rest = factors.clone();
                        rest[0] = Expr::Num(-r.clone());
                        return (true, Expr::Mul(rest).light_normalize());
                    }
                }
                (false, self.clone())
            }
            _ => (false, self.clone()),
        }
    }

    /// Drops trivial wrappers (`Mul([x])`, leading factor 1) without running
    /// the full simplifier.
    fn light_normalize(self) -> Expr {
        match self {
            Expr::Mul(mut factors) => {
                if factors.len() > 1 {
                    if let Some(Expr::Num(r)) = factors.first() {
                        if r.is_one() {
                            factors.remove(0);
                        }
                    }
                }
                if factors.len() == 1 {
                    factors.pop().expect("nonempty")
                } else {
                    Expr::Mul(factors)
                }
            }
            other => other,
        }
    }
}

fn flatten_binary(kind_add: bool, lhs: Expr, rhs: Expr) -> Expr {
    let mut items = Vec::new();
    let push = |e: Expr, items: &mut Vec<Expr>| match (kind_add, e) {
        (true, Expr::Add(inner)) => items.extend(inner),
        (false, Expr::Mul(inner)) => items.extend(inner),
        (_, other) => items.push(other),
    };
    push(lhs, &mut items);
    push(rhs, &mut items);
    if kind_add {
        Expr::Add(items)
    } else {
        Expr::Mul(items)
    }
}

impl core::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        flatten_binary(true, self, rhs)
    }
}

impl core::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        flatten_binary(true, self, -rhs)
    }
}

impl core::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        flatten_binary(false, self, rhs)
    }
}

impl core::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        flatten_binary(false, self, Expr::Pow(Box::new(rhs), -1))
    }
}

impl core::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        flatten_binary(false, Expr::int(-1), self)
    }
}

impl core::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        let items: Vec<Expr> = iter.collect();
        match items.len() {
            0 => Expr::zero(),
            1 => items.into_iter().next().expect("one item"),
            _ => Expr::Add(items),
        }
    }
}
