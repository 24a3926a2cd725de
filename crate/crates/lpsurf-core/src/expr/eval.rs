//! Numerical evaluation at sample points.
//!
//! Evaluation either returns a finite `f64` or a domain error; it never
//! returns a silent NaN or infinity.

use alloc::collections::BTreeMap;
use alloc::string::String;

use num_traits::ToPrimitive;

use super::{Expr, Func};

/// An assignment of real values to coordinate names.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SamplePoint {
    values: BTreeMap<String, f64>,
}

impl SamplePoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        let mut point = Self::new();
        for (name, value) in pairs {
            point.set(name, value);
        }
        point
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.values.insert(String::from(name), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl core::fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(")?;
        for (i, (name, value)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={value}")?;
        }
        write!(f, ")")
    }
}

/// Evaluation failure: either the point misses a coordinate or it lies
/// outside the domain of one of the functions involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    MissingCoordinate(String),
    /// `log` of a non-positive value, `sqrt` of a negative value, `arcsin`
    /// outside [-1, 1], or a negative power of zero.
    Domain(&'static str),
    /// The arithmetic overflowed to infinity or produced NaN.
    NotFinite,
}

impl core::fmt::Display for EvalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EvalError::MissingCoordinate(name) => {
                write!(f, "sample point does not assign coordinate `{name}`")
            }
            EvalError::Domain(what) => write!(f, "domain error: {what}"),
            EvalError::NotFinite => write!(f, "evaluation produced a non-finite value"),
        }
    }
}

impl core::error::Error for EvalError {}

impl Expr {
    /// Evaluates at `point`, demanding a finite result.
    pub fn eval(&self, point: &SamplePoint) -> Result<f64, EvalError> {
        let value = self.eval_inner(point)?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(EvalError::NotFinite)
        }
    }

    fn eval_inner(&self, point: &SamplePoint) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(r) => r.to_f64().ok_or(EvalError::NotFinite)?,
            Expr::Coord(name) => point
                .get(name)
                .ok_or_else(|| EvalError::MissingCoordinate(name.clone()))?,
            Expr::Add(items) => {
                let mut acc = 0.0;
                for item in items {
                    acc += item.eval_inner(point)?;
                }
                acc
            }
            Expr::Mul(items) => {
                let mut acc = 1.0;
                for item in items {
                    acc *= item.eval_inner(point)?;
                }
                acc
            }
            Expr::Pow(base, k) => {
                let b = base.eval_inner(point)?;
                if b == 0.0 && *k < 0 {
                    return Err(EvalError::Domain("negative power of zero"));
                }
                libm::pow(b, *k as f64)
            }
            Expr::Apply(func, arg) => {
                let a = arg.eval_inner(point)?;
                match func {
                    Func::Exp => libm::exp(a),
                    Func::Log => {
                        if a <= 0.0 {
                            return Err(EvalError::Domain("log of a non-positive value"));
                        }
                        libm::log(a)
                    }
                    Func::Sin => libm::sin(a),
                    Func::Cos => libm::cos(a),
                    Func::Tan => libm::tan(a),
                    Func::ArcSin => {
                        if !(-1.0..=1.0).contains(&a) {
                            return Err(EvalError::Domain("arcsin outside [-1, 1]"));
                        }
                        libm::asin(a)
                    }
                    Func::ArcTan => libm::atan(a),
                    Func::Sqrt => {
                        if a < 0.0 {
                            return Err(EvalError::Domain("sqrt of a negative value"));
                        }
                        libm::sqrt(a)
                    }
                }
            }
        })
    }
}
