//! Randomized sampling domains and tolerance-based expression equivalence.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;

use super::{EvalError, Expr, SamplePoint};

/// Per-coordinate open sampling intervals; coordinates without an explicit
/// interval use the default `(-1, 1)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DomainBox {
    intervals: BTreeMap<String, (f64, f64)>,
}

pub const DEFAULT_INTERVAL: (f64, f64) = (-1.0, 1.0);

impl DomainBox {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the open interval for one coordinate. Panics if it is empty.
    pub fn with(mut self, coord: &str, lo: f64, hi: f64) -> Self {
        self.set(coord, lo, hi);
        self
    }

    pub fn set(&mut self, coord: &str, lo: f64, hi: f64) {
        assert!(lo < hi, "empty interval for coordinate `{coord}`");
        self.intervals.insert(coord.to_string(), (lo, hi));
    }

    pub fn interval(&self, coord: &str) -> (f64, f64) {
        self.intervals
            .get(coord)
            .copied()
            .unwrap_or(DEFAULT_INTERVAL)
    }

    pub fn explicit_intervals(&self) -> impl Iterator<Item = (&str, (f64, f64))> {
        self.intervals.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Draws one point assigning every coordinate in `coords`.
    pub fn sample(&self, coords: &[String], rng: &mut impl Rng) -> SamplePoint {
        let mut point = SamplePoint::new();
        for coord in coords {
            let (lo, hi) = self.interval(coord);
            point.set(coord, rng.gen_range(lo..hi));
        }
        point
    }
}

/// Failure of the sampling fallback.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivError {
    /// Too many sampled points violated a function domain.
    RetriesExhausted(EvalError),
    /// A non-domain evaluation failure (e.g. a coordinate with no interval
    /// assignment reached evaluation).
    Eval(EvalError),
}

impl core::fmt::Display for EquivError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EquivError::RetriesExhausted(e) => {
                write!(f, "sampling retries exhausted; last domain error: {e}")
            }
            EquivError::Eval(e) => write!(f, "evaluation failed: {e}"),
        }
    }
}

impl core::error::Error for EquivError {}

const RETRIES_PER_POINT: usize = 100;

/// Draws a point in `dom` at which `exprs` all evaluate, redrawing on domain
/// errors up to a retry cap.
pub fn sample_in_domain(
    exprs: &[&Expr],
    coords: &[String],
    dom: &DomainBox,
    rng: &mut impl Rng,
) -> Result<(SamplePoint, Vec<f64>), EquivError> {
    let mut last_domain_error: Option<EvalError> = None;
    for _ in 0..RETRIES_PER_POINT {
        let point = dom.sample(coords, rng);
        let mut values = Vec::with_capacity(exprs.len());
        let mut rejected = false;
        for e in exprs {
            match e.eval(&point) {
                Ok(v) => values.push(v),
                Err(err @ (EvalError::Domain(_) | EvalError::NotFinite)) => {
                    last_domain_error = Some(err);
                    rejected = true;
                    break;
                }
                Err(err) => return Err(EquivError::Eval(err)),
            }
        }
        if !rejected {
            return Ok((point, values));
        }
    }
    Err(EquivError::RetriesExhausted(
        last_domain_error.unwrap_or(EvalError::NotFinite),
    ))
}

/// Decides `a == b` by canonical simplification with a seeded randomized
/// evaluation fallback.
///
/// Returns `true` iff the simplified difference is the literal zero, or
/// `|a - b| <= tol * (1 + max(|a|, |b|))` at all `n_points` sampled points.
pub fn exprs_equivalent(
    a: &Expr,
    b: &Expr,
    dom: &DomainBox,
    n_points: usize,
    tol: f64,
    rng: &mut impl Rng,
) -> Result<bool, EquivError> {
    assert!(n_points >= 1, "need at least one sample point");
    assert!(tol > 0.0, "tolerance must be positive");
    let difference = (a.clone() - b.clone()).simplify();
    if difference.is_zero() {
        return Ok(true);
    }
    let mut coords: Vec<String> = a.free_coords().union(&b.free_coords()).cloned().collect();
    coords.sort();
    for _ in 0..n_points {
        let (_, values) = sample_in_domain(&[a, b], &coords, dom, rng)?;
        let (va, vb) = (values[0], values[1]);
        let scale = 1.0 + libm::fabs(va).max(libm::fabs(vb));
        if libm::fabs(va - vb) > tol * scale {
            return Ok(false);
        }
    }
    Ok(true)
}
