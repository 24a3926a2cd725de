//! Small dense linear algebra: exact Gaussian elimination over symbolic
//! expressions, and pointwise numerical rank / eigenvalue helpers.
//!
//! Symbolic elimination needs to decide whether a pivot candidate is the zero
//! function. That is done by canonical simplification first and, when the
//! simplified form is not literally zero, by seeded sampling: an expression
//! whose magnitude stays below the tolerance at every sampled point is
//! treated as zero. All charts in this crate are low-dimensional (n <= 5), so
//! cubic elimination cost is irrelevant.

use alloc::string::String;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use rand::rngs::SmallRng;
use rand::SeedableRng;

use crate::expr::{sample_in_domain, DomainBox, EvalError, Expr, SamplePoint};

/// Seeded, sampling-based zero test for symbolic expressions.
#[derive(Clone, Debug)]
pub struct ZeroProbe {
    pub domain: DomainBox,
    pub coords: Vec<String>,
    pub points: usize,
    pub tol: f64,
    pub seed: u64,
}

impl ZeroProbe {
    pub fn new(domain: DomainBox, coords: Vec<String>, points: usize, tol: f64, seed: u64) -> Self {
        ZeroProbe {
            domain,
            coords,
            points,
            tol,
            seed,
        }
    }

    /// True when the expression is identically zero as far as simplification
    /// and sampling can tell.
    pub fn is_zero(&self, e: &Expr) -> bool {
        let simplified = e.simplify();
        if simplified.is_zero() {
            return true;
        }
        if matches!(simplified, Expr::Num(_)) {
            return false;
        }
        let mut rng = SmallRng::seed_from_u64(self.seed);
        for _ in 0..self.points.max(1) {
            match sample_in_domain(&[&simplified], &self.coords, &self.domain, &mut rng) {
                Ok((_, values)) => {
                    if libm::fabs(values[0]) > self.tol {
                        return false;
                    }
                }
                // An expression undefined on the whole box cannot be
                // certified zero.
                Err(_) => return false,
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    /// No usable pivot: the system matrix is singular on the sampling domain.
    Singular { column: usize },
    /// An overdetermined system has a row incompatible with the solution.
    Inconsistent { row: usize },
    Shape,
}

impl core::fmt::Display for SolveError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SolveError::Singular { column } => {
                write!(f, "singular symbolic system (no pivot for column {column})")
            }
            SolveError::Inconsistent { row } => {
                write!(f, "inconsistent symbolic system (row {row} has nonzero residual)")
            }
            SolveError::Shape => write!(f, "matrix/vector shapes do not match"),
        }
    }
}

impl core::error::Error for SolveError {}

/// Solves `A x = b` for a square symbolic system by Gauss-Jordan elimination
/// with exact expression arithmetic.
pub fn solve_square(
    a: &[Vec<Expr>],
    b: &[Expr],
    probe: &ZeroProbe,
) -> Result<Vec<Expr>, SolveError> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(SolveError::Shape);
    }
    solve_rectangular(a, b, probe)
}

/// Solves `A x = b` where `A` is `rows x cols` with `rows >= cols`; the
/// system must be consistent, and surplus rows are verified against the
/// solution.
pub fn solve_rectangular(
    a: &[Vec<Expr>],
    b: &[Expr],
    probe: &ZeroProbe,
) -> Result<Vec<Expr>, SolveError> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if b.len() != rows || rows < cols || a.iter().any(|row| row.len() != cols) {
        return Err(SolveError::Shape);
    }

    let mut m: Vec<Vec<Expr>> = a
        .iter()
        .map(|row| row.iter().map(Expr::simplify).collect())
        .collect();
    let mut rhs: Vec<Expr> = b.iter().map(Expr::simplify).collect();
    let mut pivot_row_of_col: Vec<usize> = Vec::with_capacity(cols);
    let mut used_rows = alloc::vec![false; rows];

    for col in 0..cols {
        let pivot = select_pivot(&m, &used_rows, col, probe)
            .ok_or(SolveError::Singular { column: col })?;
        used_rows[pivot] = true;
        pivot_row_of_col.push(pivot);

        let pivot_entry = m[pivot][col].clone();
        for row in 0..rows {
            if row == pivot {
                continue;
            }
            let target = m[row][col].clone();
            if target.is_zero() {
                continue;
            }
            let factor = (target / pivot_entry.clone()).simplify();
            let pivot_row = m[pivot].clone();
            for (entry, pivot_entry) in m[row].iter_mut().zip(&pivot_row).skip(col) {
                *entry = (entry.clone() - factor.clone() * pivot_entry.clone()).simplify();
            }
            rhs[row] = (rhs[row].clone() - factor.clone() * rhs[pivot].clone()).simplify();
        }
    }

    // Surplus rows must have been reduced to 0 = 0.
    for row in 0..rows {
        if !used_rows[row] && !probe.is_zero(&rhs[row]) {
            return Err(SolveError::Inconsistent { row });
        }
    }

    let mut solution = Vec::with_capacity(cols);
    for col in 0..cols {
        let row = pivot_row_of_col[col];
        solution.push((rhs[row].clone() / m[row][col].clone()).simplify());
    }
    Ok(solution)
}

/// Prefers exact nonzero constants as pivots, then any expression the probe
/// certifies nonzero.
fn select_pivot(
    m: &[Vec<Expr>],
    used_rows: &[bool],
    col: usize,
    probe: &ZeroProbe,
) -> Option<usize> {
    let candidates = (0..m.len()).filter(|&r| !used_rows[r]);
    let mut symbolic_fallback = None;
    for row in candidates {
        match &m[row][col] {
            Expr::Num(r) if !num_traits::Zero::is_zero(r) => return Some(row),
            e if e.is_zero() => {}
            _ if symbolic_fallback.is_none() => symbolic_fallback = Some(row),
            _ => {}
        }
    }
    symbolic_fallback.filter(|&row| !probe.is_zero(&m[row][col]))
}

/// Inverts a square symbolic matrix column by column.
pub fn invert(a: &[Vec<Expr>], probe: &ZeroProbe) -> Result<Vec<Vec<Expr>>, SolveError> {
    let n = a.len();
    let mut columns: Vec<Vec<Expr>> = Vec::with_capacity(n);
    for j in 0..n {
        let unit: Vec<Expr> = (0..n)
            .map(|i| if i == j { Expr::one() } else { Expr::zero() })
            .collect();
        columns.push(solve_square(a, &unit, probe)?);
    }
    // columns[j][i] = (A^-1)_{ij}; transpose into row-major form.
    Ok((0..n)
        .map(|i| (0..n).map(|j| columns[j][i].clone()).collect())
        .collect())
}

/// Evaluates a symbolic matrix at a point.
pub fn eval_matrix(rows: &[Vec<Expr>], point: &SamplePoint) -> Result<DMatrix<f64>, EvalError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut data = Vec::with_capacity(nrows * ncols);
    for row in rows {
        for entry in row {
            data.push(entry.eval(point)?);
        }
    }
    Ok(DMatrix::from_row_slice(nrows, ncols, &data))
}

/// Rank with singular values below `tol * sigma_max` treated as zero.
pub fn rank_with_tolerance(m: &DMatrix<f64>, tol: f64) -> usize {
    let singular_values = m.clone().singular_values();
    let sigma_max = singular_values.iter().cloned().fold(0.0f64, f64::max);
    if sigma_max == 0.0 {
        return 0;
    }
    singular_values
        .iter()
        .filter(|&&sigma| sigma > tol * sigma_max)
        .count()
}

/// True when `v` lies in the column span of `m` (rank does not grow).
pub fn in_column_span(m: &DMatrix<f64>, v: &[f64], tol: f64) -> bool {
    let base_rank = rank_with_tolerance(m, tol);
    let mut extended = m.clone().insert_column(m.ncols(), 0.0);
    let last = extended.ncols() - 1;
    for (i, value) in v.iter().enumerate() {
        extended[(i, last)] = *value;
    }
    rank_with_tolerance(&extended, tol) == base_rank
}

/// Eigenvalues of a symmetric matrix (for metric signature classification).
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    m.clone().symmetric_eigen().eigenvalues.iter().copied().collect()
}
