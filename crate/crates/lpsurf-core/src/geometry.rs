//! Charts, tensor fields and the differential operators the structure
//! verifiers are built from: Lie bracket, Levi-Civita connection, covariant
//! and Lie derivatives, exterior derivative of 1-forms and wedge products.
//!
//! Components are stored densely (every chart here has n <= 5). Sign and
//! factor conventions are fixed once and used consistently everywhere:
//!
//! * `d(eta)(X, Y) = X(eta(Y)) - Y(eta(X)) - eta([X, Y])`, i.e. components
//!   `d(eta)_{ij} = d_i eta_j - d_j eta_i`, with **no 1/2 factor**;
//! * `(beta ^ gamma)(X, Y) = beta(X) gamma(Y) - beta(Y) gamma(X)`, again with
//!   no 1/2.
//!
//! These choices make the normality condition and the hypersurface
//! fundamental-form relation hold exactly as the verifiers state them;
//! other textbook conventions differ by factors of 2.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use crate::expr::{DomainBox, Expr, SamplePoint};
use crate::linalg::{self, ZeroProbe};

#[derive(Debug, PartialEq)]
struct ChartData {
    coords: Vec<String>,
    domain: DomainBox,
}

/// An ordered coordinate system with a sampling domain. Cheap to clone.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    inner: Arc<ChartData>,
}

impl Chart {
    /// Panics if the names are not distinct or fewer than two.
    pub fn new(coords: &[&str], domain: DomainBox) -> Chart {
        let names: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
        assert!(names.len() >= 2, "a chart needs at least two coordinates");
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                assert!(a != b, "duplicate coordinate `{a}`");
            }
        }
        Chart {
            inner: Arc::new(ChartData {
                coords: names,
                domain,
            }),
        }
    }

    pub fn dim(&self) -> usize {
        self.inner.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.inner.coords
    }

    pub fn coord(&self, index: usize) -> &str {
        &self.inner.coords[index]
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.inner.coords.iter().position(|c| c == name)
    }

    pub fn domain(&self) -> &DomainBox {
        &self.inner.domain
    }

    pub fn sample(&self, rng: &mut impl Rng) -> SamplePoint {
        self.inner.domain.sample(&self.inner.coords, rng)
    }

    /// Zero probe over this chart's coordinates and domain.
    pub fn probe(&self, points: usize, tol: f64, seed: u64) -> ZeroProbe {
        ZeroProbe::new(
            self.inner.domain.clone(),
            self.inner.coords.to_vec(),
            points,
            tol,
            seed,
        )
    }

    fn same_as(&self, other: &Chart) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

/// Dense (r, s)-tensor field over a chart; upper indices first.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorField {
    chart: Chart,
    contravariant: usize,
    covariant: usize,
    comps: Vec<Expr>,
}

impl TensorField {
    /// Builds a field from row-major components (upper indices outermost),
    /// simplifying each. Panics on a component-count mismatch.
    pub fn new(chart: Chart, contravariant: usize, covariant: usize, comps: Vec<Expr>) -> Self {
        let n = chart.dim();
        let expected = n.pow((contravariant + covariant) as u32);
        assert_eq!(
            comps.len(),
            expected,
            "a ({contravariant},{covariant})-tensor over an n={n} chart needs {expected} components"
        );
        TensorField {
            chart,
            contravariant,
            covariant,
            comps: comps.iter().map(Expr::simplify).collect(),
        }
    }

    pub fn from_fn(
        chart: Chart,
        contravariant: usize,
        covariant: usize,
        mut f: impl FnMut(&[usize]) -> Expr,
    ) -> Self {
        let n = chart.dim();
        let rank = contravariant + covariant;
        let total = n.pow(rank as u32);
        let mut comps = Vec::with_capacity(total);
        let mut index = alloc::vec![0usize; rank];
        for flat in 0..total {
            unflatten(flat, n, &mut index);
            comps.push(f(&index));
        }
        TensorField::new(chart, contravariant, covariant, comps)
    }

    pub fn zeros(chart: Chart, contravariant: usize, covariant: usize) -> Self {
        TensorField::from_fn(chart, contravariant, covariant, |_| Expr::zero())
    }

    /// The identity (1,1)-tensor.
    pub fn identity(chart: Chart) -> Self {
        TensorField::from_fn(chart, 1, 1, |idx| {
            if idx[0] == idx[1] {
                Expr::one()
            } else {
                Expr::zero()
            }
        })
    }

    /// The Euclidean (0,2) metric tensor `delta_{ij}`.
    pub fn identity_metric(chart: Chart) -> Self {
        TensorField::from_fn(chart, 0, 2, |idx| {
            if idx[0] == idx[1] {
                Expr::one()
            } else {
                Expr::zero()
            }
        })
    }

    /// The a-th coordinate vector field.
    pub fn coordinate_vector(chart: Chart, a: usize) -> Self {
        TensorField::from_fn(chart, 1, 0, |idx| {
            if idx[0] == a {
                Expr::one()
            } else {
                Expr::zero()
            }
        })
    }

    pub fn vector(chart: Chart, comps: Vec<Expr>) -> Self {
        TensorField::new(chart, 1, 0, comps)
    }

    pub fn one_form(chart: Chart, comps: Vec<Expr>) -> Self {
        TensorField::new(chart, 0, 1, comps)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.contravariant, self.covariant)
    }

    pub fn comps(&self) -> &[Expr] {
        &self.comps
    }

    pub fn comp(&self, index: &[usize]) -> &Expr {
        assert_eq!(index.len(), self.contravariant + self.covariant);
        &self.comps[flatten(index, self.chart.dim())]
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> TensorField {
        TensorField::new(
            self.chart.clone(),
            self.contravariant,
            self.covariant,
            self.comps.iter().map(f).collect(),
        )
    }

    pub fn add(&self, other: &TensorField) -> TensorField {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &TensorField) -> TensorField {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, factor: &Expr) -> TensorField {
        self.map(|c| factor.clone() * c.clone())
    }

    fn zip(&self, other: &TensorField, f: impl Fn(&Expr, &Expr) -> Expr) -> TensorField {
        assert!(self.chart.same_as(&other.chart), "chart mismatch");
        assert_eq!(self.signature(), other.signature(), "signature mismatch");
        TensorField::new(
            self.chart.clone(),
            self.contravariant,
            self.covariant,
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a, b))
                .collect(),
        )
    }

    /// `phi(X)` for a (1,1)-tensor and a vector field.
    pub fn apply_endo(&self, v: &TensorField) -> TensorField {
        assert_eq!(self.signature(), (1, 1));
        assert_eq!(v.signature(), (1, 0));
        assert!(self.chart.same_as(&v.chart), "chart mismatch");
        let n = self.chart.dim();
        TensorField::from_fn(self.chart.clone(), 1, 0, |idx| {
            (0..n)
                .map(|j| self.comp(&[idx[0], j]).clone() * v.comp(&[j]).clone())
                .sum()
        })
    }

    /// `phi . psi` for two (1,1)-tensors.
    pub fn endo_compose(&self, other: &TensorField) -> TensorField {
        assert_eq!(self.signature(), (1, 1));
        assert_eq!(other.signature(), (1, 1));
        let n = self.chart.dim();
        TensorField::from_fn(self.chart.clone(), 1, 1, |idx| {
            (0..n)
                .map(|k| self.comp(&[idx[0], k]).clone() * other.comp(&[k, idx[1]]).clone())
                .sum()
        })
    }

    /// `eta(X)` for a 1-form and a vector field.
    pub fn pair(&self, v: &TensorField) -> Expr {
        assert_eq!(self.signature(), (0, 1));
        assert_eq!(v.signature(), (1, 0));
        let n = self.chart.dim();
        (0..n)
            .map(|i| self.comp(&[i]).clone() * v.comp(&[i]).clone())
            .sum::<Expr>()
            .simplify()
    }

    /// `g(X, Y)` for a (0,2)-tensor and two vector fields.
    pub fn bilinear(&self, x: &TensorField, y: &TensorField) -> Expr {
        assert_eq!(self.signature(), (0, 2));
        assert_eq!(x.signature(), (1, 0));
        assert_eq!(y.signature(), (1, 0));
        let n = self.chart.dim();
        let mut acc = Expr::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc
                    + self.comp(&[i, j]).clone() * x.comp(&[i]).clone() * y.comp(&[j]).clone();
            }
        }
        acc.simplify()
    }

    /// Square component matrix of a (1,1)- or (0,2)-tensor, rows first index.
    pub fn matrix_rows(&self) -> Vec<Vec<Expr>> {
        assert!(matches!(self.signature(), (1, 1) | (0, 2) | (2, 0)));
        let n = self.chart.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.comp(&[i, j]).clone()).collect())
            .collect()
    }

    /// True when every component simplifies to the literal zero.
    pub fn is_structurally_zero(&self) -> bool {
        self.comps.iter().all(Expr::is_zero)
    }
}

fn flatten(index: &[usize], n: usize) -> usize {
    index.iter().fold(0, |acc, &i| {
        debug_assert!(i < n);
        acc * n + i
    })
}

fn unflatten(mut flat: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = flat % n;
        flat /= n;
    }
}

/// Affine connection coefficients `Gamma^k_{ij}`, indexed `[k][i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    chart: Chart,
    gamma: Vec<Expr>,
    torsion_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionError {
    /// The torsion-free flag was requested but `Gamma^k_{ij} != Gamma^k_{ji}`
    /// symbolically.
    NotSymmetric { k: usize, i: usize, j: usize },
    ComponentCount { expected: usize, got: usize },
}

impl core::fmt::Display for ConnectionError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ConnectionError::NotSymmetric { k, i, j } => write!(
                f,
                "connection is not symmetric: Gamma^{k}_{{{i}{j}}} != Gamma^{k}_{{{j}{i}}}"
            ),
            ConnectionError::ComponentCount { expected, got } => {
                write!(f, "connection needs {expected} coefficients, got {got}")
            }
        }
    }
}

impl core::error::Error for ConnectionError {}

impl Connection {
    /// Builds a connection from `n^3` coefficients. With `torsion_free` the
    /// symmetry `Gamma^k_{ij} = Gamma^k_{ji}` is required to hold
    /// symbolically.
    pub fn new(chart: Chart, gamma: Vec<Expr>, torsion_free: bool) -> Result<Self, ConnectionError> {
        let n = chart.dim();
        if gamma.len() != n * n * n {
            return Err(ConnectionError::ComponentCount {
                expected: n * n * n,
                got: gamma.len(),
            });
        }
        let gamma: Vec<Expr> = gamma.iter().map(Expr::simplify).collect();
        let conn = Connection {
            chart,
            gamma,
            torsion_free,
        };
        if torsion_free {
            for k in 0..n {
                for i in 0..n {
                    for j in (i + 1)..n {
                        let difference =
                            (conn.gamma(k, i, j).clone() - conn.gamma(k, j, i).clone()).simplify();
                        if !difference.is_zero() {
                            return Err(ConnectionError::NotSymmetric { k, i, j });
                        }
                    }
                }
            }
        }
        Ok(conn)
    }

    /// The zero (flat coordinate) connection; trivially torsion-free.
    pub fn zero(chart: Chart) -> Self {
        let n = chart.dim();
        Connection {
            chart,
            gamma: alloc::vec![Expr::zero(); n * n * n],
            torsion_free: true,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_free
    }

    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Expr {
        let n = self.chart.dim();
        &self.gamma[(k * n + i) * n + j]
    }
}

/// Metric signature determined numerically at sampled points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricSignature {
    Riemannian,
    /// Exactly one negative eigenvalue.
    Lorentzian,
    Other { negative: usize },
}

#[derive(Clone, Debug)]
pub enum MetricError {
    NotSymmetric { i: usize, j: usize },
    /// The symbolic inverse does not exist on the sampling domain.
    Singular,
    /// Evaluation failed while classifying the signature.
    Evaluation(crate::expr::EvalError),
    WrongSignature,
}

impl core::fmt::Display for MetricError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MetricError::NotSymmetric { i, j } => {
                write!(f, "metric is not symmetric: g_{{{i}{j}}} != g_{{{j}{i}}}")
            }
            MetricError::Singular => write!(f, "metric is singular on the sampling domain"),
            MetricError::Evaluation(e) => write!(f, "metric evaluation failed: {e}"),
            MetricError::WrongSignature => write!(f, "input tensor is not a (0,2) field"),
        }
    }
}

impl core::error::Error for MetricError {}

/// A symbolically symmetric, invertible (0,2)-tensor with cached inverse.
#[derive(Clone, Debug)]
pub struct MetricField {
    tensor: TensorField,
    inverse: Vec<Vec<Expr>>,
    signature: MetricSignature,
}

impl MetricField {
    /// Validates symmetry symbolically, inverts the component matrix exactly
    /// and classifies the signature from eigenvalue signs at a sampled point.
    pub fn new(tensor: TensorField, probe: &ZeroProbe) -> Result<Self, MetricError> {
        if tensor.signature() != (0, 2) {
            return Err(MetricError::WrongSignature);
        }
        let n = tensor.chart().dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let difference =
                    (tensor.comp(&[i, j]).clone() - tensor.comp(&[j, i]).clone()).simplify();
                if !difference.is_zero() {
                    return Err(MetricError::NotSymmetric { i, j });
                }
            }
        }
        let rows = tensor.matrix_rows();
        let inverse = linalg::invert(&rows, probe).map_err(|_| MetricError::Singular)?;

        let mut rng = rand::rngs::SmallRng::seed_from_u64(probe.seed);
        let (_, eigen) = sample_metric_eigenvalues(&rows, probe, &mut rng)?;
        let negative = eigen.iter().filter(|&&v| v < -probe.tol).count();
        let positive = eigen.iter().filter(|&&v| v > probe.tol).count();
        if negative + positive != n {
            return Err(MetricError::Singular);
        }
        let signature = match negative {
            0 => MetricSignature::Riemannian,
            1 => MetricSignature::Lorentzian,
            k => MetricSignature::Other { negative: k },
        };
        Ok(MetricField {
            tensor,
            inverse,
            signature,
        })
    }

    pub fn chart(&self) -> &Chart {
        self.tensor.chart()
    }

    pub fn tensor(&self) -> &TensorField {
        &self.tensor
    }

    pub fn comp(&self, i: usize, j: usize) -> &Expr {
        self.tensor.comp(&[i, j])
    }

    /// `g^{ij}` of the cached exact inverse.
    pub fn inverse_comp(&self, i: usize, j: usize) -> &Expr {
        &self.inverse[i][j]
    }

    pub fn signature(&self) -> MetricSignature {
        self.signature
    }

    /// `g(X, Y)`.
    pub fn pairing(&self, x: &TensorField, y: &TensorField) -> Expr {
        self.tensor.bilinear(x, y)
    }
}

use rand::SeedableRng;

fn sample_metric_eigenvalues(
    rows: &[Vec<Expr>],
    probe: &ZeroProbe,
    rng: &mut impl Rng,
) -> Result<(SamplePoint, Vec<f64>), MetricError> {
    for _ in 0..64 {
        let point = probe.domain.sample(&probe.coords, rng);
        match linalg::eval_matrix(rows, &point) {
            Ok(matrix) => {
                let symmetrized = (&matrix + matrix.transpose()) * 0.5;
                return Ok((point, linalg::symmetric_eigenvalues(&symmetrized)));
            }
            Err(crate::expr::EvalError::Domain(_)) | Err(crate::expr::EvalError::NotFinite) => {
                continue
            }
            Err(e) => return Err(MetricError::Evaluation(e)),
        }
    }
    Err(MetricError::Singular)
}

/// `[X, Y]^k = X^i d_i Y^k - Y^i d_i X^k`.
pub fn lie_bracket(x: &TensorField, y: &TensorField) -> TensorField {
    assert_eq!(x.signature(), (1, 0));
    assert_eq!(y.signature(), (1, 0));
    assert!(x.chart().same_as(y.chart()), "chart mismatch");
    let chart = x.chart().clone();
    let n = chart.dim();
    TensorField::from_fn(chart.clone(), 1, 0, |idx| {
        let k = idx[0];
        (0..n)
            .map(|i| {
                x.comp(&[i]).clone() * y.comp(&[k]).diff(chart.coord(i))
                    - y.comp(&[i]).clone() * x.comp(&[k]).diff(chart.coord(i))
            })
            .sum()
    })
}

/// Levi-Civita connection of `g` by the Koszul formula
/// `Gamma^k_{ij} = 1/2 g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij})`.
pub fn levi_civita(g: &MetricField) -> Connection {
    let chart = g.chart().clone();
    let n = chart.dim();
    let mut gamma = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = Expr::zero();
                for l in 0..n {
                    let term = g.comp(j, l).diff(chart.coord(i))
                        + g.comp(i, l).diff(chart.coord(j))
                        - g.comp(i, j).diff(chart.coord(l));
                    acc = acc + g.inverse_comp(k, l).clone() * term;
                }
                gamma.push((Expr::rational(1, 2) * acc).simplify());
            }
        }
    }
    Connection {
        chart,
        gamma,
        torsion_free: true,
    }
}

/// Covariant derivative `nabla_X T` for the supported signatures
/// (1,0), (0,1), (0,2) and (1,1).
pub fn covariant_derivative(
    conn: &Connection,
    t: &TensorField,
    x: &TensorField,
) -> TensorField {
    assert_eq!(x.signature(), (1, 0));
    assert!(conn.chart().same_as(t.chart()), "chart mismatch");
    assert!(conn.chart().same_as(x.chart()), "chart mismatch");
    let gradient = nabla(conn, t);
    let chart = t.chart().clone();
    let n = chart.dim();
    let (r, s) = t.signature();
    TensorField::from_fn(chart, r, s, |idx| {
        let mut full = alloc::vec![0usize; idx.len() + 1];
        full[1..].copy_from_slice(idx);
        (0..n)
            .map(|i| {
                full[0] = i;
                x.comp(&[i]).clone() * gradient_comp(&gradient, r, &full)
            })
            .sum()
    })
}

// The gradient stores the direction index as the first covariant slot; this
// helper reorders (direction, upper..., lower...) into storage order.
fn gradient_comp(gradient: &TensorField, r: usize, full: &[usize]) -> Expr {
    let mut index = Vec::with_capacity(full.len());
    index.extend_from_slice(&full[1..1 + r]);
    index.push(full[0]);
    index.extend_from_slice(&full[1 + r..]);
    gradient.comp(&index).clone()
}

/// Total covariant derivative: one extra covariant slot, placed first among
/// the lower indices, so `nabla(T).comp([upper..., i, lower...])` is
/// `(nabla_i T)^upper_lower`.
pub fn nabla(conn: &Connection, t: &TensorField) -> TensorField {
    let chart = t.chart().clone();
    let n = chart.dim();
    let (r, s) = t.signature();
    assert!(
        matches!((r, s), (1, 0) | (0, 1) | (0, 2) | (1, 1)),
        "unsupported signature ({r},{s}) for covariant differentiation"
    );
    TensorField::from_fn(chart.clone(), r, s + 1, |idx| {
        // idx = [upper..., direction, lower...]
        let direction = idx[r];
        let mut inner: Vec<usize> = Vec::with_capacity(r + s);
        inner.extend_from_slice(&idx[..r]);
        inner.extend_from_slice(&idx[r + 1..]);

        let mut acc = t.comp(&inner).diff(chart.coord(direction));
        // one +Gamma term per contravariant slot
        for slot in 0..r {
            let mut contracted = inner.clone();
            for m in 0..n {
                contracted[slot] = m;
                acc = acc
                    + conn.gamma(idx[slot], direction, m).clone()
                        * t.comp(&contracted).clone();
            }
        }
        // one -Gamma term per covariant slot
        for slot in 0..s {
            let mut contracted = inner.clone();
            for m in 0..n {
                contracted[r + slot] = m;
                acc = acc
                    - conn.gamma(m, direction, inner[r + slot]).clone()
                        * t.comp(&contracted).clone();
            }
        }
        acc
    })
}

/// Lie derivative along `xi` of a (0,1)- or (1,1)-tensor.
pub fn lie_derivative(xi: &TensorField, t: &TensorField) -> TensorField {
    assert_eq!(xi.signature(), (1, 0));
    assert!(xi.chart().same_as(t.chart()), "chart mismatch");
    let chart = t.chart().clone();
    let n = chart.dim();
    match t.signature() {
        (0, 1) => TensorField::from_fn(chart.clone(), 0, 1, |idx| {
            let j = idx[0];
            (0..n)
                .map(|i| {
                    xi.comp(&[i]).clone() * t.comp(&[j]).diff(chart.coord(i))
                        + t.comp(&[i]).clone() * xi.comp(&[i]).diff(chart.coord(j))
                })
                .sum()
        }),
        (1, 1) => TensorField::from_fn(chart.clone(), 1, 1, |idx| {
            let (k, j) = (idx[0], idx[1]);
            (0..n)
                .map(|i| {
                    xi.comp(&[i]).clone() * t.comp(&[k, j]).diff(chart.coord(i))
                        - t.comp(&[i, j]).clone() * xi.comp(&[k]).diff(chart.coord(i))
                        + t.comp(&[k, i]).clone() * xi.comp(&[i]).diff(chart.coord(j))
                })
                .sum()
        }),
        other => panic!("unsupported signature {other:?} for the Lie derivative"),
    }
}

/// `d(eta)_{ij} = d_i eta_j - d_j eta_i` (no 1/2 factor).
pub fn exterior_derivative(eta: &TensorField) -> TensorField {
    assert_eq!(eta.signature(), (0, 1));
    let chart = eta.chart().clone();
    TensorField::from_fn(chart.clone(), 0, 2, |idx| {
        eta.comp(&[idx[1]]).diff(chart.coord(idx[0]))
            - eta.comp(&[idx[0]]).diff(chart.coord(idx[1]))
    })
}

/// `(beta ^ gamma)_{ij} = beta_i gamma_j - beta_j gamma_i` (no 1/2 factor).
pub fn wedge_one_forms(beta: &TensorField, gamma: &TensorField) -> TensorField {
    assert_eq!(beta.signature(), (0, 1));
    assert_eq!(gamma.signature(), (0, 1));
    assert!(beta.chart().same_as(gamma.chart()), "chart mismatch");
    TensorField::from_fn(beta.chart().clone(), 0, 2, |idx| {
        beta.comp(&[idx[0]]).clone() * gamma.comp(&[idx[1]]).clone()
            - beta.comp(&[idx[1]]).clone() * gamma.comp(&[idx[0]]).clone()
    })
}

/// Rank of the evaluated component matrix of a (1,1)-tensor, with singular
/// values below `tol * sigma_max` treated as zero.
pub fn numerical_rank(
    t: &TensorField,
    point: &SamplePoint,
    tol: f64,
) -> Result<usize, crate::expr::EvalError> {
    assert_eq!(t.signature(), (1, 1));
    let matrix = linalg::eval_matrix(&t.matrix_rows(), point)?;
    Ok(linalg::rank_with_tolerance(&matrix, tol))
}
