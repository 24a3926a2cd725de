//! Hypersurfaces of structured manifolds: immersions, tangent frames,
//! transversal fields, and the invariant/noninvariant classification.
//!
//! An [`Immersion`] maps an (n-1)-dimensional parameter chart into an
//! n-dimensional ambient chart. Every ambient object is carried to the
//! parameter chart by composing its component expressions with the immersion
//! (pullback substitution), so the whole analysis stays inside the scalar
//! expression language.
//!
//! Tangency and transversality are pointwise notions; they are decided
//! numerically at seeded sample points, and disagreement across points is
//! reported as `Mixed` rather than resolved by guessing.

mod induced;
mod verify;

pub use induced::{
    almost_product_metric, c_involution_residual, gauss_weingarten, induced_invariant_structure,
    metric_normal, normal_norm_squared, phi_decompose, Decomposition, GaussData,
    InducedAcStructure, ProductMetricData,
};
pub use verify::{
    analyze_hypersurface, verify_affine_case, verify_invariant_lps, verify_noninvariant_lps,
    HypersurfaceAnalysis,
};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::rngs::SmallRng;
use rand::SeedableRng;

use crate::contact::AcStructure;
use crate::expr::{EvalError, Expr, SamplePoint};
use crate::geometry::{Chart, Connection, MetricField, TensorField};
use crate::linalg::{self, SolveError};
use crate::report::CheckConfig;

#[derive(Clone, Debug)]
pub enum HyperError {
    /// The immersion needs one expression per ambient coordinate.
    MapArity { expected: usize, got: usize },
    /// An immersion component mentions a coordinate that is not a parameter.
    UnknownCoordinate(String),
    /// The Jacobian loses rank at a sampled parameter point.
    FrameRankDeficient { point: SamplePoint },
    /// No transversal field could be constructed.
    NoTransversal(String),
    /// The requested construction needs the characteristic field tangent.
    XiNotTangent,
    /// The requested construction needs the characteristic field transversal.
    XiNotTransversal,
    /// The hypersurface is not invariant: some `phi(u_a)` leaves the tangent
    /// hyperplane.
    PhiImageNotTangent,
    Solve(SolveError),
    Eval(EvalError),
}

impl core::fmt::Display for HyperError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            HyperError::MapArity { expected, got } => {
                write!(f, "immersion needs {expected} component expressions, got {got}")
            }
            HyperError::UnknownCoordinate(name) => {
                write!(f, "immersion component mentions unknown parameter `{name}`")
            }
            HyperError::FrameRankDeficient { point } => {
                write!(f, "immersion Jacobian is rank-deficient at {point}")
            }
            HyperError::NoTransversal(detail) => write!(f, "no transversal field: {detail}"),
            HyperError::XiNotTangent => write!(
                f,
                "the characteristic field is transversal; the induced-structure extraction needs it tangent"
            ),
            HyperError::XiNotTransversal => write!(
                f,
                "the characteristic field is tangent; this decomposition needs it transversal"
            ),
            HyperError::PhiImageNotTangent => write!(
                f,
                "phi maps a frame field out of the tangent hyperplane (hypersurface is not invariant)"
            ),
            HyperError::Solve(e) => write!(f, "symbolic solve failed: {e}"),
            HyperError::Eval(e) => write!(f, "evaluation failed: {e}"),
        }
    }
}

impl core::error::Error for HyperError {}

impl From<SolveError> for HyperError {
    fn from(e: SolveError) -> Self {
        HyperError::Solve(e)
    }
}

impl From<EvalError> for HyperError {
    fn from(e: EvalError) -> Self {
        HyperError::Eval(e)
    }
}

/// A symbolic map from an (n-1)-dimensional parameter chart into an
/// n-dimensional ambient chart.
#[derive(Clone, Debug)]
pub struct Immersion {
    param_chart: Chart,
    ambient_chart: Chart,
    map: Vec<Expr>,
}

impl Immersion {
    pub fn new(
        param_chart: Chart,
        ambient_chart: Chart,
        map: Vec<Expr>,
    ) -> Result<Self, HyperError> {
        if map.len() != ambient_chart.dim() {
            return Err(HyperError::MapArity {
                expected: ambient_chart.dim(),
                got: map.len(),
            });
        }
        for component in &map {
            for coord in component.free_coords() {
                if param_chart.coord_index(&coord).is_none() {
                    return Err(HyperError::UnknownCoordinate(coord));
                }
            }
        }
        Ok(Immersion {
            param_chart,
            ambient_chart,
            map: map.iter().map(Expr::simplify).collect(),
        })
    }

    pub fn param_chart(&self) -> &Chart {
        &self.param_chart
    }

    pub fn ambient_chart(&self) -> &Chart {
        &self.ambient_chart
    }

    pub fn map(&self) -> &[Expr] {
        &self.map
    }

    pub fn param_dim(&self) -> usize {
        self.param_chart.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_chart.dim()
    }

    /// Substitutes the immersion into an ambient-coordinate expression.
    pub fn pullback(&self, ambient_expr: &Expr) -> Expr {
        let mut table = alloc::collections::BTreeMap::new();
        for (k, name) in self.ambient_chart.coords().iter().enumerate() {
            table.insert(name.clone(), self.map[k].clone());
        }
        ambient_expr.subst(&table)
    }

    /// Pulls back every component of an ambient tensor field.
    pub fn pullback_components(&self, t: &TensorField) -> Vec<Expr> {
        t.comps().iter().map(|c| self.pullback(c)).collect()
    }

    /// The ambient point of a parameter point.
    pub fn image_point(&self, p: &SamplePoint) -> Result<SamplePoint, EvalError> {
        let mut out = SamplePoint::new();
        for (k, name) in self.ambient_chart.coords().iter().enumerate() {
            out.set(name, self.map[k].eval(p)?);
        }
        Ok(out)
    }

    /// Tangent frame `u_a = i_*(d/d p_a)`: the Jacobian columns, as ambient
    /// vectors along the immersion with parameter-coordinate components.
    pub fn tangent_frame(&self) -> Vec<Vec<Expr>> {
        let m = self.param_dim();
        let n = self.ambient_dim();
        (0..m)
            .map(|a| {
                (0..n)
                    .map(|k| self.map[k].diff(self.param_chart.coord(a)))
                    .collect()
            })
            .collect()
    }

    /// Verifies full column rank of the Jacobian at seeded sample points.
    pub fn check_frame_rank(&self, cfg: &CheckConfig) -> Result<(), HyperError> {
        let frame = self.tangent_frame();
        let rows = frame_matrix_rows(&frame);
        let mut rng = SmallRng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.sample_points {
            let point = self.param_chart.sample(&mut rng);
            let matrix = match linalg::eval_matrix(&rows, &point) {
                Ok(m) => m,
                Err(EvalError::Domain(_)) | Err(EvalError::NotFinite) => continue,
                Err(e) => return Err(HyperError::Eval(e)),
            };
            if linalg::rank_with_tolerance(&matrix, cfg.tol) != self.param_dim() {
                return Err(HyperError::FrameRankDeficient { point });
            }
        }
        Ok(())
    }
}

/// Rows of the n x m matrix whose columns are the frame fields.
pub(crate) fn frame_matrix_rows(frame: &[Vec<Expr>]) -> Vec<Vec<Expr>> {
    let n = frame.first().map_or(0, Vec::len);
    (0..n)
        .map(|k| frame.iter().map(|u| u[k].clone()).collect())
        .collect()
}

/// Rows of the n x n matrix `[u_1 ... u_{n-1} | t]`.
pub(crate) fn basis_matrix_rows(frame: &[Vec<Expr>], t: &[Expr]) -> Vec<Vec<Expr>> {
    let n = t.len();
    (0..n)
        .map(|k| {
            let mut row: Vec<Expr> = frame.iter().map(|u| u[k].clone()).collect();
            row.push(t[k].clone());
            row
        })
        .collect()
}

/// How the transversal direction for Gauss-type decompositions is chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum Transversal {
    /// The characteristic field `xi` (requires it transversal).
    Characteristic,
    /// The metric normal, solved from `g(N, u_a) = 0`.
    MetricNormal,
    /// A user-supplied ambient field (components in ambient coordinates).
    Field(Vec<Expr>),
}

impl Transversal {
    pub fn describe(&self) -> &'static str {
        match self {
            Transversal::Characteristic => "characteristic field",
            Transversal::MetricNormal => "metric normal",
            Transversal::Field(_) => "user-supplied field",
        }
    }
}

/// Pointwise position of an ambient field relative to the tangent
/// hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiPosition {
    Tangent,
    Transversal,
    Mixed,
}

impl XiPosition {
    pub fn as_str(&self) -> &'static str {
        match self {
            XiPosition::Tangent => "tangent",
            XiPosition::Transversal => "transversal",
            XiPosition::Mixed => "mixed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariance {
    Invariant,
    Noninvariant,
    Mixed,
}

/// Pointwise classification evidence at one sampled parameter point.
#[derive(Clone, Debug)]
pub struct ClassificationSample {
    pub point: SamplePoint,
    pub phi_tangent: bool,
    pub xi_tangent: bool,
}

/// The invariant/noninvariant and tangent/transversal classification,
/// together with the per-point evidence it was decided on.
#[derive(Clone, Debug)]
pub struct Classification {
    pub invariance: Invariance,
    pub xi_position: XiPosition,
    pub evidence: Vec<ClassificationSample>,
}

impl Classification {
    /// Stable tag, e.g. `noninvariant-transversal-xi`; `mixed` wins whenever
    /// either aspect disagrees across sample points.
    pub fn tag(&self) -> String {
        match (self.invariance, self.xi_position) {
            (Invariance::Mixed, _) | (_, XiPosition::Mixed) => "mixed".to_string(),
            (Invariance::Invariant, p) => format!("invariant-{}-xi", p.as_str()),
            (Invariance::Noninvariant, p) => format!("noninvariant-{}-xi", p.as_str()),
        }
    }
}

/// Decides where the characteristic field sits relative to the tangent
/// hyperplane, pointwise at seeded sample points.
pub fn xi_position(
    imm: &Immersion,
    xi: &TensorField,
    cfg: &CheckConfig,
) -> Result<XiPosition, HyperError> {
    let frame = imm.tangent_frame();
    let rows = frame_matrix_rows(&frame);
    let xi_pulled = imm.pullback_components(xi);
    let mut tangent_count = 0usize;
    let mut transversal_count = 0usize;
    let mut rng = SmallRng::seed_from_u64(cfg.seed);
    let mut sampled = 0usize;
    let mut attempts = 0usize;
    while sampled < cfg.sample_points && attempts < cfg.sample_points * 20 {
        attempts += 1;
        let point = imm.param_chart.sample(&mut rng);
        let matrix = match linalg::eval_matrix(&rows, &point) {
            Ok(m) => m,
            Err(EvalError::Domain(_)) | Err(EvalError::NotFinite) => continue,
            Err(e) => return Err(HyperError::Eval(e)),
        };
        if linalg::rank_with_tolerance(&matrix, cfg.tol) != imm.param_dim() {
            return Err(HyperError::FrameRankDeficient { point });
        }
        let mut xi_values = Vec::with_capacity(xi_pulled.len());
        let mut ok = true;
        for component in &xi_pulled {
            match component.eval(&point) {
                Ok(v) => xi_values.push(v),
                Err(EvalError::Domain(_)) | Err(EvalError::NotFinite) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(HyperError::Eval(e)),
            }
        }
        if !ok {
            continue;
        }
        sampled += 1;
        if linalg::in_column_span(&matrix, &xi_values, cfg.tol) {
            tangent_count += 1;
        } else {
            transversal_count += 1;
        }
    }
    if sampled == 0 {
        return Err(HyperError::NoTransversal(
            "could not sample any valid parameter point".to_string(),
        ));
    }
    Ok(if transversal_count == 0 {
        XiPosition::Tangent
    } else if tangent_count == 0 {
        XiPosition::Transversal
    } else {
        XiPosition::Mixed
    })
}

/// Pointwise classification: is `phi(frame)` contained in the tangent
/// hyperplane, and is `xi` tangent? Mixed outcomes are valid results.
pub fn classify_invariance(
    imm: &Immersion,
    s: &AcStructure,
    cfg: &CheckConfig,
) -> Result<Classification, HyperError> {
    let frame = imm.tangent_frame();
    let rows = frame_matrix_rows(&frame);
    let phi_pulled = imm.pullback_components(&s.phi);
    let xi_pulled = imm.pullback_components(&s.xi);
    let n = imm.ambient_dim();
    let m = imm.param_dim();

    let mut evidence = Vec::new();
    let mut rng = SmallRng::seed_from_u64(cfg.seed);
    let mut attempts = 0usize;
    while evidence.len() < cfg.sample_points && attempts < cfg.sample_points * 20 {
        attempts += 1;
        let point = imm.param_chart.sample(&mut rng);
        let matrix = match linalg::eval_matrix(&rows, &point) {
            Ok(matrix) => matrix,
            Err(EvalError::Domain(_)) | Err(EvalError::NotFinite) => continue,
            Err(e) => return Err(HyperError::Eval(e)),
        };
        if linalg::rank_with_tolerance(&matrix, cfg.tol) != m {
            return Err(HyperError::FrameRankDeficient { point });
        }

        let eval_vec = |comps: &[Expr], point: &SamplePoint| -> Result<Option<Vec<f64>>, HyperError> {
            let mut out = Vec::with_capacity(comps.len());
            for c in comps {
                match c.eval(point) {
                    Ok(v) => out.push(v),
                    Err(EvalError::Domain(_)) | Err(EvalError::NotFinite) => return Ok(None),
                    Err(e) => return Err(HyperError::Eval(e)),
                }
            }
            Ok(Some(out))
        };

        let Some(phi_values) = eval_vec(&phi_pulled, &point)? else {
            continue;
        };
        let Some(xi_values) = eval_vec(&xi_pulled, &point)? else {
            continue;
        };
        let Some(frame_values) = eval_vec(&frame.concat(), &point)? else {
            continue;
        };

        // phi(u_a) at the point, for each frame field.
        let mut phi_tangent = true;
        for a in 0..m {
            let u: &[f64] = &frame_values[a * n..(a + 1) * n];
            let mut image = alloc::vec![0.0f64; n];
            for k in 0..n {
                for l in 0..n {
                    image[k] += phi_values[k * n + l] * u[l];
                }
            }
            if !linalg::in_column_span(&matrix, &image, cfg.tol) {
                phi_tangent = false;
                break;
            }
        }
        let xi_tangent = linalg::in_column_span(&matrix, &xi_values, cfg.tol);
        evidence.push(ClassificationSample {
            point,
            phi_tangent,
            xi_tangent,
        });
    }

    if evidence.is_empty() {
        return Err(HyperError::NoTransversal(
            "could not sample any valid parameter point".to_string(),
        ));
    }

    let invariant_votes = evidence.iter().filter(|e| e.phi_tangent).count();
    let tangent_votes = evidence.iter().filter(|e| e.xi_tangent).count();
    let invariance = if invariant_votes == evidence.len() {
        Invariance::Invariant
    } else if invariant_votes == 0 {
        Invariance::Noninvariant
    } else {
        Invariance::Mixed
    };
    let xi_pos = if tangent_votes == evidence.len() {
        XiPosition::Tangent
    } else if tangent_votes == 0 {
        XiPosition::Transversal
    } else {
        XiPosition::Mixed
    };
    Ok(Classification {
        invariance,
        xi_position: xi_pos,
        evidence,
    })
}

/// Resolves a [`Transversal`] choice into a concrete ambient field along the
/// immersion (components over the parameter chart), verifying transversality
/// at seeded sample points.
pub fn resolve_transversal(
    imm: &Immersion,
    s: &AcStructure,
    metric: Option<&MetricField>,
    choice: &Transversal,
    cfg: &CheckConfig,
) -> Result<Vec<Expr>, HyperError> {
    let field = match choice {
        Transversal::Characteristic => {
            match xi_position(imm, &s.xi, cfg)? {
                XiPosition::Transversal => {}
                _ => return Err(HyperError::XiNotTransversal),
            }
            imm.pullback_components(&s.xi)
        }
        Transversal::MetricNormal => {
            let metric = metric.ok_or_else(|| {
                HyperError::NoTransversal("a metric normal needs an ambient metric".to_string())
            })?;
            metric_normal(imm, metric, cfg)?
        }
        Transversal::Field(ambient_comps) => {
            if ambient_comps.len() != imm.ambient_dim() {
                return Err(HyperError::MapArity {
                    expected: imm.ambient_dim(),
                    got: ambient_comps.len(),
                });
            }
            ambient_comps.iter().map(|c| imm.pullback(c)).collect()
        }
    };
    check_transversal(imm, &field, cfg)?;
    Ok(field)
}

/// Verifies that `frame + field` spans the ambient space at sample points.
pub fn check_transversal(
    imm: &Immersion,
    field: &[Expr],
    cfg: &CheckConfig,
) -> Result<(), HyperError> {
    let frame = imm.tangent_frame();
    let rows = basis_matrix_rows(&frame, field);
    let mut rng = SmallRng::seed_from_u64(cfg.seed);
    let mut sampled = 0usize;
    let mut attempts = 0usize;
    while sampled < cfg.sample_points && attempts < cfg.sample_points * 20 {
        attempts += 1;
        let point = imm.param_chart.sample(&mut rng);
        let matrix = match linalg::eval_matrix(&rows, &point) {
            Ok(m) => m,
            Err(EvalError::Domain(_)) | Err(EvalError::NotFinite) => continue,
            Err(e) => return Err(HyperError::Eval(e)),
        };
        sampled += 1;
        if linalg::rank_with_tolerance(&matrix, cfg.tol) != imm.ambient_dim() {
            return Err(HyperError::NoTransversal(format!(
                "field is not transversal at {point}"
            )));
        }
    }
    if sampled == 0 {
        return Err(HyperError::NoTransversal(
            "could not sample any valid parameter point".to_string(),
        ));
    }
    Ok(())
}

/// A constant coordinate direction `e_k` that is transversal at sample
/// points; the deterministic fallback when the characteristic field is
/// tangent and no metric is available.
pub fn fallback_coordinate_transversal(
    imm: &Immersion,
    cfg: &CheckConfig,
) -> Result<(usize, Vec<Expr>), HyperError> {
    for k in 0..imm.ambient_dim() {
        let field: Vec<Expr> = (0..imm.ambient_dim())
            .map(|i| if i == k { Expr::one() } else { Expr::zero() })
            .collect();
        if check_transversal(imm, &field, cfg).is_ok() {
            return Ok((k, field));
        }
    }
    Err(HyperError::NoTransversal(
        "no coordinate direction is transversal".to_string(),
    ))
}

/// Pulls the ambient connection coefficients back to the parameter chart.
pub(crate) fn pull_connection(imm: &Immersion, conn: &Connection) -> Vec<Expr> {
    let n = imm.ambient_dim();
    let mut out = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                out.push(imm.pullback(conn.gamma(k, i, j)));
            }
        }
    }
    out
}

/// Ambient covariant derivative along the a-th frame direction of an
/// ambient vector `v` given along the immersion:
/// `(D_a v)^k = d v^k / d p_a + Gamma^k_{lm} u_a^l v^m`.
pub(crate) fn ambient_directional_derivative(
    imm: &Immersion,
    gamma_pulled: &[Expr],
    frame: &[Vec<Expr>],
    a: usize,
    v: &[Expr],
) -> Vec<Expr> {
    let n = imm.ambient_dim();
    let p_a = imm.param_chart().coord(a);
    (0..n)
        .map(|k| {
            let mut acc = v[k].diff(p_a);
            for l in 0..n {
                for m_idx in 0..n {
                    acc = acc
                        + gamma_pulled[(k * n + l) * n + m_idx].clone()
                            * frame[a][l].clone()
                            * v[m_idx].clone();
                }
            }
            acc.simplify()
        })
        .collect()
}
