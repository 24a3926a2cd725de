//! Almost contact structures of type (e1, e2, 1) on a chart, their
//! Lorentzian refinements, and the associated verifiers.
//!
//! The hierarchy checked here, from weakest to strongest:
//!
//! 1. **ac structure** `(phi, xi, eta)` with signs `e1, e2`:
//!    `phi(xi) = 0`, `phi^2 = e1*I + e2*eta(x)xi`, `eta o phi = 0`,
//!    `eta(xi) = -e1*e2`, `rank(phi) = n - 1`;
//! 2. **Lorentzian almost paracontact (LAP)**: adds a Lorentzian metric with
//!    `eta = g(., xi)`, `g(phi X, phi Y) = g(X, Y) + eta(X) eta(Y)`; the
//!    characteristic field is timelike unit, `g(xi, xi) = -1`;
//! 3. **Lorentzian paracontact**: the fundamental form is the symmetrized
//!    covariant derivative of `eta`;
//! 4. **Lorentzian para-Sasakian (LP-Sasakian)**: `(nabla_X phi)Y =
//!    eta(Y)X + g(X,Y)xi + 2 eta(X) eta(Y) xi`, which forces `d(eta) = 0`
//!    and `nabla xi = phi`.
//!
//! Normality is checked directly through the torsion tensor
//! `S = [phi, phi] + d(eta)(x)xi`, where `[phi, phi]` is the Nijenhuis
//! tensor. A second route computes `S` from any torsion-free connection;
//! the two must agree, which the property tests exercise.
//!
//! All identities are verified on the coordinate frame; bilinearity extends
//! them to arbitrary arguments. Verifiers never assume earlier checks
//! passed: each re-checks what it needs and reports violations as entries
//! instead of panicking.

use alloc::format;
use alloc::string::ToString;


use crate::expr::Expr;
use crate::geometry::{
    covariant_derivative, exterior_derivative, levi_civita, lie_bracket, lie_derivative, nabla,
    numerical_rank, Chart, Connection, MetricField, MetricSignature, TensorField,
};
use crate::report::{CheckConfig, CheckEntry, Checker, EntryKind, StructureReport};

/// An `(e1, e2, 1)` almost contact structure bundle. The verifiers check the
/// axioms; nothing is assumed at construction beyond well-formed shapes.
#[derive(Clone, Debug)]
pub struct AcStructure {
    chart: Chart,
    pub phi: TensorField,
    pub xi: TensorField,
    pub eta: TensorField,
    pub e1: i8,
    pub e2: i8,
}

impl AcStructure {
    pub fn new(phi: TensorField, xi: TensorField, eta: TensorField, e1: i8, e2: i8) -> Self {
        assert_eq!(phi.signature(), (1, 1), "phi must be a (1,1)-tensor");
        assert_eq!(xi.signature(), (1, 0), "xi must be a vector field");
        assert_eq!(eta.signature(), (0, 1), "eta must be a 1-form");
        assert!(
            phi.chart() == xi.chart() && phi.chart() == eta.chart(),
            "phi, xi, eta must live on one chart"
        );
        assert!(e1 == 1 || e1 == -1, "e1 must be +1 or -1");
        assert!(e2 == 1 || e2 == -1, "e2 must be +1 or -1");
        AcStructure {
            chart: phi.chart().clone(),
            phi,
            xi,
            eta,
            e1,
            e2,
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// The (1,1)-tensor `eta(x)xi` with components `xi^i eta_j`.
    pub fn eta_tensor_xi(&self) -> TensorField {
        TensorField::from_fn(self.chart.clone(), 1, 1, |idx| {
            self.xi.comp(&[idx[0]]).clone() * self.eta.comp(&[idx[1]]).clone()
        })
    }
}

#[derive(Clone, Debug)]
pub enum LapError {
    /// The Lorentzian refinement requires `e1 = e2 = 1` so that
    /// `eta(xi) = -1` is compatible with a timelike unit `xi`.
    WrongSigns { e1: i8, e2: i8 },
    ChartMismatch,
}

impl core::fmt::Display for LapError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LapError::WrongSigns { e1, e2 } => write!(
                f,
                "a Lorentzian almost paracontact structure needs e1 = e2 = 1, got ({e1}, {e2})"
            ),
            LapError::ChartMismatch => write!(f, "structure and metric charts differ"),
        }
    }
}

impl core::error::Error for LapError {}

/// A candidate Lorentzian almost paracontact structure: a (1,1,1) ac bundle
/// with a metric, the derived Levi-Civita connection and the fundamental
/// form `Phi(X, Y) = g(X, phi Y)`.
#[derive(Clone, Debug)]
pub struct LapStructure {
    pub ac: AcStructure,
    pub metric: MetricField,
    connection: Connection,
    fundamental: TensorField,
}

impl LapStructure {
    pub fn new(ac: AcStructure, metric: MetricField) -> Result<Self, LapError> {
        if ac.e1 != 1 || ac.e2 != 1 {
            return Err(LapError::WrongSigns {
                e1: ac.e1,
                e2: ac.e2,
            });
        }
        if ac.chart() != metric.chart() {
            return Err(LapError::ChartMismatch);
        }
        let connection = levi_civita(&metric);
        let fundamental = fundamental_form(&metric, &ac.phi);
        Ok(LapStructure {
            ac,
            metric,
            connection,
            fundamental,
        })
    }

    pub fn chart(&self) -> &Chart {
        self.ac.chart()
    }

    /// The Levi-Civita connection of the metric.
    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    /// `Phi_{ij} = g_{ik} phi^k_j`.
    pub fn fundamental_form(&self) -> &TensorField {
        &self.fundamental
    }
}

/// `Phi(X, Y) = g(X, phi Y)` as a (0,2)-tensor.
pub fn fundamental_form(metric: &MetricField, phi: &TensorField) -> TensorField {
    let chart = phi.chart().clone();
    let n = chart.dim();
    TensorField::from_fn(chart, 0, 2, |idx| {
        (0..n)
            .map(|k| metric.comp(idx[0], k).clone() * phi.comp(&[k, idx[1]]).clone())
            .sum()
    })
}

/// Checks the five (e1, e2, 1) ac axioms.
pub fn verify_ac(s: &AcStructure, cfg: &CheckConfig) -> StructureReport {
    let checker = Checker::new(s.chart(), *cfg);
    let n = s.chart().dim();
    let mut report = StructureReport::new();

    report.push(
        checker
            .check_tensor_zero("phi(xi) = 0", &s.phi.apply_endo(&s.xi))
            .with_label("2.1"),
    );

    let phi_squared = s.phi.endo_compose(&s.phi);
    let e1_identity = TensorField::identity(s.chart().clone()).scale(&Expr::int(s.e1 as i64));
    let e2_eta_xi = s.eta_tensor_xi().scale(&Expr::int(s.e2 as i64));
    report.push(
        checker
            .check_tensors_equal(
                "phi^2 = e1*I + e2*eta(x)xi",
                &phi_squared,
                &e1_identity.add(&e2_eta_xi),
            )
            .with_label("2.2"),
    );

    let eta_phi = TensorField::from_fn(s.chart().clone(), 0, 1, |idx| {
        (0..n)
            .map(|i| s.eta.comp(&[i]).clone() * s.phi.comp(&[i, idx[0]]).clone())
            .sum()
    });
    report.push(
        checker
            .check_tensor_zero("eta o phi = 0", &eta_phi)
            .with_label("2.3"),
    );

    let eta_xi = s.eta.pair(&s.xi);
    report.push(
        checker
            .check_exprs_equal(
                "eta(xi) = -e1*e2",
                &eta_xi,
                &Expr::int(-(s.e1 as i64) * (s.e2 as i64)),
            )
            .with_label("2.4"),
    );

    let tol = cfg.tol;
    let phi = s.phi.clone();
    report.push(
        checker
            .check_pointwise("rank(phi) = n - 1", |point| {
                match numerical_rank(&phi, point, tol) {
                    Ok(rank) => Ok(Some(rank == n - 1)),
                    Err(crate::expr::EvalError::Domain(_))
                    | Err(crate::expr::EvalError::NotFinite) => Ok(None),
                    Err(e) => Err(format!("rank evaluation failed: {e}")),
                }
            })
            .with_label("2.5")
            .with_note(&format!("pointwise rank check, expected {}", n - 1)),
    );

    report
}

/// Checks the Lorentzian almost paracontact compatibilities.
pub fn verify_lap(s: &LapStructure, cfg: &CheckConfig) -> StructureReport {
    let checker = Checker::new(s.chart(), *cfg);
    let n = s.chart().dim();
    let mut report = StructureReport::new();

    let signature = s.metric.signature();
    report.push(CheckEntry {
        label: None,
        name: "metric signature is Lorentzian".to_string(),
        kind: EntryKind::Identity,
        passed: Some(signature == MetricSignature::Lorentzian),
        max_residual: 0.0,
        witness: None,
        note: Some(format!("sampled signature: {signature:?}")),
    });

    // eta_j = g_{jk} xi^k
    let metric_dual_xi = TensorField::from_fn(s.chart().clone(), 0, 1, |idx| {
        (0..n)
            .map(|k| s.metric.comp(idx[0], k).clone() * s.ac.xi.comp(&[k]).clone())
            .sum()
    });
    report.push(
        checker
            .check_tensors_equal("eta(X) = g(X, xi)", &s.ac.eta, &metric_dual_xi)
            .with_label("2.6"),
    );

    // g(phi X, phi Y) = g(X, Y) + eta(X) eta(Y)
    let pulled = TensorField::from_fn(s.chart().clone(), 0, 2, |idx| {
        let mut acc = Expr::zero();
        for k in 0..n {
            for l in 0..n {
                acc = acc
                    + s.metric.comp(k, l).clone()
                        * s.ac.phi.comp(&[k, idx[0]]).clone()
                        * s.ac.phi.comp(&[l, idx[1]]).clone();
            }
        }
        acc
    });
    let expected = TensorField::from_fn(s.chart().clone(), 0, 2, |idx| {
        s.metric.comp(idx[0], idx[1]).clone()
            + s.ac.eta.comp(&[idx[0]]).clone() * s.ac.eta.comp(&[idx[1]]).clone()
    });
    report.push(
        checker
            .check_tensors_equal("g(phi X, phi Y) = g(X, Y) + eta(X)eta(Y)", &pulled, &expected)
            .with_label("2.7"),
    );

    let transposed = TensorField::from_fn(s.chart().clone(), 0, 2, |idx| {
        s.fundamental.comp(&[idx[1], idx[0]]).clone()
    });
    report.push(
        checker
            .check_tensors_equal("Phi(X, Y) = Phi(Y, X)", &s.fundamental, &transposed)
            .with_label("2.8"),
    );

    report.push(
        checker
            .check_exprs_equal(
                "g(xi, xi) = -1",
                &s.metric.pairing(&s.ac.xi, &s.ac.xi),
                &Expr::int(-1),
            )
            .with_note("xi is timelike unit"),
    );

    report
}

/// Checks the Lorentzian paracontact condition
/// `Phi(X, Y) = ((nabla_X eta)Y + (nabla_Y eta)X) / 2`.
pub fn verify_lp_contact(s: &LapStructure, cfg: &CheckConfig) -> StructureReport {
    let checker = Checker::new(s.chart(), *cfg);
    let grad_eta = nabla(s.connection(), &s.ac.eta);
    let symmetrized = TensorField::from_fn(s.chart().clone(), 0, 2, |idx| {
        Expr::rational(1, 2)
            * (grad_eta.comp(&[idx[0], idx[1]]).clone() + grad_eta.comp(&[idx[1], idx[0]]).clone())
    });
    let mut report = StructureReport::new();
    report.push(
        checker
            .check_tensors_equal(
                "Phi(X, Y) = ((nabla_X eta)Y + (nabla_Y eta)X)/2",
                s.fundamental_form(),
                &symmetrized,
            )
            .with_label("2.10"),
    );
    report
}

/// Checks the LP-Sasakian condition and its two stated consequences.
pub fn verify_lp_sasakian(s: &LapStructure, cfg: &CheckConfig) -> StructureReport {
    let checker = Checker::new(s.chart(), *cfg);
    let mut report = StructureReport::new();

    // (nabla_i phi)^k_j = eta_j delta^k_i + g_{ij} xi^k + 2 eta_i eta_j xi^k
    let grad_phi = nabla(s.connection(), &s.ac.phi);
    let expected = TensorField::from_fn(s.chart().clone(), 1, 2, |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        let delta = if k == i { Expr::one() } else { Expr::zero() };
        s.ac.eta.comp(&[j]).clone() * delta
            + s.metric.comp(i, j).clone() * s.ac.xi.comp(&[k]).clone()
            + Expr::int(2)
                * s.ac.eta.comp(&[i]).clone()
                * s.ac.eta.comp(&[j]).clone()
                * s.ac.xi.comp(&[k]).clone()
    });
    report.push(
        checker
            .check_tensors_equal(
                "(nabla_X phi)Y = eta(Y)X + g(X,Y)xi + 2 eta(X)eta(Y)xi",
                &grad_phi,
                &expected,
            )
            .with_label("2.11"),
    );

    report.push(
        checker
            .check_tensor_zero("d(eta) = 0", &exterior_derivative(&s.ac.eta))
            .with_label("eta-closed"),
    );

    // (nabla_i xi)^k = phi^k_i
    let grad_xi = nabla(s.connection(), &s.ac.xi);
    let grad_xi_as_endo = TensorField::from_fn(s.chart().clone(), 1, 1, |idx| {
        grad_xi.comp(&[idx[0], idx[1]]).clone()
    });
    report.push(
        checker
            .check_tensors_equal("nabla xi = phi", &grad_xi_as_endo, &s.ac.phi)
            .with_label("nabla-xi"),
    );

    report
}

/// The Nijenhuis tensor `[phi, phi]` evaluated on all coordinate-frame
/// pairs; component `[k, i, j]` is the k-th component of
/// `[phi di, phi dj] - phi[phi di, dj] - phi[di, phi dj] + phi^2 [di, dj]`.
pub fn nijenhuis(phi: &TensorField) -> TensorField {
    assert_eq!(phi.signature(), (1, 1));
    let chart = phi.chart().clone();
    let n = chart.dim();
    let mut comps = alloc::vec![Expr::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let x = TensorField::coordinate_vector(chart.clone(), i);
            let y = TensorField::coordinate_vector(chart.clone(), j);
            let phi_x = phi.apply_endo(&x);
            let phi_y = phi.apply_endo(&y);
            let value = lie_bracket(&phi_x, &phi_y)
                .sub(&phi.apply_endo(&lie_bracket(&phi_x, &y)))
                .sub(&phi.apply_endo(&lie_bracket(&x, &phi_y)))
                .add(&phi.apply_endo(&phi.apply_endo(&lie_bracket(&x, &y))));
            for k in 0..n {
                comps[(k * n + i) * n + j] = value.comp(&[k]).clone();
            }
        }
    }
    TensorField::new(chart, 1, 2, comps)
}

/// The normality (torsion) tensor `S = [phi, phi] + d(eta)(x)xi`.
pub fn normality_tensor(s: &AcStructure) -> TensorField {
    let nij = nijenhuis(&s.phi);
    let d_eta = exterior_derivative(&s.eta);
    TensorField::from_fn(s.chart().clone(), 1, 2, |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        nij.comp(&[k, i, j]).clone()
            + d_eta.comp(&[i, j]).clone() * s.xi.comp(&[k]).clone()
    })
}

/// The same torsion tensor expressed through covariant derivatives with
/// respect to any torsion-free connection:
/// `S(X,Y) = (nabla_{phi X} phi)Y - (nabla_{phi Y} phi)X
///           + phi((nabla_Y phi)X) - phi((nabla_X phi)Y)
///           + [(nabla_X eta)Y - (nabla_Y eta)X] xi`.
pub fn normality_tensor_via_connection(s: &AcStructure, conn: &Connection) -> TensorField {
    assert!(
        conn.is_torsion_free(),
        "the covariant-derivative form of S needs a torsion-free connection"
    );
    let chart = s.chart().clone();
    let n = chart.dim();
    let grad_phi = nabla(conn, &s.phi);
    let grad_eta = nabla(conn, &s.eta);
    TensorField::from_fn(chart, 1, 2, |idx| {
        let (k, i, j) = (idx[0], idx[1], idx[2]);
        let mut acc = Expr::zero();
        for l in 0..n {
            // (nabla_{phi di} phi)^k_j - (nabla_{phi dj} phi)^k_i
            acc = acc
                + s.phi.comp(&[l, i]).clone() * grad_phi.comp(&[k, l, j]).clone()
                - s.phi.comp(&[l, j]).clone() * grad_phi.comp(&[k, l, i]).clone();
            // phi((nabla_dj phi) di) - phi((nabla_di phi) dj)
            acc = acc
                + s.phi.comp(&[k, l]).clone() * grad_phi.comp(&[l, j, i]).clone()
                - s.phi.comp(&[k, l]).clone() * grad_phi.comp(&[l, i, j]).clone();
        }
        acc + (grad_eta.comp(&[i, j]).clone() - grad_eta.comp(&[j, i]).clone())
            * s.xi.comp(&[k]).clone()
    })
}

/// Reports whether the structure is normal (`S = 0`).
pub fn verify_normality(s: &AcStructure, cfg: &CheckConfig) -> StructureReport {
    let checker = Checker::new(s.chart(), *cfg);
    let mut report = StructureReport::new();
    report.push(
        checker
            .check_tensor_zero("S = [phi,phi] + d(eta)(x)xi = 0", &normality_tensor(s))
            .with_label("2.13"),
    );
    report
}

/// Checks whether `phi` and `eta` are parallel for the given torsion-free
/// connection (the affinely cosymplectic condition). When both hold, the
/// derived consequences `nabla xi = 0` and normality are asserted as
/// identities.
pub fn verify_affinely_cosymplectic(
    s: &AcStructure,
    conn: &Connection,
    cfg: &CheckConfig,
) -> StructureReport {
    let checker = Checker::new(s.chart(), *cfg);
    let mut report = StructureReport::new();
    if !conn.is_torsion_free() {
        report.push(CheckEntry::precondition(
            "connection is torsion-free",
            "the affinely cosymplectic condition is stated for symmetric connections",
        ));
        return report;
    }

    let phi_parallel = checker
        .check_tensor_zero("nabla phi = 0", &nabla(conn, &s.phi))
        .as_determination()
        .with_label("ac-phi-parallel");
    let eta_parallel = checker
        .check_tensor_zero("nabla eta = 0", &nabla(conn, &s.eta))
        .as_determination()
        .with_label("ac-eta-parallel");
    let both_hold = phi_parallel.passed == Some(true) && eta_parallel.passed == Some(true);
    report.push(phi_parallel);
    report.push(eta_parallel);

    if both_hold {
        report.push(
            checker
                .check_tensor_zero("derived: nabla xi = 0", &nabla(conn, &s.xi))
                .with_label("ac-xi-parallel"),
        );
        report.push(
            checker
                .check_tensor_zero(
                    "derived: affinely cosymplectic implies normal (S = 0)",
                    &normality_tensor(s),
                )
                .with_label("ac-normal"),
        );
    } else {
        report.push(CheckEntry::info(
            "affinely cosymplectic",
            "condition does not hold; derived identities skipped",
        ));
    }
    report
}

/// Reports whether the characteristic field is an infinitesimal
/// automorphism: `L_xi phi = 0` and `L_xi eta = 0`.
pub fn xi_automorphism_report(s: &AcStructure, cfg: &CheckConfig) -> StructureReport {
    let checker = Checker::new(s.chart(), *cfg);
    let mut report = StructureReport::new();
    report.push(
        checker
            .check_tensor_zero("L_xi phi = 0", &lie_derivative(&s.xi, &s.phi))
            .as_determination()
            .with_label("L-xi-phi"),
    );
    report.push(
        checker
            .check_tensor_zero("L_xi eta = 0", &lie_derivative(&s.xi, &s.eta))
            .as_determination()
            .with_label("L-xi-eta"),
    );
    report
}

/// `phi^3 = e1 phi`, a consequence of the ac axioms (property-test target).
pub fn phi_cubed_residual(s: &AcStructure) -> TensorField {
    let phi_cubed = s.phi.endo_compose(&s.phi).endo_compose(&s.phi);
    phi_cubed.sub(&s.phi.scale(&Expr::int(s.e1 as i64)))
}

/// Covariant metric compatibility residual `nabla_X g` for a coordinate
/// direction, used by the property suites.
pub fn metric_compatibility_residual(metric: &MetricField, direction: usize) -> TensorField {
    let conn = levi_civita(metric);
    let x = TensorField::coordinate_vector(metric.chart().clone(), direction);
    covariant_derivative(&conn, metric.tensor(), &x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expr, DomainBox};
    use alloc::vec;
    use alloc::vec::Vec;

    fn e(text: &str) -> Expr {
        parse_expr(text).unwrap()
    }

    /// Example 6.1: the 5-dimensional constant-coefficient (1,1,1) structure.
    fn structure_61() -> AcStructure {
        let chart = Chart::new(&["x", "y", "z", "t", "s"], DomainBox::new());
        // phi(dx) = -dx - ds, phi(dy) = -dy, phi(dz) = -dz - ds,
        // phi(dt) = -dt, phi(ds) = 0.
        let mut phi = vec![Expr::zero(); 25];
        let set = |phi: &mut Vec<Expr>, i: usize, j: usize, v: i64| {
            phi[i * 5 + j] = Expr::int(v);
        };
        set(&mut phi, 0, 0, -1);
        set(&mut phi, 4, 0, -1);
        set(&mut phi, 1, 1, -1);
        set(&mut phi, 2, 2, -1);
        set(&mut phi, 4, 2, -1);
        set(&mut phi, 3, 3, -1);
        let phi = TensorField::new(chart.clone(), 1, 1, phi);
        let xi = TensorField::vector(
            chart.clone(),
            vec![e("0"), e("0"), e("0"), e("0"), e("-1")],
        );
        let eta = TensorField::one_form(
            chart.clone(),
            vec![e("-1"), e("0"), e("-1"), e("0"), e("1")],
        );
        AcStructure::new(phi, xi, eta, 1, 1)
    }

    /// Example 6.4: the LP-Sasakian structure on (x, y, z).
    fn structure_64() -> LapStructure {
        let chart = Chart::new(&["x", "y", "z"], DomainBox::new());
        let phi = TensorField::new(
            chart.clone(),
            1,
            1,
            vec![
                e("1"), e("0"), e("0"),
                e("0"), e("-1"), e("0"),
                e("0"), e("0"), e("0"),
            ],
        );
        let xi = TensorField::vector(chart.clone(), vec![e("0"), e("0"), e("-1")]);
        let eta = TensorField::one_form(chart.clone(), vec![e("0"), e("0"), e("1")]);
        let g = TensorField::new(
            chart.clone(),
            0,
            2,
            vec![
                e("exp(-2*z)"), e("0"), e("0"),
                e("0"), e("exp(2*z)"), e("0"),
                e("0"), e("0"), e("-1"),
            ],
        );
        let metric = MetricField::new(g, &chart.probe(16, 1e-9, 42)).unwrap();
        LapStructure::new(AcStructure::new(phi, xi, eta, 1, 1), metric).unwrap()
    }

    /// Example 6.3: Lorentzian almost paracontact, flat metric, not Sasakian.
    fn structure_63() -> LapStructure {
        let chart = Chart::new(&["x", "y", "z"], DomainBox::new());
        let phi = TensorField::new(
            chart.clone(),
            1,
            1,
            vec![
                e("-1"), e("0"), e("0"),
                e("0"), e("-1"), e("0"),
                e("0"), e("0"), e("0"),
            ],
        );
        let xi = TensorField::vector(chart.clone(), vec![e("0"), e("0"), e("-1")]);
        let eta = TensorField::one_form(chart.clone(), vec![e("0"), e("0"), e("1")]);
        let g = TensorField::new(
            chart.clone(),
            0,
            2,
            vec![
                e("1"), e("0"), e("0"),
                e("0"), e("1"), e("0"),
                e("0"), e("0"), e("-1"),
            ],
        );
        let metric = MetricField::new(g, &chart.probe(16, 1e-9, 42)).unwrap();
        LapStructure::new(AcStructure::new(phi, xi, eta, 1, 1), metric).unwrap()
    }

    #[test]
    fn constant_five_dimensional_structure_satisfies_the_axioms() {
        let report = verify_ac(&structure_61(), &CheckConfig::default());
        assert!(report.passed(), "{:#?}", report.entries);
    }

    #[test]
    fn degenerate_phi_fails_the_rank_axiom() {
        let chart = Chart::new(&["x", "y", "z"], DomainBox::new());
        let phi = TensorField::zeros(chart.clone(), 1, 1);
        let xi = TensorField::vector(chart.clone(), vec![e("0"), e("0"), e("-1")]);
        let eta = TensorField::one_form(chart.clone(), vec![e("0"), e("0"), e("1")]);
        let s = AcStructure::new(phi, xi, eta, 1, 1);
        let report = verify_ac(&s, &CheckConfig::default());
        assert!(!report.holds("2.5"));
        assert!(!report.passed());
    }

    #[test]
    fn exponential_metric_structure_is_lp_sasakian() {
        let cfg = CheckConfig::default();
        let s = structure_64();
        assert!(verify_ac(&s.ac, &cfg).passed());
        assert!(verify_lap(&s, &cfg).passed());
        assert!(verify_lp_contact(&s, &cfg).passed());
        let sasakian = verify_lp_sasakian(&s, &cfg);
        assert!(sasakian.passed(), "{:#?}", sasakian.entries);
    }

    #[test]
    fn flat_structure_is_lap_but_not_paracontact() {
        let cfg = CheckConfig::default();
        let s = structure_63();
        assert!(verify_ac(&s.ac, &cfg).passed());
        assert!(verify_lap(&s, &cfg).passed());
        // The flat connection gives nabla eta = 0 while Phi(dx, dx) = -1.
        let contact = verify_lp_contact(&s, &cfg);
        assert!(!contact.passed());
        let sasakian = verify_lp_sasakian(&s, &cfg);
        assert!(!sasakian.holds("2.11"));
    }

    #[test]
    fn wrong_metric_breaks_the_duality_equation() {
        // Replace the 6.3 metric by the Riemannian dx^2+dy^2+dz^2:
        // g(dz, -dz) = -1 while eta(dz) = 1.
        let chart = Chart::new(&["x", "y", "z"], DomainBox::new());
        let phi = TensorField::new(
            chart.clone(),
            1,
            1,
            vec![
                e("-1"), e("0"), e("0"),
                e("0"), e("-1"), e("0"),
                e("0"), e("0"), e("0"),
            ],
        );
        let xi = TensorField::vector(chart.clone(), vec![e("0"), e("0"), e("-1")]);
        let eta = TensorField::one_form(chart.clone(), vec![e("0"), e("0"), e("1")]);
        let g = TensorField::identity_metric(chart.clone());
        let metric = MetricField::new(g, &chart.probe(16, 1e-9, 42)).unwrap();
        let s = LapStructure::new(AcStructure::new(phi, xi, eta, 1, 1), metric).unwrap();
        let report = verify_lap(&s, &CheckConfig::default());
        assert!(!report.holds("2.6"));
    }

    #[test]
    fn nijenhuis_vanishes_for_constant_and_identity_phi() {
        let s = structure_61();
        assert!(nijenhuis(&s.phi).is_structurally_zero());
        let chart = Chart::new(&["x", "y"], DomainBox::new());
        assert!(nijenhuis(&TensorField::identity(chart)).is_structurally_zero());
    }

    #[test]
    fn nijenhuis_is_antisymmetric_for_a_variable_phi() {
        let chart = Chart::new(&["x", "y"], DomainBox::new());
        let phi = TensorField::new(
            chart.clone(),
            1,
            1,
            vec![e("x*y"), e("y^2"), e("x - y"), e("x^2*y")],
        );
        let nij = nijenhuis(&phi);
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let anti = (nij.comp(&[k, i, j]).clone()
                        + nij.comp(&[k, j, i]).clone())
                    .simplify();
                    assert!(anti.is_zero());
                }
            }
        }
    }

    #[test]
    fn constant_structures_are_normal() {
        let s = structure_61();
        assert!(normality_tensor(&s).is_structurally_zero());
        let report = verify_normality(&s, &CheckConfig::default());
        assert!(report.holds("2.13"));
    }

    #[test]
    fn torsion_routes_agree_on_the_sasakian_example() {
        let cfg = CheckConfig::default();
        let s = structure_64();
        let via_brackets = normality_tensor(&s.ac);
        let via_connection = normality_tensor_via_connection(&s.ac, s.connection());
        let checker = Checker::new(s.chart(), cfg);
        let entry = checker.check_tensors_equal("S routes agree", &via_brackets, &via_connection);
        assert_eq!(entry.passed, Some(true));
    }

    #[test]
    fn affinely_cosymplectic_with_zero_connection() {
        let s = structure_61();
        let conn = Connection::zero(s.chart().clone());
        let report = verify_affinely_cosymplectic(&s, &conn, &CheckConfig::default());
        assert!(report.holds("ac-phi-parallel"));
        assert!(report.holds("ac-eta-parallel"));
        assert!(report.holds("ac-xi-parallel"));
        assert!(report.holds("ac-normal"));

        // The Sasakian example is not affinely cosymplectic for its
        // Levi-Civita connection.
        let s64 = structure_64();
        let report = verify_affinely_cosymplectic(&s64.ac, s64.connection(), &CheckConfig::default());
        assert!(!report.holds("ac-phi-parallel"));
    }

    #[test]
    fn automorphism_report() {
        let cfg = CheckConfig::default();
        let s = structure_61();
        let report = xi_automorphism_report(&s, &cfg);
        assert!(report.holds("L-xi-phi"));
        assert!(report.holds("L-xi-eta"));

        // A z-dependent phi with xi = -dz is not invariant along xi.
        let chart = Chart::new(&["x", "y", "z"], DomainBox::new());
        let phi = TensorField::new(
            chart.clone(),
            1,
            1,
            vec![
                e("exp(z)"), e("0"), e("0"),
                e("0"), e("-1"), e("0"),
                e("0"), e("0"), e("0"),
            ],
        );
        let xi = TensorField::vector(chart.clone(), vec![e("0"), e("0"), e("-1")]);
        let eta = TensorField::one_form(chart.clone(), vec![e("0"), e("0"), e("1")]);
        let synthetic = AcStructure::new(phi, xi, eta, 1, 1);
        let report = xi_automorphism_report(&synthetic, &cfg);
        assert!(!report.holds("L-xi-phi"));
    }

    #[test]
    fn phi_cubed_identity() {
        assert!(phi_cubed_residual(&structure_61()).is_structurally_zero());
        assert!(phi_cubed_residual(&structure_64().ac).is_structurally_zero());
    }

    #[test]
    fn degenerate_zero_structure_passes_the_paracontact_equation() {
        // With phi = 0 and eta = 0 both sides of the paracontact condition
        // vanish identically; the ladder below it fails, but the equation
        // itself is a (degenerate) pass.
        let chart = Chart::new(&["x", "y", "z"], DomainBox::new());
        let phi = TensorField::zeros(chart.clone(), 1, 1);
        let xi = TensorField::vector(chart.clone(), vec![e("0"), e("0"), e("1")]);
        let eta = TensorField::one_form(chart.clone(), vec![e("0"), e("0"), e("0")]);
        let g = TensorField::identity_metric(chart.clone());
        let metric = MetricField::new(g, &chart.probe(8, 1e-9, 42)).unwrap();
        let s = LapStructure::new(AcStructure::new(phi, xi, eta, 1, 1), metric).unwrap();
        let report = verify_lp_contact(&s, &CheckConfig::default());
        assert!(report.holds("2.10"));
        assert!(!verify_ac(&s.ac, &CheckConfig::default()).passed());
    }

    #[test]
    fn lap_construction_rejects_wrong_signs() {
        let chart = Chart::new(&["x", "y", "z"], DomainBox::new());
        let phi = TensorField::zeros(chart.clone(), 1, 1);
        let xi = TensorField::vector(chart.clone(), vec![e("0"), e("0"), e("-1")]);
        let eta = TensorField::one_form(chart.clone(), vec![e("0"), e("0"), e("1")]);
        let g = TensorField::identity_metric(chart.clone());
        let metric = MetricField::new(g, &chart.probe(8, 1e-9, 42)).unwrap();
        let ac = AcStructure::new(phi, xi, eta, -1, 1);
        assert!(matches!(
            LapStructure::new(ac, metric),
            Err(LapError::WrongSigns { .. })
        ));
    }
}
