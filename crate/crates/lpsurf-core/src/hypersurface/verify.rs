//! Theorem batteries for hypersurfaces of structured manifolds, and the
//! assembled per-hypersurface analysis.
//!
//! Naming used in entry labels: `J` is the induced (1,1)-tensor of the
//! noninvariant decomposition, `alpha` its transversal coefficient 1-form,
//! `C alpha = alpha o J`, `h` / `A` / `w` the Gauss-Weingarten data, and
//! `psi, xi*, eta*, g*` the induced bundle of the invariant tangent case.
//!
//! One sign deserves a note: the induced-connection derivative of `J` on a
//! noninvariant hypersurface of a Lorentzian para-Sasakian manifold
//! satisfies `(nabla_X J)Y = C alpha(Y) X - alpha(Y) J X` (substitute the
//! Gauss and Weingarten decompositions into `nabla phi` and equate
//! tangential parts; `A = -J` and `w = alpha`). The oppositely-signed
//! variant that is sometimes quoted fails on explicit examples; the checker
//! reports the correct form under label `5.6a` and evaluates the
//! opposite-signed variant separately as `5.6a-printed`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::contact::{
    normality_tensor, verify_affinely_cosymplectic, verify_lp_sasakian, AcStructure, LapStructure,
};
use crate::expr::Expr;
use crate::geometry::{exterior_derivative, nabla, Connection, MetricField, TensorField};
use crate::report::{CheckConfig, CheckEntry, Checker, EntryKind, StructureReport};

use super::induced::{
    almost_product_metric, c_alpha, gauss_weingarten, induced_invariant_structure,
    induced_metric_tensor, metric_normal, normal_norm_squared, phi_decompose, prefix_labels,
    Decomposition, GaussData, InducedAcStructure, ProductMetricData,
};
use super::{
    classify_invariance, fallback_coordinate_transversal, resolve_transversal, Classification,
    HyperError, Immersion, Invariance, Transversal, XiPosition,
};

/// Everything the analysis pipeline computes for one hypersurface.
#[derive(Clone, Debug)]
pub struct HypersurfaceAnalysis {
    pub frame: Vec<Vec<Expr>>,
    /// The transversal actually used for decompositions, with a description
    /// of how it was chosen.
    pub transversal: Option<(String, Vec<Expr>)>,
    /// The metric normal and `g(N, N)`, when an ambient metric exists.
    pub metric_normal: Option<(Vec<Expr>, Expr)>,
    pub classification: Classification,
    pub decomposition: Option<Decomposition>,
    pub induced_metric: Option<TensorField>,
    pub gauss: Option<GaussData>,
    pub product: Option<ProductMetricData>,
    pub invariant: Option<InducedAcStructure>,
    pub report: StructureReport,
}

/// Runs the full pipeline: frame and rank, classification, transversal
/// resolution, decomposition, Gauss-Weingarten data, product metric or
/// induced invariant structure.
pub fn analyze_hypersurface(
    imm: &Immersion,
    s: &AcStructure,
    metric: Option<&MetricField>,
    ambient_connection: Option<&Connection>,
    choice: Option<&Transversal>,
    cfg: &CheckConfig,
) -> Result<HypersurfaceAnalysis, HyperError> {
    imm.check_frame_rank(cfg)?;
    let mut report = StructureReport::new();
    let frame = imm.tangent_frame();
    let classification = classify_invariance(imm, s, cfg)?;
    report.push(CheckEntry::info("classification", &classification.tag()));

    let normal = match metric {
        Some(ambient_metric) => match metric_normal(imm, ambient_metric, cfg) {
            Ok(n) => {
                let norm = normal_norm_squared(imm, ambient_metric, &n);
                Some((n, norm))
            }
            Err(e) => {
                report.push(CheckEntry::precondition("metric normal", &format!("{e}")));
                None
            }
        },
        None => None,
    };

    // Pick the transversal: the explicit choice, else the characteristic
    // field when transversal, else the metric normal, else a coordinate
    // direction.
    let resolved: Option<(String, Vec<Expr>)> = match choice {
        Some(c) => match resolve_transversal(imm, s, metric, c, cfg) {
            Ok(field) => Some((c.describe().to_string(), field)),
            Err(e) => {
                report.push(CheckEntry::precondition("transversal", &format!("{e}")));
                None
            }
        },
        None => {
            if classification.xi_position == XiPosition::Transversal {
                resolve_transversal(imm, s, metric, &Transversal::Characteristic, cfg)
                    .ok()
                    .map(|f| ("characteristic field".to_string(), f))
            } else if let Some((n, _)) = &normal {
                Some(("metric normal".to_string(), n.clone()))
            } else {
                fallback_coordinate_transversal(imm, cfg)
                    .ok()
                    .map(|(k, f)| (format!("coordinate direction {k}"), f))
            }
        }
    };
    if let Some((kind, _)) = &resolved {
        report.push(CheckEntry::info("transversal", kind));
    }

    let decomposition = match &resolved {
        Some((_, t)) => match phi_decompose(imm, s, t, cfg) {
            Ok(d) => {
                report.push(d.reconstruction.clone());
                Some(d)
            }
            Err(e) => {
                report.push(CheckEntry::precondition("phi decomposition", &format!("{e}")));
                None
            }
        },
        None => None,
    };

    let induced_metric = metric.map(|ambient| induced_metric_tensor(imm, ambient));

    let gauss = match (&resolved, ambient_connection) {
        (Some((_, t)), Some(conn)) => match gauss_weingarten(imm, conn, t, cfg) {
            Ok(data) => {
                let checker = Checker::new(imm.param_chart(), *cfg);
                let transposed = TensorField::from_fn(imm.param_chart().clone(), 0, 2, |idx| {
                    data.second_fundamental.comp(&[idx[1], idx[0]]).clone()
                });
                report.push(
                    checker
                        .check_tensors_equal(
                            "h(X, Y) = h(Y, X)",
                            &data.second_fundamental,
                            &transposed,
                        )
                        .with_label("h-symmetric"),
                );
                Some(data)
            }
            Err(e) => {
                report.push(CheckEntry::precondition("Gauss-Weingarten data", &format!("{e}")));
                None
            }
        },
        _ => None,
    };

    let product = match (&decomposition, &induced_metric, metric) {
        (Some(d), Some(im), Some(ambient_metric))
            if classification.xi_position == XiPosition::Transversal =>
        {
            let fundamental = crate::contact::fundamental_form(ambient_metric, &s.phi);
            let data = almost_product_metric(imm, &fundamental, &s.eta, d, im, cfg);
            report.extend(data.report.clone());
            Some(data)
        }
        _ => None,
    };

    let invariant = if classification.invariance == Invariance::Invariant
        && classification.xi_position == XiPosition::Tangent
    {
        match induced_invariant_structure(imm, s, metric, cfg) {
            Ok(data) => {
                report.extend(data.report.clone());
                Some(data)
            }
            Err(e) => {
                report.push(CheckEntry::precondition(
                    "induced invariant structure",
                    &format!("{e}"),
                ));
                None
            }
        }
    } else {
        None
    };

    Ok(HypersurfaceAnalysis {
        frame,
        transversal: resolved,
        metric_normal: normal,
        classification,
        decomposition,
        induced_metric,
        gauss,
        product,
        invariant,
        report,
    })
}

/// The noninvariant battery for hypersurfaces of Lorentzian para-Sasakian
/// manifolds, with the characteristic field as the affine normal.
pub fn verify_noninvariant_lps(
    imm: &Immersion,
    lap: &LapStructure,
    cfg: &CheckConfig,
) -> StructureReport {
    let mut report = StructureReport::new();
    let checker = Checker::new(imm.param_chart(), *cfg);
    let m = imm.param_dim();

    let ambient_sasakian = verify_lp_sasakian(lap, cfg).passed();
    if !ambient_sasakian {
        report.push(CheckEntry::info(
            "ambient structure",
            "not Lorentzian para-Sasakian; the shape-operator and derivative identities are reported without gating",
        ));
    }
    // Downgrades the Sasakian-derived identities when the hypothesis fails.
    let sasakian_grade = |entry: CheckEntry| -> CheckEntry {
        if ambient_sasakian {
            entry
        } else {
            entry
                .as_determination()
                .with_note("ambient is not Lorentzian para-Sasakian; not implied here")
        }
    };

    let classification = match classify_invariance(imm, &lap.ac, cfg) {
        Ok(c) => c,
        Err(e) => {
            report.push(CheckEntry::precondition("classification", &format!("{e}")));
            return report;
        }
    };
    if classification.invariance == Invariance::Invariant {
        report.push(CheckEntry::info(
            "noninvariant battery",
            "alpha = 0 (invariant hypersurface): the noninvariant identities are vacuous or degenerate",
        ));
    }
    if classification.xi_position != XiPosition::Transversal {
        report.push(CheckEntry::precondition(
            "characteristic field is transversal",
            &format!(
                "xi is {} here; the affine-normal decomposition needs it transversal",
                classification.xi_position.as_str()
            ),
        ));
        return report;
    }

    let xi_field = match resolve_transversal(imm, &lap.ac, Some(&lap.metric), &Transversal::Characteristic, cfg)
    {
        Ok(f) => f,
        Err(e) => {
            report.push(CheckEntry::precondition("transversal xi", &format!("{e}")));
            return report;
        }
    };
    let decomposition = match phi_decompose(imm, &lap.ac, &xi_field, cfg) {
        Ok(d) => d,
        Err(e) => {
            report.push(CheckEntry::precondition("phi decomposition", &format!("{e}")));
            return report;
        }
    };
    report.push(decomposition.reconstruction.clone());
    let j = &decomposition.induced_endo;
    let alpha = &decomposition.alpha;

    // J^2 = I (the induced almost product structure).
    report.push(
        checker
            .check_tensors_equal(
                "J^2 = I",
                &j.endo_compose(j),
                &TensorField::identity(imm.param_chart().clone()),
            )
            .with_label("3.1"),
    );

    let gauss = match gauss_weingarten(imm, lap.connection(), &xi_field, cfg) {
        Ok(g) => g,
        Err(e) => {
            report.push(CheckEntry::precondition("Gauss-Weingarten data", &format!("{e}")));
            return report;
        }
    };
    let conn = &gauss.induced_connection;
    let h = &gauss.second_fundamental;
    let shape = &gauss.shape;
    let w = &gauss.transversal_form;

    report.push(sasakian_grade(
        checker
            .check_tensors_equal("J = -A", j, &shape.scale(&Expr::int(-1)))
            .with_label("5.5a"),
    ));
    report.push(sasakian_grade(
        checker
            .check_tensors_equal("alpha = w", alpha, w)
            .with_label("5.5b"),
    ));

    // (nabla_X J)Y = C alpha(Y) X - alpha(Y) J X, checked on the frame.
    let c_alpha_form = c_alpha(alpha, j);
    let grad_j = nabla(conn, j);
    let expected = TensorField::from_fn(imm.param_chart().clone(), 1, 2, |idx| {
        let (c, a, b) = (idx[0], idx[1], idx[2]);
        let delta = if c == a { Expr::one() } else { Expr::zero() };
        c_alpha_form.comp(&[b]).clone() * delta
            - alpha.comp(&[b]).clone() * j.comp(&[c, a]).clone()
    });
    report.push(sasakian_grade(
        checker
            .check_tensors_equal(
                "(nabla_X J)Y = C alpha(Y) X - alpha(Y) J X",
                &grad_j,
                &expected,
            )
            .with_label("5.6a"),
    ));
    report.push(
        checker
            .check_tensors_equal(
                "(nabla_X J)Y = alpha(Y) J X - C alpha(Y) X (opposite-signed variant)",
                &grad_j,
                &expected.scale(&Expr::int(-1)),
            )
            .as_determination()
            .with_label("5.6a-printed")
            .with_note("sign-flipped variant, kept for comparison against quoted forms"),
    );

    // g(i X, i Y) + 2 C alpha(X) C alpha(Y)
    //   = h(X, JY) + (nabla_X alpha)(Y) + alpha(X) alpha(Y)
    let induced_g = induced_metric_tensor(imm, &lap.metric);
    let grad_alpha = nabla(conn, alpha);
    let lhs = TensorField::from_fn(imm.param_chart().clone(), 0, 2, |idx| {
        induced_g.comp(&[idx[0], idx[1]]).clone()
            + Expr::int(2)
                * c_alpha_form.comp(&[idx[0]]).clone()
                * c_alpha_form.comp(&[idx[1]]).clone()
    });
    let rhs = TensorField::from_fn(imm.param_chart().clone(), 0, 2, |idx| {
        let (a, b) = (idx[0], idx[1]);
        let h_j: Expr = (0..m)
            .map(|c| h.comp(&[a, c]).clone() * j.comp(&[c, b]).clone())
            .sum();
        h_j + grad_alpha.comp(&[a, b]).clone()
            + alpha.comp(&[a]).clone() * alpha.comp(&[b]).clone()
    });
    report.push(sasakian_grade(
        checker
            .check_tensors_equal(
                "g(X,Y) + 2 C alpha(X) C alpha(Y) = h(X,JY) + (nabla_X alpha)(Y) + alpha(X) alpha(Y)",
                &lhs,
                &rhs,
            )
            .with_label("5.6b"),
    ));

    // Product-metric block: G, Omega, C alpha = i* eta, fundamental forms.
    let product = almost_product_metric(
        imm,
        lap.fundamental_form(),
        &lap.ac.eta,
        &decomposition,
        &induced_g,
        cfg,
    );
    report.extend(product.report.clone());

    // Locally-product condition alpha(Y) J X = alpha(JY) X: a determination,
    // not an error; its truth classifies the hypersurface.
    let lp_lhs = TensorField::from_fn(imm.param_chart().clone(), 1, 2, |idx| {
        let (c, a, b) = (idx[0], idx[1], idx[2]);
        alpha.comp(&[b]).clone() * j.comp(&[c, a]).clone()
    });
    let lp_rhs = TensorField::from_fn(imm.param_chart().clone(), 1, 2, |idx| {
        let (c, a, b) = (idx[0], idx[1], idx[2]);
        let delta = if c == a { Expr::one() } else { Expr::zero() };
        c_alpha_form.comp(&[b]).clone() * delta
    });
    let mut locally_product = checker
        .check_tensors_equal("alpha(Y) J X = alpha(JY) X", &lp_lhs, &lp_rhs)
        .as_determination()
        .with_label("5.9");
    if locally_product.passed == Some(false) {
        locally_product = locally_product.with_note(&witness_locally_product(j, alpha, &c_alpha_form, m));
    }
    report.push(locally_product);

    // d alpha(JX, Y) + d alpha(X, JY) = 2 C alpha([X, Y]): on coordinate
    // frames the bracket term vanishes. Checked when the ambient structure
    // is normal, which is what implies it.
    let ambient_probe = lap.chart().probe(cfg.sample_points, cfg.tol, cfg.seed);
    let ambient_normal = normality_tensor(&lap.ac)
        .comps()
        .iter()
        .all(|c| ambient_probe.is_zero(c));
    if ambient_normal {
        let d_alpha = exterior_derivative(alpha);
        let residual = TensorField::from_fn(imm.param_chart().clone(), 0, 2, |idx| {
            let (a, b) = (idx[0], idx[1]);
            let mut acc = Expr::zero();
            for c in 0..m {
                acc = acc
                    + j.comp(&[c, a]).clone() * d_alpha.comp(&[c, b]).clone()
                    + j.comp(&[c, b]).clone() * d_alpha.comp(&[a, c]).clone();
            }
            acc
        });
        report.push(
            checker
                .check_tensor_zero(
                    "d alpha(JX, Y) + d alpha(X, JY) = 2 C alpha([X, Y]) (frame form)",
                    &residual,
                )
                .with_label("3.9"),
        );
    } else {
        report.push(CheckEntry::info(
            "d alpha identity",
            "ambient structure is not normal; the differential identity is not implied and was skipped",
        ));
    }

    report
}

fn witness_locally_product(
    j: &TensorField,
    alpha: &TensorField,
    c_alpha_form: &TensorField,
    m: usize,
) -> String {
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let delta = if c == a { Expr::one() } else { Expr::zero() };
                let lhs = (alpha.comp(&[b]).clone() * j.comp(&[c, a]).clone()).simplify();
                let rhs = (c_alpha_form.comp(&[b]).clone() * delta).simplify();
                if (lhs.clone() - rhs.clone()).simplify().is_zero() {
                    continue;
                }
                return format!(
                    "witness: component {c} of alpha(u_{})J(u_{}) is {} but alpha(J u_{})u_{} gives {}",
                    b + 1, a + 1, lhs, b + 1, a + 1, rhs
                );
            }
        }
    }
    "holds on the frame".to_string()
}

/// The invariant battery: induced structure, metric-normal Gauss data,
/// `nabla xi* = psi`, `h(., xi*) = 0`, and the induced Sasakian condition.
pub fn verify_invariant_lps(
    imm: &Immersion,
    lap: &LapStructure,
    cfg: &CheckConfig,
) -> StructureReport {
    let mut report = StructureReport::new();
    let checker = Checker::new(imm.param_chart(), *cfg);

    let ambient_sasakian = verify_lp_sasakian(lap, cfg).passed();
    if !ambient_sasakian {
        report.push(CheckEntry::precondition(
            "ambient structure is Lorentzian para-Sasakian",
            "the Sasakian condition fails; the induced-structure theorems are not implied",
        ));
    }

    let classification = match classify_invariance(imm, &lap.ac, cfg) {
        Ok(c) => c,
        Err(e) => {
            report.push(CheckEntry::precondition("classification", &format!("{e}")));
            return report;
        }
    };
    if classification.invariance != Invariance::Invariant
        || classification.xi_position != XiPosition::Tangent
    {
        report.push(CheckEntry::precondition(
            "invariant hypersurface with tangent characteristic field",
            &format!("classification is {}", classification.tag()),
        ));
        return report;
    }

    let induced = match induced_invariant_structure(imm, &lap.ac, Some(&lap.metric), cfg) {
        Ok(i) => i,
        Err(e) => {
            report.push(CheckEntry::precondition(
                "induced invariant structure",
                &format!("{e}"),
            ));
            return report;
        }
    };
    report.extend(induced.report.clone());

    let normal = match metric_normal(imm, &lap.metric, cfg) {
        Ok(n) => n,
        Err(e) => {
            report.push(CheckEntry::precondition("metric normal", &format!("{e}")));
            return report;
        }
    };
    let gauss = match gauss_weingarten(imm, lap.connection(), &normal, cfg) {
        Ok(g) => g,
        Err(e) => {
            report.push(CheckEntry::precondition("Gauss-Weingarten data", &format!("{e}")));
            return report;
        }
    };

    // nabla_X xi* = psi X for the induced connection of the metric-normal
    // Gauss decomposition.
    let grad_xi_star = nabla(&gauss.induced_connection, &induced.structure.xi);
    let as_endo = TensorField::from_fn(imm.param_chart().clone(), 1, 1, |idx| {
        grad_xi_star.comp(&[idx[0], idx[1]]).clone()
    });
    let nabla_xi_entry = checker
        .check_tensors_equal("nabla xi* = psi", &as_endo, &induced.structure.phi)
        .with_label("5.10-xi");
    let nabla_xi_ok = nabla_xi_entry.passed == Some(true);
    report.push(nabla_xi_entry);

    // h(X, xi*) = 0.
    let m = imm.param_dim();
    let h_xi = TensorField::from_fn(imm.param_chart().clone(), 0, 1, |idx| {
        (0..m)
            .map(|b| {
                gauss.second_fundamental.comp(&[idx[0], b]).clone()
                    * induced.structure.xi.comp(&[b]).clone()
            })
            .sum()
    });
    let h_entry = checker
        .check_tensor_zero("h(X, xi*) = 0", &h_xi)
        .with_label("5.10-h");
    let h_ok = h_entry.passed == Some(true);
    report.push(h_entry);

    // The induced structure satisfies the Sasakian condition for its own
    // Levi-Civita connection.
    let mut induced_sasakian_ok = false;
    match &induced.metric {
        Some(induced_metric) => {
            match LapStructure::new(induced.structure.clone(), induced_metric.clone()) {
                Ok(induced_lap) => {
                    let run = verify_lp_sasakian(&induced_lap, cfg);
                    induced_sasakian_ok = run.passed();
                    report.extend(prefix_labels(run, "induced:"));
                }
                Err(e) => report.push(CheckEntry::precondition(
                    "induced Lorentzian structure",
                    &format!("{e}"),
                )),
            }
        }
        None => report.push(CheckEntry::precondition(
            "induced metric",
            "no nondegenerate induced metric; the Sasakian condition cannot be checked",
        )),
    }

    report.push(CheckEntry {
        label: Some("thm-5.10".to_string()),
        name: "induced structure is Lorentzian para-Sasakian".to_string(),
        kind: EntryKind::Identity,
        passed: Some(nabla_xi_ok && h_ok && induced_sasakian_ok),
        max_residual: 0.0,
        witness: None,
        note: None,
    });

    report
}

/// The affine battery: for an affinely cosymplectic ambient connection the
/// hypersurface is totally flat with parallel induced `J` and
/// `(nabla_X alpha)(Y) = -h(X, JY)` (noninvariant) or `h = 0` (invariant);
/// for a normal ambient structure with `phi = nabla xi`, the shape operator
/// is `-J` and `w = alpha`.
pub fn verify_affine_case(
    imm: &Immersion,
    s: &AcStructure,
    ambient: &Connection,
    cfg: &CheckConfig,
) -> StructureReport {
    let mut report = StructureReport::new();
    let checker = Checker::new(imm.param_chart(), *cfg);
    let m = imm.param_dim();

    if !ambient.is_torsion_free() {
        report.push(CheckEntry::precondition(
            "connection is torsion-free",
            "the affine batteries are stated for symmetric connections",
        ));
        return report;
    }

    let classification = match classify_invariance(imm, s, cfg) {
        Ok(c) => c,
        Err(e) => {
            report.push(CheckEntry::precondition("classification", &format!("{e}")));
            return report;
        }
    };
    report.push(CheckEntry::info("classification", &classification.tag()));

    // Pick the decomposition transversal: xi when transversal; otherwise a
    // constant coordinate direction (with the flat-side identities this
    // choice is immaterial; the report records it).
    let (transversal_kind, transversal): (String, Vec<Expr>) =
        if classification.xi_position == XiPosition::Transversal {
            match resolve_transversal(imm, s, None, &Transversal::Characteristic, cfg) {
                Ok(f) => ("characteristic field".to_string(), f),
                Err(e) => {
                    report.push(CheckEntry::precondition("transversal", &format!("{e}")));
                    return report;
                }
            }
        } else {
            match fallback_coordinate_transversal(imm, cfg) {
                Ok((k, f)) => (format!("coordinate direction {k}"), f),
                Err(e) => {
                    report.push(CheckEntry::precondition("transversal", &format!("{e}")));
                    return report;
                }
            }
        };
    report.push(CheckEntry::info("transversal", &transversal_kind));

    let cosymplectic = verify_affinely_cosymplectic(s, ambient, cfg);
    let case_one = cosymplectic.holds("ac-phi-parallel") && cosymplectic.holds("ac-eta-parallel");
    report.extend(cosymplectic);

    let decomposition = match phi_decompose(imm, s, &transversal, cfg) {
        Ok(d) => d,
        Err(e) => {
            report.push(CheckEntry::precondition("phi decomposition", &format!("{e}")));
            return report;
        }
    };
    let gauss = match gauss_weingarten(imm, ambient, &transversal, cfg) {
        Ok(g) => g,
        Err(e) => {
            report.push(CheckEntry::precondition("Gauss-Weingarten data", &format!("{e}")));
            return report;
        }
    };
    let j = &decomposition.induced_endo;
    let alpha = &decomposition.alpha;

    if case_one {
        // The flatness identities are derived from the decomposition with
        // respect to the affine normal xi; with a tangent characteristic
        // field they are evaluated against the fallback transversal and
        // reported without gating.
        let asserted = classification.xi_position == XiPosition::Transversal;
        let grade = |entry: CheckEntry| -> CheckEntry {
            if asserted {
                entry
            } else {
                entry.as_determination().with_note(
                    "evaluated with a fallback transversal since xi is tangent; not implied in this configuration",
                )
            }
        };
        report.push(grade(
            checker
                .check_tensor_zero("A = 0 (totally flat)", &gauss.shape)
                .with_label("4.I-A"),
        ));
        report.push(grade(
            checker
                .check_tensor_zero("w = 0", &gauss.transversal_form)
                .with_label("4.I-w"),
        ));
        report.push(grade(
            checker
                .check_tensor_zero("nabla J = 0", &nabla(&gauss.induced_connection, j))
                .with_label("4.I-J"),
        ));
        if classification.invariance == Invariance::Invariant {
            report.push(grade(
                checker
                    .check_tensor_zero("h = 0", &gauss.second_fundamental)
                    .with_label("4.I-h"),
            ));
        } else {
            // (nabla_X alpha)(Y) = -h(X, JY)
            let grad_alpha = nabla(&gauss.induced_connection, alpha);
            let rhs = TensorField::from_fn(imm.param_chart().clone(), 0, 2, |idx| {
                let (a, b) = (idx[0], idx[1]);
                -(0..m)
                    .map(|c| {
                        gauss.second_fundamental.comp(&[a, c]).clone()
                            * j.comp(&[c, b]).clone()
                    })
                    .sum::<Expr>()
            });
            report.push(grade(
                checker
                    .check_tensors_equal("(nabla_X alpha)(Y) = -h(X, JY)", &grad_alpha, &rhs)
                    .with_label("4.I-alpha"),
            ));
        }
        return report;
    }

    // Case two: a normal ambient structure with phi = nabla xi.
    let ambient_probe = s.chart().probe(cfg.sample_points, cfg.tol, cfg.seed);
    let grad_xi = nabla(ambient, &s.xi);
    let grad_xi_endo = TensorField::from_fn(s.chart().clone(), 1, 1, |idx| {
        grad_xi.comp(&[idx[0], idx[1]]).clone()
    });
    let phi_is_nabla_xi = grad_xi_endo
        .sub(&s.phi)
        .comps()
        .iter()
        .all(|c| ambient_probe.is_zero(c));
    let is_normal = normality_tensor(s)
        .comps()
        .iter()
        .all(|c| ambient_probe.is_zero(c));
    report.push(CheckEntry {
        label: Some("case-II".to_string()),
        name: "ambient is normal with phi = nabla xi".to_string(),
        kind: EntryKind::Determination,
        passed: Some(phi_is_nabla_xi && is_normal),
        max_residual: 0.0,
        witness: None,
        note: None,
    });
    if !(phi_is_nabla_xi && is_normal) {
        report.push(CheckEntry::info(
            "affine batteries",
            "neither the parallel-structure nor the phi = nabla xi hypothesis holds; nothing to assert",
        ));
        return report;
    }
    if classification.xi_position != XiPosition::Transversal {
        report.push(CheckEntry::info(
            "second affine case",
            "the hypothesis holds, but the decomposition is through xi, which is tangent here; nothing to assert",
        ));
        return report;
    }
    report.push(
        checker
            .check_tensors_equal("J = -A", j, &gauss.shape.scale(&Expr::int(-1)))
            .with_label("4.II-J"),
    );
    report.push(
        checker
            .check_tensors_equal("alpha = w", alpha, &gauss.transversal_form)
            .with_label("4.II-alpha"),
    );
    report
}
