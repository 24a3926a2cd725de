//! Comparison of computed results against registry expectations.
//!
//! Every quoted highlight (decomposition matrices, normals, classification
//! tags) is rechecked by value-level equivalence at seeded sample points;
//! quoted values that are irreproducible are asserted to fail, so that a
//! regression in either direction flips the verdict.

use rand::rngs::SmallRng;
use rand::SeedableRng;

use lpsurf_core::expr::{exprs_equivalent, parse_expr, Expr};
use lpsurf_core::geometry::{Chart, TensorField};
use lpsurf_core::hypersurface::HypersurfaceAnalysis;
use lpsurf_core::report::CheckConfig;

use crate::config::Loaded;
use crate::registry::ExpectedHypersurface;
use crate::report::ReportEntry;

fn values_equal(a: &Expr, b: &Expr, chart: &Chart, cfg: &CheckConfig) -> bool {
    let difference = (a.clone() - b.clone()).simplify();
    if difference.is_zero() {
        return true;
    }
    let mut rng = SmallRng::seed_from_u64(cfg.seed);
    exprs_equivalent(a, b, chart.domain(), cfg.sample_points, cfg.tol, &mut rng).unwrap_or(false)
}

fn tensor_matches(
    actual: &TensorField,
    expected_texts: &[&str],
    chart: &Chart,
    cfg: &CheckConfig,
) -> Result<bool, String> {
    if actual.comps().len() != expected_texts.len() {
        return Err(format!(
            "shape mismatch: {} components vs {} expected",
            actual.comps().len(),
            expected_texts.len()
        ));
    }
    for (actual_comp, text) in actual.comps().iter().zip(expected_texts) {
        let expected = parse_expr(text).map_err(|e| e.to_string())?;
        if !values_equal(actual_comp, &expected, chart, cfg) {
            return Err(format!("component `{actual_comp}` differs from `{text}`"));
        }
    }
    Ok(true)
}

fn matrix_texts(rows: &[Vec<&'static str>]) -> Vec<&'static str> {
    rows.iter().flat_map(|r| r.iter().copied()).collect()
}

fn comparison_entry(label: &str, name: &str, outcome: Result<bool, String>) -> ReportEntry {
    match outcome {
        Ok(_) => ReportEntry::expectation(label, name, true, None),
        Err(message) => ReportEntry::expectation(label, name, false, Some(message)),
    }
}

/// Pins the values of determination entries present in `section` against
/// the registry record; absent labels are left to other commands.
pub fn pin_determinations(
    expected: &ExpectedHypersurface,
    section: &crate::report::Section,
) -> Vec<ReportEntry> {
    expected
        .expected_determinations
        .iter()
        .filter_map(|(label, expected_value)| {
            let actual = section
                .entries
                .iter()
                .find(|e| e.theorem.as_deref() == Some(label))?
                .pass;
            Some(ReportEntry::expectation(
                &format!("expected:{label}"),
                &format!("determination `{label}` evaluates {expected_value}"),
                actual == Some(*expected_value),
                (actual != Some(*expected_value)).then(|| format!("computed: {actual:?}")),
            ))
        })
        .collect()
}

/// Entries asserting the computed analysis against the registry record.
pub fn hypersurface_expectations(
    structure_id: &str,
    expected: &ExpectedHypersurface,
    loaded: &Loaded,
    analysis: &HypersurfaceAnalysis,
    immersion: &lpsurf_core::hypersurface::Immersion,
    cfg: &CheckConfig,
) -> Vec<ReportEntry> {
    let mut entries = Vec::new();
    let param_chart = immersion.param_chart();

    let tag = analysis.classification.tag();
    entries.push(ReportEntry::expectation(
        "expected:classification",
        &format!("classification is {}", expected.classification),
        tag == expected.classification,
        (tag != expected.classification).then(|| format!("computed: {tag}")),
    ));

    if let Some(rows) = &expected.induced_endo {
        let outcome = match &analysis.decomposition {
            Some(d) => tensor_matches(&d.induced_endo, &matrix_texts(rows), param_chart, cfg),
            None => Err("no decomposition was computed".to_string()),
        };
        entries.push(comparison_entry(
            "expected:J",
            "induced tensor matches the recorded decomposition",
            outcome,
        ));
    }
    if let Some(texts) = &expected.alpha {
        let outcome = match &analysis.decomposition {
            Some(d) => tensor_matches(&d.alpha, texts, param_chart, cfg),
            None => Err("no decomposition was computed".to_string()),
        };
        entries.push(comparison_entry(
            "expected:alpha",
            "transversal coefficient form matches the recorded one",
            outcome,
        ));
    }
    if let Some(rows) = &expected.psi {
        let outcome = match &analysis.invariant {
            Some(i) => tensor_matches(&i.structure.phi, &matrix_texts(rows), param_chart, cfg),
            None => Err("no induced invariant structure was computed".to_string()),
        };
        entries.push(comparison_entry(
            "expected:psi",
            "induced tangent tensor matches the recorded one",
            outcome,
        ));
    }
    if let Some(texts) = &expected.xi_star {
        let outcome = match &analysis.invariant {
            Some(i) => tensor_matches(&i.structure.xi, texts, param_chart, cfg),
            None => Err("no induced invariant structure was computed".to_string()),
        };
        entries.push(comparison_entry(
            "expected:xi-star",
            "induced characteristic field matches the recorded one",
            outcome,
        ));
    }
    if let Some(texts) = &expected.eta_star {
        let outcome = match &analysis.invariant {
            Some(i) => tensor_matches(&i.structure.eta, texts, param_chart, cfg),
            None => Err("no induced invariant structure was computed".to_string()),
        };
        entries.push(comparison_entry(
            "expected:eta-star",
            "induced contact form matches the recorded one",
            outcome,
        ));
    }

    if let Some(reference_texts) = &expected.normal_proportional_to {
        let outcome = match &analysis.metric_normal {
            Some((normal, _)) => proportional(normal, reference_texts, param_chart, cfg),
            None => Err("no metric normal was computed".to_string()),
        };
        entries.push(comparison_entry(
            "expected:normal",
            "computed metric normal is proportional to the recorded one",
            outcome,
        ));
    }

    if let Some(quoted_texts) = &expected.quoted_normal_discrepancy {
        // The quoted normal must FAIL the orthogonality equations; the
        // entry carries the expected_discrepancy flag, so failing is the
        // expected (passing) outcome for the report verdict.
        let satisfied = quoted_normal_is_orthogonal(quoted_texts, loaded, immersion, cfg);
        let mut entry = ReportEntry::expectation(
            "quoted:normal",
            "quoted normal satisfies the orthogonality equations",
            satisfied,
            Some(match &analysis.metric_normal {
                Some((normal, _)) => format!(
                    "recomputed normal: ({})",
                    normal
                        .iter()
                        .map(|c| format!("{c}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                None => "no recomputed normal".to_string(),
            }),
        );
        entry.expected_discrepancy = true;
        entries.push(entry);
    }

    // The special quoted combination of Example 6.2: (u_1 - N)/2 with the
    // Euclidean normal evaluates to minus the characteristic field.
    if structure_id == "6.2" {
        let frame = immersion.tangent_frame();
        let quoted_normal = ["1", "0", "0", "0", "-1"].map(|t| parse_expr(t).unwrap());
        let xi_pulled = immersion.pullback_components(&loaded.structure.xi);
        let mut combination_is_minus_xi = true;
        let mut combination_is_xi = true;
        for k in 0..immersion.ambient_dim() {
            let combination = (Expr::rational(1, 2)
                * (frame[0][k].clone() - quoted_normal[k].clone()))
            .simplify();
            if !values_equal(
                &combination,
                &(-xi_pulled[k].clone()).simplify(),
                param_chart,
                cfg,
            ) {
                combination_is_minus_xi = false;
            }
            if !values_equal(&combination, &xi_pulled[k], param_chart, cfg) {
                combination_is_xi = false;
            }
        }
        entries.push(ReportEntry::expectation(
            "quoted:xi-combination-sign",
            "(u_1 - N)/2 with the quoted Euclidean normal equals -xi",
            combination_is_minus_xi,
            None,
        ));
        let mut quoted = ReportEntry::expectation(
            "quoted:xi-combination",
            "(u_1 - N)/2 with the quoted Euclidean normal equals xi as quoted",
            combination_is_xi,
            Some("sign discrepancy; transversality is unaffected".to_string()),
        );
        quoted.expected_discrepancy = true;
        entries.push(quoted);
    }

    for note in &expected.discrepancy_notes {
        let mut entry = ReportEntry::info("discrepancy note", note);
        entry.expected_discrepancy = true;
        entries.push(entry);
    }

    entries
}

fn proportional(
    actual: &[Expr],
    reference_texts: &[&str],
    chart: &Chart,
    cfg: &CheckConfig,
) -> Result<bool, String> {
    if actual.len() != reference_texts.len() {
        return Err("dimension mismatch".to_string());
    }
    let reference: Vec<Expr> = reference_texts
        .iter()
        .map(|t| parse_expr(t).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    for i in 0..actual.len() {
        for j in (i + 1)..actual.len() {
            let cross = (actual[i].clone() * reference[j].clone()
                - actual[j].clone() * reference[i].clone())
            .simplify();
            if !values_equal(&cross, &Expr::zero(), chart, cfg) {
                return Err(format!("cross ratio ({i},{j}) is `{cross}`"));
            }
        }
    }
    Ok(true)
}

fn quoted_normal_is_orthogonal(
    quoted_texts: &[&str],
    loaded: &Loaded,
    immersion: &lpsurf_core::hypersurface::Immersion,
    cfg: &CheckConfig,
) -> bool {
    let Some(metric) = &loaded.metric else {
        return false;
    };
    let Ok(quoted): Result<Vec<Expr>, _> = quoted_texts
        .iter()
        .map(|t| parse_expr(t))
        .collect::<Result<_, _>>()
    else {
        return false;
    };
    let frame = immersion.tangent_frame();
    let n = immersion.ambient_dim();
    for u in &frame {
        let mut residual = Expr::zero();
        for (k, quoted_component) in quoted.iter().enumerate() {
            for (l, frame_component) in u.iter().enumerate().take(n) {
                residual = residual
                    + immersion.pullback(metric.comp(k, l))
                        * quoted_component.clone()
                        * frame_component.clone();
            }
        }
        if !values_equal(
            &residual.simplify(),
            &Expr::zero(),
            immersion.param_chart(),
            cfg,
        ) {
            return false;
        }
    }
    true
}
