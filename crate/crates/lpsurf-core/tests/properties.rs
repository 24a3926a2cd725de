//! Property suites: derivative correctness against central finite
//! differences, simplifier idempotence, print/parse round-tripping, the
//! Jacobi identity, the derivation property of the covariant derivative,
//! the two exterior-derivative formulas, and the two torsion-tensor routes.

mod common;

use common::*;

use lpsurf_core::contact::{
    nijenhuis, normality_tensor, normality_tensor_via_connection, phi_cubed_residual, verify_ac,
    AcStructure,
};
use lpsurf_core::expr::{parse_expr, DomainBox, Expr, SamplePoint};
use lpsurf_core::geometry::{
    covariant_derivative, exterior_derivative, levi_civita, lie_bracket, lie_derivative,
    Chart, Connection, MetricField, TensorField,
};
use proptest::prelude::*;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

const FD_STEP: f64 = 1e-5;
const FD_REL_TOL: f64 = 1e-6;

fn chart3() -> Chart {
    Chart::new(&["x", "y", "z"], DomainBox::new())
}

/// Central finite difference of `e` in `coord` at `p`.
fn finite_difference(e: &Expr, coord: &str, p: &SamplePoint) -> Option<f64> {
    let base = p.get(coord)?;
    let mut plus = p.clone();
    plus.set(coord, base + FD_STEP);
    let mut minus = p.clone();
    minus.set(coord, base - FD_STEP);
    Some((e.eval(&plus).ok()? - e.eval(&minus).ok()?) / (2.0 * FD_STEP))
}

fn check_derivative_against_fd(e: &Expr, dom: &DomainBox, seed: u64) {
    let coords: Vec<String> = e.free_coords().into_iter().collect();
    let mut rng = SmallRng::seed_from_u64(seed);
    for coord in &coords {
        let analytic = e.diff(coord);
        let mut checked = 0;
        let mut attempts = 0;
        while checked < 8 && attempts < 200 {
            attempts += 1;
            let p = dom.sample(&coords, &mut rng);
            // Interior points only: keep the FD stencil inside the box.
            let (lo, hi) = dom.interval(coord);
            let v = p.get(coord).unwrap();
            if v - 2.0 * FD_STEP <= lo || v + 2.0 * FD_STEP >= hi {
                continue;
            }
            let Ok(exact) = analytic.eval(&p) else { continue };
            let Some(fd) = finite_difference(e, coord, &p) else {
                continue;
            };
            let scale = 1.0 + exact.abs().max(fd.abs());
            assert!(
                (exact - fd).abs() <= FD_REL_TOL * scale,
                "d/d{coord} of {e} at {p}: analytic {exact}, finite difference {fd}"
            );
            checked += 1;
        }
        assert!(checked > 0, "no valid sample points for {e} w.r.t. {coord}");
    }
}

#[test]
fn derivatives_match_finite_differences_on_the_fixed_corpus() {
    let default_box = DomainBox::new();
    let tight = DomainBox::new().with("y", -0.9, 0.9);
    let corpus: [(&str, &DomainBox); 12] = [
        ("exp(-2*z)", &default_box),
        ("exp(2*z)*x^2 - y", &default_box),
        ("sqrt(1 - y^2)", &tight),
        ("arcsin(y)", &tight),
        ("arctan(y) + tan(x)", &default_box),
        ("sin(x)*cos(y)", &default_box),
        ("log(2 + x)", &default_box),
        ("x/(1 + y^2)", &default_box),
        ("(x + y)^3", &default_box),
        ("x*y*z + z^2", &default_box),
        ("exp(x)*sin(y) - cos(z)/2", &default_box),
        ("1/sqrt(1 - y^2)", &tight),
    ];
    for (i, (text, dom)) in corpus.iter().enumerate() {
        check_derivative_against_fd(&e(text), dom, 1000 + i as u64);
    }
}

/// Random domain-safe expressions: polynomials combined with exp, sin, cos,
/// arctan, and guarded sqrt/log wrappers.
fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-4i64..5).prop_map(Expr::int),
        prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(Expr::coord),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), 1u32..4).prop_map(|(a, k)| a.pow(k as i32)),
            inner.clone().prop_map(|a| (Expr::rational(1, 4) * a).exp()),
            inner.clone().prop_map(|a| a.sin()),
            inner.clone().prop_map(|a| a.cos()),
            // sqrt(1 + a^2) and log(1 + a^2) stay inside every domain.
            inner
                .clone()
                .prop_map(|a| (Expr::one() + a.pow(2)).sqrt()),
            inner.clone().prop_map(|a| (Expr::one() + a.pow(2)).log()),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplify_is_idempotent(e in arb_expr()) {
        let once = e.simplify();
        prop_assert_eq!(once.simplify(), once);
    }

    #[test]
    fn print_then_parse_is_identity_on_canonical_forms(e in arb_expr()) {
        let canonical = e.simplify();
        let printed = format!("{canonical}");
        let reparsed = parse_expr(&printed)
            .unwrap_or_else(|err| panic!("reparse of `{printed}` failed: {err}"))
            .simplify();
        prop_assert_eq!(reparsed, canonical);
    }

    #[test]
    fn simplify_preserves_value(e in arb_expr(), seed in 0u64..1000) {
        let simplified = e.simplify();
        let coords: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
        let dom = DomainBox::new();
        let mut rng = SmallRng::seed_from_u64(seed);
        let mut compared = 0;
        for _ in 0..40 {
            let p = dom.sample(&coords, &mut rng);
            match (e.eval(&p), simplified.eval(&p)) {
                (Ok(a), Ok(b)) => {
                    let scale = 1.0 + a.abs().max(b.abs());
                    prop_assert!(
                        (a - b).abs() <= 1e-9 * scale,
                        "value changed at {}: {} vs {}",
                        p, a, b
                    );
                    compared += 1;
                }
                // Exercised domains can differ only by removable factors;
                // skip points where either side is undefined.
                _ => continue,
            }
            if compared >= 10 {
                break;
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences_randomized(e in arb_expr(), seed in 0u64..1000) {
        // Skip expressions whose magnitude explodes (nested exp of exp);
        // the sampler will fail to find valid points and the check loop
        // asserts only over valid ones.
        let coords: Vec<String> = e.free_coords().into_iter().collect();
        if coords.is_empty() {
            return Ok(());
        }
        let dom = DomainBox::new();
        let mut rng = SmallRng::seed_from_u64(seed);
        for coord in &coords {
            let analytic = e.diff(coord);
            let mut checked = 0;
            for _ in 0..60 {
                let p = dom.sample(&coords, &mut rng);
                let (lo, hi) = dom.interval(coord);
                let v = p.get(coord).unwrap();
                if v - 2.0 * FD_STEP <= lo || v + 2.0 * FD_STEP >= hi {
                    continue;
                }
                let Ok(exact) = analytic.eval(&p) else { continue };
                let Some(fd) = finite_difference(&e, coord, &p) else { continue };
                if exact.abs() > 1e6 {
                    continue;
                }
                let scale = 1.0 + exact.abs().max(fd.abs());
                prop_assert!(
                    (exact - fd).abs() <= FD_REL_TOL * scale,
                    "d/d{} of {} at {}: {} vs {}",
                    coord, e, p, exact, fd
                );
                checked += 1;
                if checked >= 4 {
                    break;
                }
            }
        }
    }
}

/// Random polynomial vector fields of degree <= 2 over (x, y, z).
fn arb_poly_field() -> impl Strategy<Value = Vec<Vec<i64>>> {
    // 3 components x 10 monomial coefficients in
    // {1, x, y, z, x^2, y^2, z^2, xy, xz, yz}.
    proptest::collection::vec(proptest::collection::vec(-3i64..4, 10), 3)
}

fn poly_field(chart: &Chart, coeffs: &[Vec<i64>]) -> TensorField {
    let monomials = [
        "1", "x", "y", "z", "x^2", "y^2", "z^2", "x*y", "x*z", "y*z",
    ];
    let comps: Vec<Expr> = coeffs
        .iter()
        .map(|row| {
            row.iter()
                .zip(monomials.iter())
                .map(|(c, m)| Expr::int(*c) * e(m))
                .sum::<Expr>()
        })
        .collect();
    TensorField::vector(chart.clone(), comps)
}

fn sampled_tensor_is_zero(t: &TensorField, seed: u64, points: usize, tol: f64) -> bool {
    let coords = t.chart().coords().to_vec();
    let dom = t.chart().domain().clone();
    let mut rng = SmallRng::seed_from_u64(seed);
    for _ in 0..points {
        let p = dom.sample(&coords, &mut rng);
        for comp in t.comps() {
            match comp.eval(&p) {
                Ok(v) => {
                    if v.abs() > tol {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi_identity_for_polynomial_fields(
        a in arb_poly_field(),
        b in arb_poly_field(),
        c in arb_poly_field(),
    ) {
        let chart = chart3();
        let x = poly_field(&chart, &a);
        let y = poly_field(&chart, &b);
        let z = poly_field(&chart, &c);
        let cycle = lie_bracket(&lie_bracket(&x, &y), &z)
            .add(&lie_bracket(&lie_bracket(&y, &z), &x))
            .add(&lie_bracket(&lie_bracket(&z, &x), &y));
        prop_assert!(sampled_tensor_is_zero(&cycle, 7, 6, 1e-7));
    }

    #[test]
    fn bracket_antisymmetry_for_polynomial_fields(
        a in arb_poly_field(),
        b in arb_poly_field(),
    ) {
        let chart = chart3();
        let x = poly_field(&chart, &a);
        let y = poly_field(&chart, &b);
        let anti = lie_bracket(&x, &y).add(&lie_bracket(&y, &x));
        prop_assert!(anti.is_structurally_zero());
    }
}

#[test]
fn covariant_derivative_is_a_derivation() {
    // nabla_X (beta(Y)) = (nabla_X beta)(Y) + beta(nabla_X Y), sampled,
    // for the warped metric's Levi-Civita connection and fixed fields.
    let s = ambient_64();
    let chart = s.chart().clone();
    let conn = s.connection();
    let beta = TensorField::one_form(chart.clone(), exprs(&["y*z", "exp(z)", "x"]));
    let fields = [
        TensorField::vector(chart.clone(), exprs(&["1", "x", "y*z"])),
        TensorField::vector(chart.clone(), exprs(&["z^2", "-1", "x*y"])),
    ];
    for x in &fields {
        for y in &fields {
            // Left side: X applied to the scalar beta(Y).
            let scalar = beta.pair(y);
            let mut lhs = Expr::zero();
            for i in 0..3 {
                lhs = lhs + x.comp(&[i]).clone() * scalar.diff(chart.coord(i));
            }
            let rhs = covariant_derivative(conn, &beta, x).pair(y)
                + beta.pair(&covariant_derivative(conn, y, x));
            let dom = chart.domain().clone();
            let coords = chart.coords().to_vec();
            let mut rng = SmallRng::seed_from_u64(11);
            for _ in 0..10 {
                let p = dom.sample(&coords, &mut rng);
                let l = lhs.eval(&p).unwrap();
                let r = rhs.clone().simplify().eval(&p).unwrap();
                assert!(
                    (l - r).abs() <= 1e-9 * (1.0 + l.abs().max(r.abs())),
                    "derivation property failed at {p}: {l} vs {r}"
                );
            }
        }
    }
}

#[test]
fn exterior_derivative_two_routes_agree() {
    // Component formula vs the invariant formula
    // d eta(X, Y) = X(eta(Y)) - Y(eta(X)) - eta([X, Y]) on sample fields.
    let chart = chart3();
    let eta = TensorField::one_form(chart.clone(), exprs(&["y^2*z", "x*z", "exp(x)"]));
    let x = TensorField::vector(chart.clone(), exprs(&["y", "z^2", "1"]));
    let y = TensorField::vector(chart.clone(), exprs(&["x*z", "-2", "y"]));
    let d_eta = exterior_derivative(&eta);

    // Route 1: contract components.
    let mut route1 = Expr::zero();
    for i in 0..3 {
        for j in 0..3 {
            route1 = route1
                + d_eta.comp(&[i, j]).clone() * x.comp(&[i]).clone() * y.comp(&[j]).clone();
        }
    }
    // Route 2: the invariant formula.
    let eta_y = eta.pair(&y);
    let eta_x = eta.pair(&x);
    let mut route2 = -eta.pair(&lie_bracket(&x, &y));
    for i in 0..3 {
        route2 = route2 + x.comp(&[i]).clone() * eta_y.diff(chart.coord(i))
            - y.comp(&[i]).clone() * eta_x.diff(chart.coord(i));
    }
    let difference = (route1 - route2).simplify();
    let dom = chart.domain().clone();
    let coords = chart.coords().to_vec();
    let mut rng = SmallRng::seed_from_u64(5);
    for _ in 0..12 {
        let p = dom.sample(&coords, &mut rng);
        assert!(difference.eval(&p).unwrap().abs() < 1e-9);
    }
}

#[test]
fn lie_derivative_of_one_forms_matches_cartan_formula() {
    // L_xi eta = d(eta(xi)) + d(eta)(xi, .) componentwise, sampled.
    let chart = chart3();
    let xi = TensorField::vector(chart.clone(), exprs(&["y*z", "x^2", "1 - x"]));
    let eta = TensorField::one_form(chart.clone(), exprs(&["z^2", "x*y", "exp(x)"]));
    let direct = lie_derivative(&xi, &eta);

    let scalar = eta.pair(&xi);
    let d_eta = exterior_derivative(&eta);
    let cartan = TensorField::one_form(
        chart.clone(),
        (0..3)
            .map(|j| {
                let mut contraction = Expr::zero();
                for i in 0..3 {
                    contraction =
                        contraction + d_eta.comp(&[i, j]).clone() * xi.comp(&[i]).clone();
                }
                scalar.diff(chart.coord(j)) + contraction
            })
            .collect(),
    );
    let difference = direct.sub(&cartan);
    assert!(
        sampled_tensor_is_zero(&difference, 21, 10, 1e-9),
        "Cartan route disagrees"
    );
}

#[test]
fn torsion_tensor_routes_agree_for_random_data() {
    // S from brackets vs S from covariant derivatives, for pseudo-random
    // linear phi/eta/xi and a symmetric linear connection.
    let chart = chart3();
    let mut rng = SmallRng::seed_from_u64(99);
    let monomials = ["1", "x", "y", "z"];
    let mut linear = |scale: i64| -> Expr {
        monomials
            .iter()
            .map(|m| Expr::int(rng.gen_range(-scale..=scale)) * e(m))
            .sum::<Expr>()
    };
    for _ in 0..5 {
        let phi = TensorField::new(
            chart.clone(),
            1,
            1,
            (0..9).map(|_| linear(2)).collect(),
        );
        let xi = TensorField::vector(chart.clone(), (0..3).map(|_| linear(2)).collect());
        let eta = TensorField::one_form(chart.clone(), (0..3).map(|_| linear(2)).collect());
        let s = AcStructure::new(phi, xi, eta, 1, 1);

        // Symmetric connection coefficients.
        let mut gamma = vec![Expr::zero(); 27];
        for k in 0..3 {
            for i in 0..3 {
                for j in i..3 {
                    let value = linear(1);
                    gamma[(k * 3 + i) * 3 + j] = value.clone();
                    gamma[(k * 3 + j) * 3 + i] = value;
                }
            }
        }
        let conn = Connection::new(chart.clone(), gamma, true).unwrap();

        let via_brackets = normality_tensor(&s);
        let via_connection = normality_tensor_via_connection(&s, &conn);
        let difference = via_brackets.sub(&via_connection);
        let dom = chart.domain().clone();
        let coords = chart.coords().to_vec();
        let mut sample_rng = SmallRng::seed_from_u64(3);
        for _ in 0..6 {
            let p = dom.sample(&coords, &mut sample_rng);
            for comp in difference.comps() {
                let v = comp.eval(&p).unwrap();
                assert!(v.abs() < 1e-7, "torsion routes differ by {v} at {p}");
            }
        }
    }
}

#[test]
fn normality_contraction_with_xi_vanishes_for_automorphisms() {
    // When L_xi phi = 0 and L_xi eta = 0, the torsion contracted with xi
    // vanishes on the coordinate frame.
    for s in [ambient_61(), ambient_64().ac.clone(), ambient_63().ac.clone()] {
        let auto_phi = lie_derivative(&s.xi, &s.phi);
        let auto_eta = lie_derivative(&s.xi, &s.eta);
        assert!(auto_phi.is_structurally_zero() && auto_eta.is_structurally_zero());
        let torsion = normality_tensor(&s);
        let n = s.chart().dim();
        for i in 0..n {
            for k in 0..n {
                let mut contracted = Expr::zero();
                for j in 0..n {
                    contracted = contracted
                        + torsion.comp(&[k, i, j]).clone() * s.xi.comp(&[j]).clone();
                }
                assert!(contracted.simplify().is_zero());
            }
        }
    }
}

#[test]
fn phi_cubed_follows_from_the_axioms() {
    // Also on a structure with e1 = -1: a rotation block with xi = d/dz.
    let chart = chart3();
    let phi = TensorField::new(
        chart.clone(),
        1,
        1,
        exprs(&["0", "-1", "0", "1", "0", "0", "0", "0", "0"]),
    );
    let xi = TensorField::vector(chart.clone(), exprs(&["0", "0", "1"]));
    let eta = TensorField::one_form(chart.clone(), exprs(&["0", "0", "1"]));
    let s = AcStructure::new(phi, xi, eta, -1, 1);
    assert!(verify_ac(&s, &cfg()).passed());
    assert!(phi_cubed_residual(&s).is_structurally_zero());
    assert!(nijenhuis(&s.phi).is_structurally_zero());
}

#[test]
fn levi_civita_characterization_on_example_metrics() {
    // Symbolic Gamma-symmetry plus sampled nabla g = 0 on all example
    // metrics (these two properties characterize the connection).
    let metrics: Vec<MetricField> = vec![
        ambient_62().metric.clone(),
        ambient_63().metric.clone(),
        ambient_64().metric.clone(),
    ];
    for metric in &metrics {
        let conn = levi_civita(metric);
        assert!(conn.is_torsion_free());
        let n = metric.chart().dim();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let sym = (conn.gamma(k, i, j).clone() - conn.gamma(k, j, i).clone())
                        .simplify();
                    assert!(sym.is_zero());
                }
            }
        }
        for a in 0..n {
            let direction = TensorField::coordinate_vector(metric.chart().clone(), a);
            let nabla_g = covariant_derivative(&conn, metric.tensor(), &direction);
            assert!(
                sampled_tensor_is_zero(&nabla_g, 13, 8, 1e-9),
                "nabla_{a} g != 0"
            );
        }
    }
}
