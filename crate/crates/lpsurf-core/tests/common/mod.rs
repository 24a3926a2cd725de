//! Shared constructors for the worked examples used across the integration
//! suites: two five-dimensional constant-coefficient structures (one plain
//! ac, one with a flat Lorentzian metric) and two three-dimensional ones
//! (flat, and the exponential-warped Lorentzian para-Sasakian structure),
//! each with its hypersurfaces.

use lpsurf_core::contact::{AcStructure, LapStructure};
use lpsurf_core::expr::{parse_expr, DomainBox, Expr};
use lpsurf_core::geometry::{Chart, MetricField, TensorField};
use lpsurf_core::hypersurface::Immersion;
use lpsurf_core::report::CheckConfig;

pub fn e(text: &str) -> Expr {
    parse_expr(text).unwrap()
}

pub fn exprs(texts: &[&str]) -> Vec<Expr> {
    texts.iter().map(|t| e(t)).collect()
}

pub fn cfg() -> CheckConfig {
    CheckConfig::default()
}

fn metric(chart: &Chart, comps: Vec<Expr>) -> MetricField {
    let tensor = TensorField::new(chart.clone(), 0, 2, comps);
    MetricField::new(tensor, &chart.probe(16, 1e-9, 42)).unwrap()
}

/// Five-dimensional constant structure: eta = ds - dx - dz, xi = -d/ds,
/// phi(dx) = -dx - ds, phi(dy) = -dy, phi(dz) = -dz - ds, phi(dt) = -dt.
pub fn ambient_61() -> AcStructure {
    let chart = Chart::new(&["x", "y", "z", "t", "s"], DomainBox::new());
    let mut phi = vec![Expr::zero(); 25];
    for (i, j, v) in [
        (0usize, 0usize, -1i64),
        (4, 0, -1),
        (1, 1, -1),
        (2, 2, -1),
        (4, 2, -1),
        (3, 3, -1),
    ] {
        phi[i * 5 + j] = Expr::int(v);
    }
    let phi = TensorField::new(chart.clone(), 1, 1, phi);
    let xi = TensorField::vector(chart.clone(), exprs(&["0", "0", "0", "0", "-1"]));
    let eta = TensorField::one_form(chart.clone(), exprs(&["-1", "0", "-1", "0", "1"]));
    AcStructure::new(phi, xi, eta, 1, 1)
}

/// Hypersurface s = x of the five-dimensional structure.
pub fn immersion_61_m1() -> Immersion {
    let params = Chart::new(&["x", "y", "z", "t"], DomainBox::new());
    let ambient = ambient_61().chart().clone();
    Immersion::new(params, ambient, exprs(&["x", "y", "z", "t", "x"])).unwrap()
}

/// Hypersurface x = y of the five-dimensional structure.
pub fn immersion_61_m2() -> Immersion {
    let params = Chart::new(&["y", "z", "t", "s"], DomainBox::new());
    let ambient = ambient_61().chart().clone();
    Immersion::new(params, ambient, exprs(&["y", "y", "z", "t", "s"])).unwrap()
}

/// Five-dimensional structure with the flat Lorentzian metric
/// dx^2 + dy^2 + dz^2 + dt^2 - eta (x) eta, eta = ds - dx.
pub fn ambient_62() -> LapStructure {
    let chart = Chart::new(&["x", "y", "z", "t", "s"], DomainBox::new());
    let mut phi = vec![Expr::zero(); 25];
    for (i, j, v) in [
        (0usize, 0usize, 1i64),
        (4, 0, 1),
        (1, 1, 1),
        (2, 2, 1),
        (3, 3, 1),
    ] {
        phi[i * 5 + j] = Expr::int(v);
    }
    let phi = TensorField::new(chart.clone(), 1, 1, phi);
    let xi = TensorField::vector(chart.clone(), exprs(&["0", "0", "0", "0", "-1"]));
    let eta = TensorField::one_form(chart.clone(), exprs(&["-1", "0", "0", "0", "1"]));
    // g = dx^2+dy^2+dz^2+dt^2 - eta(x)eta with eta = ds - dx:
    // g_xx = 0, g_xs = g_sx = 1, g_ss = -1, rest euclidean.
    let g = TensorField::new(
        chart.clone(),
        0,
        2,
        exprs(&[
            "0", "0", "0", "0", "1",
            "0", "1", "0", "0", "0",
            "0", "0", "1", "0", "0",
            "0", "0", "0", "1", "0",
            "1", "0", "0", "0", "-1",
        ]),
    );
    let metric = metric(&chart, g.comps().to_vec());
    LapStructure::new(AcStructure::new(phi, xi, eta, 1, 1), metric).unwrap()
}

/// Hypersurface s = x of the metric five-dimensional structure.
pub fn immersion_62() -> Immersion {
    let params = Chart::new(&["x", "y", "z", "t"], DomainBox::new());
    let ambient = ambient_62().chart().clone();
    Immersion::new(params, ambient, exprs(&["x", "y", "z", "t", "x"])).unwrap()
}

/// Three-dimensional flat Lorentzian almost paracontact structure:
/// phi = diag(-1, -1, 0), xi = -d/dz, eta = dz, g = dx^2 + dy^2 - dz^2.
pub fn ambient_63() -> LapStructure {
    let chart = Chart::new(&["x", "y", "z"], DomainBox::new());
    let phi = TensorField::new(
        chart.clone(),
        1,
        1,
        exprs(&["-1", "0", "0", "0", "-1", "0", "0", "0", "0"]),
    );
    let xi = TensorField::vector(chart.clone(), exprs(&["0", "0", "-1"]));
    let eta = TensorField::one_form(chart.clone(), exprs(&["0", "0", "1"]));
    let metric = metric(
        &chart,
        exprs(&["1", "0", "0", "0", "1", "0", "0", "0", "-1"]),
    );
    LapStructure::new(AcStructure::new(phi, xi, eta, 1, 1), metric).unwrap()
}

/// Surface x = arcsin(y) of the flat three-dimensional structure,
/// parameterized by (y, z) with |y| < 0.9.
pub fn immersion_63() -> Immersion {
    let params = Chart::new(&["y", "z"], DomainBox::new().with("y", -0.9, 0.9));
    let ambient = ambient_63().chart().clone();
    Immersion::new(params, ambient, exprs(&["arcsin(y)", "y", "z"])).unwrap()
}

/// The exponential-warped Lorentzian para-Sasakian structure on (x, y, z):
/// phi = diag(1, -1, 0), xi = -d/dz, eta = dz,
/// g = e^{-2z} dx^2 + e^{2z} dy^2 - dz^2.
pub fn ambient_64() -> LapStructure {
    let chart = Chart::new(&["x", "y", "z"], DomainBox::new());
    let phi = TensorField::new(
        chart.clone(),
        1,
        1,
        exprs(&["1", "0", "0", "0", "-1", "0", "0", "0", "0"]),
    );
    let xi = TensorField::vector(chart.clone(), exprs(&["0", "0", "-1"]));
    let eta = TensorField::one_form(chart.clone(), exprs(&["0", "0", "1"]));
    let metric = metric(
        &chart,
        exprs(&["exp(-2*z)", "0", "0", "0", "exp(2*z)", "0", "0", "0", "-1"]),
    );
    LapStructure::new(AcStructure::new(phi, xi, eta, 1, 1), metric).unwrap()
}

/// Surface z = x + y of the warped structure.
pub fn immersion_64_m1() -> Immersion {
    let params = Chart::new(&["x", "y"], DomainBox::new());
    let ambient = ambient_64().chart().clone();
    Immersion::new(params, ambient, exprs(&["x", "y", "x + y"])).unwrap()
}

/// Surface x = arctan(y) of the warped structure, parameterized by (y, z).
pub fn immersion_64_m2() -> Immersion {
    let params = Chart::new(&["y", "z"], DomainBox::new());
    let ambient = ambient_64().chart().clone();
    Immersion::new(params, ambient, exprs(&["arctan(y)", "y", "z"])).unwrap()
}
