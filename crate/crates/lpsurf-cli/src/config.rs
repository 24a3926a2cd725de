//! JSON configuration for structures and hypersurfaces.
//!
//! The document shape:
//!
//! ```json
//! {
//!   "name": "warped-3d",
//!   "coords": ["x", "y", "z"],
//!   "domain": {"y": [-0.9, 0.9]},
//!   "phi": [["1","0","0"], ["0","-1","0"], ["0","0","0"]],
//!   "xi": ["0", "0", "-1"],
//!   "eta": ["0", "0", "1"],
//!   "e1": 1,
//!   "e2": 1,
//!   "metric": [["exp(-2*z)","0","0"], ["0","exp(2*z)","0"], ["0","0","-1"]],
//!   "expect": "lp-sasakian",
//!   "connection": "levi-civita",
//!   "hypersurfaces": [
//!     {
//!       "name": "M1",
//!       "params": ["x", "y"],
//!       "map": ["x", "y", "x + y"],
//!       "transversal": "characteristic"
//!     }
//!   ]
//! }
//! ```
//!
//! `phi[i][j]` is the i-th component of the image of the j-th coordinate
//! field. `expect` declares the strongest structure level the document
//! claims (`ac`, `lap`, `lp-contact`, `lp-sasakian`); checks beyond it are
//! reported but do not gate the exit code. `connection` picks the ambient
//! connection for the affine batteries: `"levi-civita"` (default when a
//! metric is present), `"zero"`, or an explicit `n^3` coefficient array
//! indexed `[k][i][j]`. A hypersurface `transversal` is `"characteristic"`,
//! `"metric-normal"`, `{"field": [...]}`, or omitted for automatic choice.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use lpsurf_core::contact::{AcStructure, LapStructure};
use lpsurf_core::expr::{parse_expr, DomainBox, Expr};
use lpsurf_core::geometry::{Chart, Connection, MetricField, TensorField};
use lpsurf_core::hypersurface::{Immersion, Transversal};
use lpsurf_core::report::CheckConfig;

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ConfigFile {
    #[serde(default)]
    pub name: Option<String>,
    pub coords: Vec<String>,
    #[serde(default)]
    pub domain: BTreeMap<String, (f64, f64)>,
    pub phi: Vec<Vec<String>>,
    pub xi: Vec<String>,
    pub eta: Vec<String>,
    pub e1: i8,
    pub e2: i8,
    #[serde(default)]
    pub metric: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub expect: Option<String>,
    #[serde(default)]
    pub connection: Option<ConnectionSpec>,
    #[serde(default)]
    pub hypersurfaces: Vec<HypersurfaceSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ConnectionSpec {
    Named(String),
    Gamma(Vec<Vec<Vec<String>>>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct HypersurfaceSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub params: Vec<String>,
    #[serde(default)]
    pub domain: BTreeMap<String, (f64, f64)>,
    pub map: Vec<String>,
    #[serde(default)]
    pub transversal: Option<TransversalSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum TransversalSpec {
    Named(String),
    Field { field: Vec<String> },
}

/// The strongest structure level a document claims; stronger checks are
/// informational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExpectLevel {
    Ac,
    Lap,
    LpContact,
    LpSasakian,
}

impl ExpectLevel {
    pub fn parse(text: &str) -> Option<Self> {
        Some(match text {
            "ac" => ExpectLevel::Ac,
            "lap" => ExpectLevel::Lap,
            "lp-contact" => ExpectLevel::LpContact,
            "lp-sasakian" => ExpectLevel::LpSasakian,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ExpectLevel::Ac => "ac",
            ExpectLevel::Lap => "lap",
            ExpectLevel::LpContact => "lp-contact",
            ExpectLevel::LpSasakian => "lp-sasakian",
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON in `{path}`: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
    #[error("{context}: expression `{text}`: {source}")]
    Expr {
        context: String,
        text: String,
        source: lpsurf_core::expr::ParseError,
    },
}

fn invalid(context: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        context: context.to_string(),
        message: message.into(),
    }
}

fn parse_in(context: &str, text: &str) -> Result<Expr, ConfigError> {
    parse_expr(text).map_err(|source| ConfigError::Expr {
        context: context.to_string(),
        text: text.to_string(),
        source,
    })
}

/// A validated, fully constructed document.
pub struct Loaded {
    pub name: String,
    pub chart: Chart,
    pub structure: AcStructure,
    pub metric: Option<MetricField>,
    pub lap: Option<LapStructure>,
    /// The ambient connection for affine batteries (Levi-Civita when a
    /// metric exists and nothing else was requested).
    pub connection: Option<Connection>,
    pub expect: ExpectLevel,
    pub hypersurfaces: Vec<LoadedHypersurface>,
}

pub struct LoadedHypersurface {
    pub name: String,
    pub immersion: Immersion,
    pub transversal: Option<Transversal>,
}

fn domain_box(
    intervals: &BTreeMap<String, (f64, f64)>,
    coords: &[String],
    context: &str,
) -> Result<DomainBox, ConfigError> {
    let mut dom = DomainBox::new();
    for (coord, (lo, hi)) in intervals {
        if !coords.iter().any(|c| c == coord) {
            return Err(invalid(
                context,
                format!("domain interval for unknown coordinate `{coord}`"),
            ));
        }
        if lo >= hi {
            return Err(invalid(
                context,
                format!("empty domain interval for `{coord}`"),
            ));
        }
        dom.set(coord, *lo, *hi);
    }
    Ok(dom)
}

fn parse_matrix(
    rows: &[Vec<String>],
    n: usize,
    context: &str,
) -> Result<Vec<Expr>, ConfigError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(invalid(context, format!("expected an {n}x{n} matrix")));
    }
    let mut out = Vec::with_capacity(n * n);
    for row in rows {
        for entry in row {
            out.push(parse_in(context, entry)?);
        }
    }
    Ok(out)
}

fn parse_vector(entries: &[String], n: usize, context: &str) -> Result<Vec<Expr>, ConfigError> {
    if entries.len() != n {
        return Err(invalid(
            context,
            format!("expected {n} entries, got {}", entries.len()),
        ));
    }
    entries.iter().map(|t| parse_in(context, t)).collect()
}

impl ConfigFile {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| ConfigError::Json {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self, ConfigError> {
        serde_json::from_value(value).map_err(|source| ConfigError::Json {
            path: "<registry>".to_string(),
            source,
        })
    }

    /// Validates the document and constructs the domain objects.
    pub fn load(&self, cfg: &CheckConfig) -> Result<Loaded, ConfigError> {
        let n = self.coords.len();
        if n < 2 {
            return Err(invalid("coords", "need at least two coordinates"));
        }
        let coord_names: Vec<&str> = self.coords.iter().map(String::as_str).collect();
        let dom = domain_box(&self.domain, &self.coords, "domain")?;
        let chart = Chart::new(&coord_names, dom);

        let phi = TensorField::new(chart.clone(), 1, 1, parse_matrix(&self.phi, n, "phi")?);
        let xi = TensorField::vector(chart.clone(), parse_vector(&self.xi, n, "xi")?);
        let eta = TensorField::one_form(chart.clone(), parse_vector(&self.eta, n, "eta")?);
        if !(self.e1 == 1 || self.e1 == -1) || !(self.e2 == 1 || self.e2 == -1) {
            return Err(invalid("e1/e2", "signs must be +1 or -1"));
        }
        for component in phi
            .comps()
            .iter()
            .chain(xi.comps())
            .chain(eta.comps())
        {
            for coord in component.free_coords() {
                if chart.coord_index(&coord).is_none() {
                    return Err(invalid(
                        "structure",
                        format!("expression mentions unknown coordinate `{coord}`"),
                    ));
                }
            }
        }
        let structure = AcStructure::new(phi, xi, eta, self.e1, self.e2);

        let metric = match &self.metric {
            Some(rows) => {
                let tensor =
                    TensorField::new(chart.clone(), 0, 2, parse_matrix(rows, n, "metric")?);
                let probe = chart.probe(cfg.sample_points, cfg.tol, cfg.seed);
                Some(
                    MetricField::new(tensor, &probe)
                        .map_err(|e| invalid("metric", e.to_string()))?,
                )
            }
            None => None,
        };

        let expect = match &self.expect {
            Some(text) => ExpectLevel::parse(text)
                .ok_or_else(|| invalid("expect", format!("unknown level `{text}`")))?,
            None => {
                if metric.is_some() {
                    ExpectLevel::Lap
                } else {
                    ExpectLevel::Ac
                }
            }
        };
        if expect > ExpectLevel::Ac && metric.is_none() {
            return Err(invalid(
                "expect",
                "metric required for Lorentzian structure levels",
            ));
        }

        let lap = match &metric {
            Some(m) => Some(
                LapStructure::new(structure.clone(), m.clone())
                    .map_err(|e| invalid("structure", e.to_string()))?,
            ),
            None => None,
        };

        let connection = match &self.connection {
            Some(ConnectionSpec::Named(name)) => match name.as_str() {
                "zero" => Some(Connection::zero(chart.clone())),
                "levi-civita" => match &lap {
                    Some(lap) => Some(lap.connection().clone()),
                    None => {
                        return Err(invalid(
                            "connection",
                            "levi-civita requires a metric",
                        ))
                    }
                },
                other => {
                    return Err(invalid(
                        "connection",
                        format!("unknown connection `{other}`"),
                    ))
                }
            },
            Some(ConnectionSpec::Gamma(rows)) => {
                if rows.len() != n
                    || rows.iter().any(|r| r.len() != n)
                    || rows.iter().flatten().any(|r| r.len() != n)
                {
                    return Err(invalid(
                        "connection",
                        format!("coefficients must form an {n}x{n}x{n} array"),
                    ));
                }
                let mut gamma = Vec::with_capacity(n * n * n);
                for plane in rows {
                    for row in plane {
                        for entry in row {
                            gamma.push(parse_in("connection", entry)?);
                        }
                    }
                }
                Some(
                    Connection::new(chart.clone(), gamma, true)
                        .map_err(|e| invalid("connection", e.to_string()))?,
                )
            }
            None => lap.as_ref().map(|l| l.connection().clone()),
        };

        let mut hypersurfaces = Vec::with_capacity(self.hypersurfaces.len());
        for (index, spec) in self.hypersurfaces.iter().enumerate() {
            let default_name = format!("M{}", index + 1);
            let name = spec.name.clone().unwrap_or(default_name);
            let context = format!("hypersurface `{name}`");
            if spec.params.len() + 1 != n {
                return Err(invalid(
                    &context,
                    format!(
                        "needs {} parameters for an ambient dimension of {n}",
                        n - 1
                    ),
                ));
            }
            let param_names: Vec<&str> = spec.params.iter().map(String::as_str).collect();
            let param_dom = domain_box(&spec.domain, &spec.params, &context)?;
            let param_chart = Chart::new(&param_names, param_dom);
            let map = spec
                .map
                .iter()
                .map(|t| parse_in(&context, t))
                .collect::<Result<Vec<_>, _>>()?;
            let immersion = Immersion::new(param_chart, chart.clone(), map)
                .map_err(|e| invalid(&context, e.to_string()))?;
            let transversal = match &spec.transversal {
                None => None,
                Some(TransversalSpec::Named(name)) => match name.as_str() {
                    "characteristic" => Some(Transversal::Characteristic),
                    "metric-normal" => Some(Transversal::MetricNormal),
                    other => {
                        return Err(invalid(
                            &context,
                            format!("unknown transversal `{other}`"),
                        ))
                    }
                },
                Some(TransversalSpec::Field { field }) => {
                    let comps = field
                        .iter()
                        .map(|t| parse_in(&context, t))
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(Transversal::Field(comps))
                }
            };
            hypersurfaces.push(LoadedHypersurface {
                name,
                immersion,
                transversal,
            });
        }

        Ok(Loaded {
            name: self.name.clone().unwrap_or_else(|| "unnamed".to_string()),
            chart,
            structure,
            metric,
            lap,
            connection,
            expect,
            hypersurfaces,
        })
    }
}
