//! Check configuration and structured pass/fail reporting.
//!
//! Every verifier in this crate emits a [`StructureReport`]: one entry per
//! identity, carrying the maximum sampled residual and a witness point on
//! failure. Identities are checked symbolically first (the simplified
//! residual is the literal zero) and fall back to seeded sampling otherwise,
//! so rerunning with the same seed reproduces reports byte for byte.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::rngs::SmallRng;
use rand::SeedableRng;

use crate::expr::{sample_in_domain, Expr, SamplePoint};
use crate::geometry::{Chart, TensorField};
use crate::linalg::ZeroProbe;

/// Sampling parameters shared by all verifiers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckConfig {
    pub seed: u64,
    pub sample_points: usize,
    pub tol: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 42,
            sample_points: 20,
            tol: 1e-9,
        }
    }
}

impl CheckConfig {
    pub fn probe(&self, chart: &Chart) -> ZeroProbe {
        chart.probe(self.sample_points, self.tol, self.seed)
    }
}

/// How an entry participates in the overall verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    /// An identity that must hold; a failure fails the report.
    Identity,
    /// A truth value that is computed and reported, with no pass/fail
    /// semantics (e.g. a classifying condition).
    Determination,
    /// A violated precondition, reported instead of thrown.
    Precondition,
    /// Informational context (classification facts, chosen conventions).
    Info,
}

/// One per-identity record.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckEntry {
    /// Stable machine key (customary numbering of the identity), when one
    /// exists.
    pub label: Option<String>,
    /// Human-readable statement of what was checked.
    pub name: String,
    pub kind: EntryKind,
    /// `Some(true)` when the identity held / the determination is true.
    pub passed: Option<bool>,
    /// Largest absolute residual seen over the sampled points (0 when the
    /// residual simplified to the literal zero).
    pub max_residual: f64,
    /// First sample point at which the identity failed.
    pub witness: Option<SamplePoint>,
    pub note: Option<String>,
}

impl CheckEntry {
    pub fn info(name: &str, note: &str) -> Self {
        CheckEntry {
            label: None,
            name: name.to_string(),
            kind: EntryKind::Info,
            passed: None,
            max_residual: 0.0,
            witness: None,
            note: Some(note.to_string()),
        }
    }

    pub fn precondition(name: &str, note: &str) -> Self {
        CheckEntry {
            label: None,
            name: name.to_string(),
            kind: EntryKind::Precondition,
            passed: Some(false),
            max_residual: 0.0,
            witness: None,
            note: Some(note.to_string()),
        }
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub fn as_determination(mut self) -> Self {
        self.kind = EntryKind::Determination;
        self
    }

    /// True for identities and satisfied preconditions; determinations and
    /// info lines never count against a report.
    pub fn is_failure(&self) -> bool {
        matches!(self.kind, EntryKind::Identity | EntryKind::Precondition)
            && self.passed == Some(false)
    }
}

/// A list of per-identity records produced by one verifier run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StructureReport {
    pub entries: Vec<CheckEntry>,
}

impl StructureReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: StructureReport) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        !self.entries.iter().any(CheckEntry::is_failure)
    }

    pub fn entry(&self, label_or_name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| {
            e.label.as_deref() == Some(label_or_name) || e.name == label_or_name
        })
    }

    /// The entry must exist and record a held identity/determination.
    pub fn holds(&self, label_or_name: &str) -> bool {
        self.entry(label_or_name)
            .map(|e| e.passed == Some(true))
            .unwrap_or(false)
    }
}

/// Runs symbolic-then-sampled residual checks over one chart.
pub struct Checker<'a> {
    pub chart: &'a Chart,
    pub cfg: CheckConfig,
}

impl<'a> Checker<'a> {
    pub fn new(chart: &'a Chart, cfg: CheckConfig) -> Self {
        Checker { chart, cfg }
    }

    pub fn probe(&self) -> ZeroProbe {
        self.cfg.probe(self.chart)
    }

    /// Checks that every expression in `residuals` is identically zero.
    /// `scale` expressions, when given, enter the relative tolerance as
    /// `tol * (1 + max |scale_i|)`.
    pub fn check_zero(&self, name: &str, residuals: &[Expr], scales: &[Expr]) -> CheckEntry {
        let simplified: Vec<Expr> = residuals.iter().map(Expr::simplify).collect();
        if simplified.iter().all(Expr::is_zero) {
            return CheckEntry {
                label: None,
                name: name.to_string(),
                kind: EntryKind::Identity,
                passed: Some(true),
                max_residual: 0.0,
                witness: None,
                note: Some("holds symbolically".to_string()),
            };
        }

        let nonzero: Vec<&Expr> = simplified.iter().filter(|e| !e.is_zero()).collect();
        let mut all_exprs: Vec<&Expr> = nonzero.clone();
        all_exprs.extend(scales.iter());

        let mut rng = SmallRng::seed_from_u64(self.cfg.seed);
        let mut max_residual = 0.0f64;
        let mut witness: Option<SamplePoint> = None;
        for _ in 0..self.cfg.sample_points {
            let (point, values) = match sample_in_domain(
                &all_exprs,
                self.chart.coords(),
                self.chart.domain(),
                &mut rng,
            ) {
                Ok(drawn) => drawn,
                Err(err) => {
                    return CheckEntry {
                        label: None,
                        name: name.to_string(),
                        kind: EntryKind::Identity,
                        passed: Some(false),
                        max_residual,
                        witness: None,
                        note: Some(alloc::format!("sampling failed: {err}")),
                    }
                }
            };
            let scale_magnitude = values[nonzero.len()..]
                .iter()
                .fold(0.0f64, |acc, v| acc.max(libm::fabs(*v)));
            let allowed = self.cfg.tol * (1.0 + scale_magnitude);
            for residual in &values[..nonzero.len()] {
                let magnitude = libm::fabs(*residual);
                max_residual = max_residual.max(magnitude);
                if magnitude > allowed && witness.is_none() {
                    witness = Some(point.clone());
                }
            }
        }

        let passed = witness.is_none();
        CheckEntry {
            label: None,
            name: name.to_string(),
            kind: EntryKind::Identity,
            passed: Some(passed),
            max_residual,
            witness,
            note: None,
        }
    }

    /// Componentwise `lhs == rhs` with the components of both sides as the
    /// relative scale.
    pub fn check_tensors_equal(
        &self,
        name: &str,
        lhs: &TensorField,
        rhs: &TensorField,
    ) -> CheckEntry {
        assert_eq!(lhs.signature(), rhs.signature(), "signature mismatch");
        let difference = lhs.sub(rhs);
        let mut scales: Vec<Expr> = Vec::new();
        scales.extend(lhs.comps().iter().cloned());
        scales.extend(rhs.comps().iter().cloned());
        self.check_zero(name, difference.comps(), &scales)
    }

    /// Componentwise `t == 0`.
    pub fn check_tensor_zero(&self, name: &str, t: &TensorField) -> CheckEntry {
        self.check_zero(name, t.comps(), &[])
    }

    /// Scalar equality with both sides as scale.
    pub fn check_exprs_equal(&self, name: &str, lhs: &Expr, rhs: &Expr) -> CheckEntry {
        self.check_zero(
            name,
            &[lhs.clone() - rhs.clone()],
            &[lhs.clone(), rhs.clone()],
        )
    }

    /// Samples points and applies `f`; the entry passes when `f` returns
    /// `Ok(Some(true))` at every point where it applies. `Ok(None)` skips a
    /// point (outside a function domain); at least one point must be
    /// evaluated.
    pub fn check_pointwise(
        &self,
        name: &str,
        mut f: impl FnMut(&SamplePoint) -> Result<Option<bool>, String>,
    ) -> CheckEntry {
        let mut rng = SmallRng::seed_from_u64(self.cfg.seed);
        let mut witness = None;
        let mut note = None;
        let mut evaluated = 0usize;
        let mut attempts = 0usize;
        while evaluated < self.cfg.sample_points && attempts < self.cfg.sample_points * 20 {
            attempts += 1;
            let point = self.chart.sample(&mut rng);
            match f(&point) {
                Ok(Some(true)) => evaluated += 1,
                Ok(Some(false)) => {
                    evaluated += 1;
                    if witness.is_none() {
                        witness = Some(point);
                    }
                }
                Ok(None) => {}
                Err(message) => {
                    note = Some(message);
                    if witness.is_none() {
                        witness = Some(point);
                    }
                    evaluated += 1;
                }
            }
        }
        if evaluated == 0 && note.is_none() {
            note = Some("no valid sample points in the domain".to_string());
        }
        CheckEntry {
            label: None,
            name: name.to_string(),
            kind: EntryKind::Identity,
            passed: Some(witness.is_none() && evaluated > 0),
            max_residual: 0.0,
            witness,
            note,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expr, DomainBox};

    fn chart() -> Chart {
        Chart::new(&["x", "y"], DomainBox::new())
    }

    #[test]
    fn symbolic_zero_has_no_sampling() {
        let binding = chart();
        let checker = Checker::new(&binding, CheckConfig::default());
        let entry = checker.check_zero("x - x", &[parse_expr("x - x").unwrap()], &[]);
        assert_eq!(entry.passed, Some(true));
        assert_eq!(entry.max_residual, 0.0);
        assert_eq!(entry.note.as_deref(), Some("holds symbolically"));
    }

    #[test]
    fn sampled_identity_passes_and_failure_has_witness() {
        let binding = chart();
        let checker = Checker::new(&binding, CheckConfig::default());
        let trig = checker.check_exprs_equal(
            "sin^2 + cos^2 = 1",
            &parse_expr("sin(x)^2 + cos(x)^2").unwrap(),
            &parse_expr("1").unwrap(),
        );
        assert_eq!(trig.passed, Some(true));
        assert!(trig.max_residual < 1e-12);

        let wrong = checker.check_exprs_equal(
            "x = y",
            &parse_expr("x").unwrap(),
            &parse_expr("y").unwrap(),
        );
        assert_eq!(wrong.passed, Some(false));
        assert!(wrong.witness.is_some());
        assert!(wrong.max_residual > 1e-3);
    }

    #[test]
    fn report_verdict_ignores_determinations() {
        let mut report = StructureReport::new();
        report.push(CheckEntry {
            label: Some("d1".to_string()),
            name: "classifying condition".to_string(),
            kind: EntryKind::Determination,
            passed: Some(false),
            max_residual: 1.0,
            witness: None,
            note: None,
        });
        assert!(report.passed());
        report.push(CheckEntry::precondition("needs metric", "metric missing"));
        assert!(!report.passed());
    }
}
