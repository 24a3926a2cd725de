//! Command implementations: structure checks, hypersurface analysis, the
//! theorem batteries, registry listing and config export.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use lpsurf_core::contact::{
    verify_ac, verify_lap, verify_lp_contact, verify_lp_sasakian, verify_normality,
    xi_automorphism_report,
};
use lpsurf_core::hypersurface::{
    analyze_hypersurface, verify_affine_case, verify_invariant_lps, verify_noninvariant_lps,
    Invariance, XiPosition,
};
use lpsurf_core::report::{CheckConfig, EntryKind, StructureReport};

use crate::config::{ConfigError, ConfigFile, ExpectLevel, Loaded, LoadedHypersurface};
use crate::expectations::hypersurface_expectations;
use crate::registry::{self, ExampleEntry, ExpectedHypersurface};
use crate::report::{Report, ReportEntry, Section};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("unknown example id or missing config file `{0}`")]
    UnknownTarget(String),
    #[error("no hypersurface named `{name}` in `{target}`")]
    UnknownHypersurface { target: String, name: String },
    #[error("cannot write `{path}`: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

/// A resolved target: the parsed config, the registry record when the
/// target is a builtin id, and an optional hypersurface filter.
pub struct Resolved {
    pub display: String,
    pub file: ConfigFile,
    pub entry: Option<ExampleEntry>,
    pub hypersurface_filter: Option<String>,
}

pub fn resolve_target(target: &str, filter: Option<&str>) -> Result<Resolved, CliError> {
    let (structure_id, inline_filter) = registry::split_id(target);
    if let Some(entry) = registry::find(structure_id) {
        let file = ConfigFile::from_value(entry.config.clone())?;
        return Ok(Resolved {
            display: target.to_string(),
            file,
            entry: Some(registry::find(structure_id).expect("entry exists")),
            hypersurface_filter: filter
                .map(str::to_string)
                .or_else(|| inline_filter.map(str::to_string)),
        });
    }
    let path = Path::new(target);
    if path.exists() {
        let file = ConfigFile::from_path(path)?;
        return Ok(Resolved {
            display: target.to_string(),
            file,
            entry: None,
            hypersurface_filter: filter.map(str::to_string),
        });
    }
    Err(CliError::UnknownTarget(target.to_string()))
}

fn downgrade_to_determination(report: StructureReport, note: &str) -> StructureReport {
    let mut out = report;
    for entry in &mut out.entries {
        if entry.kind == EntryKind::Identity {
            entry.kind = EntryKind::Determination;
        }
        let suffix = note.to_string();
        entry.note = Some(match &entry.note {
            Some(existing) => format!("{existing}; {suffix}"),
            None => suffix,
        });
    }
    out
}

/// `check-structure`: the structure axioms ladder plus normality and the
/// automorphism report. Levels beyond the document's declared level are
/// reported without gating the exit code.
pub fn cmd_check_structure(resolved: &Resolved, cfg: &CheckConfig) -> Result<Report, CliError> {
    let loaded = resolved.file.load(cfg)?;
    let mut sections = Vec::new();

    let mut section = Section::from_structure_report(
        "almost contact axioms",
        &verify_ac(&loaded.structure, cfg),
    );
    section
        .entries
        .extend(normality_entries(&loaded, cfg, resolved.entry.as_ref()));
    section.entries.extend(
        Section::from_structure_report("", &xi_automorphism_report(&loaded.structure, cfg))
            .entries,
    );
    sections.push(section);

    if let Some(lap) = &loaded.lap {
        let beyond = |level: ExpectLevel| level > loaded.expect;
        let lap_report = verify_lap(lap, cfg);
        let lap_report = if beyond(ExpectLevel::Lap) {
            downgrade_to_determination(lap_report, "beyond the declared structure level")
        } else {
            lap_report
        };
        sections.push(Section::from_structure_report(
            "Lorentzian almost paracontact",
            &lap_report,
        ));

        let contact_report = verify_lp_contact(lap, cfg);
        let contact_report = if beyond(ExpectLevel::LpContact) {
            downgrade_to_determination(contact_report, "beyond the declared structure level")
        } else {
            contact_report
        };
        sections.push(Section::from_structure_report(
            "Lorentzian paracontact",
            &contact_report,
        ));

        let sasakian_report = verify_lp_sasakian(lap, cfg);
        let sasakian_report = if beyond(ExpectLevel::LpSasakian) {
            downgrade_to_determination(sasakian_report, "beyond the declared structure level")
        } else {
            sasakian_report
        };
        sections.push(Section::from_structure_report(
            "Lorentzian para-Sasakian",
            &sasakian_report,
        ));
    }

    if let Some(entry) = &resolved.entry {
        sections.push(structure_expectation_section(entry, &loaded, cfg));
    }

    Ok(Report::new(
        "check-structure",
        &resolved.display,
        cfg,
        sections,
    ))
}

fn normality_entries(
    loaded: &Loaded,
    cfg: &CheckConfig,
    entry: Option<&ExampleEntry>,
) -> Vec<ReportEntry> {
    let report = verify_normality(&loaded.structure, cfg);
    let mut entries: Vec<ReportEntry> = report.entries.iter().map(ReportEntry::from_check).collect();
    // For user documents normality is a classification, not an axiom; the
    // registry pins its expected value separately.
    for e in &mut entries {
        if entry.is_none() {
            e.kind = "determination";
        }
    }
    entries
}

fn structure_expectation_section(
    entry: &ExampleEntry,
    loaded: &Loaded,
    cfg: &CheckConfig,
) -> Section {
    let mut section = Section::new("registry expectations");
    for (level, expected_pass) in &entry.expected.levels {
        let actual = match *level {
            "ac" => verify_ac(&loaded.structure, cfg).passed(),
            "lap" => loaded
                .lap
                .as_ref()
                .map(|l| verify_lap(l, cfg).passed())
                .unwrap_or(false),
            "lp-contact" => loaded
                .lap
                .as_ref()
                .map(|l| verify_lp_contact(l, cfg).passed())
                .unwrap_or(false),
            "lp-sasakian" => loaded
                .lap
                .as_ref()
                .map(|l| verify_lp_sasakian(l, cfg).passed())
                .unwrap_or(false),
            other => panic!("unknown level {other}"),
        };
        section.entries.push(ReportEntry::expectation(
            &format!("expected:{level}"),
            &format!("level `{level}` verifies: expected {expected_pass}"),
            actual == *expected_pass,
            (actual != *expected_pass).then(|| format!("computed: {actual}")),
        ));
    }
    let normal = verify_normality(&loaded.structure, cfg).passed();
    section.entries.push(ReportEntry::expectation(
        "expected:normal",
        &format!("normality: expected {}", entry.expected.normal),
        normal == entry.expected.normal,
        None,
    ));
    section
}

fn selected_hypersurfaces<'a>(
    loaded: &'a Loaded,
    resolved: &Resolved,
) -> Result<Vec<&'a LoadedHypersurface>, CliError> {
    match &resolved.hypersurface_filter {
        None => Ok(loaded.hypersurfaces.iter().collect()),
        Some(name) => {
            let matched: Vec<&LoadedHypersurface> = loaded
                .hypersurfaces
                .iter()
                .filter(|h| &h.name == name)
                .collect();
            if matched.is_empty() {
                return Err(CliError::UnknownHypersurface {
                    target: resolved.display.clone(),
                    name: name.clone(),
                });
            }
            Ok(matched)
        }
    }
}

fn expected_for<'a>(
    resolved: &'a Resolved,
    name: &str,
) -> Option<&'a ExpectedHypersurface> {
    resolved
        .entry
        .as_ref()
        .and_then(|e| e.expected.hypersurfaces.iter().find(|h| h.name == name))
}

/// `analyze`: the per-hypersurface pipeline with registry comparison.
pub fn cmd_analyze(resolved: &Resolved, cfg: &CheckConfig) -> Result<Report, CliError> {
    let loaded = resolved.file.load(cfg)?;
    let mut sections = Vec::new();
    for hyper in selected_hypersurfaces(&loaded, resolved)? {
        let title = format!("hypersurface {}", hyper.name);
        let analysis = match analyze_hypersurface(
            &hyper.immersion,
            &loaded.structure,
            loaded.metric.as_ref(),
            loaded.connection.as_ref(),
            hyper.transversal.as_ref(),
            cfg,
        ) {
            Ok(a) => a,
            Err(e) => {
                let mut section = Section::new(&title);
                section.entries.push(ReportEntry {
                    theorem: None,
                    name: "analysis".to_string(),
                    kind: "precondition",
                    pass: Some(false),
                    max_residual: 0.0,
                    witness: None,
                    note: Some(e.to_string()),
                    expected_discrepancy: false,
                });
                sections.push(section);
                continue;
            }
        };

        let mut section = Section::from_structure_report(&title, &analysis.report);
        section.classification = Some(analysis.classification.tag());
        section.entries.extend(summary_entries(&analysis));
        if let Some(expected) = expected_for(resolved, &hyper.name) {
            section.flag_expected_failures(&expected.expected_fail_labels);
            let pinned = crate::expectations::pin_determinations(expected, &section);
            section.entries.extend(pinned);
            section.entries.extend(hypersurface_expectations(
                resolved.entry.as_ref().map(|e| e.id).unwrap_or(""),
                expected,
                &loaded,
                &analysis,
                &hyper.immersion,
                cfg,
            ));
        }
        sections.push(section);
        sections.extend(theorem_sections(&loaded, resolved, hyper, cfg));
    }
    Ok(Report::new("analyze", &resolved.display, cfg, sections))
}

fn summary_entries(
    analysis: &lpsurf_core::hypersurface::HypersurfaceAnalysis,
) -> Vec<ReportEntry> {
    let mut entries = Vec::new();
    let frame_text: Vec<String> = analysis
        .frame
        .iter()
        .map(|u| {
            format!(
                "({})",
                u.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    entries.push(ReportEntry::info("tangent frame", &frame_text.join(", ")));
    if let Some((normal, norm)) = &analysis.metric_normal {
        entries.push(ReportEntry::info(
            "metric normal",
            &format!(
                "({}); g(N, N) = {}",
                normal
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                norm
            ),
        ));
    }
    if let Some(d) = &analysis.decomposition {
        entries.push(ReportEntry::info(
            "induced tensor",
            &matrix_text(&d.induced_endo),
        ));
        entries.push(ReportEntry::info(
            "transversal coefficient form",
            &row_text(d.alpha.comps()),
        ));
    }
    if let Some(gauss) = &analysis.gauss {
        entries.push(ReportEntry::info(
            "second fundamental form",
            &matrix_text(&gauss.second_fundamental),
        ));
        entries.push(ReportEntry::info("shape operator", &matrix_text(&gauss.shape)));
        entries.push(ReportEntry::info(
            "transversal connection form",
            &row_text(gauss.transversal_form.comps()),
        ));
    }
    if let Some(invariant) = &analysis.invariant {
        entries.push(ReportEntry::info(
            "induced tangent tensor",
            &matrix_text(&invariant.structure.phi),
        ));
        entries.push(ReportEntry::info(
            "induced characteristic field",
            &row_text(invariant.structure.xi.comps()),
        ));
        entries.push(ReportEntry::info(
            "induced contact form",
            &row_text(invariant.structure.eta.comps()),
        ));
    }
    entries
}

fn matrix_text(t: &lpsurf_core::geometry::TensorField) -> String {
    let n = t.chart().dim();
    (0..n)
        .map(|i| {
            let row: Vec<String> = (0..n).map(|j| t.comp(&[i, j]).to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn row_text(comps: &[lpsurf_core::expr::Expr]) -> String {
    format!(
        "({})",
        comps.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    )
}

/// `verify-theorems`: the applicable hypersurface batteries, with registry
/// expectation pinning.
pub fn cmd_verify_theorems(resolved: &Resolved, cfg: &CheckConfig) -> Result<Report, CliError> {
    let loaded = resolved.file.load(cfg)?;
    let mut sections = Vec::new();
    for hyper in selected_hypersurfaces(&loaded, resolved)? {
        sections.extend(theorem_sections(&loaded, resolved, hyper, cfg));
    }
    Ok(Report::new("verify-theorems", &resolved.display, cfg, sections))
}

/// The applicable theorem batteries for one hypersurface, shared by
/// `analyze` and `verify-theorems`.
fn theorem_sections(
    loaded: &Loaded,
    resolved: &Resolved,
    hyper: &LoadedHypersurface,
    cfg: &CheckConfig,
) -> Vec<Section> {
    let mut sections = Vec::new();
    {
        let expected = expected_for(resolved, &hyper.name);
        let classification =
            match lpsurf_core::hypersurface::classify_invariance(&hyper.immersion, &loaded.structure, cfg)
            {
                Ok(c) => c,
                Err(e) => {
                    let mut section = Section::new(&format!("hypersurface {}", hyper.name));
                    section.entries.push(ReportEntry {
                        theorem: None,
                        name: "classification".to_string(),
                        kind: "precondition",
                        pass: Some(false),
                        max_residual: 0.0,
                        witness: None,
                        note: Some(e.to_string()),
                        expected_discrepancy: false,
                    });
                    sections.push(section);
                    return sections;
                }
            };

        // Noninvariant battery: needs a metric and a transversal
        // characteristic field.
        if let Some(lap) = &loaded.lap {
            if classification.xi_position == XiPosition::Transversal {
                let run = verify_noninvariant_lps(&hyper.immersion, lap, cfg);
                let mut section = Section::from_structure_report(
                    &format!("hypersurface {} - noninvariant battery", hyper.name),
                    &run,
                );
                section.classification = Some(classification.tag());
                if let Some(expected) = expected {
                    section.flag_expected_failures(&expected.expected_fail_labels);
                    section
                        .entries
                        .extend(determination_expectations(expected, &run));
                }
                sections.push(section);
            } else {
                sections.push(not_applicable_section(
                    &format!("hypersurface {} - noninvariant battery", hyper.name),
                    "the characteristic field is tangent; the affine-normal battery does not apply",
                    &classification,
                ));
            }

            // Invariant battery: invariant with tangent characteristic
            // field, and only asserted for structures declared Sasakian.
            if classification.invariance == Invariance::Invariant
                && classification.xi_position == XiPosition::Tangent
            {
                if loaded.expect == ExpectLevel::LpSasakian {
                    let run = verify_invariant_lps(&hyper.immersion, lap, cfg);
                    let mut section = Section::from_structure_report(
                        &format!("hypersurface {} - invariant battery", hyper.name),
                        &run,
                    );
                    section.classification = Some(classification.tag());
                    sections.push(section);
                } else {
                    // The induced-structure part applies to any invariant
                    // tangent case; run it without the Sasakian assertions.
                    match lpsurf_core::hypersurface::induced_invariant_structure(
                        &hyper.immersion,
                        &loaded.structure,
                        loaded.metric.as_ref(),
                        cfg,
                    ) {
                        Ok(induced) => {
                            let mut section = Section::from_structure_report(
                                &format!(
                                    "hypersurface {} - induced structure",
                                    hyper.name
                                ),
                                &induced.report,
                            );
                            section.classification = Some(classification.tag());
                            section.entries.push(ReportEntry::info(
                                "invariant battery",
                                "ambient level is below Lorentzian para-Sasakian; only the induced-structure results are asserted",
                            ));
                            sections.push(section);
                        }
                        Err(e) => sections.push(not_applicable_section(
                            &format!("hypersurface {} - induced structure", hyper.name),
                            &e.to_string(),
                            &classification,
                        )),
                    }
                }
            }
        } else if classification.invariance == Invariance::Invariant
            && classification.xi_position == XiPosition::Tangent
        {
            // Metric-free invariant case: induced ac structure and the
            // normality transfer.
            match lpsurf_core::hypersurface::induced_invariant_structure(
                &hyper.immersion,
                &loaded.structure,
                None,
                cfg,
            ) {
                Ok(induced) => {
                    let mut section = Section::from_structure_report(
                        &format!("hypersurface {} - induced structure", hyper.name),
                        &induced.report,
                    );
                    section.classification = Some(classification.tag());
                    // Normality transfer: a normal ambient induces a normal
                    // hypersurface structure.
                    let ambient_normal =
                        verify_normality(&loaded.structure, cfg).passed();
                    if ambient_normal {
                        let induced_normal =
                            verify_normality(&induced.structure, cfg);
                        let passed = induced_normal.passed();
                        section.entries.push(ReportEntry::expectation(
                            "5.8",
                            "normal ambient structure induces a normal structure",
                            passed,
                            None,
                        ));
                    }
                    sections.push(section);
                }
                Err(e) => sections.push(not_applicable_section(
                    &format!("hypersurface {} - induced structure", hyper.name),
                    &e.to_string(),
                    &classification,
                )),
            }
        }

        // Affine battery, whenever a connection is configured.
        if let Some(connection) = &loaded.connection {
            let run = verify_affine_case(&hyper.immersion, &loaded.structure, connection, cfg);
            let mut section = Section::from_structure_report(
                &format!("hypersurface {} - affine battery", hyper.name),
                &run,
            );
            section.classification = Some(classification.tag());
            sections.push(section);
        }
    }
    sections
}

fn determination_expectations(
    expected: &ExpectedHypersurface,
    run: &StructureReport,
) -> Vec<ReportEntry> {
    expected
        .expected_determinations
        .iter()
        .map(|(label, expected_value)| {
            let actual = run.entry(label).and_then(|e| e.passed);
            ReportEntry::expectation(
                &format!("expected:{label}"),
                &format!("determination `{label}` evaluates {expected_value}"),
                actual == Some(*expected_value),
                (actual != Some(*expected_value))
                    .then(|| format!("computed: {actual:?}")),
            )
        })
        .collect()
}

fn not_applicable_section(
    title: &str,
    reason: &str,
    classification: &lpsurf_core::hypersurface::Classification,
) -> Section {
    let mut section = Section::new(title);
    section.classification = Some(classification.tag());
    section
        .entries
        .push(ReportEntry::info("not applicable", reason));
    section
}

#[derive(Serialize)]
pub struct ExampleListing {
    pub id: &'static str,
    pub title: &'static str,
    pub hypersurfaces: Vec<ExampleHypersurfaceListing>,
}

#[derive(Serialize)]
pub struct ExampleHypersurfaceListing {
    pub id: String,
    pub classification: &'static str,
}

/// `list-examples`.
pub fn cmd_list_examples() -> Vec<ExampleListing> {
    registry::registry()
        .into_iter()
        .map(|entry| ExampleListing {
            id: entry.id,
            title: entry.title,
            hypersurfaces: entry
                .expected
                .hypersurfaces
                .iter()
                .map(|h| ExampleHypersurfaceListing {
                    id: format!("{}/{}", entry.id, h.name),
                    classification: h.classification,
                })
                .collect(),
        })
        .collect()
}

/// `export-example`.
pub fn cmd_export_example(id: &str, out: Option<&Path>) -> Result<String, CliError> {
    let file = registry::config_for(id)?;
    let text = serde_json::to_string_pretty(&file).expect("config serialization cannot fail");
    if let Some(path) = out {
        std::fs::write(path, &text).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(text)
}
