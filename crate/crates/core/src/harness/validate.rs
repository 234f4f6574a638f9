use std::fmt;
use std::path::Path;

use serde::Serialize;

use super::format::{load_spec, InstanceSpec};
use crate::analysis::brute_force_opt;
use crate::limits::{MAX_BRUTE_FORCE_N, MAX_VALIDATOR_N, VALUE_TOLERANCE};
use crate::matroid::{validate_laminar, Constraint, IndependenceSystem};
use crate::valuation::{lift_to_edges, verify_monotone_submodular, SetFunction};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub instance: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        let verdict = if self.passed() { "valid" } else { "invalid" };
        writeln!(f, "{}: {verdict}", self.instance)
    }
}

fn laminar_families(system: &IndependenceSystem) -> Vec<(String, Vec<Constraint>)> {
    match system {
        IndependenceSystem::Laminar(l) => vec![("laminar".into(), l.constraints().to_vec())],
        IndependenceSystem::LaminarIntersection(x) => x
            .matroids()
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("laminar[{i}]"), m.constraints().to_vec()))
            .collect(),
        _ => Vec::new(),
    }
}

fn submodularity<F: SetFunction + ?Sized>(report: &mut ValidationReport, name: &str, f: &F) {
    let n = f.ground_size();
    if n > MAX_VALIDATOR_N {
        report.push(
            name,
            true,
            format!("skipped: ground size {n} exceeds {MAX_VALIDATOR_N}"),
        );
        return;
    }
    match verify_monotone_submodular(f) {
        Ok(Ok(())) => report.push(name, true, "monotone and submodular"),
        Ok(Err(counterexample)) => report.push(name, false, counterexample.to_string()),
        Err(e) => report.push(name, false, e.to_string()),
    }
}

/// Checks structure, laminarity, valuation properties and the recorded optimum.
pub fn validate_spec(spec: &InstanceSpec) -> ValidationReport {
    let mut report = ValidationReport {
        instance: spec.metadata.name.clone(),
        checks: Vec::new(),
    };
    let instance = match spec.build() {
        Ok(i) => {
            report.push(
                "structure",
                true,
                format!("{} over {} elements", i.system().kind(), i.ground_size()),
            );
            i
        }
        Err(e) => {
            report.push("structure", false, e.to_string());
            return report;
        }
    };
    for (name, constraints) in laminar_families(instance.system()) {
        match validate_laminar(&constraints) {
            Ok(()) => report.push(&name, true, format!("{} constraints", constraints.len())),
            Err(v) => report.push(&name, false, v.to_string()),
        }
    }
    submodularity(&mut report, "valuation", instance.valuation());
    if let IndependenceSystem::Transversal(t) = instance.system() {
        match lift_to_edges(instance.valuation().clone(), t.graph().clone()) {
            Ok(lifted) => submodularity(&mut report, "edge valuation", &lifted),
            Err(e) => report.push("edge valuation", false, e.to_string()),
        }
    }
    if let Some(expected) = spec.metadata.expected_opt {
        if instance.ground_size() > MAX_BRUTE_FORCE_N {
            report.push(
                "expected_opt",
                true,
                "skipped: ground set too large for brute force",
            );
        } else {
            match brute_force_opt(instance.system(), instance.valuation()) {
                Ok(opt)
                    if (opt.value - expected).abs()
                        <= VALUE_TOLERANCE * expected.abs().max(1.0) =>
                {
                    report.push(
                        "expected_opt",
                        true,
                        format!("{} attained by {}", opt.value, opt.witness),
                    )
                }
                Ok(opt) => report.push(
                    "expected_opt",
                    false,
                    format!("recorded {expected}, brute force gives {}", opt.value),
                ),
                Err(e) => report.push("expected_opt", false, e.to_string()),
            }
        }
    }
    report
}

/// Parses and validates an instance file. Parse failures are errors, not
/// failed checks.
pub fn validate_file(path: &Path) -> crate::Result<ValidationReport> {
    Ok(validate_spec(&load_spec(path)?))
}
