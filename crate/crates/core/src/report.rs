//! Report types shared by the axiom checkers.

use serde::Serialize;

use crate::carrier::Carrier;

/// A failed axiom instance: the axiom's name, the lexicographically least
/// offending tuple, and a human-readable account of what went wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub tuple: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, tuple: Vec<usize>, detail: impl Into<String>) -> Self {
        Violation {
            axiom: axiom.into(),
            tuple,
            detail: detail.into(),
        }
    }

    pub fn render(&self, carrier: &Carrier) -> String {
        if self.tuple.is_empty() {
            return format!("{}: {}", self.axiom, self.detail);
        }
        format!(
            "{} at ({}): {}",
            self.axiom,
            carrier.tuple_labels(&self.tuple).join(", "),
            self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Axiom-by-axiom result of validating a hyperring or hypermodule.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn push(&mut self, name: &str, violation: Option<String>) {
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            passed: violation.is_none(),
            witness: violation,
            note: None,
        });
    }

    pub fn push_noted(&mut self, name: &str, violation: Option<String>, note: &str) {
        self.push(name, violation);
        if let Some(last) = self.checks.last_mut() {
            last.note = Some(note.to_string());
        }
    }

    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
