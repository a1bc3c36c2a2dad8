//! Verification reports: one entry per (axiom, color tuple).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub colors: Vec<String>,
    pub status: Status,
    /// Basis indices exhibiting the failure (dimensions for a shape
    /// mismatch); empty when an element that must be invertible is not.
    pub witness: Option<Vec<usize>>,
}

impl AxiomResult {
    pub fn from_check(axiom: impl Into<String>, colors: Vec<String>, witness: Option<Vec<usize>>) -> Self {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        AxiomResult { axiom: axiom.into(), colors, status, witness }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Deterministically ordered list of axiom results.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VerificationReport {
    entries: Vec<AxiomResult>,
}

impl VerificationReport {
    pub fn new(mut entries: Vec<AxiomResult>) -> Self {
        entries.sort();
        VerificationReport { entries }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
        self.entries.sort();
    }

    pub fn push(&mut self, entry: AxiomResult) {
        self.entries.push(entry);
        self.entries.sort();
    }

    pub fn entries(&self) -> &[AxiomResult] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(AxiomResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.entries.iter().filter(|e| !e.passed())
    }

    /// Entries for one axiom id.
    pub fn axiom<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a AxiomResult> + 'a {
        self.entries.iter().filter(move |e| e.axiom == id)
    }

    /// `(passed, failed)` counts per axiom id.
    pub fn summary(&self) -> BTreeMap<&str, (usize, usize)> {
        let mut out: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for e in &self.entries {
            let slot = out.entry(e.axiom.as_str()).or_default();
            if e.passed() {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (axiom, (pass, fail)) in self.summary() {
            let tag = if fail == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {axiom}: {pass} passed, {fail} failed")?;
        }
        for e in self.failures() {
            writeln!(f, "  {} [{}] witness {:?}", e.axiom, e.colors.join(", "), e.witness.as_deref().unwrap_or(&[]))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_by_axiom_then_colors() {
        let r = VerificationReport::new(vec![
            AxiomResult::from_check("eq2-counit", vec!["b".into()], None),
            AxiomResult::from_check("eq1-coassoc", vec!["b".into()], Some(vec![3])),
            AxiomResult::from_check("eq1-coassoc", vec!["a".into()], None),
        ]);
        let ids: Vec<_> = r.entries().iter().map(|e| (e.axiom.as_str(), e.colors[0].as_str())).collect();
        assert_eq!(ids, vec![("eq1-coassoc", "a"), ("eq1-coassoc", "b"), ("eq2-counit", "b")]);
        assert!(!r.all_pass());
        assert_eq!(r.summary()["eq1-coassoc"], (1, 1));
        assert!(r.to_json().contains("\"status\": \"fail\""));
    }
}
