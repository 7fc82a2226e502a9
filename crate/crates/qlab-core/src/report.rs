//! Deterministic machine-readable verification reports.
//!
//! Reports are byte-stable for identical inputs: entries appear in a fixed
//! order, data tables are sorted maps, and scalar values print in canonical
//! form. Wall times are optional and off by default, since enabling them
//! necessarily breaks byte-for-byte determinism.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Anchor tags: each check cites the identity or construction it verifies.
/// Every report entry's anchor must come from this table.
pub const ANCHOR_TABLE: &[(&str, &str)] = &[
    ("ybe", "Yang-Baxter equation R12 R23 R12 = R23 R12 R23"),
    ("class-polynomial", "involutive R^2 = I or Hecke (R - qI)(R + q^-1 I) = 0"),
    ("skew-inverse", "Tr_2 Psi_12 R_23 = P_13 = Tr_2 Psi_23 R_12"),
    ("b-c-traces", "B = Tr_1 Psi_12, C = Tr_2 Psi_12"),
    ("tr-br", "Tr_1(B_1 R_12) = I and Tr_2(C_2 R_12) = I"),
    ("cb-scalar", "C B = q^{-2a} I with integer a"),
    ("dual-extension", "unique braiding extension to V + V* with invariant pairings"),
    ("end-braiding", "R_End(V) = R_23 R_34 R_12 R_23"),
    ("product-invariance", "R_End(V)-invariance of the product on End(V)"),
    ("classical-limit", "entrywise specialization at q = 1"),
    ("hecke-rep", "braid and quadratic relations for R_i on V^k"),
    ("young-projectors", "complete orthogonal bank of primitive idempotents"),
    ("tensor-decomposition", "V^k as the direct sum of projector images"),
    ("isotypic-centrality", "shape sums of projectors commute with all R_i"),
    ("q-projectors", "(Q - 1)(Q + q^2)(Q + q^-2) = 0 and the eigenvalue-1 projector"),
    ("q-braiding", "YBE for the conjugation operator Q"),
    ("mrea-relations", "R L R L - L R L R = hbar (R L - L R)"),
    ("eq-form", "rearranged relations span the defining ideal"),
    ("flatness", "filtered dimensions match across hbar and the classical model"),
    ("vector-rep", "rho_1(l_i^j) x_k = x_i B_k^j"),
    ("covector-rep", "rho_1*(l_i^j) x^k = -x^r R_ri^kj"),
    ("coproduct", "Delta(l) = l otimes e + e otimes l - omega sum l otimes l"),
    ("counit", "(id otimes eps) Delta = id = (eps otimes id) Delta"),
    ("tensor-rep", "braided tensor product of equivariant representations"),
    ("restriction", "rho_{lambda,a} = E^lambda_a rho_k on the projector image"),
    ("q-lie-bracket", "[L_1bar, L_2bar] = L_1 R - R L_1"),
    ("q-form", "L L - Q(L L) = [L, L] inside representations"),
    ("q-skew", "[ , ] S_q = 0"),
    ("q-jacobi", "[ , ][ , ]_12 = [ , ][ , ]_23 (I - Q_12)"),
    ("r-invariance", "R_End [ , ] identities"),
    ("adjoint-coincidence", "rho_{V x V*} equals the adjoint action"),
    ("gl-axioms", "generalized Lie algebra axioms 1-3 and Jacobi variants"),
    ("r-trace", "Tr_R conventions, invariance and non-degeneracy"),
    ("sl-subalgebra", "traceless subspace closed under the bracket"),
    ("pbw", "enveloping vs symmetric filtered dimensions"),
    ("ell-central", "ell = Tr_R L is central"),
    ("shift", "l = f + (Tr C)^{-1} delta ell presentation"),
    ("sl-rea", "quotient relations R F R F - F R F R = R F - F R"),
    ("sl-adjoint", "the four (F, ell) adjoint identities"),
    ("z-twist", "rho^z(l) = z rho(l) + delta (1 - z)(q - q^-1)^{-1} I"),
    ("sl-reduction", "xi-normalized reduction annihilating ell"),
    ("construction", "object construction succeeded"),
    ("determinism", "byte-identical reports for identical inputs"),
];

pub fn anchor_known(anchor: &str) -> bool {
    ANCHOR_TABLE.iter().any(|(a, _)| *a == anchor)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub tool_version: String,
    pub input: serde_json::Value,
    pub checks: Vec<CheckEntry>,
    /// Machine-readable side outputs (decomposition tables, dimension lists,
    /// structure constants), keyed deterministically.
    pub data: BTreeMap<String, serde_json::Value>,
    pub summary: Summary,
    /// Present when a construction error aborted the suite early.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aborted: Option<String>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.aborted.is_none()
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# Verification report (qlab {})\n\n", self.tool_version));
        out.push_str(&format!("Input: `{}`\n\n", self.input));
        out.push_str("| check | anchor | result | witness |\n");
        out.push_str("|---|---|---|---|\n");
        for c in &self.checks {
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                c.name,
                c.anchor,
                if c.pass { "pass" } else { "FAIL" },
                c.witness.as_deref().unwrap_or("")
            ));
        }
        out.push_str(&format!(
            "\n{} checks: {} passed, {} failed.\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        if let Some(err) = &self.aborted {
            out.push_str(&format!("\nAborted: {}\n", err));
        }
        out
    }
}

/// Collects entries; the order of `check` calls fixes the report order.
pub struct ReportBuilder {
    timings: bool,
    checks: Vec<CheckEntry>,
    data: BTreeMap<String, serde_json::Value>,
}

impl ReportBuilder {
    pub fn new(timings: bool) -> Self {
        ReportBuilder { timings, checks: Vec::new(), data: BTreeMap::new() }
    }

    pub fn check(&mut self, name: &str, anchor: &str, pass: bool, witness: Option<String>) {
        debug_assert!(anchor_known(anchor), "unknown anchor {}", anchor);
        self.checks.push(CheckEntry {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass,
            witness,
            wall_ms: None,
        });
    }

    /// Run a closure as a named check, recording wall time when enabled.
    pub fn run(
        &mut self,
        name: &str,
        anchor: &str,
        f: impl FnOnce() -> (bool, Option<String>),
    ) {
        let start = Instant::now();
        let (pass, witness) = f();
        let wall = start.elapsed().as_millis() as u64;
        debug_assert!(anchor_known(anchor), "unknown anchor {}", anchor);
        self.checks.push(CheckEntry {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass,
            witness,
            wall_ms: self.timings.then_some(wall),
        });
    }

    pub fn data(&mut self, key: &str, value: serde_json::Value) {
        self.data.insert(key.to_string(), value);
    }

    pub fn last_failed(&self) -> bool {
        self.checks.last().is_some_and(|c| !c.pass)
    }

    pub fn finish(self, input: serde_json::Value, aborted: Option<String>) -> Report {
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let total = self.checks.len();
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input,
            checks: self.checks,
            data: self.data,
            summary: Summary { total, passed, failed: total - passed },
            aborted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut b = ReportBuilder::new(false);
        b.check("demo", "ybe", true, None);
        b.check("demo2", "q-jacobi", false, Some("entry (0,1)".into()));
        b.data("dims", serde_json::json!([1, 5, 15, 35]));
        let r = b.finish(serde_json::json!({"kind": "flip", "n": 2}), None);
        let text = r.to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert!(!r.all_passed());
    }

    #[test]
    fn markdown_has_one_row_per_check() {
        let mut b = ReportBuilder::new(false);
        b.check("a", "ybe", true, None);
        b.check("b", "tr-br", true, None);
        let r = b.finish(serde_json::json!({}), None);
        let md = r.to_markdown();
        let rows = md.lines().filter(|l| l.starts_with("| ")).count();
        assert_eq!(rows, 2 + 1); // header row plus one per check
    }

    #[test]
    fn empty_report_is_valid() {
        let b = ReportBuilder::new(false);
        let r = b.finish(serde_json::json!({}), None);
        assert_eq!(r.summary.total, 0);
        assert!(r.all_passed());
        assert!(Report::from_json(&r.to_json()).is_ok());
    }
}
