//! Verification reports: a versioned JSON document and a text rendering.

use std::fmt::Write as _;

use maskswap_oracle::OutcomeRow;
use maskswap_swapping::errata::ERRATA;
use serde::{Deserialize, Serialize};

pub const REPORT_FORMAT: &str = "maskswap-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    fn tag(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub candidate: String,
    pub reference: String,
    pub outcomes: usize,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    pub max_probability_deviation: f64,
    pub min_fidelity: f64,
    pub verdict: Verdict,
    /// Failing rows, or every row in verbose runs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<OutcomeRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaskingSummary {
    pub members: usize,
    pub subsystems: Vec<Vec<usize>>,
    /// Largest deviation of any member's marginal from the first member's.
    pub max_deviation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_subsystem_deviation: Option<f64>,
    /// Largest deviation of a marginal from its predicted form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_marginal_deviation: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub name: String,
    pub origin: String,
    pub predictor: String,
    pub family: String,
    pub tolerance: f64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_total_probability: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comparisons: Vec<ComparisonSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub masking: Option<MaskingSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl ScenarioResult {
    pub fn max_deviation(&self) -> f64 {
        let swap = self.comparisons.iter().map(|c| c.max_probability_deviation);
        let mask = self.masking.iter().flat_map(|m| [Some(m.max_deviation), m.expected_marginal_deviation]).flatten();
        swap.chain(mask).fold(0.0, f64::max)
    }

    pub fn min_fidelity(&self) -> Option<f64> {
        self.comparisons.iter().map(|c| c.min_fidelity).reduce(f64::min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErratumStatus {
    /// Every scenario of the witness family passed.
    Confirmed,
    NotExercised,
    Contradicted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErratumEntry {
    pub id: String,
    pub reference_form: String,
    pub implemented_form: String,
    pub witness: String,
    pub status: ErratumStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub scenarios: usize,
    pub passed: usize,
    pub failed: usize,
    pub max_deviation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_fidelity: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub format: String,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance_override: Option<f64>,
    pub verdict: Verdict,
    pub summary: Summary,
    pub scenarios: Vec<ScenarioResult>,
    pub errata: Vec<ErratumEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl VerificationReport {
    /// Assembles the report; the verdict is the conjunction of the scenario
    /// verdicts.
    pub fn assemble(
        source: impl Into<String>,
        seed: Option<u64>,
        tolerance_override: Option<f64>,
        scenarios: Vec<ScenarioResult>,
    ) -> Self {
        let passed = scenarios.iter().filter(|s| s.verdict.passed()).count();
        let summary = Summary {
            scenarios: scenarios.len(),
            passed,
            failed: scenarios.len() - passed,
            max_deviation: scenarios.iter().map(ScenarioResult::max_deviation).fold(0.0, f64::max),
            min_fidelity: scenarios.iter().filter_map(ScenarioResult::min_fidelity).reduce(f64::min),
        };
        let errata = ERRATA
            .iter()
            .map(|e| {
                let mut witnesses = scenarios.iter().filter(|s| s.family == e.witness).peekable();
                let status = if witnesses.peek().is_none() {
                    ErratumStatus::NotExercised
                } else if witnesses.all(|s| s.verdict.passed()) {
                    ErratumStatus::Confirmed
                } else {
                    ErratumStatus::Contradicted
                };
                ErratumEntry {
                    id: e.id.into(),
                    reference_form: e.reference_form.into(),
                    implemented_form: e.implemented_form.into(),
                    witness: e.witness.into(),
                    status,
                }
            })
            .collect();
        Self {
            format: REPORT_FORMAT.into(),
            source: source.into(),
            seed,
            tolerance_override,
            verdict: Verdict::from_bool(passed == scenarios.len()),
            summary,
            scenarios,
            errata,
            runtime_seconds: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let report: Self = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if report.format != REPORT_FORMAT {
            return Err(format!("unsupported report format {:?}, expected {REPORT_FORMAT:?}", report.format));
        }
        Ok(report)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "source: {}", self.source);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        if let Some(tol) = self.tolerance_override {
            let _ = writeln!(out, "tolerance override: {tol:e}");
        }
        for s in &self.scenarios {
            let _ = write!(out, "{} {} [{}] max dev {:.2e}", s.verdict.tag(), s.name, s.predictor, s.max_deviation());
            if let Some(f) = s.min_fidelity() {
                let _ = write!(out, ", min fidelity {:.12}", f);
            }
            if let Some(t) = s.runtime_seconds {
                let _ = write!(out, ", {t:.3}s");
            }
            out.push('\n');
            if let Some(e) = &s.error {
                let _ = writeln!(out, "    error: {e}");
            }
            if let Some(p) = s.oracle_total_probability {
                if (p - 1.0).abs() > s.tolerance {
                    let _ = writeln!(out, "    oracle total probability {p}");
                }
            }
            for c in &s.comparisons {
                if c.verdict.passed() && c.rows.is_empty() {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "    {} vs {}: {} outcomes, max dev {:.2e}, min fidelity {:.12}",
                    c.candidate, c.reference, c.outcomes, c.max_probability_deviation, c.min_fidelity
                );
                for m in &c.missing {
                    let _ = writeln!(out, "      missing {m}");
                }
                for x in &c.extra {
                    let _ = writeln!(out, "      extra {x}");
                }
                for r in &c.rows {
                    let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.12}"));
                    let _ = writeln!(
                        out,
                        "      {}: p {} vs {} (dev {:.2e}), remainder fidelity {}, measured fidelity {}",
                        r.label,
                        fmt(r.candidate_probability),
                        fmt(r.reference_probability),
                        r.probability_deviation,
                        fmt(r.remainder_fidelity),
                        fmt(r.measured_fidelity)
                    );
                }
            }
            if let Some(m) = &s.masking {
                if !m.verdict.passed() {
                    let _ = writeln!(
                        out,
                        "    {} members over {:?}: deviation {:.2e}, from expected {}",
                        m.members,
                        m.subsystems,
                        m.max_deviation,
                        m.expected_marginal_deviation.map_or("-".into(), |d| format!("{d:.2e}"))
                    );
                }
            }
        }
        let _ = writeln!(out, "\nerrata:");
        for e in &self.errata {
            let status = match e.status {
                ErratumStatus::Confirmed => "confirmed",
                ErratumStatus::NotExercised => "not exercised",
                ErratumStatus::Contradicted => "contradicted",
            };
            let _ = writeln!(out, "  {} ({status} by {})", e.id, e.witness);
            let _ = writeln!(out, "    reference:   {}", e.reference_form);
            let _ = writeln!(out, "    implemented: {}", e.implemented_form);
        }
        let _ = write!(
            out,
            "\n{}: {} of {} scenarios passed, max deviation {:.2e}",
            self.verdict.tag(),
            self.summary.passed,
            self.summary.scenarios,
            self.summary.max_deviation
        );
        if let Some(f) = self.summary.min_fidelity {
            let _ = write!(out, ", min fidelity {f:.12}");
        }
        if let Some(t) = self.runtime_seconds {
            let _ = write!(out, ", {t:.2}s");
        }
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(family: &str, ok: bool) -> ScenarioResult {
        ScenarioResult {
            name: format!("{family} case"),
            origin: "test".into(),
            predictor: family.into(),
            family: family.into(),
            tolerance: 1e-9,
            verdict: Verdict::from_bool(ok),
            oracle_total_probability: Some(1.0),
            comparisons: vec![ComparisonSummary {
                candidate: family.into(),
                reference: "oracle".into(),
                outcomes: 4,
                missing: vec![],
                extra: vec![],
                max_probability_deviation: if ok { 1e-16 } else { 0.25 },
                min_fidelity: if ok { 1.0 } else { 0.0 },
                verdict: Verdict::from_bool(ok),
                rows: if ok {
                    vec![]
                } else {
                    vec![OutcomeRow {
                        label: "phi+".into(),
                        candidate_probability: Some(0.5),
                        reference_probability: Some(0.25),
                        probability_deviation: 0.25,
                        remainder_fidelity: Some(0.0),
                        measured_fidelity: Some(1.0),
                    }]
                },
            }],
            masking: None,
            error: None,
            runtime_seconds: None,
        }
    }

    #[test]
    fn passing_report_has_pass_verdict_and_round_trips() {
        let report = VerificationReport::assemble("suite:x", Some(7), None, vec![scenario("cat-swap", true)]);
        let json = report.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["verdict"], "pass");
        assert_eq!(value["format"], REPORT_FORMAT);
        assert_eq!(VerificationReport::from_json(&json).unwrap(), report);
        let cat = report.errata.iter().find(|e| e.id == "cat-swap-sign-exponent").unwrap();
        assert_eq!(cat.status, ErratumStatus::Confirmed);
        let li = report.errata.iter().find(|e| e.id == "li-amplitude-index").unwrap();
        assert_eq!(li.status, ErratumStatus::NotExercised);
    }

    #[test]
    fn failing_report_lists_rows() {
        let report = VerificationReport::assemble(
            "x",
            None,
            Some(1e-6),
            vec![scenario("masked-qudit", true), scenario("masked-qudit", false)],
        );
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.summary.failed, 1);
        let ket = report.errata.iter().find(|e| e.id == "masked-qudit-ket").unwrap();
        assert_eq!(ket.status, ErratumStatus::Contradicted);
        let text = report.to_text();
        assert!(text.contains("phi+: p 0.500000000000 vs 0.250000000000"), "{text}");
        assert!(text.contains("FAIL: 1 of 2"), "{text}");
        assert_eq!(VerificationReport::from_json(&report.to_json()).unwrap(), report);
    }

    #[test]
    fn rejects_other_formats() {
        let mut report = VerificationReport::assemble("x", None, None, vec![]);
        report.format = "other/2".into();
        assert!(VerificationReport::from_json(&report.to_json()).is_err());
    }
}
