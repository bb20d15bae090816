//! Brute-force ground truth for swap scenarios.
//!
//! [`simulate_swap`] tensors the inputs, projects the measured particles onto
//! every member of the scenario basis and keeps each outcome whose
//! probability is above the zero threshold. Nothing here knows about the
//! closed-form predictors; [`compare`] only matches labels, probabilities
//! and collapsed states.

use maskswap_core::qudit::{fidelity, MeasurementSplit, ZERO_PROBABILITY};
use maskswap_core::{BasisLabel, Outcome, OutcomeDistribution, PlacedState, PureState, Result, SwapScenario};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const ORACLE_PROVENANCE: &str = "oracle";

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub distribution: OutcomeDistribution,
    /// `Σ` of every basis member's projection probability, including the
    /// outcomes dropped as zero.
    pub total_probability: f64,
}

/// Exhaustive projective measurement of `scenario`.
pub fn simulate_swap(scenario: &SwapScenario) -> Result<OracleResult> {
    let state = scenario.prepare()?;
    let basis = scenario.basis().build()?;
    let split = MeasurementSplit::new(&state, scenario.measured())?;
    let measured_positions = scenario.measured().indices().to_vec();
    let rest_positions = scenario.unmeasured();

    let mut total_probability = 0.0;
    let mut outcomes = Vec::new();
    for (label, member) in basis.members() {
        let raw = split.unnormalized_remainder(member)?;
        let norm = raw.norm();
        let probability = norm * norm;
        total_probability += probability;
        if probability < ZERO_PROBABILITY {
            continue;
        }
        outcomes.push(Outcome {
            label: label.clone(),
            coefficient: Complex64::new(norm, 0.0),
            measured: PlacedState::new(measured_positions.clone(), member.clone())?,
            remainder: PlacedState::new(rest_positions.clone(), raw.normalize()?)?,
        });
    }
    Ok(OracleResult { distribution: OutcomeDistribution::new(ORACLE_PROVENANCE, outcomes)?, total_probability })
}

/// Per-label comparison row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeRow {
    pub label: String,
    pub candidate_probability: Option<f64>,
    pub reference_probability: Option<f64>,
    pub probability_deviation: f64,
    /// `|⟨candidate remainder|reference remainder⟩|`, both in ascending order.
    pub remainder_fidelity: Option<f64>,
    /// Same for the measured basis state; catches a label that does not
    /// describe the state the candidate actually measured.
    pub measured_fidelity: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub candidate: String,
    pub reference: String,
    pub tolerance: f64,
    pub rows: Vec<OutcomeRow>,
    /// Labels the reference has and the candidate lacks.
    pub missing: Vec<String>,
    /// Labels the candidate has and the reference lacks.
    pub extra: Vec<String>,
    pub max_probability_deviation: f64,
    pub min_fidelity: f64,
    pub verdict: bool,
}

impl ComparisonReport {
    /// Rows whose deviation or fidelity is outside tolerance, or that are
    /// unmatched.
    pub fn failing_rows(&self) -> impl Iterator<Item = &OutcomeRow> {
        let tol = self.tolerance;
        self.rows.iter().filter(move |r| {
            r.probability_deviation > tol
                || r.remainder_fidelity.is_none_or(|f| f < 1.0 - tol)
                || r.measured_fidelity.is_none_or(|f| f < 1.0 - tol)
        })
    }
}

/// Compares a predicted distribution against the oracle.
pub fn compare(predicted: &OutcomeDistribution, oracle: &OracleResult, tol: f64) -> ComparisonReport {
    compare_distributions(predicted, &oracle.distribution, tol)
}

fn placed_fidelity(a: &PlacedState, b: &PlacedState) -> f64 {
    let (Ok(a), Ok(b)) = (a.to_ascending(), b.to_ascending()) else {
        return 0.0;
    };
    if a.positions() != b.positions() {
        return 0.0;
    }
    fidelity(a.state(), b.state()).unwrap_or(0.0)
}

/// Label-by-label comparison of two distributions over the same scenario.
pub fn compare_distributions(
    candidate: &OutcomeDistribution,
    reference: &OutcomeDistribution,
    tol: f64,
) -> ComparisonReport {
    let mut labels: Vec<&BasisLabel> = candidate.labels().chain(reference.labels()).collect();
    labels.sort();
    labels.dedup();

    let mut rows = Vec::with_capacity(labels.len());
    let (mut missing, mut extra) = (Vec::new(), Vec::new());
    let mut max_dev: f64 = 0.0;
    let mut min_fid: f64 = 1.0;
    for label in labels {
        let c = candidate.get(label);
        let r = reference.get(label);
        let cp = c.map(|o| candidate.probability(o));
        let rp = r.map(|o| reference.probability(o));
        let deviation = (cp.unwrap_or(0.0) - rp.unwrap_or(0.0)).abs();
        let (remainder_fidelity, measured_fidelity) = match (c, r) {
            (Some(c), Some(r)) => {
                (Some(placed_fidelity(&c.remainder, &r.remainder)), Some(placed_fidelity(&c.measured, &r.measured)))
            }
            (Some(_), None) => {
                extra.push(label.to_string());
                (None, None)
            }
            (None, _) => {
                missing.push(label.to_string());
                (None, None)
            }
        };
        max_dev = max_dev.max(deviation);
        for f in [remainder_fidelity, measured_fidelity].into_iter().flatten() {
            min_fid = min_fid.min(f);
        }
        rows.push(OutcomeRow {
            label: label.to_string(),
            candidate_probability: cp,
            reference_probability: rp,
            probability_deviation: deviation,
            remainder_fidelity,
            measured_fidelity,
        });
    }
    let verdict = max_dev <= tol && min_fid >= 1.0 - tol && missing.is_empty() && extra.is_empty();
    ComparisonReport {
        candidate: candidate.provenance().to_string(),
        reference: reference.provenance().to_string(),
        tolerance: tol,
        rows,
        missing,
        extra,
        max_probability_deviation: max_dev,
        min_fidelity: min_fid,
        verdict,
    }
}

/// Collapsed remainder of `label` according to the oracle, if it occurs.
pub fn remainder_of<'a>(result: &'a OracleResult, label: &BasisLabel) -> Option<&'a PureState> {
    result.distribution.get(label).map(|o| o.remainder.state())
}
