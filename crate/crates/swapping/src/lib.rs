//! Closed-form entanglement-swapping predictors.
//!
//! Each predictor builds its [`SwapScenario`] and lists outcomes the way the
//! closed form writes them: a measured basis label, an unnormalized
//! coefficient and a remainder state, both placed on global positions in the
//! formula's own particle order. [`to_state`] materializes an outcome in
//! ascending order so it can be compared with the oracle.

mod bell;
mod cat;
mod cat_bell;
pub mod errata;
mod masked;

pub use bell::{bell_bell_scenario, predict_bell_bell};
pub use cat::{cat_swap_scenario, predict_cat_swap};
pub use cat_bell::{cat_bell_scenario, predict_cat_bell_clear, predict_cat_bell_karimipour};
pub use masked::{
    li_masked_scenario, masked_ghz_scenario, masked_qudit_scenario, predict_li_masked_swap, predict_masked_ghz_swap,
    predict_masked_qudit_swap,
};

use maskswap_core::states::{binary_cat, ghz, root_of_unity, shifted_max_entangled, sub_mod};
use maskswap_core::{
    BasisLabel, Error, GhzLabel, MaxEntLabel, Outcome, OutcomeDistribution, PlacedState, PureState, Result, Sign,
    SwapScenario,
};
use num_complex::Complex64;

/// A state named the way a closed form writes it.
#[derive(Clone, Debug, PartialEq)]
pub enum StateForm {
    Ghz(GhzLabel),
    /// `(|b⟩ ± |b̄⟩)/√2`; may be a single particle.
    Cat {
        bits: Vec<u8>,
        sign: Sign,
    },
    /// `d^{-1/2} Σ_l ζ^{l·phase} |l⊕s₁, …, l⊕s_m⟩`.
    MaxEnt {
        level: usize,
        phase: usize,
        shifts: Vec<usize>,
    },
    Explicit(PureState),
}

impl StateForm {
    pub fn particles(&self) -> usize {
        match self {
            StateForm::Ghz(g) => g.particles(),
            StateForm::Cat { bits, .. } => bits.len(),
            StateForm::MaxEnt { shifts, .. } => shifts.len(),
            StateForm::Explicit(s) => s.particles(),
        }
    }

    pub fn state(&self) -> Result<PureState> {
        match self {
            StateForm::Ghz(g) => ghz(g),
            StateForm::Cat { bits, sign } => binary_cat(bits, *sign),
            StateForm::MaxEnt { level, phase, shifts } => shifted_max_entangled(*level, *phase, shifts),
            StateForm::Explicit(s) => Ok(s.clone()),
        }
    }
}

/// One outcome of a closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct PredictedOutcome {
    /// Outcome label in the scenario's convention (measured particles in
    /// ascending order), used to match against the oracle.
    pub label: BasisLabel,
    /// Unnormalized; only relative magnitudes matter.
    pub coefficient: Complex64,
    pub measured: StateForm,
    /// Global positions of the measured state's particles, in its own order.
    pub measured_positions: Vec<usize>,
    pub remainder: StateForm,
    pub remainder_positions: Vec<usize>,
}

/// A predictor's scenario and its outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct Prediction {
    provenance: String,
    scenario: SwapScenario,
    outcomes: Vec<PredictedOutcome>,
}

impl Prediction {
    pub fn new(provenance: impl Into<String>, scenario: SwapScenario, outcomes: Vec<PredictedOutcome>) -> Self {
        Self { provenance: provenance.into(), scenario, outcomes }
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn scenario(&self) -> &SwapScenario {
        &self.scenario
    }

    pub fn outcomes(&self) -> &[PredictedOutcome] {
        &self.outcomes
    }

    /// Materializes every outcome; probabilities are the renormalized
    /// squared coefficients.
    pub fn distribution(&self) -> Result<OutcomeDistribution> {
        let outcomes = self
            .outcomes
            .iter()
            .map(|o| {
                let (measured, remainder) = to_state(o, &self.scenario)?;
                Ok(Outcome { label: o.label.clone(), coefficient: o.coefficient, measured, remainder })
            })
            .collect::<Result<Vec<_>>>()?;
        OutcomeDistribution::new(self.provenance.clone(), outcomes)
    }
}

fn same_set(a: &[usize], b: &[usize]) -> bool {
    let mut a = a.to_vec();
    a.sort_unstable();
    a == b
}

/// Explicit measured and remainder states of `outcome`, particles in
/// ascending global order.
pub fn to_state(outcome: &PredictedOutcome, scenario: &SwapScenario) -> Result<(PlacedState, PlacedState)> {
    if !scenario.accepts_label(&outcome.label) {
        return Err(Error::BadLabel(format!("{} is not a member of the {} basis", outcome.label, scenario.basis())));
    }
    if !same_set(&outcome.measured_positions, scenario.measured().indices()) {
        return Err(Error::BadLabel(format!(
            "measured positions {:?} differ from the scenario's {:?}",
            outcome.measured_positions,
            scenario.measured().indices()
        )));
    }
    let rest = scenario.unmeasured();
    if !same_set(&outcome.remainder_positions, &rest) {
        return Err(Error::BadLabel(format!(
            "remainder positions {:?} differ from the unmeasured {:?}",
            outcome.remainder_positions, rest
        )));
    }
    for (form, positions) in
        [(&outcome.measured, &outcome.measured_positions), (&outcome.remainder, &outcome.remainder_positions)]
    {
        if form.particles() != positions.len() {
            return Err(Error::BadLabel(format!(
                "{}-particle state placed on {} positions",
                form.particles(),
                positions.len()
            )));
        }
    }
    let measured = PlacedState::new(outcome.measured_positions.clone(), outcome.measured.state()?)?;
    let remainder = PlacedState::new(outcome.remainder_positions.clone(), outcome.remainder.state()?)?;
    Ok((measured.to_ascending()?, remainder.to_ascending()?))
}

/// Label of `φ(u)` after reordering its particles so that new particle `i`
/// is old particle `order[i]`, and the phase `c` with
/// `φ(u) = c·φ(new label)` in the new order.
pub fn reorder_max_ent(label: &MaxEntLabel, order: &[usize]) -> Result<(MaxEntLabel, Complex64)> {
    let d = label.level();
    let m = label.particles();
    let mut seen = vec![false; m];
    if order.len() != m || order.iter().any(|&i| i >= m || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::BadLabel(format!("{order:?} is not a permutation of {m} particles")));
    }
    // Old particle i carries l ⊕ sᵢ with s₁ = 0. Writing l' = l ⊕ s_{order[0]}
    // for the new first particle shifts the phase by ζ^{−u₁·s_{order[0]}}.
    let shift = |i: usize| if i == 0 { 0 } else { label.u()[i] };
    let lead = shift(order[0]);
    let mut u = vec![label.u()[0]];
    u.extend(order[1..].iter().map(|&i| sub_mod(shift(i), lead, d)));
    let phase = root_of_unity(d, -((label.u()[0] * lead) as i64));
    Ok((MaxEntLabel::new(d, u)?, phase))
}

/// Canonical GHZ label of `(|x⟩ ± |x̄⟩)` and the phase relating the two.
pub(crate) fn canonical_ghz(bits: &[u8], sign: Sign) -> (Vec<u8>, Sign, f64) {
    if bits[0] == 0 {
        (bits.to_vec(), sign, 1.0)
    } else {
        (bits.iter().map(|b| 1 - b).collect(), sign, sign.factor())
    }
}
