//! Swap scenarios and labeled outcome distributions.
//!
//! A scenario tensors its input states in listed order (global positions
//! `1..=N`), measures `measured` in a complete basis, and leaves the other
//! particles in ascending order. Predictors and the oracle both report
//! [`OutcomeDistribution`]s over the same labels so they can be compared.

use std::collections::BTreeSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::masking::{mask_li_qudit, mask_modi_qubit, mask_modi_qudit, PhaseAmplitudeInput, QuditAmplitudes};
use crate::qudit::{dimension, tensor, ParticleSet, PureState};
use crate::states::{bell, cat, max_entangled, BasisKind, BasisLabel, BellLabel, CatLabel, MaxEntLabel};

/// One input state of a swap scenario.
#[derive(Clone, Debug, PartialEq)]
pub enum InputState {
    Bell(BellLabel),
    Cat(CatLabel),
    MaxEnt(MaxEntLabel),
    /// Output of the qubit phase masker for input bit `l`.
    ModiQubit(u8),
    /// Output of the d-level phase-amplitude masker.
    ModiQudit(PhaseAmplitudeInput),
    /// Output of the `2d`-particle Fourier-pair masker.
    Li(QuditAmplitudes),
    /// Computational basis product state `|digits⟩`.
    Computational {
        level: usize,
        digits: Vec<usize>,
    },
}

impl InputState {
    pub fn level(&self) -> usize {
        match self {
            InputState::Bell(_) | InputState::Cat(_) | InputState::ModiQubit(_) => 2,
            InputState::MaxEnt(l) => l.level(),
            InputState::ModiQudit(i) => i.level(),
            InputState::Li(a) => a.level(),
            InputState::Computational { level, .. } => *level,
        }
    }

    pub fn particles(&self) -> usize {
        match self {
            InputState::Bell(_) | InputState::ModiQubit(_) | InputState::ModiQudit(_) => 2,
            InputState::Cat(l) => l.particles(),
            InputState::MaxEnt(l) => l.particles(),
            InputState::Li(a) => 2 * a.level(),
            InputState::Computational { digits, .. } => digits.len(),
        }
    }

    pub fn state(&self) -> Result<PureState> {
        match self {
            InputState::Bell(l) => Ok(bell(*l)),
            InputState::Cat(l) => Ok(cat(l)),
            InputState::MaxEnt(l) => max_entangled(l),
            InputState::ModiQubit(l) => mask_modi_qubit(*l),
            InputState::ModiQudit(i) => mask_modi_qudit(i),
            InputState::Li(a) => mask_li_qudit(a),
            InputState::Computational { level, digits } => PureState::basis(*level, digits),
        }
    }
}

/// Inputs, measured particles and measurement basis of one swap.
#[derive(Clone, Debug, PartialEq)]
pub struct SwapScenario {
    level: usize,
    inputs: Vec<InputState>,
    measured: ParticleSet,
    basis: BasisKind,
}

impl SwapScenario {
    pub fn new(inputs: Vec<InputState>, measured: ParticleSet, basis: BasisKind) -> Result<Self> {
        let first = inputs.first().ok_or_else(|| Error::BadScenario("scenario has no input states".into()))?;
        let level = first.level();
        if let Some(bad) = inputs.iter().find(|i| i.level() != level) {
            return Err(Error::LevelMismatch { expected: level, found: bad.level() });
        }
        if basis.level() != level {
            return Err(Error::LevelMismatch { expected: level, found: basis.level() });
        }
        let total: usize = inputs.iter().map(InputState::particles).sum();
        dimension(level, total)?;
        measured.check_within(total)?;
        if measured.len() != basis.particles() {
            return Err(Error::BadScenario(format!(
                "{} measured particles but the basis {basis} acts on {}",
                measured.len(),
                basis.particles()
            )));
        }
        if measured.len() == total {
            return Err(Error::BadScenario("every particle is measured".into()));
        }
        Ok(Self { level, inputs, measured, basis })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn inputs(&self) -> &[InputState] {
        &self.inputs
    }

    pub fn measured(&self) -> &ParticleSet {
        &self.measured
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn total_particles(&self) -> usize {
        self.inputs.iter().map(InputState::particles).sum()
    }

    /// Unmeasured positions, ascending.
    pub fn unmeasured(&self) -> Vec<usize> {
        self.measured.complement(self.total_particles())
    }

    /// The joint input state.
    pub fn prepare(&self) -> Result<PureState> {
        let parts = self.inputs.iter().map(InputState::state).collect::<Result<Vec<_>>>()?;
        tensor(&parts)
    }

    /// Whether `label` names a member of this scenario's basis.
    pub fn accepts_label(&self, label: &BasisLabel) -> bool {
        match (label, self.basis) {
            (BasisLabel::Ghz(g), BasisKind::Ghz { particles }) => g.particles() == particles,
            (BasisLabel::MaxEnt(m), BasisKind::MaxEntangled { level, particles }) => {
                m.level() == level && m.particles() == particles
            }
            (BasisLabel::Computational(digits), BasisKind::Computational { level, particles }) => {
                digits.len() == particles && digits.iter().all(|&x| x < level)
            }
            _ => false,
        }
    }
}

/// A state whose particle `i` sits at global position `positions[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlacedState {
    positions: Vec<usize>,
    state: PureState,
}

impl PlacedState {
    pub fn new(positions: Vec<usize>, state: PureState) -> Result<Self> {
        if positions.len() != state.particles() {
            return Err(Error::ShapeMismatch(format!(
                "{} positions for a {}-particle state",
                positions.len(),
                state.particles()
            )));
        }
        ParticleSet::new(positions.iter().copied())?;
        Ok(Self { positions, state })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    /// Same state with particles reordered so positions ascend.
    pub fn to_ascending(&self) -> Result<PlacedState> {
        let mut order: Vec<usize> = (0..self.positions.len()).collect();
        order.sort_by_key(|&i| self.positions[i]);
        let state = self.state.permute(&order)?;
        let positions = order.iter().map(|&i| self.positions[i]).collect();
        Ok(PlacedState { positions, state })
    }
}

/// One measurement outcome: basis label, its (unnormalized) coefficient, the
/// measured basis state and the collapsed remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub label: BasisLabel,
    pub coefficient: Complex64,
    pub measured: PlacedState,
    pub remainder: PlacedState,
}

/// Outcomes with unique labels, sorted by label. Probabilities are the
/// renormalized squared coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    provenance: String,
    outcomes: Vec<Outcome>,
    total_weight: f64,
}

impl OutcomeDistribution {
    pub fn new(provenance: impl Into<String>, mut outcomes: Vec<Outcome>) -> Result<Self> {
        outcomes.sort_by(|a, b| a.label.cmp(&b.label));
        let mut seen = BTreeSet::new();
        for o in &outcomes {
            if !seen.insert(&o.label) {
                return Err(Error::BadScenario(format!("duplicate outcome label {}", o.label)));
            }
            if !o.coefficient.re.is_finite() || !o.coefficient.im.is_finite() {
                return Err(Error::InvalidInput(format!("non-finite coefficient for {}", o.label)));
            }
        }
        let total_weight: f64 = outcomes.iter().map(|o| o.coefficient.norm_sqr()).sum();
        if total_weight <= 0.0 {
            return Err(Error::BadScenario("distribution has no weight".into()));
        }
        Ok(Self { provenance: provenance.into(), outcomes, total_weight })
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// `Σ|coefficient|²` before renormalization.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn probability(&self, outcome: &Outcome) -> f64 {
        outcome.coefficient.norm_sqr() / self.total_weight
    }

    pub fn get(&self, label: &BasisLabel) -> Option<&Outcome> {
        self.outcomes.binary_search_by(|o| o.label.cmp(label)).ok().map(|i| &self.outcomes[i])
    }

    pub fn labels(&self) -> impl Iterator<Item = &BasisLabel> {
        self.outcomes.iter().map(|o| &o.label)
    }
}
