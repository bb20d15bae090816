//! Swapping between two Bell states.
//!
//! Inputs `|B(λ₁,a₁)⟩₁₂ ⊗ |B(λ₂,a₂)⟩₃₄`, measurement of particles 1 and 3 in
//! the Bell basis. Each branch `a₁a₂` has a fixed table: every measured Bell
//! state pairs with two remainder Bell states, one weighted by a same-parity
//! class `1 ± (−1)^{λ₁+λ₂}` and one by `(−1)^{λ₂} ± (−1)^{λ₁}`. Exactly one of
//! each pair is nonzero.

use maskswap_core::{BasisKind, BasisLabel, BellLabel, GhzLabel, InputState, ParticleSet, Result, Sign, SwapScenario};
use num_complex::Complex64;

use crate::{PredictedOutcome, Prediction, StateForm};

#[derive(Clone, Copy)]
enum Class {
    /// `1 + (−1)^{λ₁+λ₂}`
    A,
    /// `1 − (−1)^{λ₁+λ₂}`
    B,
    /// `(−1)^{λ₂} + (−1)^{λ₁}`
    C,
    /// `(−1)^{λ₂} − (−1)^{λ₁}`
    D,
}

#[derive(Clone, Copy)]
enum Named {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Named {
    fn label(self) -> GhzLabel {
        let (sign, bit) = match self {
            Named::PhiPlus => (Sign::Plus, 0),
            Named::PhiMinus => (Sign::Minus, 0),
            Named::PsiPlus => (Sign::Plus, 1),
            Named::PsiMinus => (Sign::Minus, 1),
        };
        GhzLabel::new(sign, vec![bit]).expect("one bit")
    }
}

use Class::*;
use Named::*;

type Row = (Named, Named, Class, f64);

/// `(measured on 13, remainder on 24, class, sign)` for each branch `a₁a₂`.
const TABLE: [[Row; 8]; 4] = [
    // a₁a₂ = 00
    [
        (PhiPlus, PhiPlus, A, 1.0),
        (PhiPlus, PhiMinus, B, 1.0),
        (PhiMinus, PhiPlus, B, 1.0),
        (PhiMinus, PhiMinus, A, 1.0),
        (PsiPlus, PsiPlus, C, 1.0),
        (PsiPlus, PsiMinus, D, 1.0),
        (PsiMinus, PsiPlus, D, 1.0),
        (PsiMinus, PsiMinus, C, 1.0),
    ],
    // a₁a₂ = 01
    [
        (PhiPlus, PsiPlus, A, 1.0),
        (PhiPlus, PsiMinus, B, 1.0),
        (PhiMinus, PsiPlus, B, 1.0),
        (PhiMinus, PsiMinus, A, 1.0),
        (PsiPlus, PhiPlus, C, 1.0),
        (PsiPlus, PhiMinus, D, 1.0),
        (PsiMinus, PhiPlus, D, 1.0),
        (PsiMinus, PhiMinus, C, 1.0),
    ],
    // a₁a₂ = 10
    [
        (PhiPlus, PsiPlus, A, 1.0),
        (PhiPlus, PsiMinus, B, -1.0),
        (PhiMinus, PsiPlus, B, 1.0),
        (PhiMinus, PsiMinus, A, -1.0),
        (PsiPlus, PhiPlus, C, 1.0),
        (PsiPlus, PhiMinus, D, -1.0),
        (PsiMinus, PhiPlus, D, 1.0),
        (PsiMinus, PhiMinus, C, -1.0),
    ],
    // a₁a₂ = 11
    [
        (PhiPlus, PhiPlus, A, 1.0),
        (PhiPlus, PhiMinus, B, -1.0),
        (PhiMinus, PhiPlus, B, 1.0),
        (PhiMinus, PhiMinus, A, -1.0),
        (PsiPlus, PsiPlus, C, 1.0),
        (PsiPlus, PsiMinus, D, -1.0),
        (PsiMinus, PsiPlus, D, 1.0),
        (PsiMinus, PsiMinus, C, -1.0),
    ],
];

pub fn bell_bell_scenario(l1: BellLabel, l2: BellLabel) -> Result<SwapScenario> {
    SwapScenario::new(
        vec![InputState::Bell(l1), InputState::Bell(l2)],
        ParticleSet::new([1, 3])?,
        BasisKind::Ghz { particles: 2 },
    )
}

/// Bell-basis measurement of particles 1 and 3; zero-weight rows are dropped.
pub fn predict_bell_bell(l1: BellLabel, l2: BellLabel) -> Result<Prediction> {
    let scenario = bell_bell_scenario(l1, l2)?;
    let s1 = Sign::from_bit(l1.lambda).factor();
    let s2 = Sign::from_bit(l2.lambda).factor();
    let weight = |class: Class| match class {
        A => 1.0 + s1 * s2,
        B => 1.0 - s1 * s2,
        C => s2 + s1,
        D => s2 - s1,
    };
    let branch = (2 * l1.a + l2.a) as usize;
    let outcomes = TABLE[branch]
        .iter()
        .filter_map(|&(measured, remainder, class, sign)| {
            let w = sign * weight(class);
            (w != 0.0).then(|| PredictedOutcome {
                label: BasisLabel::Ghz(measured.label()),
                coefficient: Complex64::new(w / 2.0, 0.0),
                measured: StateForm::Ghz(measured.label()),
                measured_positions: vec![1, 3],
                remainder: StateForm::Ghz(remainder.label()),
                remainder_positions: vec![2, 4],
            })
        })
        .collect();
    Ok(Prediction::new("bell-bell", scenario, outcomes))
}
