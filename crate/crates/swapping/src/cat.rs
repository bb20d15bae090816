//! Swapping between `n` cat states.
//!
//! The joint state is `Σ_s (−1)^{s·λ} ⊗_r |a_r ⊕ s_r⟩`, where `s_r = 1`
//! complements the whole of cat `r`. Splitting every term into the measured
//! string `x_s` (first `k_r` bits of each cat) and the remainder string `y_s`,
//! and pairing `s` with its complement `s̄`, each pair contributes
//!
//! `(c_s + c_s̄)(C⁺C⁺ + C⁻C⁻) + (c_s − c_s̄)(C⁺C⁻ + C⁻C⁺)`
//!
//! with `c_s = (−1)^{Σ s_r λ_r}` and `C^±` the cats on `x_s` and `y_s`. Since
//! `c_s̄ = (−1)^{Σλ} c_s`, only one of the two sign classes survives.

use maskswap_core::{
    BasisKind, BasisLabel, CatLabel, Error, GhzLabel, InputState, ParticleSet, Result, Sign, SwapScenario,
};
use num_complex::Complex64;

use crate::{canonical_ghz, PredictedOutcome, Prediction, StateForm};

struct Layout {
    measured: Vec<usize>,
    remainder: Vec<usize>,
}

fn layout(labels: &[CatLabel], k: &[usize]) -> Result<Layout> {
    if labels.len() < 2 {
        return Err(Error::BadScenario(format!("need at least two cat states, got {}", labels.len())));
    }
    if labels.len() != k.len() {
        return Err(Error::BadScenario(format!("{} cat states but {} measured counts", labels.len(), k.len())));
    }
    let (mut measured, mut remainder) = (Vec::new(), Vec::new());
    let mut offset = 0;
    for (label, &kr) in labels.iter().zip(k) {
        let m = label.particles();
        if kr == 0 || kr > m {
            return Err(Error::BadScenario(format!("k_r = {kr} outside 1..={m}")));
        }
        measured.extend(offset + 1..=offset + kr);
        remainder.extend(offset + kr + 1..=offset + m);
        offset += m;
    }
    if remainder.is_empty() {
        return Err(Error::BadScenario("every particle is measured (R = 0)".into()));
    }
    Ok(Layout { measured, remainder })
}

pub fn cat_swap_scenario(labels: &[CatLabel], k: &[usize]) -> Result<SwapScenario> {
    let layout = layout(labels, k)?;
    SwapScenario::new(
        labels.iter().cloned().map(InputState::Cat).collect(),
        ParticleSet::new(layout.measured.iter().copied())?,
        BasisKind::Ghz { particles: layout.measured.len() },
    )
}

/// Measures the first `k[r]` particles of cat `r` in the GHZ basis.
pub fn predict_cat_swap(labels: &[CatLabel], k: &[usize]) -> Result<Prediction> {
    let scenario = cat_swap_scenario(labels, k)?;
    let Layout { measured, remainder } = layout(labels, k)?;
    let n = labels.len();
    let total_lambda: u32 = labels.iter().map(|l| l.lambda() as u32).sum();

    let mut outcomes = Vec::with_capacity(1 << n);
    // Representatives s with s₁ = 0; s̄ is the partner.
    for rest in 0..1usize << (n - 1) {
        let s: Vec<u8> = (0..n).map(|r| if r == 0 { 0 } else { (rest >> (n - 1 - r) & 1) as u8 }).collect();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        let mut exponent = 0u32;
        for ((label, &kr), &sr) in labels.iter().zip(k).zip(&s) {
            let bits = label.bits().iter().map(|b| b ^ sr);
            x.extend(bits.clone().take(kr));
            y.extend(bits.skip(kr));
            exponent += sr as u32 * label.lambda() as u32;
        }
        let c_s = Sign::from_bit((exponent % 2) as u8).factor();
        let c_bar = Sign::from_bit(((total_lambda - exponent) % 2) as u8).factor();

        for (measured_sign, remainder_sign) in
            [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)]
        {
            let weight = if measured_sign == remainder_sign { c_s + c_bar } else { c_s - c_bar };
            if weight == 0.0 {
                continue;
            }
            let (xc, xs, xphase) = canonical_ghz(&x, measured_sign);
            let (yc, ys, yphase) = canonical_ghz(&y, remainder_sign);
            let label = GhzLabel::new(xs, xc[1..].to_vec())?;
            outcomes.push(PredictedOutcome {
                label: BasisLabel::Ghz(label.clone()),
                coefficient: Complex64::new(weight * xphase * yphase / 2.0, 0.0),
                measured: StateForm::Ghz(label),
                measured_positions: measured.clone(),
                remainder: StateForm::Cat { bits: yc, sign: ys },
                remainder_positions: remainder.clone(),
            });
        }
    }
    Ok(Prediction::new("cat-swap", scenario, outcomes))
}
