//! Swapping between an `m`-particle state `|φ(u)⟩` and a pair `|φ(w)⟩`.
//!
//! The pair sits at positions `m+1, m+2`. The measured pair is bell particle
//! `m+1` followed by cat particle `k`, written `|φ(v₁, v₂)⟩` in that order.
//! The remainder keeps the cat's particles with `m+2` taking slot `k`:
//! positions `[1, …, k−1, m+2, k+1, …, m]`.
//!
//! With `s_i` the shift of cat particle `i` (`s₁ = 0`, `s_i = u_i` otherwise),
//! outcome `(v₁, v₂)` has coefficient `ζ^{(s_k⊖v₂)(w₁⊖v₁)}/d` and remainder
//! `d^{-1/2} Σ_l ζ^{l(u₁⊕w₁⊖v₁)} |…, l⊕s_i, …⟩` with slot `k` shifted by
//! `w₂⊕s_k⊖v₂`. The double-sum form reaches the same terms through
//! `v₁ = w₁⊖l₂`, `v₂ = s_k⊖l₁`.

use maskswap_core::states::{add_mod, root_of_unity, sub_mod};
use maskswap_core::{BasisKind, BasisLabel, Error, InputState, MaxEntLabel, ParticleSet, Result, SwapScenario};

use crate::{reorder_max_ent, PredictedOutcome, Prediction, StateForm};

fn check(cat: &MaxEntLabel, bell: &MaxEntLabel, k: usize) -> Result<()> {
    if cat.level() != bell.level() {
        return Err(Error::LevelMismatch { expected: cat.level(), found: bell.level() });
    }
    if bell.particles() != 2 {
        return Err(Error::BadLabel(format!("the second state must be a pair, got {} particles", bell.particles())));
    }
    if k == 0 || k > cat.particles() {
        return Err(Error::BadScenario(format!("k = {k} outside 1..={}", cat.particles())));
    }
    Ok(())
}

pub fn cat_bell_scenario(cat: &MaxEntLabel, bell: &MaxEntLabel, k: usize) -> Result<SwapScenario> {
    check(cat, bell, k)?;
    let m = cat.particles();
    SwapScenario::new(
        vec![InputState::MaxEnt(cat.clone()), InputState::MaxEnt(bell.clone())],
        ParticleSet::new([k, m + 1])?,
        BasisKind::MaxEntangled { level: cat.level(), particles: 2 },
    )
}

/// Outcome for measured `|φ(v₁, v₂)⟩` on `(m+1, k)` with the given coefficient
/// exponent and remainder.
fn outcome(
    cat: &MaxEntLabel,
    k: usize,
    (v1, v2): (usize, usize),
    exponent: usize,
    phase: usize,
    slot_shift: usize,
) -> Result<PredictedOutcome> {
    let d = cat.level();
    let m = cat.particles();
    let measured = MaxEntLabel::new(d, vec![v1, v2])?;
    // The scenario lists the measured pair as (k, m+1).
    let (label, _) = reorder_max_ent(&measured, &[1, 0])?;
    let mut shifts: Vec<usize> = (0..m).map(|i| if i == 0 { 0 } else { cat.u()[i] }).collect();
    shifts[k - 1] = slot_shift;
    let mut positions: Vec<usize> = (1..=m).collect();
    positions[k - 1] = m + 2;
    Ok(PredictedOutcome {
        label: BasisLabel::MaxEnt(label),
        coefficient: root_of_unity(d, exponent as i64) / d as f64,
        measured: StateForm::MaxEnt { level: d, phase: v1, shifts: vec![0, v2] },
        measured_positions: vec![m + 1, k],
        remainder: StateForm::MaxEnt { level: d, phase, shifts },
        remainder_positions: positions,
    })
}

fn shift_of(cat: &MaxEntLabel, k: usize) -> usize {
    if k == 1 {
        0
    } else {
        cat.u()[k - 1]
    }
}

/// Double sum over `(l₁, l₂)`: coefficient `ζ^{l₁l₂}/d`, measured pair
/// `φ(w₁⊖l₂, s_k⊖l₁)`, remainder phase `u₁⊕l₂` and slot-`k` shift `w₂⊕l₁`.
pub fn predict_cat_bell_karimipour(cat: &MaxEntLabel, bell: &MaxEntLabel, k: usize) -> Result<Prediction> {
    let scenario = cat_bell_scenario(cat, bell, k)?;
    let d = cat.level();
    let (w1, w2) = (bell.u()[0], bell.u()[1]);
    let sk = shift_of(cat, k);
    let mut outcomes = Vec::with_capacity(d * d);
    for l1 in 0..d {
        for l2 in 0..d {
            outcomes.push(outcome(
                cat,
                k,
                (sub_mod(w1, l2, d), sub_mod(sk, l1, d)),
                l1 * l2,
                add_mod(cat.u()[0], l2, d),
                add_mod(w2, l1, d),
            )?);
        }
    }
    Ok(Prediction::new("karimipour", scenario, outcomes))
}

/// Outcomes indexed directly by the measured label `(v₁, v₂)`.
pub fn predict_cat_bell_clear(cat: &MaxEntLabel, bell: &MaxEntLabel, k: usize) -> Result<Prediction> {
    let scenario = cat_bell_scenario(cat, bell, k)?;
    let d = cat.level();
    let (w1, w2) = (bell.u()[0], bell.u()[1]);
    let sk = shift_of(cat, k);
    let mut outcomes = Vec::with_capacity(d * d);
    for v1 in 0..d {
        for v2 in 0..d {
            outcomes.push(outcome(
                cat,
                k,
                (v1, v2),
                sub_mod(sk, v2, d) * sub_mod(w1, v1, d),
                sub_mod(add_mod(cat.u()[0], w1, d), v1, d),
                sub_mod(add_mod(w2, sk, d), v2, d),
            )?);
        }
    }
    Ok(Prediction::new("clear", scenario, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(d: usize, u: &[usize]) -> MaxEntLabel {
        MaxEntLabel::new(d, u.to_vec()).unwrap()
    }

    #[test]
    fn every_outcome_has_weight_one_over_d_squared() {
        for d in [2, 3, 5] {
            let p = predict_cat_bell_karimipour(&label(d, &[1, 2, 0]), &label(d, &[2, 1]), 2).unwrap();
            let dist = p.distribution().unwrap();
            assert_eq!(dist.len(), d * d);
            for o in p.outcomes() {
                assert!((o.coefficient.norm_sqr() - 1.0 / (d * d) as f64).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn matching_label_has_unit_phase() {
        let (cat, bell) = (label(3, &[2, 1, 2]), label(3, &[1, 2]));
        let p = predict_cat_bell_clear(&cat, &bell, 3).unwrap();
        // v = (w₁, s_k) is listed at index w₁·d + s_k.
        let o = &p.outcomes()[3 + 2];
        assert!((o.coefficient - num_complex::Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn both_forms_list_the_same_outcomes() {
        let (cat, bell) = (label(5, &[3, 4, 1, 2]), label(5, &[2, 3]));
        for k in 1..=4 {
            let mut a = predict_cat_bell_karimipour(&cat, &bell, k).unwrap().outcomes().to_vec();
            let mut b = predict_cat_bell_clear(&cat, &bell, k).unwrap().outcomes().to_vec();
            a.sort_by(|x, y| x.label.cmp(&y.label));
            b.sort_by(|x, y| x.label.cmp(&y.label));
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.label, y.label);
                assert_eq!(x.remainder, y.remainder);
                assert!((x.coefficient - y.coefficient).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_inputs() {
        let cat = label(3, &[0, 0]);
        assert!(matches!(predict_cat_bell_clear(&cat, &label(2, &[0, 0]), 1), Err(Error::LevelMismatch { .. })));
        assert!(predict_cat_bell_clear(&cat, &label(3, &[0, 0, 0]), 1).is_err());
        assert!(predict_cat_bell_clear(&cat, &label(3, &[0, 0]), 3).is_err());
    }
}
