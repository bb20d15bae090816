//! Swapping between masked states, measuring the first particle of each.
//!
//! Every masked state is a sum of correlated blocks, so projecting the first
//! particles onto `|φ(v)⟩ = d^{-1/2} Σ_t ζ^{t v₁} |t, t⊕v₂, …⟩` forces the
//! first digit of input `r` to `a₁ ⊕ v_r` and leaves a single sum over `a₁`
//! with phase `ζ^{−a₁v₁}`. For qubit phase maskers the sum collapses onto a
//! GHZ pair; for the d-level families the remainder is built from the closed
//! form term by term and normalized numerically.

use maskswap_core::qudit::{dimension, index_to_label, ZERO_PROBABILITY};
use maskswap_core::states::{add_mod, root_of_unity};
use maskswap_core::{
    BasisKind, BasisLabel, Error, GhzLabel, InputState, MaxEntLabel, ParticleSet, PhaseAmplitudeInput, QuditAmplitudes,
    RawKet, Result, Sign, SwapScenario,
};
use num_complex::Complex64;

use crate::{PredictedOutcome, Prediction, StateForm};

fn odd_positions(n: usize) -> Vec<usize> {
    (0..n).map(|r| 2 * r + 1).collect()
}

fn even_positions(n: usize) -> Vec<usize> {
    (0..n).map(|r| 2 * r + 2).collect()
}

fn need_two(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BadScenario(format!("need at least two masked states, got {n}")));
    }
    Ok(())
}

pub fn masked_ghz_scenario(lambda: &[u8]) -> Result<SwapScenario> {
    need_two(lambda.len())?;
    SwapScenario::new(
        lambda.iter().map(|&l| InputState::ModiQubit(l)).collect(),
        ParticleSet::new(odd_positions(lambda.len()))?,
        BasisKind::Ghz { particles: lambda.len() },
    )
}

/// Qubit phase-masked states `(|00⟩ + (−1)^{λ_r}|11⟩)`, first particles
/// measured in the GHZ basis. For branch `j = (0, a₂, …, aₙ)`:
/// same-sign pairs `(G_j^±, G_j^±)` weigh `(−1)^{Σ aᵢλᵢ} + (−1)^{Σλ − Σ aᵢλᵢ}`,
/// mixed-sign pairs the difference.
pub fn predict_masked_ghz_swap(lambda: &[u8]) -> Result<Prediction> {
    let scenario = masked_ghz_scenario(lambda)?;
    let n = lambda.len();
    let total: u32 = lambda.iter().map(|&l| l as u32).sum();
    let mut outcomes = Vec::with_capacity(1 << n);
    for p in 0..1usize << (n - 1) {
        let label = GhzLabel::from_index(n, Sign::Plus, p)?;
        let dot: u32 = label.bits().iter().zip(&lambda[1..]).map(|(&a, &l)| (a * l) as u32).sum();
        let c = Sign::from_bit((dot % 2) as u8).factor();
        let c_bar = Sign::from_bit(((total - dot) % 2) as u8).factor();
        for (ms, rs) in
            [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)]
        {
            let weight = if ms == rs { c + c_bar } else { c - c_bar };
            if weight == 0.0 {
                continue;
            }
            outcomes.push(PredictedOutcome {
                label: BasisLabel::Ghz(label.with_sign(ms)),
                coefficient: Complex64::new(weight / 2.0, 0.0),
                measured: StateForm::Ghz(label.with_sign(ms)),
                measured_positions: odd_positions(n),
                remainder: StateForm::Ghz(label.with_sign(rs)),
                remainder_positions: even_positions(n),
            });
        }
    }
    Ok(Prediction::new("masked-ghz", scenario, outcomes))
}

fn common_level(levels: impl Iterator<Item = usize>) -> Result<usize> {
    let mut levels = levels.peekable();
    let first = *levels.peek().ok_or_else(|| Error::BadScenario("no inputs".into()))?;
    for d in levels {
        if d != first {
            return Err(Error::LevelMismatch { expected: first, found: d });
        }
    }
    Ok(first)
}

pub fn masked_qudit_scenario(inputs: &[PhaseAmplitudeInput]) -> Result<SwapScenario> {
    need_two(inputs.len())?;
    let d = common_level(inputs.iter().map(PhaseAmplitudeInput::level))?;
    SwapScenario::new(
        inputs.iter().cloned().map(InputState::ModiQudit).collect(),
        ParticleSet::new(odd_positions(inputs.len()))?,
        BasisKind::MaxEntangled { level: d, particles: inputs.len() },
    )
}

/// Shared tail: normalizes each raw remainder and drops empty outcomes.
/// `prefactor` is the overlap amplitude common to every term.
fn collect(
    level: usize,
    n: usize,
    measured_positions: Vec<usize>,
    remainder_positions: Vec<usize>,
    prefactor: f64,
    mut remainder: impl FnMut(&[usize]) -> Result<RawKet>,
) -> Result<Vec<PredictedOutcome>> {
    let mut outcomes = Vec::new();
    for index in 0..dimension(level, n)? {
        let v = index_to_label(level, n, index);
        let raw = remainder(&v)?;
        let norm = raw.norm() * prefactor;
        if norm * norm < ZERO_PROBABILITY {
            continue;
        }
        let label = MaxEntLabel::new(level, v)?;
        outcomes.push(PredictedOutcome {
            label: BasisLabel::MaxEnt(label.clone()),
            coefficient: Complex64::new(norm, 0.0),
            measured: StateForm::MaxEnt { level, phase: label.u()[0], shifts: shifts_of(&label) },
            measured_positions: measured_positions.clone(),
            remainder: StateForm::Explicit(raw.normalize()?),
            remainder_positions: remainder_positions.clone(),
        });
    }
    Ok(outcomes)
}

fn shifts_of(label: &MaxEntLabel) -> Vec<usize> {
    let mut s = label.u().to_vec();
    s[0] = 0;
    s
}

/// d-level phase-amplitude masked states `Σ_l η^r_l e^{iϑ^r_l}|ll⟩`. Outcome
/// `v` leaves `Σ_{a₁} ζ^{−a₁v₁} Π_r η^r_{a_r} e^{iϑ^r_{a_r}} |a₁, a₁⊕v₂, …, a₁⊕vₙ⟩`
/// with `a_r = a₁ ⊕ v_r` on the even positions.
pub fn predict_masked_qudit_swap(inputs: &[PhaseAmplitudeInput]) -> Result<Prediction> {
    let scenario = masked_qudit_scenario(inputs)?;
    let d = scenario.level();
    let n = inputs.len();
    let outcomes = collect(d, n, odd_positions(n), even_positions(n), (d as f64).sqrt().recip(), |v| {
        let mut raw = RawKet::zeros(d, n)?;
        let mut digits = vec![0; n];
        for a1 in 0..d {
            let mut amp = root_of_unity(d, -((a1 * v[0]) as i64));
            for (r, input) in inputs.iter().enumerate() {
                let ar = if r == 0 { a1 } else { add_mod(a1, v[r], d) };
                digits[r] = ar;
                amp *= input.coefficient(ar);
            }
            raw.add(&digits, amp);
        }
        Ok(raw)
    })?;
    Ok(Prediction::new("masked-qudit", scenario, outcomes))
}

pub fn li_masked_scenario(inputs: &[QuditAmplitudes]) -> Result<SwapScenario> {
    need_two(inputs.len())?;
    let d = common_level(inputs.iter().map(QuditAmplitudes::level))?;
    let block = 2 * d;
    SwapScenario::new(
        inputs.iter().cloned().map(InputState::Li).collect(),
        ParticleSet::new((0..inputs.len()).map(|r| r * block + 1))?,
        BasisKind::MaxEntangled { level: d, particles: inputs.len() },
    )
}

/// Fourier-pair masked states `Σ_k α_k ⊗_h d^{-1/2} Σ_j ζ^{jk}|jj⟩`, each
/// on `2d` particles. Input `r` is a sum over pair values `(a₀, …, a_{d−1})`
/// weighted by `f^r(ω) = Σ_k α^r_k ζ^{ωk}`, `ω = Σ aᵢ`. Outcome `v` leaves
/// `Σ_{a₀¹} ζ^{−a₀¹v₁} ⊗_r Σ_{a₁^r…} f^r(ω^r) |a₀^r, a₁^r a₁^r, …⟩` with
/// `a₀^r = a₀¹ ⊕ v_r`.
pub fn predict_li_masked_swap(inputs: &[QuditAmplitudes]) -> Result<Prediction> {
    let scenario = li_masked_scenario(inputs)?;
    let d = scenario.level();
    let n = inputs.len();
    let block = 2 * d;
    let rest = block - 1;
    dimension(d, n * rest)?;
    let f: Vec<Vec<Complex64>> = inputs
        .iter()
        .map(|alpha| {
            (0..d)
                .map(|omega| {
                    alpha.alpha().iter().enumerate().map(|(k, a)| a * root_of_unity(d, (omega * k) as i64)).sum()
                })
                .collect()
        })
        .collect();
    let free = n * (d - 1);
    let terms = dimension(d, free)?;
    let prefactor = (d as f64).powf(-0.5 * (1 + n * d) as f64);
    let measured: Vec<usize> = (0..n).map(|r| r * block + 1).collect();
    let remainder_positions = scenario.unmeasured();
    let outcomes = collect(d, n, measured, remainder_positions, prefactor, |v| {
        let mut raw = RawKet::zeros(d, n * rest)?;
        let mut digits = vec![0; n * rest];
        for a01 in 0..d {
            let lead = root_of_unity(d, -((a01 * v[0]) as i64));
            for t in 0..terms {
                let pairs = index_to_label(d, free, t);
                let mut amp = lead;
                for r in 0..n {
                    let a0 = if r == 0 { a01 } else { add_mod(a01, v[r], d) };
                    let own = &pairs[r * (d - 1)..(r + 1) * (d - 1)];
                    let base = r * rest;
                    digits[base] = a0;
                    for (i, &a) in own.iter().enumerate() {
                        digits[base + 1 + 2 * i] = a;
                        digits[base + 2 + 2 * i] = a;
                    }
                    let omega = (a0 + own.iter().sum::<usize>()) % d;
                    amp *= f[r][omega];
                }
                raw.add(&digits, amp);
            }
        }
        Ok(raw)
    })?;
    Ok(Prediction::new("li-masked", scenario, outcomes))
}
