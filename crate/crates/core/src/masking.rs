//! Maskers: isometries taking a single-particle state to an entangled state
//! whose marginals do not depend on the input.
//!
//! The ancilla is not modeled; each masker is a map from the input
//! parameters to the composite output state.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qudit::{dimension, partial_trace, DensityMatrix, ParticleSet, PureState, RawKet, NORM_TOL};
use crate::states::root_of_unity;

/// `Σ_l η_l e^{iϑ_l} |l⟩` with `η_l ≥ 0`, `Σ η_l² = 1`, `ϑ_l ∈ [−π, π]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseAmplitudeInput {
    eta: Vec<f64>,
    theta: Vec<f64>,
}

impl PhaseAmplitudeInput {
    pub fn new(eta: Vec<f64>, theta: Vec<f64>) -> Result<Self> {
        if eta.len() < 2 || eta.len() != theta.len() {
            return Err(Error::InvalidInput(format!(
                "need d >= 2 amplitudes and as many phases, got {} and {}",
                eta.len(),
                theta.len()
            )));
        }
        if eta.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(Error::InvalidInput("amplitudes must be finite and nonnegative".into()));
        }
        let norm: f64 = eta.iter().map(|x| x * x).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidInput(format!("Σ η² = {norm}, expected 1")));
        }
        if theta.iter().any(|t| !t.is_finite() || t.abs() > PI) {
            return Err(Error::InvalidInput("phases must lie in [-π, π]".into()));
        }
        Ok(Self { eta, theta })
    }

    /// Uniform amplitudes `1/√d` with zero phases.
    pub fn uniform(level: usize) -> Result<Self> {
        let eta = vec![(level as f64).sqrt().recip(); level];
        Self::new(eta, vec![0.0; level])
    }

    pub fn level(&self) -> usize {
        self.eta.len()
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// `η_l e^{iϑ_l}`.
    pub fn coefficient(&self, l: usize) -> Complex64 {
        Complex64::from_polar(self.eta[l], self.theta[l])
    }

    /// The input ket on one particle.
    pub fn ket(&self) -> Result<PureState> {
        let amps = (0..self.level()).map(|l| self.coefficient(l)).collect();
        PureState::new(self.level(), 1, amps)
    }
}

/// `Σ_k α_k |k⟩` with `Σ|α_k|² = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuditAmplitudes {
    alpha: Vec<Complex64>,
}

impl QuditAmplitudes {
    pub fn new(alpha: Vec<Complex64>) -> Result<Self> {
        if alpha.len() < 2 {
            return Err(Error::InvalidInput(format!("need d >= 2 amplitudes, got {}", alpha.len())));
        }
        if alpha.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite amplitude".into()));
        }
        let norm: f64 = alpha.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidInput(format!("Σ|α|² = {norm}, expected 1")));
        }
        Ok(Self { alpha })
    }

    /// `|k⟩`.
    pub fn basis(level: usize, k: usize) -> Result<Self> {
        if k >= level {
            return Err(Error::InvalidInput(format!("k = {k} is not below d = {level}")));
        }
        let mut alpha = vec![Complex64::new(0.0, 0.0); level];
        alpha[k] = Complex64::new(1.0, 0.0);
        Self::new(alpha)
    }

    pub fn level(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn ket(&self) -> Result<PureState> {
        PureState::new(self.level(), 1, self.alpha.clone())
    }
}

/// `|l⟩ → (|00⟩ + (−1)^l |11⟩)/√2`.
pub fn mask_modi_qubit(l: u8) -> Result<PureState> {
    if l > 1 {
        return Err(Error::InvalidInput(format!("qubit input must be 0 or 1, got {l}")));
    }
    let sign = if l == 0 { 1.0 } else { -1.0 };
    let mut raw = RawKet::zeros(2, 2)?;
    raw.add(&[0, 0], Complex64::new(1.0, 0.0));
    raw.add(&[1, 1], Complex64::new(sign, 0.0));
    raw.normalize()
}

/// `Σ_l η_l e^{iϑ_l} |l⟩ → Σ_l η_l e^{iϑ_l} |l, l⟩`.
pub fn mask_modi_qudit(input: &PhaseAmplitudeInput) -> Result<PureState> {
    let d = input.level();
    let mut raw = RawKet::zeros(d, 2)?;
    for l in 0..d {
        raw.add(&[l, l], input.coefficient(l));
    }
    raw.normalize()
}

/// Qubit case of [`mask_li_qudit`]: `α₀ φ⁺⊗φ⁺ + α₁ φ⁻⊗φ⁻` on four qubits.
pub fn mask_li_qubit(alpha: &QuditAmplitudes) -> Result<PureState> {
    if alpha.level() != 2 {
        return Err(Error::LevelMismatch { expected: 2, found: alpha.level() });
    }
    mask_li_qudit(alpha)
}

/// `Σ_k α_k ⊗_{h=1}^{d} d^{-1/2} Σ_j ζ^{jk} |j j⟩` on `2d` particles.
pub fn mask_li_qudit(alpha: &QuditAmplitudes) -> Result<PureState> {
    let d = alpha.level();
    let particles = 2 * d;
    dimension(d, particles)?;
    let mut raw = RawKet::zeros(d, particles)?;
    let pairs = d as u32;
    // Sum over the pair values (j₁, …, j_d); every pair contributes ζ^{j_h k},
    // so the total phase is ζ^{k·Σj}.
    let mut digits = vec![0usize; particles];
    let folded: Vec<Complex64> = (0..d)
        .map(|total| alpha.alpha().iter().enumerate().map(|(k, a)| a * root_of_unity(d, (k * total) as i64)).sum())
        .collect();
    for index in 0..d.pow(pairs) {
        let js = crate::qudit::index_to_label(d, d, index);
        for (h, &j) in js.iter().enumerate() {
            digits[2 * h] = j;
            digits[2 * h + 1] = j;
        }
        let total = js.iter().sum::<usize>() % d;
        raw.add(&digits, folded[total]);
    }
    raw.normalize()
}

/// Marginals of one subsystem across every member of a masked family.
#[derive(Clone, Debug)]
pub struct SubsystemMarginals {
    pub subsystem: ParticleSet,
    /// One reduced state per family member, in family order.
    pub marginals: Vec<DensityMatrix>,
    /// Largest entrywise deviation of any member's marginal from the first.
    pub max_deviation: f64,
}

#[derive(Clone, Debug)]
pub struct MaskingReport {
    pub subsystems: Vec<SubsystemMarginals>,
    /// Largest deviation across family members over all subsystems.
    pub max_deviation: f64,
    /// Largest deviation between marginals of different, equally sized
    /// subsystems of the same member (e.g. `ρ_A` vs `ρ_B`). Informational;
    /// does not enter the verdict.
    pub cross_subsystem_deviation: Option<f64>,
    pub tolerance: f64,
    pub verdict: bool,
}

/// Checks that every subsystem marginal is the same for all members of
/// `family`, i.e. the marginals carry no information about which input was
/// masked.
pub fn verify_masking(family: &[PureState], subsystems: &[ParticleSet], tol: f64) -> Result<MaskingReport> {
    let first = family.first().ok_or_else(|| Error::InvalidInput("masking family is empty".into()))?;
    if let Some(bad) = family.iter().find(|s| s.level() != first.level() || s.particles() != first.particles()) {
        return Err(Error::ShapeMismatch(format!(
            "family members (d = {}, n = {}) and (d = {}, n = {})",
            first.level(),
            first.particles(),
            bad.level(),
            bad.particles()
        )));
    }
    if subsystems.is_empty() {
        return Err(Error::BadSubset("no subsystems to check".into()));
    }

    let mut results = Vec::with_capacity(subsystems.len());
    for subsystem in subsystems {
        let marginals = family.iter().map(|s| partial_trace(s, subsystem)).collect::<Result<Vec<_>>>()?;
        let mut max_deviation: f64 = 0.0;
        for m in &marginals[1..] {
            max_deviation = max_deviation.max(m.max_abs_deviation(&marginals[0])?);
        }
        results.push(SubsystemMarginals { subsystem: subsystem.clone(), marginals, max_deviation });
    }

    let mut cross: Option<f64> = None;
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            if a.subsystem.len() != b.subsystem.len() {
                continue;
            }
            for (ma, mb) in a.marginals.iter().zip(&b.marginals) {
                let dev = ma.max_abs_deviation(mb)?;
                cross = Some(cross.map_or(dev, |c| c.max(dev)));
            }
        }
    }

    let max_deviation = results.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
    Ok(MaskingReport {
        subsystems: results,
        max_deviation,
        cross_subsystem_deviation: cross,
        tolerance: tol,
        verdict: max_deviation <= tol,
    })
}

/// Every single-particle subsystem `{1}, …, {n}`.
pub fn single_particle_subsystems(particles: usize) -> Vec<ParticleSet> {
    (1..=particles).map(|p| ParticleSet::new([p]).expect("positions are 1-based and distinct")).collect()
}
