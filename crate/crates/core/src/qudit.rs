//! Dense state vectors over `n` particles of level `d`.
//!
//! Basis label `(a₁, …, aₙ)` maps to flat index `Σ aᵢ·d^(n−i)`: particle 1 is
//! the most significant digit. Particle positions in the public API are
//! 1-based, matching how kets are written.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexAmplitude = Complex64;

/// Largest dense dimension `d^n` accepted anywhere in the crate.
pub const MAX_DIMENSION: usize = 1 << 22;
/// Tolerance on `Σ|amplitude|² = 1` and on density-matrix trace/hermiticity.
pub const NORM_TOL: f64 = 1e-9;
/// Smallest eigenvalue a density matrix may have and still count as PSD.
pub const PSD_TOL: f64 = 1e-7;
/// Projection probabilities below this are treated as exact zeros.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// Checked `level^particles`, rejecting anything above [`MAX_DIMENSION`].
pub fn dimension(level: usize, particles: usize) -> Result<usize> {
    if level < 2 {
        return Err(Error::InvalidInput(format!("level must be at least 2, got {level}")));
    }
    let exp = u32::try_from(particles).map_err(|_| Error::DimensionTooLarge { level, particles })?;
    match level.checked_pow(exp) {
        Some(dim) if dim <= MAX_DIMENSION => Ok(dim),
        _ => Err(Error::DimensionTooLarge { level, particles }),
    }
}

/// Flat index of a basis label. Digits are taken as-is; callers reduce them.
pub fn label_to_index(level: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &a| acc * level + a)
}

/// Inverse of [`label_to_index`].
pub fn index_to_label(level: usize, particles: usize, mut index: usize) -> Vec<usize> {
    let mut digits = vec![0; particles];
    for slot in digits.iter_mut().rev() {
        *slot = index % level;
        index /= level;
    }
    digits
}

/// Flat-index contributions of every digit assignment to `positions`
/// (1-based, in the given order), enumerated big-endian over those positions.
fn subset_offsets(level: usize, particles: usize, positions: &[usize]) -> Vec<usize> {
    let strides: Vec<usize> = positions.iter().map(|&p| level.pow((particles - p) as u32)).collect();
    let count = level.pow(positions.len() as u32);
    let mut offsets = Vec::with_capacity(count);
    let mut digits = vec![0usize; positions.len()];
    for _ in 0..count {
        offsets.push(digits.iter().zip(&strides).map(|(a, s)| a * s).sum());
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < level {
                break;
            }
            digits[k] = 0;
        }
    }
    offsets
}

/// Ordered set of distinct 1-based particle positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParticleSet {
    indices: Vec<usize>,
}

impl ParticleSet {
    /// Builds a set from positions in any order. Duplicates and position 0
    /// are rejected; storage is strictly increasing.
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        if indices.contains(&0) {
            return Err(Error::BadSubset("particle positions are 1-based".into()));
        }
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadSubset(format!("duplicate position in {indices:?}")));
        }
        Ok(Self { indices })
    }

    /// Positions `first..=last`.
    pub fn range(first: usize, last: usize) -> Result<Self> {
        Self::new(first..=last)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, position: usize) -> bool {
        self.indices.binary_search(&position).is_ok()
    }

    /// Errors with `BadSubset` unless the set is nonempty and within `1..=particles`.
    pub fn check_within(&self, particles: usize) -> Result<()> {
        if self.indices.is_empty() {
            return Err(Error::BadSubset("empty particle set".into()));
        }
        match self.indices.last() {
            Some(&last) if last > particles => {
                Err(Error::BadSubset(format!("position {last} out of range for {particles} particles")))
            }
            _ => Ok(()),
        }
    }

    /// Positions in `1..=particles` not in this set, ascending.
    pub fn complement(&self, particles: usize) -> Vec<usize> {
        (1..=particles).filter(|p| !self.contains(*p)).collect()
    }
}

/// Unnormalized amplitude vector. Closed-form expressions accumulate into a
/// `RawKet` and normalize at the end; a raw ket cannot be measured.
#[derive(Clone, Debug, PartialEq)]
pub struct RawKet {
    level: usize,
    particles: usize,
    amplitudes: Vec<Complex64>,
}

impl RawKet {
    pub fn zeros(level: usize, particles: usize) -> Result<Self> {
        let dim = dimension(level, particles)?;
        Ok(Self { level, particles, amplitudes: vec![Complex64::new(0.0, 0.0); dim] })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    /// Adds `coefficient` to the amplitude of basis label `digits`
    /// (digits reduced mod d).
    pub fn add(&mut self, digits: &[usize], coefficient: Complex64) {
        debug_assert_eq!(digits.len(), self.particles);
        let index = digits.iter().fold(0, |acc, &a| acc * self.level + a % self.level);
        self.amplitudes[index] += coefficient;
    }

    pub fn add_at(&mut self, index: usize, coefficient: Complex64) {
        self.amplitudes[index] += coefficient;
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescales to unit norm. A (numerically) zero ket has no direction and
    /// yields `ZeroProbabilityOutcome`.
    pub fn normalize(self) -> Result<PureState> {
        PureState::new(self.level, self.particles, self.amplitudes)
    }
}

/// Normalized pure state of `particles` qudits of dimension `level`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    level: usize,
    particles: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Normalizes `amplitudes` into a state. Rejects wrong lengths,
    /// non-finite entries and vectors with squared norm below
    /// [`ZERO_PROBABILITY`].
    pub fn new(level: usize, particles: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if particles == 0 {
            return Err(Error::InvalidInput("a state needs at least one particle".into()));
        }
        let dim = dimension(level, particles)?;
        if amplitudes.len() != dim {
            return Err(Error::ShapeMismatch(format!(
                "{} amplitudes for d = {level}, n = {particles} (expected {dim})",
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite amplitude".into()));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if norm_sqr < ZERO_PROBABILITY {
            return Err(Error::ZeroProbabilityOutcome { probability: norm_sqr });
        }
        let scale = norm_sqr.sqrt().recip();
        amplitudes.iter_mut().for_each(|c| *c *= scale);
        Ok(Self { level, particles, amplitudes })
    }

    /// Computational basis state `|digits⟩`.
    pub fn basis(level: usize, digits: &[usize]) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&a| a >= level) {
            return Err(Error::BadLabel(format!("digit {bad} is not below d = {level}")));
        }
        let mut raw = RawKet::zeros(level, digits.len())?;
        raw.add(digits, Complex64::new(1.0, 0.0));
        raw.normalize()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, digits: &[usize]) -> Complex64 {
        self.amplitudes[label_to_index(self.level, digits)]
    }

    /// The same ray multiplied by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let phase = Complex64::from_polar(1.0, theta);
        Self {
            level: self.level,
            particles: self.particles,
            amplitudes: self.amplitudes.iter().map(|c| c * phase).collect(),
        }
    }

    /// Reorders particles: particle `i` of the result is particle `order[i]`
    /// of `self` (both 0-based). `order` must be a permutation.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        let n = self.particles;
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&o| o >= n || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::BadSubset(format!("{order:?} is not a permutation of 0..{n}")));
        }
        let d = self.level;
        let positions: Vec<usize> = order.iter().map(|o| o + 1).collect();
        // offsets[i] = old flat index of new label i
        let offsets = subset_offsets(d, n, &positions);
        let amplitudes = offsets.iter().map(|&old| self.amplitudes[old]).collect();
        Ok(Self { level: d, particles: n, amplitudes })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.level != other.level || self.particles != other.particles {
            return Err(Error::ShapeMismatch(format!(
                "(d = {}, n = {}) vs (d = {}, n = {})",
                self.level, self.particles, other.level, other.particles
            )));
        }
        Ok(())
    }
}

/// Tensor product of `parts` in listed order.
pub fn tensor(parts: &[PureState]) -> Result<PureState> {
    let first = parts.first().ok_or_else(|| Error::InvalidInput("tensor of an empty list".into()))?;
    let level = first.level;
    if let Some(bad) = parts.iter().find(|p| p.level != level) {
        return Err(Error::LevelMismatch { expected: level, found: bad.level });
    }
    let particles: usize = parts.iter().map(|p| p.particles).sum();
    dimension(level, particles)?;
    let mut amplitudes = vec![Complex64::new(1.0, 0.0)];
    for part in parts {
        let mut next = Vec::with_capacity(amplitudes.len() * part.amplitudes.len());
        for a in &amplitudes {
            next.extend(part.amplitudes.iter().map(|b| a * b));
        }
        amplitudes = next;
    }
    PureState::new(level, particles, amplitudes)
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex64> {
    a.check_same_shape(b)?;
    Ok(a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| x.conj() * y).sum())
}

/// `|⟨a|b⟩|`.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    inner_product(a, b).map(|c| c.norm())
}

/// True iff `|⟨a|b⟩| ≥ 1 − tol`.
pub fn equal_up_to_global_phase(a: &PureState, b: &PureState, tol: f64) -> Result<bool> {
    Ok(fidelity(a, b)? >= 1.0 - tol)
}

/// Reduced density matrix on `keep`, tracing out every other particle.
pub fn partial_trace(state: &PureState, keep: &ParticleSet) -> Result<DensityMatrix> {
    keep.check_within(state.particles)?;
    let (d, n) = (state.level, state.particles);
    let kept = subset_offsets(d, n, keep.indices());
    let traced = subset_offsets(d, n, &keep.complement(n));
    let k = kept.len();
    let mut entries = vec![Complex64::new(0.0, 0.0); k * k];
    let psi = &state.amplitudes;
    for &r in &traced {
        for (i, &oi) in kept.iter().enumerate() {
            let a = psi[oi + r];
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (j, &oj) in kept.iter().enumerate() {
                entries[i * k + j] += a * psi[oj + r].conj();
            }
        }
    }
    Ok(DensityMatrix { level: d, particles: keep.len(), entries })
}

/// Result of projecting part of a state onto one basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub probability: f64,
    /// Post-measurement state of the unmeasured particles, ascending order.
    pub remainder: PureState,
}

/// State with its index space split into measured and unmeasured particles,
/// so that many basis vectors can be projected without re-deriving offsets.
#[derive(Clone, Debug)]
pub struct MeasurementSplit<'a> {
    state: &'a PureState,
    measured_count: usize,
    measured: Vec<usize>,
    rest: Vec<usize>,
    rest_count: usize,
}

impl<'a> MeasurementSplit<'a> {
    /// `measured` must leave at least one particle unmeasured.
    pub fn new(state: &'a PureState, measured: &ParticleSet) -> Result<Self> {
        measured.check_within(state.particles)?;
        let rest_positions = measured.complement(state.particles);
        if rest_positions.is_empty() {
            return Err(Error::BadSubset("measurement leaves no unmeasured particle".into()));
        }
        let (d, n) = (state.level, state.particles);
        Ok(Self {
            state,
            measured_count: measured.len(),
            measured: subset_offsets(d, n, measured.indices()),
            rest: subset_offsets(d, n, &rest_positions),
            rest_count: rest_positions.len(),
        })
    }

    /// `(⟨b| ⊗ I)|ψ⟩` without normalization.
    pub fn unnormalized_remainder(&self, basis_vector: &PureState) -> Result<RawKet> {
        if basis_vector.level != self.state.level || basis_vector.particles != self.measured_count {
            return Err(Error::ShapeMismatch(format!(
                "basis vector (d = {}, n = {}) against {} measured particles of level {}",
                basis_vector.level, basis_vector.particles, self.measured_count, self.state.level
            )));
        }
        let mut out = RawKet::zeros(self.state.level, self.rest_count)?;
        let psi = &self.state.amplitudes;
        for (&offset, b) in self.measured.iter().zip(&basis_vector.amplitudes) {
            if b.norm_sqr() == 0.0 {
                continue;
            }
            let bc = b.conj();
            for (slot, &r) in out.amplitudes.iter_mut().zip(&self.rest) {
                *slot += bc * psi[offset + r];
            }
        }
        Ok(out)
    }

    pub fn project(&self, basis_vector: &PureState) -> Result<Projection> {
        let raw = self.unnormalized_remainder(basis_vector)?;
        let norm = raw.norm();
        let probability = norm * norm;
        if probability < ZERO_PROBABILITY {
            return Err(Error::ZeroProbabilityOutcome { probability });
        }
        Ok(Projection { probability, remainder: raw.normalize()? })
    }
}

/// Projects the particles `measured` of `state` onto `basis_vector`.
pub fn project(state: &PureState, measured: &ParticleSet, basis_vector: &PureState) -> Result<Projection> {
    MeasurementSplit::new(state, measured)?.project(basis_vector)
}

/// Density matrix over `particles` qudits, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    level: usize,
    particles: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &PureState) -> Self {
        let psi = &state.amplitudes;
        let entries = psi.iter().flat_map(|a| psi.iter().map(move |b| a * b.conj())).collect();
        Self { level: state.level, particles: state.particles, entries }
    }

    /// Diagonal matrix with the given (real) diagonal.
    pub fn diagonal(level: usize, particles: usize, diagonal: &[f64]) -> Result<Self> {
        let dim = dimension(level, particles)?;
        if diagonal.len() != dim {
            return Err(Error::ShapeMismatch(format!("diagonal of length {} for dimension {dim}", diagonal.len())));
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &v) in diagonal.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(v, 0.0);
        }
        Ok(Self { level, particles, entries })
    }

    /// `I / d^k`.
    pub fn maximally_mixed(level: usize, particles: usize) -> Result<Self> {
        let dim = dimension(level, particles)?;
        Self::diagonal(level, particles, &vec![1.0 / dim as f64; dim])
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn dimension(&self) -> usize {
        (self.entries.len() as f64).sqrt().round() as usize
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dimension() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        let dim = self.dimension();
        (0..dim).map(|i| self.entries[i * dim + i]).sum()
    }

    /// Largest `|ρᵢⱼ − σᵢⱼ|`.
    pub fn max_abs_deviation(&self, other: &Self) -> Result<f64> {
        if self.level != other.level || self.particles != other.particles {
            return Err(Error::ShapeMismatch(format!(
                "density matrices over (d = {}, k = {}) and (d = {}, k = {})",
                self.level, self.particles, other.level, other.particles
            )));
        }
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Largest `|ρᵢⱼ − conj(ρⱼᵢ)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let dim = self.dimension();
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in i..dim {
                let dev = (self.entries[i * dim + j] - self.entries[j * dim + i].conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let dim = self.dimension();
        let m = DMatrix::from_fn(dim, dim, |i, j| (self.entries[i * dim + j] + self.entries[j * dim + i].conj()) * 0.5);
        m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Checks hermiticity and unit trace (within [`NORM_TOL`]) and positive
    /// semidefiniteness (within [`PSD_TOL`]).
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_deviation();
        if herm > NORM_TOL {
            return Err(Error::InvalidInput(format!("not Hermitian (deviation {herm:e})")));
        }
        let trace = self.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > NORM_TOL {
            return Err(Error::InvalidInput(format!("trace {trace} differs from 1")));
        }
        let min = self.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::InvalidInput(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell(sign: f64) -> PureState {
        PureState::new(2, 2, vec![c(1.0), c(0.0), c(0.0), c(sign)]).unwrap()
    }

    #[test]
    fn tensor_of_basis_states() {
        let s = tensor(&[PureState::basis(2, &[0]).unwrap(), PureState::basis(2, &[1]).unwrap()]).unwrap();
        assert_eq!(s.particles(), 2);
        assert_eq!(s.amplitudes()[1], c(1.0));
    }

    #[test]
    fn tensor_is_linear_in_each_factor() {
        let s = tensor(&[bell(1.0), PureState::basis(2, &[0]).unwrap()]).unwrap();
        let mut expected = vec![c(0.0); 8];
        expected[0b000] = c(FRAC_1_SQRT_2);
        expected[0b110] = c(FRAC_1_SQRT_2);
        for (a, b) in s.amplitudes().iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn tensor_of_plus_states_is_uniform() {
        let plus = PureState::new(2, 1, vec![c(1.0), c(1.0)]).unwrap();
        let s = tensor(&[plus.clone(), plus]).unwrap();
        assert!(s.amplitudes().iter().all(|a| (a - c(0.5)).norm() < 1e-15));
    }

    #[test]
    fn tensor_rejects_mixed_levels() {
        let err = tensor(&[PureState::basis(2, &[0]).unwrap(), PureState::basis(3, &[0]).unwrap()]).unwrap_err();
        assert_eq!(err, Error::LevelMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn inner_products() {
        let zz = PureState::basis(2, &[0, 0]).unwrap();
        assert!((inner_product(&zz, &zz).unwrap() - c(1.0)).norm() < 1e-15);
        assert!(inner_product(&bell(1.0), &bell(-1.0)).unwrap().norm() < 1e-15);
        let overlap = inner_product(&bell(1.0), &zz).unwrap();
        assert!((overlap - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!(matches!(inner_product(&zz, &PureState::basis(2, &[0]).unwrap()), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let rho = partial_trace(&bell(1.0), &ParticleSet::new([1]).unwrap()).unwrap();
        let target = DensityMatrix::maximally_mixed(2, 1).unwrap();
        assert!(rho.max_abs_deviation(&target).unwrap() < 1e-15);
        rho.validate().unwrap();
    }

    #[test]
    fn partial_trace_of_product_state() {
        let s = PureState::basis(2, &[0, 1]).unwrap();
        let rho = partial_trace(&s, &ParticleSet::new([2]).unwrap()).unwrap();
        let target = DensityMatrix::diagonal(2, 1, &[0.0, 1.0]).unwrap();
        assert_eq!(rho.max_abs_deviation(&target).unwrap(), 0.0);
    }

    #[test]
    fn partial_trace_rejects_bad_subsets() {
        let s = bell(1.0);
        assert!(matches!(partial_trace(&s, &ParticleSet::new([]).unwrap()), Err(Error::BadSubset(_))));
        assert!(matches!(partial_trace(&s, &ParticleSet::new([3]).unwrap()), Err(Error::BadSubset(_))));
        assert!(ParticleSet::new([0]).is_err());
        assert!(ParticleSet::new([2, 2]).is_err());
    }

    #[test]
    fn projection_on_bell_pair_product() {
        // Hand expansion: |φ⁺⟩₁₂|φ⁺⟩₃₄ = ½ Σ_bell |B⟩₁₃|B⟩₂₄, so projecting
        // {1,3} on φ⁺ leaves φ⁺ on {2,4} with probability 1/4.
        let s = tensor(&[bell(1.0), bell(1.0)]).unwrap();
        let p = project(&s, &ParticleSet::new([1, 3]).unwrap(), &bell(1.0)).unwrap();
        assert!((p.probability - 0.25).abs() < 1e-15);
        assert!(equal_up_to_global_phase(&p.remainder, &bell(1.0), 1e-12).unwrap());
    }

    #[test]
    fn deterministic_and_impossible_projections() {
        let s = PureState::basis(2, &[0, 0]).unwrap();
        let one = ParticleSet::new([1]).unwrap();
        let p = project(&s, &one, &PureState::basis(2, &[0]).unwrap()).unwrap();
        assert_eq!(p.probability, 1.0);
        assert_eq!(p.remainder, PureState::basis(2, &[0]).unwrap());
        assert!(matches!(
            project(&s, &one, &PureState::basis(2, &[1]).unwrap()),
            Err(Error::ZeroProbabilityOutcome { .. })
        ));
        assert!(matches!(project(&s, &one, &bell(1.0)), Err(Error::ShapeMismatch(_))));
        assert!(matches!(project(&s, &ParticleSet::new([1, 2]).unwrap(), &bell(1.0)), Err(Error::BadSubset(_))));
    }

    #[test]
    fn global_phase_equivalence() {
        let phi = bell(1.0);
        assert!(equal_up_to_global_phase(&phi, &phi.with_global_phase(std::f64::consts::PI), 1e-12).unwrap());
        assert!(!equal_up_to_global_phase(&phi, &bell(-1.0), 1e-9).unwrap());
        assert!(equal_up_to_global_phase(&phi, &phi.with_global_phase(std::f64::consts::FRAC_PI_3), 1e-12).unwrap());
    }

    #[test]
    fn permute_swaps_particles() {
        let s = PureState::basis(3, &[0, 1, 2]).unwrap();
        let p = s.permute(&[2, 0, 1]).unwrap();
        assert_eq!(p, PureState::basis(3, &[2, 0, 1]).unwrap());
        assert!(s.permute(&[0, 0, 1]).is_err());
    }

    #[test]
    fn dimension_cap() {
        assert_eq!(dimension(2, 22).unwrap(), 1 << 22);
        assert!(matches!(dimension(2, 23), Err(Error::DimensionTooLarge { .. })));
        assert!(matches!(dimension(5, 10), Err(Error::DimensionTooLarge { .. })));
        assert!(matches!(dimension(7, 500), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn zero_vector_is_not_a_state() {
        assert!(matches!(PureState::new(2, 1, vec![c(0.0), c(0.0)]), Err(Error::ZeroProbabilityOutcome { .. })));
        assert!(PureState::new(2, 1, vec![c(f64::NAN), c(1.0)]).is_err());
    }

    #[test]
    fn non_psd_matrix_fails_validation() {
        let bad = DensityMatrix::diagonal(2, 1, &[1.5, -0.5]).unwrap();
        assert!(bad.validate().is_err());
        assert!(bad.min_eigenvalue() < -0.4);
    }
}
