//! Named state families and complete measurement bases.
//!
//! Every constructor returns a normalized state. Two-level families use bit
//! labels; d-level maximally entangled states are labeled by a vector `u`
//! whose first entry is a phase index and whose remaining entries are
//! shifts:
//!
//! `|φ(u₁, …, u_m)⟩ = d^{-1/2} Σ_l ζ^{l·u₁} |l, l⊕u₂, …, l⊕u_m⟩`, `ζ = e^{2πi/d}`.

use std::collections::HashMap;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qudit::{dimension, inner_product, PureState, RawKet};

/// `ζ^exponent` with `ζ = e^{2πi/level}`; the exponent is reduced first.
pub fn root_of_unity(level: usize, exponent: i64) -> Complex64 {
    let reduced = exponent.rem_euclid(level as i64);
    Complex64::from_polar(1.0, TAU * reduced as f64 / level as f64)
}

/// `a ⊕ b` mod `level`.
pub fn add_mod(a: usize, b: usize, level: usize) -> usize {
    (a % level + b % level) % level
}

/// `a ⊖ b` mod `level`.
pub fn sub_mod(a: usize, b: usize, level: usize) -> usize {
    (a % level + level - b % level) % level
}

fn check_bit(name: &str, value: u8) -> Result<()> {
    if value > 1 {
        return Err(Error::BadLabel(format!("{name} must be 0 or 1, got {value}")));
    }
    Ok(())
}

/// Relative sign between the two branches of a cat/GHZ superposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(−1)^bit`.
    pub fn from_bit(bit: u8) -> Self {
        if bit & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// `(|0 a⟩ + (−1)^λ |1 ā⟩)/√2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BellLabel {
    pub lambda: u8,
    pub a: u8,
}

impl BellLabel {
    pub fn new(lambda: u8, a: u8) -> Result<Self> {
        check_bit("lambda", lambda)?;
        check_bit("a", a)?;
        Ok(Self { lambda, a })
    }

    /// The same state as a two-particle GHZ basis label.
    pub fn to_ghz(self) -> GhzLabel {
        GhzLabel::new(Sign::from_bit(self.lambda), vec![self.a]).expect("bits validated")
    }
}

/// `(⊗|aᵢ⟩ + (−1)^λ ⊗|āᵢ⟩)/√2` over `m ≥ 2` qubits.
///
/// `(a, λ)` and `(ā, λ)` name the same ray; [`CatLabel::canonical`] picks the
/// representative with `a₁ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CatLabel {
    bits: Vec<u8>,
    lambda: u8,
}

impl CatLabel {
    pub fn new(bits: Vec<u8>, lambda: u8) -> Result<Self> {
        if bits.len() < 2 {
            return Err(Error::BadLabel(format!("a cat state needs m >= 2 particles, got {}", bits.len())));
        }
        for &b in &bits {
            check_bit("cat bit", b)?;
        }
        check_bit("lambda", lambda)?;
        Ok(Self { bits, lambda })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn lambda(&self) -> u8 {
        self.lambda
    }

    pub fn particles(&self) -> usize {
        self.bits.len()
    }

    /// Representative with first bit 0, plus the global phase relating it to
    /// `self`: `cat(self) = phase · cat(canonical)`.
    pub fn canonical(&self) -> (CatLabel, f64) {
        if self.bits[0] == 0 {
            (self.clone(), 1.0)
        } else {
            let bits = self.bits.iter().map(|b| 1 - b).collect();
            (CatLabel { bits, lambda: self.lambda }, Sign::from_bit(self.lambda).factor())
        }
    }

    /// GHZ basis label of the same ray.
    pub fn to_ghz(&self) -> GhzLabel {
        let (canon, _) = self.canonical();
        GhzLabel::new(Sign::from_bit(canon.lambda), canon.bits[1..].to_vec()).expect("canonical cat bits are valid")
    }
}

/// `|G_p^±⟩ = (|0 a₂…aₙ⟩ ± |1 ā₂…āₙ⟩)/√2` with `p = Σ aᵢ 2^{n−i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GhzLabel {
    particles: usize,
    index: usize,
    sign: Sign,
    bits: Vec<u8>,
}

impl GhzLabel {
    /// `bits` are `a₂…aₙ`; the particle count is `bits.len() + 1`.
    pub fn new(sign: Sign, bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::BadLabel("a GHZ state needs n >= 2 particles".into()));
        }
        for &b in &bits {
            check_bit("GHZ bit", b)?;
        }
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Ok(Self { particles: bits.len() + 1, index, sign, bits })
    }

    pub fn from_index(particles: usize, sign: Sign, index: usize) -> Result<Self> {
        if particles < 2 || particles > usize::BITS as usize || index >> (particles - 1) != 0 {
            return Err(Error::BadLabel(format!("GHZ index {index} out of range for n = {particles}")));
        }
        let bits = (0..particles - 1).rev().map(|shift| ((index >> shift) & 1) as u8).collect();
        Self::new(sign, bits)
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// `a₂…aₙ`.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Full bit string `0 a₂ … aₙ` of the first branch.
    pub fn branch(&self) -> Vec<u8> {
        std::iter::once(0).chain(self.bits.iter().copied()).collect()
    }

    pub fn with_sign(&self, sign: Sign) -> Self {
        Self { sign, ..self.clone() }
    }
}

impl fmt::Display for GhzLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.particles == 2 {
            let name = if self.bits[0] == 0 { "phi" } else { "psi" };
            return write!(f, "{name}{}", self.sign.symbol());
        }
        write!(f, "G{}(", self.sign.symbol())?;
        for b in self.branch() {
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// Label `(u₁, …, u_m)` of a d-level maximally entangled state; entries are
/// reduced mod d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaxEntLabel {
    level: usize,
    u: Vec<usize>,
}

impl MaxEntLabel {
    pub fn new(level: usize, u: Vec<usize>) -> Result<Self> {
        if level < 2 {
            return Err(Error::BadLabel(format!("level must be at least 2, got {level}")));
        }
        if u.is_empty() {
            return Err(Error::BadLabel("a maximally entangled label needs m >= 1".into()));
        }
        let u = u.into_iter().map(|x| x % level).collect();
        Ok(Self { level, u })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn particles(&self) -> usize {
        self.u.len()
    }
}

impl fmt::Display for MaxEntLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi(")?;
        for (i, x) in self.u.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Label of a basis member; also the outcome label of a measurement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Ghz(GhzLabel),
    MaxEnt(MaxEntLabel),
    Computational(Vec<usize>),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Ghz(g) => g.fmt(f),
            BasisLabel::MaxEnt(m) => m.fmt(f),
            BasisLabel::Computational(digits) => {
                write!(f, "|")?;
                for d in digits {
                    write!(f, "{d}")?;
                }
                write!(f, ">")
            }
        }
    }
}

pub fn bell(label: BellLabel) -> PureState {
    binary_cat(&[0, label.a], Sign::from_bit(label.lambda)).expect("two-qubit state fits")
}

pub fn cat(label: &CatLabel) -> PureState {
    binary_cat(&label.bits, Sign::from_bit(label.lambda)).expect("cat labels are capped by callers")
}

/// `(|b⟩ ± |b̄⟩)/√2` for any nonempty bit string. Unlike [`cat`] this allows
/// a single particle, where it gives `|±⟩`.
pub fn binary_cat(bits: &[u8], sign: Sign) -> Result<PureState> {
    for &b in bits {
        check_bit("bit", b)?;
    }
    let mut raw = RawKet::zeros(2, bits.len())?;
    let first: Vec<usize> = bits.iter().map(|&b| b as usize).collect();
    let second: Vec<usize> = bits.iter().map(|&b| 1 - b as usize).collect();
    raw.add(&first, Complex64::new(FRAC_1_SQRT_2, 0.0));
    raw.add(&second, Complex64::new(sign.factor() * FRAC_1_SQRT_2, 0.0));
    raw.normalize()
}

pub fn ghz(label: &GhzLabel) -> Result<PureState> {
    binary_cat(&label.branch(), label.sign)
}

/// All `2ⁿ` GHZ states on `n ≥ 2` qubits, ordered by index then sign.
pub fn ghz_basis(particles: usize) -> Result<BasisSet> {
    if particles < 2 {
        return Err(Error::BadLabel("a GHZ basis needs n >= 2 particles".into()));
    }
    dimension(2, particles)?;
    let mut members = Vec::with_capacity(1 << particles);
    for index in 0..1usize << (particles - 1) {
        for sign in [Sign::Plus, Sign::Minus] {
            let label = GhzLabel::from_index(particles, sign, index)?;
            let state = ghz(&label)?;
            members.push((BasisLabel::Ghz(label), state));
        }
    }
    Ok(BasisSet { level: 2, particles, members })
}

/// `d^{-1/2} Σ_l ζ^{l·phase} |l⊕s₁, …, l⊕s_m⟩`.
pub fn shifted_max_entangled(level: usize, phase: usize, shifts: &[usize]) -> Result<PureState> {
    let mut raw = RawKet::zeros(level, shifts.len())?;
    let amp = (level as f64).sqrt().recip();
    let mut digits = vec![0; shifts.len()];
    for l in 0..level {
        for (slot, &s) in digits.iter_mut().zip(shifts) {
            *slot = add_mod(l, s, level);
        }
        raw.add(&digits, root_of_unity(level, (l * phase) as i64) * amp);
    }
    raw.normalize()
}

pub fn max_entangled(label: &MaxEntLabel) -> Result<PureState> {
    let mut shifts = label.u.clone();
    shifts[0] = 0;
    shifted_max_entangled(label.level, label.u[0], &shifts)
}

/// The `d^m` states `|φ(u)⟩`, ordered lexicographically by `u`.
pub fn max_entangled_basis(level: usize, particles: usize) -> Result<BasisSet> {
    let dim = dimension(level, particles)?;
    let mut members = Vec::with_capacity(dim);
    for index in 0..dim {
        let u = crate::qudit::index_to_label(level, particles, index);
        let label = MaxEntLabel::new(level, u)?;
        let state = max_entangled(&label)?;
        members.push((BasisLabel::MaxEnt(label), state));
    }
    Ok(BasisSet { level, particles, members })
}

pub fn computational_basis(level: usize, particles: usize) -> Result<BasisSet> {
    let dim = dimension(level, particles)?;
    let members = (0..dim)
        .map(|index| {
            let digits = crate::qudit::index_to_label(level, particles, index);
            let state = PureState::basis(level, &digits)?;
            Ok((BasisLabel::Computational(digits), state))
        })
        .collect::<Result<_>>()?;
    Ok(BasisSet { level, particles, members })
}

/// Identifier of a measurement basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Ghz { particles: usize },
    MaxEntangled { level: usize, particles: usize },
    Computational { level: usize, particles: usize },
}

impl BasisKind {
    pub fn level(&self) -> usize {
        match *self {
            BasisKind::Ghz { .. } => 2,
            BasisKind::MaxEntangled { level, .. } | BasisKind::Computational { level, .. } => level,
        }
    }

    pub fn particles(&self) -> usize {
        match *self {
            BasisKind::Ghz { particles }
            | BasisKind::MaxEntangled { particles, .. }
            | BasisKind::Computational { particles, .. } => particles,
        }
    }

    pub fn build(&self) -> Result<BasisSet> {
        match *self {
            BasisKind::Ghz { particles } => ghz_basis(particles),
            BasisKind::MaxEntangled { level, particles } => max_entangled_basis(level, particles),
            BasisKind::Computational { level, particles } => computational_basis(level, particles),
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::Ghz { particles } => write!(f, "ghz(n={particles})"),
            BasisKind::MaxEntangled { level, particles } => {
                write!(f, "max-entangled(d={level}, n={particles})")
            }
            BasisKind::Computational { level, particles } => {
                write!(f, "computational(d={level}, n={particles})")
            }
        }
    }
}

/// Orthonormal complete basis over `particles` qudits.
#[derive(Clone, Debug)]
pub struct BasisSet {
    level: usize,
    particles: usize,
    members: Vec<(BasisLabel, PureState)>,
}

impl BasisSet {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn members(&self) -> &[(BasisLabel, PureState)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, label: &BasisLabel) -> Option<&PureState> {
        self.members.iter().find(|(l, _)| l == label).map(|(_, s)| s)
    }

    /// `max |⟨bᵢ|bⱼ⟩ − δᵢⱼ|` over all member pairs.
    pub fn gram_deviation(&self) -> f64 {
        let sparse: Vec<Vec<(usize, Complex64)>> = self.members.iter().map(|(_, s)| nonzeros(s)).collect();
        let mut worst: f64 = 0.0;
        for (i, (_, a)) in self.members.iter().enumerate() {
            for (j, (_, b)) in self.members.iter().enumerate().skip(i) {
                let overlap: Complex64 = if sparse[i].len() <= sparse[j].len() {
                    sparse[i].iter().map(|&(k, x)| x.conj() * b.amplitudes()[k]).sum()
                } else {
                    sparse[j].iter().map(|&(k, y)| a.amplitudes()[k].conj() * y).sum()
                };
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((overlap - target).norm());
            }
        }
        worst
    }

    /// `max |(Σ_b |b⟩⟨b|)ᵢⱼ − δᵢⱼ|`.
    pub fn completeness_deviation(&self) -> f64 {
        let dim = match dimension(self.level, self.particles) {
            Ok(d) => d,
            Err(_) => return f64::INFINITY,
        };
        let mut sum: HashMap<(usize, usize), Complex64> = HashMap::new();
        for (_, state) in &self.members {
            let nz = nonzeros(state);
            for &(i, a) in &nz {
                for &(j, b) in &nz {
                    *sum.entry((i, j)).or_default() += a * b.conj();
                }
            }
        }
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            let diag = sum.remove(&(i, i)).unwrap_or_default();
            worst = worst.max((diag - 1.0).norm());
        }
        sum.values().map(|c| c.norm()).fold(worst, f64::max)
    }

    /// Member overlaps, used for relabeling checks between bases.
    pub fn overlap(&self, i: usize, other: &PureState) -> Result<Complex64> {
        inner_product(&self.members[i].1, other)
    }
}

fn nonzeros(state: &PureState) -> Vec<(usize, Complex64)> {
    state.amplitudes().iter().enumerate().filter(|(_, c)| c.norm_sqr() > 0.0).map(|(i, &c)| (i, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::{equal_up_to_global_phase, fidelity};

    fn ket(level: usize, entries: &[(&[usize], Complex64)]) -> PureState {
        let n = entries[0].0.len();
        let mut raw = RawKet::zeros(level, n).unwrap();
        for (digits, c) in entries {
            raw.add(digits, *c);
        }
        raw.normalize().unwrap()
    }

    fn assert_close(a: &PureState, b: &PureState) {
        assert_eq!((a.level(), a.particles()), (b.level(), b.particles()));
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < 1e-15, "{a:?} vs {b:?}");
        }
    }

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn phi_plus() -> PureState {
        ket(2, &[(&[0, 0], r(1.0)), (&[1, 1], r(1.0))])
    }

    fn phi_minus() -> PureState {
        ket(2, &[(&[0, 0], r(1.0)), (&[1, 1], r(-1.0))])
    }

    fn psi_plus() -> PureState {
        ket(2, &[(&[0, 1], r(1.0)), (&[1, 0], r(1.0))])
    }

    fn psi_minus() -> PureState {
        ket(2, &[(&[0, 1], r(1.0)), (&[1, 0], r(-1.0))])
    }

    #[test]
    fn bell_labels_match_named_states() {
        assert_close(&bell(BellLabel::new(0, 0).unwrap()), &phi_plus());
        assert_close(&bell(BellLabel::new(1, 0).unwrap()), &phi_minus());
        assert_close(&bell(BellLabel::new(0, 1).unwrap()), &psi_plus());
        assert_close(&bell(BellLabel::new(1, 1).unwrap()), &psi_minus());
        assert!(BellLabel::new(2, 0).is_err());
    }

    #[test]
    fn cat_states() {
        assert_close(&cat(&CatLabel::new(vec![0, 0], 0).unwrap()), &phi_plus());
        assert_close(
            &cat(&CatLabel::new(vec![0, 0, 0], 0).unwrap()),
            &ket(2, &[(&[0, 0, 0], r(1.0)), (&[1, 1, 1], r(1.0))]),
        );
        assert_close(
            &cat(&CatLabel::new(vec![0, 1, 0], 1).unwrap()),
            &ket(2, &[(&[0, 1, 0], r(1.0)), (&[1, 0, 1], r(-1.0))]),
        );
        assert!(matches!(CatLabel::new(vec![0], 0), Err(Error::BadLabel(_))));
    }

    #[test]
    fn cat_canonical_label_differs_by_global_phase() {
        for lambda in 0..2 {
            let label = CatLabel::new(vec![1, 0, 1], lambda).unwrap();
            let (canon, phase) = label.canonical();
            assert_eq!(canon.bits(), &[0, 1, 0]);
            let lhs = cat(&label);
            let rhs = cat(&canon);
            for (a, b) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
                assert!((a - b * phase).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn all_zero_cat_equals_ghz_member() {
        for m in 2..6 {
            for lambda in 0..2 {
                let c = cat(&CatLabel::new(vec![0; m], lambda).unwrap());
                let g = ghz(&GhzLabel::new(Sign::from_bit(lambda), vec![0; m - 1]).unwrap()).unwrap();
                assert_eq!(c, g);
            }
        }
    }

    #[test]
    fn ghz_basis_two_particles_is_bell_basis() {
        let basis = ghz_basis(2).unwrap();
        let bells = [phi_plus(), phi_minus(), psi_plus(), psi_minus()];
        assert_eq!(basis.len(), 4);
        for (member, expected) in basis.members().iter().zip(&bells) {
            assert_close(&member.1, expected);
        }
        let names: Vec<String> = basis.members().iter().map(|(l, _)| l.to_string()).collect();
        assert_eq!(names, ["phi+", "phi-", "psi+", "psi-"]);
    }

    #[test]
    fn ghz_basis_three_particles_is_orthonormal() {
        let basis = ghz_basis(3).unwrap();
        assert_eq!(basis.len(), 8);
        assert!(basis.gram_deviation() < 1e-12);
        assert!(basis.completeness_deviation() < 1e-12);
        assert!(ghz_basis(1).is_err());
    }

    #[test]
    fn ghz_index_and_bits_agree() {
        let label = GhzLabel::new(Sign::Minus, vec![1, 1]).unwrap();
        assert_eq!(label.index(), 3);
        assert_eq!(GhzLabel::from_index(3, Sign::Minus, 3).unwrap(), label);
        assert_close(&ghz(&label).unwrap(), &ket(2, &[(&[0, 1, 1], r(1.0)), (&[1, 0, 0], r(-1.0))]));
        assert!(GhzLabel::from_index(3, Sign::Plus, 4).is_err());
    }

    #[test]
    fn max_entangled_examples() {
        let l = |d, u: &[usize]| max_entangled(&MaxEntLabel::new(d, u.to_vec()).unwrap()).unwrap();
        assert!(equal_up_to_global_phase(&l(2, &[0, 0]), &phi_plus(), 1e-12).unwrap());
        // (1/√2)(|01⟩ + ζ|10⟩) with ζ = −1 is ψ⁻.
        assert!(equal_up_to_global_phase(&l(2, &[1, 1]), &psi_minus(), 1e-12).unwrap());
        let three = ket(3, &[(&[0, 0], r(1.0)), (&[1, 1], r(1.0)), (&[2, 2], r(1.0))]);
        assert!(equal_up_to_global_phase(&l(3, &[0, 0]), &three, 1e-12).unwrap());
    }

    #[test]
    fn max_entangled_bases_are_orthonormal_and_complete() {
        for (d, m) in [(2, 1), (2, 2), (3, 2), (2, 3), (5, 2), (3, 3)] {
            let basis = max_entangled_basis(d, m).unwrap();
            assert_eq!(basis.len(), d.pow(m as u32));
            assert!(basis.gram_deviation() < 1e-12, "d={d} m={m}");
            assert!(basis.completeness_deviation() < 1e-12, "d={d} m={m}");
        }
    }

    #[test]
    fn qubit_max_entangled_basis_is_relabeled_ghz_basis() {
        let me = max_entangled_basis(2, 3).unwrap();
        let g = ghz_basis(3).unwrap();
        for (_, s) in me.members() {
            let matches = g.members().iter().filter(|(_, t)| fidelity(s, t).unwrap() > 1.0 - 1e-12).count();
            assert_eq!(matches, 1);
        }
    }

    #[test]
    fn qubit_max_entangled_pairs_map_onto_bell_states() {
        let bells = [phi_plus(), phi_minus(), psi_plus(), psi_minus()];
        let mut hit = [false; 4];
        for u1 in 0..2 {
            for u2 in 0..2 {
                let s = max_entangled(&MaxEntLabel::new(2, vec![u1, u2]).unwrap()).unwrap();
                let which: Vec<usize> =
                    (0..4).filter(|&i| equal_up_to_global_phase(&s, &bells[i], 1e-12).unwrap()).collect();
                assert_eq!(which.len(), 1);
                assert!(!std::mem::replace(&mut hit[which[0]], true));
            }
        }
    }

    #[test]
    fn incomplete_basis_is_detected() {
        let mut basis = ghz_basis(2).unwrap();
        basis.members.pop();
        // Σ over the rest is I − |ψ⁻⟩⟨ψ⁻|.
        assert!((basis.completeness_deviation() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(add_mod(4, 3, 5), 2);
        assert_eq!(sub_mod(1, 3, 5), 3);
        assert!((root_of_unity(3, -1) - root_of_unity(3, 2)).norm() < 1e-15);
    }
}
