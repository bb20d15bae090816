//! Dense qudit state vectors, named entangled states and measurement bases,
//! quantum information maskers, and the scenario/outcome types shared by the
//! swapping predictors and the brute-force oracle.

pub mod error;
pub mod masking;
pub mod qudit;
pub mod scenario;
pub mod states;

pub use error::{Error, Result};
pub use masking::{
    mask_li_qubit, mask_li_qudit, mask_modi_qubit, mask_modi_qudit, single_particle_subsystems, verify_masking,
    MaskingReport, PhaseAmplitudeInput, QuditAmplitudes, SubsystemMarginals,
};
pub use qudit::{
    equal_up_to_global_phase, fidelity, inner_product, partial_trace, project, tensor, ComplexAmplitude, DensityMatrix,
    MeasurementSplit, ParticleSet, Projection, PureState, RawKet,
};
pub use scenario::{InputState, Outcome, OutcomeDistribution, PlacedState, SwapScenario};
pub use states::{
    bell, binary_cat, cat, ghz, ghz_basis, max_entangled, max_entangled_basis, BasisKind, BasisLabel, BasisSet,
    BellLabel, CatLabel, GhzLabel, MaxEntLabel, Sign,
};
