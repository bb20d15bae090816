//! Scenario files: a versioned TOML description of one swap or masking check.
//!
//! ```toml
//! format = "maskswap-scenario/1"
//! predictor = "bell-bell"
//!
//! [[inputs]]
//! kind = "bell"
//! lambda = 0
//! a = 1
//!
//! [[inputs]]
//! kind = "bell"
//! lambda = 1
//! a = 0
//! ```
//!
//! Unknown fields are rejected. `measured`, `basis` and `level` are optional;
//! when present they must agree with what the predictor implies.

use std::fmt;
use std::path::{Path, PathBuf};

use maskswap_core::{
    BasisKind, BellLabel, CatLabel, DensityMatrix, InputState, MaxEntLabel, ParticleSet, PhaseAmplitudeInput,
    PureState, QuditAmplitudes,
};
use maskswap_swapping::{
    predict_bell_bell, predict_cat_bell_clear, predict_cat_bell_karimipour, predict_cat_swap, predict_li_masked_swap,
    predict_masked_ghz_swap, predict_masked_qudit_swap, Prediction,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const SCENARIO_FORMAT: &str = "maskswap-scenario/1";
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictorKind {
    BellBell,
    CatSwap,
    /// Double-sum cat–pair form only.
    Karimipour,
    /// Direct `(v₁, v₂)` cat–pair form only.
    Clear,
    /// Both cat–pair forms, each against the oracle and against each other.
    CatBell,
    MaskedGhz,
    MaskedQudit,
    LiMasked,
    /// Marginal check over a family of masked states.
    Masking,
}

impl PredictorKind {
    pub fn name(self) -> &'static str {
        match self {
            PredictorKind::BellBell => "bell-bell",
            PredictorKind::CatSwap => "cat-swap",
            PredictorKind::Karimipour => "karimipour",
            PredictorKind::Clear => "clear",
            PredictorKind::CatBell => "cat-bell",
            PredictorKind::MaskedGhz => "masked-ghz",
            PredictorKind::MaskedQudit => "masked-qudit",
            PredictorKind::LiMasked => "li-masked",
            PredictorKind::Masking => "masking",
        }
    }

    /// Family the outcome counts toward when confirming errata.
    pub fn family(self) -> &'static str {
        match self {
            PredictorKind::Karimipour | PredictorKind::Clear | PredictorKind::CatBell => "karimipour",
            other => other.name(),
        }
    }
}

impl fmt::Display for PredictorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisSpec {
    Ghz,
    MaxEntangled,
    Computational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InputSpec {
    Bell {
        lambda: u8,
        a: u8,
    },
    Cat {
        bits: Vec<u8>,
        lambda: u8,
        /// Number of leading particles measured (cat swap only).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        measure: Option<usize>,
    },
    MaxEntangled {
        level: usize,
        u: Vec<usize>,
    },
    ModiQubit {
        l: u8,
    },
    ModiQudit {
        eta: Vec<f64>,
        theta: Vec<f64>,
    },
    Li {
        /// `[re, im]` per amplitude.
        alpha: Vec<[f64; 2]>,
    },
}

impl InputSpec {
    fn kind(&self) -> &'static str {
        match self {
            InputSpec::Bell { .. } => "bell",
            InputSpec::Cat { .. } => "cat",
            InputSpec::MaxEntangled { .. } => "max-entangled",
            InputSpec::ModiQubit { .. } => "modi-qubit",
            InputSpec::ModiQudit { .. } => "modi-qudit",
            InputSpec::Li { .. } => "li",
        }
    }

    pub fn to_input(&self) -> maskswap_core::Result<InputState> {
        Ok(match self {
            InputSpec::Bell { lambda, a } => InputState::Bell(BellLabel::new(*lambda, *a)?),
            InputSpec::Cat { bits, lambda, .. } => InputState::Cat(CatLabel::new(bits.clone(), *lambda)?),
            InputSpec::MaxEntangled { level, u } => InputState::MaxEnt(MaxEntLabel::new(*level, u.clone())?),
            InputSpec::ModiQubit { l } => InputState::ModiQubit(*l),
            InputSpec::ModiQudit { eta, theta } => {
                InputState::ModiQudit(PhaseAmplitudeInput::new(eta.clone(), theta.clone())?)
            }
            InputSpec::Li { alpha } => {
                InputState::Li(QuditAmplitudes::new(alpha.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())?)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub predictor: PredictorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    /// Cat particle joined to the pair (cat–pair predictors).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisSpec>,
    /// Masking only; defaults to every single particle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsystems: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub inputs: Vec<InputSpec>,
}

impl ScenarioFile {
    pub fn new(predictor: PredictorKind, name: impl Into<String>, inputs: Vec<InputSpec>) -> Self {
        Self {
            format: SCENARIO_FORMAT.into(),
            name: Some(name.into()),
            predictor,
            level: None,
            k: None,
            measured: None,
            basis: None,
            subsystems: None,
            tolerance: None,
            inputs,
        }
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.predictor.name().to_string())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario files always serialize")
    }
}

/// A scenario-file problem, located when possible.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{location}: {message}")]
pub struct SchemaError {
    pub location: String,
    pub message: String,
}

impl SchemaError {
    fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self { location: location.into(), message: message.into() }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |nl| before.len() - nl - 1) + 1;
    (line, col)
}

/// Parses one scenario file; `origin` names it in diagnostics.
pub fn parse_scenario(text: &str, origin: &str) -> Result<ScenarioFile, SchemaError> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let (line, col) = line_col(text, span.start);
                format!("{origin}:{line}:{col}")
            }
            None => origin.to_string(),
        };
        SchemaError::new(location, e.message().trim().to_string())
    })?;
    if file.format != SCENARIO_FORMAT {
        let offset = text.find("format").unwrap_or(0);
        let (line, col) = line_col(text, offset);
        return Err(SchemaError::new(
            format!("{origin}:{line}:{col}"),
            format!("unsupported format {:?}, expected {SCENARIO_FORMAT:?}", file.format),
        ));
    }
    Ok(file)
}

/// Reads a scenario file, or every `*.toml` file under a directory (sorted).
pub fn load_scenarios(path: &Path) -> Result<Vec<(PathBuf, ScenarioFile)>, SchemaError> {
    let read = |p: &Path| -> Result<(PathBuf, ScenarioFile), SchemaError> {
        let text = std::fs::read_to_string(p)
            .map_err(|e| SchemaError::new(p.display().to_string(), format!("cannot read: {e}")))?;
        Ok((p.to_path_buf(), parse_scenario(&text, &p.display().to_string())?))
    };
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| SchemaError::new(path.display().to_string(), format!("cannot list: {e}")))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "toml"))
            .collect();
        files.sort();
        if files.is_empty() {
            return Err(SchemaError::new(path.display().to_string(), "no .toml scenario files"));
        }
        files.iter().map(|p| read(p)).collect()
    } else {
        Ok(vec![read(path)?])
    }
}

/// What a scenario file asks to run.
#[derive(Clone, Debug)]
pub enum Prepared {
    /// One or two closed forms over the same scenario.
    Swap { predictions: Vec<Prediction> },
    Masking {
        family: Vec<PureState>,
        subsystems: Vec<ParticleSet>,
        /// Expected single-particle marginal per member, when every subsystem
        /// is a single particle.
        expected: Option<Vec<DensityMatrix>>,
    },
}

fn bits_of<'a>(inputs: &'a [InputSpec], want: &str) -> Result<Vec<&'a InputSpec>, String> {
    match inputs.iter().find(|i| i.kind() != want) {
        Some(bad) => Err(format!("predictor needs {want} inputs, found {}", bad.kind())),
        None => Ok(inputs.iter().collect()),
    }
}

fn err<T>(e: maskswap_core::Error) -> Result<T, String> {
    Err(e.to_string())
}

impl ScenarioFile {
    /// Validates the file against its predictor and builds the work item.
    pub fn prepare(&self) -> Result<Prepared, String> {
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(format!("tolerance must be positive, got {t}"));
            }
        }
        if self.inputs.is_empty() {
            return Err("no inputs".into());
        }
        if self.predictor != PredictorKind::CatBell
            && self.predictor != PredictorKind::Karimipour
            && self.predictor != PredictorKind::Clear
            && self.k.is_some()
        {
            return Err("`k` only applies to cat-pair predictors".into());
        }
        if self.predictor != PredictorKind::Masking && self.subsystems.is_some() {
            return Err("`subsystems` only applies to the masking check".into());
        }
        let prepared = match self.predictor {
            PredictorKind::Masking => self.prepare_masking()?,
            _ => Prepared::Swap { predictions: self.predictions()? },
        };
        if let Prepared::Swap { predictions } = &prepared {
            let scenario = predictions[0].scenario();
            if let Some(level) = self.level {
                if level != scenario.level() {
                    return Err(format!("level = {level} but the inputs have level {}", scenario.level()));
                }
            }
            if let Some(measured) = &self.measured {
                if measured != scenario.measured().indices() {
                    return Err(format!(
                        "measured = {measured:?} but the predictor measures {:?}",
                        scenario.measured().indices()
                    ));
                }
            }
            if let Some(basis) = self.basis {
                let implied = match scenario.basis() {
                    BasisKind::Ghz { .. } => BasisSpec::Ghz,
                    BasisKind::MaxEntangled { .. } => BasisSpec::MaxEntangled,
                    BasisKind::Computational { .. } => BasisSpec::Computational,
                };
                if basis != implied {
                    return Err(format!("basis = {basis:?} but the predictor measures in {}", scenario.basis()));
                }
            }
        } else if self.measured.is_some() || self.basis.is_some() {
            return Err("`measured` and `basis` do not apply to the masking check".into());
        }
        Ok(prepared)
    }

    fn predictions(&self) -> Result<Vec<Prediction>, String> {
        let inputs = &self.inputs;
        let one = |p: maskswap_core::Result<Prediction>| p.map(|p| vec![p]).map_err(|e| e.to_string());
        match self.predictor {
            PredictorKind::BellBell => {
                bits_of(inputs, "bell")?;
                let [InputSpec::Bell { lambda: l1, a: a1 }, InputSpec::Bell { lambda: l2, a: a2 }] = &inputs[..] else {
                    return Err(format!("bell-bell needs exactly two inputs, got {}", inputs.len()));
                };
                let b1 = BellLabel::new(*l1, *a1).or_else(err)?;
                let b2 = BellLabel::new(*l2, *a2).or_else(err)?;
                one(predict_bell_bell(b1, b2))
            }
            PredictorKind::CatSwap => {
                bits_of(inputs, "cat")?;
                let mut labels = Vec::new();
                let mut k = Vec::new();
                for (i, input) in inputs.iter().enumerate() {
                    let InputSpec::Cat { bits, lambda, measure } = input else { unreachable!() };
                    labels.push(CatLabel::new(bits.clone(), *lambda).or_else(err)?);
                    k.push(measure.ok_or_else(|| format!("cat input {} needs `measure`", i + 1))?);
                }
                one(predict_cat_swap(&labels, &k))
            }
            PredictorKind::Karimipour | PredictorKind::Clear | PredictorKind::CatBell => {
                bits_of(inputs, "max-entangled")?;
                let [InputSpec::MaxEntangled { level: d1, u: u1 }, InputSpec::MaxEntangled { level: d2, u: u2 }] =
                    &inputs[..]
                else {
                    return Err(format!("cat-pair predictors need exactly two inputs, got {}", inputs.len()));
                };
                let cat = MaxEntLabel::new(*d1, u1.clone()).or_else(err)?;
                let pair = MaxEntLabel::new(*d2, u2.clone()).or_else(err)?;
                let k = self.k.ok_or("cat-pair predictors need `k`")?;
                let mut out = Vec::new();
                if self.predictor != PredictorKind::Clear {
                    out.push(predict_cat_bell_karimipour(&cat, &pair, k).or_else(err)?);
                }
                if self.predictor != PredictorKind::Karimipour {
                    out.push(predict_cat_bell_clear(&cat, &pair, k).or_else(err)?);
                }
                Ok(out)
            }
            PredictorKind::MaskedGhz => {
                bits_of(inputs, "modi-qubit")?;
                let lambda: Vec<u8> =
                    inputs.iter().map(|i| if let InputSpec::ModiQubit { l } = i { *l } else { 0 }).collect();
                if let Some(bad) = lambda.iter().find(|&&l| l > 1) {
                    return Err(format!("qubit masker input must be 0 or 1, got {bad}"));
                }
                one(predict_masked_ghz_swap(&lambda))
            }
            PredictorKind::MaskedQudit => {
                bits_of(inputs, "modi-qudit")?;
                let parsed = inputs
                    .iter()
                    .map(|i| match i.to_input() {
                        Ok(InputState::ModiQudit(p)) => Ok(p),
                        Ok(_) => unreachable!(),
                        Err(e) => Err(e.to_string()),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                one(predict_masked_qudit_swap(&parsed))
            }
            PredictorKind::LiMasked => {
                bits_of(inputs, "li")?;
                let parsed = inputs
                    .iter()
                    .map(|i| match i.to_input() {
                        Ok(InputState::Li(a)) => Ok(a),
                        Ok(_) => unreachable!(),
                        Err(e) => Err(e.to_string()),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                one(predict_li_masked_swap(&parsed))
            }
            PredictorKind::Masking => unreachable!(),
        }
    }

    fn prepare_masking(&self) -> Result<Prepared, String> {
        let kind = self.inputs[0].kind();
        if !matches!(kind, "modi-qubit" | "modi-qudit" | "li") {
            return Err(format!("masking needs masker inputs, found {kind}"));
        }
        bits_of(&self.inputs, kind)?;
        let states = self
            .inputs
            .iter()
            .map(|i| i.to_input().and_then(|s| s.state()))
            .collect::<maskswap_core::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        let n = states[0].particles();
        let subsystems = match &self.subsystems {
            Some(sets) => sets
                .iter()
                .map(|s| ParticleSet::new(s.iter().copied()).and_then(|p| p.check_within(n).map(|_| p)))
                .collect::<maskswap_core::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?,
            None => maskswap_core::single_particle_subsystems(n),
        };
        // Single particles of the phase-amplitude masker keep diag(η²); every
        // other masker leaves them maximally mixed.
        let single = |set: &ParticleSet| set.len() == 1;
        let expected = if !subsystems.iter().all(single) {
            None
        } else if kind == "modi-qudit" {
            let diagonals = self
                .inputs
                .iter()
                .map(|i| {
                    let InputSpec::ModiQudit { eta, .. } = i else { unreachable!() };
                    let squares: Vec<f64> = eta.iter().map(|x| x * x).collect();
                    DensityMatrix::diagonal(eta.len(), 1, &squares)
                })
                .collect::<maskswap_core::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            Some(diagonals)
        } else {
            let mixed = DensityMatrix::maximally_mixed(states[0].level(), 1).map_err(|e| e.to_string())?;
            Some(vec![mixed; states.len()])
        };
        Ok(Prepared::Masking { family: states, subsystems, expected })
    }
}
