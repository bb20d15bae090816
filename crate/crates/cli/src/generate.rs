//! Scenario enumeration: exhaustive over discrete labels, seeded sampling for
//! continuous masker parameters.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use maskswap_core::qudit::dimension;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::schema::{InputSpec, PredictorKind, ScenarioFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    BellBell,
    CatSwap,
    Karimipour,
    MaskedGhz,
    MaskedQudit,
    LiMasked,
    Masking,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::BellBell,
        Family::CatSwap,
        Family::Karimipour,
        Family::MaskedGhz,
        Family::MaskedQudit,
        Family::LiMasked,
        Family::Masking,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::BellBell => "bell-bell",
            Family::CatSwap => "cat-swap",
            Family::Karimipour => "karimipour",
            Family::MaskedGhz => "masked-ghz",
            Family::MaskedQudit => "masked-qudit",
            Family::LiMasked => "li-masked",
            Family::Masking => "masking",
        }
    }

    /// Independent RNG stream per family, so adding a family to a run does
    /// not perturb the others.
    fn stream(self) -> u64 {
        Family::ALL.iter().position(|&f| f == self).unwrap() as u64 + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}; expected one of {}", names(&Family::ALL)))
    }
}

fn names(families: &[Family]) -> String {
    families.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub d_max: usize,
    pub n_max: usize,
    pub m_max: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { d_max: 3, n_max: 2, m_max: 3, samples: 50, seed: 0 }
    }
}

fn rng(family: Family, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(family.stream());
    rng
}

/// Nonnegative amplitudes uniform on the positive part of the unit sphere.
pub fn random_eta(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal).abs()).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

pub fn random_theta(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.random_range(-PI..=PI)).collect()
}

/// Complex amplitudes uniform on the unit sphere of `ℂ^d`, as `[re, im]`.
pub fn random_alpha(rng: &mut impl Rng, d: usize) -> Vec<[f64; 2]> {
    loop {
        let v: Vec<[f64; 2]> = (0..d).map(|_| [rng.sample(StandardNormal), rng.sample(StandardNormal)]).collect();
        let norm = v.iter().map(|[a, b]| a * a + b * b).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|[a, b]| [a / norm, b / norm]).collect();
        }
    }
}

fn within_cap(level: usize, particles: usize) -> maskswap_core::Result<()> {
    dimension(level, particles).map(|_| ())
}

fn bell_bell() -> Vec<ScenarioFile> {
    let mut out = Vec::with_capacity(16);
    for index in 0..16u8 {
        let [l1, a1, l2, a2] = [index >> 3 & 1, index >> 2 & 1, index >> 1 & 1, index & 1];
        out.push(ScenarioFile::new(
            PredictorKind::BellBell,
            format!("bell-bell l1={l1} a1={a1} l2={l2} a2={a2}"),
            vec![InputSpec::Bell { lambda: l1, a: a1 }, InputSpec::Bell { lambda: l2, a: a2 }],
        ));
    }
    out
}

fn bits_of(value: usize, width: usize) -> Vec<u8> {
    (0..width).rev().map(|i| (value >> i & 1) as u8).collect()
}

fn bits_str(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

fn cat_scenario(cats: &[(Vec<u8>, u8, usize)]) -> ScenarioFile {
    let name =
        cats.iter().map(|(bits, lambda, k)| format!("{}/{lambda}/{k}", bits_str(bits))).collect::<Vec<_>>().join(" ");
    ScenarioFile::new(
        PredictorKind::CatSwap,
        format!("cat-swap {name}"),
        cats.iter()
            .map(|(bits, lambda, k)| InputSpec::Cat { bits: bits.clone(), lambda: *lambda, measure: Some(*k) })
            .collect(),
    )
}

/// Every `(bits, λ, k)` for one cat of each size in `2..=m_max`.
fn single_cats(m_max: usize) -> Vec<(Vec<u8>, u8, usize)> {
    let mut out = Vec::new();
    for m in 2..=m_max {
        for value in 0..1usize << m {
            for lambda in 0..2 {
                for k in 1..=m {
                    out.push((bits_of(value, m), lambda, k));
                }
            }
        }
    }
    out
}

fn cat_swap(bounds: &Bounds) -> Vec<ScenarioFile> {
    let singles = single_cats(bounds.m_max);
    let mut out = Vec::new();
    for first in &singles {
        for second in &singles {
            let rest = first.0.len() - first.2 + second.0.len() - second.2;
            if rest > 0 {
                out.push(cat_scenario(&[first.clone(), second.clone()]));
            }
        }
    }
    let mut rng = rng(Family::CatSwap, bounds.seed);
    for n in 3..=bounds.n_max {
        let mut drawn = 0;
        while drawn < bounds.samples {
            let cats: Vec<_> = (0..n)
                .map(|_| {
                    let m = rng.random_range(2..=bounds.m_max);
                    let value = rng.random_range(0..1usize << m);
                    (bits_of(value, m), rng.random_range(0..2u8), rng.random_range(1..=m))
                })
                .collect();
            if cats.iter().any(|(bits, _, k)| *k < bits.len()) {
                out.push(cat_scenario(&cats));
                drawn += 1;
            }
        }
    }
    out
}

fn karimipour(levels: &[usize], sizes: &[usize], samples: usize, seed: u64) -> Vec<ScenarioFile> {
    let mut rng = rng(Family::Karimipour, seed);
    let mut out = Vec::new();
    for &d in levels {
        for &m in sizes {
            for _ in 0..samples {
                let u: Vec<usize> = (0..m).map(|_| rng.random_range(0..d)).collect();
                let w: Vec<usize> = (0..2).map(|_| rng.random_range(0..d)).collect();
                let k = rng.random_range(1..=m);
                let mut file = ScenarioFile::new(
                    PredictorKind::CatBell,
                    format!("cat-bell d={d} u={u:?} w={w:?} k={k}"),
                    vec![InputSpec::MaxEntangled { level: d, u }, InputSpec::MaxEntangled { level: d, u: w }],
                );
                file.k = Some(k);
                out.push(file);
            }
        }
    }
    out
}

fn masked_ghz(n_max: usize) -> Vec<ScenarioFile> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        for value in 0..1usize << n {
            let lambda = bits_of(value, n);
            out.push(ScenarioFile::new(
                PredictorKind::MaskedGhz,
                format!("masked-ghz λ={}", bits_str(&lambda)),
                lambda.into_iter().map(|l| InputSpec::ModiQubit { l }).collect(),
            ));
        }
    }
    out
}

fn masked_qudit(configs: &[(usize, usize)], samples: usize, seed: u64) -> Vec<ScenarioFile> {
    let mut rng = rng(Family::MaskedQudit, seed);
    let mut out = Vec::new();
    for &(d, n) in configs {
        for i in 0..samples {
            let inputs = (0..n)
                .map(|_| InputSpec::ModiQudit { eta: random_eta(&mut rng, d), theta: random_theta(&mut rng, d) })
                .collect();
            out.push(ScenarioFile::new(PredictorKind::MaskedQudit, format!("masked-qudit d={d} n={n} #{i}"), inputs));
        }
    }
    out
}

fn li_masked(configs: &[(usize, usize)], samples: usize, seed: u64) -> Vec<ScenarioFile> {
    let mut rng = rng(Family::LiMasked, seed);
    let mut out = Vec::new();
    for &(d, n) in configs {
        for i in 0..samples {
            let inputs = (0..n).map(|_| InputSpec::Li { alpha: random_alpha(&mut rng, d) }).collect();
            out.push(ScenarioFile::new(PredictorKind::LiMasked, format!("li-masked d={d} n={n} #{i}"), inputs));
        }
    }
    out
}

/// Families sharing the same masker. Phase-amplitude families share `η` and
/// draw `ϑ` per member, `FAMILY_SIZE` members each; the uniform-`η` family
/// at every level checks the maximally mixed marginal.
const FAMILY_SIZE: usize = 10;

fn masking(levels: &[usize], phase_draws: usize, li: &[(usize, usize)], seed: u64) -> Vec<ScenarioFile> {
    let mut rng = rng(Family::Masking, seed);
    let mut out = vec![ScenarioFile::new(
        PredictorKind::Masking,
        "masking modi-qubit",
        vec![InputSpec::ModiQubit { l: 0 }, InputSpec::ModiQubit { l: 1 }],
    )];
    for &d in levels {
        let families = phase_draws.div_ceil(FAMILY_SIZE);
        for f in 0..families {
            let members = FAMILY_SIZE.min(phase_draws - f * FAMILY_SIZE);
            let eta = random_eta(&mut rng, d);
            let inputs = (0..members)
                .map(|_| InputSpec::ModiQudit { eta: eta.clone(), theta: random_theta(&mut rng, d) })
                .collect();
            out.push(ScenarioFile::new(PredictorKind::Masking, format!("masking modi-qudit d={d} η#{f}"), inputs));
        }
        let uniform = vec![(1.0 / d as f64).sqrt(); d];
        let inputs = (0..FAMILY_SIZE)
            .map(|_| InputSpec::ModiQudit { eta: uniform.clone(), theta: random_theta(&mut rng, d) })
            .collect();
        out.push(ScenarioFile::new(PredictorKind::Masking, format!("masking modi-qudit d={d} uniform"), inputs));
    }
    for &(d, members) in li {
        let inputs = (0..members).map(|_| InputSpec::Li { alpha: random_alpha(&mut rng, d) }).collect();
        out.push(ScenarioFile::new(PredictorKind::Masking, format!("masking li d={d}"), inputs));
    }
    out
}

fn grid(d_max: usize, n_max: usize) -> Vec<(usize, usize)> {
    (2..=d_max).flat_map(|d| (2..=n_max).map(move |n| (d, n))).collect()
}

/// Scenarios of `family` within `bounds`. Discrete families are exhaustive;
/// `samples` sets the draws per configuration of continuous ones.
pub fn enumerate_scenarios(family: Family, bounds: &Bounds) -> maskswap_core::Result<Vec<ScenarioFile>> {
    let Bounds { d_max, n_max, m_max, samples, seed } = *bounds;
    let too_small = |what: &str, v: usize, min: usize| {
        if v < min {
            Err(maskswap_core::Error::InvalidInput(format!("{what} must be at least {min}, got {v}")))
        } else {
            Ok(())
        }
    };
    Ok(match family {
        Family::BellBell => bell_bell(),
        Family::CatSwap => {
            too_small("m-max", m_max, 2)?;
            too_small("n-max", n_max, 2)?;
            within_cap(2, n_max * m_max)?;
            cat_swap(bounds)
        }
        Family::Karimipour => {
            too_small("d-max", d_max, 2)?;
            too_small("m-max", m_max, 2)?;
            within_cap(d_max, m_max + 2)?;
            karimipour(&(2..=d_max).collect::<Vec<_>>(), &(2..=m_max).collect::<Vec<_>>(), samples, seed)
        }
        Family::MaskedGhz => {
            too_small("n-max", n_max, 2)?;
            within_cap(2, 2 * n_max)?;
            masked_ghz(n_max)
        }
        Family::MaskedQudit => {
            too_small("d-max", d_max, 2)?;
            too_small("n-max", n_max, 2)?;
            within_cap(d_max, 2 * n_max)?;
            masked_qudit(&grid(d_max, n_max), samples, seed)
        }
        Family::LiMasked => {
            too_small("d-max", d_max, 2)?;
            too_small("n-max", n_max, 2)?;
            within_cap(d_max, 2 * d_max * n_max)?;
            li_masked(&grid(d_max, n_max), samples, seed)
        }
        Family::Masking => {
            too_small("d-max", d_max, 2)?;
            within_cap(d_max, 2)?;
            // Fourier-pair maskers occupy 2d particles; levels past the cap are skipped.
            let li: Vec<_> = (2..=d_max).filter(|&d| within_cap(d, 2 * d).is_ok()).map(|d| (d, samples)).collect();
            masking(&(2..=d_max).collect::<Vec<_>>(), samples, &li, seed)
        }
    })
}

pub const DEFAULT_SUITE_SEED: u64 = 7;

pub const SUITES: [&str; 8] =
    ["bell-bell-all", "cat-swap", "karimipour", "masking-def1", "masked-ghz", "masked-qudit", "li-masked", "all"];

/// Built-in suite by name.
pub fn suite(name: &str, seed: u64) -> Result<Vec<ScenarioFile>, String> {
    Ok(match name {
        "bell-bell-all" => bell_bell(),
        "cat-swap" => cat_swap(&Bounds { d_max: 2, n_max: 3, m_max: 4, samples: 100, seed }),
        "karimipour" => karimipour(&[2, 3, 5], &[2, 3, 4], 100, seed),
        "masking-def1" => masking(&[2, 3, 4, 5, 6, 7], 100, &[(2, 100), (3, 20)], seed),
        "masked-ghz" => masked_ghz(4),
        "masked-qudit" => masked_qudit(&[(2, 2), (3, 2), (5, 2), (2, 3)], 50, seed),
        "li-masked" => li_masked(&[(2, 2), (2, 3), (3, 2)], 20, seed),
        "all" => {
            let mut out = Vec::new();
            for part in &SUITES[..SUITES.len() - 1] {
                out.extend(suite(part, seed)?);
            }
            out
        }
        other => return Err(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", "))),
    })
}
