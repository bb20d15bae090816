//! Runs prepared scenarios through the predictors, the oracle and the
//! masking check.

use std::time::Instant;

use maskswap_core::{verify_masking, DensityMatrix, ParticleSet, PureState};
use maskswap_oracle::{compare, compare_distributions, simulate_swap, ComparisonReport};
use maskswap_swapping::Prediction;
use rayon::prelude::*;

use crate::report::{ComparisonSummary, MaskingSummary, ScenarioResult, Verdict, VerificationReport};
use crate::schema::{Prepared, ScenarioFile, SchemaError, DEFAULT_TOLERANCE};

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Replaces every scenario's tolerance.
    pub tolerance: Option<f64>,
    /// Keep every comparison row, not only failing ones.
    pub verbose: bool,
    pub timings: bool,
    /// Worker threads; `None` uses rayon's default.
    pub workers: Option<usize>,
}

/// A scenario validated and ready to execute.
pub struct Job {
    origin: String,
    file: ScenarioFile,
    prepared: Prepared,
}

/// Validates every scenario up front so input errors surface before any
/// work runs.
pub fn prepare_all(scenarios: Vec<(String, ScenarioFile)>) -> Result<Vec<Job>, SchemaError> {
    scenarios
        .into_iter()
        .map(|(origin, file)| match file.prepare() {
            Ok(prepared) => Ok(Job { origin, file, prepared }),
            Err(message) => Err(SchemaError { location: origin, message }),
        })
        .collect()
}

fn summarize(report: &ComparisonReport, verbose: bool) -> ComparisonSummary {
    ComparisonSummary {
        candidate: report.candidate.clone(),
        reference: report.reference.clone(),
        outcomes: report.rows.len(),
        missing: report.missing.clone(),
        extra: report.extra.clone(),
        max_probability_deviation: report.max_probability_deviation,
        min_fidelity: report.min_fidelity,
        verdict: Verdict::from_bool(report.verdict),
        rows: if verbose { report.rows.clone() } else { report.failing_rows().cloned().collect() },
    }
}

struct SwapOutcome {
    total_probability: f64,
    comparisons: Vec<ComparisonSummary>,
}

fn run_swap(predictions: &[Prediction], tol: f64, verbose: bool) -> maskswap_core::Result<SwapOutcome> {
    let oracle = simulate_swap(predictions[0].scenario())?;
    let distributions = predictions.iter().map(Prediction::distribution).collect::<maskswap_core::Result<Vec<_>>>()?;
    let mut comparisons: Vec<_> = distributions.iter().map(|d| summarize(&compare(d, &oracle, tol), verbose)).collect();
    for (i, a) in distributions.iter().enumerate() {
        for b in &distributions[i + 1..] {
            comparisons.push(summarize(&compare_distributions(a, b, tol), verbose));
        }
    }
    Ok(SwapOutcome { total_probability: oracle.total_probability, comparisons })
}

fn run_masking(
    family: &[PureState],
    subsystems: &[ParticleSet],
    expected: Option<&[DensityMatrix]>,
    tol: f64,
) -> maskswap_core::Result<MaskingSummary> {
    let report = verify_masking(family, subsystems, tol)?;
    let expected_marginal_deviation = match expected {
        Some(expected) => {
            let mut worst: f64 = 0.0;
            for marginals in &report.subsystems {
                for (m, e) in marginals.marginals.iter().zip(expected) {
                    worst = worst.max(m.max_abs_deviation(e)?);
                }
            }
            Some(worst)
        }
        None => None,
    };
    let ok = report.verdict && expected_marginal_deviation.is_none_or(|d| d <= tol);
    Ok(MaskingSummary {
        members: family.len(),
        subsystems: subsystems.iter().map(|s| s.indices().to_vec()).collect(),
        max_deviation: report.max_deviation,
        cross_subsystem_deviation: report.cross_subsystem_deviation,
        expected_marginal_deviation,
        verdict: Verdict::from_bool(ok),
    })
}

fn execute(job: &Job, options: &RunOptions) -> ScenarioResult {
    let start = Instant::now();
    let tol = options.tolerance.or(job.file.tolerance).unwrap_or(DEFAULT_TOLERANCE);
    let mut result = ScenarioResult {
        name: job.file.display_name(),
        origin: job.origin.clone(),
        predictor: job.file.predictor.name().into(),
        family: job.file.predictor.family().into(),
        tolerance: tol,
        verdict: Verdict::Fail,
        oracle_total_probability: None,
        comparisons: Vec::new(),
        masking: None,
        error: None,
        runtime_seconds: None,
    };
    match &job.prepared {
        Prepared::Swap { predictions } => match run_swap(predictions, tol, options.verbose) {
            Ok(swap) => {
                let ok =
                    (swap.total_probability - 1.0).abs() <= tol && swap.comparisons.iter().all(|c| c.verdict.passed());
                result.verdict = Verdict::from_bool(ok);
                result.oracle_total_probability = Some(swap.total_probability);
                result.comparisons = swap.comparisons;
            }
            Err(e) => result.error = Some(e.to_string()),
        },
        Prepared::Masking { family, subsystems, expected } => {
            match run_masking(family, subsystems, expected.as_deref(), tol) {
                Ok(summary) => {
                    result.verdict = summary.verdict;
                    result.masking = Some(summary);
                }
                Err(e) => result.error = Some(e.to_string()),
            }
        }
    }
    if options.timings {
        result.runtime_seconds = Some(start.elapsed().as_secs_f64());
    }
    result
}

/// Executes `jobs` in parallel; results keep the input order.
pub fn execute_all(jobs: &[Job], options: &RunOptions) -> Vec<ScenarioResult> {
    let run = || jobs.par_iter().map(|job| execute(job, options)).collect();
    match options.workers {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(run),
        None => run(),
    }
}

/// Prepares, executes and assembles a report.
pub fn run_suite(
    source: &str,
    seed: Option<u64>,
    scenarios: Vec<(String, ScenarioFile)>,
    options: &RunOptions,
) -> Result<VerificationReport, SchemaError> {
    let start = Instant::now();
    let jobs = prepare_all(scenarios)?;
    let results = execute_all(&jobs, options);
    let mut report = VerificationReport::assemble(source, seed, options.tolerance, results);
    if options.timings {
        report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{suite, DEFAULT_SUITE_SEED};
    use crate::schema::{InputSpec, PredictorKind};

    fn named(files: Vec<ScenarioFile>) -> Vec<(String, ScenarioFile)> {
        files.into_iter().enumerate().map(|(i, f)| (format!("test#{i}"), f)).collect()
    }

    #[test]
    fn bell_bell_all_passes() {
        let files = named(suite("bell-bell-all", 0).unwrap());
        let report = run_suite("suite:bell-bell-all", None, files, &RunOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{}", report.to_text());
        assert_eq!(report.summary.scenarios, 16);
        assert!(report.summary.max_deviation < 1e-12);
        for s in &report.scenarios {
            assert_eq!(s.comparisons[0].outcomes, 4);
        }
    }

    #[test]
    fn cat_bell_runs_three_comparisons() {
        let mut files = suite("karimipour", DEFAULT_SUITE_SEED).unwrap();
        files.truncate(5);
        let report = run_suite("k", None, named(files), &RunOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{}", report.to_text());
        let names: Vec<_> =
            report.scenarios[0].comparisons.iter().map(|c| (c.candidate.as_str(), c.reference.as_str())).collect();
        assert_eq!(names, [("karimipour", "oracle"), ("clear", "oracle"), ("karimipour", "clear")]);
    }

    #[test]
    fn masking_checks_expected_marginals() {
        let mut file = ScenarioFile::new(
            PredictorKind::Masking,
            "m",
            vec![
                InputSpec::ModiQudit { eta: vec![0.6, 0.8], theta: vec![0.0, 1.0] },
                InputSpec::ModiQudit { eta: vec![0.6, 0.8], theta: vec![2.0, -1.0] },
            ],
        );
        let report = run_suite("m", None, named(vec![file.clone()]), &RunOptions::default()).unwrap();
        let masking = report.scenarios[0].masking.as_ref().unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(masking.expected_marginal_deviation.unwrap() < 1e-12);
        // Different η leak through the marginals.
        file.inputs[1] = InputSpec::ModiQudit { eta: vec![0.8, 0.6], theta: vec![0.0, 0.0] };
        let report = run_suite("m", None, named(vec![file]), &RunOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn invalid_scenario_is_an_input_error() {
        let file = ScenarioFile::new(PredictorKind::BellBell, "bad", vec![InputSpec::ModiQubit { l: 0 }]);
        let err = run_suite("x", None, named(vec![file]), &RunOptions::default()).unwrap_err();
        assert_eq!(err.location, "test#0");
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let files = suite("masked-ghz", 0).unwrap();
        let one = RunOptions { workers: Some(1), ..RunOptions::default() };
        let four = RunOptions { workers: Some(4), ..RunOptions::default() };
        let a = run_suite("g", None, named(files.clone()), &one).unwrap();
        let b = run_suite("g", None, named(files), &four).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.verdict, Verdict::Pass, "{}", a.to_text());
    }
}
