//! Batch experiments over random DNFs: runtime trials, conclusive-run
//! proportions, the phase-shift sweep over clause counts, and LLL detection
//! rates.
//!
//! Trial `t` of a batch with seed `s` always generates its formula from
//! `derive_seed(s, t)`, so every non-timing column is a function of the
//! arguments alone and does not depend on `jobs`. The phase sweep reuses the
//! same per-trial seeds at every clause count (common random numbers): the
//! formula for `N` clauses is a prefix of the one for `N + step`.

use std::io::Write;
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::formula::Kind;
use crate::lll::{asymmetric_report, dnf_to_pg, symmetric_report};
use crate::randgen::{derive_seed, rand_nf, GenError, GenSpec, LiteralSampling};
use crate::solver::{taut, SolverConfig, SolverError, Verdict};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("threshold must be at least 1")]
    InvalidThreshold,
    #[error("sweep range {from}..={to} step {step} is empty or invalid")]
    BadRange { from: usize, to: usize, step: usize },
    #[error("could not build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Execution settings shared by all experiments.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses all cores.
    pub jobs: Option<usize>,
    /// Per-trial table cap passed to the solver.
    pub max_table_entries: Option<usize>,
    /// Per-trial time budget passed to the solver.
    pub time_budget: Option<Duration>,
}

impl RunOptions {
    fn solver_config(&self, threshold: usize) -> Result<SolverConfig, ExperimentError> {
        let mut cfg = SolverConfig::new(threshold)
            .map_err(|_| ExperimentError::InvalidThreshold)?
            .sequential();
        cfg.max_table_entries = self.max_table_entries;
        cfg.time_budget = self.time_budget;
        Ok(cfg)
    }

    /// Runs `f(0..trials)` on the configured pool, results in trial order.
    fn map_trials<T, F>(&self, trials: u64, f: F) -> Result<Vec<T>, ExperimentError>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        use rayon::prelude::*;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(jobs) = self.jobs {
            builder = builder.num_threads(jobs.max(1));
        }
        let pool = builder.build()?;
        Ok(pool.install(|| (0..trials).into_par_iter().map(f).collect()))
    }
}

/// Random-DNF parameters: `n` variables, `N` clauses of width `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DnfParams {
    pub num_vars: u32,
    pub num_clauses: usize,
    pub width: u32,
    pub sampling: LiteralSampling,
}

impl DnfParams {
    pub fn new(num_vars: u32, num_clauses: usize, width: u32) -> Self {
        Self {
            num_vars,
            num_clauses,
            width,
            sampling: LiteralSampling::default(),
        }
    }

    pub fn with_sampling(mut self, sampling: LiteralSampling) -> Self {
        self.sampling = sampling;
        self
    }

    fn with_clauses(mut self, num_clauses: usize) -> Self {
        self.num_clauses = num_clauses;
        self
    }

    fn spec(&self, seed: u64) -> GenSpec {
        GenSpec {
            num_vars: self.num_vars,
            num_clauses: self.num_clauses,
            width: self.width,
            seed,
            sampling: self.sampling,
        }
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        Ok(self.spec(0).validate()?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialOutcome {
    Tautology,
    NotTautology,
    Undecided,
    ResourceLimit,
}

impl TrialOutcome {
    pub fn is_decided(self) -> bool {
        matches!(self, TrialOutcome::Tautology | TrialOutcome::NotTautology)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TrialOutcome::Tautology => "true",
            TrialOutcome::NotTautology => "false",
            TrialOutcome::Undecided => "undecided",
            TrialOutcome::ResourceLimit => "resource_limit",
        }
    }
}

/// One row of the trials CSV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub num_vars: u32,
    pub num_clauses: usize,
    pub width: u32,
    pub threshold: usize,
    pub outcome: TrialOutcome,
    /// Deciding level; for undecided runs the threshold reached, for
    /// resource-limited runs the last completed level.
    pub decision_level: usize,
    pub wall_time: Duration,
    pub terms_evaluated: u64,
    pub table_peak: usize,
}

fn run_trial(params: &DnfParams, cfg: &SolverConfig, trial: u64, seed: u64) -> TrialRecord {
    let sub = derive_seed(seed, trial);
    let f = rand_nf(&params.spec(sub), Kind::Dnf).expect("parameters validated");
    let (outcome, decision_level, stats) = match taut(&f, cfg) {
        Ok(out) => {
            let outcome = match out.verdict {
                Verdict::Decided { is_tautology: true, .. } => TrialOutcome::Tautology,
                Verdict::Decided {
                    is_tautology: false, ..
                } => TrialOutcome::NotTautology,
                Verdict::Undecided { .. } => TrialOutcome::Undecided,
            };
            (outcome, out.verdict.level(), out.stats)
        }
        Err(SolverError::ResourceLimit { level, stats, .. }) => (TrialOutcome::ResourceLimit, level, stats),
        Err(e) => unreachable!("random DNF with valid threshold: {e}"),
    };
    TrialRecord {
        trial,
        seed: sub,
        num_vars: params.num_vars,
        num_clauses: params.num_clauses,
        width: params.width,
        threshold: cfg.threshold(),
        outcome,
        decision_level,
        wall_time: stats.wall_time,
        terms_evaluated: stats.terms_evaluated,
        table_peak: stats.table_peak,
    }
}

/// Runs the solver at `threshold` on `trials` random DNFs and records each
/// run.
pub fn meta_taut(
    params: DnfParams,
    threshold: usize,
    trials: u64,
    seed: u64,
    opts: &RunOptions,
) -> Result<Vec<TrialRecord>, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    params.validate()?;
    let cfg = opts.solver_config(threshold)?;
    opts.map_trials(trials, |t| run_trial(&params, &cfg, t, seed))
}

/// Conclusive-run count at one `(n, N, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepPoint {
    pub num_vars: u32,
    pub num_clauses: usize,
    pub threshold: usize,
    pub width: u32,
    pub trials: u64,
    pub conclusive: u64,
}

impl SweepPoint {
    pub fn proportion(&self) -> f64 {
        self.conclusive as f64 / self.trials as f64
    }
}

/// Fraction of random DNFs the solver decides within `threshold` levels.
pub fn how_many_finished(
    params: DnfParams,
    threshold: usize,
    trials: u64,
    seed: u64,
    opts: &RunOptions,
) -> Result<SweepPoint, ExperimentError> {
    let records = meta_taut(params, threshold, trials, seed, opts)?;
    Ok(SweepPoint {
        num_vars: params.num_vars,
        num_clauses: params.num_clauses,
        threshold,
        width: params.width,
        trials,
        conclusive: records.iter().filter(|r| r.outcome.is_decided()).count() as u64,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepRange {
    pub from: usize,
    pub to: usize,
    pub step: usize,
}

impl SweepRange {
    pub fn clause_counts(&self) -> Result<Vec<usize>, ExperimentError> {
        if self.step == 0 || self.from > self.to {
            return Err(ExperimentError::BadRange {
                from: self.from,
                to: self.to,
                step: self.step,
            });
        }
        Ok((self.from..=self.to).step_by(self.step).collect())
    }
}

/// One [`how_many_finished`] point per clause count, ascending.
///
/// `params.num_clauses` is ignored; the range supplies the clause counts.
pub fn phase_sweep(
    params: DnfParams,
    threshold: usize,
    range: SweepRange,
    trials: u64,
    seed: u64,
    opts: &RunOptions,
) -> Result<Vec<SweepPoint>, ExperimentError> {
    range
        .clause_counts()?
        .into_iter()
        .map(|n_clauses| how_many_finished(params.with_clauses(n_clauses), threshold, trials, seed, opts))
        .collect()
}

/// One row of the LLL CSV. `actual_nontaut` is `None` when the ground-truth
/// run hit a resource limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LllTrial {
    pub trial: u64,
    pub seed: u64,
    pub sym: bool,
    pub asym: bool,
    pub actual_nontaut: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LllSummary {
    pub trials: u64,
    /// Trials without ground truth.
    pub excluded: u64,
    pub non_tautologies: u64,
    /// Non-tautologies certified by the symmetric lemma.
    pub detected_sym: u64,
    pub detected_asym: u64,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl LllSummary {
    pub fn determined(&self) -> u64 {
        self.trials - self.excluded
    }

    pub fn prop_detected_sym(&self) -> f64 {
        ratio(self.detected_sym, self.non_tautologies)
    }

    pub fn prop_detected_asym(&self) -> f64 {
        ratio(self.detected_asym, self.non_tautologies)
    }

    pub fn prop_actual_nontaut(&self) -> f64 {
        ratio(self.non_tautologies, self.determined())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("summary serializes");
        v["prop_detected_sym"] = self.prop_detected_sym().into();
        v["prop_detected_asym"] = self.prop_detected_asym().into();
        v["prop_actual_nontaut"] = self.prop_actual_nontaut().into();
        v
    }
}

/// Both local-lemma checks on random DNFs, against ground truth from the
/// full-depth solver. Detection rates are over actual non-tautologies.
pub fn meta_lll(
    params: DnfParams,
    trials: u64,
    seed: u64,
    opts: &RunOptions,
) -> Result<(Vec<LllTrial>, LllSummary), ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    params.validate()?;
    let cfg = opts.solver_config(params.num_clauses.max(1))?;
    let rows = opts.map_trials(trials, |t| {
        let sub = derive_seed(seed, t);
        let f = rand_nf(&params.spec(sub), Kind::Dnf).expect("parameters validated");
        let g = dnf_to_pg(&f).expect("generated DNF");
        let actual_nontaut = match taut(&f, &cfg) {
            Ok(out) => match out.verdict {
                Verdict::Decided { is_tautology, .. } => Some(!is_tautology),
                Verdict::Undecided { .. } => unreachable!("threshold N always decides"),
            },
            Err(_) => None,
        };
        LllTrial {
            trial: t,
            seed: sub,
            sym: symmetric_report(&g).holds,
            asym: asymmetric_report(&g).holds,
            actual_nontaut,
        }
    })?;
    let mut summary = LllSummary {
        trials,
        ..LllSummary::default()
    };
    for r in &rows {
        match r.actual_nontaut {
            None => summary.excluded += 1,
            Some(false) => {}
            Some(true) => {
                summary.non_tautologies += 1;
                summary.detected_sym += u64::from(r.sym);
                summary.detected_asym += u64::from(r.asym);
            }
        }
    }
    Ok((rows, summary))
}

pub const TRIALS_HEADER: [&str; 11] = [
    "trial",
    "seed",
    "n",
    "N",
    "M",
    "K",
    "outcome",
    "decision_level",
    "wall_us",
    "terms",
    "table_peak",
];
pub const SWEEP_HEADER: [&str; 7] = ["n", "N", "k", "M", "trials", "conclusive", "proportion"];
pub const LLL_HEADER: [&str; 5] = ["trial", "seed", "sym", "asym", "actual_nontaut"];

pub fn write_trials_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRIALS_HEADER)?;
    for r in records {
        w.write_record([
            r.trial.to_string(),
            r.seed.to_string(),
            r.num_vars.to_string(),
            r.num_clauses.to_string(),
            r.width.to_string(),
            r.threshold.to_string(),
            r.outcome.as_str().to_string(),
            r.decision_level.to_string(),
            r.wall_time.as_micros().to_string(),
            r.terms_evaluated.to_string(),
            r.table_peak.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep_csv<W: Write>(points: &[SweepPoint], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for p in points {
        w.write_record([
            p.num_vars.to_string(),
            p.num_clauses.to_string(),
            p.threshold.to_string(),
            p.width.to_string(),
            p.trials.to_string(),
            p.conclusive.to_string(),
            p.proportion().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_lll_csv<W: Write>(rows: &[LllTrial], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(LLL_HEADER)?;
    for r in rows {
        w.write_record([
            r.trial.to_string(),
            r.seed.to_string(),
            r.sym.to_string(),
            r.asym.to_string(),
            r.actual_nontaut
                .map_or_else(|| "indeterminate".to_string(), |b| b.to_string()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(jobs: usize) -> RunOptions {
        RunOptions {
            jobs: Some(jobs),
            ..RunOptions::default()
        }
    }

    #[test]
    fn full_depth_always_decides() {
        let recs = meta_taut(DnfParams::new(6, 5, 3), 5, 50, 1, &opts(2)).unwrap();
        assert_eq!(recs.len(), 50);
        assert!(recs.iter().all(|r| r.outcome.is_decided() && r.decision_level <= 5));
        assert!(recs.iter().enumerate().all(|(i, r)| r.trial == i as u64));
        let p = how_many_finished(DnfParams::new(6, 4, 3), 4, 30, 9, &opts(1)).unwrap();
        assert_eq!(p.conclusive, 30);
        assert_eq!(p.proportion(), 1.0);
    }

    #[test]
    fn results_ignore_job_count() {
        let strip = |v: Vec<TrialRecord>| -> Vec<_> {
            v.into_iter()
                .map(|r| (r.seed, r.outcome, r.decision_level, r.terms_evaluated, r.table_peak))
                .collect()
        };
        let a = meta_taut(DnfParams::new(30, 12, 3), 4, 40, 5, &opts(1)).unwrap();
        let b = meta_taut(DnfParams::new(30, 12, 3), 4, 40, 5, &opts(4)).unwrap();
        assert_eq!(strip(a), strip(b));
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            meta_taut(DnfParams::new(5, 3, 3), 2, 0, 0, &opts(1)),
            Err(ExperimentError::NoTrials)
        ));
        assert!(matches!(
            meta_taut(DnfParams::new(2, 3, 3), 2, 1, 0, &opts(1)),
            Err(ExperimentError::Gen(_))
        ));
        assert!(matches!(
            meta_taut(DnfParams::new(5, 3, 3), 0, 1, 0, &opts(1)),
            Err(ExperimentError::InvalidThreshold)
        ));
        assert!(SweepRange {
            from: 5,
            to: 4,
            step: 1
        }
        .clause_counts()
        .is_err());
        assert!(SweepRange {
            from: 1,
            to: 4,
            step: 0
        }
        .clause_counts()
        .is_err());
        assert_eq!(
            SweepRange {
                from: 10,
                to: 30,
                step: 5
            }
            .clause_counts()
            .unwrap(),
            vec![10, 15, 20, 25, 30]
        );
    }

    #[test]
    fn sweep_is_ascending_with_constant_trials() {
        let pts = phase_sweep(
            DnfParams::new(20, 0, 3),
            3,
            SweepRange {
                from: 1,
                to: 7,
                step: 2,
            },
            20,
            3,
            &opts(2),
        )
        .unwrap();
        assert_eq!(pts.iter().map(|p| p.num_clauses).collect::<Vec<_>>(), vec![1, 3, 5, 7]);
        assert!(pts.iter().all(|p| p.trials == 20));
        assert_eq!(pts[0].proportion(), 1.0);
        assert_eq!(pts[1].proportion(), 1.0);
    }

    #[test]
    fn resource_limits_are_recorded() {
        let o = RunOptions {
            jobs: Some(1),
            max_table_entries: Some(3),
            time_budget: None,
        };
        let recs = meta_taut(DnfParams::new(50, 12, 2), 6, 10, 2, &o).unwrap();
        assert!(recs.iter().any(|r| r.outcome == TrialOutcome::ResourceLimit));
        let (rows, summary) = meta_lll(DnfParams::new(50, 12, 2), 10, 2, &o).unwrap();
        assert_eq!(
            summary.excluded,
            rows.iter().filter(|r| r.actual_nontaut.is_none()).count() as u64
        );
        assert!(summary.excluded > 0);
    }

    #[test]
    fn lll_summary_counts() {
        let (rows, s) = meta_lll(DnfParams::new(8, 6, 2), 60, 11, &opts(3)).unwrap();
        assert_eq!(rows.len(), 60);
        assert_eq!(s.excluded, 0);
        assert!(s.detected_asym <= s.non_tautologies);
        for r in &rows {
            if r.sym || r.asym {
                assert_eq!(r.actual_nontaut, Some(true));
            }
        }
    }

    #[test]
    fn csv_headers() {
        let mut buf = Vec::new();
        write_sweep_csv(
            &[SweepPoint {
                num_vars: 100,
                num_clauses: 10,
                threshold: 6,
                width: 3,
                trials: 4,
                conclusive: 3,
            }],
            &mut buf,
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,N,k,M,trials,conclusive,proportion\n100,10,6,3,4,3,0.75\n"
        );

        let mut buf = Vec::new();
        write_lll_csv(
            &[LllTrial {
                trial: 0,
                seed: 9,
                sym: false,
                asym: true,
                actual_nontaut: None,
            }],
            &mut buf,
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "trial,seed,sym,asym,actual_nontaut\n0,9,false,true,indeterminate\n"
        );

        let recs = meta_taut(DnfParams::new(10, 2, 3), 2, 1, 0, &opts(1)).unwrap();
        let mut buf = Vec::new();
        write_trials_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("trial,seed,n,N,M,K,outcome,decision_level,wall_us,terms,table_peak\n0,"));
    }
}
