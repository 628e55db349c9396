//! Randomized verification suites for the welfare bounds and the
//! constructive procedures.
//!
//! Instance `t` of a run is drawn from a ChaCha8 stream selected by `t`, so
//! each instance depends only on `(seed, t)` and the suites can evaluate
//! instances in parallel while reporting deterministically.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::model::{egalitarian_welfare, Allocation};
use crate::properties::{dominates, envy_graph, is_balanced, is_ef1, pareto_optimal_allocations};
use crate::random::{random_instance, DEFAULT_WEIGHT_BOUND};
use crate::round_robin::{
    balanced_from_mew, dominating_rr_one_good, enumerate_rr_allocations, rr_from_mew,
    run_round_robin, RRSchedule,
};
use crate::scalar::from_count;
use crate::solvers::{enumerate_allocations, max_welfare, Objective, PropertyFilter, SolverConfig};
use crate::{ExtendedValue, Instance, Pof, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Welfare bounds: `MEW >= MEW_P`, balanced and round-robin prices, and
    /// the two-agent Nash price.
    Bounds,
    /// Round-robin outputs are EF1 and balanced; both EF1 formulations agree.
    Facts,
    /// Envy graphs of Pareto-optimal allocations, dominating round-robin
    /// schedules, balanced rounding and round-robin rounding.
    Lemmas,
}

impl Suite {
    pub fn label(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Facts => "facts",
            Suite::Lemmas => "lemmas",
        }
    }

    fn check_names(self) -> &'static [&'static str] {
        match self {
            Suite::Bounds => &[
                "mew_ge_mew_ef1",
                "mew_ge_mew_ba",
                "mew_ge_mew_rr",
                "mew_ge_mew_muw",
                "mew_ge_mew_mnw",
                "pof_ba_le_n",
                "pof_rr_le_2n_minus_1",
                "pof_mnw_le_2_for_two_agents",
            ],
            Suite::Facts => &["rr_output_ef1_and_balanced", "ef1_forms_agree"],
            Suite::Lemmas => &[
                "po_envy_graph_acyclic",
                "one_good_rr_dominates",
                "balanced_rounding_keeps_share",
                "rr_rounding_of_mew_bound",
                "rr_rounding_per_agent_share",
            ],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bounds" => Ok(Suite::Bounds),
            "facts" => Ok(Suite::Facts),
            "lemmas" => Ok(Suite::Lemmas),
            other => Err(format!(
                "unknown suite '{other}' (expected bounds, facts or lemmas)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub n: usize,
    pub m_max: usize,
    pub trials: u64,
    pub seed: u64,
    pub weight_bound: u32,
    pub solver: SolverConfig,
}

impl VerifyConfig {
    pub fn new(suite: Suite, n: usize, m_max: usize, trials: u64, seed: u64) -> Self {
        VerifyConfig {
            suite,
            n,
            m_max,
            trials,
            seed,
            weight_bound: DEFAULT_WEIGHT_BOUND,
            solver: SolverConfig::default(),
        }
    }
}

/// Outcome of one named check over the whole run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Individual cases examined (instances, allocations or schedules).
    pub tried: u64,
    pub violations: u64,
    /// Largest observed ratio of the quantity the check bounds, if any.
    pub worst_ratio: Option<String>,
    pub first_violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub n: usize,
    pub m_max: usize,
    pub trials: u64,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
struct Tally {
    tried: u64,
    violations: u64,
    worst: Option<Pof>,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, ratio: Option<Pof>, describe: impl FnOnce() -> String) {
        self.tried += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
        if let Some(r) = ratio {
            if self.worst.as_ref().is_none_or(|w| r > *w) {
                self.worst = Some(r);
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.tried += other.tried;
        self.violations += other.violations;
        if self.first.is_none() {
            self.first = other.first;
        }
        if let Some(r) = other.worst {
            if self.worst.as_ref().is_none_or(|w| r > *w) {
                self.worst = Some(r);
            }
        }
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Instance `trial` of the corpus for `(seed, n, m_max)`: `m` uniform in
/// `1..=m_max`, weights uniform in `0..=bound`.
pub fn corpus_instance(seed: u64, trial: u64, n: usize, m_max: usize, bound: u32) -> Instance {
    let mut rng = trial_rng(seed, trial);
    let m = rng.gen_range(1..=m_max);
    random_instance(&mut rng, n, m, bound)
}

/// Literal EF1 definition: for every pair some `G` with `|G| <= 1` removes
/// the envy. Independent of the max-good shortcut in `properties`.
pub fn ef1_existential(inst: &Instance, alloc: &Allocation) -> bool {
    let bundles = alloc.bundles();
    (1..=inst.agents()).all(|i| {
        let own = inst.bundle_utility(i, &bundles[i - 1]).unwrap();
        (1..=inst.agents()).filter(|&j| j != i).all(|j| {
            let other = &bundles[j - 1];
            let without = |skip: Option<usize>| -> Vec<usize> {
                other.iter().copied().filter(|&g| Some(g) != skip).collect()
            };
            std::iter::once(None)
                .chain(other.iter().map(|&g| Some(g)))
                .any(|skip| own >= inst.bundle_utility(i, &without(skip)).unwrap())
        })
    })
}

fn describe(inst: &Instance, extra: impl fmt::Display) -> String {
    format!("{} on {}", extra, crate::io::write_instance_file(inst))
}

fn bounds_checks(inst: &Instance, cfg: &SolverConfig) -> Result<Vec<Tally>> {
    let n = inst.agents();
    let mut tallies = vec![Tally::default(); 8];
    let best = max_welfare(inst, Objective::Egalitarian, PropertyFilter::None, cfg)?.value;
    let mut pof = Vec::new();
    for (k, filter) in PropertyFilter::FAIRNESS.into_iter().enumerate() {
        let fair = max_welfare(inst, Objective::Egalitarian, filter, cfg)?.value;
        let ratio = ExtendedValue::ratio(&best, &fair);
        tallies[k].record(best >= fair, Some(ratio.clone()), || {
            describe(inst, format_args!("MEW {best} < MEW_{filter} {fair}"))
        });
        pof.push(ratio);
    }
    let limit = |k: usize| ExtendedValue::Finite(from_count::<Rational>(k));
    let (ba, rr, mnw) = (&pof[1], &pof[2], &pof[4]);
    tallies[5].record(*ba <= limit(n), Some(ba.clone()), || {
        describe(inst, format_args!("POF_ba = {ba}"))
    });
    tallies[6].record(*rr <= limit(2 * n - 1), Some(rr.clone()), || {
        describe(inst, format_args!("POF_rr = {rr}"))
    });
    if n == 2 {
        tallies[7].record(*mnw <= limit(2), Some(mnw.clone()), || {
            describe(inst, format_args!("POF_mnw = {mnw}"))
        });
    }
    Ok(tallies)
}

fn random_schedule(inst: &Instance, ordering: &[usize], rng: &mut ChaCha8Rng) -> RRSchedule {
    let tiebreak: Vec<Vec<usize>> = (1..=inst.agents())
        .map(|i| {
            let mut goods: Vec<usize> = (1..=inst.goods()).collect();
            goods.shuffle(rng);
            goods.sort_by(|&a, &b| inst.utility(i, b).cmp(inst.utility(i, a)));
            goods
        })
        .collect();
    RRSchedule::new(inst, ordering, &tiebreak).expect("tiebreak refines utilities")
}

fn facts_checks(inst: &Instance, cfg: &SolverConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Tally>> {
    let n = inst.agents();
    let mut tallies = vec![Tally::default(); 2];
    let fair = |a: &Allocation| is_ef1(inst, a) && is_balanced(a);
    for ordering in (1..=n).permutations(n) {
        for schedule in [
            RRSchedule::lowest_index(inst, &ordering)?,
            random_schedule(inst, &ordering, rng),
        ] {
            let out = run_round_robin(inst, &schedule).allocation;
            tallies[0].record(fair(&out), None, || {
                describe(inst, format_args!("RR output {out}"))
            });
        }
    }
    for out in enumerate_rr_allocations(inst, cfg.rr_cap)? {
        tallies[0].record(fair(&out), None, || {
            describe(inst, format_args!("RR allocation {out}"))
        });
    }
    for a in enumerate_allocations(inst, cfg.cap)? {
        let agree = is_ef1(inst, &a) == ef1_existential(inst, &a);
        tallies[1].record(agree, None, || {
            describe(inst, format_args!("EF1 forms differ on {a}"))
        });
    }
    Ok(tallies)
}

fn lemmas_checks(inst: &Instance, cfg: &SolverConfig) -> Result<Vec<Tally>> {
    let (n, m) = (inst.agents(), inst.goods());
    let mut tallies = vec![Tally::default(); 5];

    for a in pareto_optimal_allocations(inst, cfg.cap)? {
        let acyclic = envy_graph(inst, &a).is_acyclic();
        tallies[0].record(acyclic, None, || {
            describe(inst, format_args!("PO allocation {a} has an envy cycle"))
        });
    }

    if m == n {
        for perm in (0..n).permutations(n) {
            let owners: Vec<usize> = perm.iter().map(|p| p + 1).collect();
            let a = Allocation::from_owners(n, &owners)?;
            let (b, schedule) = dominating_rr_one_good(inst, &a)?;
            let ok =
                dominates(inst, &b, &a).weak && run_round_robin(inst, &schedule).allocation == b;
            tallies[1].record(ok, None, || describe(inst, format_args!("{a} -> {b}")));
        }
    }

    let n_scalar = from_count::<Rational>(n);
    let stretch = from_count::<Rational>(2 * n - 1);
    for a in enumerate_allocations(inst, cfg.cap)? {
        let before = inst.agent_utilities(&a);

        let b = balanced_from_mew(inst, &a);
        let after = inst.agent_utilities(&b);
        let share_ok = before
            .iter()
            .zip(&after)
            .all(|(x, y)| y.clone() * n_scalar.clone() >= *x);
        let worst = before
            .iter()
            .zip(&after)
            .map(|(x, y)| ExtendedValue::ratio(x, y))
            .max();
        tallies[2].record(is_balanced(&b) && share_ok, worst, || {
            describe(inst, format_args!("{a} -> {b}"))
        });

        if a.bundle_sizes().iter().all(|&s| s > 0) {
            let (b, _) = rr_from_mew(inst, &a)?;
            let after = inst.agent_utilities(&b);
            let ok = before
                .iter()
                .zip(&after)
                .all(|(x, y)| y.clone() * stretch.clone() >= *x);
            let worst = before
                .iter()
                .zip(&after)
                .map(|(x, y)| ExtendedValue::ratio(x, y))
                .max();
            tallies[4].record(ok, worst, || describe(inst, format_args!("{a} -> {b}")));
        }
    }

    let best = max_welfare(inst, Objective::Egalitarian, PropertyFilter::None, cfg)?;
    if !best.value.is_zero() {
        let (b, _) = rr_from_mew(inst, &best.witness)?;
        let ew = egalitarian_welfare(inst, &b);
        let ok = ew.clone() * stretch >= best.value;
        tallies[3].record(ok, Some(ExtendedValue::ratio(&best.value, &ew)), || {
            describe(
                inst,
                format_args!("MEW witness {} -> {b} with EW {ew}", best.witness),
            )
        });
    }
    Ok(tallies)
}

/// Runs one suite over `trials` seeded instances.
pub fn run_suite(config: &VerifyConfig) -> Result<VerifyReport> {
    assert!(
        config.n >= 2 && config.m_max >= 1,
        "need n >= 2 and m_max >= 1"
    );
    let names = config.suite.check_names();
    let per_trial: Vec<Vec<Tally>> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let inst = corpus_instance(config.seed, t, config.n, config.m_max, config.weight_bound);
            match config.suite {
                Suite::Bounds => bounds_checks(&inst, &config.solver),
                Suite::Facts => {
                    // second half of the stream drives the random tiebreaks
                    let mut rng = trial_rng(config.seed, t);
                    rng.set_word_pos(1 << 40);
                    facts_checks(&inst, &config.solver, &mut rng)
                }
                Suite::Lemmas => lemmas_checks(&inst, &config.solver),
            }
        })
        .collect::<Result<_>>()?;

    let mut totals = vec![Tally::default(); names.len()];
    for tallies in per_trial {
        for (total, t) in totals.iter_mut().zip(tallies) {
            total.absorb(t);
        }
    }
    let checks: Vec<CheckRecord> = names
        .iter()
        .zip(totals)
        .map(|(name, t)| CheckRecord {
            name: name.to_string(),
            tried: t.tried,
            violations: t.violations,
            worst_ratio: t.worst.map(|w| w.to_string()),
            first_violation: t.first,
        })
        .collect();
    let pass = checks.iter().all(|c| c.violations == 0);
    Ok(VerifyReport {
        suite: config.suite.label().to_string(),
        n: config.n,
        m_max: config.m_max,
        trials: config.trials,
        seed: config.seed,
        checks,
        pass,
    })
}

impl VerifyReport {
    pub fn total_violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}
