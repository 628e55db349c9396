//! Welfare maximization under property constraints and the price of fairness.
//!
//! Every solver walks the `n^m` owner vectors depth-first in lexicographic
//! order, so the first optimum found is the lexicographically smallest one.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{min_of, product_of, sum_of, Allocation, Instance};
use crate::properties::{balanced_owner, ef1_owner, DEFAULT_ENUMERATION_CAP};
use crate::round_robin::{enumerate_rr_allocations, DEFAULT_RR_CAP};
use crate::scalar::{ExtendedValue, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Egalitarian,
    Utilitarian,
    Nash,
}

impl Objective {
    pub fn evaluate<T: Scalar>(self, utilities: &[T]) -> T {
        match self {
            Objective::Egalitarian => min_of(utilities),
            Objective::Utilitarian => sum_of(utilities),
            Objective::Nash => product_of(utilities),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Objective::Egalitarian => "ew",
            Objective::Utilitarian => "uw",
            Objective::Nash => "nw",
        }
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ew" => Ok(Objective::Egalitarian),
            "uw" => Ok(Objective::Utilitarian),
            "nw" => Ok(Objective::Nash),
            other => Err(format!(
                "unknown objective '{other}' (expected ew, uw or nw)"
            )),
        }
    }
}

/// Restriction on the allocations a solver may return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyFilter {
    None,
    Ef1,
    Balanced,
    RoundRobin,
    /// Allocations attaining the maximum utilitarian welfare.
    MaxUtilitarian,
    /// Allocations attaining the maximum Nash welfare.
    MaxNash,
}

impl PropertyFilter {
    pub const FAIRNESS: [PropertyFilter; 5] = [
        PropertyFilter::Ef1,
        PropertyFilter::Balanced,
        PropertyFilter::RoundRobin,
        PropertyFilter::MaxUtilitarian,
        PropertyFilter::MaxNash,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PropertyFilter::None => "none",
            PropertyFilter::Ef1 => "ef1",
            PropertyFilter::Balanced => "ba",
            PropertyFilter::RoundRobin => "rr",
            PropertyFilter::MaxUtilitarian => "muw",
            PropertyFilter::MaxNash => "mnw",
        }
    }
}

impl fmt::Display for PropertyFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PropertyFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(PropertyFilter::None),
            "ef1" => Ok(PropertyFilter::Ef1),
            "ba" => Ok(PropertyFilter::Balanced),
            "rr" => Ok(PropertyFilter::RoundRobin),
            "muw" => Ok(PropertyFilter::MaxUtilitarian),
            "mnw" => Ok(PropertyFilter::MaxNash),
            other => Err(format!(
                "unknown property '{other}' (expected none, ef1, ba, rr, muw or mnw)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Visit every allocation.
    Exhaustive,
    /// Branch-and-bound on the egalitarian objective; other objectives are
    /// searched exhaustively.
    Pruned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum `n^m` the solver is willing to enumerate.
    pub cap: u64,
    /// Maximum number of round-robin branches.
    pub rr_cap: u64,
    pub search: SearchMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            cap: DEFAULT_ENUMERATION_CAP,
            rr_cap: DEFAULT_RR_CAP,
            search: SearchMode::Pruned,
        }
    }
}

impl SolverConfig {
    pub fn with_cap(cap: u64) -> Self {
        SolverConfig {
            cap,
            ..Self::default()
        }
    }

    pub fn exhaustive(self) -> Self {
        SolverConfig {
            search: SearchMode::Exhaustive,
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<T> {
    pub value: T,
    /// Lexicographically smallest optimal owner vector.
    pub witness: Allocation,
    /// Complete allocations evaluated.
    pub explored: u64,
}

/// `n^m`, or `None` on overflow.
pub fn allocation_count(n: usize, m: usize) -> Option<u64> {
    (n as u64).checked_pow(u32::try_from(m).ok()?)
}

fn check_budget(n: usize, m: usize, cap: u64) -> Result<()> {
    match allocation_count(n, m) {
        Some(count) if count <= cap => Ok(()),
        _ => Err(Error::BudgetExceeded { cap }),
    }
}

/// Iterator over all owner vectors in lexicographic order.
#[derive(Debug, Clone)]
pub struct AllocationIter {
    n: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for AllocationIter {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        while pos > 0 {
            pos -= 1;
            if succ[pos] + 1 < self.n {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(Allocation::from_zero_based(self.n, current))
    }
}

/// All `n^m` allocations of `inst`, lexicographically, once each.
pub fn enumerate_allocations<T: Scalar>(inst: &Instance<T>, cap: u64) -> Result<AllocationIter> {
    check_budget(inst.agents(), inst.goods(), cap)?;
    Ok(AllocationIter {
        n: inst.agents(),
        next: Some(vec![0; inst.goods()]),
    })
}

enum Admit<T> {
    All,
    Ef1,
    Balanced,
    Members(HashSet<Vec<usize>>),
    Attains(Objective, T),
}

impl<T: Scalar> Admit<T> {
    fn admits(&self, inst: &Instance<T>, owner: &[usize], util: &[T]) -> bool {
        match self {
            Admit::All => true,
            Admit::Ef1 => ef1_owner(inst, owner),
            Admit::Balanced => balanced_owner(inst.agents(), owner),
            Admit::Members(set) => set.contains(owner),
            Admit::Attains(obj, target) => obj.evaluate(util) == *target,
        }
    }
}

struct Search<'a, T> {
    inst: &'a Instance<T>,
    objective: Objective,
    admit: &'a Admit<T>,
    prune: bool,
    // remaining[i][g] = u_i({g, ..., m-1})
    remaining: Vec<Vec<T>>,
    owner: Vec<usize>,
    util: Vec<T>,
    best: Option<(T, Vec<usize>)>,
    explored: u64,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(inst: &'a Instance<T>, objective: Objective, admit: &'a Admit<T>, prune: bool) -> Self {
        let (n, m) = (inst.agents(), inst.goods());
        let remaining = (0..n)
            .map(|i| {
                let mut suffix = vec![T::zero(); m + 1];
                for g in (0..m).rev() {
                    suffix[g] = suffix[g + 1].clone() + inst.u(i, g).clone();
                }
                suffix
            })
            .collect();
        Search {
            inst,
            objective,
            admit,
            prune: prune && objective == Objective::Egalitarian,
            remaining,
            owner: vec![0; m],
            util: vec![T::zero(); n],
            best: None,
            explored: 0,
        }
    }

    fn descend(&mut self, g: usize) {
        let m = self.inst.goods();
        if g == m {
            self.explored += 1;
            if self.admit.admits(self.inst, &self.owner, &self.util) {
                let value = self.objective.evaluate(&self.util);
                if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                    self.best = Some((value, self.owner.clone()));
                }
            }
            return;
        }
        if self.prune {
            if let Some((incumbent, _)) = &self.best {
                // no completion can lift any agent above util + everything left;
                // later ties never replace the incumbent
                let optimistic = (0..self.inst.agents())
                    .map(|i| self.util[i].clone() + self.remaining[i][g].clone())
                    .min()
                    .expect("at least two agents");
                if optimistic <= *incumbent {
                    return;
                }
            }
        }
        for a in 0..self.inst.agents() {
            self.owner[g] = a;
            let u = self.inst.u(a, g).clone();
            self.util[a] = self.util[a].clone() + u.clone();
            self.descend(g + 1);
            self.util[a] = self.util[a].clone() - u;
        }
    }
}

fn run_search<T: Scalar>(
    inst: &Instance<T>,
    objective: Objective,
    admit: &Admit<T>,
    prune: bool,
) -> Result<SolveResult<T>> {
    let mut search = Search::new(inst, objective, admit, prune);
    search.descend(0);
    let explored = search.explored;
    let (value, owner) = search.best.ok_or_else(|| {
        Error::PreconditionViolated("no allocation satisfies the property".into())
    })?;
    Ok(SolveResult {
        value,
        witness: Allocation::from_zero_based(inst.agents(), owner),
        explored,
    })
}

/// Exact optimum of `objective` over allocations passing `filter`.
///
/// For the welfare-maximizer filters the global maximum of that welfare is
/// computed first and the objective is then optimized over its argmax set.
pub fn max_welfare<T: Scalar>(
    inst: &Instance<T>,
    objective: Objective,
    filter: PropertyFilter,
    config: &SolverConfig,
) -> Result<SolveResult<T>> {
    check_budget(inst.agents(), inst.goods(), config.cap)?;
    let prune = config.search == SearchMode::Pruned;
    let admit = match filter {
        PropertyFilter::None => Admit::All,
        PropertyFilter::Ef1 => Admit::Ef1,
        PropertyFilter::Balanced => Admit::Balanced,
        PropertyFilter::RoundRobin => Admit::Members(
            enumerate_rr_allocations(inst, config.rr_cap)?
                .into_iter()
                .map(|a| a.owners0().to_vec())
                .collect(),
        ),
        PropertyFilter::MaxUtilitarian | PropertyFilter::MaxNash => {
            let welfare = if filter == PropertyFilter::MaxNash {
                Objective::Nash
            } else {
                Objective::Utilitarian
            };
            let top = run_search(inst, welfare, &Admit::All, prune)?;
            Admit::Attains(welfare, top.value)
        }
    };
    run_search(inst, objective, &admit, prune)
}

/// Maximum egalitarian welfare over allocations passing `filter`.
pub fn mew<T: Scalar>(
    inst: &Instance<T>,
    filter: PropertyFilter,
    config: &SolverConfig,
) -> Result<T> {
    Ok(max_welfare(inst, Objective::Egalitarian, filter, config)?.value)
}

/// Unconstrained maximum egalitarian welfare divided by the constrained one,
/// with `0/0 = 1` and `x/0 = inf`.
pub fn price_of_fairness<T: Scalar>(
    inst: &Instance<T>,
    filter: PropertyFilter,
    config: &SolverConfig,
) -> Result<ExtendedValue<T>> {
    let best = mew(inst, PropertyFilter::None, config)?;
    let fair = mew(inst, filter, config)?;
    Ok(ExtendedValue::ratio(&best, &fair))
}
