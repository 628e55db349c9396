//! Round-robin picking, the set of all round-robin outcomes, and the
//! constructions that turn an egalitarian-optimal allocation into a balanced
//! or round-robin one with bounded welfare loss.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{utilities_of, Allocation, Instance};
use crate::properties::{compare_utilities, envy_graph};
use crate::scalar::Scalar;

/// Default cap on round-robin branches explored by [`enumerate_rr_allocations`].
pub const DEFAULT_RR_CAP: u64 = 1_000_000;

/// Picking order plus a per-agent strict priority over goods that refines the
/// agent's utility order. Ties in utility are resolved by the priority.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RRSchedule {
    ordering: Vec<usize>,
    priority: Vec<Vec<usize>>,
}

impl RRSchedule {
    /// `ordering` is a permutation of agents `1..=n`; `tiebreak[i]` lists every
    /// good `1..=m` by non-increasing utility of agent `i + 1`.
    pub fn new<T: Scalar>(
        inst: &Instance<T>,
        ordering: &[usize],
        tiebreak: &[Vec<usize>],
    ) -> Result<Self> {
        let (n, m) = (inst.agents(), inst.goods());
        let ordering = to_permutation(ordering, n, "ordering")?;
        if tiebreak.len() != n {
            return Err(Error::PreconditionViolated(format!(
                "{} tiebreak lists for {n} agents",
                tiebreak.len()
            )));
        }
        let mut priority = Vec::with_capacity(n);
        for (i, list) in tiebreak.iter().enumerate() {
            let list = to_permutation(list, m, &format!("tiebreak of agent {}", i + 1))?;
            if let Some(w) = list.windows(2).find(|w| inst.u(i, w[0]) < inst.u(i, w[1])) {
                return Err(Error::PreconditionViolated(format!(
                    "tiebreak of agent {} ranks good {} above the more valuable good {}",
                    i + 1,
                    w[0] + 1,
                    w[1] + 1
                )));
            }
            priority.push(list);
        }
        Ok(RRSchedule { ordering, priority })
    }

    /// Ties broken towards the lowest good index.
    pub fn lowest_index<T: Scalar>(inst: &Instance<T>, ordering: &[usize]) -> Result<Self> {
        Self::with_preferred(inst, ordering, &vec![None; inst.agents()])
    }

    /// Each agent's `preferred` good (if any) wins its utility tie class; all
    /// other ties go to the lowest good index.
    pub fn with_preferred<T: Scalar>(
        inst: &Instance<T>,
        ordering: &[usize],
        preferred: &[Option<usize>],
    ) -> Result<Self> {
        let ordering = to_permutation(ordering, inst.agents(), "ordering")?;
        let preferred0: Vec<Option<usize>> = preferred.iter().map(|p| p.map(|g| g - 1)).collect();
        Ok(Self::build(inst, ordering, &preferred0))
    }

    fn build<T: Scalar>(
        inst: &Instance<T>,
        ordering: Vec<usize>,
        preferred: &[Option<usize>],
    ) -> Self {
        let priority = (0..inst.agents())
            .map(|i| {
                let mut goods: Vec<usize> = (0..inst.goods()).collect();
                goods.sort_by_key(|&g| (Reverse(inst.u(i, g)), preferred[i] != Some(g), g));
                goods
            })
            .collect();
        RRSchedule { ordering, priority }
    }

    /// Picking order, 1-based.
    pub fn ordering(&self) -> Vec<usize> {
        self.ordering.iter().map(|a| a + 1).collect()
    }

    /// Priority list of `agent`, 1-based.
    pub fn tiebreak(&self, agent: usize) -> Vec<usize> {
        self.priority[agent - 1].iter().map(|g| g + 1).collect()
    }
}

fn to_permutation(items: &[usize], len: usize, what: &str) -> Result<Vec<usize>> {
    let mut seen = vec![false; len];
    if items.len() != len {
        return Err(Error::PreconditionViolated(format!(
            "{what} has {} entries, expected {len}",
            items.len()
        )));
    }
    for &x in items {
        if x == 0 || x > len || std::mem::replace(&mut seen[x - 1], true) {
            return Err(Error::PreconditionViolated(format!(
                "{what} is not a permutation of 1..={len}"
            )));
        }
    }
    Ok(items.iter().map(|x| x - 1).collect())
}

/// One pick of a round-robin run, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pick {
    /// Pass through the ordering this pick belongs to.
    pub round: usize,
    pub agent: usize,
    pub good: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RRTrace {
    pub picks: Vec<Pick>,
    pub allocation: Allocation,
}

/// Runs the picking sequence until every good is taken.
pub fn run_round_robin<T: Scalar>(inst: &Instance<T>, schedule: &RRSchedule) -> RRTrace {
    let (n, m) = (inst.agents(), inst.goods());
    assert_eq!(
        schedule.ordering.len(),
        n,
        "schedule built for a different instance"
    );
    assert!(
        schedule.priority.iter().all(|p| p.len() == m),
        "schedule built for a different instance"
    );
    let mut taken = vec![false; m];
    let mut owner = vec![0; m];
    let mut picks = Vec::with_capacity(m);
    for step in 0..m {
        let agent = schedule.ordering[step % n];
        let good = *schedule.priority[agent]
            .iter()
            .find(|&&g| !taken[g])
            .expect("a good remains while steps remain");
        taken[good] = true;
        owner[good] = agent;
        picks.push(Pick {
            round: step / n + 1,
            agent: agent + 1,
            good: good + 1,
        });
    }
    RRTrace {
        picks,
        allocation: Allocation::from_zero_based(n, owner),
    }
}

struct RrBranches<'a, T> {
    inst: &'a Instance<T>,
    order: Vec<usize>,
    taken: Vec<bool>,
    owner: Vec<usize>,
    out: BTreeSet<Vec<usize>>,
    branches: u64,
    cap: u64,
}

impl<T: Scalar> RrBranches<'_, T> {
    fn descend(&mut self, step: usize) -> Result<()> {
        let m = self.inst.goods();
        if step == m {
            self.branches += 1;
            if self.branches > self.cap {
                return Err(Error::BudgetExceeded { cap: self.cap });
            }
            self.out.insert(self.owner.clone());
            return Ok(());
        }
        let agent = self.order[step % self.order.len()];
        let best = (0..m)
            .filter(|&g| !self.taken[g])
            .map(|g| self.inst.u(agent, g))
            .max()
            .cloned();
        let best = best.expect("a good remains while steps remain");
        for g in 0..m {
            if self.taken[g] || *self.inst.u(agent, g) != best {
                continue;
            }
            self.taken[g] = true;
            self.owner[g] = agent;
            self.descend(step + 1)?;
            self.taken[g] = false;
        }
        Ok(())
    }
}

/// Every allocation the round-robin algorithm can output, over all agent
/// orderings and all tiebreak choices, in lexicographic owner order.
pub fn enumerate_rr_allocations<T: Scalar>(
    inst: &Instance<T>,
    cap: u64,
) -> Result<BTreeSet<Allocation>> {
    let (n, m) = (inst.agents(), inst.goods());
    let mut search = RrBranches {
        inst,
        order: Vec::new(),
        taken: vec![false; m],
        owner: vec![0; m],
        out: BTreeSet::new(),
        branches: 0,
        cap,
    };
    for order in (0..n).permutations(n) {
        search.order = order;
        search.descend(0)?;
    }
    Ok(search
        .out
        .into_iter()
        .map(|o| Allocation::from_zero_based(n, o))
        .collect())
}

pub fn is_rr<T: Scalar>(inst: &Instance<T>, alloc: &Allocation, cap: u64) -> Result<bool> {
    inst.check_compatible(alloc)?;
    Ok(enumerate_rr_allocations(inst, cap)?.contains(alloc))
}

/// Goods of `bundle` ordered by decreasing utility for `agent`, lowest index
/// first among equals.
fn by_value<T: Scalar>(inst: &Instance<T>, agent: usize, mut bundle: Vec<usize>) -> Vec<usize> {
    bundle.sort_by_key(|&g| (Reverse(inst.u(agent, g)), g));
    bundle
}

/// Rounds any allocation to a balanced one in which every agent keeps at least
/// a `1/n` share of her old utility.
///
/// With `q = ceil(m/n)` and `r` the number of bundles of size `q` in a balanced
/// allocation, each agent keeps her `q` most valuable goods; if more than `r`
/// agents could keep `q`, those with larger bundles (then lower index) win and
/// the rest keep `q - 1`. The remaining goods are handed out in ascending
/// order to agents below their target size, lowest agent index first.
pub fn balanced_from_mew<T: Scalar>(inst: &Instance<T>, alloc: &Allocation) -> Allocation {
    inst.check_compatible(alloc)
        .expect("allocation matches instance");
    let (n, m) = (inst.agents(), inst.goods());
    let q = m.div_ceil(n);
    let r = if m % n == 0 { n } else { m % n };
    let bundles: Vec<Vec<usize>> = (0..n)
        .map(|i| alloc.bundle(i + 1).into_iter().map(|g| g - 1).collect())
        .collect();

    let mut contenders: Vec<usize> = (0..n).filter(|&i| bundles[i].len() >= q).collect();
    contenders.sort_by_key(|&i| (Reverse(bundles[i].len()), i));
    let mut keep = vec![0usize; n];
    let mut full = vec![false; n];
    for i in 0..n {
        keep[i] = bundles[i].len().min(q);
    }
    for (rank, &i) in contenders.iter().enumerate() {
        if rank < r {
            full[i] = true;
        } else {
            keep[i] = q - 1;
        }
    }

    let mut owner = vec![usize::MAX; m];
    for i in 0..n {
        for &g in by_value(inst, i, bundles[i].clone()).iter().take(keep[i]) {
            owner[g] = i;
        }
    }

    let mut spare_full_slots = r - full.iter().filter(|&&f| f).count();
    let mut target = vec![0usize; n];
    for i in 0..n {
        target[i] = if full[i] {
            q
        } else if spare_full_slots > 0 {
            spare_full_slots -= 1;
            q
        } else {
            q - 1
        };
    }

    let mut size = keep;
    let mut agent = 0;
    for slot in owner.iter_mut().filter(|o| **o == usize::MAX) {
        while size[agent] >= target[agent] {
            agent += 1;
        }
        *slot = agent;
        size[agent] += 1;
    }
    Allocation::from_zero_based(n, owner)
}

/// For `m = n` and a one-good-each allocation `A`, finds a one-good-each
/// allocation `B` weakly dominating `A` together with a schedule whose
/// round-robin run reproduces `B` exactly.
///
/// `B` is reached from `A` by repeatedly moving to the lexicographically first
/// one-good-each allocation that strongly dominates it, so `B` is
/// Pareto-optimal among one-good-each allocations and its envy graph is
/// acyclic. Agents pick in reverse topological order, each preferring its own
/// good of `B` within its tie class.
pub fn dominating_rr_one_good<T: Scalar>(
    inst: &Instance<T>,
    alloc: &Allocation,
) -> Result<(Allocation, RRSchedule)> {
    inst.check_compatible(alloc)?;
    let n = inst.agents();
    if inst.goods() != n {
        return Err(Error::PreconditionViolated(format!(
            "needs m = n, got m = {} and n = {n}",
            inst.goods()
        )));
    }
    if alloc.bundle_sizes().iter().any(|&s| s != 1) {
        return Err(Error::PreconditionViolated(
            "allocation must give every agent exactly one good".into(),
        ));
    }

    let base = utilities_of(inst, alloc.owners0());
    let candidates: Vec<(Vec<usize>, Vec<T>)> = (0..n)
        .permutations(n)
        .map(|owner| {
            let u = utilities_of(inst, &owner);
            (owner, u)
        })
        .filter(|(_, u)| compare_utilities(u, &base).weak)
        .collect();
    let mut current = (alloc.owners0().to_vec(), base);
    while let Some(better) = candidates
        .iter()
        .find(|(_, u)| compare_utilities(u, &current.1).strong)
    {
        current = better.clone();
    }
    let best = Allocation::from_zero_based(n, current.0);

    let order = envy_graph(inst, &best).topological_order().ok_or_else(|| {
        Error::PreconditionViolated("envy graph of the dominating allocation has a cycle".into())
    })?;
    let ordering: Vec<usize> = order.into_iter().rev().map(|a| a - 1).collect();
    let mut preferred = vec![None; n];
    for (g, &o) in best.owners0().iter().enumerate() {
        preferred[o] = Some(g);
    }
    let schedule = RRSchedule::build(inst, ordering, &preferred);
    debug_assert_eq!(run_round_robin(inst, &schedule).allocation, best);
    Ok((best, schedule))
}

/// Round-robin allocation whose egalitarian welfare is at least a
/// `1/(2n - 1)` share of that of `alloc`, which must give every agent a good.
///
/// Each agent's most valuable good (lowest index among equals) forms a reduced
/// one-good-each instance; its dominating round-robin schedule fixes the
/// picking order and each agent's preferred good for the full run.
pub fn rr_from_mew<T: Scalar>(
    inst: &Instance<T>,
    alloc: &Allocation,
) -> Result<(Allocation, RRSchedule)> {
    inst.check_compatible(alloc)?;
    let n = inst.agents();
    let mut top = Vec::with_capacity(n);
    for i in 0..n {
        let bundle: Vec<usize> = alloc.bundle(i + 1).into_iter().map(|g| g - 1).collect();
        match by_value(inst, i, bundle).first() {
            Some(&g) => top.push(g),
            None => return Err(Error::EmptyBundle { agent: i + 1 }),
        }
    }
    // not re-normalized: rows keep the original utilities of the chosen goods
    let reduced = Instance::from_rows_unchecked(
        (0..n)
            .map(|i| top.iter().map(|&g| inst.u(i, g).clone()).collect())
            .collect(),
    );
    let identity = Allocation::from_zero_based(n, (0..n).collect());
    let (reduced_best, reduced_schedule) = dominating_rr_one_good(&reduced, &identity)?;

    let mut preferred = vec![None; n];
    for (k, &o) in reduced_best.owners0().iter().enumerate() {
        preferred[o] = Some(top[k]);
    }
    let schedule = RRSchedule::build(inst, reduced_schedule.ordering.clone(), &preferred);
    let allocation = run_round_robin(inst, &schedule).allocation;
    Ok((allocation, schedule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::egalitarian_welfare;
    use crate::properties::{is_balanced, is_ef1};
    use crate::random::random_instance;
    use crate::solvers::{max_welfare, Objective, PropertyFilter, SolverConfig};
    use crate::testutil::{inst, r};
    use crate::Instance;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ab(owners: &[usize], n: usize) -> Allocation {
        Allocation::from_owners(n, owners).unwrap()
    }

    fn identity2() -> Instance {
        inst(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]])
    }

    fn halves() -> Instance {
        inst(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]])
    }

    fn tilted() -> Instance {
        inst(&[&[(1, 2), (1, 2)], &[(3, 4), (1, 4)]])
    }

    fn cyclic3() -> Instance {
        inst(&[
            &[(0, 1), (1, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 1)],
            &[(1, 1), (0, 1), (0, 1)],
        ])
    }

    fn thm1_small() -> Instance {
        inst(&[
            &[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1)],
            &[(96, 100), (1, 100), (1, 100), (1, 100), (1, 100)],
            &[
                (9996, 10000),
                (1, 10000),
                (1, 10000),
                (1, 10000),
                (1, 10000),
            ],
        ])
    }

    #[test]
    fn run_examples() {
        let s = RRSchedule::lowest_index(&identity2(), &[1, 2]).unwrap();
        assert_eq!(run_round_robin(&identity2(), &s).allocation, ab(&[1, 2], 2));

        let nash_gap = inst(&[&[(3, 5), (2, 5), (0, 1)], &[(2, 5), (1, 5), (2, 5)]]);
        let trace = run_round_robin(
            &nash_gap,
            &RRSchedule::lowest_index(&nash_gap, &[1, 2]).unwrap(),
        );
        assert_eq!(
            trace.picks,
            vec![
                Pick {
                    round: 1,
                    agent: 1,
                    good: 1
                },
                Pick {
                    round: 1,
                    agent: 2,
                    good: 3
                },
                Pick {
                    round: 2,
                    agent: 1,
                    good: 2
                },
            ]
        );
        assert_eq!(trace.allocation.to_string(), "1-1-2");

        let s = RRSchedule::new(&halves(), &[1, 2], &[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(
            run_round_robin(&halves(), &s).picks[0],
            Pick {
                round: 1,
                agent: 1,
                good: 2
            }
        );
    }

    #[test]
    fn schedule_validation() {
        let i = tilted();
        assert!(RRSchedule::new(&i, &[1, 1], &[vec![1, 2], vec![1, 2]]).is_err());
        // agent 2 values good 1 more, so good 2 cannot come first
        assert!(RRSchedule::new(&i, &[1, 2], &[vec![1, 2], vec![2, 1]]).is_err());
        assert!(RRSchedule::new(&i, &[2, 1], &[vec![2, 1], vec![1, 2]]).is_ok());
        let s = RRSchedule::with_preferred(&halves(), &[2, 1], &[Some(2), None]).unwrap();
        assert_eq!(s.ordering(), vec![2, 1]);
        assert_eq!(s.tiebreak(1), vec![2, 1]);
        assert_eq!(s.tiebreak(2), vec![1, 2]);
    }

    #[test]
    fn enumerate_examples() {
        let id: Vec<Allocation> = enumerate_rr_allocations(&identity2(), DEFAULT_RR_CAP)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(id, vec![ab(&[1, 2], 2)]);
        let h: Vec<Allocation> = enumerate_rr_allocations(&halves(), DEFAULT_RR_CAP)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(h, vec![ab(&[1, 2], 2), ab(&[2, 1], 2)]);
        let i = thm1_small();
        let all = enumerate_rr_allocations(&i, DEFAULT_RR_CAP).unwrap();
        assert!(!all.is_empty());
        for a in &all {
            let mut sizes = a.bundle_sizes();
            sizes.sort_unstable();
            assert_eq!(sizes, vec![1, 2, 2]);
        }
        assert!(matches!(
            enumerate_rr_allocations(&i, 3),
            Err(Error::BudgetExceeded { cap: 3 })
        ));
    }

    #[test]
    fn membership_examples() {
        assert!(is_rr(&identity2(), &ab(&[1, 2], 2), DEFAULT_RR_CAP).unwrap());
        assert!(!is_rr(&identity2(), &ab(&[2, 1], 2), DEFAULT_RR_CAP).unwrap());
        assert!(!is_rr(&thm1_small(), &ab(&[1, 2, 3, 3, 3], 3), DEFAULT_RR_CAP).unwrap());
    }

    #[test]
    fn balanced_rounding_of_lower_bound_witness() {
        let i = thm1_small();
        let a = Allocation::from_bundles(5, &[vec![1], vec![2], vec![3, 4, 5]]).unwrap();
        let b = balanced_from_mew(&i, &a);
        assert!(is_balanced(&b));
        assert_eq!(b.bundle(3), vec![3, 4]);
        assert_eq!(b.bundle_sizes(), vec![2, 1, 2]);
        let ew = egalitarian_welfare(&i, &b);
        assert_eq!(ew, r(2, 10000));
        assert!(ew >= egalitarian_welfare(&i, &a) / r(3, 1));
    }

    #[test]
    fn balanced_rounding_keeps_balanced_input() {
        let i = thm1_small();
        for owners in [[1, 2, 3, 1, 2], [3, 3, 1, 1, 2]] {
            let a = ab(&owners, 3);
            assert_eq!(balanced_from_mew(&i, &a), a);
        }
        let c = cyclic3();
        let a = ab(&[2, 3, 1], 3);
        assert_eq!(balanced_from_mew(&c, &a), a);
    }

    #[test]
    fn balanced_rounding_with_fewer_goods_than_agents() {
        let i = inst(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]);
        let b = balanced_from_mew(&i, &ab(&[3, 3], 3));
        assert!(is_balanced(&b));
        assert_eq!(b.bundle_sizes(), vec![1, 0, 1]);
    }

    #[test]
    fn dominating_schedule_examples() {
        let (b, s) = dominating_rr_one_good(&tilted(), &ab(&[1, 2], 2)).unwrap();
        assert_eq!(b, ab(&[2, 1], 2));
        assert_eq!(run_round_robin(&tilted(), &s).allocation, b);

        let (b, _) = dominating_rr_one_good(&identity2(), &ab(&[1, 2], 2)).unwrap();
        assert_eq!(b, ab(&[1, 2], 2));

        let c = cyclic3();
        let (b, s) = dominating_rr_one_good(&c, &ab(&[1, 2, 3], 3)).unwrap();
        assert_eq!(b.bundles(), vec![vec![2], vec![3], vec![1]]);
        assert_eq!(run_round_robin(&c, &s).allocation, b);

        assert!(matches!(
            dominating_rr_one_good(&thm1_small(), &ab(&[1, 2, 3, 3, 3], 3)),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            dominating_rr_one_good(&identity2(), &ab(&[1, 1], 2)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn rr_from_mew_examples() {
        let (b, _) = rr_from_mew(&identity2(), &ab(&[1, 2], 2)).unwrap();
        assert_eq!(b, ab(&[1, 2], 2));

        let i = thm1_small();
        let a = Allocation::from_bundles(5, &[vec![1], vec![2], vec![3, 4, 5]]).unwrap();
        let (b, s) = rr_from_mew(&i, &a).unwrap();
        assert_eq!(run_round_robin(&i, &s).allocation, b);
        assert!(is_rr(&i, &b, DEFAULT_RR_CAP).unwrap());
        assert!(egalitarian_welfare(&i, &b) >= r(3, 10000) / r(5, 1));

        assert_eq!(
            rr_from_mew(&i, &ab(&[1, 1, 3, 3, 3], 3)).unwrap_err(),
            Error::EmptyBundle { agent: 2 }
        );
    }

    #[test]
    fn rr_from_mew_bound_on_two_agent_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let cfg = SolverConfig::default();
        for _ in 0..100 {
            let i = random_instance(&mut rng, 2, 4, 20);
            let best = max_welfare(&i, Objective::Egalitarian, PropertyFilter::None, &cfg).unwrap();
            if best.value.is_zero() {
                continue;
            }
            let (b, _) = rr_from_mew(&i, &best.witness).unwrap();
            assert!(egalitarian_welfare(&i, &b) * r(3, 1) >= best.value);
        }
    }

    #[test]
    fn outputs_are_ef1_and_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for trial in 0..40 {
            let n = 2 + trial % 2;
            let i = random_instance(&mut rng, n, 1 + trial % 6, 20);
            for order in (1..=n).permutations(n) {
                let a =
                    run_round_robin(&i, &RRSchedule::lowest_index(&i, &order).unwrap()).allocation;
                assert!(is_ef1(&i, &a) && is_balanced(&a));
            }
            for a in enumerate_rr_allocations(&i, DEFAULT_RR_CAP).unwrap() {
                assert!(is_ef1(&i, &a) && is_balanced(&a));
            }
        }
    }

    #[test]
    fn balanced_rounding_per_agent_share() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for trial in 0..30 {
            let n = 2 + trial % 2;
            let i = random_instance(&mut rng, n, 1 + trial % 6, 20);
            for a in crate::solvers::enumerate_allocations(&i, 1000).unwrap() {
                let b = balanced_from_mew(&i, &a);
                assert!(is_balanced(&b));
                let before = i.agent_utilities(&a);
                let after = i.agent_utilities(&b);
                for (x, y) in before.iter().zip(&after) {
                    assert!(y.clone() * r(n as i64, 1) >= *x);
                }
            }
        }
    }
}
