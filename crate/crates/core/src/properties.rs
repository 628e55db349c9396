//! Fairness and efficiency predicates: EF1, balancedness, domination,
//! Pareto-optimality and the envy graph.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::model::{sum_of, utilities_of, Allocation, Instance};
use crate::scalar::Scalar;
use crate::solvers::enumerate_allocations;

/// Default cap on the number of allocations enumerated by exhaustive checks.
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

/// Envy-free up to one good.
pub fn is_ef1<T: Scalar>(inst: &Instance<T>, alloc: &Allocation) -> bool {
    inst.check_compatible(alloc)
        .expect("allocation matches instance");
    ef1_owner(inst, alloc.owners0())
}

/// EF1 via the max-good reduction: agent `i` is fine towards `j` iff removing
/// the good of `A_j` that `i` values most removes the envy.
pub(crate) fn ef1_owner<T: Scalar>(inst: &Instance<T>, owner: &[usize]) -> bool {
    let n = inst.agents();
    let mut value = vec![vec![T::zero(); n]; n];
    let mut best: Vec<Vec<Option<T>>> = vec![vec![None; n]; n];
    for (g, &o) in owner.iter().enumerate() {
        for i in 0..n {
            let u = inst.u(i, g);
            value[i][o] = value[i][o].clone() + u.clone();
            match &best[i][o] {
                Some(b) if b >= u => {}
                _ => best[i][o] = Some(u.clone()),
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if let Some(top) = &best[i][j] {
                if value[i][i] < value[i][j].clone() - top.clone() {
                    return false;
                }
            }
        }
    }
    true
}

/// Bundle sizes differ by at most one.
pub fn is_balanced(alloc: &Allocation) -> bool {
    let sizes = alloc.bundle_sizes();
    let max = sizes.iter().max().copied().unwrap_or(0);
    let min = sizes.iter().min().copied().unwrap_or(0);
    max - min <= 1
}

pub(crate) fn balanced_owner(n: usize, owner: &[usize]) -> bool {
    let mut sizes = vec![0usize; n];
    for &o in owner {
        sizes[o] += 1;
    }
    let max = sizes.iter().max().copied().unwrap_or(0);
    let min = sizes.iter().min().copied().unwrap_or(0);
    max - min <= 1
}

/// Directed graph on agents with an edge `i -> j` whenever `u_i(A_i) < u_i(A_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvyGraph {
    adj: Vec<Vec<bool>>,
}

impl EnvyGraph {
    pub fn agents(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.adj[from - 1][to - 1]
    }

    /// Edges as 1-based pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.agents();
        (0..n)
            .flat_map(|i| {
                (0..n)
                    .filter(move |&j| self.adj[i][j])
                    .map(move |j| (i + 1, j + 1))
            })
            .collect()
    }

    /// Topological order (Kahn's algorithm, smallest ready agent first), or
    /// `None` if the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.agents();
        let mut indeg = vec![0usize; n];
        for row in &self.adj {
            for (j, &e) in row.iter().enumerate() {
                if e {
                    indeg[j] += 1;
                }
            }
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(i)) = ready.pop() {
            order.push(i + 1);
            for (j, &edge) in self.adj[i].iter().enumerate() {
                if edge {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        ready.push(Reverse(j));
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Some directed cycle `c_1 -> c_2 -> ... -> c_k -> c_1`, if one exists.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.agents();
        let mut mark = vec![Mark::New; n];
        let mut stack: Vec<usize> = Vec::new();

        fn visit(
            g: &EnvyGraph,
            v: usize,
            mark: &mut [Mark],
            stack: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            mark[v] = Mark::Active;
            stack.push(v);
            for w in 0..g.agents() {
                if !g.adj[v][w] {
                    continue;
                }
                match mark[w] {
                    Mark::Active => {
                        let start = stack.iter().position(|&s| s == w).unwrap();
                        return Some(stack[start..].iter().map(|s| s + 1).collect());
                    }
                    Mark::New => {
                        if let Some(c) = visit(g, w, mark, stack) {
                            return Some(c);
                        }
                    }
                    Mark::Done => {}
                }
            }
            stack.pop();
            mark[v] = Mark::Done;
            None
        }

        for v in 0..n {
            if mark[v] == Mark::New {
                if let Some(c) = visit(self, v, &mut mark, &mut stack) {
                    return Some(c);
                }
            }
        }
        None
    }
}

pub fn envy_graph<T: Scalar>(inst: &Instance<T>, alloc: &Allocation) -> EnvyGraph {
    inst.check_compatible(alloc)
        .expect("allocation matches instance");
    let n = inst.agents();
    let mut value = vec![vec![T::zero(); n]; n];
    for (g, &o) in alloc.owners0().iter().enumerate() {
        for (i, row) in value.iter_mut().enumerate() {
            row[o] = row[o].clone() + inst.u(i, g).clone();
        }
    }
    let adj = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && value[i][i] < value[i][j])
                .collect()
        })
        .collect();
    EnvyGraph { adj }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DominationVerdict {
    pub weak: bool,
    pub strong: bool,
}

pub(crate) fn compare_utilities<T: Scalar>(better: &[T], worse: &[T]) -> DominationVerdict {
    let weak = better.iter().zip(worse).all(|(b, a)| b >= a);
    let strong = weak && better.iter().zip(worse).any(|(b, a)| b > a);
    DominationVerdict { weak, strong }
}

/// Whether `b` weakly / strongly dominates `a`.
pub fn dominates<T: Scalar>(
    inst: &Instance<T>,
    b: &Allocation,
    a: &Allocation,
) -> DominationVerdict {
    compare_utilities(&inst.agent_utilities(b), &inst.agent_utilities(a))
}

/// Exhaustive check that no allocation strongly dominates `alloc`.
pub fn is_pareto_optimal<T: Scalar>(
    inst: &Instance<T>,
    alloc: &Allocation,
    cap: u64,
) -> Result<bool> {
    inst.check_compatible(alloc)?;
    let target = inst.agent_utilities(alloc);
    for other in enumerate_allocations(inst, cap)? {
        if compare_utilities(&utilities_of(inst, other.owners0()), &target).strong {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every Pareto-optimal allocation, in lexicographic owner order.
///
/// Allocations are scanned by decreasing utilitarian welfare; a strong
/// dominator always has strictly larger welfare, so each candidate only needs
/// to be compared against the Pareto-optimal vectors already found.
pub fn pareto_optimal_allocations<T: Scalar>(
    inst: &Instance<T>,
    cap: u64,
) -> Result<Vec<Allocation>> {
    let all: Vec<(Allocation, Vec<T>)> = enumerate_allocations(inst, cap)?
        .map(|a| {
            let u = utilities_of(inst, a.owners0());
            (a, u)
        })
        .collect();
    let sums: Vec<T> = all.iter().map(|(_, u)| sum_of(u)).collect();
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by(|&x, &y| sums[y].cmp(&sums[x]));

    let mut frontier: Vec<&[T]> = Vec::new();
    let mut optimal = vec![false; all.len()];
    for idx in order {
        let u = &all[idx].1;
        if !frontier.iter().any(|f| compare_utilities(f, u).strong) {
            optimal[idx] = true;
            frontier.push(u);
        }
    }
    Ok(all
        .into_iter()
        .zip(optimal)
        .filter(|(_, po)| *po)
        .map(|((a, _), _)| a)
        .collect())
}

/// Hands every agent on the envy cycle `c_1 -> ... -> c_k -> c_1` the bundle
/// she envies; agents off the cycle keep theirs.
pub fn rotate_cycle<T: Scalar>(
    inst: &Instance<T>,
    alloc: &Allocation,
    cycle: &[usize],
) -> Result<Allocation> {
    inst.check_compatible(alloc)?;
    let n = inst.agents();
    if cycle.len() < 2 {
        return Err(Error::NotACycle(format!(
            "{cycle:?} has fewer than 2 agents"
        )));
    }
    let mut seen = vec![false; n];
    for &c in cycle {
        if c == 0 || c > n {
            return Err(Error::NotACycle(format!("agent {c} out of range")));
        }
        if std::mem::replace(&mut seen[c - 1], true) {
            return Err(Error::NotACycle(format!("agent {c} repeated")));
        }
    }
    let graph = envy_graph(inst, alloc);
    for (t, &c) in cycle.iter().enumerate() {
        let next = cycle[(t + 1) % cycle.len()];
        if !graph.has_edge(c, next) {
            return Err(Error::NotACycle(format!(
                "agent {c} does not envy agent {next}"
            )));
        }
    }
    // receiver[o] = agent that takes over o's bundle
    let mut receiver: Vec<usize> = (0..n).collect();
    for (t, &c) in cycle.iter().enumerate() {
        let next = cycle[(t + 1) % cycle.len()];
        receiver[next - 1] = c - 1;
    }
    let owner = alloc.owners0().iter().map(|&o| receiver[o]).collect();
    Ok(Allocation::from_zero_based(n, owner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::inst;
    use crate::Rational;
    use num_traits::One;

    fn ab(owners: &[usize], n: usize) -> Allocation {
        Allocation::from_owners(n, owners).unwrap()
    }

    // n = 3, m = 5, eps = 1/100 lower-bound instance
    fn thm1_small() -> crate::Instance {
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

    fn tilted() -> crate::Instance {
        inst(&[&[(1, 2), (1, 2)], &[(3, 4), (1, 4)]])
    }

    fn cyclic3() -> crate::Instance {
        inst(&[
            &[(0, 1), (1, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 1)],
            &[(1, 1), (0, 1), (0, 1)],
        ])
    }

    fn identity2() -> crate::Instance {
        inst(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]])
    }

    #[test]
    fn ef1_examples() {
        let i = thm1_small();
        assert!(!is_ef1(
            &i,
            &Allocation::from_bundles(5, &[vec![1], vec![2], vec![3, 4, 5]]).unwrap()
        ));
        assert!(is_ef1(
            &i,
            &Allocation::from_bundles(5, &[vec![1], vec![2, 3], vec![4, 5]]).unwrap()
        ));
        let single = inst(&[&[(1, 1)], &[(1, 1)]]);
        assert!(is_ef1(&single, &ab(&[1], 2)));
    }

    #[test]
    fn balanced_examples() {
        assert!(is_balanced(&ab(&[1, 1, 2, 2, 3], 3)));
        assert!(!is_balanced(&ab(&[1, 1, 1, 2], 2)));
        assert!(is_balanced(&ab(&[1], 2)));
    }

    #[test]
    fn envy_graph_examples() {
        assert_eq!(envy_graph(&tilted(), &ab(&[1, 2], 2)).edges(), vec![(2, 1)]);
        assert!(envy_graph(&identity2(), &ab(&[1, 2], 2)).edges().is_empty());
        let g = envy_graph(&cyclic3(), &ab(&[1, 2, 3], 3));
        assert_eq!(g.edges(), vec![(1, 2), (2, 3), (3, 1)]);
        assert!(!g.is_acyclic());
        assert_eq!(g.find_cycle(), Some(vec![1, 2, 3]));
    }

    #[test]
    fn topological_order_breaks_ties_by_index() {
        // 2 -> 1 only: agents 2 and 3 are both sources, 2 comes first
        let i = inst(&[
            &[(1, 2), (1, 2), (0, 1)],
            &[(3, 4), (1, 4), (0, 1)],
            &[(0, 1), (0, 1), (1, 1)],
        ]);
        let g = envy_graph(&i, &ab(&[1, 2, 3], 3));
        assert_eq!(g.edges(), vec![(2, 1)]);
        assert_eq!(g.topological_order(), Some(vec![2, 1, 3]));
    }

    #[test]
    fn domination_examples() {
        let i = tilted();
        let diag = ab(&[1, 2], 2);
        let anti = ab(&[2, 1], 2);
        assert_eq!(
            dominates(&i, &diag, &diag),
            DominationVerdict {
                weak: true,
                strong: false
            }
        );
        assert_eq!(
            dominates(&i, &anti, &diag),
            DominationVerdict {
                weak: true,
                strong: true
            }
        );
        assert_eq!(
            dominates(&i, &diag, &anti),
            DominationVerdict {
                weak: false,
                strong: false
            }
        );
    }

    #[test]
    fn pareto_examples() {
        let i = tilted();
        assert!(!is_pareto_optimal(&i, &ab(&[1, 2], 2), DEFAULT_ENUMERATION_CAP).unwrap());
        assert!(is_pareto_optimal(&i, &ab(&[2, 1], 2), DEFAULT_ENUMERATION_CAP).unwrap());
        assert!(is_pareto_optimal(&identity2(), &ab(&[1, 2], 2), DEFAULT_ENUMERATION_CAP).unwrap());
        assert!(matches!(
            is_pareto_optimal(&i, &ab(&[1, 2], 2), 3),
            Err(Error::BudgetExceeded { cap: 3 })
        ));
    }

    #[test]
    fn skyline_matches_pairwise_check() {
        for i in [tilted(), cyclic3(), thm1_small()] {
            let fast = pareto_optimal_allocations(&i, DEFAULT_ENUMERATION_CAP).unwrap();
            let slow: Vec<Allocation> = enumerate_allocations(&i, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .filter(|a| is_pareto_optimal(&i, a, DEFAULT_ENUMERATION_CAP).unwrap())
                .collect();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn rotate_cycle_examples() {
        let i = cyclic3();
        let a = ab(&[1, 2, 3], 3);
        let rotated = rotate_cycle(&i, &a, &[1, 2, 3]).unwrap();
        assert_eq!(rotated.bundles(), vec![vec![2], vec![3], vec![1]]);
        assert!(i.agent_utilities(&rotated).iter().all(|u| u.is_one()));

        let swap = inst(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        let swapped = rotate_cycle(&swap, &ab(&[1, 2], 2), &[1, 2]).unwrap();
        assert_eq!(swapped, ab(&[2, 1], 2));
        assert_eq!(
            swap.agent_utilities(&swapped),
            vec![Rational::one(), Rational::one()]
        );

        assert!(matches!(
            rotate_cycle(&i, &a, &[1, 3, 2]),
            Err(Error::NotACycle(_))
        ));
        assert!(matches!(
            rotate_cycle(&i, &a, &[1]),
            Err(Error::NotACycle(_))
        ));
        assert!(matches!(
            rotate_cycle(&i, &a, &[1, 2, 2]),
            Err(Error::NotACycle(_))
        ));
    }

    #[test]
    fn equal_share_bundles_are_ef1() {
        // uniform utilities, sizes differ by at most one
        let i = inst(&[&[(1, 5); 5], &[(1, 5); 5], &[(1, 5); 5]]);
        for owners in [[1, 2, 3, 1, 2], [3, 3, 1, 2, 1], [2, 1, 3, 3, 1]] {
            let a = ab(&owners, 3);
            assert!(is_balanced(&a));
            assert!(is_ef1(&i, &a));
        }
    }
}
