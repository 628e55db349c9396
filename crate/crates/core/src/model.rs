//! Instances, allocations and the three welfare functions.
//!
//! Agents and goods are numbered from 1 in every public signature; the
//! internal storage is 0-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Agents × goods utility matrix with nonnegative rows summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance<T> {
    rows: Vec<Vec<T>>,
    m: usize,
}

fn check_shape<T>(rows: &[Vec<T>]) -> Result<usize> {
    if rows.len() < 2 {
        return Err(Error::TooFewAgents(rows.len()));
    }
    let m = rows[0].len();
    if m == 0 {
        return Err(Error::NoGoods);
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(Error::RaggedRow {
                row: i + 1,
                found: row.len(),
                expected: m,
            });
        }
    }
    Ok(m)
}

fn check_nonnegative<T: Scalar>(rows: &[Vec<T>]) -> Result<()> {
    for (i, row) in rows.iter().enumerate() {
        if let Some(j) = row.iter().position(|v| v.is_negative()) {
            return Err(Error::NegativeUtility {
                agent: i + 1,
                good: j + 1,
            });
        }
    }
    Ok(())
}

impl<T: Scalar> Instance<T> {
    /// Accepts `rows` iff every entry is nonnegative and every row sums to 1.
    pub fn validate(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = check_shape(&rows)?;
        check_nonnegative(&rows)?;
        for (i, row) in rows.iter().enumerate() {
            let sum = row.iter().fold(T::zero(), |acc, v| acc + v.clone());
            if !sum.is_one() {
                return Err(Error::RowSumNotOne {
                    agent: i + 1,
                    sum: sum.to_string(),
                });
            }
        }
        Ok(Instance { rows, m })
    }

    /// Rescales every row by its sum, then validates.
    pub fn normalize(rows: Vec<Vec<T>>) -> Result<Self> {
        check_shape(&rows)?;
        check_nonnegative(&rows)?;
        let mut scaled = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            let sum = row.iter().fold(T::zero(), |acc, v| acc + v.clone());
            if sum.is_zero() {
                return Err(Error::ZeroRow { agent: i + 1 });
            }
            scaled.push(row.into_iter().map(|v| v / sum.clone()).collect());
        }
        Self::validate(scaled)
    }

    /// Builds a utility matrix without the normalization check. Used for the
    /// reduced instances of the round-robin construction, whose rows need not
    /// sum to 1.
    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<T>>) -> Self {
        let m = rows.first().map_or(0, Vec::len);
        debug_assert!(rows.iter().all(|r| r.len() == m));
        Instance { rows, m }
    }

    pub fn agents(&self) -> usize {
        self.rows.len()
    }

    pub fn goods(&self) -> usize {
        self.m
    }

    /// Utility of `agent` for `good`, both 1-based.
    pub fn utility(&self, agent: usize, good: usize) -> &T {
        &self.rows[agent - 1][good - 1]
    }

    /// The full utility matrix, row `i` belonging to agent `i + 1`.
    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub(crate) fn u(&self, agent0: usize, good0: usize) -> &T {
        &self.rows[agent0][good0]
    }

    /// `u_agent(goods)`; the empty set has utility 0.
    pub fn bundle_utility(&self, agent: usize, goods: &[usize]) -> Result<T> {
        if agent == 0 || agent > self.agents() {
            return Err(Error::AgentOutOfRange {
                agent,
                n: self.agents(),
            });
        }
        let mut total = T::zero();
        for &g in goods {
            if g == 0 || g > self.m {
                return Err(Error::GoodOutOfRange { good: g, m: self.m });
            }
            total = total + self.rows[agent - 1][g - 1].clone();
        }
        Ok(total)
    }

    /// Utility each agent derives from its own bundle.
    pub fn agent_utilities(&self, alloc: &Allocation) -> Vec<T> {
        self.assert_compatible(alloc);
        utilities_of(self, alloc.owners0())
    }

    fn assert_compatible(&self, alloc: &Allocation) {
        assert!(
            alloc.agents() == self.agents() && alloc.goods() == self.goods(),
            "allocation shape {}x{} does not match instance {}x{}",
            alloc.agents(),
            alloc.goods(),
            self.agents(),
            self.goods()
        );
    }

    pub fn check_compatible(&self, alloc: &Allocation) -> Result<()> {
        if alloc.agents() == self.agents() && alloc.goods() == self.goods() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                n: self.agents(),
                m: self.goods(),
                alloc_n: alloc.agents(),
                alloc_m: alloc.goods(),
            })
        }
    }
}

pub(crate) fn utilities_of<T: Scalar>(inst: &Instance<T>, owner0: &[usize]) -> Vec<T> {
    let mut util = vec![T::zero(); inst.agents()];
    for (g, &o) in owner0.iter().enumerate() {
        util[o] = util[o].clone() + inst.u(o, g).clone();
    }
    util
}

/// An assignment of every good to exactly one agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Allocation {
    n: usize,
    owner: Vec<usize>,
}

impl Allocation {
    /// `owners[j]` is the (1-based) agent receiving good `j + 1`.
    pub fn from_owners(n: usize, owners: &[usize]) -> Result<Self> {
        let owner = owners
            .iter()
            .map(|&a| {
                if a == 0 || a > n {
                    Err(Error::AgentOutOfRange { agent: a, n })
                } else {
                    Ok(a - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Allocation { n, owner })
    }

    /// Builds an allocation from explicit bundles of 1-based goods, which must
    /// partition `1..=m`.
    pub fn from_bundles(m: usize, bundles: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; m];
        let mut count = vec![0usize; m];
        for (i, bundle) in bundles.iter().enumerate() {
            for &g in bundle {
                if g == 0 || g > m {
                    return Err(Error::GoodOutOfRange { good: g, m });
                }
                owner[g - 1] = i;
                count[g - 1] += 1;
            }
        }
        if let Some(j) = count.iter().position(|&c| c != 1) {
            return Err(Error::NotAPartition {
                good: j + 1,
                count: count[j],
            });
        }
        Ok(Allocation {
            n: bundles.len(),
            owner,
        })
    }

    pub(crate) fn from_zero_based(n: usize, owner: Vec<usize>) -> Self {
        debug_assert!(owner.iter().all(|&o| o < n));
        Allocation { n, owner }
    }

    pub fn agents(&self) -> usize {
        self.n
    }

    pub fn goods(&self) -> usize {
        self.owner.len()
    }

    pub fn owner_of(&self, good: usize) -> usize {
        self.owner[good - 1] + 1
    }

    /// Owner vector, 1-based on both sides.
    pub fn owners(&self) -> Vec<usize> {
        self.owner.iter().map(|o| o + 1).collect()
    }

    pub(crate) fn owners0(&self) -> &[usize] {
        &self.owner
    }

    /// Goods held by `agent`, ascending.
    pub fn bundle(&self, agent: usize) -> Vec<usize> {
        self.owner
            .iter()
            .enumerate()
            .filter(|&(_, &o)| o + 1 == agent)
            .map(|(g, _)| g + 1)
            .collect()
    }

    pub fn bundles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (g, &o) in self.owner.iter().enumerate() {
            out[o].push(g + 1);
        }
        out
    }

    pub fn bundle_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n];
        for &o in &self.owner {
            sizes[o] += 1;
        }
        sizes
    }
}

/// Owner labels joined by `-`, e.g. `1-1-2`.
impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, o) in self.owner.iter().enumerate() {
            if g > 0 {
                f.write_str("-")?;
            }
            write!(f, "{}", o + 1)?;
        }
        Ok(())
    }
}

pub(crate) fn min_of<T: Scalar>(values: &[T]) -> T {
    values.iter().min().cloned().unwrap_or_else(T::zero)
}

pub(crate) fn sum_of<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, v| acc + v.clone())
}

pub(crate) fn product_of<T: Scalar>(values: &[T]) -> T {
    let mut acc = T::one();
    for v in values {
        if v.is_zero() {
            return T::zero();
        }
        acc = acc * v.clone();
    }
    acc
}

/// Minimum bundle utility over agents.
pub fn egalitarian_welfare<T: Scalar>(inst: &Instance<T>, alloc: &Allocation) -> T {
    min_of(&inst.agent_utilities(alloc))
}

/// Sum of bundle utilities.
pub fn utilitarian_welfare<T: Scalar>(inst: &Instance<T>, alloc: &Allocation) -> T {
    sum_of(&inst.agent_utilities(alloc))
}

/// Product of bundle utilities.
pub fn nash_welfare<T: Scalar>(inst: &Instance<T>, alloc: &Allocation) -> T {
    product_of(&inst.agent_utilities(alloc))
}
