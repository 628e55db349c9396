//! Generators for the extremal instance families and the agent-padding
//! transformation.
//!
//! Every generator checks its parameters exactly and returns a validated
//! instance. No irrational quantity is ever formed: conditions involving a
//! square root are squared into rational inequalities first.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::scalar::{from_count, Scalar};

fn half<T: Scalar>() -> T {
    T::one() / from_count::<T>(2)
}

/// `1 / (10 m)`: default epsilon of the fairness lower-bound family.
pub fn default_fairness_eps<T: Scalar>(m: usize) -> T {
    T::one() / from_count::<T>(10 * m)
}

/// Fairness lower-bound family (`n >= 3`, `m >= n`).
///
/// Agent 1 only values good 1. Agents `2..n-1` value every other good at
/// `eps` and agent `n` values every other good at `eps^2`; good 1 absorbs the
/// remainder of each row.
pub fn fairness_lower_bound<T: Scalar>(n: usize, m: usize, eps: &T) -> Result<Instance<T>> {
    if n < 3 {
        return Err(Error::ParamOutOfRange(format!("n = {n} < 3")));
    }
    if m < n {
        return Err(Error::ParamOutOfRange(format!("m = {m} < n = {n}")));
    }
    if !eps.is_positive() {
        return Err(Error::ParamOutOfRange(format!(
            "eps = {eps} is not positive"
        )));
    }
    let rest = from_count::<T>(m - 1);
    let spread = rest.clone() * eps.clone();
    if spread >= T::one() {
        return Err(Error::ParamOutOfRange(format!("(m-1)*eps = {spread} >= 1")));
    }
    let head = T::one() - spread;
    if *eps >= head {
        return Err(Error::ParamOutOfRange(format!(
            "eps = {eps} >= 1-(m-1)*eps = {head}"
        )));
    }
    let eps2 = eps.clone() * eps.clone();

    let row = |first: T, other: &T| {
        let mut r = vec![other.clone(); m];
        r[0] = first;
        r
    };
    let mut rows = Vec::with_capacity(n);
    rows.push(row(T::one(), &T::zero()));
    for _ in 2..n {
        rows.push(row(head.clone(), eps));
    }
    rows.push(row(T::one() - rest * eps2.clone(), &eps2));
    Instance::validate(rows)
}

/// Two agents, three goods, where the utilitarian optimum starves agent 2:
/// `u_1 = (1/2, 1/2, 0)`, `u_2 = (1/2 - eps, 1/2 - eps, 2 eps)`, `0 < eps < 1/4`.
pub fn utilitarian_gap<T: Scalar>(eps: &T) -> Result<Instance<T>> {
    let quarter = half::<T>() * half::<T>();
    if !eps.is_positive() || *eps >= quarter {
        return Err(Error::ParamOutOfRange(format!(
            "eps = {eps} outside (0, 1/4)"
        )));
    }
    let h = half::<T>();
    let two = from_count::<T>(2);
    Instance::validate(vec![
        vec![h.clone(), h.clone(), T::zero()],
        vec![h.clone() - eps.clone(), h - eps.clone(), two * eps.clone()],
    ])
}

/// Whether some `y` satisfies `1/(x + sqrt x) < y < 1/x^2`.
///
/// The interval is nonempty iff `x^2 < x + sqrt x`, i.e. `x^2 - x < sqrt x`;
/// both sides are positive for `x > 1`, so squaring and dividing by `x` gives
/// `x (x - 1)^2 < 1`. The boundary `x (x - 1)^2 = 1` is `x = λ^2` for the real
/// root `λ` of `λ^3 = λ + 1`.
pub fn two_agent_nash_feasible<T: Scalar>(x: &T) -> Result<bool> {
    if *x <= T::one() {
        return Err(Error::ParamOutOfRange(format!("x = {x} <= 1")));
    }
    let d = x.clone() - T::one();
    Ok(x.clone() * d.clone() * d < T::one())
}

/// Two agents, three goods, where the Nash optimum costs a factor `x` of
/// egalitarian welfare: `u_1 = (xy, 1 - xy, 0)`, `u_2 = (1 - xy, (x-1) y, y)`.
///
/// Requires `x > 1` and `1/(x + sqrt x) < y < 1/x^2`. The upper bound is
/// checked as `y x^2 < 1`; given it, `1 - xy > 0`, so the lower bound is
/// equivalent to `(1 - xy)^2 < x y^2`.
pub fn nash_gap_two_agents<T: Scalar>(x: &T, y: &T) -> Result<Instance<T>> {
    if *x <= T::one() {
        return Err(Error::ParamOutOfRange(format!("x = {x} <= 1")));
    }
    if !y.is_positive() {
        return Err(Error::InfeasibleParams(format!("y = {y} is not positive")));
    }
    if y.clone() * x.clone() * x.clone() >= T::one() {
        return Err(Error::InfeasibleParams(format!("y = {y} >= 1/x^2")));
    }
    let xy = x.clone() * y.clone();
    let slack = T::one() - xy.clone();
    if slack.clone() * slack.clone() >= x.clone() * y.clone() * y.clone() {
        return Err(Error::InfeasibleParams(format!(
            "y = {y} <= 1/(x + sqrt x)"
        )));
    }
    Instance::validate(vec![
        vec![xy, slack.clone(), T::zero()],
        vec![slack, (x.clone() - T::one()) * y.clone(), y.clone()],
    ])
}

/// Three agents, three goods, where the Nash optimum costs a factor `1/eps` of
/// egalitarian welfare (`0 < eps <= 1/10`).
pub fn nash_gap_three_agents<T: Scalar>(eps: &T) -> Result<Instance<T>> {
    let tenth = T::one() / from_count::<T>(10);
    if !eps.is_positive() || *eps > tenth {
        return Err(Error::ParamOutOfRange(format!(
            "eps = {eps} outside (0, 1/10]"
        )));
    }
    let h = half::<T>();
    let third = T::one() / from_count::<T>(3);
    let e_half = eps.clone() * h.clone();
    let e2_half = eps.clone() * eps.clone() * h;
    Instance::validate(vec![
        vec![T::one(), T::zero(), T::zero()],
        vec![
            third.clone() - e_half.clone(),
            e_half.clone(),
            T::one() - third,
        ],
        vec![T::one() - e_half.clone() - e2_half.clone(), e2_half, e_half],
    ])
}

/// Appends `k` agents and `k` goods; new agent `n + t` values only new good
/// `m + t`, and old agents value the new goods at 0.
pub fn pad_instance<T: Scalar>(inst: &Instance<T>, k: usize) -> Instance<T> {
    let (n, m) = (inst.agents(), inst.goods());
    let mut rows: Vec<Vec<T>> = inst
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .cloned()
                .chain(std::iter::repeat_n(T::zero(), k))
                .collect()
        })
        .collect();
    for t in 0..k {
        let mut row = vec![T::zero(); m + k];
        row[m + t] = T::one();
        rows.push(row);
    }
    debug_assert_eq!(rows.len(), n + k);
    Instance::validate(rows).expect("padding preserves normalization")
}

/// Instance family selector; labels match the command-line `--family` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// [`fairness_lower_bound`]
    FairnessLowerBound,
    /// [`utilitarian_gap`]
    UtilitarianGap,
    /// [`nash_gap_two_agents`]
    NashGapTwoAgents,
    /// [`nash_gap_three_agents`]
    NashGapThreeAgents,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::FairnessLowerBound => "thm1",
            Family::UtilitarianGap => "thm4",
            Family::NashGapTwoAgents => "thm5",
            Family::NashGapThreeAgents => "thm7",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "thm1" => Ok(Family::FairnessLowerBound),
            "thm4" => Ok(Family::UtilitarianGap),
            "thm5" => Ok(Family::NashGapTwoAgents),
            "thm7" => Ok(Family::NashGapThreeAgents),
            other => Err(format!(
                "unknown family '{other}' (expected thm1, thm4, thm5 or thm7)"
            )),
        }
    }
}

/// Parameters for [`ConstructionParams::build`]. Unset values fall back to
/// `eps = 1/(10m)` for the lower-bound family, `eps = 1/100` for the
/// utilitarian gap, `(x, y) = (3/2, 2/5)` for the two-agent Nash gap and
/// `eps = 1/10` for the three-agent Nash gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams<T> {
    pub family: Family,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub eps: Option<T>,
    pub x: Option<T>,
    pub y: Option<T>,
    pub pad: usize,
}

impl<T: Scalar> ConstructionParams<T> {
    pub fn new(family: Family) -> Self {
        ConstructionParams {
            family,
            n: None,
            m: None,
            eps: None,
            x: None,
            y: None,
            pad: 0,
        }
    }

    pub fn build(&self) -> Result<Instance<T>> {
        let ratio = |p: usize, q: usize| from_count::<T>(p) / from_count::<T>(q);
        let base = match self.family {
            Family::FairnessLowerBound => {
                let n = self
                    .n
                    .ok_or_else(|| Error::ParamOutOfRange("thm1 needs n".into()))?;
                let m = self
                    .m
                    .ok_or_else(|| Error::ParamOutOfRange("thm1 needs m".into()))?;
                let eps = self.eps.clone().unwrap_or_else(|| default_fairness_eps(m));
                fairness_lower_bound(n, m, &eps)?
            }
            Family::UtilitarianGap => {
                utilitarian_gap(&self.eps.clone().unwrap_or_else(|| ratio(1, 100)))?
            }
            Family::NashGapTwoAgents => nash_gap_two_agents(
                &self.x.clone().unwrap_or_else(|| ratio(3, 2)),
                &self.y.clone().unwrap_or_else(|| ratio(2, 5)),
            )?,
            Family::NashGapThreeAgents => {
                nash_gap_three_agents(&self.eps.clone().unwrap_or_else(|| ratio(1, 10)))?
            }
        };
        Ok(pad_instance(&base, self.pad))
    }
}
