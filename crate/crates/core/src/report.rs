//! Desk-scale reproduction of the price-of-fairness tables.
//!
//! Each row solves one (construction, property) pair exactly and compares the
//! solver's values against the closed forms the construction is built to
//! exhibit. Any disagreement is reported as a mismatch.

use std::fmt::Write as _;

use crate::constructions::{
    fairness_lower_bound, nash_gap_three_agents, nash_gap_two_agents, pad_instance,
    utilitarian_gap, Family,
};
use crate::error::Result;
use crate::scalar::from_count;
use crate::solvers::{mew, PropertyFilter, SolverConfig};
use crate::{ExtendedValue, Instance, Pof, Rational};

pub const CSV_HEADER: &str = "family,n,m,params,property,mew,mew_p,pof";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub params: String,
    pub property: PropertyFilter,
    pub mew: Rational,
    pub mew_p: Rational,
    pub pof: Pof,
}

#[derive(Debug, Clone, Default)]
pub struct Reproduction {
    pub rows: Vec<ReportRow>,
    /// Rows whose solved values disagree with the closed forms.
    pub mismatches: Vec<String>,
}

struct Case {
    family: Family,
    params: String,
    instance: Instance,
    property: PropertyFilter,
    expected_mew: Rational,
    expected_mew_p: Rational,
}

fn q(p: usize, d: usize) -> Rational {
    from_count::<Rational>(p) / from_count::<Rational>(d)
}

fn int(k: usize) -> Rational {
    from_count(k)
}

fn cases() -> Result<Vec<Case>> {
    let mut out = Vec::new();

    // fairness properties on the lower-bound family
    for (n, ms) in [(3usize, 3usize..=8usize), (4, 4..=8)] {
        for m in ms {
            let eps = q(1, 100);
            let eps2 = eps.clone() * eps.clone();
            let instance = fairness_lower_bound(n, m, &eps)?;
            let expected = [
                (PropertyFilter::Ef1, (m - 1).div_ceil(n - 1)),
                (PropertyFilter::Balanced, m.div_ceil(n)),
                // agent 1 must pick first, so agent n picks at best second
                (PropertyFilter::RoundRobin, (m - 1).div_ceil(n)),
            ];
            for (property, count) in expected {
                out.push(Case {
                    family: Family::FairnessLowerBound,
                    params: format!("eps={eps}"),
                    instance: instance.clone(),
                    property,
                    expected_mew: int(m - n + 1) * eps2.clone(),
                    expected_mew_p: int(count) * eps2.clone(),
                });
            }
        }
    }

    for eps in [q(1, 100), q(1, 1000)] {
        let base = utilitarian_gap(&eps)?;
        for pad in 0..=2 {
            out.push(Case {
                family: Family::UtilitarianGap,
                params: format!("eps={eps};pad={pad}"),
                instance: pad_instance(&base, pad),
                property: PropertyFilter::MaxUtilitarian,
                expected_mew: q(1, 2),
                expected_mew_p: int(2) * eps.clone(),
            });
        }
    }

    for (x, y) in [(q(3, 2), q(2, 5)), (q(17, 10), q(17, 50))] {
        out.push(Case {
            family: Family::NashGapTwoAgents,
            params: format!("x={x};y={y}"),
            instance: nash_gap_two_agents(&x, &y)?,
            property: PropertyFilter::MaxNash,
            expected_mew: x.clone() * y.clone(),
            expected_mew_p: y,
        });
    }

    for eps in [q(1, 10), q(1, 20)] {
        let base = nash_gap_three_agents(&eps)?;
        for pad in 0..=1 {
            out.push(Case {
                family: Family::NashGapThreeAgents,
                params: format!("eps={eps};pad={pad}"),
                instance: pad_instance(&base, pad),
                property: PropertyFilter::MaxNash,
                expected_mew: eps.clone() / int(2),
                expected_mew_p: eps.clone() * eps.clone() / int(2),
            });
        }
    }
    Ok(out)
}

/// Solves every row and cross-checks it.
pub fn reproduce(config: &SolverConfig) -> Result<Reproduction> {
    let mut report = Reproduction::default();
    for case in cases()? {
        let best = mew(&case.instance, PropertyFilter::None, config)?;
        let fair = mew(&case.instance, case.property, config)?;
        let pof = ExtendedValue::ratio(&best, &fair);
        let expected_pof = ExtendedValue::ratio(&case.expected_mew, &case.expected_mew_p);
        if best != case.expected_mew || fair != case.expected_mew_p || pof != expected_pof {
            report.mismatches.push(format!(
                "{} {} {}: solved ({best}, {fair}, {pof}), expected ({}, {}, {expected_pof})",
                case.family, case.params, case.property, case.expected_mew, case.expected_mew_p
            ));
        }
        report.rows.push(ReportRow {
            family: case.family,
            n: case.instance.agents(),
            m: case.instance.goods(),
            params: case.params,
            property: case.property,
            mew: best,
            mew_p: fair,
            pof,
        });
    }
    Ok(report)
}

fn cells(row: &ReportRow) -> [String; 8] {
    [
        row.family.to_string(),
        row.n.to_string(),
        row.m.to_string(),
        row.params.clone(),
        row.property.to_string(),
        row.mew.to_string(),
        row.mew_p.to_string(),
        row.pof.to_string(),
    ]
}

pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&cells(row).join(","));
        out.push('\n');
    }
    out
}

pub fn to_markdown(rows: &[ReportRow]) -> String {
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let mut out = String::new();
    writeln!(out, "| {} |", header.join(" | ")).unwrap();
    writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
    for row in rows {
        writeln!(out, "| {} |", cells(row).join(" | ")).unwrap();
    }
    out
}
