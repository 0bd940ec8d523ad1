//! Per-site allocation totals and the within-class mismatch report.
//!
//! A shoulder's total is its over value plus its under value, a branch
//! centre's total its single value. Sites of one symmetry class sit at the
//! same distance from the origin, so unequal totals inside a class are
//! reported as a mismatch.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Signed;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{Site, SiteClass, SiteLabel};
use crate::traversal::{StateEnsemble, TraversalTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AllocationError {
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("allocation has no total for site {0}")]
    IncompleteAllocation(SiteLabel),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiteAllocation {
    /// State label, or the ensemble name.
    pub source: String,
    pub states: usize,
    pub totals: BTreeMap<Site, u64>,
}

impl SiteAllocation {
    pub fn grand_total(&self) -> u64 {
        self.totals.values().sum()
    }

    pub fn total(&self, site: impl Into<Site>) -> Option<u64> {
        self.totals.get(&site.into()).copied()
    }
}

pub fn site_totals(table: &TraversalTable, source: impl Into<String>) -> SiteAllocation {
    SiteAllocation {
        source: source.into(),
        states: 1,
        totals: table
            .values()
            .iter()
            .map(|(&s, v)| (s, v.total()))
            .collect(),
    }
}

/// Sum of the single-state totals over every ensemble member.
pub fn ensemble_totals(
    ensemble: &StateEnsemble,
    source: impl Into<String>,
) -> Result<SiteAllocation, AllocationError> {
    if ensemble.is_empty() {
        return Err(AllocationError::EmptyEnsemble);
    }
    let mut totals: BTreeMap<Site, u64> = BTreeMap::new();
    for s in &ensemble.states {
        for (&site, v) in s.table.values() {
            *totals.entry(site).or_default() += v.total();
        }
    }
    Ok(SiteAllocation {
        source: source.into(),
        states: ensemble.len(),
        totals,
    })
}

fn ratio_string<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassStats {
    pub class: SiteClass,
    pub totals: Vec<(SiteLabel, u64)>,
    #[serde(serialize_with = "ratio_string")]
    pub mean: Ratio<i64>,
    #[serde(serialize_with = "ratio_string")]
    pub max_deviation: Ratio<i64>,
    pub mismatch: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub source: String,
    pub states: usize,
    pub classes: Vec<ClassStats>,
}

impl DefectReport {
    pub fn class(&self, class: SiteClass) -> &ClassStats {
        self.classes
            .iter()
            .find(|c| c.class == class)
            .expect("all classes present")
    }

    pub fn any_mismatch(&self) -> bool {
        self.classes.iter().any(|c| c.mismatch)
    }
}

/// Per-class totals, exact mean, largest deviation from the mean, and
/// whether the class totals differ at all.
pub fn defect_report(allocation: &SiteAllocation) -> Result<DefectReport, AllocationError> {
    let mut classes = Vec::new();
    for class in SiteClass::ALL {
        let totals = SiteLabel::of_class(class)
            .map(|l| {
                allocation
                    .total(l)
                    .map(|t| (l, t))
                    .ok_or(AllocationError::IncompleteAllocation(l))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sum: i64 = totals.iter().map(|&(_, t)| t as i64).sum();
        let mean = Ratio::new(sum, totals.len() as i64);
        let max_deviation = totals
            .iter()
            .map(|&(_, t)| (Ratio::from_integer(t as i64) - mean).abs())
            .max()
            .unwrap_or_default();
        let mismatch = totals.windows(2).any(|w| w[0].1 != w[1].1);
        classes.push(ClassStats {
            class,
            totals,
            mean,
            max_deviation,
            mismatch,
        });
    }
    Ok(DefectReport {
        source: allocation.source.clone(),
        states: allocation.states,
        classes,
    })
}
