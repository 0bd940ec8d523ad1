//! The published allocation table as a CSV fixture, its errata, and the
//! check that regenerated tables reproduce it.
//!
//! Fixture schema: `case,site,role,value`, role one of `over`, `under`,
//! `through`. Errata add a `corrected_value` column and only apply when the
//! fixture still holds the listed `value`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Site, SiteLabel, VisitRole};
use crate::traversal::{SiteValues, StateEnsemble, TraversalTable};

/// Transcription shipped with the crate.
pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");
pub const TABLE1_ERRATA_CSV: &str = include_str!("../data/table1_errata.csv");

const FIXTURE_HEADER: [&str; 4] = ["case", "site", "role", "value"];
const ERRATA_HEADER: [&str; 5] = ["case", "site", "role", "value", "corrected_value"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FixtureParseError {
    pub line: u64,
    pub message: String,
}

fn err(line: u64, message: impl Into<String>) -> FixtureParseError {
    FixtureParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureCase {
    pub name: String,
    pub table: TraversalTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Fixture {
    pub cases: Vec<FixtureCase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub case: String,
    pub site: SiteLabel,
    pub role: VisitRole,
    pub value: u32,
    pub corrected_value: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Errata {
    pub entries: Vec<Erratum>,
}

struct Row {
    line: u64,
    fields: Vec<String>,
}

fn read_rows(text: &str, header: &[&str]) -> Result<Vec<Row>, FixtureParseError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let got: Vec<String> = rdr
        .headers()
        .map_err(|e| err(1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if got != header {
        return Err(err(
            1,
            format!(
                "expected header {:?}, found {:?}",
                header.join(","),
                got.join(",")
            ),
        ));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != header.len() {
            return Err(err(
                line,
                format!("expected {} fields, found {}", header.len(), rec.len()),
            ));
        }
        rows.push(Row {
            line,
            fields: rec.iter().map(str::to_string).collect(),
        });
    }
    Ok(rows)
}

fn parse_slot(
    line: u64,
    site: &str,
    role: &str,
) -> Result<(SiteLabel, VisitRole), FixtureParseError> {
    let mut chars = site.chars();
    let label = match (chars.next(), chars.next()) {
        (Some(c), None) => SiteLabel::from_letter(c),
        _ => None,
    }
    .ok_or_else(|| err(line, format!("unknown site {site:?}")))?;
    let role =
        VisitRole::from_name(role).ok_or_else(|| err(line, format!("unknown role {role:?}")))?;
    if label.class().is_shoulder() == (role == VisitRole::Through) {
        return Err(err(line, format!("role {role} not valid at site {label}")));
    }
    Ok((label, role))
}

fn parse_value(line: u64, s: &str) -> Result<u32, FixtureParseError> {
    s.parse()
        .map_err(|_| err(line, format!("value {s:?} is not a non-negative integer")))
}

type SlotValues = BTreeMap<(SiteLabel, VisitRole), u32>;

impl Table1Fixture {
    pub fn parse(text: &str) -> Result<Table1Fixture, FixtureParseError> {
        let rows = read_rows(text, &FIXTURE_HEADER)?;
        // case -> (first line, slot -> value)
        let mut order: Vec<String> = Vec::new();
        let mut cases: BTreeMap<String, (u64, SlotValues)> = BTreeMap::new();
        for row in &rows {
            let name = row.fields[0].clone();
            if name.is_empty() {
                return Err(err(row.line, "empty case name"));
            }
            let slot = parse_slot(row.line, &row.fields[1], &row.fields[2])?;
            let value = parse_value(row.line, &row.fields[3])?;
            if !cases.contains_key(&name) {
                order.push(name.clone());
            }
            let entry = cases
                .entry(name.clone())
                .or_insert((row.line, BTreeMap::new()));
            if entry.1.insert(slot, value).is_some() {
                return Err(err(
                    row.line,
                    format!("duplicate entry for case {name} {} {}", slot.0, slot.1),
                ));
            }
        }
        if order.is_empty() {
            return Err(err(1, "fixture has no rows"));
        }
        let mut out = Vec::new();
        for name in order {
            let (line, slots) = &cases[&name];
            let mut values = BTreeMap::new();
            for label in SiteLabel::ALL {
                let get = |role| {
                    slots
                        .get(&(label, role))
                        .copied()
                        .ok_or_else(|| err(*line, format!("case {name} is missing {label} {role}")))
                };
                let v = if label.class().is_shoulder() {
                    SiteValues::Crossing {
                        over: get(VisitRole::Over)?,
                        under: get(VisitRole::Under)?,
                    }
                } else {
                    SiteValues::Through(get(VisitRole::Through)?)
                };
                values.insert(Site::Label(label), v);
            }
            out.push(FixtureCase {
                name,
                table: TraversalTable::from_values(values),
            });
        }
        Ok(Table1Fixture { cases: out })
    }

    pub fn builtin() -> Table1Fixture {
        Table1Fixture::parse(TABLE1_CSV).expect("shipped fixture parses")
    }
}

impl Errata {
    pub fn parse(text: &str) -> Result<Errata, FixtureParseError> {
        let mut entries = Vec::new();
        for row in read_rows(text, &ERRATA_HEADER)? {
            let (site, role) = parse_slot(row.line, &row.fields[1], &row.fields[2])?;
            entries.push(Erratum {
                case: row.fields[0].clone(),
                site,
                role,
                value: parse_value(row.line, &row.fields[3])?,
                corrected_value: parse_value(row.line, &row.fields[4])?,
            });
        }
        Ok(Errata { entries })
    }

    pub fn builtin() -> Errata {
        Errata::parse(TABLE1_ERRATA_CSV).expect("shipped errata parse")
    }

    fn for_case<'a>(&'a self, case: &'a str) -> impl Iterator<Item = &'a Erratum> + 'a {
        self.entries.iter().filter(move |e| e.case == case)
    }
}

impl fmt::Display for Erratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} -> {}",
            self.site, self.role, self.value, self.corrected_value
        )
    }
}

fn apply_erratum(table: &TraversalTable, e: &Erratum) -> Option<TraversalTable> {
    if table.value(e.site, e.role)? != e.value {
        return None;
    }
    let mut values = table.values().clone();
    let slot = values.get_mut(&Site::Label(e.site))?;
    match (slot, e.role) {
        (SiteValues::Through(v), VisitRole::Through) => *v = e.corrected_value,
        (SiteValues::Crossing { over, .. }, VisitRole::Over) => *over = e.corrected_value,
        (SiteValues::Crossing { under, .. }, VisitRole::Under) => *under = e.corrected_value,
        _ => return None,
    }
    Some(TraversalTable::from_values(values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatchStatus {
    Matched,
    MatchedWithErratum,
    Unmatched,
}

impl MatchStatus {
    pub fn name(self) -> &'static str {
        match self {
            MatchStatus::Matched => "MATCHED",
            MatchStatus::MatchedWithErratum => "MATCHED_WITH_ERRATUM",
            MatchStatus::Unmatched => "UNMATCHED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub status: MatchStatus,
    /// Label of the generated state that reproduces the case.
    pub matched_by: Option<String>,
    /// Permutation problems in the raw fixture row.
    pub violations: Vec<String>,
    pub corrections: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub cases: Vec<CaseReport>,
}

impl FixtureReport {
    pub fn all_matched(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.status != MatchStatus::Unmatched)
    }

    pub fn case(&self, name: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.case == name)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            write!(f, "{}: {}", c.case, c.status.name())?;
            if let Some(by) = &c.matched_by {
                write!(f, " by {by}")?;
            }
            if !c.corrections.is_empty() {
                write!(f, " [erratum {}]", c.corrections.join("; "))?;
            }
            writeln!(f)?;
            for v in &c.violations {
                writeln!(f, "{}: invalid row: {v}", c.case)?;
            }
        }
        Ok(())
    }
}

fn describe_defects(table: &TraversalTable) -> Vec<String> {
    let (dups, missing) = table.permutation_defects();
    let mut out: Vec<String> = dups
        .iter()
        .map(|(v, c)| format!("value {v} appears {c} times"))
        .collect();
    out.extend(missing.iter().map(|v| format!("value {v} is missing")));
    out
}

/// Matches every fixture case against the ensemble, exactly first and then
/// with that case's errata applied.
pub fn check_fixture(
    ensemble: &StateEnsemble,
    fixture: &Table1Fixture,
    errata: Option<&Errata>,
) -> FixtureReport {
    let cases = fixture
        .cases
        .iter()
        .map(|case| {
            let violations = describe_defects(&case.table);
            if let Some(s) = ensemble.find_table(&case.table) {
                return CaseReport {
                    case: case.name.clone(),
                    status: MatchStatus::Matched,
                    matched_by: Some(s.label()),
                    violations,
                    corrections: vec![],
                };
            }
            let mut corrected = case.table.clone();
            let mut corrections = Vec::new();
            for e in errata.into_iter().flat_map(|e| e.for_case(&case.name)) {
                if let Some(t) = apply_erratum(&corrected, e) {
                    corrected = t;
                    corrections.push(e.to_string());
                }
            }
            match (corrections.is_empty(), ensemble.find_table(&corrected)) {
                (false, Some(s)) => CaseReport {
                    case: case.name.clone(),
                    status: MatchStatus::MatchedWithErratum,
                    matched_by: Some(s.label()),
                    violations,
                    corrections,
                },
                _ => CaseReport {
                    case: case.name.clone(),
                    status: MatchStatus::Unmatched,
                    matched_by: None,
                    violations,
                    corrections: vec![],
                },
            }
        })
        .collect();
    FixtureReport { cases }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::canonical_818;
    use crate::traversal::enumerate_representatives;

    fn ensemble() -> StateEnsemble {
        enumerate_representatives(&canonical_818())
            .unwrap()
            .with_mirrors()
    }

    #[test]
    fn builtin_fixture_has_eleven_cases() {
        let f = Table1Fixture::builtin();
        let names: Vec<&str> = f.cases.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            names,
            ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"]
        );
        assert_eq!(Errata::builtin().entries.len(), 1);
    }

    #[test]
    fn case_h_is_not_a_permutation() {
        let f = Table1Fixture::builtin();
        let h = &f.cases[7].table;
        assert_eq!(h.permutation_defects(), (vec![(12, 2)], vec![2]));
        assert!(f
            .cases
            .iter()
            .filter(|c| c.name != "h")
            .all(|c| c.table.is_permutation()));
    }

    #[test]
    fn all_cases_match_with_errata() {
        let r = check_fixture(
            &ensemble(),
            &Table1Fixture::builtin(),
            Some(&Errata::builtin()),
        );
        assert!(r.all_matched(), "{r}");
        assert_eq!(r.case("a").unwrap().status, MatchStatus::Matched);
        assert_eq!(
            r.case("k").unwrap().matched_by.as_deref(),
            Some("mirror(K cw)")
        );
        let h = r.case("h").unwrap();
        assert_eq!(h.status, MatchStatus::MatchedWithErratum);
        assert_eq!(h.matched_by.as_deref(), Some("A ccw under"));
        assert_eq!(
            h.violations,
            ["value 12 appears 2 times", "value 2 is missing"]
        );
    }

    #[test]
    fn without_errata_h_is_unmatched() {
        let r = check_fixture(&ensemble(), &Table1Fixture::builtin(), None);
        assert!(!r.all_matched());
        let bad: Vec<&str> = r
            .cases
            .iter()
            .filter(|c| c.status == MatchStatus::Unmatched)
            .map(|c| c.case.as_str())
            .collect();
        assert_eq!(bad, ["h"]);
        assert!(r
            .to_string()
            .contains("h: invalid row: value 12 appears 2 times"));
    }

    #[test]
    fn stale_erratum_is_ignored() {
        let errata =
            Errata::parse("case,site,role,value,corrected_value\nh,D,over,13,2\n").unwrap();
        let r = check_fixture(&ensemble(), &Table1Fixture::builtin(), Some(&errata));
        assert_eq!(r.case("h").unwrap().status, MatchStatus::Unmatched);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let truncated = "case,site,role,value\na,A,over,13\na,A";
        let e = Table1Fixture::parse(truncated).unwrap_err();
        assert_eq!(e.line, 3);

        let e = Table1Fixture::parse("case,site,role\n").unwrap_err();
        assert_eq!(e.line, 1);

        let e =
            Table1Fixture::parse("case,site,role,value\na,A,over,13\na,K,over,1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("not valid"));

        let e = Table1Fixture::parse("case,site,role,value\na,A,over,13\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("missing"));

        let e = Table1Fixture::parse("case,site,role,value\na,A,over,x\n").unwrap_err();
        assert_eq!(e.line, 2);

        let e = Table1Fixture::parse("case,site,role,value\na,A,over,1\na,A,over,2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("duplicate"));
    }
}
