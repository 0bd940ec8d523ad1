//! Traversal tables: walk the diagram word once from a chosen start and
//! hand out the values 1, 2, ..., one per visit.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{
    validate_word, DiagramWord, Site, SiteClass, SiteLabel, SymmetryOp, VisitRole,
};

/// `Cw` walks the stored word forwards. The canonical word is stored so
/// that `(K, Cw)` reproduces the first published allocation row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Direction {
    Cw,
    Ccw,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Cw => "cw",
            Direction::Ccw => "ccw",
        }
    }

    fn step(self) -> isize {
        match self {
            Direction::Cw => 1,
            Direction::Ccw => -1,
        }
    }
}

impl FromStr for Direction {
    type Err = TraversalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cw" => Ok(Direction::Cw),
            "ccw" => Ok(Direction::Ccw),
            _ => Err(TraversalError::BadSpec(format!("unknown direction {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraversalError {
    #[error("start site {0} does not occur in the word")]
    StartNotFound(Site),
    #[error("no {role} visit at start site {site}")]
    RoleMissing { site: Site, role: VisitRole },
    #[error("invalid start specification: {0}")]
    BadSpec(String),
    #[error("word is not a complete 12-site diagram: {0}")]
    InvalidWord(String),
}

/// Where a traversal begins. Branch centres take no entry role; crossing
/// sites must say whether the walk starts on the over or under passage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StartSpec {
    site: Site,
    direction: Direction,
    entry_role: Option<VisitRole>,
}

impl StartSpec {
    pub fn new(
        site: impl Into<Site>,
        direction: Direction,
        entry_role: Option<VisitRole>,
    ) -> Result<StartSpec, TraversalError> {
        let site = site.into();
        match (site.is_branch(), entry_role) {
            (true, Some(r)) => Err(TraversalError::BadSpec(format!(
                "branch site {site} takes no entry role, got {r}"
            ))),
            (false, None) => Err(TraversalError::BadSpec(format!(
                "crossing site {site} needs an entry role (over or under)"
            ))),
            (false, Some(VisitRole::Through)) => Err(TraversalError::BadSpec(format!(
                "crossing site {site} cannot be entered through"
            ))),
            _ => Ok(StartSpec {
                site,
                direction,
                entry_role,
            }),
        }
    }

    pub fn site(&self) -> Site {
        self.site
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn entry_role(&self) -> Option<VisitRole> {
        self.entry_role
    }

    /// The start describing the same walk after applying `op` to the word.
    pub fn mapped(&self, op: SymmetryOp) -> StartSpec {
        StartSpec {
            site: op.map_site(self.site),
            direction: self.direction,
            entry_role: self.entry_role.map(|r| op.map_role(r)),
        }
    }
}

impl fmt::Display for StartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.site, self.direction.name())?;
        if let Some(r) = self.entry_role {
            write!(f, " {r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SiteValues {
    Through(u32),
    Crossing { over: u32, under: u32 },
}

impl SiteValues {
    /// Over + under at a crossing, the single value at a vertex.
    pub fn total(self) -> u64 {
        match self {
            SiteValues::Through(v) => v as u64,
            SiteValues::Crossing { over, under } => over as u64 + under as u64,
        }
    }
}

/// Values assigned to every site visit, keyed by site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct TraversalTable {
    values: BTreeMap<Site, SiteValues>,
}

impl TraversalTable {
    pub fn from_values(values: BTreeMap<Site, SiteValues>) -> TraversalTable {
        TraversalTable { values }
    }

    pub fn values(&self) -> &BTreeMap<Site, SiteValues> {
        &self.values
    }

    pub fn get(&self, site: impl Into<Site>) -> Option<SiteValues> {
        self.values.get(&site.into()).copied()
    }

    pub fn value(&self, site: impl Into<Site>, role: VisitRole) -> Option<u32> {
        match (self.get(site)?, role) {
            (SiteValues::Through(v), VisitRole::Through) => Some(v),
            (SiteValues::Crossing { over, .. }, VisitRole::Over) => Some(over),
            (SiteValues::Crossing { under, .. }, VisitRole::Under) => Some(under),
            _ => None,
        }
    }

    /// Every assigned value, one per visit slot.
    pub fn all_values(&self) -> Vec<u32> {
        self.values
            .values()
            .flat_map(|v| match *v {
                SiteValues::Through(t) => vec![t],
                SiteValues::Crossing { over, under } => vec![over, under],
            })
            .collect()
    }

    pub fn slot_count(&self) -> usize {
        self.all_values().len()
    }

    /// Values occurring more than once (with counts) and values of
    /// `1..=slots` that never occur.
    pub fn permutation_defects(&self) -> (Vec<(u32, usize)>, Vec<u32>) {
        let n = self.slot_count() as u32;
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for v in self.all_values() {
            *counts.entry(v).or_default() += 1;
        }
        let dups = counts
            .iter()
            .filter(|(_, &c)| c > 1)
            .map(|(&v, &c)| (v, c))
            .collect();
        let missing = (1..=n).filter(|v| !counts.contains_key(v)).collect();
        (dups, missing)
    }

    pub fn is_permutation(&self) -> bool {
        let (d, m) = self.permutation_defects();
        d.is_empty() && m.is_empty()
    }

    /// Over and under values exchanged at every crossing.
    pub fn mirrored(&self) -> TraversalTable {
        let values = self
            .values
            .iter()
            .map(|(&s, &v)| {
                let v = match v {
                    SiteValues::Crossing { over, under } => SiteValues::Crossing {
                        over: under,
                        under: over,
                    },
                    t => t,
                };
                (s, v)
            })
            .collect();
        TraversalTable { values }
    }

    /// Relabels sites by `op`; a reflecting op also exchanges over/under.
    pub fn relabeled(&self, op: SymmetryOp) -> TraversalTable {
        let t = TraversalTable {
            values: self
                .values
                .iter()
                .map(|(&s, &v)| (op.map_site(s), v))
                .collect(),
        };
        if op.reflected {
            t.mirrored()
        } else {
            t
        }
    }
}

/// Swaps over and under values at every shoulder.
pub fn mirror_table(table: &TraversalTable) -> TraversalTable {
    table.mirrored()
}

/// Walks `word` from `start` and assigns 1, 2, ... in visit order.
pub fn traverse(word: &DiagramWord, start: &StartSpec) -> Result<TraversalTable, TraversalError> {
    let positions = word.positions_of(start.site);
    if positions.is_empty() {
        return Err(TraversalError::StartNotFound(start.site));
    }
    let wanted = start.entry_role.unwrap_or(VisitRole::Through);
    let first = positions
        .into_iter()
        .find(|&p| word.visits()[p].role == wanted)
        .ok_or(TraversalError::RoleMissing {
            site: start.site,
            role: wanted,
        })?;

    let mut values: BTreeMap<Site, SiteValues> = BTreeMap::new();
    let step = start.direction.step();
    for k in 0..word.len() {
        let v = word.at(first as isize + step * k as isize);
        let value = k as u32 + 1;
        let entry = values.entry(v.site).or_insert(match v.role {
            VisitRole::Through => SiteValues::Through(value),
            _ => SiteValues::Crossing { over: 0, under: 0 },
        });
        match (entry, v.role) {
            (SiteValues::Crossing { over, .. }, VisitRole::Over) => *over = value,
            (SiteValues::Crossing { under, .. }, VisitRole::Under) => *under = value,
            _ => {}
        }
    }
    Ok(TraversalTable { values })
}

/// One member of an ensemble: a start, whether the table was mirrored
/// afterwards, and the resulting table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct State {
    pub spec: StartSpec,
    pub mirrored: bool,
    pub table: TraversalTable,
}

impl State {
    pub fn label(&self) -> String {
        if self.mirrored {
            format!("mirror({})", self.spec)
        } else {
            self.spec.to_string()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct StateEnsemble {
    pub states: Vec<State>,
}

impl StateEnsemble {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Adds the mirror of every state.
    pub fn with_mirrors(&self) -> StateEnsemble {
        let mirrors = self.states.iter().map(|s| State {
            spec: s.spec,
            mirrored: !s.mirrored,
            table: s.table.mirrored(),
        });
        StateEnsemble {
            states: self.states.iter().cloned().chain(mirrors).collect(),
        }
    }

    pub fn find_table(&self, table: &TraversalTable) -> Option<&State> {
        self.states.iter().find(|s| &s.table == table)
    }
}

fn require_model(word: &DiagramWord) -> Result<(), TraversalError> {
    match validate_word(word).first() {
        Some(d) => Err(TraversalError::InvalidWord(d.to_string())),
        None => Ok(()),
    }
}

fn specs_for(label: SiteLabel) -> Vec<StartSpec> {
    let roles: Vec<Option<VisitRole>> = if label.class() == SiteClass::BranchCenter {
        vec![None]
    } else {
        vec![Some(VisitRole::Over), Some(VisitRole::Under)]
    };
    let mut out = Vec::new();
    for dir in [Direction::Cw, Direction::Ccw] {
        for &role in &roles {
            out.push(StartSpec::new(label, dir, role).expect("role matches class"));
        }
    }
    out
}

fn run(word: &DiagramWord, specs: Vec<StartSpec>) -> Result<StateEnsemble, TraversalError> {
    let states = specs
        .into_iter()
        .map(|spec| {
            Ok(State {
                table: traverse(word, &spec)?,
                spec,
                mirrored: false,
            })
        })
        .collect::<Result<_, TraversalError>>()?;
    Ok(StateEnsemble { states })
}

/// One start per symmetry class (K, F, A) in each direction and, for
/// shoulders, each entry role: 2 + 4 + 4 = 10 states.
pub fn enumerate_representatives(word: &DiagramWord) -> Result<StateEnsemble, TraversalError> {
    require_model(word)?;
    let specs = [SiteLabel::K, SiteLabel::F, SiteLabel::A]
        .into_iter()
        .flat_map(specs_for)
        .collect();
    run(word, specs)
}

/// Every start: 4 branch × 2 + 8 shoulder × 4 = 40 states, ordered by
/// site letter, then direction, then role.
pub fn enumerate_all(word: &DiagramWord) -> Result<StateEnsemble, TraversalError> {
    require_model(word)?;
    run(
        word,
        SiteLabel::ALL.into_iter().flat_map(specs_for).collect(),
    )
}

/// Which family of states an analysis averages over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EnsembleKind {
    Reps10,
    All40,
    WithMirrors,
}

impl EnsembleKind {
    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Reps10 => "reps10",
            EnsembleKind::All40 => "all40",
            EnsembleKind::WithMirrors => "with_mirrors",
        }
    }

    pub fn build(self, word: &DiagramWord) -> Result<StateEnsemble, TraversalError> {
        match self {
            EnsembleKind::Reps10 => enumerate_representatives(word),
            EnsembleKind::All40 => enumerate_all(word),
            EnsembleKind::WithMirrors => Ok(enumerate_representatives(word)?.with_mirrors()),
        }
    }
}

impl FromStr for EnsembleKind {
    type Err = TraversalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reps10" => Ok(EnsembleKind::Reps10),
            "all40" => Ok(EnsembleKind::All40),
            "with_mirrors" => Ok(EnsembleKind::WithMirrors),
            _ => Err(TraversalError::BadSpec(format!("unknown ensemble {s:?}"))),
        }
    }
}

/// Groups ensemble members into orbits under the quarter-turn relabelling.
///
/// Each orbit lists state indices in ensemble order. A state whose rotated
/// table is missing from the ensemble ends up in a truncated orbit, which
/// the caller sees as an orbit of the wrong size.
pub fn rotation_orbits(ensemble: &StateEnsemble) -> Vec<Vec<usize>> {
    let turn = SymmetryOp::new(1, false);
    let mut orbit_of: Vec<Option<usize>> = vec![None; ensemble.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..ensemble.len() {
        if orbit_of[i].is_some() {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![i];
        orbit_of[i] = Some(id);
        let mut table = ensemble.states[i].table.relabeled(turn);
        while let Some(j) = ensemble.states.iter().position(|s| s.table == table) {
            if orbit_of[j].is_some() {
                break;
            }
            orbit_of[j] = Some(id);
            members.push(j);
            table = table.relabeled(turn);
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{apply_symmetry, canonical_818};
    use SiteLabel::*;

    fn cross(over: u32, under: u32) -> SiteValues {
        SiteValues::Crossing { over, under }
    }

    #[test]
    fn start_spec_rules() {
        assert!(StartSpec::new(K, Direction::Cw, None).is_ok());
        assert!(StartSpec::new(K, Direction::Cw, Some(VisitRole::Over)).is_err());
        assert!(StartSpec::new(F, Direction::Cw, None).is_err());
        assert!(StartSpec::new(F, Direction::Cw, Some(VisitRole::Through)).is_err());
        assert!(StartSpec::new(Site::Numbered(1), Direction::Ccw, Some(VisitRole::Under)).is_ok());
    }

    #[test]
    fn k_clockwise_is_first_row() {
        let t = traverse(
            &canonical_818(),
            &StartSpec::new(K, Direction::Cw, None).unwrap(),
        )
        .unwrap();
        assert_eq!(t.get(K), Some(SiteValues::Through(1)));
        assert_eq!(t.get(J), Some(SiteValues::Through(6)));
        assert_eq!(t.get(I), Some(SiteValues::Through(11)));
        assert_eq!(t.get(L), Some(SiteValues::Through(16)));
        assert_eq!(t.get(A), Some(cross(13, 19)));
        assert_eq!(t.get(B), Some(cross(8, 14)));
        assert_eq!(t.get(C), Some(cross(3, 9)));
        assert_eq!(t.get(D), Some(cross(18, 4)));
        assert_eq!(t.get(E), Some(cross(5, 12)));
        assert_eq!(t.get(F), Some(cross(20, 7)));
        assert_eq!(t.get(G), Some(cross(15, 2)));
        assert_eq!(t.get(H), Some(cross(10, 17)));
        assert!(t.is_permutation());
    }

    #[test]
    fn k_counterclockwise_starts_like_second_row() {
        let t = traverse(
            &canonical_818(),
            &StartSpec::new(K, Direction::Ccw, None).unwrap(),
        )
        .unwrap();
        assert_eq!(t.value(K, VisitRole::Through), Some(1));
        assert_eq!(t.value(F, VisitRole::Over), Some(2));
        assert_eq!(t.value(A, VisitRole::Under), Some(3));
        assert_eq!(t.value(D, VisitRole::Over), Some(4));
        assert_eq!(t.value(H, VisitRole::Under), Some(5));
        assert_eq!(t.value(L, VisitRole::Through), Some(6));
    }

    #[test]
    fn traverse_errors() {
        let w = canonical_818();
        let spec = StartSpec::new(Site::Numbered(3), Direction::Cw, Some(VisitRole::Over)).unwrap();
        assert_eq!(
            traverse(&w, &spec),
            Err(TraversalError::StartNotFound(Site::Numbered(3)))
        );
        let broken = DiagramWord::new(
            w.visits()
                .iter()
                .copied()
                .filter(|v| !(v.site == Site::Label(F) && v.role == VisitRole::Over))
                .collect(),
        );
        let spec = StartSpec::new(F, Direction::Cw, Some(VisitRole::Over)).unwrap();
        assert_eq!(
            traverse(&broken, &spec),
            Err(TraversalError::RoleMissing {
                site: F.into(),
                role: VisitRole::Over
            })
        );
        assert!(matches!(
            enumerate_all(&broken),
            Err(TraversalError::InvalidWord(_))
        ));
    }

    #[test]
    fn ensemble_sizes() {
        let w = canonical_818();
        assert_eq!(enumerate_representatives(&w).unwrap().len(), 10);
        assert_eq!(enumerate_all(&w).unwrap().len(), 40);
        assert_eq!(EnsembleKind::WithMirrors.build(&w).unwrap().len(), 20);
        let all = enumerate_all(&w).unwrap();
        assert_eq!(all.states[0].spec.to_string(), "A cw over");
        assert_eq!(all.states[39].spec.to_string(), "L ccw");
    }

    #[test]
    fn mirror_is_involution() {
        let w = canonical_818();
        for s in enumerate_all(&w).unwrap().states {
            assert_eq!(mirror_table(&mirror_table(&s.table)), s.table);
            assert!(mirror_table(&s.table).is_permutation());
        }
    }

    #[test]
    fn reflected_word_traverses_to_mirror() {
        let w = canonical_818();
        let m = apply_symmetry(&w, SymmetryOp::new(0, true));
        let spec = StartSpec::new(K, Direction::Cw, None).unwrap();
        assert_eq!(
            traverse(&m, &spec).unwrap(),
            traverse(&w, &spec).unwrap().mirrored()
        );
    }

    #[test]
    fn forty_states_form_ten_orbits() {
        let all = enumerate_all(&canonical_818()).unwrap();
        let orbits = rotation_orbits(&all);
        assert_eq!(orbits.len(), 10);
        assert!(orbits.iter().all(|o| o.len() == 4));
    }

    #[test]
    fn permutation_defects_detects_duplicates() {
        let mut values = traverse(
            &canonical_818(),
            &StartSpec::new(K, Direction::Cw, None).unwrap(),
        )
        .unwrap()
        .values()
        .clone();
        values.insert(D.into(), cross(12, 4));
        let t = TraversalTable::from_values(values);
        assert_eq!(t.permutation_defects(), (vec![(12, 2)], vec![18]));
    }
}
