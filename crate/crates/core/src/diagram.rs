//! Sites, visit roles and cyclic visiting words for knot projections.
//!
//! The twelve lettered sites model the 8_18 projection drawn with four
//! branches: `I..L` are branch centres (plain vertices on the curve),
//! `E..H` are outer shoulder crossings and `A..D` inner shoulder crossings.
//! Small oracle knots use numbered crossing sites instead.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of visits in a complete 12-site word: 4 vertices + 2 × 8 crossings.
pub const WORD_LEN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SiteClass {
    BranchCenter,
    OuterShoulder,
    InnerShoulder,
}

impl SiteClass {
    pub const ALL: [SiteClass; 3] = [
        SiteClass::BranchCenter,
        SiteClass::OuterShoulder,
        SiteClass::InnerShoulder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SiteClass::BranchCenter => "branch_center",
            SiteClass::OuterShoulder => "outer_shoulder",
            SiteClass::InnerShoulder => "inner_shoulder",
        }
    }

    pub fn is_shoulder(self) -> bool {
        self != SiteClass::BranchCenter
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SiteLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
}

impl SiteLabel {
    pub const ALL: [SiteLabel; 12] = [
        SiteLabel::A,
        SiteLabel::B,
        SiteLabel::C,
        SiteLabel::D,
        SiteLabel::E,
        SiteLabel::F,
        SiteLabel::G,
        SiteLabel::H,
        SiteLabel::I,
        SiteLabel::J,
        SiteLabel::K,
        SiteLabel::L,
    ];

    pub fn from_letter(c: char) -> Option<SiteLabel> {
        let idx = (c as u32).checked_sub('A' as u32)? as usize;
        Self::ALL.get(idx).copied()
    }

    pub fn letter(self) -> char {
        (b'A' + self as u8) as char
    }

    pub fn class(self) -> SiteClass {
        match self {
            SiteLabel::A | SiteLabel::B | SiteLabel::C | SiteLabel::D => SiteClass::InnerShoulder,
            SiteLabel::E | SiteLabel::F | SiteLabel::G | SiteLabel::H => SiteClass::OuterShoulder,
            _ => SiteClass::BranchCenter,
        }
    }

    /// Labels of one class in letter order.
    pub fn of_class(class: SiteClass) -> impl DoubleEndedIterator<Item = SiteLabel> {
        Self::ALL.into_iter().filter(move |l| l.class() == class)
    }

    /// Quarter turn of the four-branch picture, taking K to J.
    ///
    /// This is the relabelling induced by shifting the canonical word five
    /// visits forward, so it is an automorphism of that word.
    pub fn quarter_turn(self) -> SiteLabel {
        use SiteLabel::*;
        match self {
            K => J,
            J => I,
            I => L,
            L => K,
            G => F,
            F => E,
            E => H,
            H => G,
            C => B,
            B => A,
            A => D,
            D => C,
        }
    }
}

impl fmt::Display for SiteLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A site on a diagram: one of the twelve lettered sites, or a numbered
/// crossing used for small knots that do not follow the 12-site model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Site {
    Label(SiteLabel),
    Numbered(u32),
}

impl Site {
    pub fn class(self) -> Option<SiteClass> {
        match self {
            Site::Label(l) => Some(l.class()),
            Site::Numbered(_) => None,
        }
    }

    pub fn is_branch(self) -> bool {
        self.class() == Some(SiteClass::BranchCenter)
    }

    pub fn label(self) -> Option<SiteLabel> {
        match self {
            Site::Label(l) => Some(l),
            Site::Numbered(_) => None,
        }
    }

    /// Two sites may be matched by a relabelling only if they share a class.
    fn same_kind(self, other: Site) -> bool {
        match (self, other) {
            (Site::Label(a), Site::Label(b)) => a.class() == b.class(),
            (Site::Numbered(_), Site::Numbered(_)) => true,
            _ => false,
        }
    }
}

impl From<SiteLabel> for Site {
    fn from(l: SiteLabel) -> Self {
        Site::Label(l)
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Label(l) => write!(f, "{l}"),
            Site::Numbered(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VisitRole {
    Over,
    Under,
    Through,
}

impl VisitRole {
    /// Over and Under exchange; Through is fixed.
    pub fn flipped(self) -> VisitRole {
        match self {
            VisitRole::Over => VisitRole::Under,
            VisitRole::Under => VisitRole::Over,
            VisitRole::Through => VisitRole::Through,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VisitRole::Over => "over",
            VisitRole::Under => "under",
            VisitRole::Through => "through",
        }
    }

    pub fn from_name(s: &str) -> Option<VisitRole> {
        match s {
            "over" => Some(VisitRole::Over),
            "under" => Some(VisitRole::Under),
            "through" => Some(VisitRole::Through),
            _ => None,
        }
    }
}

impl fmt::Display for VisitRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Visit {
    pub site: Site,
    pub role: VisitRole,
}

impl Visit {
    pub fn new(site: impl Into<Site>, role: VisitRole) -> Visit {
        Visit {
            site: site.into(),
            role,
        }
    }
}

/// A cyclic sequence of site visits along one traversal of a knot.
///
/// The stored first visit is the basepoint. It only matters for
/// serialization; equivalence checks treat the word cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DiagramWord {
    visits: Vec<Visit>,
}

impl DiagramWord {
    pub fn new(visits: Vec<Visit>) -> DiagramWord {
        DiagramWord { visits }
    }

    pub fn visits(&self) -> &[Visit] {
        &self.visits
    }

    pub fn len(&self) -> usize {
        self.visits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.visits.is_empty()
    }

    /// Visit at cyclic position `i` (0-based, taken mod length).
    pub fn at(&self, i: isize) -> Visit {
        let n = self.visits.len() as isize;
        self.visits[i.rem_euclid(n) as usize]
    }

    /// The same cycle with the basepoint moved `k` visits forward.
    pub fn rotated(&self, k: usize) -> DiagramWord {
        let mut visits = self.visits.clone();
        if !visits.is_empty() {
            let k = k % visits.len();
            visits.rotate_left(k);
        }
        DiagramWord { visits }
    }

    /// The cycle traversed backwards from the same basepoint.
    pub fn reversed(&self) -> DiagramWord {
        let n = self.visits.len() as isize;
        let visits = (0..n).map(|i| self.at(-i)).collect();
        DiagramWord { visits }
    }

    pub fn relabeled(&self, mut f: impl FnMut(Site) -> Site) -> DiagramWord {
        let visits = self
            .visits
            .iter()
            .map(|v| Visit {
                site: f(v.site),
                role: v.role,
            })
            .collect();
        DiagramWord { visits }
    }

    /// Distinct sites in order of first appearance.
    pub fn sites(&self) -> Vec<Site> {
        let mut out: Vec<Site> = Vec::new();
        for v in &self.visits {
            if !out.contains(&v.site) {
                out.push(v.site);
            }
        }
        out
    }

    /// Positions of every visit to `site`.
    pub fn positions_of(&self, site: Site) -> Vec<usize> {
        self.visits
            .iter()
            .enumerate()
            .filter(|(_, v)| v.site == site)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.visits
            .iter()
            .filter(|v| v.role != VisitRole::Through)
            .count()
            / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.visits
            .iter()
            .filter(|v| v.role == VisitRole::Through)
            .count()
    }
}

/// A problem found by [`validate_word`] or [`check_structure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    Length { found: usize },
    Missing { site: Site },
    Multiplicity { site: Site, found: usize },
    RolePair { site: Site },
    WrongRoleForClass { site: Site, role: VisitRole },
    NumberedSite { site: Site },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Length { found } => write!(f, "length {found} ≠ {WORD_LEN}"),
            Diagnostic::Missing { site } => write!(f, "site {site} never visited"),
            Diagnostic::Multiplicity { site, found } => {
                write!(f, "site {site} visited {found} times")
            }
            Diagnostic::RolePair { site } => write!(f, "role-pair violation at {site}"),
            Diagnostic::WrongRoleForClass { site, role } => {
                write!(f, "role {role} not allowed at {site}")
            }
            Diagnostic::NumberedSite { site } => {
                write!(f, "numbered site {site} outside the 12-site model")
            }
        }
    }
}

/// Per-site well-formedness without the 12-site completeness requirement:
/// branch centres are visited once as Through, every other site twice, once
/// Over and once Under.
pub fn check_structure(word: &DiagramWord) -> Vec<Diagnostic> {
    let mut by_site: BTreeMap<Site, Vec<VisitRole>> = BTreeMap::new();
    for v in word.visits() {
        by_site.entry(v.site).or_default().push(v.role);
    }
    let mut out = Vec::new();
    for (site, roles) in by_site {
        if site.is_branch() {
            if let Some(&role) = roles.iter().find(|&&r| r != VisitRole::Through) {
                out.push(Diagnostic::WrongRoleForClass { site, role });
            } else if roles.len() != 1 {
                out.push(Diagnostic::Multiplicity {
                    site,
                    found: roles.len(),
                });
            }
        } else if roles.contains(&VisitRole::Through) {
            out.push(Diagnostic::WrongRoleForClass {
                site,
                role: VisitRole::Through,
            });
        } else if roles.len() != 2 {
            out.push(Diagnostic::Multiplicity {
                site,
                found: roles.len(),
            });
        } else if roles[0] == roles[1] {
            out.push(Diagnostic::RolePair { site });
        }
    }
    out
}

/// Checks a word against the complete 12-site model.
///
/// Returns an empty list iff the word has 20 visits, each branch centre
/// once as Through and each shoulder once Over and once Under.
pub fn validate_word(word: &DiagramWord) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if word.len() != WORD_LEN {
        out.push(Diagnostic::Length { found: word.len() });
    }
    for site in word.sites() {
        if let Site::Numbered(_) = site {
            out.push(Diagnostic::NumberedSite { site });
        }
    }
    out.extend(check_structure(word));
    let present = word.sites();
    for label in SiteLabel::ALL {
        if !present.contains(&Site::Label(label)) {
            out.push(Diagnostic::Missing { site: label.into() });
        }
    }
    out
}

/// The reference 8_18 word.
///
/// Position `v` holds the site visit that receives value `v` in the
/// K-start traversal of the published allocation table.
pub fn canonical_818() -> DiagramWord {
    use SiteLabel::*;
    use VisitRole::*;
    let seq = [
        (K, Through),
        (G, Under),
        (C, Over),
        (D, Under),
        (E, Over),
        (J, Through),
        (F, Under),
        (B, Over),
        (C, Under),
        (H, Over),
        (I, Through),
        (E, Under),
        (A, Over),
        (B, Under),
        (G, Over),
        (L, Through),
        (H, Under),
        (D, Over),
        (A, Under),
        (F, Over),
    ];
    DiagramWord::new(seq.iter().map(|&(s, r)| Visit::new(s, r)).collect())
}

/// An element of the symmetry group of the four-branch picture:
/// `rotation` quarter turns, optionally followed by the mirror across the
/// projection plane (which fixes labels and exchanges Over/Under).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SymmetryOp {
    rotation: u8,
    pub reflected: bool,
}

impl SymmetryOp {
    pub const IDENTITY: SymmetryOp = SymmetryOp {
        rotation: 0,
        reflected: false,
    };

    pub fn new(rotation: i32, reflected: bool) -> SymmetryOp {
        SymmetryOp {
            rotation: rotation.rem_euclid(4) as u8,
            reflected,
        }
    }

    pub fn rotation(self) -> u8 {
        self.rotation
    }

    /// All eight group elements.
    pub fn all() -> impl Iterator<Item = SymmetryOp> {
        (0..4).flat_map(|r| [false, true].map(move |m| SymmetryOp::new(r, m)))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: SymmetryOp) -> SymmetryOp {
        SymmetryOp::new(
            self.rotation as i32 + other.rotation as i32,
            self.reflected ^ other.reflected,
        )
    }

    pub fn inverse(self) -> SymmetryOp {
        SymmetryOp::new(-(self.rotation as i32), self.reflected)
    }

    pub fn map_label(self, label: SiteLabel) -> SiteLabel {
        (0..self.rotation).fold(label, |l, _| l.quarter_turn())
    }

    /// Numbered sites are left alone.
    pub fn map_site(self, site: Site) -> Site {
        match site {
            Site::Label(l) => Site::Label(self.map_label(l)),
            other => other,
        }
    }

    pub fn map_role(self, role: VisitRole) -> VisitRole {
        if self.reflected {
            role.flipped()
        } else {
            role
        }
    }
}

pub fn apply_symmetry(word: &DiagramWord, op: SymmetryOp) -> DiagramWord {
    let visits = word
        .visits()
        .iter()
        .map(|v| Visit {
            site: op.map_site(v.site),
            role: op.map_role(v.role),
        })
        .collect();
    DiagramWord::new(visits)
}

/// Evidence that two words describe the same cyclic diagram:
/// `target[i] = bijection(source[offset ± i])`, with `-` when `reversed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub offset: usize,
    pub reversed: bool,
    pub bijection: BTreeMap<Site, Site>,
}

impl Witness {
    pub fn is_identity_map(&self) -> bool {
        self.bijection.iter().all(|(a, b)| a == b)
    }

    fn moved(&self) -> usize {
        self.bijection.iter().filter(|(a, b)| a != b).count()
    }

    /// Maps `source` onto the word this witness was found for.
    pub fn apply(&self, source: &DiagramWord) -> DiagramWord {
        let n = source.len() as isize;
        let o = self.offset as isize;
        let visits = (0..n)
            .map(|i| {
                let v = if self.reversed {
                    source.at(o - i)
                } else {
                    source.at(o + i)
                };
                Visit {
                    site: self.bijection[&v.site],
                    role: v.role,
                }
            })
            .collect();
        DiagramWord::new(visits)
    }

    /// Witness for the opposite direction, given the common word length.
    pub fn inverse(&self, len: usize) -> Witness {
        let offset = if self.reversed || len == 0 {
            self.offset
        } else {
            (len - self.offset % len) % len
        };
        Witness {
            offset,
            reversed: self.reversed,
            bijection: self.bijection.iter().map(|(a, b)| (*b, *a)).collect(),
        }
    }
}

fn align(w1: &DiagramWord, w2: &DiagramWord, offset: usize, reversed: bool) -> Option<Witness> {
    let n = w1.len() as isize;
    let o = offset as isize;
    let mut fwd: BTreeMap<Site, Site> = BTreeMap::new();
    let mut back: BTreeMap<Site, Site> = BTreeMap::new();
    for i in 0..n {
        let a = if reversed { w1.at(o - i) } else { w1.at(o + i) };
        let b = w2.at(i);
        if a.role != b.role || !a.site.same_kind(b.site) {
            return None;
        }
        if *fwd.entry(a.site).or_insert(b.site) != b.site {
            return None;
        }
        if *back.entry(b.site).or_insert(a.site) != a.site {
            return None;
        }
    }
    Some(Witness {
        offset,
        reversed,
        bijection: fwd,
    })
}

/// Searches every rotation offset and both directions for a class-preserving
/// relabelling that maps `w1` onto `w2`.
///
/// When several witnesses exist the one moving the fewest labels wins, then
/// forward before reversed, then the smallest offset.
pub fn cyclic_equivalent(w1: &DiagramWord, w2: &DiagramWord) -> Option<Witness> {
    if w1.len() != w2.len() {
        return None;
    }
    if w1.is_empty() {
        return Some(Witness {
            offset: 0,
            reversed: false,
            bijection: BTreeMap::new(),
        });
    }
    let mut best: Option<Witness> = None;
    for reversed in [false, true] {
        for offset in 0..w1.len() {
            if let Some(w) = align(w1, w2, offset, reversed) {
                if best.as_ref().is_none_or(|b| w.moved() < b.moved()) {
                    best = Some(w);
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_partition_twelve_labels() {
        assert_eq!(SiteLabel::ALL.len(), 12);
        let count = |c| SiteLabel::of_class(c).count();
        assert_eq!(count(SiteClass::BranchCenter), 4);
        assert_eq!(count(SiteClass::OuterShoulder), 4);
        assert_eq!(count(SiteClass::InnerShoulder), 4);
        assert_eq!(SiteLabel::from_letter('K'), Some(SiteLabel::K));
        assert_eq!(SiteLabel::from_letter('M'), None);
        assert_eq!(SiteLabel::from_letter('a'), None);
    }

    #[test]
    fn canonical_word_is_valid() {
        let w = canonical_818();
        assert_eq!(validate_word(&w), vec![]);
        assert_eq!(w.visits()[0], Visit::new(SiteLabel::K, VisitRole::Through));
        assert_eq!(w.visits()[1], Visit::new(SiteLabel::G, VisitRole::Under));
        let roles = |r| w.visits().iter().filter(|v| v.role == r).count();
        assert_eq!(roles(VisitRole::Through), 4);
        assert_eq!(roles(VisitRole::Over), 8);
        assert_eq!(roles(VisitRole::Under), 8);
    }

    #[test]
    fn double_over_is_one_role_pair_violation() {
        let mut visits = canonical_818().visits().to_vec();
        for v in visits
            .iter_mut()
            .filter(|v| v.site == Site::Label(SiteLabel::G))
        {
            v.role = VisitRole::Over;
        }
        let diags = validate_word(&DiagramWord::new(visits));
        assert_eq!(
            diags,
            vec![Diagnostic::RolePair {
                site: SiteLabel::G.into()
            }]
        );
        assert_eq!(diags[0].to_string(), "role-pair violation at G");
    }

    #[test]
    fn empty_word_reports_length() {
        let diags = validate_word(&DiagramWord::default());
        assert_eq!(diags[0], Diagnostic::Length { found: 0 });
        assert_eq!(diags[0].to_string(), "length 0 ≠ 20");
    }

    #[test]
    fn through_on_shoulder_is_flagged() {
        let mut visits = canonical_818().visits().to_vec();
        visits[2].role = VisitRole::Through;
        let diags = validate_word(&DiagramWord::new(visits));
        assert_eq!(
            diags,
            vec![Diagnostic::WrongRoleForClass {
                site: SiteLabel::C.into(),
                role: VisitRole::Through
            }]
        );
    }

    #[test]
    fn quarter_turn_is_word_automorphism() {
        let w = canonical_818();
        let turned = apply_symmetry(&w, SymmetryOp::new(1, false));
        assert_eq!(turned, w.rotated(5));
        for l in SiteLabel::ALL {
            assert_eq!(l.quarter_turn().class(), l.class());
        }
    }

    #[test]
    fn symmetry_identity_and_order() {
        let w = canonical_818();
        assert_eq!(apply_symmetry(&w, SymmetryOp::IDENTITY), w);
        let r = SymmetryOp::new(1, false);
        let mut x = w.clone();
        for _ in 0..4 {
            x = apply_symmetry(&x, r);
        }
        assert_eq!(x, w);
    }

    #[test]
    fn reflection_swaps_roles() {
        let w = canonical_818();
        let m = apply_symmetry(&w, SymmetryOp::new(0, true));
        assert_eq!(m.visits()[1], Visit::new(SiteLabel::G, VisitRole::Over));
        assert_eq!(m.visits()[0], Visit::new(SiteLabel::K, VisitRole::Through));
    }

    #[test]
    fn group_action_composes() {
        let w = canonical_818();
        for a in SymmetryOp::all() {
            for b in SymmetryOp::all() {
                let lhs = apply_symmetry(&apply_symmetry(&w, b), a);
                assert_eq!(lhs, apply_symmetry(&w, a.compose(b)));
            }
            assert_eq!(apply_symmetry(&apply_symmetry(&w, a), a.inverse()), w);
        }
    }

    #[test]
    fn equivalence_reflexive_and_rotation() {
        let w = canonical_818();
        let id = cyclic_equivalent(&w, &w).unwrap();
        assert_eq!((id.offset, id.reversed), (0, false));
        assert!(id.is_identity_map());

        let r5 = w.rotated(5);
        let wit = cyclic_equivalent(&w, &r5).unwrap();
        assert_eq!(wit.offset, 5);
        assert!(wit.is_identity_map());
        assert_eq!(wit.apply(&w), r5);

        let back = wit.inverse(w.len());
        assert_eq!(back.apply(&r5), w);
    }

    #[test]
    fn equivalence_detects_reversal_and_relabel() {
        let w = canonical_818();
        let other = apply_symmetry(&w.reversed().rotated(7), SymmetryOp::new(3, false));
        let wit = cyclic_equivalent(&w, &other).unwrap();
        assert_eq!(wit.apply(&w), other);
        let inv = wit.inverse(w.len());
        assert_eq!(inv.apply(&other), w);
    }

    #[test]
    fn mirrored_rotation_keeps_word_valid() {
        let m = apply_symmetry(&canonical_818(), SymmetryOp::new(2, true));
        assert!(validate_word(&m).is_empty());
    }

    #[test]
    fn no_witness_for_class_breaking_words() {
        let w = canonical_818();
        // exchange an inner and an outer label
        let swapped = w.relabeled(|s| match s {
            Site::Label(SiteLabel::A) => Site::Label(SiteLabel::E),
            Site::Label(SiteLabel::E) => Site::Label(SiteLabel::A),
            s => s,
        });
        assert!(cyclic_equivalent(&w, &swapped).is_none());
        assert!(cyclic_equivalent(&w, &DiagramWord::default()).is_none());
    }
}
