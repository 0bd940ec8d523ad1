//! Braid words and their closures as diagram words.
//!
//! Conventions: strand positions are numbered 1..n from the innermost
//! circle outwards. In `σ_i` the strand moving from position `i` to `i + 1`
//! passes over; in `σ_i⁻¹` the strand moving from `i + 1` to `i` does. With
//! all closure strands co-oriented `σ_i` is a positive crossing.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{
    canonical_818, cyclic_equivalent, DiagramWord, Site, SiteClass, SiteLabel, Visit, VisitRole,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator {letter} out of range for {strands} strands")]
    OutOfRange { letter: i32, strands: usize },
    #[error("closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    #[error("branch vertices are only defined for the (σ1 σ2⁻¹)⁴ word")]
    VertexRuleInapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<BraidWord, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(&letter) = letters
            .iter()
            .find(|l| **l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(BraidError::OutOfRange { letter, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    /// `(σ1 σ2⁻¹)⁴` on three strands.
    pub fn knot_818() -> BraidWord {
        BraidWord {
            strands: 3,
            letters: [1, -2].repeat(4),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// True for the 8_18 word in either of its two cyclic phases.
    pub fn is_818_word(&self) -> bool {
        self.strands == 3
            && (self.letters == [1, -2].repeat(4) || self.letters == [-2, 1].repeat(4))
    }

    /// Bottom-to-top position map of the closure: strand starting at
    /// position `p` (0-based) ends at `perm[p]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        // at[pos] = strand now at pos
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        cycles
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignedCrossing {
    /// Index of the braid letter that produced this crossing.
    pub id: usize,
    pub site: Site,
    pub sign: i8,
    /// Strands are named by their starting position (1-based).
    pub over_strand: usize,
    pub under_strand: usize,
}

/// A branch vertex placed on an outermost arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchVertex {
    pub site: Site,
    /// Braid letter slot whose outermost arc carries the vertex.
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureDiagram {
    pub word: DiagramWord,
    pub crossings: Vec<SignedCrossing>,
    pub vertices: Vec<BranchVertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexRule {
    /// Insert branch vertices when the word is the 8_18 word.
    #[default]
    Auto,
    Required,
    Omitted,
}

/// One step of the walk along a closed braid.
#[derive(Debug, Clone, Copy)]
enum WalkEvent {
    Crossing { letter: usize, role: VisitRole },
    OuterArc { slot: usize },
}

/// Walks the closure once starting at position 1 before letter 0, noting
/// every crossing passed and every slot spent on the outermost circle.
fn walk(braid: &BraidWord) -> Vec<WalkEvent> {
    let n = braid.strands;
    let mut events = Vec::new();
    let mut pos = 1usize;
    loop {
        for (k, &l) in braid.letters.iter().enumerate() {
            let i = l.unsigned_abs() as usize;
            if pos == i || pos == i + 1 {
                let moving_up = pos == i;
                // σ_i: upward mover is over; σ_i⁻¹: downward mover is over
                let over = if l > 0 { moving_up } else { !moving_up };
                let role = if over {
                    VisitRole::Over
                } else {
                    VisitRole::Under
                };
                events.push(WalkEvent::Crossing { letter: k, role });
                pos = if moving_up { i + 1 } else { i };
            } else if pos == n {
                events.push(WalkEvent::OuterArc { slot: k });
            }
        }
        if pos == 1 {
            break;
        }
    }
    events
}

fn signed_crossings(braid: &BraidWord) -> Vec<(usize, usize, i8)> {
    let mut at: Vec<usize> = (1..=braid.strands).collect();
    braid
        .letters
        .iter()
        .map(|&l| {
            let i = l.unsigned_abs() as usize - 1;
            let (lower, upper) = (at[i], at[i + 1]);
            at.swap(i, i + 1);
            if l > 0 {
                (lower, upper, 1)
            } else {
                (upper, lower, -1)
            }
        })
        .collect()
}

/// Builds the diagram word of a braid closure.
///
/// Crossings of the 8_18 word are labelled inner (`σ1`, A–D), outer
/// (`σ2`, E–H) and vertices I–L, then renamed to agree with
/// [`canonical_818`]. Other braids get crossings numbered by letter index
/// plus one.
pub fn closure_diagram(braid: &BraidWord, rule: VertexRule) -> Result<ClosureDiagram, BraidError> {
    let components = braid.closure_components();
    if components != 1 {
        return Err(BraidError::NotAKnot { components });
    }
    let with_vertices = match rule {
        VertexRule::Auto => braid.is_818_word(),
        VertexRule::Required if !braid.is_818_word() => {
            return Err(BraidError::VertexRuleInapplicable)
        }
        VertexRule::Required => true,
        VertexRule::Omitted => false,
    };
    let events = walk(braid);

    let lettered = with_vertices;
    let mut names: BTreeMap<usize, Site> = BTreeMap::new();
    let mut pools: BTreeMap<SiteClass, Vec<SiteLabel>> = SiteClass::ALL
        .iter()
        .map(|&c| (c, SiteLabel::of_class(c).rev().collect()))
        .collect();
    let mut fresh = |class: SiteClass| Site::Label(pools.get_mut(&class).unwrap().pop().unwrap());

    let mut visits = Vec::new();
    let mut vertex_slots = Vec::new();
    let mut prev_outer_arc = false;
    for ev in &events {
        match *ev {
            WalkEvent::Crossing { letter, role } => {
                prev_outer_arc = false;
                let site = *names.entry(letter).or_insert_with(|| {
                    if lettered {
                        let class = if braid.letters[letter].unsigned_abs() == 1 {
                            SiteClass::InnerShoulder
                        } else {
                            SiteClass::OuterShoulder
                        };
                        fresh(class)
                    } else {
                        Site::Numbered(letter as u32 + 1)
                    }
                });
                visits.push(Visit { site, role });
            }
            WalkEvent::OuterArc { slot } => {
                // one vertex per maximal stretch on the outer circle
                if with_vertices && !prev_outer_arc {
                    let site = fresh(SiteClass::BranchCenter);
                    visits.push(Visit {
                        site,
                        role: VisitRole::Through,
                    });
                    vertex_slots.push((site, slot));
                }
                prev_outer_arc = true;
            }
        }
    }
    let mut word = DiagramWord::new(visits);
    let mut rename: BTreeMap<Site, Site> = BTreeMap::new();
    if with_vertices {
        if let Some(w) = cyclic_equivalent(&word, &canonical_818()) {
            rename = w.bijection;
            word = word.relabeled(|s| rename[&s]);
        }
    }
    let renamed = |s: Site| rename.get(&s).copied().unwrap_or(s);

    let crossings = signed_crossings(braid)
        .into_iter()
        .enumerate()
        .map(|(id, (over_strand, under_strand, sign))| SignedCrossing {
            id,
            site: renamed(names[&id]),
            sign,
            over_strand,
            under_strand,
        })
        .collect();
    let vertices = vertex_slots
        .into_iter()
        .map(|(site, slot)| BranchVertex {
            site: renamed(site),
            slot,
        })
        .collect();
    Ok(ClosureDiagram {
        word,
        crossings,
        vertices,
    })
}

pub fn writhe(crossings: &[SignedCrossing]) -> i64 {
    crossings.iter().map(|c| c.sign as i64).sum()
}
