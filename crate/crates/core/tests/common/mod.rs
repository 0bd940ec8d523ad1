#![allow(dead_code)]

use knot818::{DiagramWord, SiteClass, SiteLabel, Visit, VisitRole};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random complete 12-site word whose crossings pair an odd with an even
/// crossing-visit number, so that a DT code exists. Not necessarily planar.
pub fn random_valid_word<R: Rng>(rng: &mut R) -> DiagramWord {
    let mut evens: Vec<usize> = (0..8).map(|k| 2 * k + 1).collect(); // 0-based slot of 2,4,..,16
    evens.shuffle(rng);
    let mut shoulders: Vec<SiteLabel> = SiteLabel::ALL
        .into_iter()
        .filter(|l| l.class() != SiteClass::BranchCenter)
        .collect();
    shoulders.shuffle(rng);

    let mut slots: Vec<Option<Visit>> = vec![None; 16];
    for (k, (&even, &label)) in evens.iter().zip(&shoulders).enumerate() {
        let odd = 2 * k;
        let (r1, r2) = if rng.gen() {
            (VisitRole::Over, VisitRole::Under)
        } else {
            (VisitRole::Under, VisitRole::Over)
        };
        slots[odd] = Some(Visit::new(label, r1));
        slots[even] = Some(Visit::new(label, r2));
    }
    let mut visits: Vec<Visit> = slots.into_iter().map(Option::unwrap).collect();

    let mut branches = vec![SiteLabel::I, SiteLabel::J, SiteLabel::K, SiteLabel::L];
    branches.shuffle(rng);
    for b in branches {
        let at = rng.gen_range(0..=visits.len());
        visits.insert(at, Visit::new(b, VisitRole::Through));
    }
    DiagramWord::new(visits)
}

/// Small-coefficient polynomial helpers independent of `LaurentPoly`.
pub mod intpoly {
    pub fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| a.get(i).unwrap_or(&0) - b.get(i).unwrap_or(&0))
            .collect()
    }

    pub fn trim(mut a: Vec<i64>) -> Vec<i64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }
}
