//! Text formats: extended Gauss code, Dowker–Thistlethwaite codes and
//! braid words.
//!
//! Extended Gauss code is a whitespace separated token list. `O<x>` and
//! `U<x>` are over- and under-visits of crossing `x`, `V<x>` a pass through a
//! branch vertex. `x` is a letter `A`–`L` in the 12-site model, or a
//! positive integer for plain numbered crossings (`O1 U2 O3 U1 O2 U3`).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::diagram::{
    check_structure, validate_word, DiagramWord, Site, SiteLabel, Visit, VisitRole,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussParseError {
    #[error("empty Gauss code")]
    Empty,
    #[error("unknown token {token:?} at index {index}")]
    UnknownToken { index: usize, token: String },
    #[error("token {token:?} at index {index} has the wrong role for its site")]
    RoleMismatch { index: usize, token: String },
    #[error("token {token:?} at index {index} mixes numbered and lettered sites")]
    MixedLabels { index: usize, token: String },
    #[error("{}", multiplicity_message(*.index, *.site, *.role, *.found))]
    Multiplicity {
        index: Option<usize>,
        site: Site,
        role: VisitRole,
        found: usize,
    },
}

fn multiplicity_message(index: Option<usize>, site: Site, role: VisitRole, found: usize) -> String {
    match index {
        Some(i) => format!("site {site} has {found} {role} visits (token index {i})"),
        None => format!("site {site} has {found} {role} visits"),
    }
}

fn parse_token(index: usize, token: &str) -> Result<Visit, GaussParseError> {
    let unknown = || GaussParseError::UnknownToken {
        index,
        token: token.to_string(),
    };
    let mut chars = token.chars();
    let role = match chars.next() {
        Some('O') => VisitRole::Over,
        Some('U') => VisitRole::Under,
        Some('V') => VisitRole::Through,
        _ => return Err(unknown()),
    };
    let rest = chars.as_str();
    let site = if rest.len() == 1 {
        let c = rest.chars().next().unwrap();
        if c.is_ascii_digit() {
            numbered(rest).ok_or_else(unknown)?
        } else {
            Site::Label(SiteLabel::from_letter(c).ok_or_else(unknown)?)
        }
    } else {
        numbered(rest).ok_or_else(unknown)?
    };
    let role_fits = match site {
        Site::Label(l) => l.class().is_shoulder() != (role == VisitRole::Through),
        Site::Numbered(_) => role != VisitRole::Through,
    };
    if !role_fits {
        return Err(GaussParseError::RoleMismatch {
            index,
            token: token.to_string(),
        });
    }
    Ok(Visit { site, role })
}

fn numbered(s: &str) -> Option<Site> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    match s.parse::<u32>() {
        Ok(n) if n > 0 => Some(Site::Numbered(n)),
        _ => None,
    }
}

/// Decodes an extended Gauss code.
///
/// Lettered texts must describe the complete 12-site model. Numbered texts
/// only need one Over and one Under visit per crossing.
pub fn parse_extended_gauss(text: &str) -> Result<DiagramWord, GaussParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(GaussParseError::Empty);
    }
    let mut visits = Vec::with_capacity(tokens.len());
    let mut counts: BTreeMap<(Site, VisitRole), usize> = BTreeMap::new();
    let mut lettered = None;
    for (index, token) in tokens.iter().enumerate() {
        let visit = parse_token(index, token)?;
        let is_letter = matches!(visit.site, Site::Label(_));
        if *lettered.get_or_insert(is_letter) != is_letter {
            return Err(GaussParseError::MixedLabels {
                index,
                token: token.to_string(),
            });
        }
        let c = counts.entry((visit.site, visit.role)).or_insert(0);
        *c += 1;
        if *c > 1 {
            return Err(GaussParseError::Multiplicity {
                index: Some(index),
                site: visit.site,
                role: visit.role,
                found: *c,
            });
        }
        visits.push(visit);
    }
    let word = DiagramWord::new(visits);
    if lettered == Some(true) {
        // Duplicates were rejected above, so what remains is absence.
        for label in SiteLabel::ALL {
            let roles: &[VisitRole] = if label.class().is_shoulder() {
                &[VisitRole::Over, VisitRole::Under]
            } else {
                &[VisitRole::Through]
            };
            for &role in roles {
                if !counts.contains_key(&(label.into(), role)) {
                    return Err(GaussParseError::Multiplicity {
                        index: None,
                        site: label.into(),
                        role,
                        found: 0,
                    });
                }
            }
        }
        debug_assert!(validate_word(&word).is_empty());
    } else {
        for site in word.sites() {
            for role in [VisitRole::Over, VisitRole::Under] {
                if !counts.contains_key(&(site, role)) {
                    return Err(GaussParseError::Multiplicity {
                        index: None,
                        site,
                        role,
                        found: 0,
                    });
                }
            }
        }
    }
    Ok(word)
}

fn token(v: &Visit) -> String {
    let prefix = match v.role {
        VisitRole::Over => 'O',
        VisitRole::Under => 'U',
        VisitRole::Through => 'V',
    };
    format!("{prefix}{}", v.site)
}

/// Single-space separated tokens starting from the word's basepoint.
pub fn emit_extended_gauss(word: &DiagramWord) -> String {
    word.visits()
        .iter()
        .map(token)
        .collect::<Vec<_>>()
        .join(" ")
}

/// A Dowker–Thistlethwaite code: for each odd visit number 1, 3, 5, ...
/// the even visit number paired with it at the same crossing, negated when
/// the even-numbered visit passes over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DtCode(pub Vec<i32>);

impl DtCode {
    pub fn is_even_permutation_code(&self) -> bool {
        let mut abs: Vec<i32> = self.0.iter().map(|v| v.abs()).collect();
        abs.sort_unstable();
        abs.iter()
            .enumerate()
            .all(|(i, &v)| v == 2 * (i as i32 + 1))
    }
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DtError {
    #[error("malformed word: {0}")]
    Malformed(String),
    #[error("both visits to {site} have the same parity; no DT code exists")]
    ParityViolation { site: Site },
}

/// Numbers crossing visits 1..2c in word order (branch vertices skipped)
/// and pairs odd with even numbers per crossing.
pub fn gauss_to_dt(word: &DiagramWord) -> Result<DtCode, DtError> {
    if let Some(d) = check_structure(word).first() {
        return Err(DtError::Malformed(d.to_string()));
    }
    let mut seen: BTreeMap<Site, (usize, VisitRole)> = BTreeMap::new();
    let mut partner_of_odd: BTreeMap<usize, i32> = BTreeMap::new();
    let crossing_visits = word
        .visits()
        .iter()
        .filter(|v| v.role != VisitRole::Through);
    for (i, v) in crossing_visits.enumerate() {
        let num = i + 1;
        match seen.remove(&v.site) {
            None => {
                seen.insert(v.site, (num, v.role));
            }
            Some((first, first_role)) => {
                if first % 2 == num % 2 {
                    return Err(DtError::ParityViolation { site: v.site });
                }
                let (odd, even, even_role) = if first % 2 == 1 {
                    (first, num, v.role)
                } else {
                    (num, first, first_role)
                };
                let sign = if even_role == VisitRole::Over { -1 } else { 1 };
                partner_of_odd.insert(odd, sign * even as i32);
            }
        }
    }
    Ok(DtCode(partner_of_odd.into_values().collect()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidParseError {
    #[error("braid word has no letters")]
    Empty,
    #[error("token {token:?} at index {index} is not an integer")]
    NonInteger { index: usize, token: String },
    #[error("generator {value} at index {index} out of range for {strands} strands")]
    OutOfRange {
        index: usize,
        value: i64,
        strands: usize,
    },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Parses whitespace separated signed generator indices; `i` is `σ_i`,
/// `-i` its inverse. Empty words are rejected.
pub fn parse_braid_word(text: &str, strands: usize) -> Result<BraidWord, BraidParseError> {
    let word = parse_braid_word_allow_empty(text, strands)?;
    if word.letters().is_empty() {
        return Err(BraidParseError::Empty);
    }
    Ok(word)
}

/// Like [`parse_braid_word`] but accepts the trivial braid.
pub fn parse_braid_word_allow_empty(
    text: &str,
    strands: usize,
) -> Result<BraidWord, BraidParseError> {
    if strands < 2 {
        return Err(BraidError::TooFewStrands(strands).into());
    }
    let mut letters = Vec::new();
    for (index, tok) in text.split_whitespace().enumerate() {
        let value: i64 = tok.parse().map_err(|_| BraidParseError::NonInteger {
            index,
            token: tok.to_string(),
        })?;
        if value == 0 || value.unsigned_abs() as usize >= strands {
            return Err(BraidParseError::OutOfRange {
                index,
                value,
                strands,
            });
        }
        letters.push(value as i32);
    }
    Ok(BraidWord::new(strands, letters)?)
}
