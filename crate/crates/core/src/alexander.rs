//! Reduced Burau representation and the Alexander polynomial of a braid
//! closure.
//!
//! Generator convention (1-based rows): `ρ(σ_i)` is the identity except in
//! row `i`, which holds `t` at column `i - 1`, `-t` at column `i` and `1` at
//! column `i + 1` (entries falling outside the matrix are dropped). For three
//! strands this gives `ρ(σ1) = [[-t, 1], [0, 1]]` and
//! `ρ(σ2) = [[1, 0], [t, -t]]`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::laurent::{LaurentPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Square matrix over `Z[t, t⁻¹]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn identity(dim: usize) -> PolyMatrix {
        assert!(dim >= 1, "matrix dimension must be positive");
        let mut m = PolyMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn zeros(dim: usize) -> PolyMatrix {
        PolyMatrix {
            dim,
            entries: vec![LaurentPoly::zero(); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> PolyMatrix {
        let dim = rows.len();
        assert!(
            dim >= 1 && rows.iter().all(|r| r.len() == dim),
            "matrix must be square"
        );
        PolyMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPoly) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = PolyMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero();
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim);
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        PolyMatrix {
            dim: self.dim,
            entries,
        }
    }

    /// Laplace expansion along the first row.
    pub fn determinant(&self) -> LaurentPoly {
        let rows: Vec<usize> = (0..self.dim).collect();
        let cols: Vec<usize> = (0..self.dim).collect();
        self.minor_det(&rows, &cols)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        match rows.len() {
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                let a = self.get(rows[0], cols[0]) * self.get(rows[1], cols[1]);
                let b = self.get(rows[0], cols[1]) * self.get(rows[1], cols[0]);
                &a - &b
            }
            _ => {
                let mut acc = LaurentPoly::zero();
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.minor_det(&rows[1..], &sub_cols);
                    acc = if k % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                acc
            }
        }
    }
}

/// Reduced Burau matrix of a single generator `σ_i^{±1}` on `strands`
/// strands.
pub fn burau_generator(strands: usize, letter: i32) -> PolyMatrix {
    let dim = strands - 1;
    let i = letter.unsigned_abs() as usize - 1; // 0-based row
    let mut m = PolyMatrix::identity(dim);
    let (left, diag, right) = if letter > 0 {
        (
            LaurentPoly::t(),
            LaurentPoly::monomial(-1, 1),
            LaurentPoly::one(),
        )
    } else {
        (
            LaurentPoly::one(),
            LaurentPoly::monomial(-1, -1),
            LaurentPoly::monomial(1, -1),
        )
    };
    m.set(i, i, diag);
    if i > 0 {
        m.set(i, i - 1, left);
    }
    if i + 1 < dim {
        m.set(i, i + 1, right);
    }
    m
}

/// Product of generator matrices in letter order.
pub fn burau_reduced(braid: &BraidWord) -> PolyMatrix {
    let n = braid.strands();
    braid
        .letters()
        .iter()
        .fold(PolyMatrix::identity(n - 1), |acc, &l| {
            acc.mul(&burau_generator(n, l))
        })
}

/// Multiplies by the unit `±t^k` that puts the lowest term at `t^0` with a
/// positive coefficient.
pub fn normalize_alexander(p: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let shifted = p.shift(-p.min_exponent());
    if shifted.coefficients()[0].is_negative() {
        Ok(-&shifted)
    } else {
        Ok(shifted)
    }
}

/// `Δ(t) ≐ det(ρ(β) − I) · (1 − t) / (1 − tⁿ)`, normalized.
pub fn alexander_from_braid(braid: &BraidWord) -> Result<LaurentPoly, AlexanderError> {
    let components = braid.closure_components();
    if components != 1 {
        return Err(BraidError::NotAKnot { components }.into());
    }
    let n = braid.strands();
    let rho = burau_reduced(braid);
    let det = rho.sub(&PolyMatrix::identity(n - 1)).determinant();
    let one_minus_t = LaurentPoly::from_i64s(0, &[1, -1]);
    let mut one_minus_tn = vec![BigInt::from(0); n + 1];
    one_minus_tn[0] = BigInt::one();
    one_minus_tn[n] = -BigInt::one();
    let den = LaurentPoly::new(0, one_minus_tn);
    let delta = (&det * &one_minus_t).exact_div(&den)?;
    Ok(normalize_alexander(&delta)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(strands: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(strands, letters.to_vec()).unwrap()
    }

    fn p(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    #[test]
    fn generators_match_three_strand_convention() {
        let s1 = burau_generator(3, 1);
        assert_eq!(
            s1,
            PolyMatrix::from_rows(vec![
                vec![p(1, &[-1]), p(0, &[1])],
                vec![p(0, &[]), p(0, &[1])]
            ])
        );
        let s2 = burau_generator(3, 2);
        assert_eq!(
            s2,
            PolyMatrix::from_rows(vec![
                vec![p(0, &[1]), p(0, &[])],
                vec![p(1, &[1]), p(1, &[-1])]
            ])
        );
        assert_eq!(burau_reduced(&b(3, &[1])), s1);
    }

    #[test]
    fn empty_word_is_identity() {
        assert_eq!(burau_reduced(&b(3, &[])), PolyMatrix::identity(2));
    }

    #[test]
    fn inverses_cancel() {
        for n in 2..6 {
            for i in 1..n as i32 {
                assert_eq!(burau_reduced(&b(n, &[i, -i])), PolyMatrix::identity(n - 1));
                assert_eq!(burau_reduced(&b(n, &[-i, i])), PolyMatrix::identity(n - 1));
            }
        }
    }

    #[test]
    fn braid_relations() {
        assert_eq!(
            burau_reduced(&b(3, &[1, 2, 1])),
            burau_reduced(&b(3, &[2, 1, 2]))
        );
        assert_eq!(
            burau_reduced(&b(4, &[2, 3, 2])),
            burau_reduced(&b(4, &[3, 2, 3]))
        );
        assert_eq!(burau_reduced(&b(4, &[1, 3])), burau_reduced(&b(4, &[3, 1])));
    }

    #[test]
    fn knot_818_polynomial() {
        let d = alexander_from_braid(&BraidWord::knot_818()).unwrap();
        assert_eq!(d.min_exponent(), 0);
        assert_eq!(
            d.coefficients_i64().unwrap(),
            vec![1, -5, 10, -13, 10, -5, 1]
        );
    }

    #[test]
    fn small_knots() {
        assert_eq!(
            alexander_from_braid(&b(2, &[1])).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            alexander_from_braid(&b(2, &[1, 1, 1])).unwrap(),
            p(0, &[1, -1, 1])
        );
        // stabilised trefoil
        assert_eq!(
            alexander_from_braid(&b(3, &[1, 1, 1, 2])).unwrap(),
            p(0, &[1, -1, 1])
        );
        // figure eight
        assert_eq!(
            alexander_from_braid(&b(3, &[1, -2, 1, -2])).unwrap(),
            p(0, &[1, -3, 1])
        );
        assert!(matches!(
            alexander_from_braid(&b(2, &[1, 1])),
            Err(AlexanderError::Braid(BraidError::NotAKnot {
                components: 2
            }))
        ));
    }

    #[test]
    fn normalization() {
        let raw = &p(-2, &[-1]) * &p(0, &[1, -5, 10, -13, 10, -5, 1]);
        assert_eq!(
            normalize_alexander(&raw).unwrap(),
            p(0, &[1, -5, 10, -13, 10, -5, 1])
        );
        assert_eq!(
            normalize_alexander(&LaurentPoly::one()).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            normalize_alexander(&LaurentPoly::zero()),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn determinant_three_by_three() {
        let m = PolyMatrix::from_rows(vec![
            vec![p(0, &[2]), p(0, &[0]), p(0, &[1])],
            vec![p(0, &[1]), p(0, &[3]), p(0, &[0])],
            vec![p(0, &[0]), p(0, &[1]), p(0, &[4])],
        ]);
        // 2*(12) - 0 + 1*(1)
        assert_eq!(m.determinant(), p(0, &[25]));
    }
}
