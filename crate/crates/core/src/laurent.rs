//! Exact Laurent polynomials in one variable `t` with big-integer
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("cannot evaluate a Laurent polynomial at 0")]
    ZeroArgument,
}

/// `Σ coeffs[k] · t^(min_exp + k)`, kept trimmed: the first and last
/// coefficients are nonzero, and zero is the empty list with `min_exp = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> LaurentPoly {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: i64) -> LaurentPoly {
        LaurentPoly::from_i64s(0, &[c])
    }

    pub fn monomial(coeff: i64, exp: i64) -> LaurentPoly {
        LaurentPoly::from_i64s(exp, &[coeff])
    }

    /// The variable `t`.
    pub fn t() -> LaurentPoly {
        LaurentPoly::monomial(1, 1)
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.min_exp += lead as i64;
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exp
    }

    /// Highest exponent; `None` for zero.
    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        usize::try_from(exp - self.min_exp)
            .ok()
            .and_then(|k| self.coeffs.get(k).cloned())
            .unwrap_or_default()
    }

    /// Coefficients as `i64`s, for tests and display of small results.
    pub fn coefficients_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `p(t) ↦ p(1/t)`.
    pub fn invert_variable(&self) -> LaurentPoly {
        match self.max_exponent() {
            None => LaurentPoly::zero(),
            Some(max) => {
                let coeffs = self.coeffs.iter().rev().cloned().collect();
                LaurentPoly {
                    min_exp: -max,
                    coeffs,
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        LaurentPoly::new(self.min_exp, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        (0..e).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    /// Exact quotient in `Z[t, t⁻¹]`.
    pub fn exact_div(&self, den: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // Both trimmed, so both have nonzero constant term after shifting
        // to exponent 0; ordinary long division from the top then decides
        // divisibility in the Laurent ring.
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let d = &den.coeffs;
        if rem.len() < d.len() {
            return Err(PolyError::InexactDivision);
        }
        let lead = d.last().unwrap();
        let qlen = rem.len() - d.len() + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (quot, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            for (j, dj) in d.iter().enumerate() {
                rem[k + j] -= &quot * dj;
            }
            q[k] = quot;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::InexactDivision);
        }
        Ok(LaurentPoly::new(self.min_exp - den.min_exp, q))
    }

    pub fn evaluate(&self, t0: &BigRational) -> Result<BigRational, PolyError> {
        if t0.is_zero() {
            return Err(PolyError::ZeroArgument);
        }
        // Horner on the polynomial part, then scale by t0^min_exp.
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t0 + BigRational::from_integer(c.clone());
        }
        let scale = if self.min_exp >= 0 {
            num_traits::pow(t0.clone(), self.min_exp as usize)
        } else {
            num_traits::pow(t0.recip(), self.min_exp.unsigned_abs() as usize)
        };
        Ok(acc * scale)
    }

    pub fn evaluate_int(&self, t0: i64) -> Result<BigRational, PolyError> {
        self.evaluate(&BigRational::from_integer(BigInt::from(t0)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self
            .max_exponent()
            .unwrap()
            .max(rhs.max_exponent().unwrap());
        let coeffs = (lo..=hi)
            .map(|e| self.coefficient(e) + rhs.coefficient(e))
            .collect();
        LaurentPoly::new(lo, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_exp + rhs.min_exp, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Ascending order, e.g. `1 - 5*t + 10*t^2`; negative powers print as
/// `t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + k as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
