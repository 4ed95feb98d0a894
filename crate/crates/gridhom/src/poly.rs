//! Exact Laurent polynomials with integer coefficients, plus the dense
//! big-integer polynomials used by the fraction-free determinant.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{GridError, Result};

/// A Laurent polynomial in `t`: `coeffs[i]` is the coefficient of
/// `t^(offset + i)`. Always kept trimmed (no leading/trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    offset: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { offset: 0, coeffs: vec![] }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(exp: i32, c: i64) -> Self {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly { offset: exp, coeffs: vec![c] }
    }

    pub fn from_coeffs(offset: i32, coeffs: Vec<i64>) -> Self {
        LaurentPoly { offset, coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let i = exp - self.offset;
        if i < 0 || i as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i32 - 1)
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `p(t) == p(1/t)` after centring; true for symmetrized Alexander polynomials.
    pub fn is_symmetric(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        if lo + hi != 0 {
            return false;
        }
        let k = self.coeffs.len();
        (0..k).all(|i| self.coeffs[i] == self.coeffs[k - 1 - i])
    }

    /// Recenter exponents so `min_exp = -max_exp` and flip the sign so the
    /// value at 1 is +1. Errors if the value at 1 is not a unit or the degree
    /// span is odd.
    pub fn normalized_symmetric(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(GridError::PreconditionViolated(
                "cannot normalize the zero polynomial".into(),
            ));
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        if (hi - lo) % 2 != 0 {
            return Err(GridError::PreconditionViolated(
                "odd degree span: not a knot Alexander polynomial".into(),
            ));
        }
        let shift = -(lo + hi) / 2;
        let mut p = LaurentPoly {
            offset: self.offset + shift,
            coeffs: self.coeffs.clone(),
        };
        match p.eval_at_one() {
            1 => {}
            -1 => {
                for c in &mut p.coeffs {
                    *c = -*c;
                }
            }
            v => {
                return Err(GridError::PreconditionViolated(format!(
                    "value at 1 is {v}, not a unit"
                )))
            }
        }
        Ok(p)
    }

    /// Exact division; errors when the divisor does not divide exactly.
    pub fn div_exact(&self, rhs: &LaurentPoly) -> Result<Self> {
        if rhs.is_zero() {
            return Err(GridError::PreconditionViolated("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut rem = self.coeffs.clone();
        let rl = rhs.coeffs.len();
        if rem.len() < rl {
            return Err(GridError::NotDivisible { m: 0, a: 0 });
        }
        let qlen = rem.len() - rl + 1;
        let mut q = vec![0i64; qlen];
        let lead = *rhs.coeffs.last().unwrap();
        for k in (0..qlen).rev() {
            let c = rem[k + rl - 1];
            if c % lead != 0 {
                return Err(GridError::NotDivisible { m: 0, a: 0 });
            }
            let f = c / lead;
            q[k] = f;
            for i in 0..rl {
                rem[k + i] -= f * rhs.coeffs[i];
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(GridError::NotDivisible { m: 0, a: 0 });
        }
        Ok(LaurentPoly::from_coeffs(self.offset - rhs.offset, q))
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
        let lo = self.offset.min(rhs.offset);
        let hi = (self.offset + self.coeffs.len() as i32).max(rhs.offset + rhs.coeffs.len() as i32);
        let mut coeffs = vec![0i64; (hi - lo) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.offset - lo) as usize + i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.offset - lo) as usize + i] += c;
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.offset + rhs.offset, coeffs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.offset + i as i32;
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                1 => {
                    if a == 1 {
                        write!(f, "t")?
                    } else {
                        write!(f, "{a}t")?
                    }
                }
                _ => {
                    if a == 1 {
                        write!(f, "t^{e}")?
                    } else {
                        write!(f, "{a}t^{e}")?
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

// ---- dense big-integer polynomials for the Bareiss determinant ----

/// Dense polynomial over BigInt, lowest degree first, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigPoly(pub Vec<BigInt>);

impl BigPoly {
    pub fn zero() -> Self {
        BigPoly(vec![])
    }

    pub fn constant(c: i64) -> Self {
        BigPoly(vec![BigInt::from(c)]).trimmed()
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        BigPoly(coeffs.iter().map(|&c| BigInt::from(c)).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().map(|c| c == &BigInt::from(0)) == Some(true) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, rhs: &BigPoly) -> BigPoly {
        if self.is_zero() || rhs.is_zero() {
            return BigPoly::zero();
        }
        let mut out = vec![BigInt::from(0); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BigPoly(out).trimmed()
    }

    pub fn sub(&self, rhs: &BigPoly) -> BigPoly {
        let len = self.0.len().max(rhs.0.len());
        let mut out = vec![BigInt::from(0); len];
        for (i, a) in self.0.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in rhs.0.iter().enumerate() {
            out[i] -= b;
        }
        BigPoly(out).trimmed()
    }

    /// Exact division, panicking on a nonzero remainder (Bareiss guarantees
    /// exactness; a remainder means the matrix was corrupted).
    pub fn div_exact(&self, rhs: &BigPoly) -> BigPoly {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return BigPoly::zero();
        }
        let mut rem = self.0.clone();
        let rl = rhs.0.len();
        assert!(rem.len() >= rl, "non-exact polynomial division");
        let qlen = rem.len() - rl + 1;
        let mut q = vec![BigInt::from(0); qlen];
        let lead = rhs.0.last().unwrap().clone();
        for k in (0..qlen).rev() {
            let c = rem[k + rl - 1].clone();
            let (f, r) = num_integer_div_rem(&c, &lead);
            assert!(r == BigInt::from(0), "non-exact polynomial division");
            for i in 0..rl {
                let d = &f * &rhs.0[i];
                rem[k + i] -= d;
            }
            q[k] = f;
        }
        assert!(
            rem.iter().all(|c| c == &BigInt::from(0)),
            "non-exact polynomial division"
        );
        BigPoly(q).trimmed()
    }

    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        let mut coeffs = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            let v: i64 = c.try_into().map_err(|_| {
                GridError::ResourceBudgetExceeded("determinant coefficient overflow".into())
            })?;
            coeffs.push(v);
        }
        Ok(LaurentPoly::from_coeffs(0, coeffs))
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

/// Fraction-free Bareiss determinant of a square polynomial matrix.
pub fn bareiss_det(mut m: Vec<Vec<BigPoly>>) -> BigPoly {
    let n = m.len();
    if n == 0 {
        return BigPoly::constant(1);
    }
    let mut sign = 1i64;
    let mut prev = BigPoly::constant(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = BigPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.mul(&BigPoly::constant(-1))
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let t = LaurentPoly::monomial(1, 1);
        let tinv = LaurentPoly::monomial(-1, 1);
        let trefoil = &(&t - &LaurentPoly::one()) + &tinv;
        assert_eq!(trefoil.eval_at_one(), 1);
        assert!(trefoil.is_symmetric());
        let sq = &trefoil * &trefoil;
        assert_eq!(sq.coeff(2), 1);
        assert_eq!(sq.coeff(1), -2);
        assert_eq!(sq.coeff(0), 3);
        assert!(sq.is_symmetric());
        assert_eq!(sq.div_exact(&trefoil).unwrap(), trefoil);
    }

    #[test]
    fn division_detects_failure() {
        let t = LaurentPoly::monomial(1, 1);
        let p = &t + &LaurentPoly::one();
        let q = &t - &LaurentPoly::one();
        assert!(p.div_exact(&q).is_err());
    }

    #[test]
    fn bareiss_small() {
        // det [[1, t], [t, 1]] = 1 - t^2
        let m = vec![
            vec![BigPoly::from_i64(&[1]), BigPoly::from_i64(&[0, 1])],
            vec![BigPoly::from_i64(&[0, 1]), BigPoly::from_i64(&[1])],
        ];
        let d = bareiss_det(m);
        assert_eq!(d, BigPoly::from_i64(&[1, 0, -1]));
    }

    #[test]
    fn normalization() {
        let p = LaurentPoly::from_coeffs(0, vec![-1, 1, -1]);
        let n = p.normalized_symmetric().unwrap();
        assert_eq!(n.min_exp(), Some(-1));
        assert_eq!(n.eval_at_one(), 1);
        assert_eq!(n.coeff(0), -1);
    }
}
