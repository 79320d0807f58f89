use std::fmt;

use super::fp::{FpScalar, Prime};
use super::AlgebraError;

/// An element of F_p[t]/(t^{i+1}); `precision()` is i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    p: Prime,
    coeffs: Vec<u32>,
}

impl TruncatedSeries {
    /// Coefficients past the precision are dropped, missing ones are zero.
    pub fn new(p: Prime, precision: usize, coeffs: &[i64]) -> Self {
        let coeffs = (0..=precision)
            .map(|k| coeffs.get(k).map_or(0, |&c| p.reduce_i64(c)))
            .collect();
        TruncatedSeries { p, coeffs }
    }

    pub(crate) fn from_raw(p: Prime, coeffs: Vec<u32>) -> Self {
        debug_assert!(!coeffs.is_empty());
        TruncatedSeries { p, coeffs }
    }

    pub fn constant(p: Prime, precision: usize, c: i64) -> Self {
        TruncatedSeries::new(p, precision, &[c])
    }

    pub fn zero(p: Prime, precision: usize) -> Self {
        TruncatedSeries { p, coeffs: vec![0; precision + 1] }
    }

    pub fn one(p: Prime, precision: usize) -> Self {
        TruncatedSeries::constant(p, precision, 1)
    }

    /// The series t.
    pub fn variable(p: Prime, precision: usize) -> Self {
        TruncatedSeries::new(p, precision, &[0, 1])
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FpScalar {
        FpScalar::new(self.coeffs[k] as i64, self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.p != other.p {
            return Err(AlgebraError::ModulusMismatch);
        }
        if self.precision() != other.precision() {
            return Err(AlgebraError::PrecisionMismatch { left: self.precision(), right: other.precision() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let p = self.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| p.add(a, b)).collect();
        Ok(TruncatedSeries { p, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let n = self.coeffs.len();
        let p = self.p.get() as u64;
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        Ok(TruncatedSeries { p: self.p, coeffs: out.into_iter().map(|c| c as u32).collect() })
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        TruncatedSeries { p, coeffs: self.coeffs.iter().map(|&c| p.neg(c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        let p = self.p;
        let k = p.reduce_i64(k);
        TruncatedSeries { p, coeffs: self.coeffs.iter().map(|&c| p.mul(c, k)).collect() }
    }

    /// Reduction to a lower precision; a ring homomorphism.
    pub fn truncate(&self, precision: usize) -> Result<Self, AlgebraError> {
        if precision > self.precision() {
            return Err(AlgebraError::PrecisionMismatch { left: self.precision(), right: precision });
        }
        Ok(TruncatedSeries { p: self.p, coeffs: self.coeffs[..=precision].to_vec() })
    }

    pub fn invert(&self) -> Result<Self, AlgebraError> {
        series_invert(self)
    }
}

/// Multiplicative inverse by the usual coefficient recursion.
pub fn series_invert(a: &TruncatedSeries) -> Result<TruncatedSeries, AlgebraError> {
    let p = a.p;
    let a0inv = p.inv(a.coeffs[0]).ok_or(AlgebraError::NotInvertible)?;
    let n = a.coeffs.len();
    let mut b = vec![0u32; n];
    b[0] = a0inv;
    for k in 1..n {
        let mut s = 0u64;
        for j in 1..=k {
            s = (s + a.coeffs[j] as u64 * b[k - j] as u64) % p.get() as u64;
        }
        b[k] = p.mul(p.neg(s as u32), a0inv);
    }
    Ok(TruncatedSeries { p, coeffs: b })
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}t"),
                _ => format!("{c}t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
