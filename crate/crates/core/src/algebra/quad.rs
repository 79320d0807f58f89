use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::fp::{prime_factors, FpScalar, Prime};
use super::AlgebraError;

/// F_p[x]/(x^2 - c) for a non-residue c, i.e. a model of F_{p^2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadField {
    pub p: Prime,
    pub c: u32,
}

impl QuadField {
    pub fn new(p: Prime, c: u32) -> Result<Self, AlgebraError> {
        if p.get() == 2 {
            return Err(AlgebraError::EvenCharacteristic);
        }
        let cs = FpScalar::new(c as i64, p);
        if cs.is_square() {
            return Err(AlgebraError::NotANonResidue { p: p.get(), c });
        }
        Ok(QuadField { p, c: cs.value() })
    }

    /// Uses the smallest quadratic non-residue as `c`.
    pub fn standard(p: Prime) -> Result<Self, AlgebraError> {
        QuadField::new(p, smallest_nonresidue(p)?)
    }

    pub fn order(self) -> u64 {
        let p = self.p.get() as u64;
        p * p
    }

    pub fn element(self, a: i64, b: i64) -> QuadExtScalar {
        QuadExtScalar { a: self.p.reduce_i64(a), b: self.p.reduce_i64(b), field: self }
    }

    pub fn zero(self) -> QuadExtScalar {
        self.element(0, 0)
    }

    pub fn one(self) -> QuadExtScalar {
        self.element(1, 0)
    }

    /// All elements, `a` major and `b` minor.
    pub fn elements(self) -> impl Iterator<Item = QuadExtScalar> {
        let p = self.p.get() as i64;
        (0..p).flat_map(move |a| (0..p).map(move |b| self.element(a, b)))
    }
}

pub fn smallest_nonresidue(p: Prime) -> Result<u32, AlgebraError> {
    if p.get() == 2 {
        return Err(AlgebraError::EvenCharacteristic);
    }
    (2..p.get())
        .find(|&c| !FpScalar::new(c as i64, p).is_square())
        .ok_or(AlgebraError::EvenCharacteristic)
}

/// a + b*x in F_p[x]/(x^2 - c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadExtScalar {
    a: u32,
    b: u32,
    field: QuadField,
}

impl QuadExtScalar {
    pub fn field(self) -> QuadField {
        self.field
    }

    pub fn coords(self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(self) -> bool {
        self.a == 1 && self.b == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Exponentiation by a possibly negative integer; the element must be non-zero.
    pub fn pow_signed(self, e: i64) -> Self {
        let n = self.field.order() as i64 - 1;
        self.pow(e.rem_euclid(n) as u64)
    }

    pub fn inverse(self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        // (a + bx)^-1 = (a - bx) / (a^2 - c b^2)
        let p = self.field.p;
        let norm = p.sub(p.mul(self.a, self.a), p.mul(self.field.c, p.mul(self.b, self.b)));
        let ninv = p.inv(norm).ok_or(AlgebraError::NotInvertible)?;
        Ok(QuadExtScalar { a: p.mul(self.a, ninv), b: p.mul(p.neg(self.b), ninv), field: self.field })
    }

    /// Multiplicative order; zero has no order.
    pub fn order(self) -> Result<u64, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        let n = self.field.order() - 1;
        let mut ord = n;
        for q in prime_factors(n) {
            while ord.is_multiple_of(q) && self.pow(ord / q).is_one() {
                ord /= q;
            }
        }
        Ok(ord)
    }

    pub fn is_generator(self) -> bool {
        !self.is_zero() && self.order().ok() == Some(self.field.order() - 1)
    }
}

impl Add for QuadExtScalar {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        assert_eq!(self.field, r.field, "mixed fields");
        let p = self.field.p;
        QuadExtScalar { a: p.add(self.a, r.a), b: p.add(self.b, r.b), field: self.field }
    }
}

impl Sub for QuadExtScalar {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + (-r)
    }
}

impl Neg for QuadExtScalar {
    type Output = Self;
    fn neg(self) -> Self {
        let p = self.field.p;
        QuadExtScalar { a: p.neg(self.a), b: p.neg(self.b), field: self.field }
    }
}

impl Mul for QuadExtScalar {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        assert_eq!(self.field, r.field, "mixed fields");
        let p = self.field.p;
        let a = p.add(p.mul(self.a, r.a), p.mul(self.field.c, p.mul(self.b, r.b)));
        let b = p.add(p.mul(self.a, r.b), p.mul(self.b, r.a));
        QuadExtScalar { a, b, field: self.field }
    }
}

impl fmt::Display for QuadExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}x", self.a, self.b)
    }
}

/// First element of order p^2 - 1 in (a, b) lexicographic order.
pub fn find_generator_delta(field: QuadField) -> QuadExtScalar {
    field
        .elements()
        .find(|z| z.is_generator())
        .expect("the multiplicative group of a finite field is cyclic")
}

/// All generators of the multiplicative group, in (a, b) lexicographic order.
pub fn generators(field: QuadField) -> Vec<QuadExtScalar> {
    field.elements().filter(|z| z.is_generator()).collect()
}

/// Exponent table for a fixed generator.
#[derive(Clone, Debug)]
pub struct DiscreteLogTable {
    delta: QuadExtScalar,
    table: HashMap<(u32, u32), u64>,
}

impl DiscreteLogTable {
    pub fn new(delta: QuadExtScalar) -> Result<Self, AlgebraError> {
        if !delta.is_generator() {
            return Err(AlgebraError::NotAGenerator);
        }
        let n = delta.field.order() - 1;
        let mut table = HashMap::with_capacity(n as usize);
        let mut cur = delta.field.one();
        for e in 0..n {
            table.insert(cur.coords(), e);
            cur = cur * delta;
        }
        Ok(DiscreteLogTable { delta, table })
    }

    pub fn delta(&self) -> QuadExtScalar {
        self.delta
    }

    /// The exponent e in [0, p^2 - 1) with delta^e = x.
    pub fn log(&self, x: QuadExtScalar) -> Result<u64, AlgebraError> {
        if x.is_zero() {
            return Err(AlgebraError::LogOfZero);
        }
        assert_eq!(x.field, self.delta.field, "mixed fields");
        Ok(self.table[&x.coords()])
    }
}

pub fn discrete_log(delta: QuadExtScalar, x: QuadExtScalar) -> Result<u64, AlgebraError> {
    DiscreteLogTable::new(delta)?.log(x)
}
