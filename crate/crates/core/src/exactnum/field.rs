use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Rat;
use crate::error::{Error, Result};

/// Arithmetic shared by exact rationals, rational functions over them, and
/// complex floats. All formula code is written against this trait so the same
/// routine evaluates at a point, symbolically in one variable, or numerically.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// The value as an exact rational, if it is one (constant functions included).
    fn as_rat(&self) -> Option<Rat>;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::int(n))
    }

    fn div(&self, d: &Self) -> Result<Self> {
        match d.inv() {
            Some(i) => Ok(self.clone() * i),
            None => Err(Error::PoleAtPoint(format!("({self}) / 0"))),
        }
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn pow(&self, e: u32) -> Self {
        Rat::pow(self, e)
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rat(r: &Rat) -> Self {
        Complex64::new(r.to_f64(), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn as_rat(&self) -> Option<Rat> {
        None
    }
}

/// Product of an iterator of field elements; 1 when empty.
pub fn product<F: Field>(items: impl IntoIterator<Item = F>) -> F {
    items.into_iter().fold(F::one(), |a, b| a * b)
}

/// Sum of an iterator of field elements; 0 when empty.
pub fn sum<F: Field>(items: impl IntoIterator<Item = F>) -> F {
    items.into_iter().fold(F::zero(), |a, b| a + b)
}

/// Lift a slice of rationals into any field.
pub fn lift<F: Field>(xs: &[Rat]) -> Vec<F> {
    xs.iter().map(F::from_rat).collect()
}
