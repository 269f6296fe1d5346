use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, Poly, Rat};
use crate::error::{Error, Result};

/// Univariate rational function over a field `F`, kept reduced with a monic
/// denominator so that equality is structural.
#[derive(Clone, PartialEq)]
pub struct RatFunc<F: Field = Rat> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::PoleAtPoint("rational function with zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    /// Build from ascending coefficient lists.
    pub fn from_coeffs(num: Vec<F>, den: Vec<F>) -> Result<Self> {
        Self::new(Poly::new(num), Poly::new(den))
    }

    fn reduced(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::constant(F::one()) };
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.divrem(&g).0, den.divrem(&g).0)
            }
        };
        let (lead, den) = den.monic();
        let num = if lead == F::one() { num } else { num.scale(&lead.inv().unwrap()) };
        RatFunc { num, den }
    }

    pub fn x() -> Self {
        RatFunc { num: Poly::x(), den: Poly::constant(F::one()) }
    }

    pub fn constant(c: F) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::constant(F::one()) }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::constant(F::one()) }
    }

    /// `x^e` for `e >= 0`.
    pub fn monomial(e: u32) -> Self {
        let mut c = vec![F::zero(); e as usize];
        c.push(F::one());
        Self::from_poly(Poly::new(c))
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    /// Exact value at `x`; `PoleAtPoint` where the reduced denominator vanishes.
    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format!("denominator of {self} vanishes at {x}")));
        }
        self.num.eval(x).div(&d)
    }

    /// `lim_{x->inf} x^k f(x)`.
    pub fn limit(&self, k: i64) -> Result<F> {
        let Some(dn) = self.num.degree() else {
            return Ok(F::zero());
        };
        let dd = self.den.degree().unwrap() as i64;
        let top = dn as i64 + k;
        if top > dd {
            return Err(Error::DivergentLimit(format!(
                "x^{k} * ({self}) grows like x^{}",
                top - dd
            )));
        }
        if top < dd {
            return Ok(F::zero());
        }
        // Denominator is monic.
        Ok(self.num.lead().unwrap().clone())
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::reduced(self.num.add(&o.num), self.den);
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::reduced(num, self.den.mul(&o.den))
    }
}

impl<F: Field> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den }
    }
}

impl<F: Field> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        // Cross-cancel first to keep degrees small.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (a, d) = if g1.is_one() { (self.num, o.den) } else { (self.num.divrem(&g1).0, o.den.divrem(&g1).0) };
        let (c, b) = if g2.is_one() { (o.num, self.den) } else { (o.num.divrem(&g2).0, self.den.divrem(&g2).0) };
        let num = a.mul(&c);
        let den = b.mul(&d);
        let (lead, den) = den.monic();
        let num = if lead == F::one() { num } else { num.scale(&lead.inv().unwrap()) };
        RatFunc { num, den }
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        Self::constant(F::zero())
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn from_rat(r: &Rat) -> Self {
        Self::constant(F::from_rat(r))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::reduced(self.den.clone(), self.num.clone()))
        }
    }
    fn as_rat(&self) -> Option<Rat> {
        if self.den.degree() != Some(0) {
            return None;
        }
        match self.num.degree() {
            None => Some(Rat::zero()),
            Some(0) => self.num.coeffs()[0].as_rat(),
            _ => None,
        }
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncJson {
    num: Vec<Rat>,
    den: Vec<Rat>,
}

impl Serialize for RatFunc<Rat> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let num = if self.num.is_zero() { vec![Rat::zero()] } else { self.num.coeffs().to_vec() };
        RatFuncJson { num, den: self.den.coeffs().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc<Rat> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RatFuncJson::deserialize(d)?;
        RatFunc::from_coeffs(j.num, j.den).map_err(serde::de::Error::custom)
    }
}

/// Exact value of `f` at `x`.
pub fn ratfunc_eval(f: &RatFunc<Rat>, x: &Rat) -> Result<Rat> {
    f.eval(x)
}

/// `lim_{x->inf} x^k f(x)`.
pub fn ratfunc_limit(f: &RatFunc<Rat>, k: i64) -> Result<Rat> {
    f.limit(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc<Rat> {
        RatFunc::from_coeffs(n.iter().map(|&c| Rat::int(c)).collect(), d.iter().map(|&c| Rat::int(c)).collect())
            .unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ratfunc_eval(&rf(&[1, 1], &[0, 1]), &Rat::int(2)).unwrap(), Rat::new(3, 2));
        assert!(matches!(ratfunc_eval(&rf(&[1], &[-5, 1]), &Rat::int(5)), Err(Error::PoleAtPoint(_))));
        assert_eq!(ratfunc_eval(&rf(&[1, 1], &[0, 1]), &Rat::int(1)).unwrap(), Rat::int(2));
    }

    #[test]
    fn limit_examples() {
        assert_eq!(ratfunc_limit(&rf(&[1], &[-7, 1]), 1).unwrap(), Rat::one());
        assert_eq!(ratfunc_limit(&rf(&[1, 1], &[0, 1]), 0).unwrap(), Rat::one());
        assert!(matches!(ratfunc_limit(&rf(&[1, 0, 1], &[0, 1]), 0), Err(Error::DivergentLimit(_))));
        assert_eq!(ratfunc_limit(&rf(&[3], &[0, 0, 1]), 1).unwrap(), Rat::zero());
        assert_eq!(ratfunc_limit(&RatFunc::zero(), 5).unwrap(), Rat::zero());
    }

    #[test]
    fn canonical_form() {
        // (2x^2 - 2) / (4x - 4) = (x + 1)/2
        let f = rf(&[-2, 0, 2], &[-4, 4]);
        assert_eq!(f, rf(&[1, 1], &[2]));
        assert_eq!(f.denom().coeffs(), &[Rat::one()]);
        assert_eq!(f.numer().coeffs(), &[Rat::new(1, 2), Rat::new(1, 2)]);
    }

    #[test]
    fn arithmetic_cancels() {
        let x = RatFunc::<Rat>::x();
        let one = RatFunc::one();
        let f = one.clone().div(&(x.clone() - one.clone())).unwrap();
        let g = one.clone().div(&(x.clone() + one.clone())).unwrap();
        // 1/(x-1) - 1/(x+1) = 2/(x^2-1)
        assert_eq!(f.clone() - g.clone(), rf(&[2], &[-1, 0, 1]));
        assert_eq!((f.clone() * (x.clone() - one.clone())), one);
        assert_eq!(f.clone() - f, RatFunc::zero());
    }

    #[test]
    fn json_shape() {
        let f = rf(&[1, 1], &[0, 2]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"num":["1/2","1/2"],"den":["0","1"]}"#);
        let back: RatFunc<Rat> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<RatFunc<Rat>>(r#"{"num":["1"],"den":["0"]}"#).is_err());
    }

    #[test]
    fn nested_tower_arithmetic() {
        type T = RatFunc<RatFunc<Rat>>;
        let y = T::x();
        let x = T::constant(RatFunc::x());
        let e = (x.clone() * y.clone() + T::one()).div(&(y.clone() * x.clone())).unwrap();
        // (xy + 1)/(xy) -> 1 as y -> inf, inner value constant 1
        assert_eq!(e.limit(0).unwrap(), RatFunc::one());
        let h = y.clone().div(&(y - x)).unwrap();
        assert_eq!(h.limit(0).unwrap(), RatFunc::one());
    }
}
