//! Sequential limits in several rapidities, one active variable at a time.
//!
//! The limit taken first is computed symbolically in a univariate
//! `RatFunc`. Every later limit needs the previous result as a function of
//! the next variable; that function is recovered exactly by rational
//! reconstruction from its values at sample points and confirmed on extra
//! points before its own limit is read off.

use super::{Field, Poly, Rat, RatFunc};
use crate::error::{Error, Result};

/// An expression in a list of variables that can be evaluated in any field.
pub trait Symbolic {
    fn eval<F: Field>(&self, vars: &[F]) -> Result<F>;
}

/// Maximum number of simultaneously active variables.
pub const MAX_ACTIVE: usize = 4;

/// Extra sample points used to confirm a reconstruction.
const CHECK_POINTS: usize = 3;
/// Give up on reconstruction beyond this many interpolation points.
const MAX_POINTS: usize = 256;

/// `lim_{x_{order[last]}} ... lim_{x_{order[0]}} (prod x_i^power) * expr`,
/// where `order[0]` is sent to infinity first and all other variables are
/// fixed at `point`.
pub fn sequential_limit<E: Symbolic>(expr: &E, point: &[Rat], order: &[usize], power: i64) -> Result<Rat> {
    for (k, &i) in order.iter().enumerate() {
        if i >= point.len() {
            return Err(Error::SizeMismatch(format!("limit variable {i} out of range")));
        }
        if order[..k].contains(&i) {
            return Err(Error::SizeMismatch(format!("limit variable {i} repeated")));
        }
    }
    if order.len() > MAX_ACTIVE {
        return Err(Error::Unsupported(format!("{} active variables (max {MAX_ACTIVE})", order.len())));
    }
    if order.is_empty() {
        return expr.eval(point);
    }
    nested(expr, point.to_vec(), order, power)
}

fn nested<E: Symbolic>(expr: &E, point: Vec<Rat>, order: &[usize], power: i64) -> Result<Rat> {
    let (&last, inner) = order.split_last().expect("non-empty order");
    if inner.is_empty() {
        return as_function_of(expr, &point, last)?.limit(power);
    }
    let h = reconstruct(|t| {
        let mut p = point.clone();
        p[last] = t.clone();
        nested(expr, p, inner, power)
    })?;
    h.limit(power)
}

/// The expression as a rational function of variable `idx`, others fixed.
pub fn as_function_of<E: Symbolic>(expr: &E, point: &[Rat], idx: usize) -> Result<RatFunc<Rat>> {
    let mut vars: Vec<RatFunc<Rat>> = point.iter().map(RatFunc::from_rat).collect();
    vars[idx] = RatFunc::x();
    expr.eval(&vars)
}

/// Sample abscissae, chosen away from the small rationals used as data.
fn sample_point(k: usize) -> Rat {
    let k = k as i64;
    let s = if k % 2 == 0 { 1 } else { -1 };
    Rat::new(s * (1009 + 97 * k), 13)
}

/// Recover a univariate rational function from a black-box evaluator.
///
/// Points where the evaluator fails (a pole of the function, or a special
/// value of the remaining variables) are skipped. The number of points is
/// doubled until the reconstruction agrees with `CHECK_POINTS` fresh values.
pub fn reconstruct<G>(mut g: G) -> Result<RatFunc<Rat>>
where
    G: FnMut(&Rat) -> Result<Rat>,
{
    let mut xs: Vec<Rat> = Vec::new();
    let mut ys: Vec<Rat> = Vec::new();
    let mut next = 0usize;
    let mut failures = 0usize;
    let mut n = 4usize;
    loop {
        while xs.len() < n + CHECK_POINTS {
            let x = sample_point(next);
            next += 1;
            match g(&x) {
                Ok(y) => {
                    xs.push(x);
                    ys.push(y);
                }
                Err(e) => {
                    failures += 1;
                    if failures > xs.len() + 8 {
                        return Err(e);
                    }
                }
            }
        }
        if let Some(f) = rational_interpolation(&xs[..n], &ys[..n]) {
            let ok = xs[n..].iter().zip(&ys[n..]).all(|(x, y)| f.eval(x).map(|v| v == *y).unwrap_or(false));
            if ok {
                return Ok(f);
            }
        }
        if n >= MAX_POINTS {
            return Err(Error::NoConvergence(format!("rational reconstruction with {n} points")));
        }
        n *= 2;
    }
}

/// Newton interpolation polynomial through the points.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly<Rat> {
    let n = xs.len();
    let mut dd: Vec<Rat> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            dd[i] = num.checked_div(&den).expect("distinct sample points");
        }
    }
    let mut p = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Poly::new(vec![-xs[i].clone(), Rat::one()]);
        p = p.mul(&lin).add(&Poly::constant(dd[i].clone()));
    }
    p
}

/// The rational function with numerator degree at most `(n-1)/2` and
/// denominator degree at most `n-1-(n-1)/2` through `n` points, found by the
/// extended Euclidean algorithm; `None` if no such function exists.
fn rational_interpolation(xs: &[Rat], ys: &[Rat]) -> Option<RatFunc<Rat>> {
    let n = xs.len();
    let num_bound = (n - 1) / 2;
    let mut modulus = Poly::constant(Rat::one());
    for x in xs {
        modulus = modulus.mul(&Poly::new(vec![-x.clone(), Rat::one()]));
    }
    let (mut r0, mut r1) = (modulus, interpolate(xs, ys));
    let (mut t0, mut t1) = (Poly::zero(), Poly::constant(Rat::one()));
    while r1.degree().is_some_and(|d| d > num_bound) {
        let (q, r) = r0.divrem(&r1);
        let t = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.degree().unwrap_or(0) > n - 1 - num_bound {
        return None;
    }
    if xs.iter().any(|x| t1.eval(x).is_zero()) {
        return None;
    }
    RatFunc::new(r1, t1).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// (x0 + 1)(x1 - x0 + 3) / (x0 x1 - 2)
    struct E;
    impl Symbolic for E {
        fn eval<F: Field>(&self, v: &[F]) -> Result<F> {
            let one = F::one();
            let n = (v[0].clone() + one) * (v[1].clone() - v[0].clone() + F::from_int(3));
            n.div(&(v[0].clone() * v[1].clone() - F::from_int(2)))
        }
    }

    #[test]
    fn order_matters_and_matches_hand_limits() {
        let p = [Rat::int(5), Rat::int(7)];
        // x1 -> inf with x0 = 5: (6)(1)/(5) = 6/5
        assert_eq!(sequential_limit(&E, &p, &[1], 0).unwrap(), Rat::new(6, 5));
        // x1 first then x0: (x0+1)/x0 -> 1
        assert_eq!(sequential_limit(&E, &p, &[1, 0], 0).unwrap(), Rat::one());
        // x0 first: the numerator grows like -x0^2 against x0 x1
        assert!(matches!(sequential_limit(&E, &p, &[0, 1], 0), Err(Error::DivergentLimit(_))));
        assert_eq!(sequential_limit(&E, &p, &[0], -1).unwrap(), Rat::new(-1, 7));
        // x0 first with x0^-1 gives -1/x1, which x1^-1 sends to 0
        assert_eq!(sequential_limit(&E, &p, &[0, 1], -1).unwrap(), Rat::zero());
    }

    #[test]
    fn rejects_bad_orders() {
        let p = [Rat::int(5), Rat::int(7)];
        assert!(sequential_limit(&E, &p, &[0, 0], 0).is_err());
        assert!(sequential_limit(&E, &p, &[2], 0).is_err());
    }

    #[test]
    fn reconstruction_recovers_a_known_function() {
        // (3x^3 - x + 2) / ((x - 1)(x + 4)(2x + 5))
        let num = Poly::new(vec![Rat::int(2), Rat::int(-1), Rat::zero(), Rat::int(3)]);
        let den = Poly::new(vec![Rat::int(-1), Rat::one()])
            .mul(&Poly::new(vec![Rat::int(4), Rat::one()]))
            .mul(&Poly::new(vec![Rat::int(5), Rat::int(2)]));
        let f = RatFunc::new(num, den).unwrap();
        let g = reconstruct(|x| f.eval(x)).unwrap();
        assert_eq!(g, f);
        assert_eq!(reconstruct(|_| Ok(Rat::zero())).unwrap(), RatFunc::constant(Rat::zero()));
    }

    #[test]
    fn single_variable_view() {
        let f = as_function_of(&E, &[Rat::int(1), Rat::int(0)], 1).unwrap();
        // (2)(x - 1 + 3)/(x - 2)
        assert_eq!(f.eval(&Rat::int(4)).unwrap(), Rat::int(6));
    }

    /// 1 / ((x0 - x1 + 1)(x1 + 2 x2)(x2 - 5)): three levels deep.
    struct Three;
    impl Symbolic for Three {
        fn eval<F: Field>(&self, v: &[F]) -> Result<F> {
            let d = (v[0].clone() - v[1].clone() + F::one())
                * (v[1].clone() + F::from_int(2) * v[2].clone())
                * (v[2].clone() - F::from_int(5));
            F::one().div(&d)
        }
    }

    #[test]
    fn three_levels() {
        let p = [Rat::int(2), Rat::int(3), Rat::int(4)];
        // x0 first leaves 1/((x1 + 2 x2)(x2 - 5)), then 1/(x2 - 5), then 1
        assert_eq!(sequential_limit(&Three, &p, &[0, 1, 2], 1).unwrap(), Rat::one());
        // x1 first: x1 / (-x1 * x1) -> 0
        assert_eq!(sequential_limit(&Three, &p, &[1, 0, 2], 1).unwrap(), Rat::zero());
        // x2 first: x2 / (2 x2 * x2) -> 0
        assert_eq!(sequential_limit(&Three, &p, &[2, 0, 1], 1).unwrap(), Rat::zero());
    }
}
