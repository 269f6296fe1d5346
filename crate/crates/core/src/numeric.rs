//! Multi-start Newton iteration for systems of holomorphic equations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::sample;

pub type C = Complex64;

#[derive(Clone, Debug)]
pub struct NewtonOptions {
    pub starts: usize,
    pub tol: f64,
    pub dedup_radius: f64,
    pub max_iter: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { starts: 200, tol: 1e-13, dedup_radius: 1e-8, max_iter: 100 }
    }
}

fn inf_norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Newton from one start with a central-difference Jacobian.
pub fn newton<R>(residual: &R, mut z: Vec<C>, opts: &NewtonOptions) -> Option<Vec<C>>
where
    R: Fn(&[C]) -> Vec<C>,
{
    let n = z.len();
    for _ in 0..opts.max_iter {
        let fz = residual(&z);
        if fz.iter().any(|c| !c.is_finite()) {
            return None;
        }
        if inf_norm(&fz) < opts.tol {
            return Some(z);
        }
        let mut jac = DMatrix::<C>::zeros(n, n);
        for j in 0..n {
            let h = 1e-7 * (1.0 + z[j].norm());
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[j] += h;
            zm[j] -= h;
            let (fp, fm) = (residual(&zp), residual(&zm));
            for i in 0..n {
                jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        let rhs = DVector::from_iterator(n, fz.iter().map(|c| -c));
        let step = jac.lu().solve(&rhs)?;
        let mut small = true;
        for i in 0..n {
            z[i] += step[i];
            small &= step[i].norm() < opts.tol * (1.0 + z[i].norm());
        }
        if z.iter().any(|c| !c.is_finite()) {
            return None;
        }
        if small {
            return Some(z);
        }
    }
    None
}

/// Run Newton from `opts.starts` random points, keep solutions accepted by
/// `accept`, bring each to canonical form with `canon` and remove duplicates.
/// The result is sorted so it depends only on the seed.
pub fn multistart<R, S, A, K>(
    residual: R,
    mut sampler: S,
    accept: A,
    canon: K,
    seed: u64,
    opts: &NewtonOptions,
) -> Vec<Vec<C>>
where
    R: Fn(&[C]) -> Vec<C>,
    S: FnMut(&mut ChaCha8Rng) -> Vec<C>,
    A: Fn(&[C]) -> bool,
    K: Fn(Vec<C>) -> Vec<C>,
{
    let mut rng = sample::rng(seed);
    let mut found: Vec<Vec<C>> = Vec::new();
    for _ in 0..opts.starts {
        let z0 = sampler(&mut rng);
        let Some(z) = newton(&residual, z0, opts) else { continue };
        if !accept(&z) {
            continue;
        }
        let z = canon(z);
        let dup = found.iter().any(|f| f.iter().zip(&z).all(|(a, b)| (a - b).norm() < opts.dedup_radius));
        if !dup {
            found.push(z);
        }
    }
    found.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b) {
            let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    });
    found
}

/// Sort a root set by (re, im) so permuted solutions compare equal.
pub fn sort_roots(mut z: Vec<C>) -> Vec<C> {
    z.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    z
}

/// Uniform complex point in a box.
pub fn random_point(rng: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> C {
    C::new(rng.gen_range(re.0..re.1), rng.gen_range(im.0..im.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_both_roots_of_a_quadratic() {
        let sols = multistart(
            |z: &[C]| vec![z[0] * z[0] + C::new(1.0, 0.0)],
            |r| vec![random_point(r, (-3.0, 3.0), (-3.0, 3.0))],
            |_| true,
            |z| z,
            1,
            &NewtonOptions { starts: 20, ..Default::default() },
        );
        assert_eq!(sols.len(), 2);
        assert!((sols[0][0] - C::new(0.0, -1.0)).norm() < 1e-12);
        assert!((sols[1][0] - C::new(0.0, 1.0)).norm() < 1e-12);
    }
}
