//! Seeded generation of pole-free rational test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::Rat;

/// Deterministic generator shared by tests, suites and benches.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in [-20, 20] and denominator in {1, 2, 3}.
pub fn small_rat<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(-20..=20), rng.gen_range(1..=3))
}

/// A nonzero small rational, used for free eigenvalue constants.
pub fn nonzero_rat<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let r = small_rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn clashes(a: &Rat, b: &Rat) -> bool {
    let d = a - b;
    d.is_zero() || d == Rat::one() || d == -Rat::one()
}

/// `n` rationals such that no two differ by 0 or +-1, and none differs by 0
/// or +-1 from any of `avoid`.
pub fn pole_free<R: Rng>(rng: &mut R, n: usize, avoid: &[Rat]) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(n);
    while out.len() < n {
        let c = small_rat(rng);
        if out.iter().chain(avoid).any(|x| clashes(x, &c)) {
            continue;
        }
        out.push(c);
    }
    out
}

/// Several pole-free sets drawn jointly, so all values are mutually generic.
pub fn pole_free_sets<R: Rng>(rng: &mut R, sizes: &[usize]) -> Vec<Vec<Rat>> {
    let total: usize = sizes.iter().sum();
    let all = pole_free(rng, total, &[]);
    let mut out = Vec::with_capacity(sizes.len());
    let mut k = 0;
    for &s in sizes {
        out.push(all[k..k + s].to_vec());
        k += s;
    }
    out
}
