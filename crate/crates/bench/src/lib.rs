//! Fixed benchmark instances.

use bethe_core::sample::{nonzero_rat, pole_free_sets, rng};
use bethe_core::{EigenfunctionSpec, Rat};

/// Pole-free sets of the given sizes from a fixed seed.
pub fn sets(sizes: &[usize]) -> Vec<Vec<Rat>> {
    pole_free_sets(&mut rng(42), sizes)
}

/// Free eigenvalue constants on `xs`.
pub fn free_table(xs: &[Rat]) -> EigenfunctionSpec {
    let mut g = rng(43);
    EigenfunctionSpec::table(xs.iter().map(|x| (x.clone(), nonzero_rat(&mut g))))
}
