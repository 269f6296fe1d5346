//! Exact rationals, univariate rational functions over any field, fraction-free
//! determinants and limits at infinity.

mod field;
mod limits;
mod matrix;
mod poly;
mod rat;
mod ratfunc;

pub use field::{lift, product, sum, Field};
pub use limits::{as_function_of, reconstruct, sequential_limit, Symbolic, MAX_ACTIVE};
pub use matrix::{det_exact, Matrix, RatMatrix};
pub use poly::Poly;
pub use rat::Rat;
pub use ratfunc::{ratfunc_eval, ratfunc_limit, RatFunc};
