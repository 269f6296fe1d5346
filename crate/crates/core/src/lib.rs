//! Exact evaluation and cross-verification of partition functions and scalar
//! products for SU(2)- and SU(3)-invariant integrable vertex models.

pub mod dwpf;
pub mod error;
pub mod exactnum;
pub mod monodromy;
pub mod numeric;
pub mod operator;
pub mod sample;
pub mod scalarprod_su2;
pub mod scalarprod_su3;
pub mod sets;
pub mod spinchain_su2;
pub mod spinchain_su3;
pub mod vertexmodel;

pub use error::{Error, Result};
pub use exactnum::{det_exact, ratfunc_eval, ratfunc_limit, Field, Matrix, Rat, RatFunc, RatMatrix};
pub use operator::{Operator, StateVec};
pub use sets::PartitionSplit;
pub use spinchain_su2::EigenfunctionSpec;
pub use vertexmodel::{LatticeSpec, Tensor, VertexKind};
