//! Exact linear algebra: dense matrices, Smith normal form over integer
//! scalars, and ranks over fields. No floating point anywhere.

mod field;
mod matrix;
mod smith;

pub use field::{is_prime, rank_mod_p, rank_over_field};
pub use matrix::Matrix;
pub use smith::{
    homology_at, integer_kernel, lattice_quotient, smith_decompose, smith_invariants, IntegerScalar,
    SmithDecomposition,
};
