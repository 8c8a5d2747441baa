//! Finite Čech closure spaces and their Čech cohomology.
//!
//! A closure space on `{0, …, n-1}` is stored through its singleton
//! closures. On top of that the crate provides the interior calculus,
//! interior covers and i-covers, the intersection lattice 𝓛(X,c) with
//! presheaves of finitely generated abelian groups on it, sheaf / flabby /
//! stalk checks, and Čech cohomology over ℤ, ℚ or `F_p`.
//!
//! The integer linear algebra is generic over [`linalg::IntegerScalar`]:
//! it runs on checked `i64` and falls back to `BigInt` on overflow. Rank
//! computations are generic over any `num_traits::Num` field, and metric
//! constructors over any `num_traits::Float`.

pub mod axioms;
pub mod cohomology;
pub mod complex;
pub mod cover;
pub mod error;
pub mod group;
pub mod ingest;
pub mod lattice;
pub mod linalg;
pub mod nerve;
pub mod pointset;
pub mod presented;
pub mod presheaf;
pub mod sheaf;
pub mod space;

pub use cohomology::{cech_cohomology_space, cohomology, CohomologyReport, DegreeReport, Ring};
pub use complex::{cech_complex_alternating, cech_complex_full, CochainComplex, ComplexKind, DEFAULT_Q_MAX};
pub use cover::{
    canonical_cover, compose_covers, intersect_covers, is_cover, is_i_cover, is_interior_cover, refines,
    restrict_cover, Cover,
};
pub use error::{Error, Result};
pub use group::FgAbGroup;
pub use lattice::{build_lattice, Lattice, DEFAULT_LATTICE_CAP};
pub use nerve::{nerve, SimplicialComplex};
pub use pointset::PointSet;
pub use presheaf::{check_presheaf, Coefficients, ConstantCoefficients, LatticeCoefficients, PresheafData};
pub use sheaf::{check_flabby, check_sheaf, stalk, SheafVerdict, DEFAULT_COVER_CAP};
pub use space::{FiniteClosureSpace, Metric};

/// Ground-set subset type.
pub type SubsetOfX = PointSet;
/// Integer matrices on machine words.
pub type IntMatrix = linalg::Matrix<i64>;
/// Arbitrary-precision integer matrices.
pub type BigIntMatrix = linalg::Matrix<num_bigint::BigInt>;
/// Exact rational matrices.
pub type RationalMatrix = linalg::Matrix<num_rational::BigRational>;
/// Double-precision point coordinates.
pub type Point64 = Vec<f64>;
/// Single-precision point coordinates.
pub type Point32 = Vec<f32>;
