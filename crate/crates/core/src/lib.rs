//! Exact incidence algebras and incidence coalgebras over finite posets.
//!
//! The crate builds both structures from a validated finite poset: the
//! incidence algebra of scalar functions on comparable pairs under
//! convolution, and the incidence coalgebra on the interval basis. A
//! transfer map identifies linear self-maps of the coalgebra with linear
//! self-maps of the algebra, and the automorphism and derivation toolkits
//! use it to factor coalgebra automorphisms into order, multiplicative and
//! inner parts, and coalgebra derivations into inner and additive parts,
//! all in exact arithmetic over the rationals or a prime field.

pub mod algebra;
pub mod automorphism;
pub mod coalgebra;
pub mod derivation;
pub mod duality;
pub mod error;
pub mod json;
mod linalg;
pub mod poset;
pub mod sample;
pub mod scalar;

pub use algebra::IncidenceFunction;
pub use automorphism::{
    compose_algebra_automorphism, compose_coalgebra_automorphism,
    decompose_algebra_automorphism, decompose_coalgebra_automorphism,
    inner_algebra_automorphism, inner_coalgebra_automorphism, mult_algebra_automorphism,
    mult_coalgebra_automorphism, order_algebra_automorphism, order_coalgebra_automorphism,
    AutDecomposition, CoalgebraAutDecomposition, InnerDirection, MultiplicativeSystem,
};
pub use coalgebra::{
    check_coalgebra_axioms, AxiomReport, CoalgebraEndomap, CoalgebraLaw, CoalgebraVector,
    TensorVector,
};
pub use derivation::{
    additive_algebra_derivation, additive_coalgebra_derivation, compose_algebra_derivation,
    compose_coalgebra_derivation, decompose_algebra_derivation, decompose_coalgebra_derivation,
    inner_algebra_derivation, inner_coalgebra_derivation, split_inner_derivation, AdditiveSystem,
    CoalgebraDerDecomposition, DerDecomposition,
};
pub use duality::{dual_product, dual_transfer, pairing, AlgebraEndomap};
pub use error::{Error, Result};
pub use poset::{Interval, Poset, PosetAutomorphism};
pub use scalar::{FieldKind, FieldSpec, Scalar};
