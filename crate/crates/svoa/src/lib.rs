//! Exact-arithmetic engine for the vertex operator superalgebra of the
//! ten-dimensional superstring compactified on a torus.
//!
//! The algebra is built from an 18-dimensional rational lattice
//! (10 spacetime directions, 6 world-sheet fermion directions realized as a
//! second lattice factor, and 2 ghost directions).  On top of the lattice
//! construction the crate provides:
//!
//! * exact scalars in the cyclotomic field Q(zeta_8) ([`scalar`]),
//! * the lattice, its coset classes, the commutation factor eta and the
//!   bimultiplicative cocycle epsilon ([`lattice`]),
//! * Fock-space states and their gradings ([`fock`]),
//! * the vertex-operator mode products `a_n b` together with Borcherds-identity
//!   checkers and adjoints ([`vertexop`]),
//! * the standard field dictionary (matter and ghost Virasoro/N=2 structures,
//!   spin fields, BRST current) with OPE verification ([`fields`]),
//! * the BRST operator, its nilpotency certificate and picture changing
//!   ([`brst`]),
//! * enumeration of the finite-dimensional graded sectors of the small Fock
//!   space and the invariant bilinear forms ([`smallspace`]),
//! * exact linear algebra ([`linalg`]) and BRST cohomology with spinor/Clifford
//!   structure ([`cohomology`]),
//! * the Lie superalgebra of physical states with its bracket, supersymmetry
//!   generators and invariant form ([`physalg`]),
//! * q-series utilities ([`qseries`]) and the root multiplicity / denominator
//!   identity checks for the resulting generalized Kac-Moody superalgebra
//!   ([`gkm`]).

pub mod brst;
pub mod cohomology;
pub mod error;
pub mod fields;
pub mod fock;
pub mod gkm;
pub mod lattice;
pub mod linalg;
pub mod physalg;
pub mod qseries;
pub mod scalar;
pub mod smallspace;
pub mod vertexop;

pub use error::SvoaError;
pub use scalar::{Frac, Scalar};
