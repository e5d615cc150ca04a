//! Exact test for the Q-polynomial property of primitive distance-regular
//! graphs, driven only by the intersection array.
//!
//! The decision path builds the integer Gram matrix `G` of [`gram`] and
//! checks `det(G) = 0` with fraction-free elimination. Two independent
//! oracles back it up: [`spectral`] searches for a Q-polynomial ordering of
//! the Krein parameters using certified interval enclosures, and [`graph`]
//! recomputes everything from explicit small graphs by brute force.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod graph;
pub mod gram;
pub mod linalg;
pub mod numeric;
pub mod params;
pub mod poly;
pub mod spectral;

pub use error::{DomainError, Error, Result};
pub use gram::{
    assess, build_gram, certify_psd, decide_q_polynomial, exact_determinant, Family, GramMatrix,
    QPolyVerdict,
};
pub use graph::{brute_force_gram, construct, extract_scheme, from_edge_list, ExplicitGraph, GraphFamily};
pub use numeric::{BigInt, Rational, RationalInterval};
pub use params::{
    closed_form_p2, closed_form_p3, compute_parameter_table, is_primitive, parse_array,
    IntersectionArray, ParameterTable,
};
pub use spectral::{
    build_b_blocks, build_transition_matrices, check_det_factorization, find_q_ordering,
    isolate_eigenvalues, isolate_eigenvalues_with, krein_parameters, run_oracle, KreinTable, SpectralConfig, SpectralData,
    ZeroFlag,
};
