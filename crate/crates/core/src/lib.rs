//! Exact ideal-membership certificates for noncommutative polynomials over Q.
//!
//! The crate computes cofactor representations `f = sum c_i a_i f_{j_i} b_i`
//! witnessing membership of `f` in the two-sided ideal generated by
//! `f_1, ..., f_r` in the free algebra, and then minimizes these
//! representations: a signature-based syzygy basis restricts the search space,
//! a symbolic closure keeps only relevant syzygies, redundant syzygies are
//! pruned, and an exact rational linear program minimizes the l1 weight of the
//! representation. For systems of pure difference binomials the result is a
//! certified sparsest representation up to the signature bound.

pub mod bimodule;
pub mod lp;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod problem;
pub mod sig_gb;
pub mod sparsify;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

pub use bimodule::{
    cmp_dopot, monomials_below, GeneratorSystem, ModuleElement, ModuleMonomial, SignatureBound,
};
pub use poly::{cmp_deglex, parse_poly, NcPoly, PolyStats, VariableTable, Word};
pub use sig_gb::{syzygy_basis_up_to, trace_membership, LabeledPoly, SyzygyBasis};
pub use sparsify::{sparsify_pipeline, PipelineOptions, SparseCertificate, WeightMode};
