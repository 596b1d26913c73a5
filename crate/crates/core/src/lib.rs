//! Verification workbench for spectral-radius conditions that force tree
//! subgraphs.
//!
//! The crate builds the extremal families `S_{n,k} = K_k ∨ complement(K_{n-k})`
//! and `S⁺_{n,k}`, computes and bounds spectral radii, decides tree, spider
//! and broom containment, checks Turán-type edge bounds on concrete graphs,
//! and enumerates small graphs and trees for exhaustive campaigns.
//!
//! Floating-point code is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix it to `f64`, which is what the rest of the
//! workspace uses.

// `!(x > 0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bits;
pub mod graph;
pub mod scalar;
pub mod embed;
pub mod enumerate;
pub mod spectral;
pub mod turan;

pub use graph::{
    canonical_form, canonical_key, decode_edge_list, decode_graph6, encode_edge_list,
    encode_graph6, CanonicalKey, FamilySpec, Graph, GraphError,
};
pub use scalar::Scalar;

pub type SpectralResult64 = spectral::SpectralResult<f64>;
pub type QuotientCertificate64 = spectral::QuotientCertificate<f64>;
pub type CoreWitness64 = spectral::CoreWitness<f64>;
