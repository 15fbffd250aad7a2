//! Exact and numeric computations for the hyperquadrics `Im W = Z Z̄` over the
//! algebras 𝔄^δ of double (δ = +1) and complex (δ = -1) numbers: their symmetry
//! group and algebra, Hermitian pencil classification, truncated defining series
//! and normal forms, the Cartan connection on the quadric, and chains.

pub mod algebra;
pub mod chains;
pub mod cli;
pub mod group;
pub mod hermitian;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod normalform;
pub mod quadric_frame;
pub mod sample;
pub mod matrix;
pub mod scalar;
pub mod series;
