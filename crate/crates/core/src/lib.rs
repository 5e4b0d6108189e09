//! Exact weighted graph homomorphism counting, Tutte-type polynomials and
//! executable checks of when `h(·, G)` depends only on the cycle matroid.

pub mod error;
pub mod hom;
pub mod lab;
pub mod multigraph;
pub mod poly;
pub mod rational;
pub mod span;
pub mod weighted;

pub use error::{Error, Result};
pub use hom::{h, hom, hom_fast, hom_tensor, HomTensor};
pub use multigraph::{LabeledGraph, Multigraph};
pub use rational::Rational;
pub use weighted::{AutomorphismGroup, Permutation, WeightedGraph};
