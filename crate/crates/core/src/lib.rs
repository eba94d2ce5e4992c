//! Continuous −1 hypergeometric orthogonal polynomials: families, Dunkl
//! operators, orthogonality checks and the limit scheme.

pub mod error;
pub mod families;
pub mod fixtures;
pub mod numerics;
pub mod operators;
pub mod orthogonality;
pub mod polynomials;
pub mod report;
pub mod scheme;
pub mod cli;
