//! Exact classifier and solution toolkit for first-order difference
//! equations `f(z+1)^n = P(z,f)/Q(z,f)`.

pub mod algebra;
pub mod error;
pub mod numeric;
pub mod equation;
pub mod parser;
pub mod identity;
pub mod classifier;
pub mod special_fn;
pub mod solutions;
pub mod verifier;
pub mod cli;
