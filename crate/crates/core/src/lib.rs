//! Exact Hochschild, cyclic and periodic cyclic homology of finite-dimensional
//! algebras over ℚ, with tools for algebra towers and orbifold Betti numbers.

pub mod algebra;
pub mod linalg;
pub mod mixed;
pub mod homology;
pub mod towers;
pub mod orbifold;
pub mod io;
pub mod cli;
