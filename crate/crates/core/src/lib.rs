//! Exact combinatorial realization of simply-laced Lie algebras from a
//! Coxeter element.
//!
//! Starting from an ADE Dynkin diagram and a Coxeter element C (given as
//! a vertex ordering), the crate builds:
//!
//! - the root system and the de-symmetrized form <x,y> = ((1-C)^{-1}x, y),
//! - the periodic quiver on the diagram times Z_{2h}, with height
//!   functions, slices, source/sink flips and source-to-sink sweeps,
//! - the bijection between roots and quiver vertices that intertwines C
//!   with the level-shift twist,
//! - the Lie algebra as an exact structure-constant table with bracket
//!   signs (-1)^{<a,b>}, verified against the Jacobi identity,
//! - braid operators exp(ad e) exp(-ad f) exp(ad e) and the inductive
//!   root-vector construction along the quiver, with a traceless-matrix
//!   model for type A as an independent oracle,
//! - a finite-field Hall-number oracle cross-checking the bracket signs.
//!
//! All arithmetic is exact; there is no floating point in the crate.

pub mod bijection;
pub mod braid;
pub mod dynkin;
pub mod error;
pub mod gammahat;
pub mod hall;
pub mod liebuild;
pub mod matrixmodel;
pub mod ratmat;
pub mod rootsys;

pub use dynkin::{DynkinDiagram, Family};
pub use error::{Error, Result};
pub use rootsys::{CoxeterElement, RootSystem, WeylElement};
