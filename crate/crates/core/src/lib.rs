//! Finite combinatorics of the category Ω of rooted trees and of dendroidal
//! sets.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of immutable values: trees and their canonical codes, the
//! operations of the free operad on a tree, morphisms of Ω with their
//! faces, degeneracies and factorisations, the closure and décalage
//! functors, finite subpresheaves of representables and of tensor products
//! of trees, shuffles, and a small exact homotopy engine (face posets, order
//! complexes, integer homology, collapses and nerves).
//!
//! ```
//! use omega_core::tree::Tree;
//! use omega_core::omega::{hom, elementary_faces};
//! use std::sync::Arc;
//!
//! let t: Arc<Tree> = Arc::new("a[u](b[v](c,d), e[w](), f)".parse().unwrap());
//! assert_eq!(hom(&Arc::new(Tree::eta()), &t).len(), 6);
//! assert_eq!(elementary_faces(&t).len(), 4);
//! ```
#![no_std]

extern crate alloc;

pub mod dendro;
mod error;
pub mod homotopy;
pub mod omega;
pub mod tensor;
pub mod tree;

pub use error::{Error, Result};
