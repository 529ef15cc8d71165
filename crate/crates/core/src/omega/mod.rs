//! The category Ω: operations of free operads on trees, morphisms,
//! elementary faces and degeneracies, factorisations, and the closure and
//! décalage functors.

mod factorize;
pub mod faces;
mod functor;
mod morphism;

pub use factorize::{face_chain, factorize, Factorisation};
pub use faces::{
    degeneracy, elementary_degeneracies, elementary_faces, inner_face, outer_face, Face, FaceKind,
};
pub use functor::{
    cl_morphism, cl_preserves, closure_unit, decalage_closed_root, decalage_extensions,
    decalage_inclusion, decalage_morphism, decalage_root,
};
pub use morphism::{compose, for_each_hom, hom, hom_count, operations_of, Morphism, OperadOp};
