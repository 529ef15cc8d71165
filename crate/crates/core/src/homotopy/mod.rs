//! Asphericity checks at desk scale.
//!
//! A finite presheaf is modelled by the order complex of the poset of its
//! nondegenerate elements under the face relation. A collapse of that
//! complex to a point certifies contractibility; failing that, integral
//! homology decides between "homology trivial" (inconclusive) and a
//! witness of non-asphericity.

mod collapse;
mod complex;
mod homology;
mod nerve;
mod poset;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use collapse::{collapse_to_point, cone_collapse, verify_collapse, Collapse};
pub use complex::{order_complex, Simplex, SimplicialComplex};
pub use homology::{dense_smith, homology, smith, ChainComplex, Column, HomologyReport};
pub use nerve::{nerve, nerve_chain_complex, Nerve};
pub use poset::FacePoset;

use crate::dendro::{corolla_cells, segal_core, Cell, FinitePresheaf, Point, SubPresheaf};
use crate::tree::Tree;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsphericityOptions {
    /// Randomized collapse attempts after the first, ordered one.
    pub restarts: usize,
    pub seed: u64,
    /// Highest homology degree; `None` is the dimension of the complex.
    pub max_degree: Option<usize>,
    /// Largest order complex that is built.
    pub simplex_limit: usize,
    /// A subobject with one generator of more edges than this is reported
    /// as a cone on that generator without building its complex.
    pub cone_edges: usize,
}

impl Default for AsphericityOptions {
    fn default() -> Self {
        AsphericityOptions { restarts: 32, seed: 0, max_degree: None, simplex_limit: 200_000, cone_edges: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseCertificate {
    /// Checked elementary collapses of the order complex.
    Sequence(Vec<Collapse>),
    /// The face poset has a largest element, so its order complex is a cone
    /// with that apex; the collapses are not listed.
    Cone { apex: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonAsphericity {
    Disconnected { components: usize },
    Homology(HomologyReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AsphericityVerdict {
    /// Contractible. The homology is attached whenever the complex was
    /// built, and then vanishes.
    CollapsedToPoint { certificate: CollapseCertificate, homology: Option<HomologyReport> },
    /// No collapse was found but reduced homology vanishes. Necessary only.
    HomologyTrivial(HomologyReport),
    NotAspherical(NonAsphericity),
}

impl AsphericityVerdict {
    pub fn is_collapsed(&self) -> bool {
        matches!(self, AsphericityVerdict::CollapsedToPoint { .. })
    }

    pub fn is_not_aspherical(&self) -> bool {
        matches!(self, AsphericityVerdict::NotAspherical(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            AsphericityVerdict::CollapsedToPoint { .. } => "CollapsedToPoint",
            AsphericityVerdict::HomologyTrivial(_) => "HomologyTrivial",
            AsphericityVerdict::NotAspherical(_) => "NotAspherical",
        }
    }

    pub fn homology(&self) -> Option<&HomologyReport> {
        match self {
            AsphericityVerdict::CollapsedToPoint { homology, .. } => homology.as_ref(),
            AsphericityVerdict::HomologyTrivial(h) => Some(h),
            AsphericityVerdict::NotAspherical(NonAsphericity::Homology(h)) => Some(h),
            AsphericityVerdict::NotAspherical(NonAsphericity::Disconnected { .. }) => None,
        }
    }
}

/// Face poset, then order complex, then collapse, falling back to homology.
pub fn asphericity_of_poset(p: &FacePoset, opts: &AsphericityOptions) -> Result<AsphericityVerdict> {
    let components = p.components();
    if components != 1 {
        return Ok(AsphericityVerdict::NotAspherical(NonAsphericity::Disconnected { components }));
    }
    let c = match order_complex(p, opts.simplex_limit) {
        Ok(c) => c,
        Err(e) => {
            return match p.top() {
                Some(top) => Ok(AsphericityVerdict::CollapsedToPoint {
                    certificate: CollapseCertificate::Cone { apex: p.name(top).to_string() },
                    homology: None,
                }),
                None => Err(e),
            }
        }
    };
    asphericity_of_complex(&c, opts)
}

pub fn asphericity_of_complex(c: &SimplicialComplex, opts: &AsphericityOptions) -> Result<AsphericityVerdict> {
    let seq = match c.apex() {
        Some(a) => Some(cone_collapse(c, a)),
        None => collapse_to_point(c, opts.restarts, opts.seed),
    };
    let h = homology(&c.chain_complex(), opts.max_degree)?;
    Ok(match seq {
        Some(seq) => AsphericityVerdict::CollapsedToPoint { certificate: CollapseCertificate::Sequence(seq), homology: Some(h) },
        None if h.is_reduced_trivial() => AsphericityVerdict::HomologyTrivial(h),
        None if h.betti.first() != Some(&1) => {
            AsphericityVerdict::NotAspherical(NonAsphericity::Disconnected { components: h.betti.first().copied().unwrap_or(0) })
        }
        None => AsphericityVerdict::NotAspherical(NonAsphericity::Homology(h)),
    })
}

/// Asphericity of a subpresheaf of a representable or of a tensor product
/// of trees. One generator means a largest element; above
/// `opts.cone_edges` edges its complex is not built.
pub fn asphericity(x: &SubPresheaf, opts: &AsphericityOptions) -> Result<AsphericityVerdict> {
    if let [g] = x.generators() {
        if g.edge_count() > opts.cone_edges {
            return Ok(AsphericityVerdict::CollapsedToPoint {
                certificate: CollapseCertificate::Cone { apex: x.ambient().cell_tree(g).to_string() },
                homology: None,
            });
        }
    }
    asphericity_of_poset(&FacePoset::of_subpresheaf(x), opts)
}

/// Asphericity of any finite presheaf, through its classes of nondegenerate
/// elements.
pub fn asphericity_of_presheaf<P: FinitePresheaf + ?Sized>(p: &P, opts: &AsphericityOptions) -> Result<AsphericityVerdict> {
    asphericity_of_poset(&FacePoset::of_presheaf(p), opts)
}

/// Components of the category of elements, read off the face poset.
pub fn connected_components<P: FinitePresheaf + ?Sized>(p: &P) -> usize {
    FacePoset::of_presheaf(p).components()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegalCoreReport {
    pub verdict: AsphericityVerdict,
    /// Any two corollas meet in nothing or in a single edge.
    pub pairwise_single_eta: bool,
    /// Taken from the root up, each corolla meets the union of the earlier
    /// ones in exactly one edge.
    pub glued_along_eta: bool,
}

/// Asphericity of the Segal core together with the way it is glued from
/// corollas.
pub fn segal_core_asphericity(t: &Arc<Tree>, opts: &AsphericityOptions) -> Result<SegalCoreReport> {
    let verdict = asphericity(&segal_core(t), opts)?;
    let corollas = corolla_cells(t);
    let pairwise_single_eta = corollas.iter().enumerate().all(|(i, a)| {
        corollas[i + 1..].iter().all(|b| match a.common_faces(b).as_slice() {
            [] => true,
            [c] => c.edge_count() == 1,
            _ => false,
        })
    });
    let order: Vec<&Cell> = t.vertices_from_root().into_iter().map(|v| &corollas[v]).collect();
    let mut seen: Vec<Point> = Vec::new();
    let mut glued_along_eta = true;
    for (k, c) in order.iter().enumerate() {
        let shared = c.points().iter().filter(|p| seen.contains(p)).count();
        if k > 0 && shared != 1 {
            glued_along_eta = false;
        }
        seen.extend_from_slice(c.points());
    }
    Ok(SegalCoreReport { verdict, pairwise_single_eta, glued_along_eta })
}

/// For a presheaf given as the union of `parts`: when the intersection of
/// every nonempty family of parts collapses to a point, the union is not
/// reported as non-aspherical. `None` when the hypothesis fails (an empty
/// intersection fails it). Tries every subfamily, so `parts` must be
/// short.
pub fn union_respects_gluing(parts: &[SubPresheaf], opts: &AsphericityOptions) -> Result<Option<bool>> {
    if parts.len() > 16 {
        return Err(crate::Error::TooLarge { what: "parts of a union", limit: 16 });
    }
    for mask in 1u32..(1 << parts.len()) {
        let chosen: Vec<SubPresheaf> =
            (0..parts.len()).filter(|&j| mask & (1 << j) != 0).map(|j| parts[j].clone()).collect();
        let meet = crate::dendro::intersection(&chosen)?;
        if meet.is_empty() || !asphericity(&meet, opts)?.is_collapsed() {
            return Ok(None);
        }
    }
    let union = crate::dendro::union(parts)?;
    Ok(Some(!asphericity(&union, opts)?.is_not_aspherical()))
}

#[cfg(test)]
mod tests;
