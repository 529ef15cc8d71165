//! Degeneracy, isomorphism, face factorisation of morphisms.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::faces::{elementary_faces, Face};
use super::{compose, Morphism};
use crate::tree::Tree;

/// `f = face ∘ iso ∘ degeneracy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorisation {
    pub degeneracy: Morphism,
    pub iso: Morphism,
    pub face: Morphism,
    /// Maps that each collapse one unary vertex, composing to `degeneracy`.
    pub degeneracy_steps: Vec<Morphism>,
    /// Elementary faces from the target down to the image, composing to
    /// `face`.
    pub face_steps: Vec<Face>,
}

impl Factorisation {
    pub fn recompose(&self) -> Morphism {
        let g = compose(&self.iso, &self.degeneracy).expect("factors are composable");
        compose(&self.face, &g).expect("factors are composable")
    }
}

pub fn factorize(f: &Morphism) -> Factorisation {
    // Collapse, one at a time, the unary vertices sent to identities.
    let mut current = Morphism::identity(f.source().clone());
    let mut rest = f.clone();
    let mut steps = Vec::new();
    while let Some(v) = (0..rest.source().vertex_count()).find(|&v| rest.vertex_image(v).is_identity()) {
        let s = rest.source().clone();
        let (smaller, step_map) = s.collapse_unary(v).expect("identity images are unary vertices");
        let smaller = Arc::new(smaller);
        let step = Morphism::new_unchecked(s.clone(), smaller.clone(), step_map);
        let rest_map = smaller.edge_names().iter().map(|n| rest.apply(s.edge_id(n).expect("kept"))).collect();
        rest = Morphism::new_unchecked(smaller, rest.target().clone(), rest_map);
        current = compose(&step, &current).expect("composable");
        steps.push(step);
    }

    // What is left is injective on edges; rename its source into the target.
    let s = rest.source().clone();
    let t = rest.target().clone();
    let names: Vec<String> = (0..s.edge_count()).map(|e| String::from(t.edge_name(rest.apply(e)))).collect();
    let raw = s.raw_vertices();
    let image = Arc::new(Tree::assemble(names, s.root(), raw).expect("images of monomorphisms are trees"));
    let iso_map = (0..s.edge_count()).map(|e| image.edge_id(t.edge_name(rest.apply(e))).expect("named")).collect();
    let iso = Morphism::new_unchecked(s, image.clone(), iso_map);
    let face = Morphism::inclusion(image.clone(), t.clone()).expect("the image sits in the target");
    let face_steps = face_chain(&image, &t);
    Factorisation { degeneracy: current, iso, face, degeneracy_steps: steps, face_steps }
}

/// Elementary faces leading from `t` down to a subtree `r` whose edges are
/// named as in `t`. Each step picks the first face whose source still
/// contains `r`.
pub fn face_chain(r: &Arc<Tree>, t: &Arc<Tree>) -> Vec<Face> {
    let mut chain = Vec::new();
    let mut x = t.clone();
    while x.edge_count() > r.edge_count() || x.vertex_count() > r.vertex_count() {
        let next = elementary_faces(&x)
            .into_iter()
            .find(|face| Morphism::inclusion(r.clone(), face.map.source().clone()).is_ok())
            .expect("a proper subtree lies in some elementary face");
        x = next.map.source().clone();
        chain.push(next);
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::faces::degeneracy;
    use crate::omega::hom;
    use crate::tree::{enumerate_trees, EdgeId};

    #[test]
    fn identity_factors_trivially() {
        let t: Arc<Tree> = Arc::new("a[u](b[v](c,d), e[w](), f)".parse().unwrap());
        let id = Morphism::identity(t.clone());
        let fac = factorize(&id);
        assert!(fac.degeneracy.is_identity());
        assert!(fac.iso.is_identity());
        assert!(fac.face.is_identity());
        assert!(fac.face_steps.is_empty());
    }

    #[test]
    fn pure_degeneracy() {
        let eta = Arc::new(Tree::eta());
        let sigma = hom(&Arc::new(Tree::linear(1)), &eta).pop().unwrap();
        let fac = factorize(&sigma);
        // The collapsed tree keeps the source's name for the surviving
        // edge; the isomorphism renames it.
        assert_eq!(fac.degeneracy_steps.len(), 1);
        assert_eq!(fac.degeneracy.edge_map(), sigma.edge_map());
        assert!(fac.iso.is_isomorphism());
        assert_eq!(fac.recompose(), sigma);
        assert!(fac.face.is_identity());
    }

    #[test]
    fn recomposes_over_a_small_corpus() {
        let trees: Vec<Arc<Tree>> = enumerate_trees(3, 2).into_iter().map(Arc::new).collect();
        for s in &trees {
            for t in &trees {
                for f in hom(s, t) {
                    let fac = factorize(&f);
                    assert_eq!(fac.recompose(), f);
                    assert!(fac.face.is_injective());
                    assert!(fac.iso.is_isomorphism());
                    // Each collapse is an elementary degeneracy up to a
                    // renaming of its source.
                    for step in &fac.degeneracy_steps {
                        let lost = (0..step.source().edge_count())
                            .find(|&e| step.source().edge_id(step.target().edge_name(step.apply(e))) != Some(e))
                            .unwrap();
                        let e = step.apply(lost);
                        let sigma = degeneracy(step.target(), e);
                        let rename: Vec<EdgeId> = sigma
                            .source()
                            .edge_names()
                            .iter()
                            .map(|n| step.source().edge_id(n).unwrap_or(lost))
                            .collect();
                        let iso = Morphism::new(sigma.source().clone(), step.source().clone(), rename).unwrap();
                        assert!(iso.is_isomorphism());
                        assert_eq!(compose(step, &iso).unwrap(), sigma);
                    }
                    let chain = fac.face_steps.iter().rev().fold(None::<Morphism>, |acc, face| {
                        Some(match acc {
                            None => face.map.clone(),
                            Some(m) => compose(&face.map, &m).unwrap(),
                        })
                    });
                    let chain = chain.unwrap_or_else(|| Morphism::identity(fac.face.target().clone()));
                    assert_eq!(chain.edge_map(), fac.face.edge_map());
                }
            }
        }
    }
}
