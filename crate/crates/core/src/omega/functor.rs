//! Closure and décalage on morphisms.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{compose, hom, Morphism};
use crate::tree::{closure, construct_decalage_any, decalage, Tree};
use crate::{Error, Result};

/// The inclusion `η_T : T → cl(T)`.
pub fn closure_unit(t: &Arc<Tree>) -> Morphism {
    let c = Arc::new(closure(t).tree);
    let edge_map = (0..t.edge_count()).collect();
    Morphism::new_unchecked(t.clone(), c, edge_map)
}

/// `cl(f) : cl(S) → cl(T)`, the unique map extending `f` along the
/// closure units. Closure keeps edges, so it has the same edge map.
pub fn cl_morphism(f: &Morphism) -> Morphism {
    let s = Arc::new(closure(f.source()).tree);
    let t = Arc::new(closure(f.target()).tree);
    Morphism::new_unchecked(s, t, f.edge_map().to_vec())
}

fn require_closed(t: &Tree) -> Result<()> {
    match t.leaves().first() {
        Some(&leaf) => Err(Error::NotClosed(t.edge_name(leaf).into())),
        None => Ok(()),
    }
}

/// `u_T : T → D(T)` for a closed tree.
pub fn decalage_inclusion(t: &Arc<Tree>) -> Result<Morphism> {
    let d = decalage(t)?;
    Ok(Morphism::new_unchecked(t.clone(), Arc::new(d.tree), d.inclusion))
}

/// `a_T : η → D(T)`, picking out the new root.
pub fn decalage_root(t: &Arc<Tree>) -> Result<Morphism> {
    let d = decalage(t)?;
    Ok(Morphism::new_unchecked(Arc::new(Tree::eta()), Arc::new(d.tree), alloc::vec![d.new_root]))
}

/// `ā_T = cl(a_T) : C_0 → D(T)`.
pub fn decalage_closed_root(t: &Arc<Tree>) -> Result<Morphism> {
    Ok(cl_morphism(&decalage_root(t)?))
}

/// `D(f) : D(S) → D(T)` for `f` between closed trees: the new root goes
/// to the new root and the new vertex to the unary operation from the
/// image of the old root down to the new root.
pub fn decalage_morphism(f: &Morphism) -> Result<Morphism> {
    require_closed(f.source())?;
    require_closed(f.target())?;
    let ds = decalage(f.source())?;
    let dt = decalage(f.target())?;
    let mut edge_map = alloc::vec![0; ds.tree.edge_count()];
    for e in 0..f.source().edge_count() {
        edge_map[ds.inclusion[e]] = dt.inclusion[f.apply(e)];
    }
    edge_map[ds.new_root] = dt.new_root;
    Morphism::new(Arc::new(ds.tree), Arc::new(dt.tree), edge_map)
}

/// All root-preserving maps `g : D(S) → D(T)` with `g ∘ u_S = u_T ∘ f`,
/// for arbitrary trees. On closed trees there is exactly one.
pub fn decalage_extensions(f: &Morphism) -> Vec<Morphism> {
    let ds = construct_decalage_any(f.source());
    let dt = construct_decalage_any(f.target());
    let s = Arc::new(ds.tree);
    let t = Arc::new(dt.tree);
    hom(&s, &t)
        .into_iter()
        .filter(|g| {
            g.is_root_preserving()
                && (0..f.source().edge_count()).all(|e| g.apply(ds.inclusion[e]) == dt.inclusion[f.apply(e)])
        })
        .collect()
}

/// `cl` on a composable pair, both ways round.
pub fn cl_preserves(g: &Morphism, f: &Morphism) -> Result<bool> {
    let gf = compose(g, f)?;
    Ok(cl_morphism(&gf) == compose(&cl_morphism(g), &cl_morphism(f))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::faces::elementary_faces;
    use crate::omega::{factorize, FaceKind};
    use crate::tree::enumerate_trees;
    use alloc::string::ToString;

    fn arc(s: &str) -> Arc<Tree> {
        Arc::new(s.parse().unwrap())
    }

    #[test]
    fn closure_unit_and_triangles() {
        for t in enumerate_trees(3, 3) {
            let t = Arc::new(t);
            let unit = closure_unit(&t);
            // cl(η_T) is the identity of cl(T).
            assert!(cl_morphism(&unit).is_identity());
            let c = unit.target().clone();
            // The unit at a closed tree is its identity.
            assert!(closure_unit(&c).is_identity());
        }
        assert!(cl_morphism(&Morphism::identity(arc("a[u](b)"))).is_identity());
    }

    #[test]
    fn closure_of_an_outer_face_is_three_inner_faces() {
        // R = a[u](b, c) → T = a[u](b, c[w](d,e,f)), chopping w.
        let t = arc("a[u](b, c[w](d,e,f))");
        let face = elementary_faces(&t)
            .into_iter()
            .find(|f| f.kind == FaceKind::Outer(t.vertex_id("w").unwrap()))
            .unwrap();
        let cl = cl_morphism(&face.map);
        let fac = factorize(&cl);
        assert!(fac.degeneracy.is_identity() && fac.iso.is_identity());
        let kinds: Vec<_> = fac.face_steps.iter().map(|f| f.is_inner()).collect();
        assert_eq!(kinds, [true, true, true]);
        let contracted: Vec<&str> = fac
            .face_steps
            .iter()
            .map(|f| match f.kind {
                FaceKind::Inner(e) => f.map.target().edge_name(e),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(contracted, ["d", "e", "f"]);
    }

    #[test]
    fn decalage_on_closed_trees() {
        let c0 = Arc::new(Tree::corolla(0));
        let id = Morphism::identity(c0.clone());
        assert!(decalage_morphism(&id).unwrap().is_identity());
        let closed: Vec<Arc<Tree>> =
            enumerate_trees(3, 2).into_iter().filter(Tree::is_closed).map(Arc::new).collect();
        for s in &closed {
            for t in &closed {
                for f in hom(s, t) {
                    let df = decalage_morphism(&f).unwrap();
                    assert!(df.is_root_preserving());
                    let lhs = compose(&df, &decalage_inclusion(s).unwrap()).unwrap();
                    let rhs = compose(&decalage_inclusion(t).unwrap(), &f).unwrap();
                    assert_eq!(lhs, rhs);
                    let a = compose(&df, &decalage_closed_root(s).unwrap()).unwrap();
                    assert_eq!(a, decalage_closed_root(t).unwrap());
                    assert_eq!(decalage_extensions(&f), [df]);
                }
            }
        }
        assert!(matches!(decalage_morphism(&Morphism::identity(arc("a"))), Err(Error::NotClosed(_))));
    }

    #[test]
    fn chopping_the_root_has_no_decalage() {
        let t = arc("a[v](b, c[w](d,e,f))");
        let face = elementary_faces(&t)
            .into_iter()
            .find(|f| f.kind == FaceKind::Outer(t.vertex_id("v").unwrap()))
            .unwrap();
        assert_eq!(face.map.source().to_string(), "c[w](d,e,f)");
        assert!(decalage_extensions(&face.map).is_empty());
        // With a nullary vertex above b the extension exists.
        let t = arc("a[v](b[x](), c[w](d,e,f))");
        let face = Morphism::inclusion(face.map.source().clone(), t).unwrap();
        assert_eq!(decalage_extensions(&face).len(), 1);
    }

}
