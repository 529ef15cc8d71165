use super::*;
use crate::dendro::{boundary, product, Ambient, GeneratedPresheaf};
use crate::tensor::{shuffle_subobject, tensor_ambient};
use crate::tree::enumerate_trees;
use crate::dendro::AmbientKind;

fn rep(t: Tree) -> SubPresheaf {
    SubPresheaf::full(&Ambient::representable(Arc::new(t)))
}

fn opts() -> AsphericityOptions {
    AsphericityOptions::default()
}

fn check_collapsed(v: &AsphericityVerdict, c: Option<&SimplicialComplex>) {
    let AsphericityVerdict::CollapsedToPoint { certificate, homology } = v else { panic!("{v:?}") };
    if let Some(h) = homology {
        assert!(h.is_reduced_trivial());
        assert!(h.euler_consistent());
    }
    if let (CollapseCertificate::Sequence(seq), Some(c)) = (certificate, c) {
        assert!(verify_collapse(c, seq));
    }
}

#[test]
fn representables_collapse() {
    for t in enumerate_trees(3, 2) {
        let x = rep(t.clone());
        let p = FacePoset::of_subpresheaf(&x);
        let c = order_complex(&p, 100_000).unwrap();
        let v = asphericity(&x, &opts()).unwrap();
        check_collapsed(&v, Some(&c));
        // The greedy search also finds a collapse without the cone shortcut.
        let seq = collapse_to_point(&c, 32, 0).unwrap();
        assert!(verify_collapse(&c, &seq), "{t}");
    }
}

#[test]
fn large_representables_are_cones() {
    let t: Tree = "r[u](a[v](b,c,d), e[w](f,g), h)".parse().unwrap();
    let v = asphericity(&rep(t), &opts()).unwrap();
    assert!(matches!(v, AsphericityVerdict::CollapsedToPoint { certificate: CollapseCertificate::Cone { .. }, homology: None }));
}

#[test]
fn boundaries() {
    let v = asphericity(&boundary(&Arc::new(Tree::corolla(2))), &opts()).unwrap();
    assert_eq!(v, AsphericityVerdict::NotAspherical(NonAsphericity::Disconnected { components: 3 }));
    // The boundary of a triangle is a circle.
    let v = asphericity(&boundary(&Arc::new(Tree::linear(2))), &opts()).unwrap();
    let AsphericityVerdict::NotAspherical(NonAsphericity::Homology(h)) = v else { panic!("{v:?}") };
    assert_eq!(h.reduced_betti(), [0, 1]);
    assert!(h.euler_consistent());
    // The boundary of a tetrahedron is a sphere.
    let v = asphericity(&boundary(&Arc::new(Tree::linear(3))), &opts()).unwrap();
    let AsphericityVerdict::NotAspherical(NonAsphericity::Homology(h)) = v else { panic!("{v:?}") };
    assert_eq!(h.reduced_betti(), [0, 0, 1]);
}

#[test]
fn segal_cores() {
    for t in enumerate_trees(4, 3) {
        let t = Arc::new(t);
        let r = segal_core_asphericity(&t, &opts()).unwrap();
        let c = order_complex(&FacePoset::of_subpresheaf(&segal_core(&t)), 100_000).unwrap();
        check_collapsed(&r.verdict, Some(&c));
        assert!(r.pairwise_single_eta && r.glued_along_eta, "{t}");
    }
    let example: Arc<Tree> = Arc::new("a[u](b[v](c,d), e[w](), f)".parse().unwrap());
    let r = segal_core_asphericity(&example, &opts()).unwrap();
    assert!(r.verdict.is_collapsed() && r.pairwise_single_eta && r.glued_along_eta);
}

#[test]
fn eta_times_corolla_is_disconnected() {
    let p = product(rep(Tree::eta()), rep(Tree::corolla(2)));
    assert_eq!(connected_components(&p), 3);
    let v = asphericity_of_presheaf(&p, &opts()).unwrap();
    assert_eq!(v, AsphericityVerdict::NotAspherical(NonAsphericity::Disconnected { components: 3 }));
    // The same count from the truncated category of elements.
    assert_eq!(crate::dendro::category_of_elements(&p, 2).connected_components(), 3);
}

#[test]
fn a_quotient_of_a_corolla() {
    // Not normal, but still connected with a largest class.
    let q = GeneratedPresheaf::corolla_mod_swap();
    assert!(asphericity_of_presheaf(&q, &opts()).unwrap().is_collapsed());
}

/// `Δ_m × Δ_n` directly: strictly increasing chains in the grid.
fn grid_complex(m: usize, n: usize) -> SimplicialComplex {
    fn paths(i: usize, j: usize, m: usize, n: usize, cur: &mut Vec<u32>, out: &mut Vec<Simplex>) {
        cur.push((i * (n + 1) + j) as u32);
        if i == m && j == n {
            out.push(cur.clone());
        }
        if i < m {
            paths(i + 1, j, m, n, cur, out);
        }
        if j < n {
            paths(i, j + 1, m, n, cur, out);
        }
        cur.pop();
    }
    let mut facets = Vec::new();
    paths(0, 0, m, n, &mut Vec::new(), &mut facets);
    SimplicialComplex::from_facets((m + 1) * (n + 1), &facets, 100_000).unwrap()
}

#[test]
fn products_of_simplices_agree_with_the_direct_complex() {
    for m in 0..=5 {
        for n in 0..=5 - m {
            let direct = grid_complex(m, n);
            let hd = homology(&direct.chain_complex(), None).unwrap();
            assert!(hd.is_reduced_trivial() && hd.euler_consistent());
            let p = product(rep(Tree::linear(m)), rep(Tree::linear(n)));
            let poset = FacePoset::of_presheaf(&p);
            // Nondegenerate elements are the simplices, faces are faces.
            assert_eq!(poset.len(), direct.len(), "{m} {n}");
            let edges: usize = (1..=direct.dimension().unwrap()).map(|d| direct.simplices(d).len() * (d + 1)).sum();
            assert_eq!(poset.covers().len(), edges, "{m} {n}");
            let sd = order_complex(&poset, 200_000).unwrap();
            let v = asphericity_of_complex(&sd, &opts()).unwrap();
            check_collapsed(&v, Some(&sd));
            assert_eq!(v.homology().unwrap().reduced_betti(), hd.reduced_betti());
            assert_eq!(sd.euler_characteristic(), direct.euler_characteristic());
        }
    }
}

#[test]
fn small_tensor_products() {
    let trees: Vec<Arc<Tree>> = enumerate_trees(2, 2).into_iter().map(Arc::new).collect();
    let mut built = 0;
    for s in &trees {
        for t in &trees {
            let a = tensor_ambient(s, t);
            let full = SubPresheaf::full(&a);
            let Ok(c) = order_complex(&FacePoset::of_subpresheaf(&full), 20_000) else { continue };
            built += 1;
            check_collapsed(&asphericity_of_complex(&c, &opts()).unwrap(), Some(&c));
            let AmbientKind::Tensor(ta) = a.kind() else { unreachable!() };
            let parts: Vec<SubPresheaf> = ta.shuffles().iter().map(|sh| shuffle_subobject(&a, sh).unwrap()).collect();
            if parts.len() <= 8 {
                assert_eq!(union_respects_gluing(&parts, &opts()).unwrap(), Some(true), "{s} ⊗ {t}");
            }
        }
    }
    assert!(built >= 40, "{built}");
}

#[test]
fn gluing_harness_sees_a_failed_hypothesis() {
    // The three edges of a triangle meet pairwise in a vertex and all
    // together in nothing; their union is a circle.
    let bd = boundary(&Arc::new(Tree::linear(2)));
    let parts: Vec<SubPresheaf> = bd
        .generators()
        .iter()
        .map(|g| SubPresheaf::generated(bd.ambient(), alloc::vec![g.clone()]).unwrap())
        .collect();
    assert_eq!(union_respects_gluing(&parts, &opts()).unwrap(), None);
    assert_eq!(union_respects_gluing(&parts[..2], &opts()).unwrap(), Some(true));
}
