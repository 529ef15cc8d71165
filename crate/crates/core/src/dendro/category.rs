//! Finite categories and truncated categories of elements.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::presheaf::{elements_by_shape, hom_maps, FinitePresheaf, Label};
use crate::tree::{enumerate_trees, EdgeId, Tree};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub name: String,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug)]
pub struct SmallCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    /// `(g, f) ↦ g ∘ f` for every composable pair.
    composition: BTreeMap<(usize, usize), usize>,
}

impl SmallCategory {
    /// Checks the shape of the data and the category axioms.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composition: BTreeMap<(usize, usize), usize>,
    ) -> Result<SmallCategory> {
        let c = SmallCategory { objects, arrows, identities, composition };
        c.check_axioms()?;
        Ok(c)
    }

    /// The category with one object and one arrow.
    pub fn terminal() -> SmallCategory {
        let arrows = alloc::vec![Arrow { source: 0, target: 0, name: "id".into() }];
        let composition = [((0, 0), 0)].into_iter().collect();
        SmallCategory::new(alloc::vec!["*".into()], arrows, alloc::vec![0], composition).expect("terminal category")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, arrow: usize) -> bool {
        self.identities[self.arrows[arrow].source] == arrow
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    /// Identity and associativity laws, and closure of the composition
    /// table, checked exhaustively.
    pub fn check_axioms(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidMorphism(m));
        if self.identities.len() != self.objects.len() {
            return bad("one identity per object".into());
        }
        let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new(); self.objects.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= self.objects.len() || a.target >= self.objects.len() {
                return bad(format!("arrow `{}` has an unknown end", a.name));
            }
            out[a.source].push(i);
        }
        for (o, &id) in self.identities.iter().enumerate() {
            let a = &self.arrows[id];
            if a.source != o || a.target != o {
                return bad(format!("identity of `{}` is not an endomorphism", self.objects[o]));
            }
        }
        for (&(g, f), &h) in &self.composition {
            let (fa, ga, ha) = (&self.arrows[f], &self.arrows[g], &self.arrows[h]);
            if fa.target != ga.source || ha.source != fa.source || ha.target != ga.target {
                return bad(format!("`{} ∘ {}` has the wrong ends", ga.name, fa.name));
            }
        }
        for (f, a) in self.arrows.iter().enumerate() {
            if self.compose(self.identities[a.target], f) != Some(f) || self.compose(f, self.identities[a.source]) != Some(f) {
                return bad(format!("identity law fails at `{}`", a.name));
            }
            for &g in &out[a.target] {
                let Some(gf) = self.compose(g, f) else {
                    return bad(format!("`{} ∘ {}` is missing", self.arrows[g].name, a.name));
                };
                for &h in &out[self.arrows[g].target] {
                    let left = self.compose(h, gf);
                    let right = self.compose(h, g).and_then(|hg| self.compose(hg, f));
                    if left.is_none() || left != right {
                        return bad(format!("associativity fails at `{}`", a.name));
                    }
                }
            }
        }
        Ok(())
    }

    /// Connected components of the underlying graph, as a component index
    /// per object.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.objects.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            parent[x] = y;
        }
        let mut label = BTreeMap::new();
        (0..self.objects.len())
            .map(|o| {
                let r = find(&mut parent, o);
                let n = label.len();
                *label.entry(r).or_insert(n)
            })
            .collect()
    }

    pub fn connected_components(&self) -> usize {
        self.component_labels().iter().max().map_or(0, |m| m + 1)
    }

    /// Objects receiving exactly one arrow from every object.
    pub fn terminal_objects(&self) -> Vec<usize> {
        let mut count = alloc::vec![alloc::vec![0usize; self.objects.len()]; self.objects.len()];
        for a in &self.arrows {
            count[a.source][a.target] += 1;
        }
        (0..self.objects.len()).filter(|&t| (0..self.objects.len()).all(|s| count[s][t] == 1)).collect()
    }
}

/// The full subcategory of the category of elements of `p` on elements
/// whose shapes have at most `shape_bound` vertices, degenerate ones
/// included. Shapes have arity at most the presheaf's arity bound (and at
/// least 1, so that degeneracies appear).
pub fn category_of_elements<P: FinitePresheaf + ?Sized>(p: &P, shape_bound: usize) -> SmallCategory {
    let arity = p.shape_bound().1.max(1);
    let shapes: Vec<Arc<Tree>> = enumerate_trees(shape_bound, arity).into_iter().map(Arc::new).collect();
    let index = elements_by_shape(p, &shapes);
    let mut objects = alloc::vec![String::new(); index.len()];
    let mut of_shape: Vec<Vec<(usize, &Vec<Label>)>> = alloc::vec![Vec::new(); shapes.len()];
    for ((s, labels), &i) in &index {
        let names: Vec<String> = labels.iter().map(|&l| p.label_name(l)).collect();
        objects[i] = format!("{} : {}", shapes[*s], names.join(" "));
        of_shape[*s].push((i, labels));
    }

    // Arrows are keyed by source object, target object and edge map.
    let mut arrows = Vec::new();
    let mut key: BTreeMap<(usize, usize, Vec<EdgeId>), usize> = BTreeMap::new();
    let mut maps: Vec<(usize, usize, Vec<EdgeId>)> = Vec::new();
    for (vs, v) in shapes.iter().enumerate() {
        for (us, u) in shapes.iter().enumerate() {
            for m in hom_maps(v, u) {
                for &(y, labels) in &of_shape[us] {
                    let pulled: Vec<Label> = m.iter().map(|&e| labels[e]).collect();
                    let x = index[&(vs, pulled)];
                    let id = arrows.len();
                    let name = format!("{}→{} {:?}", x, y, m);
                    arrows.push(Arrow { source: x, target: y, name });
                    key.insert((x, y, m.clone()), id);
                    maps.push((vs, us, m.clone()));
                }
            }
        }
    }
    let mut identities = alloc::vec![0; objects.len()];
    for ((x, y, m), &id) in &key {
        if x == y && m.iter().enumerate().all(|(i, &e)| i == e) && maps[id].0 == maps[id].1 {
            identities[*x] = id;
        }
    }
    let mut outgoing: Vec<Vec<usize>> = alloc::vec![Vec::new(); objects.len()];
    for (i, a) in arrows.iter().enumerate() {
        outgoing[a.source].push(i);
    }
    let mut composition = BTreeMap::new();
    for (f, a) in arrows.iter().enumerate() {
        for &g in &outgoing[a.target] {
            let gm = &maps[g].2;
            let composite: Vec<EdgeId> = maps[f].2.iter().map(|&e| gm[e]).collect();
            let h = key[&(a.source, arrows[g].target, composite)];
            composition.insert((g, f), h);
        }
    }
    SmallCategory::new(objects, arrows, identities, composition).expect("categories of elements are categories")
}

impl core::fmt::Display for SmallCategory {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} objects, {} arrows", self.objects.len(), self.arrows.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendro::presheaf::product;
    use crate::dendro::{Ambient, SubPresheaf};

    fn rep(t: Tree) -> SubPresheaf {
        SubPresheaf::full(&Ambient::representable(Arc::new(t)))
    }

    #[test]
    fn terminal_category() {
        let t = SmallCategory::terminal();
        assert_eq!(t.connected_components(), 1);
        assert_eq!(t.terminal_objects(), [0]);
    }

    #[test]
    fn slices_over_representables_have_a_terminal_object() {
        for t in [Tree::eta(), Tree::corolla(0), Tree::corolla(2), Tree::linear(2)] {
            let p = rep(t.clone());
            let c = category_of_elements(&p, t.vertex_count());
            let terminal = c.terminal_objects();
            // The identity and its composites with automorphisms.
            assert_eq!(terminal.len(), crate::dendro::automorphisms(&t).len(), "{t}");
        }
    }

    #[test]
    fn eta_times_corolla_has_three_components() {
        let eta = rep(Tree::eta());
        let c2 = rep(Tree::corolla(2));
        let p = product(eta, c2);
        for bound in 0..=3 {
            let c = category_of_elements(&p, bound);
            assert_eq!(c.connected_components(), 3, "bound {bound}");
        }
    }

    #[test]
    fn rejects_broken_tables() {
        let arrows = alloc::vec![Arrow { source: 0, target: 0, name: "id".into() }];
        assert!(SmallCategory::new(alloc::vec!["*".into()], arrows, alloc::vec![0], BTreeMap::new()).is_err());
    }
}
