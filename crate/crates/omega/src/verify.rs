//! Verification suites and their reports.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use omega_core::dendro::{
    boundary, category_of_elements, corolla_cells, inner_horn, intersection, is_full, is_representable, product,
    representable_by_counting, segal_core, union, Ambient, AmbientKind, Cell, GeneratedPresheaf, Point, SubPresheaf,
};
use omega_core::homotopy::{
    asphericity, asphericity_of_complex, asphericity_of_presheaf, connected_components, order_complex,
    segal_core_asphericity, union_respects_gluing, verify_collapse, AsphericityOptions, AsphericityVerdict,
    CollapseCertificate, FacePoset, NonAsphericity,
};
use omega_core::omega::{
    cl_morphism, closure_unit, compose, decalage_closed_root, decalage_extensions, decalage_inclusion,
    decalage_morphism, elementary_faces, factorize, for_each_hom, hom, FaceKind, Morphism,
};
use omega_core::tensor::{
    binomial, inner_face_path, intersection_classes, shuffle_subobject, simplex_shuffle_intersection,
    simplex_shuffles,
};
use omega_core::tree::{canonical_code, closure, enumerate_trees, is_isomorphic, EdgeId, Tree};
use serde::Serialize;
use serde_json::Value;

use crate::{Error, Result};

/// The tree used throughout the documentation and examples.
pub const EXAMPLE_TREE: &str = "a[u](b[v](c,d), e[w](), f)";

/// The outer face chopping the root vertex `v`, which has no extension to
/// décalages.
pub const COUNTEREXAMPLE_TARGET: &str = "a[v](b, c[w](d,e,f))";

#[derive(Clone, Copy, Debug)]
pub struct SuiteInfo {
    pub id: &'static str,
    pub statement: &'static str,
    /// Default and largest accepted `--max-vertices`; `None` when the suite
    /// takes no bounds.
    pub vertices: Option<(usize, usize)>,
    /// Default and largest accepted `--max-arity`.
    pub arity: Option<(usize, usize)>,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        id: "simplex-shuffles",
        statement: "Δ_m × Δ_n has binomial(m+n, m) shuffles, for m + n up to the bound",
        vertices: Some((8, 12)),
        arity: None,
    },
    SuiteInfo {
        id: "simplex-meets",
        statement: "every nonempty family of (m,n)-shuffles meets in a linear order containing (0,0)",
        vertices: Some((5, 6)),
        arity: None,
    },
    SuiteInfo {
        id: "shuffle-props",
        statement: "each shuffle subobject of S ⊗ T is representable and full, and all share the root and leaves",
        vertices: Some((3, 3)),
        arity: Some((3, 3)),
    },
    SuiteInfo {
        id: "prod-trees",
        statement: "every nonempty intersection of shuffle subobjects is representable, an iterated inner face of each, and contractible",
        vertices: Some((3, 3)),
        arity: Some((3, 3)),
    },
    SuiteInfo {
        id: "adjunction",
        statement: "closure is left adjoint to the inclusion of closed trees and is a functor",
        vertices: Some((4, 4)),
        arity: Some((3, 3)),
    },
    SuiteInfo {
        id: "decalage-naturality",
        statement: "D(f)∘u_S = u_T∘f and D(f)∘ā_S = ā_T for maps of closed trees",
        vertices: Some((4, 5)),
        arity: Some((3, 4)),
    },
    SuiteInfo {
        id: "decalage-counterexample",
        statement: "chopping the root vertex of a[v](b, c[w](d,e,f)) has no root-preserving extension to décalages",
        vertices: None,
        arity: None,
    },
    SuiteInfo {
        id: "factorisation",
        statement: "every morphism is a face after an isomorphism after a degeneracy",
        vertices: Some((4, 4)),
        arity: Some((3, 3)),
    },
    SuiteInfo {
        id: "fully-faithful",
        statement: "maps L_m → L_n are the monotone maps [m] → [n]",
        vertices: Some((4, 8)),
        arity: None,
    },
    SuiteInfo {
        id: "segal-core",
        statement: "Segal cores are contractible and glued from corollas along single edges",
        vertices: Some((4, 5)),
        arity: Some((3, 3)),
    },
    SuiteInfo {
        id: "eta-times-corolla",
        statement: "η × C_2 has three components and is not aspherical",
        vertices: None,
        arity: None,
    },
    SuiteInfo {
        id: "homotopy-self-check",
        statement: "collapsed complexes have trivial homology and Euler characteristics agree",
        vertices: Some((3, 4)),
        arity: Some((2, 3)),
    },
];

pub fn suite(id: &str) -> Result<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.id == id).ok_or_else(|| {
        Error::UnknownSuite { given: id.to_string(), known: SUITES.iter().map(|s| s.id).collect::<Vec<_>>().join(", ") }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_vertices: Option<usize>,
    pub max_arity: Option<usize>,
    pub seed: u64,
    pub restarts: usize,
    pub max_degree: Option<usize>,
    /// Record the elapsed time in the report, which then varies between
    /// runs.
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        let a = AsphericityOptions::default();
        Options { max_vertices: None, max_arity: None, seed: a.seed, restarts: a.restarts, max_degree: None, timing: false }
    }
}

impl Options {
    pub fn asphericity(&self) -> AsphericityOptions {
        AsphericityOptions {
            restarts: self.restarts,
            seed: self.seed,
            max_degree: self.max_degree,
            ..AsphericityOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub statement: String,
    pub corpus: BTreeMap<String, Value>,
    pub instances: u64,
    pub failed: u64,
    pub pass: bool,
    /// The first failures by instance name.
    pub failures: Vec<Failure>,
    pub facts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

const LISTED_FAILURES: usize = 20;

/// Accumulates instance results for one suite.
#[derive(Default)]
pub struct Tally {
    instances: u64,
    failed: u64,
    failures: Vec<Failure>,
    corpus: BTreeMap<String, Value>,
    facts: BTreeMap<String, Value>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, instance: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failed += 1;
            self.failures.push(Failure { instance: instance(), detail: detail() });
        }
    }

    /// Counts `n` passing instances at once.
    fn passed(&mut self, n: u64) {
        self.instances += n;
    }

    fn corpus(&mut self, key: &str, v: impl Into<Value>) {
        self.corpus.insert(key.into(), v.into());
    }

    fn fact(&mut self, key: &str, v: impl Into<Value>) {
        self.facts.insert(key.into(), v.into());
    }

    fn bump(&mut self, key: &str) {
        let n = self.facts.get(key).and_then(Value::as_u64).unwrap_or(0);
        self.facts.insert(key.into(), (n + 1).into());
    }

    fn finish(mut self, info: &SuiteInfo, elapsed_ms: Option<u64>) -> VerificationReport {
        self.failures.sort_by(|a, b| (&a.instance, &a.detail).cmp(&(&b.instance, &b.detail)));
        self.failures.truncate(LISTED_FAILURES);
        VerificationReport {
            suite: info.id.into(),
            statement: info.statement.into(),
            corpus: self.corpus,
            instances: self.instances,
            failed: self.failed,
            pass: self.failed == 0 && self.instances > 0,
            failures: self.failures,
            facts: self.facts,
            elapsed_ms,
        }
    }
}

/// Bounds after defaults and limits are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub vertices: usize,
    pub arity: usize,
}

fn resolve(info: &SuiteInfo, opts: &Options) -> Result<Bounds> {
    let pick = |given: Option<usize>, range: Option<(usize, usize)>, what: &'static str| -> Result<usize> {
        match (given, range) {
            (Some(g), Some((_, limit))) if g > limit => {
                Err(Error::BoundsTooLarge { suite: info.id.into(), what, given: g, limit })
            }
            (Some(g), Some(_)) => Ok(g),
            (None, Some((d, _))) => Ok(d),
            (_, None) => Ok(0),
        }
    };
    Ok(Bounds {
        vertices: pick(opts.max_vertices, info.vertices, "max-vertices")?,
        arity: pick(opts.max_arity, info.arity, "max-arity")?,
    })
}

pub fn run_verify(id: &str, opts: &Options) -> Result<VerificationReport> {
    let info = suite(id)?;
    let b = resolve(info, opts)?;
    let a = opts.asphericity();
    let start = Instant::now();
    let mut t = Tally::default();
    match info.id {
        "simplex-shuffles" => simplex_shuffle_counts(b, &mut t),
        "simplex-meets" => simplex_meets(b, &mut t)?,
        "shuffle-props" => shuffle_props(b, &mut t)?,
        "prod-trees" => prod_trees(b, &a, &mut t)?,
        "adjunction" => adjunction(b, &mut t)?,
        "decalage-naturality" => decalage_naturality(b, &mut t)?,
        "decalage-counterexample" => decalage_counterexample(&mut t)?,
        "factorisation" => factorisation(b, &mut t),
        "fully-faithful" => fully_faithful(b, &mut t),
        "segal-core" => segal_cores(b, &a, &mut t)?,
        "eta-times-corolla" => eta_times_corolla(&a, &mut t)?,
        "homotopy-self-check" => homotopy_self_check(b, &a, &mut t)?,
        _ => unreachable!("every listed suite is dispatched"),
    }
    let elapsed = opts.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(t.finish(info, elapsed))
}

pub fn corpus_trees(b: Bounds) -> Vec<Arc<Tree>> {
    enumerate_trees(b.vertices, b.arity).into_iter().map(Arc::new).collect()
}

fn tree_corpus(b: Bounds, trees: usize, t: &mut Tally) {
    t.corpus("max_vertices", b.vertices);
    t.corpus("max_arity", b.arity);
    t.corpus("trees", trees);
}

fn simplex_shuffle_counts(b: Bounds, t: &mut Tally) {
    t.corpus("max_m_plus_n", b.vertices);
    for total in 0..=b.vertices {
        for m in 0..=total {
            let n = total - m;
            let sh = simplex_shuffles(m, n);
            let distinct: BTreeSet<_> = sh.iter().collect();
            let paths = sh.iter().all(|s| s.steps().len() == m + n && s.steps().iter().filter(|&&x| x).count() == m);
            let expected = binomial(m + n, m);
            t.check(
                sh.len() == expected && distinct.len() == sh.len() && paths,
                || format!("({m},{n})"),
                || format!("{} shuffles, {} distinct, expected {expected}", sh.len(), distinct.len()),
            );
        }
    }
}

fn simplex_meets(b: Bounds, t: &mut Tally) -> Result<()> {
    t.corpus("max_m_plus_n", b.vertices);
    let mut families = 0u64;
    for total in 0..=b.vertices {
        for m in 0..=total {
            let n = total - m;
            let sh = simplex_shuffles(m, n);
            for mask in 1u64..(1 << sh.len()) {
                let chosen: Vec<_> = (0..sh.len()).filter(|&j| mask & (1 << j) != 0).map(|j| sh[j].clone()).collect();
                let r = simplex_shuffle_intersection(&chosen)?;
                families += 1;
                t.check(
                    r.nonempty && r.contains_origin && r.linear,
                    || format!("({m},{n}) family {mask:#b}"),
                    || format!("{:?}", r),
                );
            }
        }
    }
    t.fact("families", families);
    Ok(())
}

/// Unordered pairs of corpus trees.
fn tree_pairs(trees: &[Arc<Tree>]) -> impl Iterator<Item = (&Arc<Tree>, &Arc<Tree>)> {
    trees.iter().enumerate().flat_map(move |(i, s)| trees[i..].iter().map(move |t| (s, t)))
}

/// Shuffle trees up to this many vertices are also checked by counting
/// elements shape by shape.
const COUNTING_VERTICES: usize = 3;

fn shuffle_props(b: Bounds, t: &mut Tally) -> Result<()> {
    let trees = corpus_trees(b);
    tree_corpus(b, trees.len(), t);
    let (mut pairs, mut counted) = (0u64, 0u64);
    for (s, u) in tree_pairs(&trees) {
        pairs += 1;
        let a = Ambient::tensor(s.clone(), u.clone());
        let AmbientKind::Tensor(ta) = a.kind() else { unreachable!("a tensor ambient") };
        let full = SubPresheaf::full(&a);
        let root = ta.point(s.root(), u.root());
        let mut leaves: Vec<Point> = s.leaves().iter().flat_map(|&x| u.leaves().into_iter().map(move |y| (x, y))).map(|(x, y)| ta.point(x, y)).collect();
        leaves.sort_unstable();
        for (k, sigma) in ta.shuffles().iter().enumerate() {
            let f = shuffle_subobject(&a, sigma)?;
            let rep = is_representable(&f);
            let mut problems = Vec::new();
            if rep.is_none() {
                problems.push("not representable");
            }
            if sigma.tree().vertex_count() <= COUNTING_VERTICES {
                counted += 1;
                let agree = match (&rep, representable_by_counting(&f)) {
                    (Some((x, _)), Some((y, _))) => is_isomorphic(x, &y),
                    (None, None) => true,
                    _ => false,
                };
                if !agree {
                    problems.push("counting disagrees");
                }
            }
            if !is_full(&f, &full)? {
                problems.push("not full");
            }
            if sigma.cell().root() != root {
                problems.push("root differs");
            }
            if sigma.cell().leaves() != leaves {
                problems.push("leaves differ");
            }
            t.check(problems.is_empty(), || format!("{s} ⊗ {u} shuffle {k}"), || problems.join(", "));
        }
    }
    t.fact("pairs", pairs);
    t.fact("checked_by_counting", counted);
    Ok(())
}

/// Shape of a cell up to isomorphism.
fn cell_shape_code(c: &Cell) -> String {
    canonical_code(&c.to_tree(|p| p.to_string(), |p| format!("v{p}"))).as_str().to_string()
}

/// Pairs with at most this many shuffles also have every subfamily
/// intersected directly.
const EXPLICIT_FAMILIES: usize = 8;

/// The gluing of the whole tensor product is checked when the two trees have
/// at most this many vertices between them.
const GLUING_VERTICES: usize = 3;

fn prod_trees(b: Bounds, opts: &AsphericityOptions, t: &mut Tally) -> Result<()> {
    let trees = corpus_trees(b);
    tree_corpus(b, trees.len(), t);
    let mut verdicts: HashMap<String, AsphericityVerdict> = HashMap::new();
    let (mut pairs, mut classes, mut explicit, mut cones) = (0u64, 0u64, 0u64, 0u64);
    for (s, u) in tree_pairs(&trees) {
        pairs += 1;
        let a = Ambient::tensor(s.clone(), u.clone());
        let AmbientKind::Tensor(ta) = a.kind() else { unreachable!("a tensor ambient") };
        let cells: Vec<Cell> = ta.shuffles().iter().map(|sh| sh.cell().clone()).collect();
        let parts: Vec<SubPresheaf> =
            ta.shuffles().iter().map(|sh| shuffle_subobject(&a, sh)).collect::<omega_core::Result<_>>()?;
        let mut meets: BTreeMap<Vec<Point>, SubPresheaf> = BTreeMap::new();
        for class in intersection_classes(&cells)? {
            classes += 1;
            let chosen: Vec<SubPresheaf> = class.containing.iter().map(|&j| parts[j].clone()).collect();
            let meet = intersection(&chosen)?;
            let mut problems = Vec::new();
            if meet.points().into_iter().collect::<Vec<_>>() != class.points {
                problems.push("points differ from the class".to_string());
            }
            match (meet.generators(), is_representable(&meet)) {
                ([g], Some(_)) => {
                    if let Some(j) = class.containing.iter().find(|&&j| inner_face_path(&cells[j], g).is_none()) {
                        problems.push(format!("not an inner face of shuffle {j}"));
                    }
                    let verdict = if g.edge_count() > opts.cone_edges {
                        cones += 1;
                        asphericity(&meet, opts)?
                    } else {
                        let key = cell_shape_code(g);
                        match verdicts.get(&key) {
                            Some(v) => v.clone(),
                            None => {
                                let v = asphericity(&meet, opts)?;
                                verdicts.insert(key, v.clone());
                                v
                            }
                        }
                    };
                    if !verdict.is_collapsed() {
                        problems.push(format!("verdict {}", verdict.label()));
                    }
                    if let Some(h) = verdict.homology() {
                        if !h.is_reduced_trivial() || !h.euler_consistent() {
                            problems.push("homology of a collapsed complex".into());
                        }
                    }
                }
                _ => problems.push(format!("{} maximal elements", meet.generators().len())),
            }
            t.check(
                problems.is_empty(),
                || format!("{s} ⊗ {u} meet of {:?}", class.containing),
                || problems.join(", "),
            );
            meets.insert(class.points, meet);
        }
        if parts.len() <= EXPLICIT_FAMILIES {
            for mask in 1u32..(1 << parts.len()) {
                explicit += 1;
                let chosen: Vec<SubPresheaf> =
                    (0..parts.len()).filter(|&j| mask & (1 << j) != 0).map(|j| parts[j].clone()).collect();
                let meet = intersection(&chosen)?;
                let pts: Vec<Point> = meet.points().into_iter().collect();
                let same = meets.get(&pts).is_some_and(|m| m.generators() == meet.generators());
                t.check(same, || format!("{s} ⊗ {u} family {mask:#b}"), || "differs from its class".into());
            }
            if s.vertex_count() + u.vertex_count() > GLUING_VERTICES {
                t.bump("gluing_skipped");
                continue;
            }
            match union_respects_gluing(&parts, opts) {
                Ok(r) => t.check(
                    r == Some(true),
                    || format!("{s} ⊗ {u} gluing"),
                    || format!("gluing harness gave {r:?}"),
                ),
                Err(omega_core::Error::TooLarge { .. }) => t.bump("gluing_too_large"),
                Err(e) => return Err(e.into()),
            }
        }
    }
    t.fact("pairs", pairs);
    t.fact("intersection_classes", classes);
    t.fact("explicit_families", explicit);
    t.fact("cone_verdicts", cones);
    t.fact("materialized_shapes", verdicts.len());
    Ok(())
}

/// Edge maps packed eight bits to an edge.
fn pack(map: impl IntoIterator<Item = EdgeId>) -> u128 {
    map.into_iter().enumerate().fold(0u128, |acc, (i, e)| acc | ((e as u128) << (8 * i)))
}

fn adjunction(b: Bounds, t: &mut Tally) -> Result<()> {
    let trees = corpus_trees(b);
    tree_corpus(b, trees.len(), t);
    if trees.iter().any(|x| x.edge_count() > 16) {
        return Err(Error::Input("edge maps of more than 16 edges are not packed".into()));
    }
    let closed: Vec<&Arc<Tree>> = trees.iter().filter(|x| x.is_closed()).collect();
    let units: Vec<Morphism> = trees.iter().map(closure_unit).collect();
    for (s, unit) in trees.iter().zip(&units) {
        let cs = unit.target().clone();
        let valid = Morphism::new(s.clone(), cs.clone(), unit.edge_map().to_vec()).is_ok();
        let first = cl_morphism(unit).is_identity();
        let fixed = closure(&cs).tree == *cs && closure_unit(&cs).is_identity();
        t.check(valid && first && fixed, || format!("triangles at {s}"), || {
            format!("unit valid {valid}, cl(η) = id {first}, closed fixed {fixed}")
        });
        // Precomposition with the unit is a bijection onto maps from S.
        for y in closed.iter().copied().chain([&cs]) {
            let from_closure = hom(&cs, y);
            let induced: BTreeSet<Vec<EdgeId>> = from_closure
                .iter()
                .map(|g| compose(g, unit).map(|h| h.edge_map().to_vec()))
                .collect::<omega_core::Result<_>>()?;
            let direct: BTreeSet<Vec<EdgeId>> = hom(s, y).iter().map(|f| f.edge_map().to_vec()).collect();
            t.check(
                induced.len() == from_closure.len() && induced == direct,
                || format!("universal property {s} → {y}"),
                || format!("{} maps from the closure, {} induced, {} direct", from_closure.len(), induced.len(), direct.len()),
            );
        }
    }

    // cl on every morphism, then on every composable pair.
    let n = trees.len();
    let mut maps: Vec<Vec<Vec<Vec<EdgeId>>>> = vec![vec![Vec::new(); n]; n];
    let mut cl_maps: Vec<Vec<Vec<Vec<EdgeId>>>> = vec![vec![Vec::new(); n]; n];
    let mut morphisms = 0u64;
    for a in 0..n {
        for c in 0..n {
            for f in hom(&trees[a], &trees[c]) {
                morphisms += 1;
                let cl = cl_morphism(&f);
                let valid = Morphism::new(cl.source().clone(), cl.target().clone(), cl.edge_map().to_vec()).is_ok()
                    && *cl.source() == *units[a].target()
                    && *cl.target() == *units[c].target();
                let square = compose(&cl, &units[a])? == compose(&units[c], &f)?;
                t.check(valid && square, || format!("cl of {:?} : {} → {}", f.edge_map(), trees[a], trees[c]), || {
                    format!("valid {valid}, commutes with units {square}")
                });
                maps[a][c].push(f.edge_map().to_vec());
                cl_maps[a][c].push(cl.edge_map().to_vec());
            }
        }
        let id = cl_morphism(&Morphism::identity(trees[a].clone()));
        t.check(id.is_identity(), || format!("cl(id) at {}", trees[a]), || "not an identity".into());
    }
    let mut pairs = 0u64;
    for a in 0..n {
        for c in 0..n {
            if maps[a][c].is_empty() {
                continue;
            }
            let index: HashMap<u128, usize> = maps[a][c].iter().enumerate().map(|(i, m)| (pack(m.iter().copied()), i)).collect();
            for bb in 0..n {
                for (f, clf) in maps[a][bb].iter().zip(&cl_maps[a][bb]) {
                    for (g, clg) in maps[bb][c].iter().zip(&cl_maps[bb][c]) {
                        pairs += 1;
                        let gf = pack(f.iter().map(|&e| g[e]));
                        let composite = pack(clf.iter().map(|&e| clg[e]));
                        let ok = index.get(&gf).is_some_and(|&i| pack(cl_maps[a][c][i].iter().copied()) == composite);
                        if ok {
                            t.passed(1);
                        } else {
                            t.check(false, || format!("cl on {f:?} then {g:?} via {}", trees[bb]), || {
                                "cl(g∘f) ≠ cl(g)∘cl(f)".into()
                            });
                        }
                    }
                }
            }
        }
    }
    t.fact("closed_trees", closed.len());
    t.fact("morphisms", morphisms);
    t.fact("composable_pairs", pairs);
    Ok(())
}

fn decalage_naturality(b: Bounds, t: &mut Tally) -> Result<()> {
    let closed: Vec<Arc<Tree>> = corpus_trees(b).into_iter().filter(|x| x.is_closed()).collect();
    tree_corpus(b, closed.len(), t);
    t.corpus("closed_only", true);
    let mut morphisms = 0u64;
    let mut all = Vec::new();
    for s in &closed {
        for u in &closed {
            for f in hom(s, u) {
                morphisms += 1;
                let df = decalage_morphism(&f)?;
                let units = compose(&df, &decalage_inclusion(s)?)? == compose(&decalage_inclusion(u)?, &f)?;
                let roots = compose(&df, &decalage_closed_root(s)?)? == decalage_closed_root(u)?;
                let unique = decalage_extensions(&f) == [df.clone()];
                t.check(
                    df.is_root_preserving() && units && roots && unique,
                    || format!("{:?} : {s} → {u}", f.edge_map()),
                    || format!("root preserving {}, units {units}, roots {roots}, unique {unique}", df.is_root_preserving()),
                );
                all.push((f, df));
            }
        }
        let id = decalage_morphism(&Morphism::identity(s.clone()))?;
        t.check(id.is_identity(), || format!("D(id) at {s}"), || "not an identity".into());
    }
    for (f, df) in &all {
        for (g, dg) in &all {
            if *f.target() == *g.source() {
                let lhs = decalage_morphism(&compose(g, f)?)?;
                t.check(lhs == compose(dg, df)?, || format!("D on {:?} then {:?}", f.edge_map(), g.edge_map()), || {
                    "D(g∘f) ≠ D(g)∘D(f)".into()
                });
            }
        }
    }
    t.fact("morphisms", morphisms);
    Ok(())
}

fn decalage_counterexample(t: &mut Tally) -> Result<()> {
    let target: Arc<Tree> = Arc::new(COUNTEREXAMPLE_TARGET.parse()?);
    t.corpus("target", COUNTEREXAMPLE_TARGET);
    let root_vertex = target.above(target.root()).expect("the root carries a vertex");
    let face = elementary_faces(&target).into_iter().find(|f| f.kind == FaceKind::Outer(root_vertex));
    let Some(face) = face else {
        t.check(false, || "outer face at the root".into(), || "the root vertex is not outer".into());
        return Ok(());
    };
    let extensions = decalage_extensions(&face.map);
    t.fact("source", face.map.source().to_string());
    t.fact("extensions", extensions.len());
    t.check(
        extensions.is_empty(),
        || format!("{} → {}", face.map.source(), target),
        || format!("{} extensions found", extensions.len()),
    );
    Ok(())
}

fn factorisation(b: Bounds, t: &mut Tally) {
    let trees = corpus_trees(b);
    tree_corpus(b, trees.len(), t);
    for s in &trees {
        for u in &trees {
            for f in hom(s, u) {
                let fac = factorize(&f);
                let recomposes = fac.recompose() == f;
                let steps = fac
                    .degeneracy_steps
                    .iter()
                    .try_fold(Morphism::identity(s.clone()), |acc, st| compose(st, &acc))
                    .is_ok_and(|d| d == fac.degeneracy);
                let faces = fac
                    .face_steps
                    .iter()
                    .try_fold(Morphism::identity(u.clone()), |acc, st| compose(&acc, &st.map))
                    .is_ok_and(|d| d == fac.face);
                let kinds = fac.iso.is_isomorphism()
                    && fac.face.is_injective()
                    && fac.degeneracy_steps.iter().all(|st| st.source().vertex_count() == st.target().vertex_count() + 1);
                t.check(recomposes && steps && faces && kinds, || format!("{:?} : {s} → {u}", f.edge_map()), || {
                    format!("recomposes {recomposes}, degeneracy steps {steps}, face steps {faces}, factor kinds {kinds}")
                });
            }
        }
    }
}

/// Monotone maps `[m] → [n]` as value lists.
fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..=m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let from = v.last().copied().unwrap_or(0);
                (from..=n).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn fully_faithful(b: Bounds, t: &mut Tally) {
    t.corpus("max_m_and_n", b.vertices);
    for m in 0..=b.vertices {
        for n in 0..=b.vertices {
            let (lm, ln) = (Tree::linear(m), Tree::linear(n));
            // Edge `i` of a linear tree is the object `i` of the ordinal.
            let mut maps = BTreeSet::new();
            let mut count = 0;
            for_each_hom(&lm, &ln, |e| {
                count += 1;
                let values: Vec<usize> =
                    (0..=m).map(|i| ln.edge_name(e[lm.edge_id(&i.to_string()).expect("named")]).parse().expect("numeric")).collect();
                maps.insert(values);
            });
            let expected: BTreeSet<Vec<usize>> = monotone_maps(m, n).into_iter().collect();
            let formula = binomial(m + n + 1, m + 1);
            t.check(
                count == maps.len() && maps == expected && count == formula,
                || format!("L_{m} → L_{n}"),
                || format!("{count} maps, {} monotone, formula {formula}", expected.len()),
            );
        }
    }
}

fn segal_cores(b: Bounds, opts: &AsphericityOptions, t: &mut Tally) -> Result<()> {
    let mut trees = corpus_trees(b);
    let example: Arc<Tree> = Arc::new(EXAMPLE_TREE.parse()?);
    if !trees.iter().any(|x| is_isomorphic(x, &example)) {
        trees.push(example);
    }
    tree_corpus(b, trees.len(), t);
    for x in &trees {
        let r = segal_core_asphericity(x, opts)?;
        let core = segal_core(x);
        let glued = if x.vertex_count() == 0 {
            core.generators().len() == 1 && core.generators()[0].edge_count() == 1
        } else {
            let a = core.ambient().clone();
            let parts = corolla_cells(x)
                .into_iter()
                .map(|c| SubPresheaf::generated(&a, vec![c]))
                .collect::<omega_core::Result<Vec<_>>>()?;
            union(&parts)? == core
        };
        let homology_ok = r.verdict.homology().is_none_or(|h| h.is_reduced_trivial() && h.euler_consistent());
        t.check(
            r.verdict.is_collapsed() && r.pairwise_single_eta && r.glued_along_eta && glued && homology_ok,
            || x.to_string(),
            || {
                format!(
                    "verdict {}, pairwise single edges {}, glued along edges {}, union of corollas {glued}",
                    r.verdict.label(),
                    r.pairwise_single_eta,
                    r.glued_along_eta
                )
            },
        );
        if let AsphericityVerdict::CollapsedToPoint { certificate: CollapseCertificate::Cone { .. }, .. } = r.verdict {
            t.bump("cone_verdicts");
        }
    }
    Ok(())
}

fn rep(t: Tree) -> SubPresheaf {
    SubPresheaf::full(&Ambient::representable(Arc::new(t)))
}

fn eta_times_corolla(opts: &AsphericityOptions, t: &mut Tally) -> Result<()> {
    let p = product(rep(Tree::eta()), rep(Tree::corolla(2)));
    let components = connected_components(&p);
    let category = category_of_elements(&p, 2);
    let verdict = asphericity_of_presheaf(&p, opts)?;
    t.fact("components", components);
    t.fact("element_category_components", category.connected_components());
    t.fact("nondegenerate_elements", FacePoset::of_presheaf(&p).len());
    t.fact("verdict", verdict.label());
    t.check(components == 3, || "components".into(), || format!("{components}"));
    t.check(category.check_axioms().is_ok(), || "category axioms".into(), || "violated".into());
    t.check(
        category.connected_components() == 3,
        || "components of the truncated element category".into(),
        || format!("{}", category.connected_components()),
    );
    t.check(
        verdict == AsphericityVerdict::NotAspherical(NonAsphericity::Disconnected { components: 3 }),
        || "verdict".into(),
        || format!("{verdict:?}"),
    );
    Ok(())
}

/// Order complexes beyond this size are skipped by the self-check.
const SELF_CHECK_SIMPLICES: usize = 50_000;

fn homotopy_self_check(b: Bounds, opts: &AsphericityOptions, t: &mut Tally) -> Result<()> {
    let trees = corpus_trees(b);
    tree_corpus(b, trees.len(), t);
    let mut objects: Vec<(String, FacePoset)> = Vec::new();
    for x in &trees {
        objects.push((format!("representable {x}"), FacePoset::of_subpresheaf(&rep((**x).clone()))));
        objects.push((format!("boundary {x}"), FacePoset::of_subpresheaf(&boundary(x))));
        objects.push((format!("segal core {x}"), FacePoset::of_subpresheaf(&segal_core(x))));
        for e in x.inner_edges() {
            let horn = inner_horn(x, e)?;
            objects.push((format!("horn {x} at {}", x.edge_name(e)), FacePoset::of_subpresheaf(&horn)));
        }
    }
    for m in 0..=4 {
        for n in 0..=4 - m {
            let p = product(rep(Tree::linear(m)), rep(Tree::linear(n)));
            objects.push((format!("L_{m} × L_{n}"), FacePoset::of_presheaf(&p)));
        }
    }
    let small = corpus_trees(Bounds { vertices: 2, arity: 2 });
    for (s, u) in tree_pairs(&small) {
        objects.push((format!("{s} ⊗ {u}"), FacePoset::of_subpresheaf(&SubPresheaf::full(&Ambient::tensor(s.clone(), u.clone())))));
    }
    objects.push(("η × C_2".into(), FacePoset::of_presheaf(&product(rep(Tree::eta()), rep(Tree::corolla(2))))));
    objects.push(("C_2 modulo its swap".into(), FacePoset::of_presheaf(&GeneratedPresheaf::corolla_mod_swap())));

    let (mut built, mut skipped) = (0u64, 0u64);
    let mut labels: BTreeMap<&'static str, u64> = BTreeMap::new();
    for (name, poset) in &objects {
        let c = match order_complex(poset, SELF_CHECK_SIMPLICES) {
            Ok(c) => c,
            Err(omega_core::Error::TooLarge { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        built += 1;
        let verdict = asphericity_of_complex(&c, opts)?;
        *labels.entry(verdict.label()).or_default() += 1;
        let chain = c.chain_complex();
        let mut problems = Vec::new();
        if !poset.is_partial_order() {
            problems.push("not a partial order".to_string());
        }
        if !c.is_closed() || !chain.squares_to_zero() {
            problems.push("not a complex".into());
        }
        if c.euler_characteristic() != chain.euler_characteristic() {
            problems.push("simplex and chain Euler characteristics differ".into());
        }
        match verdict.homology() {
            Some(h) if h.complete && h.betti_euler() != c.euler_characteristic() => {
                problems.push("homology Euler characteristic differs".into())
            }
            Some(h) if verdict.is_collapsed() && !h.is_reduced_trivial() => {
                problems.push("collapsed but homology is not trivial".into())
            }
            None if !matches!(verdict, AsphericityVerdict::NotAspherical(NonAsphericity::Disconnected { .. })) => {
                problems.push("no homology for a built complex".into())
            }
            _ => {}
        }
        if let AsphericityVerdict::CollapsedToPoint { certificate: CollapseCertificate::Sequence(seq), .. } = &verdict {
            if !verify_collapse(&c, seq) {
                problems.push("collapse sequence does not replay".into());
            }
        }
        t.check(problems.is_empty(), || name.clone(), || problems.join(", "));
    }
    t.fact("complexes", built);
    t.fact("too_large", skipped);
    t.fact("verdicts", serde_json::to_value(&labels).expect("counts serialise"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suites_and_bounds_are_refused() {
        assert!(matches!(run_verify("no-such-suite", &Options::default()), Err(Error::UnknownSuite { .. })));
        let opts = Options { max_vertices: Some(9), ..Options::default() };
        assert!(matches!(run_verify("prod-trees", &opts), Err(Error::BoundsTooLarge { .. })));
    }

    #[test]
    fn monotone_maps_are_counted_by_binomials() {
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(monotone_maps(m, n).len(), binomial(m + n + 1, m + 1));
            }
        }
    }

    #[test]
    fn small_suites_pass() {
        let small = Options { max_vertices: Some(2), max_arity: Some(2), ..Options::default() };
        for id in ["simplex-shuffles", "simplex-meets", "adjunction", "factorisation", "fully-faithful", "segal-core"] {
            let r = run_verify(id, &small).unwrap();
            assert!(r.pass, "{id}: {:?}", r.failures);
        }
        let r = run_verify("decalage-counterexample", &Options::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.facts["source"], "c[w](d,e,f)");
    }

    #[test]
    fn a_failure_is_listed() {
        let mut t = Tally::default();
        t.check(true, || "a".into(), String::new);
        t.check(false, || "b".into(), || "broken".into());
        let r = t.finish(&SUITES[0], None);
        assert!(!r.pass);
        assert_eq!((r.instances, r.failed), (2, 1));
        assert_eq!(r.failures, [Failure { instance: "b".into(), detail: "broken".into() }]);
    }
}
