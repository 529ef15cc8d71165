//! The `omega` command line.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use omega_core::dendro::{sieves, SubPresheaf};
use omega_core::homotopy::AsphericityOptions;
use omega_core::omega::{
    cl_morphism, decalage_morphism, elementary_degeneracies, elementary_faces, factorize, hom, FaceKind, Morphism,
};
use omega_core::tensor::{shuffles, simplex_shuffles};
use omega_core::tree::{closure, decalage, Tree};
use serde_json::{json, Value};

use crate::format::{
    emit_tree, poset_dot, shuffle_json, shuffles_dot, subpresheaf_json, verdict_json, Format, MorphismJson,
};
use crate::input::{edge_of, read_morphism, read_object, read_tree, Object};
use crate::verify::{run_verify, Options, SUITES};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "omega", version, about = "Finite combinatorics of the tree category and dendroidal sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, conflicts_with = "dot")]
    pub json: bool,
    #[arg(long)]
    pub dot: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every morphism S → T.
    Hom {
        s: String,
        t: String,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// The elementary faces of T.
    Faces {
        t: String,
        #[arg(long)]
        json: bool,
    },
    /// The elementary degeneracies onto T.
    Degeneracies {
        t: String,
        #[arg(long)]
        json: bool,
    },
    /// Degeneracy, isomorphism and face parts of a morphism document.
    Factorize {
        morphism: String,
        #[arg(long)]
        json: bool,
    },
    /// The closure of T, or of a morphism document with --morphism.
    Closure {
        t: String,
        #[arg(long)]
        morphism: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The décalage of a closed tree, or of a morphism document with --morphism.
    Decalage {
        t: String,
        #[arg(long)]
        morphism: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The boundary of the representable on T.
    Boundary {
        t: String,
        #[command(flatten)]
        out: Output,
    },
    /// The inner horn of T at an inner edge.
    Horn {
        t: String,
        edge: String,
        #[command(flatten)]
        out: Output,
    },
    /// The union of the corollas of T.
    SegalCore {
        t: String,
        #[command(flatten)]
        out: Output,
    },
    /// Every subobject of the representable on T.
    Sieves {
        t: String,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// The shuffles of S ⊗ T.
    Shuffles {
        s: String,
        t: String,
        #[command(flatten)]
        out: Output,
    },
    /// The (m,n)-shuffles as lattice paths.
    SimplexShuffles {
        m: usize,
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Asphericity verdict of an object.
    ///
    /// Objects: representable T | boundary T | horn T EDGE | segal-core T |
    /// tensor S T | shuffle S T INDEX | product S T | corolla-mod-swap.
    Aspherical {
        #[arg(required = true, num_args = 1..)]
        object: Vec<String>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// List the collapse sequence.
        #[arg(long)]
        certificate: bool,
        /// Print the face poset as DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Run a verification suite, or `all`, and print the JSON report.
    Verify {
        suite: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long)]
        max_arity: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Include the elapsed time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Print `tree T` or an object in the given format.
    Emit {
        #[arg(required = true, num_args = 1..)]
        object: Vec<String>,
        #[arg(long, value_enum, default_value = "term")]
        format: Format,
    },
}

/// Output text and exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, code: 0 })
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("documents serialise") + "\n"
}

fn arc(arg: &str) -> Result<Arc<Tree>> {
    Ok(Arc::new(read_tree(arg)?))
}

fn edge_map_line(f: &Morphism) -> String {
    let (s, t) = (f.source(), f.target());
    (0..s.edge_count()).map(|e| format!("{}->{}", s.edge_name(e), t.edge_name(f.apply(e)))).collect::<Vec<_>>().join(" ")
}

fn face_kind(t: &Tree, k: FaceKind) -> String {
    match k {
        FaceKind::Inner(e) => format!("inner {}", t.edge_name(e)),
        FaceKind::Outer(v) => format!("outer {}", t.vertex(v).name()),
        FaceKind::Corolla(e) => format!("edge {}", t.edge_name(e)),
    }
}

fn subobject(x: &SubPresheaf, out: &Output) -> String {
    if out.json {
        pretty(&subpresheaf_json(x))
    } else if out.dot {
        poset_dot(&Object::Sub(x.clone()).face_poset())
    } else {
        x.generators().iter().map(|g| format!("{}\n", x.ambient().cell_tree(g))).collect()
    }
}

fn tree_out(t: &Tree, out: &Output) -> String {
    emit_tree(t, if out.json { Format::Json } else if out.dot { Format::Dot } else { Format::Term })
}

fn morphism_out(f: &Morphism, json: bool) -> String {
    if json {
        pretty(&MorphismJson::of(f))
    } else {
        format!("{} -> {}: {}\n", f.source(), f.target(), edge_map_line(f))
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Hom { s, t, count, json } => {
            let all = hom(&arc(&s)?, &arc(&t)?);
            if count {
                ok(format!("{}\n", all.len()))
            } else if json {
                ok(pretty(&all.iter().map(MorphismJson::of).collect::<Vec<_>>()))
            } else {
                ok(all.iter().map(|f| edge_map_line(f) + "\n").collect())
            }
        }
        Command::Faces { t, json } => {
            let t = arc(&t)?;
            let faces = elementary_faces(&t);
            if json {
                let docs: Vec<Value> = faces
                    .iter()
                    .map(|f| json!({ "kind": face_kind(&t, f.kind), "morphism": MorphismJson::of(&f.map) }))
                    .collect();
                ok(pretty(&docs))
            } else {
                ok(faces.iter().map(|f| format!("{}: {}\n", face_kind(&t, f.kind), f.map.source())).collect())
            }
        }
        Command::Degeneracies { t, json } => {
            let t = arc(&t)?;
            let all = elementary_degeneracies(&t);
            if json {
                ok(pretty(&all.iter().map(MorphismJson::of).collect::<Vec<_>>()))
            } else {
                ok(all.iter().map(|d| format!("{}: {}\n", d.source(), edge_map_line(d))).collect())
            }
        }
        Command::Factorize { morphism, json } => {
            let f = read_morphism(&morphism)?;
            let fac = factorize(&f);
            let steps: Vec<String> =
                fac.face_steps.iter().map(|st| face_kind(st.map.target(), st.kind)).collect();
            if json {
                ok(pretty(&json!({
                    "degeneracy": MorphismJson::of(&fac.degeneracy),
                    "iso": MorphismJson::of(&fac.iso),
                    "face": MorphismJson::of(&fac.face),
                    "face_steps": steps,
                    "degeneracy_steps": fac.degeneracy_steps.len(),
                    "recomposes": fac.recompose() == f,
                })))
            } else {
                let mut s = String::new();
                let _ = write!(s, "degeneracy {}", morphism_out(&fac.degeneracy, false));
                let _ = write!(s, "iso {}", morphism_out(&fac.iso, false));
                let _ = write!(s, "face {}", morphism_out(&fac.face, false));
                let _ = writeln!(s, "face steps: {}", steps.join(", "));
                ok(s)
            }
        }
        Command::Closure { t, morphism, out } => {
            if morphism {
                return ok(morphism_out(&cl_morphism(&read_morphism(&t)?), out.json));
            }
            ok(tree_out(&closure(&read_tree(&t)?).tree, &out))
        }
        Command::Decalage { t, morphism, out } => {
            if morphism {
                return ok(morphism_out(&decalage_morphism(&read_morphism(&t)?)?, out.json));
            }
            ok(tree_out(&decalage(&read_tree(&t)?)?.tree, &out))
        }
        Command::Boundary { t, out } => ok(subobject(&omega_core::dendro::boundary(&arc(&t)?), &out)),
        Command::Horn { t, edge, out } => {
            let t = arc(&t)?;
            let e = edge_of(&t, &edge)?;
            ok(subobject(&omega_core::dendro::inner_horn(&t, e)?, &out))
        }
        Command::SegalCore { t, out } => ok(subobject(&omega_core::dendro::segal_core(&arc(&t)?), &out)),
        Command::Sieves { t, count, json } => {
            let all = sieves(&arc(&t)?)?;
            if count {
                ok(format!("{}\n", all.len()))
            } else if json {
                ok(pretty(&all.iter().map(subpresheaf_json).collect::<Vec<_>>()))
            } else {
                ok(all
                    .iter()
                    .map(|x| {
                        let gens: Vec<String> =
                            x.generators().iter().map(|g| x.ambient().cell_tree(g).to_string()).collect();
                        format!("{{{}}}\n", gens.join("; "))
                    })
                    .collect())
            }
        }
        Command::Shuffles { s, t, out } => {
            let (s, t) = (read_tree(&s)?, read_tree(&t)?);
            let all = shuffles(&s, &t);
            if out.json {
                ok(pretty(&all.iter().map(shuffle_json).collect::<Vec<_>>()))
            } else if out.dot {
                ok(shuffles_dot(&s, &t, &all))
            } else {
                ok(all.iter().map(|sh| format!("{}\n", sh.tree())).collect())
            }
        }
        Command::SimplexShuffles { m, n, json } => {
            let all = simplex_shuffles(m, n);
            if json {
                ok(pretty(&all.iter().map(|sh| sh.points()).collect::<Vec<_>>()))
            } else {
                ok(all
                    .iter()
                    .map(|sh| {
                        let pts: Vec<String> = sh.points().iter().map(|(i, j)| format!("({i},{j})")).collect();
                        pts.join(" ") + "\n"
                    })
                    .collect())
            }
        }
        Command::Aspherical { object, max_degree, restarts, seed, certificate, dot } => {
            let x = read_object(&object)?;
            if dot {
                return ok(poset_dot(&x.face_poset()));
            }
            let opts = AsphericityOptions { restarts, seed, max_degree, ..AsphericityOptions::default() };
            ok(pretty(&verdict_json(&x.asphericity(&opts)?, certificate)))
        }
        Command::Verify { suite, list, max_vertices, max_arity, seed, restarts, max_degree, timing } => {
            if list {
                return ok(SUITES.iter().map(|s| format!("{}\t{}\n", s.id, s.statement)).collect());
            }
            let suite = suite.ok_or_else(|| Error::Input("name a suite, `all`, or pass --list".into()))?;
            let opts = Options { max_vertices, max_arity, seed, restarts, max_degree, timing };
            if suite == "all" {
                let reports = SUITES.iter().map(|s| run_verify(s.id, &opts)).collect::<Result<Vec<_>>>()?;
                let pass = reports.iter().all(|r| r.pass);
                return Ok(Outcome { text: pretty(&reports), code: if pass { 0 } else { 1 } });
            }
            let report = run_verify(&suite, &opts)?;
            Ok(Outcome { text: pretty(&report), code: if report.pass { 0 } else { 1 } })
        }
        Command::Emit { object, format } => emit(&object, format),
    }
}

fn emit(words: &[String], format: Format) -> Result<Outcome> {
    if let [kind, t] = words {
        if kind == "tree" {
            return ok(emit_tree(&read_tree(t)?, format));
        }
    }
    let x = read_object(words)?;
    let unsupported = || Error::UnsupportedFormat { format: format.name(), object: words.join(" ") };
    match (format, &x) {
        (Format::Dot, _) => ok(poset_dot(&x.face_poset())),
        (Format::Json, Object::Sub(s)) => ok(pretty(&subpresheaf_json(s))),
        (Format::Term, Object::Sub(s)) => {
            ok(s.generators().iter().map(|g| format!("{}\n", s.ambient().cell_tree(g))).collect())
        }
        _ => Err(unsupported()),
    }
}

