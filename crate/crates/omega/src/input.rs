//! Trees and objects named on the command line.

use std::path::Path;
use std::sync::Arc;

use omega_core::dendro::{
    boundary, inner_horn, product, segal_core, Ambient, AmbientKind, GeneratedPresheaf, Product, SubPresheaf,
};
use omega_core::homotopy::{asphericity, asphericity_of_presheaf, AsphericityOptions, AsphericityVerdict, FacePoset};
use omega_core::omega::Morphism;
use omega_core::tensor::shuffle_subobject;
use omega_core::tree::Tree;

use crate::format::{MorphismJson, TreeJson};
use crate::{Error, Result};

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// A tree given as a term, or as a file holding a term or a tree document.
pub fn read_tree(arg: &str) -> Result<Tree> {
    let path = Path::new(arg);
    let text = if path.is_file() { read_file(path)? } else { arg.to_string() };
    let text = text.trim();
    if text.starts_with('{') {
        serde_json::from_str::<TreeJson>(text)?.to_tree()
    } else {
        Ok(text.parse()?)
    }
}

pub fn read_morphism(arg: &str) -> Result<Morphism> {
    let path = Path::new(arg);
    let text = if path.is_file() { read_file(path)? } else { arg.to_string() };
    serde_json::from_str::<MorphismJson>(&text)?.to_morphism()
}

pub fn edge_of(t: &Tree, name: &str) -> Result<usize> {
    t.edge_id(name).ok_or_else(|| Error::Input(format!("`{name}` is not an edge of {t}")))
}

/// A finite presheaf built from trees.
pub enum Object {
    Sub(SubPresheaf),
    Product(Product<SubPresheaf, SubPresheaf>),
    Generated(GeneratedPresheaf),
}

pub const OBJECT_KINDS: &str = "representable T | boundary T | horn T EDGE | segal-core T | tensor S T | \
shuffle S T INDEX | product S T | corolla-mod-swap";

fn representable(t: Tree) -> SubPresheaf {
    SubPresheaf::full(&Ambient::representable(Arc::new(t)))
}

/// Parses `KIND ARGS…`, see [`OBJECT_KINDS`].
pub fn read_object(words: &[String]) -> Result<Object> {
    let usage = || Error::Input(format!("expected an object: {OBJECT_KINDS}"));
    let (kind, args) = words.split_first().ok_or_else(usage)?;
    let tree = |i: usize| -> Result<Arc<Tree>> { Ok(Arc::new(read_tree(args.get(i).ok_or_else(usage)?)?)) };
    let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(usage()) };
    Ok(match kind.as_str() {
        "representable" => {
            arity(1)?;
            Object::Sub(representable((*tree(0)?).clone()))
        }
        "boundary" => {
            arity(1)?;
            Object::Sub(boundary(&tree(0)?))
        }
        "horn" => {
            arity(2)?;
            let t = tree(0)?;
            let e = edge_of(&t, &args[1])?;
            Object::Sub(inner_horn(&t, e)?)
        }
        "segal-core" => {
            arity(1)?;
            Object::Sub(segal_core(&tree(0)?))
        }
        "tensor" => {
            arity(2)?;
            Object::Sub(SubPresheaf::full(&Ambient::tensor(tree(0)?, tree(1)?)))
        }
        "shuffle" => {
            arity(3)?;
            let a = Ambient::tensor(tree(0)?, tree(1)?);
            let AmbientKind::Tensor(ta) = a.kind() else { unreachable!("a tensor ambient") };
            let i: usize = args[2].parse().map_err(|_| usage())?;
            let sigma = ta
                .shuffles()
                .get(i)
                .ok_or_else(|| Error::Input(format!("there are {} shuffles", ta.shuffles().len())))?;
            Object::Sub(shuffle_subobject(&a, sigma)?)
        }
        "product" => {
            arity(2)?;
            Object::Product(product(representable((*tree(0)?).clone()), representable((*tree(1)?).clone())))
        }
        "corolla-mod-swap" => {
            arity(0)?;
            Object::Generated(GeneratedPresheaf::corolla_mod_swap())
        }
        _ => return Err(usage()),
    })
}

impl Object {
    pub fn face_poset(&self) -> FacePoset {
        match self {
            Object::Sub(x) => FacePoset::of_subpresheaf(x),
            Object::Product(p) => FacePoset::of_presheaf(p),
            Object::Generated(g) => FacePoset::of_presheaf(g),
        }
    }

    pub fn asphericity(&self, opts: &AsphericityOptions) -> Result<AsphericityVerdict> {
        Ok(match self {
            Object::Sub(x) => asphericity(x, opts)?,
            Object::Product(p) => asphericity_of_presheaf(p, opts)?,
            Object::Generated(g) => asphericity_of_presheaf(g, opts)?,
        })
    }
}
