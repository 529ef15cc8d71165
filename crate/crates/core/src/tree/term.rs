//! Compact term syntax: `a[u](b[v](c,d), e[w](), f)`.
//!
//! ```text
//! edge ::= name [ "[" vertex-name "]" "(" [ edge { "," edge } ] ")" ]
//! ```
//!
//! A bare name is a leaf. Whitespace between tokens is ignored.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{EdgeId, Tree};
use crate::Error;

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '[' | ']' | '(' | ')' | ',')
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    edges: Vec<String>,
    vertices: Vec<(String, usize, Vec<usize>)>,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected `{c}`")))
        }
    }

    fn name(&mut self) -> Result<String, Error> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c| !is_name_char(c)).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a name"));
        }
        self.pos += len;
        Ok(String::from(&rest[..len]))
    }

    fn edge(&mut self) -> Result<usize, Error> {
        let name = self.name()?;
        let id = self.edges.len();
        self.edges.push(name);
        if self.peek() == Some('[') {
            self.pos += 1;
            let vname = self.name()?;
            self.expect(']')?;
            self.expect('(')?;
            let mut inputs = Vec::new();
            if self.peek() != Some(')') {
                inputs.push(self.edge()?);
                while self.peek() == Some(',') {
                    self.pos += 1;
                    inputs.push(self.edge()?);
                }
            }
            self.expect(')')?;
            self.vertices.push((vname, id, inputs));
        }
        Ok(id)
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree, Error> {
        let mut p = Parser { src: s, pos: 0, edges: Vec::new(), vertices: Vec::new() };
        let root = p.edge()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Tree::assemble(p.edges, root, p.vertices)
    }
}

impl Tree {
    fn write_term(&self, e: EdgeId, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.edge_name(e))?;
        if let Some(v) = self.above(e) {
            let v = self.vertex(v);
            write!(f, "[{}](", v.name())?;
            // Inputs are already in name order.
            let sep = if v.inputs().iter().all(|&i| self.is_leaf(i)) { "," } else { ", " };
            for (k, &i) in v.inputs().iter().enumerate() {
                if k > 0 {
                    f.write_str(sep)?;
                }
                self.write_term(i, f)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Formats the tree in term syntax with inputs in edge-name order.
impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_term(self.root(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn round_trips_the_example_tree() {
        let src = "a[u](b[v](c,d), e[w](), f)";
        let t: Tree = src.parse().unwrap();
        assert_eq!(t.edge_count(), 6);
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.to_string(), src);
    }

    #[test]
    fn input_order_is_normalised() {
        let t: Tree = "a[u](f , e[w]( ),b[v](d,c))".parse().unwrap();
        assert_eq!(t.to_string(), "a[u](b[v](c,d), e[w](), f)");
    }

    #[test]
    fn small_trees() {
        let x: Tree = "x".parse().unwrap();
        assert_eq!((x.edge_count(), x.vertex_count()), (1, 0));
        assert_eq!(Tree::corolla(0).to_string(), "0[v]()");
        assert_eq!(Tree::corolla(2).to_string(), "0[v](1,2)");
        assert_eq!(Tree::linear(2).to_string(), "2[v2](1[v1](0))");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert!(matches!("a[u](b".parse::<Tree>(), Err(Error::Parse { offset: 6, .. })));
        assert!(matches!("".parse::<Tree>(), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!("a b".parse::<Tree>(), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!("a[u](b,b)".parse::<Tree>(), Err(Error::InvalidTree(_))));
    }
}
