//! Text form of T-trees: `ttree := TYPE | TYPE "(" ttree ("," ttree)* ")"`.
//!
//! Whitespace is ignored on input. Children may be written in any order;
//! they are grouped by type while the order inside each T-list is kept.
//! Rendering emits the grouped form without spaces, so `render` is the
//! normal form of `parse`.

use std::fmt;

use thiserror::Error;

use crate::problem::{TypeId, TypeNames};
use crate::tree::TTree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown type `{name}` at byte {pos}")]
    UnknownType { pos: usize, name: String },
}

struct RawNode<'a> {
    name: &'a str,
    pos: usize,
    children: Vec<RawNode<'a>>,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'-' || b == b'.'
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.text.as_bytes().get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { pos: self.pos, message: message.into() }
    }

    fn node(&mut self) -> Result<RawNode<'a>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        while bytes.get(self.pos).copied().is_some_and(is_name_byte) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a type name"));
        }
        let name = &self.text[start..self.pos];
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                children.push(self.node()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(_) => return Err(self.error("expected `,` or `)`")),
                    None => return Err(self.error("unexpected end of input, expected `)`")),
                }
            }
        }
        Ok(RawNode { name, pos: start, children })
    }

    fn parse(text: &'a str) -> Result<RawNode<'a>, ParseError> {
        let mut parser = Parser { text, pos: 0 };
        let root = parser.node()?;
        if parser.peek().is_some() {
            return Err(parser.error("trailing input"));
        }
        Ok(root)
    }
}

fn build(raw: &RawNode<'_>, names: &TypeNames) -> Result<TTree, ParseError> {
    let label = names.get(raw.name).ok_or_else(|| ParseError::UnknownType {
        pos: raw.pos,
        name: raw.name.to_string(),
    })?;
    let children = raw.children.iter().map(|c| build(c, names)).collect::<Result<_, _>>()?;
    Ok(TTree::new(label, children))
}

fn collect_names<'a>(raw: &RawNode<'a>, out: &mut Vec<&'a str>) {
    out.push(raw.name);
    for c in &raw.children {
        collect_names(c, out);
    }
}

/// Parses a tree whose type names are resolved through `names`.
pub fn parse_ttree(text: &str, names: &TypeNames) -> Result<TTree, ParseError> {
    build(&Parser::parse(text)?, names)
}

/// Parses a tree without a problem: the types are the names that occur in
/// `text`, ordered alphabetically.
pub fn parse_ttree_free(text: &str) -> Result<(TTree, TypeNames), ParseError> {
    let raw = Parser::parse(text)?;
    let mut found = Vec::new();
    collect_names(&raw, &mut found);
    let names = TypeNames::sorted(found);
    let tree = build(&raw, &names)?;
    Ok((tree, names))
}

/// Parses several trees over one shared alphabetical type table.
pub fn parse_ttrees_free(texts: &[&str]) -> Result<(Vec<TTree>, TypeNames), ParseError> {
    let raws = texts.iter().map(|t| Parser::parse(t)).collect::<Result<Vec<_>, _>>()?;
    let mut found = Vec::new();
    for raw in &raws {
        collect_names(raw, &mut found);
    }
    let names = TypeNames::sorted(found);
    let trees = raws.iter().map(|r| build(r, &names)).collect::<Result<_, _>>()?;
    Ok((trees, names))
}

/// Normalized text of a tree. Unknown ids are written as `#n`.
pub fn render_ttree(tree: &TTree, names: &TypeNames) -> String {
    tree.display(names).to_string()
}

pub struct Display<'a> {
    tree: &'a TTree,
    names: &'a TypeNames,
}

impl TTree {
    pub fn display<'a>(&'a self, names: &'a TypeNames) -> Display<'a> {
        Display { tree: self, names }
    }
}

fn write_label(f: &mut fmt::Formatter<'_>, id: TypeId, names: &TypeNames) -> fmt::Result {
    match names.name(id) {
        Some(name) => f.write_str(name),
        None => write!(f, "{id}"),
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_label(f, self.tree.label(), self.names)?;
        if let Some((first, rest)) = self.tree.children().split_first() {
            f.write_str("(")?;
            first.display(self.names).fmt(f)?;
            for c in rest {
                f.write_str(",")?;
                c.display(self.names).fmt(f)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
