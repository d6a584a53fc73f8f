//! Configurations of a structural problem as object-labelled trees, and the
//! translation to and from T-trees.
//!
//! Configuration files list objects, then composition links:
//!
//! ```text
//! obj 1 PC
//! obj 2 Monitor
//! link 1 2
//! ```

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::problem::{TypeId, TypeNames};
use crate::tree::TTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub u64);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown type `{name}`")]
    UnknownType { line: usize, name: String },
    #[error("configuration has no objects")]
    Empty,
    #[error("object {0} declared more than once")]
    DuplicateObject(u64),
    #[error("link refers to undeclared object {0}")]
    UnknownObject(u64),
    #[error("object {0} is linked to itself")]
    SelfLink(u64),
    #[error("object {child} has several composites")]
    MultipleParents { child: u64 },
    #[error("no root object: every object has a composite")]
    NoRoot,
    #[error("several root objects: {0:?}")]
    MultipleRoots(Vec<u64>),
    #[error("object {0} is not reachable from the root")]
    Unreachable(u64),
}

/// A configuration: every object but the root has exactly one composite
/// and is reachable from the root. Children are ordered by type, then by
/// object number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigTree {
    root: ObjectId,
    types: BTreeMap<ObjectId, TypeId>,
    children: BTreeMap<ObjectId, Vec<ObjectId>>,
}

impl ConfigTree {
    /// Builds a configuration from typed objects and `(composite, component)` links.
    pub fn new<O, L>(objects: O, links: L) -> Result<ConfigTree, ConfigError>
    where
        O: IntoIterator<Item = (ObjectId, TypeId)>,
        L: IntoIterator<Item = (ObjectId, ObjectId)>,
    {
        let mut types = BTreeMap::new();
        for (obj, ty) in objects {
            if types.insert(obj, ty).is_some() {
                return Err(ConfigError::DuplicateObject(obj.0));
            }
        }
        if types.is_empty() {
            return Err(ConfigError::Empty);
        }

        let mut parent: BTreeMap<ObjectId, ObjectId> = BTreeMap::new();
        let mut children: BTreeMap<ObjectId, Vec<ObjectId>> = types.keys().map(|&o| (o, Vec::new())).collect();
        for (composite, component) in links {
            for o in [composite, component] {
                if !types.contains_key(&o) {
                    return Err(ConfigError::UnknownObject(o.0));
                }
            }
            if composite == component {
                return Err(ConfigError::SelfLink(composite.0));
            }
            if parent.insert(component, composite).is_some() {
                return Err(ConfigError::MultipleParents { child: component.0 });
            }
            children.get_mut(&composite).expect("declared").push(component);
        }

        let roots: Vec<ObjectId> = types.keys().copied().filter(|o| !parent.contains_key(o)).collect();
        let root = match roots.as_slice() {
            [] => return Err(ConfigError::NoRoot),
            [r] => *r,
            _ => return Err(ConfigError::MultipleRoots(roots.iter().map(|o| o.0).collect())),
        };

        for list in children.values_mut() {
            list.sort_by_key(|o| (types[o], *o));
        }

        let mut seen = 0usize;
        let mut queue = VecDeque::from([root]);
        while let Some(o) = queue.pop_front() {
            seen += 1;
            queue.extend(children[&o].iter().copied());
        }
        if seen != types.len() {
            // with unique parents, whatever the root misses sits on a cycle
            let mut reached = std::collections::BTreeSet::from([root]);
            let mut stack = vec![root];
            while let Some(o) = stack.pop() {
                for &c in &children[&o] {
                    if reached.insert(c) {
                        stack.push(c);
                    }
                }
            }
            let lost = types.keys().find(|o| !reached.contains(o)).expect("some object unreached");
            return Err(ConfigError::Unreachable(lost.0));
        }

        Ok(ConfigTree { root, types, children })
    }

    /// Parses a configuration file, resolving type names through `names`.
    pub fn parse(text: &str, names: &TypeNames) -> Result<ConfigTree, ConfigError> {
        let (objects, links) = parse_lines(text)?;
        let objects = objects
            .into_iter()
            .map(|(line, obj, name)| {
                names
                    .get(name)
                    .map(|ty| (obj, ty))
                    .ok_or_else(|| ConfigError::UnknownType { line, name: name.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        ConfigTree::new(objects, links)
    }

    /// Parses a configuration file with an alphabetical type table built
    /// from the names it mentions.
    pub fn parse_free(text: &str) -> Result<(ConfigTree, TypeNames), ConfigError> {
        let (objects, _) = parse_lines(text)?;
        let names = TypeNames::sorted(objects.iter().map(|(_, _, n)| n.to_string()));
        let cfg = ConfigTree::parse(text, &names)?;
        Ok((cfg, names))
    }

    pub fn root(&self) -> ObjectId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    /// Objects in increasing order.
    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        self.types.keys().copied()
    }

    pub fn object_type(&self, obj: ObjectId) -> Option<TypeId> {
        self.types.get(&obj).copied()
    }

    pub fn children(&self, obj: ObjectId) -> &[ObjectId] {
        self.children.get(&obj).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All `(composite, component)` pairs, i.e. the union of the relation
    /// interpretations.
    pub fn links(&self) -> Vec<(ObjectId, ObjectId)> {
        self.children
            .iter()
            .flat_map(|(&p, cs)| cs.iter().map(move |&c| (p, c)))
            .collect()
    }

    pub fn to_config_file(&self, names: &TypeNames) -> String {
        let mut out = String::new();
        for (obj, ty) in &self.types {
            let name = names.name(*ty).map(str::to_string).unwrap_or_else(|| ty.to_string());
            writeln!(out, "obj {} {}", obj.0, name).unwrap();
        }
        for (p, c) in self.links() {
            writeln!(out, "link {} {}", p.0, c.0).unwrap();
        }
        out
    }
}

type ParsedLines<'a> = (Vec<(usize, ObjectId, &'a str)>, Vec<(ObjectId, ObjectId)>);

fn parse_lines(text: &str) -> Result<ParsedLines<'_>, ConfigError> {
    let mut objects = Vec::new();
    let mut links = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let syntax = |message: &str| ConfigError::Syntax { line: line_no, message: message.to_string() };
        let nat = |s: &str| s.parse::<u64>().map(ObjectId).map_err(|_| syntax("expected an object number"));
        let words: Vec<&str> = line.split('#').next().unwrap_or("").split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["obj", id, name] => objects.push((line_no, nat(id)?, *name)),
            ["link", p, c] => links.push((nat(p)?, nat(c)?)),
            _ => return Err(syntax("expected `obj <n> <Type>` or `link <n> <n>`")),
        }
    }
    Ok((objects, links))
}

/// Erases object numbers: each node keeps only its type.
pub fn config_to_ttree(cfg: &ConfigTree) -> TTree {
    fn build(cfg: &ConfigTree, obj: ObjectId) -> TTree {
        let children = cfg.children(obj).iter().map(|&c| build(cfg, c)).collect();
        TTree::new(cfg.types[&obj], children)
    }
    build(cfg, cfg.root)
}

/// Numbers the nodes of `tree` breadth first from 0, visiting children in
/// type order and list order.
pub fn ttree_to_config(tree: &TTree) -> ConfigTree {
    let mut types = BTreeMap::new();
    let mut children = BTreeMap::new();
    let mut next = 0u64;
    let mut queue = VecDeque::from([(tree, ObjectId(0))]);
    next += 1;
    while let Some((node, id)) = queue.pop_front() {
        types.insert(id, node.label());
        let mut ids = Vec::with_capacity(node.children().len());
        for child in node.children() {
            let cid = ObjectId(next);
            next += 1;
            ids.push(cid);
            queue.push_back((child, cid));
        }
        children.insert(id, ids);
    }
    ConfigTree { root: ObjectId(0), types, children }
}
