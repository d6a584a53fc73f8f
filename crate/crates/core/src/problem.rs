//! Structural problems: a root type, an ordered set of flat types and the
//! composition relations between them, each bounded by a maximal cardinality.
//!
//! Problems are read from a small line-based format:
//!
//! ```text
//! # comments start with '#'
//! root PC
//! type PC
//! type Monitor
//! rel PC Monitor max 1
//! ```
//!
//! Type declaration order fixes the type order used everywhere else in the
//! crate (children grouping, T-list comparison, rendering).

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of a type in its table. The derived order is the type order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeId(pub u32);

impl TypeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSymbol {
    pub name: String,
    pub rank: TypeId,
}

/// Bidirectional mapping between type names and [`TypeId`]s.
///
/// The position of a name in the table is its rank.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeNames {
    symbols: Vec<TypeSymbol>,
    by_name: HashMap<String, TypeId>,
}

impl TypeNames {
    /// Builds a table in the given order, rejecting duplicates.
    pub fn new<I, S>(names: I) -> Result<Self, ProblemError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut table = TypeNames::default();
        for name in names {
            let name = name.into();
            if table.by_name.contains_key(&name) {
                return Err(ProblemError::DuplicateType(name));
            }
            table.push(name);
        }
        Ok(table)
    }

    /// Builds a table with names in alphabetical order. Duplicates are merged.
    ///
    /// This is the type order used when no problem is available.
    pub fn sorted<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        names.dedup();
        let mut table = TypeNames::default();
        for name in names {
            table.push(name);
        }
        table
    }

    fn push(&mut self, name: String) {
        let rank = TypeId(self.symbols.len() as u32);
        self.by_name.insert(name.clone(), rank);
        self.symbols.push(TypeSymbol { name, rank });
    }

    pub fn get(&self, name: &str) -> Option<TypeId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: TypeId) -> Option<&str> {
        self.symbols.get(id.index()).map(|s| s.name.as_str())
    }

    pub fn contains(&self, id: TypeId) -> bool {
        id.index() < self.symbols.len()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[TypeSymbol] {
        &self.symbols
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationSchema {
    pub composite: TypeId,
    pub component: TypeId,
    pub max_cardinality: u32,
}

/// One entry of `ct(T)`: a component type of `T` with its bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentSlot {
    pub component: TypeId,
    pub max_cardinality: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRelation {
    pub composite: String,
    pub component: String,
    pub max_cardinality: u32,
}

/// A problem as written in a file, before any consistency check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawProblem {
    pub root: String,
    pub types: Vec<String>,
    pub relations: Vec<RawRelation>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProblemError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no `root` declaration")]
    MissingRoot,
    #[error("line {line}: `root` declared more than once")]
    DuplicateRoot { line: usize },
    #[error("type `{0}` declared more than once")]
    DuplicateType(String),
    #[error("unknown type `{0}`")]
    UnknownType(String),
    #[error("relation {composite} -> {component} declared more than once")]
    DuplicateRelation { composite: String, component: String },
    #[error("root type `{0}` cannot be a component")]
    RootIsComponent(String),
    #[error("relation {composite} -> {component} has a zero maximal cardinality")]
    ZeroCardinality { composite: String, component: String },
    #[error("composition graph has a cycle through `{0}`; a depth bound is required")]
    Cyclic(String),
}

impl RawProblem {
    pub fn parse(text: &str) -> Result<RawProblem, ProblemError> {
        let mut root: Option<String> = None;
        let mut raw = RawProblem::default();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = line.split('#').next().unwrap_or("");
            let words: Vec<&str> = content.split_whitespace().collect();
            let syntax = |message: &str| ProblemError::Syntax {
                line: line_no,
                message: message.to_string(),
            };
            match words.as_slice() {
                [] => {}
                ["root", name] => {
                    if root.is_some() {
                        return Err(ProblemError::DuplicateRoot { line: line_no });
                    }
                    root = Some(name.to_string());
                }
                ["type", name] => raw.types.push(name.to_string()),
                ["rel", composite, component, "max", max] => {
                    let max_cardinality = max
                        .parse::<u32>()
                        .map_err(|_| syntax("expected a positive integer after `max`"))?;
                    raw.relations.push(RawRelation {
                        composite: composite.to_string(),
                        component: component.to_string(),
                        max_cardinality,
                    });
                }
                ["root", ..] => return Err(syntax("expected `root <Type>`")),
                ["type", ..] => return Err(syntax("expected `type <Type>`")),
                ["rel", ..] => return Err(syntax("expected `rel <Composite> <Component> max <n>`")),
                [keyword, ..] => return Err(syntax(&format!("unknown keyword `{keyword}`"))),
            }
        }
        raw.root = root.ok_or(ProblemError::MissingRoot)?;
        Ok(raw)
    }
}

/// A validated structural problem with `ct`/`nct` tables precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralProblem {
    root: TypeId,
    names: TypeNames,
    relations: Vec<RelationSchema>,
    components: Vec<Vec<ComponentSlot>>,
    depth_bound: Option<usize>,
}

/// Checks a raw problem and assigns type ranks.
///
/// Cyclic composition graphs are only accepted together with a depth bound,
/// which then caps the height of every tree of the problem.
pub fn validate_problem(
    raw: &RawProblem,
    depth_bound: Option<usize>,
) -> Result<StructuralProblem, ProblemError> {
    let names = TypeNames::new(raw.types.iter().cloned())?;
    let lookup = |name: &str| names.get(name).ok_or_else(|| ProblemError::UnknownType(name.to_string()));
    let root = lookup(&raw.root)?;

    let mut components: Vec<Vec<ComponentSlot>> = vec![Vec::new(); names.len()];
    let mut relations = Vec::with_capacity(raw.relations.len());
    for rel in &raw.relations {
        let composite = lookup(&rel.composite)?;
        let component = lookup(&rel.component)?;
        if rel.max_cardinality == 0 {
            return Err(ProblemError::ZeroCardinality {
                composite: rel.composite.clone(),
                component: rel.component.clone(),
            });
        }
        if component == root {
            return Err(ProblemError::RootIsComponent(rel.component.clone()));
        }
        let slots = &mut components[composite.index()];
        if slots.iter().any(|s| s.component == component) {
            return Err(ProblemError::DuplicateRelation {
                composite: rel.composite.clone(),
                component: rel.component.clone(),
            });
        }
        slots.push(ComponentSlot { component, max_cardinality: rel.max_cardinality });
        relations.push(RelationSchema { composite, component, max_cardinality: rel.max_cardinality });
    }
    for slots in &mut components {
        slots.sort_by_key(|s| s.component);
    }

    if depth_bound.is_none() {
        if let Some(t) = find_cycle(&components) {
            let name = names.name(t).unwrap_or_default().to_string();
            return Err(ProblemError::Cyclic(name));
        }
    }

    Ok(StructuralProblem { root, names, relations, components, depth_bound })
}

/// Returns a type lying on a cycle of the composition graph, if any.
fn find_cycle(components: &[Vec<ComponentSlot>]) -> Option<TypeId> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut marks = vec![Mark::New; components.len()];
    for start in 0..components.len() {
        if marks[start] != Mark::New {
            continue;
        }
        // (type, next slot to visit)
        let mut stack = vec![(start, 0usize)];
        marks[start] = Mark::Active;
        while let Some(&mut (t, ref mut next)) = stack.last_mut() {
            if let Some(slot) = components[t].get(*next) {
                *next += 1;
                let c = slot.component.index();
                match marks[c] {
                    Mark::Active => return Some(slot.component),
                    Mark::New => {
                        marks[c] = Mark::Active;
                        stack.push((c, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                marks[t] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}

impl StructuralProblem {
    /// Parses and validates a problem file without a depth bound.
    pub fn parse(text: &str) -> Result<StructuralProblem, ProblemError> {
        validate_problem(&RawProblem::parse(text)?, None)
    }

    pub fn parse_with_bound(text: &str, depth_bound: Option<usize>) -> Result<StructuralProblem, ProblemError> {
        validate_problem(&RawProblem::parse(text)?, depth_bound)
    }

    /// The `k`-connected chain problem of height `p`: types `T0..Tp`, where
    /// each `Ti` object holds between 0 and `k` objects of type `Ti+1`.
    ///
    /// # Panics
    ///
    /// If `k` is zero.
    pub fn chain(p: usize, k: u32) -> StructuralProblem {
        assert!(k >= 1, "chain problems need k >= 1");
        let raw = RawProblem {
            root: "T0".to_string(),
            types: (0..=p).map(|i| format!("T{i}")).collect(),
            relations: (0..p)
                .map(|i| RawRelation {
                    composite: format!("T{i}"),
                    component: format!("T{}", i + 1),
                    max_cardinality: k,
                })
                .collect(),
        };
        validate_problem(&raw, None).expect("chain problems are well formed")
    }

    pub fn root(&self) -> TypeId {
        self.root
    }

    pub fn names(&self) -> &TypeNames {
        &self.names
    }

    pub fn types(&self) -> &[TypeSymbol] {
        self.names.symbols()
    }

    pub fn relations(&self) -> &[RelationSchema] {
        &self.relations
    }

    /// `ct(t)`: component types of `t` in type order.
    pub fn component_types(&self, t: TypeId) -> &[ComponentSlot] {
        self.components.get(t.index()).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `nct(t)`.
    pub fn nct(&self, t: TypeId) -> usize {
        self.component_types(t).len()
    }

    pub fn max_cardinality(&self, composite: TypeId, component: TypeId) -> Option<u32> {
        self.component_types(composite)
            .iter()
            .find(|s| s.component == component)
            .map(|s| s.max_cardinality)
    }

    pub fn depth_bound(&self) -> Option<usize> {
        self.depth_bound
    }

    pub fn type_id(&self, name: &str) -> Option<TypeId> {
        self.names.get(name)
    }

    pub fn type_name(&self, t: TypeId) -> Option<&str> {
        self.names.name(t)
    }

    /// Renders the problem back into the file format.
    pub fn to_problem_file(&self) -> String {
        let name = |t: TypeId| self.names.name(t).unwrap_or_default();
        let mut out = format!("root {}\n", name(self.root));
        for sym in self.types() {
            out.push_str(&format!("type {}\n", sym.name));
        }
        for rel in &self.relations {
            out.push_str(&format!(
                "rel {} {} max {}\n",
                name(rel.composite),
                name(rel.component),
                rel.max_cardinality
            ));
        }
        out
    }
}
