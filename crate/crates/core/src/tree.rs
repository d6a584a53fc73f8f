//! T-trees: ordered rooted trees labelled by types.
//!
//! Children are kept in one vector, stably sorted by type. The T-list
//! `T_i(C)` of a node is the run of children labelled `T_i`; empty T-lists
//! are implicit, so a tree can be built and compared without a problem at
//! hand. Within a run the order is significant and is never changed by the
//! constructors.

use std::collections::BTreeMap;
use std::ops::Range;

use thiserror::Error;

use crate::problem::{StructuralProblem, TypeId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TTree {
    label: TypeId,
    children: Vec<TTree>,
}

/// One T-list of a node: the children sharing a component type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TList<'a> {
    pub ty: TypeId,
    pub trees: &'a [TTree],
}

/// One step of a path from the root: the `pos`-th tree of the T-list `ty`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub ty: TypeId,
    pub pos: usize,
}

impl TTree {
    pub fn leaf(label: TypeId) -> TTree {
        TTree { label, children: Vec::new() }
    }

    /// Builds a node, grouping `children` by type. The sort is stable, so
    /// the order inside each T-list is the order given.
    pub fn new(label: TypeId, mut children: Vec<TTree>) -> TTree {
        children.sort_by_key(|c| c.label);
        TTree { label, children }
    }

    /// Builds a node from T-lists given as `(type, trees)` pairs.
    ///
    /// # Panics
    ///
    /// If a tree's label differs from the type of its list.
    pub fn from_tlists<I>(label: TypeId, tlists: I) -> TTree
    where
        I: IntoIterator<Item = (TypeId, Vec<TTree>)>,
    {
        let mut children = Vec::new();
        for (ty, trees) in tlists {
            for t in trees {
                assert_eq!(t.label, ty, "tree placed in a T-list of another type");
                children.push(t);
            }
        }
        TTree::new(label, children)
    }

    pub fn label(&self) -> TypeId {
        self.label
    }

    /// All children, grouped by type.
    pub fn children(&self) -> &[TTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Non-empty T-lists in type order.
    pub fn tlists(&self) -> TLists<'_> {
        TLists { rest: &self.children }
    }

    /// `T_i(C)` for `ty`; empty when the node has no such child.
    pub fn tlist(&self, ty: TypeId) -> &[TTree] {
        &self.children[self.tlist_range(ty)]
    }

    pub(crate) fn tlist_range(&self, ty: TypeId) -> Range<usize> {
        let start = self.children.partition_point(|c| c.label < ty);
        let end = self.children.partition_point(|c| c.label <= ty);
        start..end
    }

    pub(crate) fn children_mut(&mut self) -> &mut Vec<TTree> {
        &mut self.children
    }

    pub fn node_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            count += 1;
            stack.extend(t.children.iter());
        }
        count
    }

    /// Length of the longest root-to-leaf path, in edges.
    pub fn height(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(self, 0usize)];
        while let Some((t, depth)) = stack.pop() {
            best = best.max(depth);
            stack.extend(t.children.iter().map(|c| (c, depth + 1)));
        }
        best
    }

    /// Number of nodes per type.
    pub fn type_counts(&self) -> BTreeMap<TypeId, usize> {
        let mut counts = BTreeMap::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            *counts.entry(t.label).or_insert(0) += 1;
            stack.extend(t.children.iter());
        }
        counts
    }

    /// Follows `path` from the root.
    pub fn subtree(&self, path: &[Step]) -> Option<&TTree> {
        let mut node = self;
        for step in path {
            node = node.tlist(step.ty).get(step.pos)?;
        }
        Some(node)
    }

    pub(crate) fn subtree_mut(&mut self, path: &[Step]) -> Option<&mut TTree> {
        let mut node = self;
        for step in path {
            let range = node.tlist_range(step.ty);
            if step.pos >= range.len() {
                return None;
            }
            node = &mut node.children[range.start + step.pos];
        }
        Some(node)
    }
}

pub struct TLists<'a> {
    rest: &'a [TTree],
}

impl<'a> Iterator for TLists<'a> {
    type Item = TList<'a>;

    fn next(&mut self) -> Option<TList<'a>> {
        let ty = self.rest.first()?.label;
        let len = self.rest.iter().take_while(|c| c.label == ty).count();
        let (trees, rest) = self.rest.split_at(len);
        self.rest = rest;
        Some(TList { ty, trees })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConformError {
    #[error("type {0} is not declared by the problem")]
    UnknownType(TypeId),
}

/// Checks a tree against the structural constraints of `problem`: root
/// type, relation schemas, maximal cardinalities and the depth bound if the
/// problem has one.
///
/// A label that the problem does not declare is an error rather than a
/// negative answer.
pub fn ttree_conforms(tree: &TTree, problem: &StructuralProblem) -> Result<bool, ConformError> {
    let mut stack = vec![tree];
    while let Some(t) = stack.pop() {
        if !problem.names().contains(t.label) {
            return Err(ConformError::UnknownType(t.label));
        }
        stack.extend(t.children.iter());
    }
    if tree.label != problem.root() {
        return Ok(false);
    }
    let bound = problem.depth_bound();
    let mut stack = vec![(tree, 0usize)];
    while let Some((t, depth)) = stack.pop() {
        if bound.is_some_and(|b| depth > b) {
            return Ok(false);
        }
        for list in t.tlists() {
            match problem.max_cardinality(t.label, list.ty) {
                Some(max) if list.trees.len() <= max as usize => {}
                _ => return Ok(false),
            }
        }
        stack.extend(t.children.iter().map(|c| (c, depth + 1)));
    }
    Ok(true)
}
