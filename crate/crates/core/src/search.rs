//! Growing T-trees one leaf at a time, and the two enumerators built on it.
//!
//! The state graph of a problem has the conforming T-trees as states and
//! unit extensions (one new leaf) as moves. A new leaf always goes to the
//! end of its T-list.
//!
//! Both enumerators are reverse searches from the root leaf. Each tree has
//! one designated parent obtained by deleting one of its leaves, and a tree
//! is emitted only when reached from that parent:
//!
//! * [`enumerate_all`] deletes the last node in preorder;
//! * [`enumerate_canonical`] uses [`canonical_removal`], which keeps a
//!   canonical tree canonical. Only canonical extensions are ever built, and
//!   every canonical tree is still reached.

use thiserror::Error;

use crate::order::is_canonical;
use crate::problem::{StructuralProblem, TypeId};
use crate::tree::{Step, TTree};

/// Where a unit extension adds its leaf: at the end of the `new_leaf_type`
/// T-list of the node reached by `path`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionSite {
    pub path: Vec<Step>,
    pub new_leaf_type: TypeId,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("tree is not canonical")]
    NotCanonical,
    #[error("a single-node tree has no terminal node to remove")]
    SingleNode,
}

fn effective_bound(problem: &StructuralProblem, max_depth: Option<usize>) -> Option<usize> {
    match (problem.depth_bound(), max_depth) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// All legal places for one more leaf, in preorder of the target node and
/// type order within a node.
pub fn extension_sites(tree: &TTree, problem: &StructuralProblem) -> Vec<ExtensionSite> {
    extension_sites_bounded(tree, problem, problem.depth_bound())
}

fn extension_sites_bounded(tree: &TTree, problem: &StructuralProblem, bound: Option<usize>) -> Vec<ExtensionSite> {
    fn walk(
        node: &TTree,
        path: &mut Vec<Step>,
        problem: &StructuralProblem,
        bound: Option<usize>,
        out: &mut Vec<ExtensionSite>,
    ) {
        if bound.is_none_or(|b| path.len() < b) {
            for slot in problem.component_types(node.label()) {
                if node.tlist(slot.component).len() < slot.max_cardinality as usize {
                    out.push(ExtensionSite { path: path.clone(), new_leaf_type: slot.component });
                }
            }
        }
        for list in node.tlists() {
            for (pos, child) in list.trees.iter().enumerate() {
                path.push(Step { ty: list.ty, pos });
                walk(child, path, problem, bound, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(tree, &mut Vec::new(), problem, bound, &mut out);
    out
}

/// Adds a leaf at `site`. `None` if the path does not address a node.
pub fn apply_extension(tree: &TTree, site: &ExtensionSite) -> Option<TTree> {
    let mut out = tree.clone();
    let node = out.subtree_mut(&site.path)?;
    let end = node.tlist_range(site.new_leaf_type).end;
    node.children_mut().insert(end, TTree::leaf(site.new_leaf_type));
    Some(out)
}

/// Path of the leaf added at `site`, in the extended tree.
fn new_leaf_path(extended: &TTree, site: &ExtensionSite) -> Vec<Step> {
    let node = extended.subtree(&site.path).expect("site addresses a node");
    let pos = node.tlist(site.new_leaf_type).len() - 1;
    let mut path = site.path.clone();
    path.push(Step { ty: site.new_leaf_type, pos });
    path
}

/// Every tree one leaf larger than `tree` that still satisfies the
/// cardinality bounds. Empty when the tree is saturated.
pub fn unit_extensions(tree: &TTree, problem: &StructuralProblem) -> Vec<TTree> {
    extension_sites(tree, problem)
        .iter()
        .map(|site| apply_extension(tree, site).expect("site from extension_sites"))
        .collect()
}

/// The canonical members of [`unit_extensions`] of a canonical tree.
pub fn canonical_unit_extensions(tree: &TTree, problem: &StructuralProblem) -> Result<Vec<TTree>, SearchError> {
    if !is_canonical(tree) {
        return Err(SearchError::NotCanonical);
    }
    Ok(canonical_extensions_bounded(tree, problem, problem.depth_bound())
        .into_iter()
        .map(|(t, _)| t)
        .collect())
}

fn canonical_extensions_bounded(
    tree: &TTree,
    problem: &StructuralProblem,
    bound: Option<usize>,
) -> Vec<(TTree, ExtensionSite)> {
    extension_sites_bounded(tree, problem, bound)
        .into_iter()
        .filter_map(|site| {
            let ext = apply_extension(tree, &site).expect("site from extension_sites");
            is_canonical_incremental(&ext, &site).then_some((ext, site))
        })
        .collect()
}

/// Canonicity of a tree obtained by adding a leaf at `site` to a canonical
/// tree.
///
/// Only the comparisons the new leaf can break are made: each ancestor
/// against its right neighbour (an ancestor can only have grown), and the
/// new leaf against its predecessor, which must be a leaf too.
pub fn is_canonical_incremental(tree: &TTree, site: &ExtensionSite) -> bool {
    debug_assert!(
        tree.subtree(&site.path)
            .is_some_and(|n| n.tlist(site.new_leaf_type).last().is_some_and(TTree::is_leaf)),
        "site does not address a new leaf"
    );
    let mut node = tree;
    for step in &site.path {
        let list = node.tlist(step.ty);
        let Some(child) = list.get(step.pos) else {
            return false;
        };
        if list.get(step.pos + 1).is_some_and(|next| child > next) {
            return false;
        }
        node = child;
    }
    match node.tlist(site.new_leaf_type) {
        [] => false,
        [.., before, _] => before.is_leaf(),
        [_] => true,
    }
}

/// Path to the leaf that [`canonical_removal`] deletes: take the first
/// non-empty T-list, descend into its first non-leaf tree if any, otherwise
/// pick its last leaf.
pub fn canonical_removal_path(tree: &TTree) -> Option<Vec<Step>> {
    let mut path = Vec::new();
    let mut node = tree;
    loop {
        let list = node.tlists().next()?;
        match list.trees.iter().position(|t| !t.is_leaf()) {
            Some(pos) => {
                path.push(Step { ty: list.ty, pos });
                node = &list.trees[pos];
            }
            None => {
                path.push(Step { ty: list.ty, pos: list.trees.len() - 1 });
                return Some(path);
            }
        }
    }
}

fn remove_at(tree: &TTree, path: &[Step]) -> TTree {
    let (last, parent_path) = path.split_last().expect("non-empty path");
    let mut out = tree.clone();
    let parent = out.subtree_mut(parent_path).expect("valid path");
    let idx = parent.tlist_range(last.ty).start + last.pos;
    parent.children_mut().remove(idx);
    out
}

/// Deletes one terminal node, keeping a canonical tree canonical and never
/// increasing its rank under ≼.
pub fn canonical_removal(tree: &TTree) -> Result<TTree, SearchError> {
    let path = canonical_removal_path(tree).ok_or(SearchError::SingleNode)?;
    Ok(remove_at(tree, &path))
}

/// Path to the last node in preorder.
fn last_preorder_path(tree: &TTree) -> Vec<Step> {
    let mut path = Vec::new();
    let mut node = tree;
    while let Some(last) = node.children().last() {
        let pos = node.tlist(last.label()).len() - 1;
        path.push(Step { ty: last.label(), pos });
        node = last;
    }
    path
}

/// Lazy enumeration of every conforming tree, each exactly once.
pub fn enumerate_all(problem: &StructuralProblem, max_depth: Option<usize>) -> AllTrees<'_> {
    AllTrees {
        problem,
        bound: effective_bound(problem, max_depth),
        stack: vec![TTree::leaf(problem.root())],
    }
}

/// Lazy enumeration of the canonical conforming trees, one per isomorphism
/// class.
pub fn enumerate_canonical(problem: &StructuralProblem, max_depth: Option<usize>) -> CanonicalTrees<'_> {
    CanonicalTrees {
        problem,
        bound: effective_bound(problem, max_depth),
        stack: vec![TTree::leaf(problem.root())],
    }
}

pub struct AllTrees<'p> {
    problem: &'p StructuralProblem,
    bound: Option<usize>,
    stack: Vec<TTree>,
}

impl Iterator for AllTrees<'_> {
    type Item = TTree;

    fn next(&mut self) -> Option<TTree> {
        let tree = self.stack.pop()?;
        let children: Vec<TTree> = extension_sites_bounded(&tree, self.problem, self.bound)
            .into_iter()
            .filter_map(|site| {
                let ext = apply_extension(&tree, &site)?;
                (last_preorder_path(&ext) == new_leaf_path(&ext, &site)).then_some(ext)
            })
            .collect();
        self.stack.extend(children.into_iter().rev());
        Some(tree)
    }
}

pub struct CanonicalTrees<'p> {
    problem: &'p StructuralProblem,
    bound: Option<usize>,
    stack: Vec<TTree>,
}

impl Iterator for CanonicalTrees<'_> {
    type Item = TTree;

    fn next(&mut self) -> Option<TTree> {
        let tree = self.stack.pop()?;
        let children: Vec<TTree> = canonical_extensions_bounded(&tree, self.problem, self.bound)
            .into_iter()
            .filter(|(ext, site)| canonical_removal_path(ext).as_ref() == Some(&new_leaf_path(ext, site)))
            .map(|(ext, _)| ext)
            .collect();
        self.stack.extend(children.into_iter().rev());
        Some(tree)
    }
}
