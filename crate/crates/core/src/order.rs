//! The total order ≼ on T-trees with the same root type, canonicity and
//! canonical forms.
//!
//! Two trees are compared T-list by T-list in type order. A shorter T-list
//! is smaller; T-lists of equal length are compared element-wise with ≼.
//! A leaf is therefore the smallest tree of its type.
//!
//! A tree is canonical when every T-list is sorted by ≼ and every subtree is
//! canonical. The canonical tree of an isomorphism class is its ≼-minimum,
//! so canonical forms decide isomorphism.

use std::cmp::Ordering;

use thiserror::Error;

use crate::problem::TypeId;
use crate::tree::TTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeOrdering {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for TreeOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => TreeOrdering::Less,
            Ordering::Equal => TreeOrdering::Equal,
            Ordering::Greater => TreeOrdering::Greater,
        }
    }
}

impl From<TreeOrdering> for Ordering {
    fn from(o: TreeOrdering) -> Self {
        match o {
            TreeOrdering::Less => Ordering::Less,
            TreeOrdering::Equal => Ordering::Equal,
            TreeOrdering::Greater => Ordering::Greater,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("cannot compare trees rooted at different types ({0} and {1})")]
    RootMismatch(TypeId, TypeId),
}

/// Counts node pairs visited by comparisons.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ComparisonCount(pub u64);

/// Compares two same-rooted trees by ≼, ignoring their root labels.
///
/// Every call pairs one node of `a` with one node of `b`, so the work is
/// bounded by the size of the smaller tree.
fn cmp_below(a: &TTree, b: &TTree, count: &mut ComparisonCount) -> Ordering {
    count.0 += 1;
    let (xs, ys) = (a.children(), b.children());
    let (mut i, mut j) = (0, 0);
    loop {
        let ty = match (xs.get(i), ys.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(x), None) => x.label(),
            (None, Some(y)) => y.label(),
            (Some(x), Some(y)) => x.label().min(y.label()),
        };
        let la = xs[i..].iter().take_while(|c| c.label() == ty).count();
        let lb = ys[j..].iter().take_while(|c| c.label() == ty).count();
        match la.cmp(&lb) {
            Ordering::Equal => {}
            other => return other,
        }
        for (x, y) in xs[i..i + la].iter().zip(&ys[j..j + lb]) {
            match cmp_below(x, y, count) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        i += la;
        j += lb;
    }
}

/// Three-valued ≼. Errors when the roots have different types.
pub fn compare(a: &TTree, b: &TTree) -> Result<TreeOrdering, OrderError> {
    compare_counted(a, b, &mut ComparisonCount::default())
}

pub fn compare_counted(a: &TTree, b: &TTree, count: &mut ComparisonCount) -> Result<TreeOrdering, OrderError> {
    if a.label() != b.label() {
        return Err(OrderError::RootMismatch(a.label(), b.label()));
    }
    Ok(cmp_below(a, b, count).into())
}

/// `a ≼ b`.
pub fn less(a: &TTree, b: &TTree) -> Result<bool, OrderError> {
    compare(a, b).map(|o| o != TreeOrdering::Greater)
}

/// Trees of different root types are ordered by type, then by ≼.
///
/// This extension only serves to sort mixed collections; canonicity never
/// compares trees of different types.
impl Ord for TTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.label()
            .cmp(&other.label())
            .then_with(|| cmp_below(self, other, &mut ComparisonCount::default()))
    }
}

impl PartialOrd for TTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn is_canonical(tree: &TTree) -> bool {
    is_canonical_counted(tree, &mut ComparisonCount::default())
}

/// [`is_canonical`], accumulating the number of node comparisons.
pub fn is_canonical_counted(tree: &TTree, count: &mut ComparisonCount) -> bool {
    let mut stack = vec![tree];
    while let Some(node) = stack.pop() {
        for list in node.tlists() {
            for pair in list.trees.windows(2) {
                if cmp_below(&pair[0], &pair[1], count) == Ordering::Greater {
                    return false;
                }
            }
        }
        stack.extend(node.children().iter().filter(|c| !c.is_leaf()));
    }
    true
}

/// The ≼-minimal tree isomorphic to `tree`.
pub fn canonicalize(tree: &TTree) -> TTree {
    let mut out = tree.clone();
    canonicalize_in_place(&mut out);
    out
}

pub fn canonicalize_in_place(tree: &mut TTree) {
    let children = tree.children_mut();
    for c in children.iter_mut() {
        canonicalize_in_place(c);
    }
    // stable, and `Ord` groups by type first
    children.sort();
}

/// Isomorphism through canonical forms.
pub fn isomorphic(a: &TTree, b: &TTree) -> bool {
    a.label() == b.label() && a.node_count() == b.node_count() && canonicalize(a) == canonicalize(b)
}

/// Isomorphism by exhaustive matching of children, without using ≼.
///
/// Exponential in the worst case; meant for cross-checking small trees.
pub fn isomorphic_oracle(a: &TTree, b: &TTree) -> bool {
    if a.label() != b.label() || a.children().len() != b.children().len() {
        return false;
    }
    let ys = b.children();
    let mut used = vec![false; ys.len()];
    match_children(a.children(), ys, &mut used)
}

fn match_children(xs: &[TTree], ys: &[TTree], used: &mut [bool]) -> bool {
    let Some((x, rest)) = xs.split_first() else {
        return true;
    };
    for j in 0..ys.len() {
        if !used[j] && isomorphic_oracle(x, &ys[j]) {
            used[j] = true;
            if match_children(rest, ys, used) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}
