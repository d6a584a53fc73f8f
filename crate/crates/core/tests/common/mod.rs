//! Test oracles that do not go through the search or canonical-form code.

#![allow(dead_code)]

use std::collections::HashSet;

use itertools::Itertools;
use rand::Rng;
use ttree::{compare, StructuralProblem, TTree, TreeOrdering, TypeId};

pub const ABCD: &str = include_str!("../data/abcd.prob");
pub const PC: &str = include_str!("../data/pc.prob");
pub const PC_SOLUTION: &str = include_str!("../data/pc_solution.cfg");

pub fn abcd() -> StructuralProblem {
    StructuralProblem::parse(ABCD).unwrap()
}

/// Every tree rooted at `ty`, built as a product over component slots of all
/// sequences (with repetition) of admissible subtrees.
pub fn all_trees_brute(problem: &StructuralProblem, ty: TypeId) -> Vec<TTree> {
    let mut per_slot: Vec<Vec<(TypeId, Vec<TTree>)>> = Vec::new();
    for slot in problem.component_types(ty) {
        let subtrees = all_trees_brute(problem, slot.component);
        let mut sequences = Vec::new();
        for len in 0..=slot.max_cardinality as usize {
            if len == 0 {
                sequences.push((slot.component, Vec::new()));
                continue;
            }
            for seq in std::iter::repeat_n(subtrees.iter(), len).multi_cartesian_product() {
                sequences.push((slot.component, seq.into_iter().cloned().collect()));
            }
        }
        per_slot.push(sequences);
    }
    if per_slot.is_empty() {
        return vec![TTree::leaf(ty)];
    }
    per_slot
        .into_iter()
        .multi_cartesian_product()
        .map(|lists| TTree::from_tlists(ty, lists))
        .collect()
}

pub fn all_trees_of(problem: &StructuralProblem) -> Vec<TTree> {
    all_trees_brute(problem, problem.root())
}

/// All trees reachable from `tree` by permuting the members of T-lists, at
/// every node.
pub fn permutation_class(tree: &TTree) -> HashSet<TTree> {
    let mut per_list: Vec<Vec<(TypeId, Vec<TTree>)>> = Vec::new();
    for list in tree.tlists() {
        let classes: Vec<Vec<TTree>> = list.trees.iter().map(|t| permutation_class(t).into_iter().collect()).collect();
        let mut arrangements = Vec::new();
        for order in (0..classes.len()).permutations(classes.len()) {
            for pick in order.iter().map(|&i| classes[i].iter()).multi_cartesian_product() {
                arrangements.push((list.ty, pick.into_iter().cloned().collect()));
            }
        }
        per_list.push(arrangements);
    }
    if per_list.is_empty() {
        return HashSet::from([tree.clone()]);
    }
    per_list
        .into_iter()
        .multi_cartesian_product()
        .map(|lists| TTree::from_tlists(tree.label(), lists))
        .collect()
}

/// ≼-minimum of a non-empty set of same-rooted trees.
pub fn minimum<'a>(trees: impl IntoIterator<Item = &'a TTree>) -> TTree {
    trees
        .into_iter()
        .reduce(|best, t| if compare(t, best).unwrap() == TreeOrdering::Less { t } else { best })
        .expect("non-empty")
        .clone()
}

/// Random tree over types A=0, B=1, C=2 where A and B nodes may hold any
/// number of B and C children. Nodes attach to a uniformly chosen eligible
/// node, so depth grows like log n.
pub fn random_tree(rng: &mut impl Rng, nodes: usize) -> TTree {
    assert!(nodes >= 1);
    let mut labels = vec![0u32];
    let mut parent = vec![usize::MAX];
    let mut eligible = vec![0usize];
    for i in 1..nodes {
        let p = eligible[rng.gen_range(0..eligible.len())];
        let label = rng.gen_range(1..=2u32);
        labels.push(label);
        parent.push(p);
        if label == 1 {
            eligible.push(i);
        }
    }
    let mut children: Vec<Vec<TTree>> = vec![Vec::new(); nodes];
    let mut built: Vec<Option<TTree>> = vec![None; nodes];
    for i in (0..nodes).rev() {
        let mut kids = std::mem::take(&mut children[i]);
        kids.reverse();
        let tree = TTree::new(TypeId(labels[i]), kids);
        if i == 0 {
            built[0] = Some(tree);
        } else {
            children[parent[i]].push(tree);
        }
    }
    built[0].take().unwrap()
}
