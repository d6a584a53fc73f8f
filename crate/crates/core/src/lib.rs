//! Canonical forms for the structural part of configuration problems.
//!
//! A configuration built only from composition relations is a tree of
//! typed objects. Forgetting the object numbers gives a *T-tree*, a tree
//! labelled by types whose children are grouped by type into *T-lists*.
//! Permuting the trees inside a T-list gives an isomorphic configuration;
//! this crate picks one representative per isomorphism class and generates
//! only those.
//!
//! ```
//! use ttree::{canonicalize, is_canonical, parse_ttree, render_ttree, StructuralProblem};
//!
//! let problem = StructuralProblem::parse(
//!     "root A\ntype A\ntype B\ntype C\ntype D\n\
//!      rel A B max 2\nrel A C max 2\nrel B D max 2\n",
//! )?;
//! let tree = parse_ttree("A(B(D),B)", problem.names())?;
//! assert!(!is_canonical(&tree));
//! assert_eq!(render_ttree(&canonicalize(&tree), problem.names()), "A(B,B(D))");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Modules:
//!
//! * [`problem`]: structural problems and their file format;
//! * [`tree`] and [`syntax`]: T-trees and their text form;
//! * [`config`]: object-labelled configurations and the translation to T-trees;
//! * [`order`]: the order ≼, canonicity and canonical forms;
//! * [`search`]: unit extensions, canonical removal and the enumerators;
//! * [`counting`]: exact counts for the chain family of problems.

pub mod config;
pub mod counting;
pub mod order;
pub mod problem;
pub mod search;
pub mod syntax;
pub mod tree;

pub use config::{config_to_ttree, ttree_to_config, ConfigError, ConfigTree, ObjectId};
pub use counting::{
    approx_canonical, comparison_table, count_all, count_canonical, CountTable, Discrepancy, PublishedValue,
};
pub use order::{
    canonicalize, compare, is_canonical, is_canonical_counted, isomorphic, isomorphic_oracle, less,
    ComparisonCount, OrderError, TreeOrdering,
};
pub use problem::{
    validate_problem, ComponentSlot, ProblemError, RawProblem, RelationSchema, StructuralProblem, TypeId,
    TypeNames, TypeSymbol,
};
pub use search::{
    apply_extension, canonical_removal, canonical_unit_extensions, enumerate_all, enumerate_canonical,
    extension_sites, is_canonical_incremental, unit_extensions, ExtensionSite, SearchError,
};
pub use syntax::{parse_ttree, parse_ttree_free, render_ttree, ParseError};
pub use tree::{ttree_conforms, ConformError, Step, TList, TTree};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/problems.md")]
    mod problems {}
    #[doc = include_str!("../../../book/src/ordering.md")]
    mod ordering {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
