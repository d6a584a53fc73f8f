//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.
//!
//! Exit codes: 0 on success, 1 when a check or isomorphism query answers
//! negatively, 2 on usage, parse or file errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use ttree::counting::{approx_canonical, comparison_table, count_all, count_canonical};
use ttree::syntax::parse_ttrees_free;
use ttree::{
    canonical_removal, canonicalize, config_to_ttree, enumerate_all, enumerate_canonical, is_canonical,
    isomorphic, parse_ttree, parse_ttree_free, render_ttree, ttree_conforms, ttree_to_config, ConfigTree,
    StructuralProblem, TTree, TypeNames,
};

#[derive(Debug, Parser)]
#[command(name = "ttree", version, about = "Canonical T-trees of structural configuration problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count all and canonical k-connected chain trees of height at most P.
    Count {
        #[arg(long)]
        depth: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        branch: u32,
        /// Also print the Stirling estimate of the canonical count.
        #[arg(long)]
        approx: bool,
    },
    /// Table of both counts for p in 1..=P and k in 1..=K.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        pmax: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        kmax: u32,
        #[arg(long)]
        csv: bool,
    },
    /// Enumerate the trees of a problem, one per line.
    Enum {
        problem: PathBuf,
        /// Only canonical trees, one per isomorphism class.
        #[arg(long)]
        canonical: bool,
        /// Sort the output by type, then by the tree order.
        #[arg(long)]
        sorted: bool,
        /// Maximal tree height; required for cyclic problems.
        #[arg(long)]
        max_depth: Option<usize>,
        /// Stop after this many lines.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check a tree against a problem and test its canonicity.
    Check {
        #[arg(long)]
        problem: PathBuf,
        tree: String,
    },
    /// Print the canonical form of a tree.
    Canon {
        tree: String,
        #[arg(long)]
        problem: Option<PathBuf>,
    },
    /// Test whether two trees are isomorphic.
    Iso {
        first: String,
        second: String,
        #[arg(long)]
        problem: Option<PathBuf>,
    },
    /// Apply canonical removal of a terminal node.
    Removal {
        tree: String,
        #[arg(long)]
        problem: Option<PathBuf>,
    },
    /// Translate a configuration to its T-tree and back.
    Roundtrip {
        config: PathBuf,
        #[arg(long)]
        problem: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_problem(path: &Path, max_depth: Option<usize>) -> Result<StructuralProblem> {
    let text = read(path)?;
    StructuralProblem::parse_with_bound(&text, max_depth).with_context(|| format!("invalid problem {}", path.display()))
}

/// Parses a tree with the problem's type table, or an alphabetical one.
fn load_tree(text: &str, problem: Option<&Path>) -> Result<(TTree, TypeNames)> {
    match problem {
        Some(path) => {
            let problem = load_problem(path, None)?;
            let tree = parse_ttree(text, problem.names()).context("invalid tree")?;
            Ok((tree, problem.names().clone()))
        }
        None => parse_ttree_free(text).context("invalid tree"),
    }
}

/// Runs one command line (including the program name) and returns the exit
/// status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Count { depth, branch, approx } => {
            write!(out, "N={} M={}", count_all(depth, branch), count_canonical(depth, branch))?;
            if approx {
                if depth == 0 {
                    bail!("the estimate needs --depth >= 1");
                }
                write!(out, " approx={:.1}", approx_canonical(depth, branch))?;
            }
            writeln!(out)?;
            Ok(0)
        }
        Command::Table { pmax, kmax, csv } => {
            let table = comparison_table(pmax, kmax);
            out.write_all(if csv { table.to_csv() } else { table.to_text() }.as_bytes())?;
            Ok(0)
        }
        Command::Enum { problem, canonical, sorted, max_depth, limit } => {
            let problem = load_problem(&problem, max_depth)?;
            let trees: Box<dyn Iterator<Item = TTree>> = if canonical {
                Box::new(enumerate_canonical(&problem, max_depth))
            } else {
                Box::new(enumerate_all(&problem, max_depth))
            };
            let limit = limit.unwrap_or(usize::MAX);
            let mut emit = |t: &TTree| writeln!(out, "{}", render_ttree(t, problem.names()));
            if sorted {
                let mut all: Vec<TTree> = trees.collect();
                all.sort();
                all.iter().take(limit).try_for_each(&mut emit)?;
            } else {
                trees.take(limit).try_for_each(|t| emit(&t))?;
            }
            Ok(0)
        }
        Command::Check { problem, tree } => {
            let problem = load_problem(&problem, None)?;
            let tree = parse_ttree(&tree, problem.names()).context("invalid tree")?;
            if !ttree_conforms(&tree, &problem)? {
                writeln!(out, "non-conforming")?;
                return Ok(1);
            }
            if is_canonical(&tree) {
                writeln!(out, "canonical")?;
                Ok(0)
            } else {
                writeln!(out, "non-canonical")?;
                Ok(1)
            }
        }
        Command::Canon { tree, problem } => {
            let (tree, names) = load_tree(&tree, problem.as_deref())?;
            writeln!(out, "{}", render_ttree(&canonicalize(&tree), &names))?;
            Ok(0)
        }
        Command::Iso { first, second, problem } => {
            let (a, b) = match problem {
                Some(path) => {
                    let problem = load_problem(&path, None)?;
                    (
                        parse_ttree(&first, problem.names()).context("invalid first tree")?,
                        parse_ttree(&second, problem.names()).context("invalid second tree")?,
                    )
                }
                None => {
                    let (mut trees, _) = parse_ttrees_free(&[&first, &second]).context("invalid tree")?;
                    let b = trees.pop().expect("two trees");
                    (trees.pop().expect("two trees"), b)
                }
            };
            if isomorphic(&a, &b) {
                writeln!(out, "isomorphic")?;
                Ok(0)
            } else {
                writeln!(out, "not isomorphic")?;
                Ok(1)
            }
        }
        Command::Removal { tree, problem } => {
            let (tree, names) = load_tree(&tree, problem.as_deref())?;
            writeln!(out, "{}", render_ttree(&canonical_removal(&tree)?, &names))?;
            Ok(0)
        }
        Command::Roundtrip { config, problem } => {
            let text = read(&config)?;
            let (cfg, names) = match problem {
                Some(path) => {
                    let problem = load_problem(&path, None)?;
                    let cfg = ConfigTree::parse(&text, problem.names()).context("invalid configuration")?;
                    (cfg, problem.names().clone())
                }
                None => ConfigTree::parse_free(&text).context("invalid configuration")?,
            };
            let tree = config_to_ttree(&cfg);
            let rebuilt = ttree_to_config(&tree);
            if config_to_ttree(&rebuilt) != tree {
                bail!("round trip changed the tree");
            }
            writeln!(out, "{}", render_ttree(&tree, &names))?;
            out.write_all(rebuilt.to_config_file(&names).as_bytes())?;
            Ok(0)
        }
    }
}
