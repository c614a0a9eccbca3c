//! Exact source-terminal diameter-constrained reliability.
//!
//! Links of a multigraph fail independently; the diameter-constrained
//! reliability `R^d` is the probability that the surviving links contain a
//! path of at most `d` hops from the source to the terminal.
//!
//! The main entry point is [`factor`], a conditioning recursion that makes
//! one link perfect or deletes it per branch, and between branches removes
//! irrelevant links (detected exactly through a shortest pair of disjoint
//! paths) and applies reliability-preserving [`reductions`]. The [`oracles`]
//! module computes the same quantity independently, by state enumeration,
//! inclusion-exclusion over minpaths and Monte Carlo.
//!
//! Runnable examples live in `examples/`:
//!
//! ```text
//! cargo run -p dcr --example irrelevant_links   # detectors on the sample graph
//! cargo run -p dcr --example disjoint_pair      # shortest disjoint path pairs
//! cargo run -p dcr --example factorization      # engine vs oracles
//! cargo run -p dcr --example reduction_trace    # reductions step by step
//! cargo run -p dcr --example diameter_sweep     # reliability as d grows
//! cargo run -p dcr --example monte_carlo        # sampling cross-check
//! cargo run -p dcr --example network_file       # file format round trip
//! ```
//!
//! ```
//! use dcr::{factor, fixtures::figure1};
//!
//! let net = figure1(0.5, 6);
//! assert!((factor(&net).reliability - 0.265625).abs() < 1e-12);
//! ```

pub mod disjoint;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod format;
pub mod irrelevance;
pub mod network;
pub mod oracles;
pub mod reductions;
pub mod report;

pub use disjoint::{min_disjoint_pair, DisjointPair};
pub use error::{Error, ParseError, Result};
pub use factor::{factor, factor_with, has_perfect_path, pivot_select, FactorOptions, FactorOutcome, TieBreak};
pub use format::{parse_network, parse_network_with_diameter, write_network};
pub use irrelevance::{exact_irrelevant, sufficient_condition, sweep, IrrelevanceReport, SufficientCondition};
pub use network::{Link, LinkId, Network, NodeId, SystemState};
pub use oracles::{enum_exact, enumerate_minpaths, inclusion_exclusion, monte_carlo, McEstimate, MinpathSet};
pub use reductions::{apply_all, ReductionTrace, Rule};
