//! Reductions applied to fixpoint, with the trace that reproduces them.
//!
//! ```bash
//! cargo run -p dcr --example reduction_trace
//! ```

use dcr::fixtures::figure1;
use dcr::reductions::{apply_all, Rule};
use dcr::{enum_exact, write_network};

fn main() {
    let net = figure1(0.9, 6);
    let (reduced, trace) = apply_all(&net);
    for step in &trace.steps {
        println!("{step}");
    }
    println!("\nreduced network:\n{}", write_network(&reduced));

    let before = enum_exact(&net).unwrap();
    let after = trace.total_factor() * enum_exact(&reduced).unwrap();
    println!("R before {before:.15}");
    println!("factor x R after {after:.15}");
    assert_eq!(trace.replay(&net).unwrap(), reduced);

    // Single rules in isolation.
    for rule in Rule::ALL {
        let (_, t) = rule.apply(&net);
        println!("{rule:>17}: {} step(s)", t.steps.len());
    }
}
