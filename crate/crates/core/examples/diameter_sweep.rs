//! Reliability of one topology as the hop budget grows, read from a
//! network file (defaults to the bundled sample graph).
//!
//! ```bash
//! cargo run -p dcr --example diameter_sweep -- crates/core/fixtures/fig1.net
//! ```

use dcr::{factor, parse_network_with_diameter};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/fig1.net").to_string());
    let text = std::fs::read_to_string(&path).expect("readable network file");
    let base = parse_network_with_diameter(&text, Some(0)).expect("valid network file");
    let max = base.nodes().len();
    for d in 0..=max {
        let out = factor(&base.with_diameter(d));
        println!("d={d:>2}  R={:.12}  calls={}", out.reliability, out.recursion_nodes);
    }
}
