//! Irrelevance detectors on the eight-node sample graph.
//!
//! Prints, for d = 5, 6 and 7, which links each of the three distance
//! conditions catches and what the exact disjoint-path test says.
//!
//! ```bash
//! cargo run -p dcr --example irrelevant_links
//! ```

use dcr::fixtures::figure1;
use dcr::sweep;

fn main() {
    let names = ["s-1", "1-2", "2-3", "3-4", "4-5", "5-6", "6-t", "1-4", "1-t"];
    for d in [5, 6, 7] {
        let net = figure1(0.9, d);
        println!("d = {d}");
        println!(
            "  {:<5} {:>5} {:>5} {:>5} {:>6} {:>9}",
            "link", "cond1", "cond2", "cond3", "exact", "threshold"
        );
        for r in sweep(&net) {
            let threshold = r.relevance_threshold.map_or("never".to_string(), |t| t.to_string());
            println!(
                "  {:<5} {:>5} {:>5} {:>5} {:>6} {:>9}",
                names[r.link_id], r.cond1, r.cond2, r.cond3, r.exact_irrelevant, threshold
            );
        }
    }
}
