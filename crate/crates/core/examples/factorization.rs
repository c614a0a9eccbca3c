//! The factorization engine against the three oracles.
//!
//! ```bash
//! cargo run -p dcr --example factorization
//! ```

use dcr::factor::{factor_with, FactorOptions};
use dcr::fixtures::figure1;
use dcr::{enum_exact, factor, inclusion_exclusion, monte_carlo};

fn main() {
    for d in 2..=8 {
        let net = figure1(0.5, d);
        let out = factor(&net);
        let bare = factor_with(
            &net,
            &FactorOptions {
                prune_irrelevant: false,
                reductions: false,
                ..Default::default()
            },
        );
        let mc = monte_carlo(&net, 100_000, 7);
        println!(
            "d={d}: factor {:.12} (calls {}, plain recursion {}), enum {:.12}, ie {:.12}, mc {:.4}±{:.4}",
            out.reliability,
            out.recursion_nodes,
            bare.recursion_nodes,
            enum_exact(&net).unwrap(),
            inclusion_exclusion(&net).unwrap(),
            mc.estimate,
            mc.standard_error
        );
    }
}
