//! Monte Carlo estimates converging on the exact value.
//!
//! ```bash
//! cargo run -p dcr --release --example monte_carlo
//! ```

use dcr::fixtures::figure1;
use dcr::{enum_exact, monte_carlo};

fn main() {
    let net = figure1(0.5, 6);
    let exact = enum_exact(&net).unwrap();
    for samples in [1_000, 10_000, 100_000, 1_000_000] {
        let est = monte_carlo(&net, samples, 42);
        let z = (est.estimate - exact) / est.standard_error;
        println!(
            "{samples:>9} samples: {:.6} ± {:.6}  (z = {z:+.2})",
            est.estimate, est.standard_error
        );
    }
    println!("exact: {exact}");
}
