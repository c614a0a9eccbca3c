//! Shortest node-disjoint path pairs behind the exact irrelevance test.
//!
//! For every link `{x, y}` the solver returns a path from one endpoint to
//! the source and a path from the other endpoint to the terminal, sharing
//! no node, with the smallest total length. The link is relevant for `d`
//! exactly when that total is at most `d - 1`.
//!
//! ```bash
//! cargo run -p dcr --example disjoint_pair
//! ```

use dcr::fixtures::figure1;
use dcr::min_disjoint_pair;

fn main() {
    let net = figure1(0.9, 6);
    for link in net.links() {
        let pair = min_disjoint_pair(&net, link.id).expect("link exists");
        match pair.length_sum {
            Some(sum) => println!(
                "link {} {:?}: {:?} + {:?} = {sum} hops, relevant from d = {}",
                link.id,
                link.endpoints,
                pair.path1,
                pair.path2,
                sum + 1
            ),
            None => println!(
                "link {} {:?}: no disjoint pair, never relevant",
                link.id, link.endpoints
            ),
        }
    }
}
