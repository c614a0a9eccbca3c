//! Small reference topologies used by the examples and tests.

use crate::network::{Link, Network};

/// Source of the sample graph of [`figure1`].
pub const FIG1_S: usize = 0;
/// Terminal of the sample graph of [`figure1`].
pub const FIG1_T: usize = 7;

/// The eight-node sample graph with an irrelevant link `{1,2}` at `d = 6`.
///
/// Nodes are `s = 0`, `1..=6`, `t = 7`. Link ids follow the listing
/// `s-1, 1-2, 2-3, 3-4, 4-5, 5-6, 6-t, 1-4, 1-t`, so `{1,2}` is link 1,
/// `{2,3}` is link 2 and `{1,t}` is link 8.
pub fn figure1(p: f64, diameter: usize) -> Network {
    let pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 4), (1, 7)];
    let links = pairs
        .iter()
        .enumerate()
        .map(|(id, &(u, v))| Link::new(id, u, v, p))
        .collect();
    Network::new(0..8, links, FIG1_S, FIG1_T, diameter).expect("valid fixture")
}

/// Simple path `0 - 1 - ... - len` with the given reliabilities.
pub fn series(reliabilities: &[f64], diameter: usize) -> Network {
    let n = reliabilities.len();
    let links = reliabilities
        .iter()
        .enumerate()
        .map(|(i, &p)| Link::new(i, i, i + 1, p))
        .collect();
    Network::new(0..=n, links, 0, n, diameter).expect("valid fixture")
}
