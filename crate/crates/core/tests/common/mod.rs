//! Shared generators and brute-force references for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dcr::{Link, Network, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITE_SEED: u64 = 0x5eed_d1a3;
pub const SUITE_SIZE: usize = 500;

/// Connected multigraph with 2..=8 nodes and at most 12 links. Reliabilities
/// are uniform in [0.05, 0.95] and the diameter uniform in 1..=nodes.
pub fn random_network(rng: &mut impl Rng) -> Network {
    let n = rng.gen_range(2..=8usize);
    let m = rng.gen_range(n - 1..=12usize);
    let mut pairs = Vec::with_capacity(m);
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    while pairs.len() < m {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let links = pairs
        .into_iter()
        .enumerate()
        .map(|(id, (u, v))| Link::new(id, u, v, rng.gen_range(0.05..=0.95)))
        .collect();
    let s = rng.gen_range(0..n);
    let t = (s + rng.gen_range(1..n)) % n;
    let d = rng.gen_range(1..=n);
    Network::new(0..n, links, s, t, d).unwrap()
}

pub fn network_from_seed(seed: u64) -> Network {
    random_network(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn suite() -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    (0..SUITE_SIZE).map(|_| random_network(&mut rng)).collect()
}

/// The same network with roughly a third of its links made perfect, as
/// the recursion produces them.
pub fn partly_perfect(net: &Network, seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = net.clone();
    for l in net.links() {
        if rng.gen_bool(1.0 / 3.0) {
            out = out.make_perfect(l.id).unwrap();
        }
    }
    out
}

/// Every simple path from `a` to `b` avoiding `avoid`, as node sequences.
/// Ignores hop budgets and link multiplicity.
pub fn simple_paths(net: &Network, a: NodeId, b: NodeId, avoid: &BTreeSet<NodeId>) -> Vec<Vec<NodeId>> {
    fn go(net: &Network, b: NodeId, avoid: &BTreeSet<NodeId>, path: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        let v = *path.last().unwrap();
        if v == b {
            out.push(path.clone());
            return;
        }
        let next: BTreeSet<NodeId> = net.incident(v).filter_map(|l| l.opposite(v)).collect();
        for w in next {
            if path.contains(&w) || avoid.contains(&w) {
                continue;
            }
            path.push(w);
            go(net, b, avoid, path, out);
            path.pop();
        }
    }
    if avoid.contains(&a) || avoid.contains(&b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(net, b, avoid, &mut vec![a], &mut out);
    out
}

/// Minimum `l(P1) + l(P2)` over node-disjoint pairs joining the endpoints of
/// the link to `{s, t}`, by exhaustive search.
pub fn brute_disjoint_sum(net: &Network, link_id: usize) -> Option<usize> {
    let (x, y) = net.link(link_id).unwrap().endpoints;
    if x == y {
        return None;
    }
    let (s, t) = (net.source(), net.terminal());
    let mut best: Option<usize> = None;
    for (a, b) in [(x, y), (y, x)] {
        // a -> s, b -> t
        for p1 in simple_paths(net, a, s, &BTreeSet::from([b, t])) {
            let used: BTreeSet<NodeId> = p1.iter().copied().collect();
            for p2 in simple_paths(net, b, t, &used) {
                let sum = p1.len() - 1 + p2.len() - 1;
                best = Some(best.map_or(sum, |cur| cur.min(sum)));
            }
        }
    }
    best
}

/// Classical connectivity of the links accepted by `up`.
pub fn connected(net: &Network, up: impl Fn(usize) -> bool) -> bool {
    let mut reach = BTreeSet::from([net.source()]);
    loop {
        let before = reach.len();
        for l in net.links() {
            if up(l.id) && (reach.contains(&l.endpoints.0) || reach.contains(&l.endpoints.1)) {
                reach.insert(l.endpoints.0);
                reach.insert(l.endpoints.1);
            }
        }
        if reach.len() == before {
            return reach.contains(&net.terminal());
        }
    }
}
