//! Ground-truth computations independent of the factorization engine.
//!
//! * [`enum_exact`]: sum over all `2^m` link states.
//! * [`inclusion_exclusion`]: union probability over hop-bounded minpaths.
//! * [`monte_carlo`]: seeded sampling estimate with its standard error.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{HopGraph, LinkId, Network, NodeId, SystemState};

/// Largest link count [`enum_exact`] accepts.
pub const ENUM_LINK_LIMIT: usize = 25;
/// Largest minpath count [`inclusion_exclusion`] accepts.
pub const IE_MINPATH_LIMIT: usize = 30;
/// Samples drawn from one random stream in [`monte_carlo`].
pub const MC_BLOCK: u64 = 1 << 16;

/// Exact reliability by enumerating every link state in Gray-code order.
pub fn enum_exact(net: &Network) -> Result<f64> {
    let m = net.link_count();
    if m > ENUM_LINK_LIMIT {
        return Err(Error::TooManyLinks {
            links: m,
            limit: ENUM_LINK_LIMIT,
        });
    }
    let graph = HopGraph::new(net, |_| true);
    let p: Vec<f64> = net.links().iter().map(|l| l.reliability).collect();
    let (s, t, d) = (net.source(), net.terminal(), net.diameter());
    let mut total = 0.0;
    for i in 0u64..(1u64 << m) {
        let state = i ^ (i >> 1);
        let up = |j: usize| state >> j & 1 == 1;
        if !graph.connects_within_masked(s, t, d, up) {
            continue;
        }
        let weight: f64 = (0..m).map(|j| if up(j) { p[j] } else { 1.0 - p[j] }).product();
        total += weight;
    }
    Ok(total)
}

/// Slow reference for [`enum_exact`] going through [`Network::phi`].
pub fn enum_exact_via_phi(net: &Network) -> Result<f64> {
    let m = net.link_count();
    if m > ENUM_LINK_LIMIT {
        return Err(Error::TooManyLinks {
            links: m,
            limit: ENUM_LINK_LIMIT,
        });
    }
    let mut total = 0.0;
    for bits in 0u64..(1u64 << m) {
        let mut j = 0;
        let state = SystemState::from_fn(net, |_| {
            j += 1;
            bits >> (j - 1) & 1 == 1
        });
        if net.phi(&state)? {
            total += net
                .links()
                .iter()
                .map(|l| {
                    if state.up[&l.id] {
                        l.reliability
                    } else {
                        1.0 - l.reliability
                    }
                })
                .product::<f64>();
        }
    }
    Ok(total)
}

/// Link sets of the simple `s`-`t` paths of at most `d` hops.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinpathSet {
    pub paths: Vec<BTreeSet<LinkId>>,
}

impl MinpathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Every link used by at least one minpath.
    pub fn links(&self) -> BTreeSet<LinkId> {
        self.paths.iter().flatten().copied().collect()
    }
}

/// Depth-first enumeration of every simple `s`-`t` path within the hop
/// budget; parallel links give distinct paths. Dominated sets are dropped.
pub fn enumerate_minpaths(net: &Network) -> MinpathSet {
    let size = net.nodes().iter().next_back().map_or(0, |n| n + 1);
    let mut adj: Vec<Vec<(NodeId, LinkId)>> = vec![Vec::new(); size];
    for l in net.links().iter().filter(|l| !l.is_self_loop()) {
        adj[l.endpoints.0].push((l.endpoints.1, l.id));
        adj[l.endpoints.1].push((l.endpoints.0, l.id));
    }

    struct Search<'a> {
        adj: &'a [Vec<(NodeId, LinkId)>],
        target: NodeId,
        budget: usize,
        on_path: Vec<bool>,
        links: Vec<LinkId>,
        found: Vec<BTreeSet<LinkId>>,
    }
    impl Search<'_> {
        fn visit(&mut self, v: NodeId) {
            if v == self.target {
                self.found.push(self.links.iter().copied().collect());
                return;
            }
            if self.links.len() == self.budget {
                return;
            }
            for i in 0..self.adj[v].len() {
                let (w, id) = self.adj[v][i];
                if self.on_path[w] {
                    continue;
                }
                self.on_path[w] = true;
                self.links.push(id);
                self.visit(w);
                self.links.pop();
                self.on_path[w] = false;
            }
        }
    }

    let mut search = Search {
        adj: &adj,
        target: net.terminal(),
        budget: net.diameter(),
        on_path: vec![false; size],
        links: Vec::new(),
        found: Vec::new(),
    };
    search.on_path[net.source()] = true;
    search.visit(net.source());

    let mut found = search.found;
    found.sort_by_key(|p| (p.len(), p.iter().copied().collect::<Vec<_>>()));
    found.dedup();
    let mut paths: Vec<BTreeSet<LinkId>> = Vec::new();
    for p in found {
        if !paths.iter().any(|q| q.is_subset(&p)) {
            paths.push(p);
        }
    }
    MinpathSet { paths }
}

/// Union probability of the minpath events by inclusion-exclusion.
///
/// Subsets of minpaths with the same link union contribute the same
/// product, so the signed counts are accumulated per union first; this is
/// the same alternating sum with its identical terms collected.
pub fn inclusion_exclusion(net: &Network) -> Result<f64> {
    let minpaths = enumerate_minpaths(net);
    inclusion_exclusion_over(net, &minpaths)
}

pub fn inclusion_exclusion_over(net: &Network, minpaths: &MinpathSet) -> Result<f64> {
    if minpaths.len() > IE_MINPATH_LIMIT {
        return Err(Error::TooManyMinpaths {
            count: minpaths.len(),
            limit: IE_MINPATH_LIMIT,
        });
    }
    let used: Vec<LinkId> = minpaths.links().into_iter().collect();
    let words = used.len().div_ceil(64).max(1);
    let mask_of = |path: &BTreeSet<LinkId>| {
        let mut mask = vec![0u64; words];
        for id in path {
            let bit = used.binary_search(id).unwrap();
            mask[bit / 64] |= 1 << (bit % 64);
        }
        mask
    };

    // coefficient of P(all links in `mask` up), summed over subsets I with
    // that union: (-1)^(|I|-1)
    let mut terms: HashMap<Vec<u64>, i64> = HashMap::new();
    for path in &minpaths.paths {
        let mask = mask_of(path);
        let mut next = terms.clone();
        for (union, coeff) in &terms {
            let joined: Vec<u64> = union.iter().zip(&mask).map(|(a, b)| a | b).collect();
            *next.entry(joined).or_insert(0) -= coeff;
        }
        *next.entry(mask).or_insert(0) += 1;
        next.retain(|_, c| *c != 0);
        terms = next;
    }

    let p: Vec<f64> = used
        .iter()
        .map(|&id| net.link(id).map(|l| l.reliability))
        .collect::<Result<_>>()?;
    let mut ordered: Vec<_> = terms.into_iter().collect();
    ordered.sort();
    Ok(ordered
        .iter()
        .map(|(mask, coeff)| {
            let prob: f64 = (0..used.len())
                .filter(|&b| mask[b / 64] >> (b % 64) & 1 == 1)
                .map(|b| p[b])
                .product();
            *coeff as f64 * prob
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub standard_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Sampling estimate. Samples come in blocks of [`MC_BLOCK`]; block `k`
/// draws from ChaCha8 seeded with `seed` on stream `k`, so a given
/// `(seed, samples)` always yields the same estimate.
pub fn monte_carlo(net: &Network, samples: u64, seed: u64) -> McEstimate {
    assert!(samples >= 1, "monte_carlo needs at least one sample");
    let graph = HopGraph::new(net, |_| true);
    let p: Vec<f64> = net.links().iter().map(|l| l.reliability).collect();
    let (s, t, d) = (net.source(), net.terminal(), net.diameter());
    let mut up = vec![false; p.len()];
    let mut hits = 0u64;
    let mut drawn = 0u64;
    let mut block = 0u64;
    while drawn < samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(block);
        let count = MC_BLOCK.min(samples - drawn);
        for _ in 0..count {
            for (slot, &pj) in up.iter_mut().zip(&p) {
                *slot = rng.gen::<f64>() < pj;
            }
            if graph.connects_within_masked(s, t, d, |j| up[j]) {
                hits += 1;
            }
        }
        drawn += count;
        block += 1;
    }
    let estimate = hits as f64 / samples as f64;
    McEstimate {
        estimate,
        standard_error: (estimate * (1.0 - estimate) / samples as f64).sqrt(),
        samples,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure1, series};

    #[test]
    fn enum_small_cases() {
        assert_eq!(enum_exact(&series(&[0.3], 1)).unwrap(), 0.3);
        assert!((enum_exact(&figure1(0.5, 6)).unwrap() - 0.265625).abs() < 1e-15);
        assert!((enum_exact(&figure1(0.5, 2)).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(enum_exact(&figure1(0.5, 0)).unwrap(), 0.0);
        assert_eq!(enum_exact(&figure1(1.0, 3)).unwrap(), 1.0);
        assert_eq!(enum_exact(&figure1(1.0, 1)).unwrap(), 0.0);
    }

    #[test]
    fn enum_matches_phi_reference() {
        let g = figure1(0.3, 6);
        assert!((enum_exact(&g).unwrap() - enum_exact_via_phi(&g).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn enum_guard() {
        let g = series(&[0.5; 26], 26);
        assert!(matches!(enum_exact(&g), Err(Error::TooManyLinks { links: 26, .. })));
    }

    #[test]
    fn minpaths_figure1() {
        let set = |ids: &[usize]| ids.iter().copied().collect::<BTreeSet<_>>();
        let d6 = enumerate_minpaths(&figure1(0.5, 6));
        assert_eq!(d6.paths, vec![set(&[0, 8]), set(&[0, 7, 4, 5, 6])]);
        let d7 = enumerate_minpaths(&figure1(0.5, 7));
        assert_eq!(d7.len(), 3);
        assert!(d7.paths.contains(&set(&[0, 1, 2, 3, 4, 5, 6])));
        assert!(enumerate_minpaths(&figure1(0.5, 1)).is_empty());
    }

    #[test]
    fn inclusion_exclusion_cases() {
        let ie = inclusion_exclusion(&figure1(0.5, 6)).unwrap();
        assert_eq!(ie, 0.5f64.powi(2) + 0.5f64.powi(5) - 0.5f64.powi(6));
        assert_eq!(ie, 0.265625);
        assert!((inclusion_exclusion(&series(&[0.3, 0.4], 2)).unwrap() - 0.12).abs() < 1e-16);
        assert_eq!(inclusion_exclusion(&series(&[0.3, 0.4], 1)).unwrap(), 0.0);
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let g = figure1(0.5, 6);
        let a = monte_carlo(&g, 5000, 11);
        assert_eq!(a, monte_carlo(&g, 5000, 11));
        assert_ne!(a.estimate, monte_carlo(&g, 5000, 12).estimate);
        let sure = monte_carlo(&figure1(1.0, 2), 100, 3);
        assert_eq!((sure.estimate, sure.standard_error), (1.0, 0.0));
    }
}
