//! Reliability-preserving graph simplifications.
//!
//! Each rule maps `(G, d)` to `(G', d')` together with a scalar factor so
//! that `R^d(G) = factor * R^{d'}(G')`. Rules are applied until they no longer
//! fire; [`apply_all`] cycles through every rule in a fixed order until a
//! whole round leaves the network unchanged.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::format::format_significant;
use crate::irrelevance::irrelevant_links;
use crate::network::{LinkId, Network, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    PruneIrrelevant,
    PendingNode,
    PerfectPath,
    PerfectNeighbors,
    ParallelLinks,
    PruneDangling,
}

impl Rule {
    /// Round-robin order used by [`apply_all`].
    pub const ALL: [Rule; 6] = [
        Rule::PruneIrrelevant,
        Rule::PendingNode,
        Rule::PerfectPath,
        Rule::PerfectNeighbors,
        Rule::ParallelLinks,
        Rule::PruneDangling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::PruneIrrelevant => "prune_irrelevant",
            Rule::PendingNode => "pending_node",
            Rule::PerfectPath => "perfect_path",
            Rule::PerfectNeighbors => "perfect_neighbors",
            Rule::ParallelLinks => "parallel_links",
            Rule::PruneDangling => "prune_dangling",
        }
    }

    pub fn apply(self, net: &Network) -> (Network, ReductionTrace) {
        let step: fn(&Network) -> Option<Step> = match self {
            Rule::PruneIrrelevant => prune_irrelevant_step,
            Rule::PendingNode => pending_node_step,
            Rule::PerfectPath => perfect_path_step,
            Rule::PerfectNeighbors => perfect_neighbors_step,
            Rule::ParallelLinks => parallel_links_step,
            Rule::PruneDangling => prune_dangling_step,
        };
        let mut current = net.clone();
        let mut trace = ReductionTrace::default();
        while let Some(step) = step(&current) {
            step.replay(&mut current)
                .expect("a step derived from a network replays on it");
            trace.steps.push(step);
        }
        (current, trace)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One rule application. `links` and `nodes` carry what [`Step::replay`]
/// needs:
///
/// * `prune_irrelevant`, `prune_dangling`: deleted links and removed nodes.
/// * `pending_node`: `[link]`, and `[pendant]` for a non-terminal pendant or
///   `[terminal, neighbor]` for a terminal one. When the neighbor is the other
///   terminal the link is made perfect instead of contracted.
/// * `perfect_path`: the chain links in order; the last carries the product.
/// * `perfect_neighbors`: `[terminal, absorbed neighbors..]`; `links` lists
///   the internal links that disappear.
/// * `parallel_links`: the bundle, the surviving link first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub rule: Rule,
    pub links: Vec<LinkId>,
    pub nodes: Vec<NodeId>,
    pub diameter_delta: usize,
    pub factor: f64,
}

impl Step {
    /// Re-applies this step to `net`.
    pub fn replay(&self, net: &mut Network) -> Result<()> {
        match self.rule {
            Rule::PruneIrrelevant | Rule::PruneDangling => {
                for &id in &self.links {
                    net.link(id)?;
                }
                net.remove_links(&self.links);
                net.remove_nodes(&self.nodes);
            }
            Rule::PendingNode => {
                let id = self.links[0];
                match self.nodes[..] {
                    [pendant] => {
                        net.remove_links(&[id]);
                        net.remove_nodes(&[pendant]);
                    }
                    [pendant, neighbor] if net.is_terminal(neighbor) => {
                        debug_assert!(net.is_terminal(pendant));
                        net.link_mut(id)?.set_reliability(1.0);
                    }
                    [pendant, neighbor] => net.contract_pendant(pendant, neighbor, id),
                    _ => unreachable!("pending_node step with {} nodes", self.nodes.len()),
                }
            }
            Rule::PerfectPath => {
                let mut product = 1.0;
                for &id in &self.links {
                    product *= net.link(id)?.reliability;
                }
                let (last, rest) = self.links.split_last().expect("chain is non-empty");
                for &id in rest {
                    net.link_mut(id)?.set_reliability(1.0);
                }
                net.link_mut(*last)?.set_reliability(product);
            }
            Rule::PerfectNeighbors => {
                net.merge_into(self.nodes[0], &self.nodes[1..]);
            }
            Rule::ParallelLinks => {
                let mut p = net.link(self.links[0])?.reliability;
                let mut perfect = p == 1.0;
                for &id in &self.links[1..] {
                    let q = net.link(id)?.reliability;
                    perfect |= q == 1.0;
                    p = p + q - p * q;
                }
                net.link_mut(self.links[0])?
                    .set_reliability(if perfect { 1.0 } else { p });
                net.remove_links(&self.links[1..]);
            }
        }
        Ok(())
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "{} links={} nodes={} d_delta={} factor={}",
            self.rule,
            join(&self.links),
            join(&self.nodes),
            self.diameter_delta,
            format_significant(self.factor, 17)
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn total_factor(&self) -> f64 {
        self.steps.iter().map(|s| s.factor).product()
    }

    pub fn total_diameter_delta(&self) -> usize {
        self.steps.iter().map(|s| s.diameter_delta).sum()
    }

    pub fn extend(&mut self, other: ReductionTrace) {
        self.steps.extend(other.steps);
    }

    pub fn replay(&self, net: &Network) -> Result<Network> {
        let mut out = net.clone();
        for step in &self.steps {
            step.replay(&mut out)?;
        }
        Ok(out)
    }
}

pub fn prune_irrelevant(net: &Network) -> (Network, ReductionTrace) {
    Rule::PruneIrrelevant.apply(net)
}

pub fn pending_node(net: &Network) -> (Network, ReductionTrace) {
    Rule::PendingNode.apply(net)
}

pub fn perfect_path(net: &Network) -> (Network, ReductionTrace) {
    Rule::PerfectPath.apply(net)
}

pub fn perfect_neighbors(net: &Network) -> (Network, ReductionTrace) {
    Rule::PerfectNeighbors.apply(net)
}

pub fn parallel_links(net: &Network) -> (Network, ReductionTrace) {
    Rule::ParallelLinks.apply(net)
}

pub fn prune_dangling(net: &Network) -> (Network, ReductionTrace) {
    Rule::PruneDangling.apply(net)
}

/// Every rule, round-robin, to fixpoint.
pub fn apply_all(net: &Network) -> (Network, ReductionTrace) {
    apply_rules(net, &Rule::ALL)
}

/// Round-robin over `rules` until a full round changes nothing.
pub fn apply_rules(net: &Network, rules: &[Rule]) -> (Network, ReductionTrace) {
    let mut current = net.clone();
    let mut trace = ReductionTrace::default();
    loop {
        let mut changed = false;
        for rule in rules {
            let (next, t) = rule.apply(&current);
            if !t.is_empty() {
                changed = true;
                current = next;
                trace.extend(t);
            }
        }
        if !changed {
            return (current, trace);
        }
    }
}

fn prune_irrelevant_step(net: &Network) -> Option<Step> {
    let links = irrelevant_links(net);
    let mut after = net.clone();
    after.remove_links(&links);
    let nodes = after.isolated_nodes();
    if links.is_empty() && nodes.is_empty() {
        return None;
    }
    Some(Step {
        rule: Rule::PruneIrrelevant,
        links,
        nodes,
        diameter_delta: 0,
        factor: 1.0,
    })
}

fn pending_node_step(net: &Network) -> Option<Step> {
    // Terminal pendants first, then any non-terminal degree-one node.
    if net.diameter() >= 1 {
        for terminal in [net.source(), net.terminal()] {
            if net.degree(terminal) != 1 {
                continue;
            }
            let link = net.incident(terminal).next().unwrap();
            let neighbor = link.opposite(terminal).unwrap();
            if net.is_terminal(neighbor) {
                if link.perfect {
                    continue;
                }
                return Some(Step {
                    rule: Rule::PendingNode,
                    links: vec![link.id],
                    nodes: vec![terminal, neighbor],
                    diameter_delta: 0,
                    factor: link.reliability,
                });
            }
            return Some(Step {
                rule: Rule::PendingNode,
                links: vec![link.id],
                nodes: vec![terminal, neighbor],
                diameter_delta: 1,
                factor: link.reliability,
            });
        }
    }
    net.nodes()
        .iter()
        .copied()
        .filter(|&n| !net.is_terminal(n) && net.degree(n) == 1)
        .map(|n| Step {
            rule: Rule::PendingNode,
            links: vec![net.incident(n).next().unwrap().id],
            nodes: vec![n],
            diameter_delta: 0,
            factor: 1.0,
        })
        .next()
}

fn perfect_path_step(net: &Network) -> Option<Step> {
    let is_inner = |n: NodeId| !net.is_terminal(n) && net.degree(n) == 2 && net.incident(n).count() == 2;
    let mut visited = BTreeSet::new();
    for &start in net.nodes() {
        if !is_inner(start) || visited.contains(&start) {
            continue;
        }
        // Grow the maximal chain of inner nodes through `start` both ways.
        let mut ends = Vec::new();
        let mut inner = vec![start];
        visited.insert(start);
        let first_two: Vec<_> = net
            .incident(start)
            .map(|l| (l.id, l.opposite(start).unwrap()))
            .collect();
        let mut cyclic = false;
        for &(first_link, first_next) in &first_two {
            let mut half = vec![first_link];
            let (mut prev_link, mut node) = (first_link, first_next);
            while is_inner(node) && node != start {
                visited.insert(node);
                inner.push(node);
                let next = net.incident(node).find(|l| l.id != prev_link).unwrap();
                prev_link = next.id;
                half.push(next.id);
                node = next.opposite(node).unwrap();
            }
            if node == start {
                cyclic = true;
            }
            ends.push((node, half));
        }
        if cyclic {
            continue;
        }
        let (end_a, half_a) = ends.swap_remove(0);
        let (end_b, half_b) = ends.swap_remove(0);
        if end_a == end_b {
            continue;
        }
        // Orient from the smaller end node; the last link is next to the larger.
        let (mut from_low, toward_high) = if end_a < end_b {
            (half_a, half_b)
        } else {
            (half_b, half_a)
        };
        from_low.reverse();
        from_low.extend(toward_high);
        let chain = from_low;
        let rest = &chain[..chain.len() - 1];
        let non_perfect = chain.iter().filter(|&&id| !net.link(id).unwrap().perfect).count();
        let canonical = rest.iter().all(|&id| net.link(id).unwrap().perfect);
        if non_perfect < 2 && canonical {
            continue;
        }
        return Some(Step {
            rule: Rule::PerfectPath,
            links: chain,
            nodes: Vec::new(),
            diameter_delta: 0,
            factor: 1.0,
        });
    }
    None
}

fn perfect_neighbors_step(net: &Network) -> Option<Step> {
    if net.diameter() == 0 {
        return None;
    }
    for (terminal, other) in [(net.source(), net.terminal()), (net.terminal(), net.source())] {
        let incident: Vec<_> = net.incident(terminal).collect();
        if incident.is_empty() || incident.iter().any(|l| !l.perfect) {
            continue;
        }
        let neighbors: BTreeSet<NodeId> = incident
            .iter()
            .map(|l| l.opposite(terminal).unwrap())
            .filter(|&n| n != terminal)
            .collect();
        if neighbors.is_empty() || neighbors.contains(&other) {
            continue;
        }
        let mut nodes = vec![terminal];
        nodes.extend(neighbors.iter().copied());
        let links = net
            .links()
            .iter()
            .filter(|l| nodes.contains(&l.endpoints.0) && nodes.contains(&l.endpoints.1))
            .map(|l| l.id)
            .collect();
        return Some(Step {
            rule: Rule::PerfectNeighbors,
            links,
            nodes,
            diameter_delta: 1,
            factor: 1.0,
        });
    }
    None
}

fn parallel_links_step(net: &Network) -> Option<Step> {
    let mut bundles: BTreeMap<(NodeId, NodeId), Vec<LinkId>> = BTreeMap::new();
    for l in net.links().iter().filter(|l| !l.is_self_loop()) {
        bundles.entry(l.key()).or_default().push(l.id);
    }
    bundles.into_values().find(|ids| ids.len() > 1).map(|links| Step {
        rule: Rule::ParallelLinks,
        links,
        nodes: Vec::new(),
        diameter_delta: 0,
        factor: 1.0,
    })
}

/// Components of `net - removed`, over the remaining nodes.
fn components_without(net: &Network, removed: NodeId) -> Vec<BTreeSet<NodeId>> {
    let mut parent: BTreeMap<NodeId, NodeId> = net.nodes().iter().filter(|&&n| n != removed).map(|&n| (n, n)).collect();
    fn find(parent: &mut BTreeMap<NodeId, NodeId>, n: NodeId) -> NodeId {
        let p = parent[&n];
        if p == n {
            return n;
        }
        let root = find(parent, p);
        parent.insert(n, root);
        root
    }
    for l in net.links() {
        let (a, b) = l.endpoints;
        if a == removed || b == removed {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra.max(rb), ra.min(rb));
        }
    }
    let mut groups: BTreeMap<NodeId, BTreeSet<NodeId>> = BTreeMap::new();
    let keys: Vec<_> = parent.keys().copied().collect();
    for n in keys {
        let root = find(&mut parent, n);
        groups.entry(root).or_default().insert(n);
    }
    groups.into_values().collect()
}

fn prune_dangling_step(net: &Network) -> Option<Step> {
    for &v in net.nodes() {
        let doomed: BTreeSet<NodeId> = components_without(net, v)
            .into_iter()
            .filter(|c| !c.contains(&net.source()) && !c.contains(&net.terminal()))
            .flatten()
            .collect();
        if doomed.is_empty() {
            continue;
        }
        let links = net
            .links()
            .iter()
            .filter(|l| doomed.contains(&l.endpoints.0) || doomed.contains(&l.endpoints.1))
            .map(|l| l.id)
            .collect();
        return Some(Step {
            rule: Rule::PruneDangling,
            links,
            nodes: doomed.into_iter().collect(),
            diameter_delta: 0,
            factor: 1.0,
        });
    }
    None
}
