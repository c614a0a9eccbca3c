//! Multigraph model with per-link reliabilities.
//!
//! A [`Network`] is an immutable value: every public edit returns a new
//! network and leaves the receiver untouched. Link ids are stable across
//! edits, so traces and reports can refer to them after deletions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type LinkId = usize;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub id: LinkId,
    pub endpoints: (NodeId, NodeId),
    pub reliability: f64,
    /// Set whenever the reliability is exactly 1.
    pub perfect: bool,
}

impl Link {
    pub fn new(id: LinkId, u: NodeId, v: NodeId, reliability: f64) -> Self {
        Link {
            id,
            endpoints: (u, v),
            reliability,
            perfect: reliability == 1.0,
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }

    pub fn touches(&self, node: NodeId) -> bool {
        self.endpoints.0 == node || self.endpoints.1 == node
    }

    /// The endpoint opposite `node`, if `node` is an endpoint.
    pub fn opposite(&self, node: NodeId) -> Option<NodeId> {
        if self.endpoints.0 == node {
            Some(self.endpoints.1)
        } else if self.endpoints.1 == node {
            Some(self.endpoints.0)
        } else {
            None
        }
    }

    /// Endpoints as an ordered pair, used to detect parallel links.
    pub fn key(&self) -> (NodeId, NodeId) {
        let (a, b) = self.endpoints;
        (a.min(b), a.max(b))
    }

    pub(crate) fn set_reliability(&mut self, p: f64) {
        self.reliability = p;
        self.perfect = p == 1.0;
    }
}

/// Two-terminal network with a hop budget.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    nodes: BTreeSet<NodeId>,
    links: Vec<Link>,
    source: NodeId,
    terminal: NodeId,
    diameter: usize,
}

impl Network {
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        links: Vec<Link>,
        source: NodeId,
        terminal: NodeId,
        diameter: usize,
    ) -> Result<Self> {
        let nodes: BTreeSet<NodeId> = nodes.into_iter().collect();
        if source == terminal {
            return Err(Error::InvalidNetwork(format!(
                "source and terminal are both node {source}"
            )));
        }
        for n in [source, terminal] {
            if !nodes.contains(&n) {
                return Err(Error::InvalidNetwork(format!(
                    "terminal node {n} is not in the node set"
                )));
            }
        }
        let mut ids = BTreeSet::new();
        for l in &links {
            if !ids.insert(l.id) {
                return Err(Error::InvalidNetwork(format!("duplicate link id {}", l.id)));
            }
            if !(0.0..=1.0).contains(&l.reliability) {
                return Err(Error::InvalidNetwork(format!(
                    "link {} has reliability {} outside [0,1]",
                    l.id, l.reliability
                )));
            }
            for n in [l.endpoints.0, l.endpoints.1] {
                if !nodes.contains(&n) {
                    return Err(Error::InvalidNetwork(format!("link {} touches unknown node {n}", l.id)));
                }
            }
        }
        let mut links = links;
        for l in &mut links {
            l.perfect = l.reliability == 1.0;
        }
        links.sort_by_key(|l| l.id);
        Ok(Network {
            nodes,
            links,
            source,
            terminal,
            diameter,
        })
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    /// Links in ascending id order.
    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn terminal(&self) -> NodeId {
        self.terminal
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn is_terminal(&self, node: NodeId) -> bool {
        node == self.source || node == self.terminal
    }

    pub fn link(&self, id: LinkId) -> Result<&Link> {
        self.position(id).map(|i| &self.links[i])
    }

    fn position(&self, id: LinkId) -> Result<usize> {
        self.links
            .binary_search_by_key(&id, |l| l.id)
            .map_err(|_| Error::UnknownLink(id))
    }

    /// Links incident to `node`; a self-loop appears once.
    pub fn incident(&self, node: NodeId) -> impl Iterator<Item = &Link> {
        self.links.iter().filter(move |l| l.touches(node))
    }

    /// Number of link ends at `node` (a self-loop counts twice).
    pub fn degree(&self, node: NodeId) -> usize {
        self.links
            .iter()
            .map(|l| (l.endpoints.0 == node) as usize + (l.endpoints.1 == node) as usize)
            .sum()
    }

    pub fn with_diameter(&self, diameter: usize) -> Network {
        Network {
            diameter,
            ..self.clone()
        }
    }

    pub fn delete_link(&self, id: LinkId) -> Result<Network> {
        let i = self.position(id)?;
        let mut next = self.clone();
        next.links.remove(i);
        Ok(next)
    }

    pub fn make_perfect(&self, id: LinkId) -> Result<Network> {
        let i = self.position(id)?;
        let mut next = self.clone();
        next.links[i].set_reliability(1.0);
        Ok(next)
    }

    /// Same topology with every reliability replaced by `p`.
    pub fn with_uniform_reliability(&self, p: f64) -> Result<Network> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidNetwork(format!("reliability {p} outside [0,1]")));
        }
        let mut next = self.clone();
        for l in &mut next.links {
            l.set_reliability(p);
        }
        Ok(next)
    }

    /// Minimum hop count from `a` to `b` over paths that avoid every node in
    /// `forbidden`. A forbidden endpoint is unreachable.
    pub fn hop_distance(&self, a: NodeId, b: NodeId, forbidden: &[NodeId]) -> Option<usize> {
        if forbidden.contains(&a) || forbidden.contains(&b) {
            return None;
        }
        HopGraph::new(self, |_| true).distance(a, b, forbidden)
    }

    /// Structure function: is there an s-t path of at most `diameter` up links?
    pub fn phi(&self, state: &SystemState) -> Result<bool> {
        if state.up.len() != self.links.len() || self.links.iter().any(|l| !state.up.contains_key(&l.id)) {
            return Err(Error::StateMismatch);
        }
        Ok(HopGraph::new(self, |l| state.up[&l.id]).connects_within(self.source, self.terminal, self.diameter))
    }

    pub(crate) fn link_mut(&mut self, id: LinkId) -> Result<&mut Link> {
        let i = self.position(id)?;
        Ok(&mut self.links[i])
    }

    pub(crate) fn remove_links(&mut self, ids: &[LinkId]) {
        self.links.retain(|l| !ids.contains(&l.id));
    }

    /// Removes the nodes together with every incident link.
    pub(crate) fn remove_nodes(&mut self, nodes: &[NodeId]) {
        debug_assert!(nodes.iter().all(|n| !self.is_terminal(*n)));
        self.links
            .retain(|l| !nodes.contains(&l.endpoints.0) && !nodes.contains(&l.endpoints.1));
        for n in nodes {
            self.nodes.remove(n);
        }
    }

    /// Non-terminal nodes with no incident link.
    pub(crate) fn isolated_nodes(&self) -> Vec<NodeId> {
        let mut touched = BTreeSet::new();
        for l in &self.links {
            touched.insert(l.endpoints.0);
            touched.insert(l.endpoints.1);
        }
        self.nodes
            .iter()
            .copied()
            .filter(|n| !self.is_terminal(*n) && !touched.contains(n))
            .collect()
    }

    /// Drops `link`, removes the terminal `pendant` and promotes `neighbor`
    /// to take its role. Consumes one hop of the budget.
    pub(crate) fn contract_pendant(&mut self, pendant: NodeId, neighbor: NodeId, link: LinkId) {
        self.remove_links(&[link]);
        debug_assert!(self.incident(pendant).next().is_none());
        if pendant == self.source {
            self.source = neighbor;
        } else {
            self.terminal = neighbor;
        }
        self.nodes.remove(&pendant);
        self.diameter -= 1;
    }

    /// Folds `absorbed` into the terminal `into`: links between members of
    /// the merged set vanish, all others are re-attached. Consumes one hop.
    pub(crate) fn merge_into(&mut self, into: NodeId, absorbed: &[NodeId]) -> Vec<LinkId> {
        let inside = |n: NodeId| n == into || absorbed.contains(&n);
        let mut discarded = Vec::new();
        self.links.retain(|l| {
            let internal = inside(l.endpoints.0) && inside(l.endpoints.1);
            if internal {
                discarded.push(l.id);
            }
            !internal
        });
        for l in &mut self.links {
            if absorbed.contains(&l.endpoints.0) {
                l.endpoints.0 = into;
            }
            if absorbed.contains(&l.endpoints.1) {
                l.endpoints.1 = into;
            }
        }
        for n in absorbed {
            self.nodes.remove(n);
        }
        self.diameter -= 1;
        discarded
    }
}

/// One up/down assignment to every link of a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemState {
    pub up: BTreeMap<LinkId, bool>,
}

impl SystemState {
    pub fn from_fn(net: &Network, mut f: impl FnMut(&Link) -> bool) -> Self {
        SystemState {
            up: net.links().iter().map(|l| (l.id, f(l))).collect(),
        }
    }

    pub fn all_up(net: &Network) -> Self {
        Self::from_fn(net, |_| true)
    }

    pub fn all_down(net: &Network) -> Self {
        Self::from_fn(net, |_| false)
    }

    pub fn with(mut self, id: LinkId, up: bool) -> Self {
        self.up.insert(id, up);
        self
    }
}

/// Adjacency lists over a subset of links, indexed by node id. The stored
/// link index refers to the position in [`Network::links`].
pub(crate) struct HopGraph {
    adj: Vec<Vec<(NodeId, usize)>>,
}

impl HopGraph {
    pub(crate) fn new(net: &Network, mut keep: impl FnMut(&Link) -> bool) -> Self {
        let size = net.nodes.iter().next_back().map_or(0, |n| n + 1);
        let mut adj = vec![Vec::new(); size];
        for (i, l) in net.links.iter().enumerate() {
            if l.is_self_loop() || !keep(l) {
                continue;
            }
            let (a, b) = l.endpoints;
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        HopGraph { adj }
    }

    /// Breadth-first hop distances from `from`, honouring `forbidden`.
    pub(crate) fn distances(&self, from: NodeId, forbidden: &[NodeId]) -> Vec<Option<usize>> {
        self.distances_masked(from, forbidden, |_| true)
    }

    pub(crate) fn distances_masked(
        &self,
        from: NodeId,
        forbidden: &[NodeId],
        up: impl Fn(usize) -> bool,
    ) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        if from >= self.adj.len() {
            return dist;
        }
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &(w, li) in &self.adj[v] {
                if dist[w].is_none() && up(li) && !forbidden.contains(&w) {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub(crate) fn distance(&self, a: NodeId, b: NodeId, forbidden: &[NodeId]) -> Option<usize> {
        if a == b {
            return Some(0);
        }
        self.distances(a, forbidden).get(b).copied().flatten()
    }

    pub(crate) fn connects_within(&self, s: NodeId, t: NodeId, budget: usize) -> bool {
        self.connects_within_masked(s, t, budget, |_| true)
    }

    /// Hop-bounded BFS that only follows link indices accepted by `up`.
    pub(crate) fn connects_within_masked(
        &self,
        s: NodeId,
        t: NodeId,
        budget: usize,
        up: impl Fn(usize) -> bool,
    ) -> bool {
        if s == t {
            return true;
        }
        if budget == 0 || s >= self.adj.len() {
            return false;
        }
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v];
            if dv == budget {
                continue;
            }
            for &(w, li) in &self.adj[v] {
                if dist[w] == usize::MAX && up(li) {
                    if w == t {
                        return true;
                    }
                    dist[w] = dv + 1;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::figure1;

    #[test]
    fn rejects_equal_terminals() {
        let err = Network::new([0, 1], vec![Link::new(0, 0, 1, 0.5)], 1, 1, 1);
        assert!(matches!(err, Err(Error::InvalidNetwork(_))));
    }

    #[test]
    fn phi_on_figure1() {
        let g = figure1(0.9, 2);
        assert!(g.phi(&SystemState::all_up(&g)).unwrap());
        let g6 = g.with_diameter(6);
        // {1,t} is link 8, {1,4} is link 7
        let state = SystemState::all_up(&g6).with(8, false).with(7, false);
        assert!(!g6.phi(&state).unwrap());
        assert!(g6.with_diameter(7).phi(&state).unwrap());
        assert!(!g6.phi(&SystemState::all_down(&g6)).unwrap());
    }

    #[test]
    fn phi_rejects_foreign_state() {
        let g = figure1(0.9, 2);
        let mut state = SystemState::all_up(&g);
        state.up.remove(&0);
        assert!(matches!(g.phi(&state), Err(Error::StateMismatch)));
    }

    #[test]
    fn make_perfect_keeps_topology() {
        let g = figure1(0.5, 6);
        let p = g.make_perfect(3).unwrap();
        assert!(p.link(3).unwrap().perfect);
        assert_eq!(p.link(3).unwrap().reliability, 1.0);
        assert_eq!(
            g.phi(&SystemState::all_up(&g)).unwrap(),
            p.phi(&SystemState::all_up(&p)).unwrap()
        );
        assert!(matches!(g.make_perfect(99), Err(Error::UnknownLink(99))));
    }

    #[test]
    fn delete_link_updates_distances() {
        let g = figure1(0.9, 6);
        assert_eq!(g.delete_link(1).unwrap().hop_distance(0, 2, &[]), Some(4));
        assert_eq!(g.hop_distance(0, 2, &[]), Some(2));
        let single = Network::new([0, 1], vec![Link::new(0, 0, 1, 0.5)], 0, 1, 1).unwrap();
        assert_eq!(single.delete_link(0).unwrap().hop_distance(0, 1, &[]), None);
        assert!(matches!(g.delete_link(42), Err(Error::UnknownLink(42))));
    }

    #[test]
    fn figure1_distance_anchors() {
        let g = figure1(0.9, 6);
        assert_eq!(g.hop_distance(0, 1, &[]), Some(1));
        assert_eq!(g.hop_distance(2, 7, &[]), Some(2));
        assert_eq!(g.hop_distance(0, 1, &[2, 7]), Some(1));
        assert_eq!(g.hop_distance(2, 7, &[0, 1]), Some(5));
        assert_eq!(g.hop_distance(2, 0, &[1, 7]), None);
    }

    #[test]
    fn merge_discards_internal_links() {
        // s=0 with perfect spokes to 1 and 2, link 1-2 internal, both reach t=3
        let links = vec![
            Link::new(0, 0, 1, 1.0),
            Link::new(1, 0, 2, 1.0),
            Link::new(2, 1, 2, 0.3),
            Link::new(3, 1, 3, 0.5),
            Link::new(4, 2, 3, 0.5),
        ];
        let mut g = Network::new(0..4, links, 0, 3, 3).unwrap();
        let gone = g.merge_into(0, &[1, 2]);
        assert_eq!(gone, vec![0, 1, 2]);
        assert_eq!(g.diameter(), 2);
        assert_eq!(g.links().len(), 2);
        assert!(g.links().iter().all(|l| l.key() == (0, 3)));
    }
}
