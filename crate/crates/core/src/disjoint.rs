//! Minimum length-sum pair of node-disjoint paths joining the endpoints of
//! a link to the two terminals.
//!
//! The graph is extended with an artificial node `u` adjacent to `s` and
//! `t`, and an artificial node `z` adjacent to both endpoints of the link.
//! Two node-disjoint `u`-`z` paths of minimum total length then give the
//! shortest simple `s`-`t` path through the link, minus the link itself.
//!
//! Node-disjointness is reduced to arc-disjointness by splitting every node
//! into an `in`/`out` pair joined by a unit-capacity, zero-cost arc. The two
//! paths are found by successive shortest paths on the residual network
//! (Suurballe/Bhandari), i.e. a two-unit min-cost flow. Artificial arcs cost
//! zero, so the flow cost is exactly `l(P1) + l(P2)`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::network::{LinkId, Network, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointPair {
    /// Endpoint of the link to the source, inclusive.
    pub path1: Vec<NodeId>,
    /// Other endpoint of the link to the terminal, inclusive.
    pub path2: Vec<NodeId>,
    /// `None` when no node-disjoint pair exists.
    pub length_sum: Option<usize>,
}

impl DisjointPair {
    fn none() -> Self {
        DisjointPair {
            path1: Vec::new(),
            path2: Vec::new(),
            length_sum: None,
        }
    }
}

struct Arc {
    to: usize,
    cap: i32,
    cost: i64,
}

/// Residual network with paired forward/backward arcs (`a ^ 1` is the twin).
struct FlowGraph {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowGraph {
    fn new(vertices: usize) -> Self {
        FlowGraph {
            arcs: Vec::new(),
            out: vec![Vec::new(); vertices],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cost: i64) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap: 1, cost });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
    }

    /// Bellman-Ford (queue based) on the residual graph; residual costs may be
    /// negative after the first augmentation but no negative cycle exists.
    fn shortest_path(&self, source: usize, sink: usize) -> Option<(i64, Vec<usize>)> {
        let n = self.out.len();
        let mut dist = vec![i64::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut queued = vec![false; n];
        let mut queue = std::collections::VecDeque::from([source]);
        dist[source] = 0;
        queued[source] = true;
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            for &a in &self.out[v] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && dist[v] + arc.cost < dist[arc.to] {
                    dist[arc.to] = dist[v] + arc.cost;
                    via[arc.to] = a;
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        if dist[sink] == i64::MAX {
            return None;
        }
        let mut path = Vec::new();
        let mut v = sink;
        while v != source {
            let a = via[v];
            path.push(a);
            v = self.arcs[a ^ 1].to;
        }
        path.reverse();
        Some((dist[sink], path))
    }

    fn augment(&mut self, path: &[usize]) {
        for &a in path {
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
        }
    }

    /// Net flow carried by a forward arc.
    fn flow(&self, a: usize) -> i32 {
        self.arcs[a ^ 1].cap
    }
}

/// Shortest node-disjoint pair for `link_id`; see the module docs.
pub fn min_disjoint_pair(net: &Network, link_id: LinkId) -> Result<DisjointPair> {
    let link = net.link(link_id)?;
    let (x, y) = link.endpoints;
    if x == y {
        return Ok(DisjointPair::none());
    }

    let index: BTreeMap<NodeId, usize> = net.nodes().iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let node_of: Vec<NodeId> = net.nodes().iter().copied().collect();
    let k = node_of.len();
    let v_in = |n: NodeId| 2 * index[&n];
    let v_out = |n: NodeId| 2 * index[&n] + 1;
    let u = 2 * k;
    let z = 2 * k + 1;

    let mut g = FlowGraph::new(2 * k + 2);
    for &n in &node_of {
        g.add_arc(v_in(n), v_out(n), 0);
    }
    for l in net.links() {
        if l.is_self_loop() {
            continue;
        }
        let (a, b) = l.endpoints;
        g.add_arc(v_out(a), v_in(b), 1);
        g.add_arc(v_out(b), v_in(a), 1);
    }
    g.add_arc(u, v_in(net.source()), 0);
    g.add_arc(u, v_in(net.terminal()), 0);
    g.add_arc(v_out(x), z, 0);
    g.add_arc(v_out(y), z, 0);

    let mut total = 0;
    for _ in 0..2 {
        match g.shortest_path(u, z) {
            Some((cost, path)) => {
                total += cost;
                g.augment(&path);
            }
            None => return Ok(DisjointPair::none()),
        }
    }

    // Walk the two unit flows out of u; each yields terminal .. endpoint.
    let mut walks = Vec::new();
    for &start in &g.out[u] {
        if start % 2 == 1 || g.flow(start) == 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut v = g.arcs[start].to;
        while v != z {
            if v < 2 * k && (walk.last() != Some(&node_of[v / 2])) {
                walk.push(node_of[v / 2]);
            }
            let next = g.out[v]
                .iter()
                .copied()
                .find(|&a| a % 2 == 0 && g.flow(a) > 0)
                .expect("flow is conserved");
            v = g.arcs[next].to;
        }
        walk.reverse();
        walks.push(walk);
    }
    debug_assert_eq!(walks.len(), 2);

    let (mut path1, mut path2) = (walks.swap_remove(0), walks.swap_remove(0));
    if path1.last() != Some(&net.source()) {
        std::mem::swap(&mut path1, &mut path2);
    }
    let pair = DisjointPair {
        path1,
        path2,
        length_sum: Some(total as usize),
    };
    check_pair(net, x, y, &pair);
    Ok(pair)
}

fn check_pair(net: &Network, x: NodeId, y: NodeId, pair: &DisjointPair) {
    let (p1, p2) = (&pair.path1, &pair.path2);
    assert!(p1.iter().all(|n| !p2.contains(n)), "paths share a node: {p1:?} {p2:?}");
    assert_eq!(p1.last(), Some(&net.source()));
    assert_eq!(p2.last(), Some(&net.terminal()));
    let starts = (p1[0], p2[0]);
    assert!(
        starts == (x, y) || starts == (y, x),
        "paths do not start at the link endpoints"
    );
    assert_eq!(
        pair.length_sum,
        Some(p1.len() - 1 + p2.len() - 1),
        "length sum disagrees with the paths"
    );
    for p in [p1, p2] {
        assert!(
            !(p.contains(&x) && p.contains(&y)),
            "a path traverses the link under test"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::figure1;
    use crate::network::Link;

    #[test]
    fn figure1_link_1_2() {
        let pair = min_disjoint_pair(&figure1(0.9, 6), 1).unwrap();
        assert_eq!(pair.length_sum, Some(6));
        assert_eq!(pair.path1, vec![1, 0]);
        assert_eq!(pair.path2, vec![2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn figure1_link_2_3() {
        let pair = min_disjoint_pair(&figure1(0.9, 6), 2).unwrap();
        assert_eq!(pair.length_sum, Some(6));
        assert_eq!(pair.path1, vec![2, 1, 0]);
        assert_eq!(pair.path2, vec![3, 4, 5, 6, 7]);
    }

    #[test]
    fn terminal_link_has_empty_paths() {
        let g = Network::new(0..3, vec![Link::new(0, 0, 2, 0.5), Link::new(1, 0, 1, 0.5)], 0, 2, 1).unwrap();
        let pair = min_disjoint_pair(&g, 0).unwrap();
        assert_eq!(pair.length_sum, Some(0));
        assert_eq!((pair.path1, pair.path2), (vec![0], vec![2]));
        // 0-1 hangs off s: the other endpoint cannot reach t without s
        assert_eq!(min_disjoint_pair(&g, 1).unwrap().length_sum, None);
    }

    #[test]
    fn self_loop_has_no_pair() {
        let g = Network::new(0..2, vec![Link::new(0, 0, 1, 0.5), Link::new(1, 1, 1, 0.5)], 0, 1, 3).unwrap();
        assert_eq!(min_disjoint_pair(&g, 1).unwrap().length_sum, None);
    }

    #[test]
    fn unknown_link() {
        assert!(min_disjoint_pair(&figure1(0.5, 3), 77).is_err());
    }
}
