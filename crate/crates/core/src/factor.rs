//! Recursive exact computation by conditioning on one link at a time.
//!
//! At every call the engine stops on a perfect `s`-`t` path within budget
//! (`R = 1`) or on an empty feasible set (`R = 0`), prunes irrelevant links,
//! applies the reductions and then splits on a pivot `e`:
//!
//! `R = p_e * R(e perfect) + (1 - p_e) * R(e deleted)`.
//!
//! Contraction is never used as a branch: it shortens paths and therefore
//! does not preserve hop-constrained reliability.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::network::{HopGraph, LinkId, Network};
use crate::reductions::{apply_rules, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TieBreak {
    /// Lowest link id among the pivot candidates.
    SmallestId,
    /// Uniform choice among the candidates, from a seeded stream.
    Seeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorOptions {
    /// Delete exactly-irrelevant links before reducing.
    pub prune_irrelevant: bool,
    /// Run the remaining reductions between branches.
    pub reductions: bool,
    pub tie_break: TieBreak,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            prune_irrelevant: true,
            reductions: true,
            tie_break: TieBreak::SmallestId,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorOutcome {
    pub reliability: f64,
    pub recursion_nodes: u64,
    pub leaves_one: u64,
    pub leaves_zero: u64,
    pub reductions_applied: u64,
}

/// Does the subgraph of perfect links join `s` and `t` within the budget?
pub fn has_perfect_path(net: &Network) -> bool {
    HopGraph::new(net, |l| l.perfect).connects_within(net.source(), net.terminal(), net.diameter())
}

fn infeasible(net: &Network) -> bool {
    !HopGraph::new(net, |_| true).connects_within(net.source(), net.terminal(), net.diameter())
}

/// Non-perfect links whose nearer endpoint is closest to the terminal.
fn pivot_candidates(net: &Network) -> Vec<LinkId> {
    let dist = HopGraph::new(net, |_| true).distances(net.terminal(), &[]);
    let near = |l: &crate::network::Link| {
        let d = |n: usize| dist.get(n).copied().flatten().unwrap_or(usize::MAX);
        d(l.endpoints.0).min(d(l.endpoints.1))
    };
    let best = net.links().iter().filter(|l| !l.perfect).map(near).min();
    match best {
        Some(best) => net
            .links()
            .iter()
            .filter(|l| !l.perfect && near(l) == best)
            .map(|l| l.id)
            .collect(),
        None => Vec::new(),
    }
}

/// The non-perfect link nearest to the terminal, lowest id on ties.
pub fn pivot_select(net: &Network) -> Option<LinkId> {
    pivot_candidates(net).first().copied()
}

pub fn factor(net: &Network) -> FactorOutcome {
    factor_with(net, &FactorOptions::default())
}

pub fn factor_with(net: &Network, options: &FactorOptions) -> FactorOutcome {
    let mut rules: Vec<Rule> = Vec::new();
    if options.prune_irrelevant {
        rules.push(Rule::PruneIrrelevant);
    }
    if options.reductions {
        rules.extend(Rule::ALL.iter().copied().filter(|r| *r != Rule::PruneIrrelevant));
    }
    let mut engine = Engine {
        rules,
        rng: match options.tie_break {
            TieBreak::SmallestId => None,
            TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        },
        stats: FactorOutcome {
            reliability: 0.0,
            recursion_nodes: 0,
            leaves_one: 0,
            leaves_zero: 0,
            reductions_applied: 0,
        },
    };
    let r = engine.run(net);
    engine.stats.reliability = r;
    engine.stats
}

struct Engine {
    rules: Vec<Rule>,
    rng: Option<ChaCha8Rng>,
    stats: FactorOutcome,
}

impl Engine {
    /// `Some(R)` when the network is already decided.
    fn terminal_value(&mut self, net: &Network) -> Option<f64> {
        if has_perfect_path(net) {
            self.stats.leaves_one += 1;
            Some(1.0)
        } else if infeasible(net) {
            self.stats.leaves_zero += 1;
            Some(0.0)
        } else {
            None
        }
    }

    fn run(&mut self, net: &Network) -> f64 {
        self.stats.recursion_nodes += 1;
        if let Some(r) = self.terminal_value(net) {
            return r;
        }
        let (net, trace) = apply_rules(net, &self.rules);
        self.stats.reductions_applied += trace.steps.len() as u64;
        let scale = trace.total_factor();
        if let Some(r) = self.terminal_value(&net) {
            return scale * r;
        }

        let candidates = pivot_candidates(&net);
        let pivot = match &mut self.rng {
            Some(rng) => candidates[rng.gen_range(0..candidates.len())],
            None => candidates[0],
        };
        let p = net.link(pivot).expect("pivot exists").reliability;
        let up = self.run(&net.make_perfect(pivot).expect("pivot exists"));
        let down = self.run(&net.delete_link(pivot).expect("pivot exists"));
        // A perfect link can only help.
        debug_assert!(up + 1e-9 >= down, "branch order violated: {up} < {down}");
        let r = scale * (p * up + (1.0 - p) * down);
        debug_assert!((0.0..=1.0 + 1e-12).contains(&r));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure1, series};

    #[test]
    fn single_link() {
        let out = factor(&series(&[0.7], 1));
        assert_eq!(out.reliability, 0.7);
    }

    #[test]
    fn figure1_values() {
        assert!((factor(&figure1(0.5, 2)).reliability - 0.25).abs() < 1e-12);
        let d6 = factor(&figure1(0.5, 6)).reliability;
        assert!((d6 - 0.265625).abs() < 1e-12);
        assert!((factor(&figure1(0.5, 5)).reliability - d6).abs() < 1e-15);
        let pruned = figure1(0.5, 6).delete_link(1).unwrap().delete_link(2).unwrap();
        assert!((factor(&pruned).reliability - d6).abs() < 1e-15);
    }

    #[test]
    fn unreachable_budget_is_zero() {
        let out = factor(&series(&[0.9, 0.9, 0.9], 2));
        assert_eq!(out.reliability, 0.0);
        assert_eq!(out.leaves_zero, 1);
    }

    #[test]
    fn perfect_path_detection() {
        let all = figure1(1.0, 2);
        assert!(has_perfect_path(&all));
        assert!(!has_perfect_path(&figure1(0.5, 2)));
        assert!(!has_perfect_path(&series(&[1.0, 1.0, 1.0], 2)));
    }

    #[test]
    fn pivot_prefers_terminal_side() {
        let g = figure1(0.5, 6);
        assert_eq!(pivot_select(&g), Some(6));
        let inward = g.make_perfect(6).unwrap().make_perfect(8).unwrap();
        // {5,6}, {1,4}, {1,2} and {s,1} all touch a node one hop from t
        assert_eq!(pivot_select(&inward), Some(0));
        assert_eq!(pivot_select(&series(&[1.0, 0.4, 1.0], 3)), Some(1));
        assert_eq!(pivot_select(&figure1(1.0, 3)), None);
    }

    #[test]
    fn options_do_not_change_value() {
        let g = figure1(0.37, 6);
        let base = factor(&g);
        for options in [
            FactorOptions {
                prune_irrelevant: false,
                ..Default::default()
            },
            FactorOptions {
                reductions: false,
                ..Default::default()
            },
            FactorOptions {
                prune_irrelevant: false,
                reductions: false,
                ..Default::default()
            },
            FactorOptions {
                tie_break: TieBreak::Seeded(7),
                ..Default::default()
            },
        ] {
            let out = factor_with(&g, &options);
            assert!((out.reliability - base.reliability).abs() <= 1e-12, "{options:?}");
        }
    }

    #[test]
    fn statistics_are_consistent() {
        let out = factor(&figure1(0.5, 7));
        assert!(out.leaves_one + out.leaves_zero <= out.recursion_nodes);
        assert!(out.reductions_applied > 0);
    }
}
