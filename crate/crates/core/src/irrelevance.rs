//! Irrelevant-link detection.
//!
//! A link `e = {x, y}` is irrelevant when its state never changes the
//! structure function, i.e. when no simple `s`-`t` path of at most `d` hops
//! uses it. Three classical sufficient conditions compare hop-distance sums
//! against `d`; the exact test uses the shortest node-disjoint pair from
//! [`min_disjoint_pair`]: `e` is relevant iff that pair has length sum at most
//! `d - 1`.

use serde::{Deserialize, Serialize};

use crate::disjoint::min_disjoint_pair;
use crate::error::{Error, Result};
use crate::network::{LinkId, Network, NodeId};

/// The three distance-based sufficient conditions, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SufficientCondition {
    /// `d_G(s,x) + d_G(y,t) >= d` for both pairings.
    Distances,
    /// As above, with distances measured in `G - e`.
    LinkDeleted,
    /// `d_{G-y-t}(s,x) + d_{G-s-x}(y,t) >= d` and the symmetric pairing.
    VertexDeleted,
}

impl SufficientCondition {
    pub const ALL: [SufficientCondition; 3] = [
        SufficientCondition::Distances,
        SufficientCondition::LinkDeleted,
        SufficientCondition::VertexDeleted,
    ];

    pub fn level(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_level(level: u8) -> Option<Self> {
        Self::ALL.get(usize::from(level).checked_sub(1)?).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrrelevanceReport {
    pub link_id: LinkId,
    pub endpoints: (NodeId, NodeId),
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub exact_irrelevant: bool,
    /// Smallest diameter at which the link is relevant; `None` if never.
    pub relevance_threshold: Option<usize>,
}

/// `a + b >= d`, where an unreachable distance is infinite.
fn sum_reaches(a: Option<usize>, b: Option<usize>, d: usize) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a + b >= d,
        _ => true,
    }
}

pub fn sufficient_condition(net: &Network, link_id: LinkId, cond: SufficientCondition) -> Result<bool> {
    let (x, y) = net.link(link_id)?.endpoints;
    let (s, t, d) = (net.source(), net.terminal(), net.diameter());
    let holds = match cond {
        SufficientCondition::Distances => {
            let dist = |a, b| net.hop_distance(a, b, &[]);
            sum_reaches(dist(s, x), dist(y, t), d) && sum_reaches(dist(s, y), dist(x, t), d)
        }
        SufficientCondition::LinkDeleted => {
            let without = net.delete_link(link_id)?;
            let dist = |a, b| without.hop_distance(a, b, &[]);
            sum_reaches(dist(s, x), dist(y, t), d) && sum_reaches(dist(s, y), dist(x, t), d)
        }
        SufficientCondition::VertexDeleted => {
            let dist = |a, b, forbidden: [NodeId; 2]| net.hop_distance(a, b, &forbidden);
            sum_reaches(dist(s, x, [y, t]), dist(y, t, [s, x]), d)
                && sum_reaches(dist(s, y, [x, t]), dist(x, t, [s, y]), d)
        }
    };
    Ok(holds)
}

/// Convenience form taking the numeric level `1`, `2` or `3`.
pub fn sufficient_condition_level(net: &Network, link_id: LinkId, level: u8) -> Result<bool> {
    let cond = SufficientCondition::from_level(level)
        .ok_or_else(|| Error::InvalidNetwork(format!("no sufficient condition of level {level}")))?;
    sufficient_condition(net, link_id, cond)
}

/// Smallest `d` for which the link lies on a simple `s`-`t` path of at most
/// `d` hops.
pub fn relevance_threshold(net: &Network, link_id: LinkId) -> Result<Option<usize>> {
    Ok(min_disjoint_pair(net, link_id)?.length_sum.map(|sum| sum + 1))
}

pub fn exact_irrelevant(net: &Network, link_id: LinkId) -> Result<bool> {
    Ok(match relevance_threshold(net, link_id)? {
        Some(threshold) => threshold > net.diameter(),
        None => true,
    })
}

/// Every link against the same snapshot, in id order.
pub fn sweep(net: &Network) -> Vec<IrrelevanceReport> {
    net.links()
        .iter()
        .map(|l| {
            let cond = |c| sufficient_condition(net, l.id, c).expect("link exists");
            let threshold = relevance_threshold(net, l.id).expect("link exists");
            IrrelevanceReport {
                link_id: l.id,
                endpoints: l.endpoints,
                cond1: cond(SufficientCondition::Distances),
                cond2: cond(SufficientCondition::LinkDeleted),
                cond3: cond(SufficientCondition::VertexDeleted),
                exact_irrelevant: threshold.is_none_or(|th| th > net.diameter()),
                relevance_threshold: threshold,
            }
        })
        .collect()
}

/// Ids of the links the exact test marks irrelevant.
pub fn irrelevant_links(net: &Network) -> Vec<LinkId> {
    net.links()
        .iter()
        .filter(|l| exact_irrelevant(net, l.id).expect("link exists"))
        .map(|l| l.id)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure1, series};
    use SufficientCondition::*;

    #[test]
    fn figure1_conditions_for_link_1_2() {
        let d5 = figure1(0.5, 5);
        let d6 = figure1(0.5, 6);
        assert!(!sufficient_condition(&d5, 1, Distances).unwrap());
        assert!(!sufficient_condition(&d6, 1, Distances).unwrap());
        assert!(sufficient_condition(&d5, 1, LinkDeleted).unwrap());
        assert!(!sufficient_condition(&d6, 1, LinkDeleted).unwrap());
        assert!(sufficient_condition(&d5, 1, VertexDeleted).unwrap());
        assert!(sufficient_condition(&d6, 1, VertexDeleted).unwrap());
        assert!(exact_irrelevant(&d6, 1).unwrap());
    }

    #[test]
    fn figure1_link_2_3_escapes_every_condition() {
        let d6 = figure1(0.5, 6);
        for level in 1..=3 {
            assert!(!sufficient_condition_level(&d6, 2, level).unwrap());
        }
        assert!(exact_irrelevant(&d6, 2).unwrap());
        assert!(!exact_irrelevant(&figure1(0.5, 7), 2).unwrap());
        assert_eq!(relevance_threshold(&d6, 2).unwrap(), Some(7));
    }

    #[test]
    fn direct_terminal_link_is_relevant() {
        let g = series(&[0.3], 1);
        assert!(!exact_irrelevant(&g, 0).unwrap());
        assert_eq!(relevance_threshold(&g, 0).unwrap(), Some(1));
    }

    #[test]
    fn sweep_figure1() {
        let flagged = |d| irrelevant_links(&figure1(0.5, d));
        // {3,4} is on no <=6-hop path either: 3-2-1-s plus 4-5-6-t is 6 hops
        assert_eq!(flagged(6), vec![1, 2, 3]);
        assert!(flagged(7).is_empty());
        let reports = sweep(&figure1(0.5, 6));
        assert_eq!(reports.len(), 9);
        assert!(reports.iter().map(|r| r.link_id).eq(0..9));
    }

    #[test]
    fn tree_links_all_relevant() {
        let g = series(&[0.5, 0.5, 0.5, 0.5], 4);
        assert!(sweep(&g).iter().all(|r| !r.exact_irrelevant && !r.cond1));
    }

    #[test]
    fn bad_level() {
        assert!(sufficient_condition_level(&figure1(0.5, 6), 1, 4).is_err());
        assert_eq!(SufficientCondition::from_level(0), None);
    }
}
