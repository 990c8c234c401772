//! Elementary melons, melonic contraction, reduction to core graphs and
//! LO/NLO classification for the quartic model.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{self, BubbleKind, EdgeColoredGraph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MelonKind {
    /// Two tetrahedral bubbles joined by exactly three propagators.
    TypeI,
    /// One pillow with a tadpole propagator across one double-edge pair.
    TypeII,
}

/// An elementary melonic 2-point subgraph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Melon {
    pub kind: MelonKind,
    /// All nodes of the melon's bubbles, sorted.
    pub nodes: Vec<NodeId>,
    /// The 3 (type I) or 1 (type II) color-0 lines internal to the melon.
    pub internal_lines: Vec<(NodeId, NodeId)>,
    /// The two nodes whose color-0 half-lines are left open by excision.
    pub boundary: (NodeId, NodeId),
}

/// Outcome of reducing a graph to its core.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Core is the two-tetrahedra base graph.
    MelonicBaseI,
    /// Core is a pillow-double-tadpole (any color).
    MelonicBaseII,
    /// Core is the infinity graph of the given color.
    Infinity(u8),
    /// A core without elementary melons that is none of the above.
    OtherCore,
}

impl Verdict {
    pub fn is_melonic(self) -> bool {
        matches!(self, Verdict::MelonicBaseI | Verdict::MelonicBaseII)
    }
}

/// Reduction trace: the core graph and the contractions that led to it.
#[derive(Debug, Clone)]
pub struct CoreReport {
    pub core: EdgeColoredGraph,
    pub contractions: Vec<Melon>,
    /// Number of type-I contractions.
    pub p: usize,
    /// Number of type-II contractions.
    pub q: usize,
    pub verdict: Verdict,
}

/// Degree-based order classification of a closed graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderClass {
    /// omega = 0.
    Lo,
    /// omega = 1/2.
    Nlo,
    /// omega > 1/2; carries 2*omega.
    Higher(i64),
}

/// Classifies a closed graph by its degree.
pub fn classify(g: &EdgeColoredGraph) -> Result<OrderClass> {
    Ok(match g.omega2()? {
        0 => OrderClass::Lo,
        1 => OrderClass::Nlo,
        w => OrderClass::Higher(w),
    })
}

/// Finds every elementary melon of a closed or 2-point graph, ordered by
/// smallest node id.
///
/// A candidate whose two boundary half-lines close onto each other is the
/// whole (base) graph rather than a proper 2-point subgraph and is not
/// reported; `reduce` recognizes the bases by canonical form instead.
pub fn find_melons(g: &EdgeColoredGraph) -> Vec<Melon> {
    let bubbles = g.bubbles();
    let mut melons = Vec::new();

    // Type II: pillow with a tadpole across a double-edge pair.
    for b in &bubbles {
        let l = match b.kind {
            BubbleKind::Pillow(l) => l as usize,
            _ => continue,
        };
        // The double-edge pairs are the matching pairs of the non-
        // distinguished colors (both non-distinguished colors agree).
        let other = (1..=3).find(|&c| c != l).unwrap();
        let pairs: Vec<(NodeId, NodeId)> = b
            .nodes
            .iter()
            .filter_map(|&v| {
                let u = g.partner(other, v)?;
                (v < u).then_some((v, u))
            })
            .collect();
        for &(a, c) in &pairs {
            if g.partner(0, a) != Some(c) {
                continue;
            }
            let (x, y) = pairs
                .iter()
                .copied()
                .find(|&p| p != (a, c))
                .expect("pillow has two double-edge pairs");
            let in_melon = |n: Option<NodeId>| n.map_or(false, |n| b.nodes.contains(&n));
            if in_melon(g.partner(0, x)) || in_melon(g.partner(0, y)) {
                // Boundary closes onto the melon itself: base graph.
                continue;
            }
            melons.push(Melon {
                kind: MelonKind::TypeII,
                nodes: b.nodes.clone(),
                internal_lines: alloc::vec![(a, c)],
                boundary: (x, y),
            });
        }
    }

    // Type I: two tetrahedra joined by exactly three propagators whose
    // closure has degree 0.
    let tetras: Vec<&crate::graph::BubbleInfo> = bubbles
        .iter()
        .filter(|b| b.kind == BubbleKind::Tetrahedron)
        .collect();
    for (i, ta) in tetras.iter().enumerate() {
        for tb in &tetras[i + 1..] {
            let mut internal = Vec::new();
            for &v in &ta.nodes {
                if let Some(u) = g.partner(0, v) {
                    if tb.nodes.contains(&u) {
                        internal.push((v, u));
                    }
                }
            }
            if internal.len() != 3 {
                continue;
            }
            let open_a = *ta
                .nodes
                .iter()
                .find(|&&v| !internal.iter().any(|&(a, _)| a == v))
                .unwrap();
            let open_b = *tb
                .nodes
                .iter()
                .find(|&&v| !internal.iter().any(|&(_, b)| b == v))
                .unwrap();
            if !closure_is_lo(g, ta.nodes.iter().chain(&tb.nodes).copied().collect()) {
                continue;
            }
            let mut nodes: Vec<NodeId> =
                ta.nodes.iter().chain(&tb.nodes).copied().collect();
            nodes.sort_unstable();
            melons.push(Melon {
                kind: MelonKind::TypeI,
                nodes,
                internal_lines: internal,
                boundary: (open_a, open_b),
            });
        }
    }

    melons.sort();
    melons
}

/// Semantic type-I test: close the excised 2-point subgraph and check that
/// its degree vanishes.
fn closure_is_lo(g: &EdgeColoredGraph, mut nodes: Vec<NodeId>) -> bool {
    nodes.sort_unstable();
    let sub = match g.induced_subgraph(&nodes) {
        Ok(s) => s,
        Err(_) => return false,
    };
    match sub.close().and_then(|c| c.omega2()) {
        Ok(w) => w == 0,
        Err(_) => false,
    }
}

/// Excises the melon and joins its two boundary color-0 half-lines into a
/// single line (or external leg, on 2-point graphs).
pub fn contract_melon(g: &EdgeColoredGraph, m: &Melon) -> Result<EdgeColoredGraph> {
    if !find_melons(g).contains(m) {
        return Err(Error::StaleMelon);
    }
    let melon_set: BTreeSet<NodeId> = m.nodes.iter().copied().collect();
    let kept: Vec<NodeId> = (0..g.node_count())
        .filter(|v| !melon_set.contains(v))
        .collect();
    let remap = |v: NodeId| kept.binary_search(&v).expect("kept node");

    let mut matchings: [Vec<(NodeId, NodeId)>; 4] = Default::default();
    for c in 1..=3 {
        for (a, b) in g.lines(c) {
            if !melon_set.contains(&a) {
                matchings[c].push((remap(a), remap(b)));
            }
        }
    }
    for (a, b) in g.lines(0) {
        if !melon_set.contains(&a) && !melon_set.contains(&b) {
            matchings[0].push((remap(a), remap(b)));
        }
    }
    // Join the two attachments of the melon's open half-lines.
    let x = g.partner(0, m.boundary.0);
    let y = g.partner(0, m.boundary.1);
    if let (Some(x), Some(y)) = (x, y) {
        matchings[0].push((remap(x), remap(y)));
    }
    // One attachment external: the surviving one becomes the external leg.

    EdgeColoredGraph::from_matchings(
        kept.len(),
        [
            &matchings[0],
            &matchings[1],
            &matchings[2],
            &matchings[3],
        ],
    )
}

fn base_verdict(g: &EdgeColoredGraph) -> Option<Verdict> {
    let cf = g.canonical_form();
    if cf == graph::tetra_tetra().canonical_form() {
        return Some(Verdict::MelonicBaseI);
    }
    for l in 1..=3 {
        if cf == graph::pillow_double_tadpole(l).canonical_form() {
            return Some(Verdict::MelonicBaseII);
        }
        if cf == graph::infinity_graph(l).canonical_form() {
            return Some(Verdict::Infinity(l as u8));
        }
    }
    None
}

/// Repeatedly contracts the first available melon until none remains, then
/// names the core.
pub fn reduce(g: &EdgeColoredGraph) -> Result<CoreReport> {
    if !g.is_closed() {
        return Err(Error::OpenGraph);
    }
    for b in g.bubbles() {
        match b.kind {
            BubbleKind::Tetrahedron | BubbleKind::Pillow(_) => {}
            other => {
                return Err(Error::UnsupportedBubble(format!(
                    "{other:?} bubble on nodes {:?}",
                    b.nodes
                )))
            }
        }
    }
    reduce_with(g, false)
}

/// Same as [`reduce`] but contracting the *last* melon in detection order
/// at each step. Used to probe order insensitivity of the verdict.
pub fn reduce_reversed(g: &EdgeColoredGraph) -> Result<CoreReport> {
    if !g.is_closed() {
        return Err(Error::OpenGraph);
    }
    reduce_with(g, true)
}

fn reduce_with(g: &EdgeColoredGraph, reversed: bool) -> Result<CoreReport> {
    let mut current = g.clone();
    let mut contractions = Vec::new();
    let (mut p, mut q) = (0usize, 0usize);
    loop {
        if let Some(verdict) = base_verdict(&current) {
            return Ok(CoreReport {
                core: current,
                contractions,
                p,
                q,
                verdict,
            });
        }
        let melons = find_melons(&current);
        let Some(m) = (if reversed {
            melons.last()
        } else {
            melons.first()
        }) else {
            return Ok(CoreReport {
                core: current,
                contractions,
                p,
                q,
                verdict: Verdict::OtherCore,
            });
        };
        match m.kind {
            MelonKind::TypeI => p += 1,
            MelonKind::TypeII => q += 1,
        }
        let next = contract_melon(&current, m)?;
        contractions.push(m.clone());
        current = next;
    }
}
