//! Edge-colored graphs: bubbles and 4-colored Feynman graphs.
//!
//! A graph is stored as four matchings on an even node set. Colors 1..3 are
//! the bubble edges and must be perfect matchings; color 0 carries the
//! propagator lines and may leave nodes uncovered (external legs of a
//! 2-point graph). Bubbles are the connected components in colors {1,2,3}.
//!
//! The text format understood by [`parse_graph`] is line based:
//!
//! ```text
//! # two tetrahedra joined by four parallel propagators
//! nodes 8
//! 0: 1-5 2-6 3-7 4-8
//! 1: 1-2 3-4 5-6 7-8
//! 2: 1-3 2-4 5-7 6-8
//! 3: 1-4 2-3 5-8 6-7
//! ```
//!
//! Node ids are 1-based in files, 0-based in the API. The `0:` line may be
//! missing or partial (external legs); colors 1..3 must be perfect.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// A 4-edge-colored graph on an even node set.
///
/// Immutable after construction; all operations are pure functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoredGraph {
    node_count: usize,
    /// `partner[c][v]` is the node matched to `v` in color `c`, if any.
    partner: [Vec<Option<NodeId>>; 4],
}

/// A face of a closed graph: a cycle alternating color-0 lines and
/// color-`color` edges. The length is its number of color-0 lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub color: u8,
    pub length: usize,
    pub trace: Vec<NodeId>,
}

/// Which interaction a bubble realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BubbleKind {
    /// The 2-node bubble (three parallel edges); the quadratic term.
    B2,
    /// The 4-node complete wiring; `rho = 0`, non-bipartite.
    Tetrahedron,
    /// The 4-node pillow with distinguished color `1..=3`; `rho = 1/2`.
    Pillow(u8),
    /// Anything else (higher valency or exotic wiring).
    Other,
}

/// Invariants of one bubble: node count, colored faces, scaling weight and
/// the per-color component deficits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BubbleInfo {
    pub nodes: Vec<NodeId>,
    pub node_count: usize,
    /// Count of bicolored cycles over the pairs (1,2), (1,3), (2,3).
    pub face_count: usize,
    /// `2 * rho(b) = F_b - 3`.
    pub rho2: i64,
    /// `delta[l-1] = C_b^l - 1` for `l` in 1..=3.
    pub delta: [usize; 3],
    pub kind: BubbleKind,
}

/// Euler data of one connected component of a jacket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JacketComponent {
    /// Ribbon vertices: bicolored cycles in the two colors kept.
    pub v: usize,
    /// Ribbon edges: color-0 lines.
    pub e: usize,
    /// Faces: the (0,i) and (0,j) faces supported on the component.
    pub f: usize,
    /// Demigenus `k = 2 - v + e - f`.
    pub k: i64,
}

/// The jacket `J_l`: the ribbon structure left after deleting all color-`l`
/// edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacketReport {
    pub color: u8,
    pub components: Vec<JacketComponent>,
    /// `delta_l` = component count - 1.
    pub delta: usize,
}

impl JacketReport {
    pub fn demigenus_sum(&self) -> i64 {
        self.components.iter().map(|c| c.k).sum()
    }

    pub fn face_count(&self) -> usize {
        self.components.iter().map(|c| c.f).sum()
    }
}

/// Full degree data of a closed graph. `omega2` is the integer `2 * omega`;
/// the two routes (direct face count and jacket demigenera) are both stored
/// and must agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub faces: Vec<Face>,
    /// Color-0 line count `L`.
    pub line_count: usize,
    pub bubbles: Vec<BubbleInfo>,
    pub jackets: [JacketReport; 3],
    /// `2 * omega`, from the direct formula.
    pub omega2: i64,
    /// `2 * omega`, recomputed from the jacket formula.
    pub omega2_jacket: i64,
}

impl DegreeReport {
    /// Twice the exponent of `N` in the amplitude, `2 * (3 - omega)`.
    pub fn amplitude_exponent2(&self) -> i64 {
        6 - self.omega2
    }
}

fn pair_list_to_partners(
    node_count: usize,
    color: usize,
    pairs: &[(NodeId, NodeId)],
) -> Result<Vec<Option<NodeId>>> {
    let mut partner = vec![None; node_count];
    for &(a, b) in pairs {
        if a >= node_count || b >= node_count {
            return Err(Error::InvalidMatching(format!(
                "color {color}: node id out of range in pair ({a}, {b})"
            )));
        }
        if a == b {
            return Err(Error::InvalidMatching(format!(
                "color {color}: self-pair ({a}, {a})"
            )));
        }
        for n in [a, b] {
            if partner[n].is_some() {
                return Err(Error::InvalidMatching(format!(
                    "color {color}: node {n} appears in more than one pair"
                )));
            }
        }
        partner[a] = Some(b);
        partner[b] = Some(a);
    }
    Ok(partner)
}

impl EdgeColoredGraph {
    /// Builds a graph from explicit pair lists, one per color, 0-based ids.
    ///
    /// Colors 1..3 must be perfect matchings; color 0 may leave nodes
    /// uncovered (external legs).
    pub fn from_matchings(
        node_count: usize,
        matchings: [&[(NodeId, NodeId)]; 4],
    ) -> Result<Self> {
        if node_count % 2 != 0 {
            return Err(Error::OddNodeCount(node_count));
        }
        let mut partner: [Vec<Option<NodeId>>; 4] = Default::default();
        for (c, pairs) in matchings.iter().enumerate() {
            let p = pair_list_to_partners(node_count, c, pairs)?;
            if c > 0 {
                if let Some(v) = p.iter().position(|x| x.is_none()) {
                    return Err(Error::InvalidMatching(format!(
                        "color {c}: node {v} is not covered (matching must be perfect)"
                    )));
                }
            }
            partner[c] = p;
        }
        Ok(EdgeColoredGraph {
            node_count,
            partner,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Partner of `v` in color `c`, if covered.
    pub fn partner(&self, color: usize, v: NodeId) -> Option<NodeId> {
        self.partner[color][v]
    }

    /// Nodes not covered by color 0.
    pub fn external(&self) -> Vec<NodeId> {
        (0..self.node_count)
            .filter(|&v| self.partner[0][v].is_none())
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.partner[0].iter().all(|p| p.is_some())
    }

    /// Lines of color `c` as sorted pairs.
    pub fn lines(&self, color: usize) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for v in 0..self.node_count {
            if let Some(u) = self.partner[color][v] {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    /// Number of color-0 lines.
    pub fn line_count(&self) -> usize {
        self.lines(0).len()
    }

    /// Overwrites color 0 with the given pairs without revalidation.
    /// Census-internal; callers guarantee the pairs form a matching.
    pub(crate) fn set_color0(&mut self, pairs: &[(NodeId, NodeId)]) {
        self.partner[0].fill(None);
        for &(a, b) in pairs {
            self.partner[0][a] = Some(b);
            self.partner[0][b] = Some(a);
        }
    }

    /// Closes a 2-point graph by joining its two external color-0
    /// half-lines. Closed graphs are returned unchanged.
    pub fn close(&self) -> Result<Self> {
        let ext = self.external();
        match ext.len() {
            0 => Ok(self.clone()),
            2 => {
                let mut g = self.clone();
                g.partner[0][ext[0]] = Some(ext[1]);
                g.partner[0][ext[1]] = Some(ext[0]);
                Ok(g)
            }
            n => Err(Error::InvalidMatching(format!(
                "cannot close a graph with {n} external legs"
            ))),
        }
    }

    /// Connected components of the graph under the given set of colors.
    /// Components are sorted internally and by smallest node.
    pub fn components(&self, colors: &[usize]) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.node_count];
        let mut comps = Vec::new();
        for start in 0..self.node_count {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &c in colors {
                    if let Some(u) = self.partner[c][v] {
                        if !seen[u] {
                            seen[u] = true;
                            stack.push(u);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// True if the graph (all four colors) is connected.
    pub fn is_connected(&self) -> bool {
        self.node_count == 0 || self.components(&[0, 1, 2, 3]).len() == 1
    }

    /// Bubbles: connected components in colors {1,2,3}.
    pub fn bubble_components(&self) -> Vec<Vec<NodeId>> {
        self.components(&[1, 2, 3])
    }

    /// Maximal cycles alternating colors `c1` and `c2`.
    ///
    /// Only nodes covered by both matchings are traced; each such node lies
    /// on exactly one cycle. The trace starts at the smallest node of the
    /// cycle and first follows its `c1` edge.
    pub fn bicolored_cycles(&self, c1: usize, c2: usize) -> Vec<Vec<NodeId>> {
        assert!(c1 != c2, "bicolored cycles need two distinct colors");
        let mut seen = vec![false; self.node_count];
        let mut cycles = Vec::new();
        for start in 0..self.node_count {
            if seen[start]
                || self.partner[c1][start].is_none()
                || self.partner[c2][start].is_none()
            {
                continue;
            }
            let mut trace = Vec::new();
            let mut v = start;
            let mut next_color = c1;
            let closed = loop {
                seen[v] = true;
                trace.push(v);
                match self.partner[next_color][v] {
                    // On an open graph the walk may run into an external
                    // leg: that is an alternating path, not a cycle.
                    None => break false,
                    Some(u) => v = u,
                }
                next_color = if next_color == c1 { c2 } else { c1 };
                if v == start && next_color == c1 {
                    break true;
                }
            };
            if closed {
                cycles.push(trace);
            }
        }
        cycles
    }

    /// Faces of a closed graph: the (0,l) bicolored cycles for l in 1..=3.
    pub fn faces(&self) -> Result<Vec<Face>> {
        if !self.is_closed() {
            return Err(Error::OpenGraph);
        }
        let mut out = Vec::new();
        for l in 1..=3usize {
            for trace in self.bicolored_cycles(0, l) {
                let length = trace.len() / 2;
                out.push(Face {
                    color: l as u8,
                    length,
                    trace,
                });
            }
        }
        Ok(out)
    }

    /// Invariants of the bubble containing `nodes` (one component of
    /// colors {1,2,3}).
    fn bubble_info(&self, nodes: &[NodeId]) -> BubbleInfo {
        let in_bubble = |v: NodeId| nodes.binary_search(&v).is_ok();
        // Colored faces over the three color pairs, restricted to this
        // bubble; cycles never leave a component of colors {1,2,3}.
        let mut face_count = 0;
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            face_count += self
                .bicolored_cycles(i, j)
                .iter()
                .filter(|cy| in_bubble(cy[0]))
                .count();
        }
        // delta_l: components of the bubble after deleting color l.
        let mut delta = [0usize; 3];
        for l in 1..=3usize {
            let keep: Vec<usize> = (1..=3).filter(|&c| c != l).collect();
            let comps = self.components_within(nodes, &keep);
            delta[l - 1] = comps - 1;
        }
        let rho2 = face_count as i64 - 3;
        let kind = match (nodes.len(), rho2) {
            (2, 0) => BubbleKind::B2,
            (4, 0) => BubbleKind::Tetrahedron,
            (4, 1) => {
                let l = (1..=3).find(|&l| delta[l - 1] == 1).unwrap_or(0);
                if l == 0 {
                    BubbleKind::Other
                } else {
                    BubbleKind::Pillow(l as u8)
                }
            }
            _ => BubbleKind::Other,
        };
        BubbleInfo {
            nodes: nodes.to_vec(),
            node_count: nodes.len(),
            face_count,
            rho2,
            delta,
            kind,
        }
    }

    /// Number of connected components of the induced subgraph on `nodes`
    /// under the given colors. `nodes` must be sorted.
    fn components_within(&self, nodes: &[NodeId], colors: &[usize]) -> usize {
        let index: BTreeMap<NodeId, usize> =
            nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut seen = vec![false; nodes.len()];
        let mut count = 0;
        for s in 0..nodes.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(i) = stack.pop() {
                for &c in colors {
                    if let Some(u) = self.partner[c][nodes[i]] {
                        if let Some(&j) = index.get(&u) {
                            if !seen[j] {
                                seen[j] = true;
                                stack.push(j);
                            }
                        }
                    }
                }
            }
        }
        count
    }

    /// Invariants of every bubble of the graph.
    pub fn bubbles(&self) -> Vec<BubbleInfo> {
        self.bubble_components()
            .iter()
            .map(|nodes| self.bubble_info(nodes))
            .collect()
    }

    /// Invariants of a graph that is a single connected bubble
    /// (no color-0 lines required).
    pub fn bubble_invariants(&self) -> Result<BubbleInfo> {
        let comps = self.bubble_components();
        if comps.len() != 1 {
            return Err(Error::DisconnectedBubble);
        }
        Ok(self.bubble_info(&comps[0]))
    }

    /// The three jackets of a closed graph.
    pub fn jackets(&self) -> Result<[JacketReport; 3]> {
        if !self.is_closed() {
            return Err(Error::OpenGraph);
        }
        let reports: Vec<JacketReport> =
            (1..=3).map(|l| self.jacket(l)).collect();
        Ok([reports[0].clone(), reports[1].clone(), reports[2].clone()])
    }

    fn jacket(&self, l: usize) -> JacketReport {
        let kept: Vec<usize> = (1..=3).filter(|&c| c != l).collect();
        let (i, j) = (kept[0], kept[1]);
        // Ribbon vertices: the (i,j) bicolored cycles.
        let vertices = self.bicolored_cycles(i, j);
        let mut vertex_of = vec![usize::MAX; self.node_count];
        for (vi, cyc) in vertices.iter().enumerate() {
            for &n in cyc {
                vertex_of[n] = vi;
            }
        }
        // Union the ribbon vertices through the color-0 lines.
        let mut dsu = Dsu::new(vertices.len());
        let lines = self.lines(0);
        for &(a, b) in &lines {
            dsu.union(vertex_of[a], vertex_of[b]);
        }
        // Faces of the jacket: the (0,i) and (0,j) faces; each is supported
        // on one component (its nodes all share it).
        let mut comp_v = BTreeMap::<usize, JacketComponent>::new();
        for vi in 0..vertices.len() {
            let r = dsu.find(vi);
            comp_v.entry(r).or_insert(JacketComponent {
                v: 0,
                e: 0,
                f: 0,
                k: 0,
            });
            comp_v.get_mut(&r).unwrap().v += 1;
        }
        for &(a, _) in &lines {
            let r = dsu.find(vertex_of[a]);
            comp_v.get_mut(&r).unwrap().e += 1;
        }
        for c in [i, j] {
            for cyc in self.bicolored_cycles(0, c) {
                let r = dsu.find(vertex_of[cyc[0]]);
                comp_v.get_mut(&r).unwrap().f += 1;
            }
        }
        let components: Vec<JacketComponent> = comp_v
            .into_values()
            .map(|mut c| {
                c.k = 2 - c.v as i64 + c.e as i64 - c.f as i64;
                c
            })
            .collect();
        let delta = components.len().saturating_sub(1);
        JacketReport {
            color: l as u8,
            components,
            delta,
        }
    }

    /// Degree of a closed graph, computed by both the direct face-count
    /// formula and the jacket formula. The two must agree; a mismatch is an
    /// implementation bug surfaced as `InternalInconsistency`.
    ///
    /// Disconnected graphs get the sum of their components' degrees.
    pub fn degree(&self) -> Result<DegreeReport> {
        if !self.is_closed() {
            return Err(Error::OpenGraph);
        }
        let comps = self.components(&[0, 1, 2, 3]);
        let faces = self.faces()?;
        let bubbles = self.bubbles();
        let jackets = self.jackets()?;
        let line_count = self.line_count();

        let mut omega2: i64 = 0;
        let mut omega2_jacket: i64 = 0;
        if comps.len() <= 1 {
            // 2*omega = 6 + 3L - sum_b (3 - 2 rho(b)) - 2F
            omega2 = 6 + 3 * line_count as i64
                - bubbles.iter().map(|b| 3 - b.rho2).sum::<i64>()
                - 2 * faces.len() as i64;
            // 2*omega = sum k(J_l^(i)) + 2 sum_b sum_l delta_l^(b) - 2 sum_l delta_l
            omega2_jacket = jackets.iter().map(|j| j.demigenus_sum()).sum::<i64>()
                + 2 * bubbles
                    .iter()
                    .map(|b| b.delta.iter().sum::<usize>() as i64)
                    .sum::<i64>()
                - 2 * jackets.iter().map(|j| j.delta as i64).sum::<i64>();
        } else {
            for comp in &comps {
                let sub = self.induced_subgraph(comp)?;
                let rep = sub.degree()?;
                omega2 += rep.omega2;
                omega2_jacket += rep.omega2_jacket;
            }
        }
        if omega2 != omega2_jacket {
            return Err(Error::InternalInconsistency(format!(
                "degree formulas disagree: direct 2w = {omega2}, jacket 2w = {omega2_jacket}"
            )));
        }
        Ok(DegreeReport {
            faces,
            line_count,
            bubbles,
            jackets,
            omega2,
            omega2_jacket,
        })
    }

    /// `2 * omega` of the closed graph.
    pub fn omega2(&self) -> Result<i64> {
        Ok(self.degree()?.omega2)
    }

    /// True iff the nodes admit a 2-coloring making every edge of every
    /// color (including color 0) bichromatic.
    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None::<bool>; self.node_count];
        for start in 0..self.node_count {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for c in 0..4 {
                    if let Some(u) = self.partner[c][v] {
                        match side[u] {
                            None => {
                                side[u] = Some(!sv);
                                stack.push(u);
                            }
                            Some(su) if su == sv => return false,
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }

    /// Induced subgraph on `nodes` (sorted), keeping only edges with both
    /// endpoints inside. Nodes are relabeled to 0..len in order.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Result<Self> {
        let index: BTreeMap<NodeId, usize> =
            nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut matchings: [Vec<(NodeId, NodeId)>; 4] = Default::default();
        for c in 0..4 {
            for (i, &v) in nodes.iter().enumerate() {
                if let Some(u) = self.partner[c][v] {
                    if let Some(&j) = index.get(&u) {
                        if i < j {
                            matchings[c].push((i, j));
                        }
                    }
                }
            }
        }
        // Colors 1..3 of an induced bubble component are perfect again;
        // arbitrary node sets may break that and are rejected by validation.
        EdgeColoredGraph::from_matchings(
            nodes.len(),
            [
                &matchings[0],
                &matchings[1],
                &matchings[2],
                &matchings[3],
            ],
        )
    }

    /// Applies a node relabeling: node `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[NodeId]) -> Result<Self> {
        let mut matchings: [Vec<(NodeId, NodeId)>; 4] = Default::default();
        for c in 0..4 {
            for (a, b) in self.lines(c) {
                matchings[c].push((perm[a], perm[b]));
            }
        }
        EdgeColoredGraph::from_matchings(
            self.node_count,
            [
                &matchings[0],
                &matchings[1],
                &matchings[2],
                &matchings[3],
            ],
        )
    }

    /// Applies a permutation of the colors 1..3: color `l` becomes
    /// `perm[l-1]`.
    pub fn permute_colors(&self, perm: [usize; 3]) -> Self {
        let mut g = self.clone();
        for l in 1..=3usize {
            g.partner[perm[l - 1]] = self.partner[l].clone();
        }
        g
    }

    /// Canonical byte string: equal for two graphs iff they are related by
    /// a node relabeling preserving every color class. Colors are never
    /// permuted here; see [`EdgeColoredGraph::canonical_form_color_orbit`].
    ///
    /// Every node has at most one neighbor per color, so a breadth-first
    /// traversal from a fixed root in a fixed color order forces the whole
    /// labeling; the canonical form is the minimum encoding over roots,
    /// with components sorted.
    pub fn canonical_form(&self) -> Vec<u8> {
        debug_assert!(self.node_count < 250, "canonical encoding uses u8 labels");
        let comps = self.components(&[0, 1, 2, 3]);
        let mut blocks: Vec<Vec<u8>> = comps
            .iter()
            .map(|comp| {
                let mut best: Option<Vec<u8>> = None;
                for &root in comp {
                    let enc = self.bfs_encoding(root, comp.len());
                    if best.as_ref().map_or(true, |b| enc < *b) {
                        best = Some(enc);
                    }
                }
                best.unwrap()
            })
            .collect();
        blocks.sort();
        let mut out = vec![self.node_count as u8];
        for b in blocks {
            out.push((b.len() / 4) as u8);
            out.extend(b);
        }
        out
    }

    fn bfs_encoding(&self, root: NodeId, comp_size: usize) -> Vec<u8> {
        let mut label = vec![u8::MAX; self.node_count];
        let mut order = Vec::with_capacity(comp_size);
        label[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for c in 0..4 {
                if let Some(u) = self.partner[c][v] {
                    if label[u] == u8::MAX {
                        label[u] = order.len() as u8;
                        order.push(u);
                    }
                }
            }
        }
        let mut enc = Vec::with_capacity(4 * order.len());
        for &v in &order {
            for c in 0..4 {
                enc.push(match self.partner[c][v] {
                    Some(u) => label[u],
                    None => u8::MAX,
                });
            }
        }
        enc
    }

    /// Minimum of [`EdgeColoredGraph::canonical_form`] over the six
    /// permutations of the colors 1..3 (orbit-level deduplication).
    pub fn canonical_form_color_orbit(&self) -> Vec<u8> {
        const PERMS: [[usize; 3]; 6] = [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ];
        PERMS
            .iter()
            .map(|&p| self.permute_colors(p).canonical_form())
            .min()
            .unwrap()
    }

    /// Renders the graph in the text format of [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut s = format!("nodes {}\n", self.node_count);
        for c in 0..4 {
            let lines = self.lines(c);
            if c > 0 || !lines.is_empty() {
                s.push_str(&format!("{c}:"));
                for (a, b) in lines {
                    s.push_str(&format!(" {}-{}", a + 1, b + 1));
                }
                s.push('\n');
            }
        }
        s
    }
}

/// Plain union-find.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Parses the text graph format (see the module docs). Node ids in files
/// are 1-based.
pub fn parse_graph(text: &str) -> Result<EdgeColoredGraph> {
    let mut node_count: Option<usize> = None;
    let mut matchings: [Vec<(NodeId, NodeId)>; 4] = Default::default();
    let mut seen_color = [false; 4];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| Error::MalformedFile(format!("line {}: {m}", lineno + 1));
        if let Some(rest) = line.strip_prefix("nodes") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(format!("bad node count {:?}", rest.trim())))?;
            node_count = Some(n);
            continue;
        }
        let n = node_count.ok_or_else(|| err("expected `nodes N` first".into()))?;
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| err("expected `color: pairs`".into()))?;
        let c: usize = head
            .trim()
            .parse()
            .map_err(|_| err(format!("bad color {:?}", head.trim())))?;
        if c > 3 {
            return Err(err(format!("color {c} out of range 0..=3")));
        }
        if seen_color[c] {
            return Err(err(format!("duplicate line for color {c}")));
        }
        seen_color[c] = true;
        for tok in rest.split_whitespace() {
            let (a, b) = tok
                .split_once('-')
                .ok_or_else(|| err(format!("bad pair {tok:?}")))?;
            let a: usize = a.parse().map_err(|_| err(format!("bad node id {a:?}")))?;
            let b: usize = b.parse().map_err(|_| err(format!("bad node id {b:?}")))?;
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidMatching(format!(
                    "color {c}: node id out of range 1..={n} in pair ({a}, {b})"
                )));
            }
            matchings[c].push((a - 1, b - 1));
        }
    }
    let n = node_count.ok_or_else(|| Error::MalformedFile("missing `nodes N`".into()))?;
    for c in 1..=3 {
        if !seen_color[c] {
            return Err(Error::MalformedFile(format!("missing line for color {c}")));
        }
    }
    EdgeColoredGraph::from_matchings(
        n,
        [
            &matchings[0],
            &matchings[1],
            &matchings[2],
            &matchings[3],
        ],
    )
}

// ---------------------------------------------------------------------------
// Built-in graphs
// ---------------------------------------------------------------------------

fn tetra_matchings(o: usize) -> [Vec<(NodeId, NodeId)>; 3] {
    [
        vec![(o, o + 1), (o + 2, o + 3)],
        vec![(o, o + 2), (o + 1, o + 3)],
        vec![(o, o + 3), (o + 1, o + 2)],
    ]
}

/// Pillow with distinguished color `l`: the distinguished color crosses the
/// two double-edge pairs {o, o+1} and {o+2, o+3}; the other two colors both
/// match along the pairs.
fn pillow_matchings(o: usize, l: usize) -> [Vec<(NodeId, NodeId)>; 3] {
    let crossing = vec![(o, o + 2), (o + 1, o + 3)];
    let doubled = vec![(o, o + 1), (o + 2, o + 3)];
    let mut m: [Vec<(NodeId, NodeId)>; 3] = Default::default();
    for c in 1..=3 {
        m[c - 1] = if c == l {
            crossing.clone()
        } else {
            doubled.clone()
        };
    }
    m
}

fn build(n: usize, c0: Vec<(NodeId, NodeId)>, m: [Vec<(NodeId, NodeId)>; 3]) -> EdgeColoredGraph {
    EdgeColoredGraph::from_matchings(n, [&c0, &m[0], &m[1], &m[2]])
        .expect("built-in graphs are valid")
}

fn join(a: [Vec<(NodeId, NodeId)>; 3], b: [Vec<(NodeId, NodeId)>; 3]) -> [Vec<(NodeId, NodeId)>; 3] {
    let mut out = a;
    for c in 0..3 {
        out[c].extend(&b[c]);
    }
    out
}

/// The tetrahedron bubble (no color-0 lines).
pub fn tetra_bubble() -> EdgeColoredGraph {
    build(4, vec![], tetra_matchings(0))
}

/// The pillow bubble of color `l`.
pub fn pillow_bubble(l: usize) -> EdgeColoredGraph {
    assert!((1..=3).contains(&l));
    build(4, vec![], pillow_matchings(0, l))
}

/// The quadratic bubble: two nodes, three parallel edges.
pub fn b2_bubble() -> EdgeColoredGraph {
    build(2, vec![], [vec![(0, 1)], vec![(0, 1)], vec![(0, 1)]])
}

/// Two tetrahedra joined by four parallel propagators; the type-I melonic
/// base graph, degree 0.
pub fn tetra_tetra() -> EdgeColoredGraph {
    let m = join(tetra_matchings(0), tetra_matchings(4));
    build(8, (0..4).map(|i| (i, i + 4)).collect(), m)
}

/// One pillow of color `l` with both double-edge pairs closed by tadpole
/// propagators; the type-II melonic base graph, degree 0.
pub fn pillow_double_tadpole(l: usize) -> EdgeColoredGraph {
    build(4, vec![(0, 1), (2, 3)], pillow_matchings(0, l))
}

/// One tetrahedron with the two propagators closed as tadpoles along the
/// color-`l` matching; the NLO core graph, degree 1/2.
pub fn infinity_graph(l: usize) -> EdgeColoredGraph {
    assert!((1..=3).contains(&l));
    let m = tetra_matchings(0);
    build(4, m[l - 1].clone(), m)
}

/// Looks up a graph by its built-in name.
pub fn builtin(name: &str) -> Option<EdgeColoredGraph> {
    Some(match name {
        "tetra" => tetra_bubble(),
        "b2" => b2_bubble(),
        "pillow" | "pillow-1" => pillow_bubble(1),
        "pillow-2" => pillow_bubble(2),
        "pillow-3" => pillow_bubble(3),
        "tetra-tetra" => tetra_tetra(),
        "pillow-double-tadpole" | "pillow-double-tadpole-1" => pillow_double_tadpole(1),
        "pillow-double-tadpole-2" => pillow_double_tadpole(2),
        "pillow-double-tadpole-3" => pillow_double_tadpole(3),
        "infinity" | "infinity-1" => infinity_graph(1),
        "infinity-2" => infinity_graph(2),
        "infinity-3" => infinity_graph(3),
        _ => return None,
    })
}

/// Names accepted by [`builtin`], one per distinct graph.
pub const BUILTIN_NAMES: &[&str] = &[
    "tetra",
    "b2",
    "pillow-1",
    "pillow-2",
    "pillow-3",
    "tetra-tetra",
    "pillow-double-tadpole-1",
    "pillow-double-tadpole-2",
    "pillow-double-tadpole-3",
    "infinity-1",
    "infinity-2",
    "infinity-3",
];
