//! Exhaustive censuses of quartic-model vacuum graphs, and the brute-force
//! plane-tree oracle.
//!
//! A census fixes the interaction content — `n1` tetrahedra and a pillow
//! count per color — lays the bubbles out on globally numbered nodes, and
//! iterates every perfect matching of the color-0 half-lines (one per
//! node). Connected pairings are deduplicated by canonical form;
//! disconnected ones are tallied separately. The pairing space can be
//! partitioned by the first pairing choice for parallel runs; partial
//! reports merge associatively.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{EdgeColoredGraph, NodeId};
use crate::melon::{self, Verdict};

pub const DEFAULT_NODE_BUDGET: usize = 24;
pub const DEFAULT_TREE_BUDGET: u64 = 20;

/// Interaction content of a census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusConfig {
    /// Tetrahedral bubbles.
    pub n1: usize,
    /// Pillow bubbles per distinguished color.
    pub n2: [usize; 3],
    /// Hard cap on total nodes.
    pub node_budget: usize,
}

impl CensusConfig {
    pub fn new(n1: usize, n2: [usize; 3]) -> Self {
        CensusConfig {
            n1,
            n2,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn bubble_count(&self) -> usize {
        self.n1 + self.n2.iter().sum::<usize>()
    }

    pub fn node_count(&self) -> usize {
        4 * self.bubble_count()
    }
}

/// One isomorphism class of connected vacuum graphs.
#[derive(Debug, Clone)]
pub struct CensusClass {
    pub canonical: Vec<u8>,
    pub representative: EdgeColoredGraph,
    /// Number of labelled pairings landing in this class.
    pub multiplicity: u64,
    /// `2 * omega`.
    pub omega2: i64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub config: CensusConfig,
    /// Classes sorted by canonical form.
    pub classes: Vec<CensusClass>,
    /// Labelled pairings that produced a connected graph.
    pub connected_total: u64,
    /// Labelled pairings discarded as disconnected.
    pub disconnected_total: u64,
}

impl CensusReport {
    /// All labelled pairings seen, connected or not.
    pub fn labelled_total(&self) -> u64 {
        self.connected_total + self.disconnected_total
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class counts grouped by `2 * omega`, ascending.
    pub fn classes_by_omega2(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry(c.omega2).or_insert(0) += 1;
        }
        m
    }
}

/// `(n-1)!! * (n-3)!! ...` — the number of perfect matchings of `n` points
/// (`n` even) is `(n-1)!!`.
pub fn double_factorial(mut n: u64) -> BigUint {
    let mut out = BigUint::one();
    while n > 1 {
        out *= n;
        n -= 2;
    }
    out
}

/// The bubble skeleton of a census: colors 1..3 fixed, color 0 empty.
fn skeleton(config: &CensusConfig) -> Result<EdgeColoredGraph> {
    let n = config.node_count();
    if n > config.node_budget {
        return Err(Error::BudgetExceeded(format!(
            "{n} nodes requested, budget {}",
            config.node_budget
        )));
    }
    if n == 0 {
        return Err(Error::BudgetExceeded("empty census".into()));
    }
    let mut m: [Vec<(NodeId, NodeId)>; 4] = Default::default();
    let mut o = 0;
    for _ in 0..config.n1 {
        m[1].extend([(o, o + 1), (o + 2, o + 3)]);
        m[2].extend([(o, o + 2), (o + 1, o + 3)]);
        m[3].extend([(o, o + 3), (o + 1, o + 2)]);
        o += 4;
    }
    for l in 1..=3usize {
        for _ in 0..config.n2[l - 1] {
            for c in 1..=3usize {
                if c == l {
                    m[c].extend([(o, o + 2), (o + 1, o + 3)]);
                } else {
                    m[c].extend([(o, o + 1), (o + 2, o + 3)]);
                }
            }
            o += 4;
        }
    }
    EdgeColoredGraph::from_matchings(n, [&m[0], &m[1], &m[2], &m[3]])
}

/// Number of partitions accepted by [`enumerate_vacuum_partition`]:
/// one per choice of the first node's color-0 partner.
pub fn partition_count(config: &CensusConfig) -> usize {
    config.node_count().saturating_sub(1)
}

/// Accumulates pairings into a class map keyed by canonical form.
struct Accumulator {
    skeleton: EdgeColoredGraph,
    classes: BTreeMap<Vec<u8>, (EdgeColoredGraph, u64)>,
    connected: u64,
    disconnected: u64,
}

impl Accumulator {
    fn leaf(&mut self, pairing: &[Option<NodeId>]) {
        let pairs: Vec<(NodeId, NodeId)> = pairing
            .iter()
            .enumerate()
            .filter_map(|(a, &b)| b.filter(|&b| a < b).map(|b| (a, b)))
            .collect();
        let mut g = self.skeleton.clone();
        g.set_color0(&pairs);
        if !g.is_connected() {
            self.disconnected += 1;
            return;
        }
        self.connected += 1;
        let key = g.canonical_form();
        self.classes
            .entry(key)
            .and_modify(|e| e.1 += 1)
            .or_insert((g, 1));
    }

    fn recurse(&mut self, pairing: &mut Vec<Option<NodeId>>) {
        let Some(first) = pairing.iter().position(|p| p.is_none()) else {
            self.leaf(&pairing.clone());
            return;
        };
        for other in first + 1..pairing.len() {
            if pairing[other].is_some() {
                continue;
            }
            pairing[first] = Some(other);
            pairing[other] = Some(first);
            self.recurse(pairing);
            pairing[first] = None;
            pairing[other] = None;
        }
    }

    fn finish(self, config: CensusConfig) -> Result<CensusReport> {
        let mut classes = Vec::with_capacity(self.classes.len());
        for (canonical, (representative, multiplicity)) in self.classes {
            let omega2 = representative.omega2()?;
            let verdict = melon::reduce(&representative)?.verdict;
            classes.push(CensusClass {
                canonical,
                representative,
                multiplicity,
                omega2,
                verdict,
            });
        }
        Ok(CensusReport {
            config,
            classes,
            connected_total: self.connected,
            disconnected_total: self.disconnected,
        })
    }
}

fn enumerate_with(
    config: &CensusConfig,
    partition: Option<usize>,
) -> Result<CensusReport> {
    let skeleton = skeleton(config)?;
    let n = skeleton.node_count();
    let mut acc = Accumulator {
        skeleton,
        classes: BTreeMap::new(),
        connected: 0,
        disconnected: 0,
    };
    let mut pairing: Vec<Option<NodeId>> = alloc::vec![None; n];
    match partition {
        None => acc.recurse(&mut pairing),
        Some(k) => {
            let other = k + 1;
            if other >= n {
                return Err(Error::BudgetExceeded(format!(
                    "partition {k} out of range 0..{}",
                    n - 1
                )));
            }
            pairing[0] = Some(other);
            pairing[other] = Some(0);
            acc.recurse(&mut pairing);
        }
    }
    acc.finish(*config)
}

/// Full census: every perfect matching of the color-0 half-lines.
pub fn enumerate_vacuum(config: &CensusConfig) -> Result<CensusReport> {
    enumerate_with(config, None)
}

/// The slice of the census in which node 0 is paired with node
/// `partition + 1`. Merging all `partition_count` slices with
/// [`merge_reports`] reproduces [`enumerate_vacuum`] exactly.
pub fn enumerate_vacuum_partition(
    config: &CensusConfig,
    partition: usize,
) -> Result<CensusReport> {
    enumerate_with(config, Some(partition))
}

/// Merges partial census reports; associative and commutative over the
/// class maps, so worker count and scheduling do not affect the result.
pub fn merge_reports(parts: Vec<CensusReport>) -> Result<CensusReport> {
    let mut iter = parts.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::BudgetExceeded("no partial reports to merge".into()))?;
    let config = first.config;
    let mut classes: BTreeMap<Vec<u8>, CensusClass> = BTreeMap::new();
    let mut connected = 0u64;
    let mut disconnected = 0u64;
    for part in core::iter::once(first).chain(iter) {
        if part.config != config {
            return Err(Error::InternalInconsistency(
                "merging censuses with different configs".into(),
            ));
        }
        connected += part.connected_total;
        disconnected += part.disconnected_total;
        for c in part.classes {
            classes
                .entry(c.canonical.clone())
                .and_modify(|e| e.multiplicity += c.multiplicity)
                .or_insert(c);
        }
    }
    Ok(CensusReport {
        config,
        classes: classes.into_values().collect(),
        connected_total: connected,
        disconnected_total: disconnected,
    })
}

/// Outcome of checking a census against the large-N theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremCheck {
    /// (a) every class has `omega >= 0` (half-integrality is structural:
    /// `2 * omega` is stored as an integer).
    pub omega_nonnegative: bool,
    /// (b) `omega = 0` iff the class reduces to a melonic base graph.
    pub lo_iff_melonic: bool,
    /// (c) `omega = 1/2` iff the class reduces to an infinity graph.
    pub nlo_iff_infinity: bool,
    /// (d) on pure-tetrahedron censuses, `omega = 0` classes have no face
    /// of length 1 or 3 and at least 6 faces of length 2.
    pub face_lemma: bool,
    /// Multiplicities (plus the disconnected tally) sum to the double
    /// factorial counting all pairings.
    pub multiplicity_sum: bool,
}

impl TheoremCheck {
    pub fn all_pass(&self) -> bool {
        self.omega_nonnegative
            && self.lo_iff_melonic
            && self.nlo_iff_infinity
            && self.face_lemma
            && self.multiplicity_sum
    }
}

/// Checks the census against the LO/NLO classification theorems and the
/// face-length lemmas.
pub fn census_theorem_check(report: &CensusReport) -> Result<TheoremCheck> {
    let mut check = TheoremCheck {
        omega_nonnegative: true,
        lo_iff_melonic: true,
        nlo_iff_infinity: true,
        face_lemma: true,
        multiplicity_sum: true,
    };
    let pure_tetra = report.config.n2 == [0, 0, 0];
    for class in &report.classes {
        if class.omega2 < 0 {
            check.omega_nonnegative = false;
        }
        if (class.omega2 == 0) != class.verdict.is_melonic() {
            check.lo_iff_melonic = false;
        }
        if (class.omega2 == 1) != matches!(class.verdict, Verdict::Infinity(_)) {
            check.nlo_iff_infinity = false;
        }
        if pure_tetra && class.omega2 == 0 {
            let faces = class.representative.faces()?;
            if faces.iter().any(|f| f.length == 1 || f.length == 3) {
                check.face_lemma = false;
            }
            if faces.iter().filter(|f| f.length == 2).count() < 6 {
                check.face_lemma = false;
            }
        }
    }
    let expected = double_factorial(report.config.node_count() as u64 - 1);
    if BigUint::from(report.labelled_total()) != expected
        || report.classes.iter().map(|c| c.multiplicity).sum::<u64>()
            != report.connected_total
    {
        check.multiplicity_sum = false;
    }
    Ok(check)
}

// ---------------------------------------------------------------------------
// Plane-tree oracle
// ---------------------------------------------------------------------------

/// Counts binary–quaternary plane trees with `p` quaternary and `q` binary
/// internal vertices by exhaustive generation: each tree corresponds to one
/// root-to-completion path of the slot-filling walk below.
///
/// Budget: `4p + 2q` must not exceed `max_weight`.
pub fn enumerate_trees_with_budget(p: u64, q: u64, max_weight: u64) -> Result<BigUint> {
    let weight = 4 * p + 2 * q;
    if weight > max_weight {
        return Err(Error::BudgetExceeded(format!(
            "4p + 2q = {weight} exceeds tree budget {max_weight}"
        )));
    }
    Ok(BigUint::from(walk(1, p, q)))
}

/// Fills open subtree slots left to right: a slot becomes a leaf, a binary
/// vertex (one more net slot) or a quaternary vertex (three more).
fn walk(open: u64, p: u64, q: u64) -> u64 {
    if p == 0 && q == 0 {
        // Every remaining slot is a leaf: exactly one completion.
        return 1;
    }
    if open == 0 {
        return 0;
    }
    let mut total = walk(open - 1, p, q); // leaf
    if q > 0 {
        total += walk(open + 1, p, q - 1);
    }
    if p > 0 {
        total += walk(open + 3, p - 1, q);
    }
    total
}

/// [`enumerate_trees_with_budget`] at the default budget.
pub fn enumerate_trees(p: u64, q: u64) -> Result<BigUint> {
    enumerate_trees_with_budget(p, q, DEFAULT_TREE_BUDGET)
}
