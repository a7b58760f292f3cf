//! Brute-force edge-cut oracles: k-edge-cut counts and enumeration, cut
//! classification, and spanning-tree counting.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, Budget, Combinations};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, UnionFind, Vertex};

/// Reusable connectivity test for `G - F` with `F` given by a predicate.
pub(crate) struct CutTester<'g> {
    g: &'g MultiGraph,
    uf: UnionFind,
}

impl<'g> CutTester<'g> {
    pub(crate) fn new(g: &'g MultiGraph) -> Self {
        Self {
            g,
            uf: UnionFind::new(g.n()),
        }
    }

    pub(crate) fn disconnects(&mut self, removed: impl Fn(EdgeId) -> bool) -> bool {
        self.uf.reset();
        let mut comps = self.g.n();
        if comps == 1 {
            return false;
        }
        for (id, &(u, v)) in self.g.edges().iter().enumerate() {
            if !removed(id) && self.uf.union(u, v) {
                comps -= 1;
                if comps == 1 {
                    return false;
                }
            }
        }
        true
    }
}

fn check_k(g: &MultiGraph, k: usize) -> Result<()> {
    if k > g.m() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds the edge count {}",
            g.m()
        )));
    }
    Ok(())
}

fn count_k_cuts(g: &MultiGraph, k: usize) -> u64 {
    let mut tester = CutTester::new(g);
    let mut flags = vec![false; g.m()];
    let mut combos = Combinations::new(g.m(), k);
    let mut count = 0u64;
    while let Some(set) = combos.advance() {
        for &e in set {
            flags[e] = true;
        }
        if tester.disconnects(|e| flags[e]) {
            count += 1;
        }
        for &e in set {
            flags[e] = false;
        }
    }
    count
}

/// Number of k-subsets of edges whose removal disconnects `g`.
pub fn mu_k_bruteforce(g: &MultiGraph, k: usize, budget: Budget) -> Result<BigUint> {
    check_k(g, k)?;
    budget.check(&binomial(g.m(), k))?;
    Ok(BigUint::from(count_k_cuts(g, k)))
}

/// The k-edge-cuts of a graph in lexicographic order of edge ids.
pub struct CutIter<'g> {
    tester: CutTester<'g>,
    combos: Combinations,
    flags: Vec<bool>,
}

impl Iterator for CutIter<'_> {
    type Item = EdgeSet;

    fn next(&mut self) -> Option<EdgeSet> {
        while let Some(set) = self.combos.advance() {
            for &e in set {
                self.flags[e] = true;
            }
            let flags = &self.flags;
            let hit = self.tester.disconnects(|e| flags[e]);
            for &e in set {
                self.flags[e] = false;
            }
            if hit {
                return Some(EdgeSet::from_sorted(set.to_vec()));
            }
        }
        None
    }
}

pub fn enumerate_cuts(g: &MultiGraph, k: usize, budget: Budget) -> Result<CutIter<'_>> {
    check_k(g, k)?;
    budget.check(&binomial(g.m(), k))?;
    Ok(CutIter {
        tester: CutTester::new(g),
        combos: Combinations::new(g.m(), k),
        flags: vec![false; g.m()],
    })
}

/// The sequence `mu_0..mu_m` of k-edge-cut counts. Entries that were neither
/// enumerated nor forced by the corank rule are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSpectrum {
    n: usize,
    m: usize,
    counts: Vec<Option<BigUint>>,
}

impl CutSpectrum {
    pub fn from_counts(n: usize, m: usize, counts: Vec<Option<BigUint>>) -> Result<Self> {
        if counts.len() != m + 1 {
            return Err(Error::InvalidParameter(format!(
                "spectrum of an {m}-edge graph needs {} entries, got {}",
                m + 1,
                counts.len()
            )));
        }
        if let Some(k) = (0..=m).find(|&k| matches!(&counts[k], Some(c) if *c > binomial(m, k))) {
            return Err(Error::InvalidParameter(format!(
                "mu_{k} exceeds C({m},{k})"
            )));
        }
        Ok(Self { n, m, counts })
    }

    pub fn complete(n: usize, counts: Vec<BigUint>) -> Result<Self> {
        let m = counts
            .len()
            .checked_sub(1)
            .ok_or(Error::InvalidParameter("empty spectrum".into()))?;
        Self::from_counts(n, m, counts.into_iter().map(Some).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Cycle-space dimension `m - n + 1`.
    pub fn corank(&self) -> i64 {
        self.m as i64 - self.n as i64 + 1
    }

    pub fn get(&self, k: usize) -> Option<&BigUint> {
        self.counts.get(k).and_then(Option::as_ref)
    }

    pub fn require(&self, k: usize) -> Result<&BigUint> {
        self.get(k).ok_or(Error::IncompleteSpectrum(k))
    }

    pub fn counts(&self) -> &[Option<BigUint>] {
        &self.counts
    }

    pub fn is_complete(&self) -> bool {
        self.counts.iter().all(Option::is_some)
    }

    /// CSV with header `k,mu_k,binom_m_k`; unknown entries are left empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,mu_k,binom_m_k\n");
        for (k, c) in self.counts.iter().enumerate() {
            let mu = c.as_ref().map(ToString::to_string).unwrap_or_default();
            out.push_str(&format!("{k},{mu},{}\n", binomial(self.m, k)));
        }
        out
    }
}

/// Smallest `k` for which every k-subset is a cut because fewer than `n - 1`
/// edges remain.
pub fn corank_threshold(n: usize, m: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let c = m as i64 - n as i64 + 1;
    Some((c + 1).max(0) as usize)
}

/// Counts for `k <= k_max` by enumeration (one sweep over all `2^m` subsets
/// when `k_max = m`); entries above `k_max` from the corank rule when it
/// applies, otherwise absent.
pub fn cut_spectrum(g: &MultiGraph, k_max: Option<usize>, budget: Budget) -> Result<CutSpectrum> {
    let m = g.m();
    let k_max = k_max.unwrap_or(m);
    check_k(g, k_max)?;
    let needed: BigUint = (0..=k_max).map(|k| binomial(m, k)).sum();
    budget.check(&needed)?;

    let mut counts: Vec<Option<BigUint>> = vec![None; m + 1];
    if k_max == m && m < 64 {
        let mut tally = vec![0u64; m + 1];
        let mut tester = CutTester::new(g);
        for mask in 0u64..(1u64 << m) {
            if tester.disconnects(|e| mask >> e & 1 == 1) {
                tally[mask.count_ones() as usize] += 1;
            }
        }
        for (k, t) in tally.into_iter().enumerate() {
            counts[k] = Some(BigUint::from(t));
        }
    } else {
        for (k, slot) in counts.iter_mut().enumerate().take(k_max + 1) {
            *slot = Some(BigUint::from(count_k_cuts(g, k)));
        }
    }
    if let Some(t) = corank_threshold(g.n(), m) {
        for (k, slot) in counts.iter_mut().enumerate().skip(k_max + 1) {
            if k >= t {
                *slot = Some(binomial(m, k));
            }
        }
    }
    CutSpectrum::from_counts(g.n(), m, counts)
}

/// Shape of the subgraph induced by a separated vertex set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signature {
    /// Chordless path on the given number of vertices (`Path(1)` is `K1`).
    Path(usize),
    Cycle(usize),
    Other {
        n: usize,
        m: usize,
    },
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::Path(1) => write!(f, "K1"),
            Signature::Path(2) => write!(f, "K2"),
            Signature::Path(n) => write!(f, "P{n}"),
            Signature::Cycle(n) => write!(f, "C{n}"),
            Signature::Other { n, m } => write!(f, "H{n}_{m}"),
        }
    }
}

impl Serialize for Signature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Signature of a connected graph.
pub fn signature(h: &MultiGraph) -> Signature {
    let (n, m) = (h.n(), h.m());
    let max_deg = h.degrees().into_iter().max().unwrap_or(0);
    if m + 1 == n && max_deg <= 2 {
        Signature::Path(n)
    } else if n >= 3 && m == n && h.is_regular(2) && h.is_simple() {
        Signature::Cycle(n)
    } else {
        Signature::Other { n, m }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CutKind {
    VertexSeparating,
    EdgeSeparating,
    Nontrivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatedSet {
    pub vertices: Vec<Vertex>,
    pub signature: Signature,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutClassification {
    pub kind: CutKind,
    /// Components `C` of `G - F` with no edge of `F` inside `C`, ordered by
    /// smallest vertex.
    pub separated_sets: Vec<SeparatedSet>,
}

impl CutClassification {
    /// Census key: `V`, `E`, or the signature of the smallest separated set
    /// of a nontrivial cut (`unseparated` when there is none).
    pub fn key(&self) -> String {
        match self.kind {
            CutKind::VertexSeparating => "V".into(),
            CutKind::EdgeSeparating => "E".into(),
            CutKind::Nontrivial => self
                .separated_sets
                .iter()
                .min_by(|a, b| {
                    (a.vertices.len(), &a.signature).cmp(&(b.vertices.len(), &b.signature))
                })
                .map(|s| s.signature.to_string())
                .unwrap_or_else(|| "unseparated".into()),
        }
    }
}

pub fn classify_cut(g: &MultiGraph, f: &EdgeSet) -> Result<CutClassification> {
    if !g.is_edge_cut(f)? {
        return Err(Error::NotACut);
    }
    let (rest, _) = g.remove_edges(f)?;
    let comp = rest.components();
    let count = comp.iter().max().map_or(0, |&c| c + 1);
    let mut dirty = vec![false; count];
    for e in f.iter() {
        let (u, v) = g.edges()[e];
        if comp[u] == comp[v] {
            dirty[comp[u]] = true;
        }
    }
    let mut separated_sets = Vec::new();
    for c in (0..count).filter(|&c| !dirty[c]) {
        let vertices: Vec<Vertex> = (0..g.n()).filter(|&v| comp[v] == c).collect();
        let signature = signature(&g.induced_subgraph(&vertices)?);
        separated_sets.push(SeparatedSet {
            vertices,
            signature,
        });
    }
    let kind = if separated_sets.iter().any(|s| s.vertices.len() == 1) {
        CutKind::VertexSeparating
    } else if separated_sets.iter().any(|s| s.vertices.len() == 2) {
        CutKind::EdgeSeparating
    } else {
        CutKind::Nontrivial
    };
    Ok(CutClassification {
        kind,
        separated_sets,
    })
}

/// Counts of the k-edge-cuts of a graph by classification.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CutCensus {
    pub k: usize,
    pub total: u64,
    #[serde(rename = "V")]
    pub vertex: u64,
    #[serde(rename = "E")]
    pub edge: u64,
    /// Nontrivial cuts keyed by signature.
    #[serde(rename = "N")]
    pub nontrivial: BTreeMap<String, u64>,
}

impl CutCensus {
    pub fn nontrivial_total(&self) -> u64 {
        self.nontrivial.values().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serializes")
    }
}

pub fn cut_type_census(g: &MultiGraph, k: usize, budget: Budget) -> Result<CutCensus> {
    let mut census = CutCensus {
        k,
        ..CutCensus::default()
    };
    for cut in enumerate_cuts(g, k, budget)? {
        let class = classify_cut(g, &cut)?;
        census.total += 1;
        match class.kind {
            CutKind::VertexSeparating => census.vertex += 1,
            CutKind::EdgeSeparating => census.edge += 1,
            CutKind::Nontrivial => *census.nontrivial.entry(class.key()).or_default() += 1,
        }
    }
    Ok(census)
}

/// Number of spanning trees: determinant of a reduced Laplacian by
/// fraction-free (Bareiss) elimination.
pub fn spanning_tree_count(g: &MultiGraph) -> BigUint {
    let size = g.n() - 1;
    if size == 0 {
        return BigUint::one();
    }
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for &(u, v) in g.edges() {
        if u < size {
            a[u][u] += 1;
        }
        if v < size {
            a[v][v] += 1;
        }
        if u < size && v < size {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for p in 0..size {
        if a[p][p].is_zero() {
            match (p + 1..size).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigUint::zero(),
            }
        }
        for i in p + 1..size {
            for j in p + 1..size {
                let t = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                a[i][j] = t / &prev;
            }
            a[i][p] = BigInt::zero();
        }
        prev = a[p][p].clone();
    }
    let det = &a[size - 1][size - 1] * sign;
    det.abs()
        .to_biguint()
        .expect("absolute value is nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn wagner() -> MultiGraph {
        catalog::graph("W").unwrap().graph
    }

    #[test]
    fn wagner_cut_counts() {
        let w = wagner();
        assert_eq!(mu_k_bruteforce(&w, 3, Budget::DEFAULT).unwrap(), big(8));
        assert_eq!(mu_k_bruteforce(&w, 5, Budget::DEFAULT).unwrap(), big(400));
        assert_eq!(enumerate_cuts(&w, 4, Budget::DEFAULT).unwrap().count(), 86);
    }

    #[test]
    fn wagner_full_spectrum() {
        let s = cut_spectrum(&wagner(), None, Budget::DEFAULT).unwrap();
        let expected = [0u32, 0, 0, 8, 86, 400, 924, 792, 495, 220, 66, 12, 1];
        for (k, &mu) in expected.iter().enumerate() {
            assert_eq!(s.get(k), Some(&big(mu as u64)), "k = {k}");
        }
    }

    #[test]
    fn g1_has_an_extra_three_cut() {
        let g1 = catalog::graph("G1").unwrap().graph;
        assert!(mu_k_bruteforce(&g1, 3, Budget::DEFAULT).unwrap() > big(8));
        let extra = EdgeSet::from_labels(&g1, &["23", "78", "15"]).unwrap();
        assert!(enumerate_cuts(&g1, 3, Budget::DEFAULT)
            .unwrap()
            .any(|c| c == extra));
    }

    #[test]
    fn budget_is_enforced() {
        let w = wagner();
        assert!(matches!(
            mu_k_bruteforce(&w, 6, Budget(923)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(mu_k_bruteforce(&w, 6, Budget(924)).is_ok());
        assert!(matches!(
            cut_spectrum(&w, None, Budget(4095)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn triangle_spectrum() {
        let c3 = MultiGraph::cycle(3).unwrap();
        let s = cut_spectrum(&c3, None, Budget::DEFAULT).unwrap();
        let expect: Vec<Option<BigUint>> = [0u64, 0, 3, 1].iter().map(|&x| Some(big(x))).collect();
        assert_eq!(s.counts(), &expect[..]);
        assert_eq!(s.corank(), 1);
    }

    #[test]
    fn partial_spectrum_uses_corank_rule() {
        let w = wagner();
        let s = cut_spectrum(&w, Some(3), Budget::DEFAULT).unwrap();
        assert_eq!(s.get(3), Some(&big(8)));
        assert_eq!(s.get(4), None);
        assert_eq!(s.get(5), None);
        assert_eq!(s.get(6), Some(&binomial(12, 6)));
        assert!(!s.is_complete());
    }

    #[test]
    fn enumeration_order_and_small_cases() {
        let w = wagner();
        let cuts: Vec<EdgeSet> = enumerate_cuts(&w, 3, Budget::DEFAULT).unwrap().collect();
        assert_eq!(cuts.len(), 8);
        assert!(cuts.windows(2).all(|p| p[0] < p[1]));
        let c4 = MultiGraph::cycle(4).unwrap();
        assert_eq!(enumerate_cuts(&c4, 1, Budget::DEFAULT).unwrap().count(), 0);
    }

    #[test]
    fn classify_vertex_star() {
        let w = wagner();
        let star = EdgeSet::from_labels(&w, &["12", "81", "15"]).unwrap();
        let c = classify_cut(&w, &star).unwrap();
        assert_eq!(c.kind, CutKind::VertexSeparating);
        assert!(c.separated_sets.iter().any(|s| s.vertices == vec![0]));
    }

    #[test]
    fn classify_m1_separates_two_four_cycles() {
        let w = wagner();
        let m1 = EdgeSet::from_labels(&w, &["12", "34", "56", "78"]).unwrap();
        let c = classify_cut(&w, &m1).unwrap();
        assert_eq!(c.kind, CutKind::Nontrivial);
        let sets: Vec<Vec<String>> = c
            .separated_sets
            .iter()
            .map(|s| s.vertices.iter().map(|&v| w.label(v)).collect())
            .collect();
        // D4 = {1,4,5,8} and D2 = {2,3,6,7}
        assert_eq!(
            sets,
            vec![vec!["1", "4", "5", "8"], vec!["2", "3", "6", "7"]]
        );
        assert!(c
            .separated_sets
            .iter()
            .all(|s| s.signature == Signature::Cycle(4)));
        assert_eq!(c.key(), "C4");
    }

    #[test]
    fn classify_path_separating_cut() {
        let w = wagner();
        // boundary of the path 8-1-2
        let f = EdgeSet::from_labels(&w, &["78", "48", "15", "23", "26"]).unwrap();
        let c = classify_cut(&w, &f).unwrap();
        assert_eq!(c.kind, CutKind::Nontrivial);
        assert_eq!(c.key(), "P3");
    }

    #[test]
    fn classify_rejects_non_cuts() {
        let w = wagner();
        let f = EdgeSet::from_labels(&w, &["12"]).unwrap();
        assert_eq!(classify_cut(&w, &f), Err(Error::NotACut));
    }

    #[test]
    fn wagner_census() {
        let w = wagner();
        let c5 = cut_type_census(&w, 5, Budget::DEFAULT).unwrap();
        assert_eq!((c5.vertex, c5.edge, c5.total), (276, 84, 400));
        assert_eq!(c5.nontrivial.get("P3"), Some(&24));
        assert_eq!(c5.nontrivial.get("C4"), Some(&16));
        assert_eq!(c5.nontrivial.len(), 2);
        let c3 = cut_type_census(&w, 3, Budget::DEFAULT).unwrap();
        assert_eq!((c3.vertex, c3.edge, c3.nontrivial_total()), (8, 0, 0));
    }

    #[test]
    fn spanning_trees() {
        assert_eq!(spanning_tree_count(&wagner()), big(392));
        assert_eq!(spanning_tree_count(&MultiGraph::path(6).unwrap()), big(1));
        assert_eq!(spanning_tree_count(&MultiGraph::cycle(8).unwrap()), big(8));
        assert_eq!(spanning_tree_count(&MultiGraph::empty(3).unwrap()), big(0));
        assert_eq!(spanning_tree_count(&MultiGraph::empty(1).unwrap()), big(1));
        let theta = MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(spanning_tree_count(&theta), big(3));
    }

    #[test]
    fn csv_header() {
        let c3 = MultiGraph::cycle(3).unwrap();
        let s = cut_spectrum(&c3, None, Budget::DEFAULT).unwrap();
        assert_eq!(s.to_csv(), "k,mu_k,binom_m_k\n0,0,1\n1,0,3\n2,3,3\n3,1,1\n");
    }
}
