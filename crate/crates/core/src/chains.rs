//! Chains, distillations, enlarged graphs, and induced edge-cut counting.
//!
//! A chain is a maximal path whose internal vertices have degree 2 and whose
//! two endpoints have degree at least 3. Collapsing every chain to a single
//! edge gives the distillation, whose edge `i` stands for chain `i`.
//!
//! In a 2-connected simple graph with more edges than vertices, `k` edges
//! leave the graph connected exactly when they lie in distinct chains whose
//! collapsed edges do not form a cut of the distillation. Hence
//!
//! ```text
//! mu_k(G) = C(m, k) - e_k(chain lengths) + mu_k^I(G)
//! ```
//!
//! where `mu_k^I` sums, over k-edge-cuts of the distillation, the product of
//! the corresponding chain lengths.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, Budget, Combinations};
use crate::cuts::{
    classify_cut, corank_threshold, enumerate_cuts, mu_k_bruteforce, CutKind, CutSpectrum,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    /// Edge ids in path order, starting at `ends.0`.
    pub edges: Vec<EdgeId>,
    pub ends: (Vertex, Vertex),
    pub internal: Vec<Vertex>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_incident_to(&self, v: Vertex) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }

    /// Number of shared endpoints: 0 nonincident, 1 incident, 2 parallel.
    pub fn shared_ends(&self, other: &Chain) -> usize {
        [self.ends.0, self.ends.1]
            .iter()
            .filter(|&&v| other.is_incident_to(v))
            .count()
    }
}

#[derive(Debug, Clone)]
pub struct ChainDecomposition {
    host: MultiGraph,
    chains: Vec<Chain>,
    distillation: MultiGraph,
    chain_of_edge: Vec<usize>,
    branch_vertices: Vec<Vertex>,
}

pub fn decompose(g: &MultiGraph) -> Result<ChainDecomposition> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    if !g.is_two_connected() {
        return Err(Error::NotTwoConnected);
    }
    if g.m() <= g.n() {
        return Err(Error::TooFewEdges { n: g.n(), m: g.m() });
    }
    let deg = g.degrees();
    let inc = g.incidence();
    let mut chain_of_edge = vec![usize::MAX; g.m()];
    let mut chains = Vec::new();
    for b in (0..g.n()).filter(|&v| deg[v] > 2) {
        for &(first, e0) in &inc[b] {
            if chain_of_edge[e0] != usize::MAX {
                continue;
            }
            let idx = chains.len();
            let mut edges = vec![e0];
            let mut internal = Vec::new();
            chain_of_edge[e0] = idx;
            let (mut at, mut via) = (first, e0);
            while deg[at] == 2 {
                internal.push(at);
                let &(nxt, e) = inc[at]
                    .iter()
                    .find(|&&(_, e)| e != via)
                    .expect("degree-2 vertex has a second edge");
                chain_of_edge[e] = idx;
                edges.push(e);
                at = nxt;
                via = e;
            }
            if at == b {
                return Err(Error::NotTwoConnected);
            }
            chains.push(Chain {
                edges,
                ends: (b, at),
                internal,
            });
        }
    }
    // deterministic order: by smallest edge id
    let mut order: Vec<usize> = (0..chains.len()).collect();
    order.sort_by_key(|&i| chains[i].edges.iter().min().copied());
    let mut rank = vec![0; chains.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let mut slots: Vec<Option<Chain>> = chains.into_iter().map(Some).collect();
    let chains: Vec<Chain> = order.iter().map(|&i| slots[i].take().unwrap()).collect();
    for c in chain_of_edge.iter_mut() {
        *c = rank[*c];
    }

    let branch_vertices: Vec<Vertex> = (0..g.n()).filter(|&v| deg[v] > 2).collect();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in branch_vertices.iter().enumerate() {
        pos[v] = i;
    }
    let d_edges = chains
        .iter()
        .map(|c| (pos[c.ends.0], pos[c.ends.1]))
        .collect();
    let labels: Vec<String> = branch_vertices.iter().map(|&v| g.label(v)).collect();
    let distillation = MultiGraph::new(branch_vertices.len(), d_edges)?.with_labels(labels)?;
    Ok(ChainDecomposition {
        host: g.clone(),
        chains,
        distillation,
        chain_of_edge,
        branch_vertices,
    })
}

impl ChainDecomposition {
    pub fn host(&self) -> &MultiGraph {
        &self.host
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn distillation(&self) -> &MultiGraph {
        &self.distillation
    }

    /// Chain containing host edge `e`.
    pub fn chain_of_edge(&self, e: EdgeId) -> usize {
        self.chain_of_edge[e]
    }

    /// Chain collapsed into distillation edge `f` (the identity map).
    pub fn chain_of_distillation_edge(&self, f: EdgeId) -> usize {
        f
    }

    /// Host vertex behind each distillation vertex.
    pub fn branch_vertices(&self) -> &[Vertex] {
        &self.branch_vertices
    }

    pub fn lengths(&self) -> Vec<u64> {
        self.chains.iter().map(|c| c.len() as u64).collect()
    }

    pub fn is_fair(&self) -> bool {
        let l = self.lengths();
        let (lo, hi) = (l.iter().min().unwrap(), l.iter().max().unwrap());
        hi - lo <= 1
    }

    /// No two of the given chains share an endpoint.
    pub fn is_matching_of_chains(&self, chains: &[usize]) -> bool {
        chains.iter().enumerate().all(|(i, &a)| {
            chains[i + 1..]
                .iter()
                .all(|&b| self.chains[a].shared_ends(&self.chains[b]) == 0)
        })
    }

    fn product(&self, chains: &[usize]) -> BigUint {
        chains
            .iter()
            .map(|&c| BigUint::from(self.chains[c].len()))
            .product()
    }

    pub fn report(&self) -> ChainReport {
        let g = &self.host;
        ChainReport {
            chains: self
                .chains
                .iter()
                .enumerate()
                .map(|(index, c)| ChainEntry {
                    index,
                    endpoints: [g.label(c.ends.0), g.label(c.ends.1)],
                    length: c.len(),
                    edges: c.edges.clone(),
                    internal: c.internal.iter().map(|&v| g.label(v)).collect(),
                })
                .collect(),
            distillation: DistillationEntry {
                n: self.distillation.n(),
                edges: self
                    .distillation
                    .edges()
                    .iter()
                    .map(|&(u, v)| [self.distillation.label(u), self.distillation.label(v)])
                    .collect(),
            },
            fair: self.is_fair(),
        }
    }
}

/// Serializable summary of a decomposition, using display names.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub chains: Vec<ChainEntry>,
    pub distillation: DistillationEntry,
    pub fair: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainEntry {
    pub index: usize,
    pub endpoints: [String; 2],
    pub length: usize,
    pub edges: Vec<EdgeId>,
    pub internal: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistillationEntry {
    pub n: usize,
    pub edges: Vec<[String; 2]>,
}

/// Base cubic graph, exempt edge set `Y`, and subdivision parameter `s`.
#[derive(Debug, Clone)]
pub struct EnlargedGraphSpec {
    base: MultiGraph,
    y: EdgeSet,
    s: usize,
}

impl EnlargedGraphSpec {
    pub fn new(base: MultiGraph, y: EdgeSet, s: usize) -> Result<Self> {
        if !base.is_simple() {
            return Err(Error::NotSimple);
        }
        if !base.is_cubic() {
            return Err(Error::NotCubic);
        }
        if s == 0 {
            return Err(Error::InvalidParameter("s must be positive".into()));
        }
        y.validate(&base)?;
        Ok(Self { base, y, s })
    }

    pub fn base(&self) -> &MultiGraph {
        &self.base
    }

    pub fn y(&self) -> &EdgeSet {
        &self.y
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Chain length the base edge becomes: `s` on `Y`, `s + 1` elsewhere.
    pub fn chain_length(&self, e: EdgeId) -> usize {
        if self.y.contains(e) {
            self.s
        } else {
            self.s + 1
        }
    }
}

/// Subdivide each `Y` edge `s - 1` times and every other edge `s` times.
///
/// Base vertices keep their ids; new vertices are appended base edge by base
/// edge in id order, walking from the lower-numbered endpoint.
pub fn enlarge(spec: &EnlargedGraphSpec) -> Result<MultiGraph> {
    let base = &spec.base;
    let mut labels: Vec<String> = (0..base.n()).map(|v| base.label(v)).collect();
    let mut edges = Vec::new();
    for (e, &(u, v)) in base.edges().iter().enumerate() {
        let (a, b) = (u.min(v), u.max(v));
        let inner = spec.chain_length(e) - 1;
        let mut prev = a;
        for i in 1..=inner {
            let z = labels.len();
            labels.push(format!("{}.{i}", base.edge_label(e)));
            edges.push((prev, z));
            prev = z;
        }
        edges.push((prev, b));
    }
    MultiGraph::new(labels.len(), edges)?.with_labels(labels)
}

pub fn is_fair(g: &MultiGraph) -> Result<bool> {
    Ok(decompose(g)?.is_fair())
}

/// `e_k` of the sequence: the sum over k-subsets of the product of entries.
pub fn elementary_symmetric(lengths: &[u64], k: usize) -> BigUint {
    let mut e = vec![BigUint::zero(); k + 1];
    e[0] = BigUint::one();
    for &l in lengths {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * l;
            e[j] += add;
        }
    }
    e.swap_remove(k)
}

/// The tuple of `t` positive integers summing to `m` whose entries differ by
/// at most one, in non-increasing order.
pub fn fair_tuple(t: usize, m: usize) -> Vec<u64> {
    let (q, r) = (m / t, m % t);
    (0..t).map(|i| (q + usize::from(i < r)) as u64).collect()
}

/// Largest `e_k` over positive `t`-tuples summing to `m`, attained by the
/// fair tuple.
pub fn fair_maximum(t: usize, m: usize, k: usize) -> Result<BigUint> {
    if !(2 <= k && k <= t && t <= m) {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= k <= t <= m, got k = {k}, t = {t}, m = {m}"
        )));
    }
    Ok(elementary_symmetric(&fair_tuple(t, m), k))
}

/// `mu_k^I` from the k-edge-cuts of the distillation.
pub fn mu_k_induced_via_distillation(
    d: &ChainDecomposition,
    k: usize,
    budget: Budget,
) -> Result<BigUint> {
    if k > d.chains.len() {
        return Ok(BigUint::zero());
    }
    let mut total = BigUint::zero();
    for cut in enumerate_cuts(&d.distillation, k, budget)? {
        let chains: Vec<usize> = cut
            .iter()
            .map(|f| d.chain_of_distillation_edge(f))
            .collect();
        total += d.product(&chains);
    }
    Ok(total)
}

/// `mu_k^I` from k-subsets `H` of chains such that removing their edges and
/// internal vertices disconnects the host.
pub fn mu_k_induced_via_chain_removal(
    d: &ChainDecomposition,
    k: usize,
    budget: Budget,
) -> Result<BigUint> {
    let t = d.chains.len();
    if k > t {
        return Ok(BigUint::zero());
    }
    budget.check(&binomial(t, k))?;
    let g = &d.host;
    let mut removed_chain = vec![false; t];
    let mut removed_vertex = vec![false; g.n()];
    let mut combos = Combinations::new(t, k);
    let mut total = BigUint::zero();
    while let Some(h) = combos.advance() {
        for &c in h {
            removed_chain[c] = true;
            for &v in &d.chains[c].internal {
                removed_vertex[v] = true;
            }
        }
        let comps = g.component_count(
            |v| !removed_vertex[v],
            |e| !removed_chain[d.chain_of_edge[e]],
        );
        if comps > 1 {
            total += d.product(h);
        }
        for &c in h {
            removed_chain[c] = false;
            for &v in &d.chains[c].internal {
                removed_vertex[v] = false;
            }
        }
    }
    Ok(total)
}

/// `mu_k^I`, computed both ways; a disagreement is an error.
pub fn mu_k_induced(d: &ChainDecomposition, k: usize, budget: Budget) -> Result<BigUint> {
    let a = mu_k_induced_via_distillation(d, k, budget)?;
    let b = mu_k_induced_via_chain_removal(d, k, budget)?;
    if a != b {
        return Err(Error::Mismatch(format!(
            "mu_{k}^I: distillation cuts give {a}, chain removal gives {b}"
        )));
    }
    Ok(a)
}

/// Induced k-edge-cuts split by the kind of the inducing distillation cut.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InducedCensus {
    pub k: usize,
    pub vertex: BigUint,
    pub edge: BigUint,
    pub nontrivial: BTreeMap<String, BigUint>,
}

impl InducedCensus {
    pub fn nontrivial_total(&self) -> BigUint {
        self.nontrivial.values().sum()
    }

    pub fn total(&self) -> BigUint {
        &self.vertex + &self.edge + self.nontrivial_total()
    }

    pub fn nontrivial_of(&self, key: &str) -> BigUint {
        self.nontrivial.get(key).cloned().unwrap_or_default()
    }
}

pub fn mu_k_induced_by_type(
    d: &ChainDecomposition,
    k: usize,
    budget: Budget,
) -> Result<InducedCensus> {
    let mut census = InducedCensus {
        k,
        ..InducedCensus::default()
    };
    if k > d.chains.len() {
        return Ok(census);
    }
    for cut in enumerate_cuts(&d.distillation, k, budget)? {
        let chains: Vec<usize> = cut
            .iter()
            .map(|f| d.chain_of_distillation_edge(f))
            .collect();
        let weight = d.product(&chains);
        let class = classify_cut(&d.distillation, &cut)?;
        match class.kind {
            CutKind::VertexSeparating => census.vertex += weight,
            CutKind::EdgeSeparating => census.edge += weight,
            CutKind::Nontrivial => *census.nontrivial.entry(class.key()).or_default() += weight,
        }
    }
    Ok(census)
}

/// `C(m, k) - e_k(lengths) + mu_k^I`.
pub fn mu_k_via_chain_formula(d: &ChainDecomposition, k: usize, budget: Budget) -> Result<BigUint> {
    let m = d.host.m();
    if k > m {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds m = {m}")));
    }
    let value = BigInt::from(binomial(m, k)) - BigInt::from(elementary_symmetric(&d.lengths(), k))
        + BigInt::from(mu_k_induced(d, k, budget)?);
    value
        .to_biguint()
        .ok_or_else(|| Error::Mismatch(format!("negative cut count {value} for k = {k}")))
}

/// Complete spectrum of the host: the chain formula below the corank
/// threshold, `C(m, k)` from it on.
pub fn spectrum_via_chain_formula(d: &ChainDecomposition, budget: Budget) -> Result<CutSpectrum> {
    let (n, m) = (d.host.n(), d.host.m());
    let threshold = corank_threshold(n, m).unwrap_or(0);
    let counts = (0..=m)
        .map(|k| {
            if k >= threshold {
                Ok(binomial(m, k))
            } else {
                mu_k_via_chain_formula(d, k, budget)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CutSpectrum::complete(n, counts)
}

/// Corank `c` and the split `m = (3c - 3) s + r` with `0 <= r < 3c - 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LengthSplit {
    pub corank: usize,
    pub s: usize,
    pub r: usize,
}

fn length_split(d: &ChainDecomposition) -> LengthSplit {
    let (n, m) = (d.host.n(), d.host.m());
    let corank = m + 1 - n;
    let slots = 3 * corank - 3;
    LengthSplit {
        corank,
        s: m / slots,
        r: m % slots,
    }
}

fn has_length_profile(d: &ChainDecomposition, split: LengthSplit) -> bool {
    let l = d.lengths();
    let long = l.iter().filter(|&&x| x == split.s as u64 + 1).count();
    let short = l.iter().filter(|&&x| x == split.s as u64).count();
    long == split.r && short == 3 * split.corank - 3 - split.r && long + short == l.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BauerReport {
    pub split: LengthSplit,
    /// `n + 2 <= m <= 3n/2`.
    pub in_range: bool,
    pub distillation_simple: bool,
    pub distillation_cubic: bool,
    pub distillation_order_ok: bool,
    pub distillation_edge_connectivity: usize,
    pub clause_i: bool,
    pub clause_ii: bool,
}

impl BauerReport {
    pub fn holds(&self) -> bool {
        self.clause_i && self.clause_ii
    }
}

/// Structural conditions characterising graphs with fewest 2-edge-cuts.
pub fn check_bauer_conditions(d: &ChainDecomposition) -> Result<BauerReport> {
    let split = length_split(d);
    let (n, m) = (d.host.n(), d.host.m());
    let dist = &d.distillation;
    let simple = dist.is_simple();
    let cubic = dist.is_cubic();
    let order_ok = dist.n() == 2 * split.corank - 2;
    let lambda = dist.edge_connectivity()?;
    Ok(BauerReport {
        split,
        in_range: n + 2 <= m && 2 * m <= 3 * n,
        distillation_simple: simple,
        distillation_cubic: cubic,
        distillation_order_ok: order_ok,
        distillation_edge_connectivity: lambda,
        clause_i: simple && cubic && order_ok && lambda == 3,
        clause_ii: has_length_profile(d, split),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WangReport {
    pub bauer: BauerReport,
    pub distillation_mu3: String,
    pub distillation_min_mu3: bool,
    pub clause_i: bool,
    pub clause_ii: bool,
    pub clause_iii: bool,
}

impl WangReport {
    pub fn holds(&self) -> bool {
        self.clause_i && self.clause_ii && self.clause_iii
    }
}

/// Structural conditions characterising graphs with fewest 3-edge-cuts.
///
/// A simple graph on `n >= 4` vertices with `3n/2` edges has at least `n`
/// 3-edge-cuts (a cubic graph has its `n` vertex stars; a graph with a cut of
/// size at most 2 has at least `m - 2 >= n` of them), so a cubic
/// distillation is min-mu_3 exactly when `mu_3 = n`.
pub fn check_wang_m3_conditions(d: &ChainDecomposition, budget: Budget) -> Result<WangReport> {
    let bauer = check_bauer_conditions(d)?;
    let split = bauer.split;
    let dist = &d.distillation;
    let (mu3, min_mu3) = if bauer.distillation_cubic && dist.n() >= 4 && dist.is_simple() {
        let mu3 = mu_k_bruteforce(dist, 3, budget)?;
        let min = mu3 == BigUint::from(dist.n());
        (mu3.to_string(), min)
    } else {
        let mu3 = if dist.m() >= 3 {
            mu_k_bruteforce(dist, 3, budget)?.to_string()
        } else {
            "0".into()
        };
        (mu3, false)
    };
    let c = split.corank;
    let by_len = |len: usize| -> Vec<usize> {
        (0..d.chains.len())
            .filter(|&i| d.chains[i].len() == len)
            .collect()
    };
    let clause_iii = if split.r < c {
        d.is_matching_of_chains(&by_len(split.s + 1))
    } else if split.r >= 2 * c - 2 {
        d.is_matching_of_chains(&by_len(split.s))
    } else {
        (0..dist.n()).all(|v| {
            let hv = d.branch_vertices[v];
            let lens: Vec<usize> = d
                .chains
                .iter()
                .filter(|ch| ch.is_incident_to(hv))
                .map(Chain::len)
                .collect();
            lens.len() != 3 || (lens.contains(&split.s) && lens.contains(&(split.s + 1)))
        })
    };
    Ok(WangReport {
        clause_i: bauer.clause_i && min_mu3,
        clause_ii: bauer.clause_ii,
        clause_iii,
        distillation_mu3: mu3,
        distillation_min_mu3: min_mu3,
        bauer,
    })
}
