//! Loop-free undirected multigraphs.
//!
//! Vertices are dense indices `0..n`; edges are addressed by their position in
//! the edge list and keep that id for the lifetime of the graph. Optional
//! display labels let catalog graphs print with their conventional 1-based
//! vertex names.

mod io;
mod iso;

pub use io::parse_edge_list;
pub use iso::{are_isomorphic, automorphisms, ISO_LIMIT};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    labels: Option<Vec<String>>,
}

/// Structural equality: vertex count and edge list. Labels are display
/// metadata and do not take part.
impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for MultiGraph {}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for (id, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge {
                    edge: id,
                    vertex: u,
                });
            }
        }
        Ok(Self {
            n,
            edges,
            labels: None,
        })
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: Vec<S>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels.into_iter().map(Into::into).collect());
        Ok(self)
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { needed: 3, n });
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<(Vertex, Vertex)> {
        self.edges.get(id).copied().ok_or(Error::InvalidEdgeId {
            id,
            m: self.edges.len(),
        })
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label if present, else the index.
    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Display name of an edge, the endpoint names concatenated (`"12"`).
    pub fn edge_label(&self, id: EdgeId) -> String {
        let (u, v) = self.edges[id];
        let (a, b) = (self.label(u), self.label(v));
        if a.len() == 1 && b.len() == 1 {
            format!("{a}{b}")
        } else {
            format!("{a}-{b}")
        }
    }

    pub fn vertex_by_label(&self, name: &str) -> Option<Vertex> {
        (0..self.n).find(|&v| self.label(v) == name)
    }

    /// First edge joining `u` and `v`, in either orientation.
    pub fn find_edge(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.edges
            .iter()
            .position(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    /// Edge given by its display name, e.g. `"23"` or `"2-3"`.
    pub fn edge_by_label(&self, name: &str) -> Result<EdgeId> {
        let (a, b) = match name.split_once('-') {
            Some((a, b)) => (a.to_string(), b.to_string()),
            None if name.chars().count() == 2 => {
                let mut it = name.chars();
                (
                    it.next().unwrap().to_string(),
                    it.next().unwrap().to_string(),
                )
            }
            None => return Err(Error::NoSuchEdge(name.to_string(), String::new())),
        };
        let lookup = |s: &str| {
            self.vertex_by_label(s)
                .ok_or_else(|| Error::NoSuchEdge(a.clone(), b.clone()))
        };
        let (u, v) = (lookup(&a)?, lookup(&b)?);
        self.find_edge(u, v).ok_or(Error::NoSuchEdge(a, b))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// Incidence lists: for each vertex, `(neighbour, edge id)` in edge-id order.
    pub fn incidence(&self) -> Vec<Vec<(Vertex, EdgeId)>> {
        let mut inc = vec![Vec::new(); self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push((v, id));
            inc[v].push((u, id));
        }
        inc
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.degrees().iter().all(|&x| x == d)
    }

    pub fn is_cubic(&self) -> bool {
        self.is_regular(3)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count(|_| true, |_| true) == 1
    }

    /// Number of components of the subgraph keeping the vertices and edges
    /// accepted by the two filters. Isolated kept vertices count.
    pub(crate) fn component_count(
        &self,
        keep_vertex: impl Fn(Vertex) -> bool,
        keep_edge: impl Fn(EdgeId) -> bool,
    ) -> usize {
        let mut uf = UnionFind::new(self.n);
        let mut kept = 0;
        for v in 0..self.n {
            if keep_vertex(v) {
                kept += 1;
            }
        }
        let mut merges = 0;
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if keep_edge(id) && keep_vertex(u) && keep_vertex(v) && uf.union(u, v) {
                merges += 1;
            }
        }
        kept - merges
    }

    /// Component index of every vertex, numbered in order of first appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut root_id = vec![usize::MAX; self.n];
        let mut next = 0;
        (0..self.n)
            .map(|v| {
                let r = uf.find(v);
                if root_id[r] == usize::MAX {
                    root_id[r] = next;
                    next += 1;
                }
                root_id[r]
            })
            .collect()
    }

    /// `G - F`. Also returns, for every old edge id, its id in the new graph
    /// (`None` for removed edges). Surviving edges keep their relative order.
    pub fn remove_edges(&self, f: &EdgeSet) -> Result<(MultiGraph, Vec<Option<EdgeId>>)> {
        f.validate(self)?;
        let mut map = vec![None; self.m()];
        let mut edges = Vec::with_capacity(self.m() - f.len());
        for (id, &e) in self.edges.iter().enumerate() {
            if !f.contains(id) {
                map[id] = Some(edges.len());
                edges.push(e);
            }
        }
        let g = MultiGraph {
            n: self.n,
            edges,
            labels: self.labels.clone(),
        };
        Ok((g, map))
    }

    pub fn is_edge_cut(&self, f: &EdgeSet) -> Result<bool> {
        f.validate(self)?;
        Ok(self.component_count(|_| true, |e| !f.contains(e)) > 1)
    }

    /// Minimum number of edges whose removal disconnects the graph, by unit
    /// capacity max-flow from vertex 0 to every other vertex.
    pub fn edge_connectivity(&self) -> Result<usize> {
        if self.n < 2 {
            return Err(Error::TooFewVertices {
                needed: 2,
                n: self.n,
            });
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let inc = self.incidence();
        Ok((1..self.n)
            .map(|t| self.unit_max_flow(&inc, 0, t))
            .min()
            .unwrap())
    }

    fn unit_max_flow(&self, inc: &[Vec<(Vertex, EdgeId)>], s: Vertex, t: Vertex) -> usize {
        // flow[e] is the net flow from edges[e].0 to edges[e].1.
        let mut flow = vec![0i8; self.m()];
        let mut total = 0;
        loop {
            let mut pred: Vec<Option<(Vertex, EdgeId)>> = vec![None; self.n];
            let mut seen = vec![false; self.n];
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for &(y, e) in &inc[x] {
                    let forward = self.edges[e].0 == x;
                    let residual = if forward { flow[e] < 1 } else { flow[e] > -1 };
                    if residual && !seen[y] {
                        seen[y] = true;
                        pred[y] = Some((x, e));
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut y = t;
            while let Some((x, e)) = pred[y] {
                if self.edges[e].0 == x {
                    flow[e] += 1;
                } else {
                    flow[e] -= 1;
                }
                y = x;
            }
            total += 1;
        }
    }

    /// At least 3 vertices, connected, and connected after deleting any one vertex.
    pub fn is_two_connected(&self) -> bool {
        self.n >= 3
            && self.is_connected()
            && (0..self.n).all(|x| self.component_count(|v| v != x, |_| true) == 1)
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<MultiGraph> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]))
            .collect();
        let g = MultiGraph::new(vertices.len(), edges)?;
        match &self.labels {
            Some(l) => g.with_labels(vertices.iter().map(|&v| l[v].clone()).collect()),
            None => Ok(g),
        }
    }

    /// Image of the graph under `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[Vertex]) -> Result<MultiGraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        MultiGraph::new(
            self.n,
            self.edges
                .iter()
                .map(|&(u, v)| (perm[u], perm[v]))
                .collect(),
        )
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// An immutable set of edge ids, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EdgeSet {
    ids: Vec<EdgeId>,
}

impl EdgeSet {
    pub fn new(g: &MultiGraph, ids: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut ids: Vec<EdgeId> = ids.into_iter().collect();
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdgeId(w[0]));
            }
        }
        let set = Self { ids };
        set.validate(g)?;
        Ok(set)
    }

    /// Build from edge display names such as `["12", "34"]`.
    pub fn from_labels(g: &MultiGraph, names: &[&str]) -> Result<Self> {
        let ids = names
            .iter()
            .map(|s| g.edge_by_label(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, ids)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn all(g: &MultiGraph) -> Self {
        Self {
            ids: (0..g.m()).collect(),
        }
    }

    /// Caller guarantees `ids` is strictly increasing.
    pub(crate) fn from_sorted(ids: Vec<EdgeId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Self { ids }
    }

    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        match self.ids.iter().find(|&&id| id >= g.m()) {
            Some(&id) => Err(Error::InvalidEdgeId { id, m: g.m() }),
            None => Ok(()),
        }
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ids.iter().copied()
    }

    /// Display names of the member edges, e.g. `{12,34}`.
    pub fn display(&self, g: &MultiGraph) -> String {
        let names: Vec<String> = self.ids.iter().map(|&e| g.edge_label(e)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// True if no two member edges share an endpoint.
    pub fn is_matching(&self, g: &MultiGraph) -> bool {
        let mut used = vec![false; g.n()];
        for &e in &self.ids {
            let (u, v) = g.edges[e];
            if used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }

    pub fn is_perfect_matching(&self, g: &MultiGraph) -> bool {
        self.is_matching(g) && 2 * self.len() == g.n()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two sets were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
