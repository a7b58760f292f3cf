//! Named graphs and edge sets: the Wagner graph `W`, the cube `Q`, the three
//! other cubic graphs on eight vertices, their distinguished perfect
//! matchings, and the enlarged graphs built from them. Vertices carry the
//! labels `1..8` used in the standard drawings.
//!
//! Also generates connected cubic graphs and perfect matchings so the
//! "up to isomorphism" statements about these graphs can be checked.

use std::collections::{BTreeMap, HashMap};

use crate::chains::EnlargedGraphSpec;
use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, automorphisms, EdgeSet, MultiGraph, Vertex, ISO_LIMIT};

const RIM: [&str; 8] = ["12", "23", "34", "45", "56", "67", "78", "81"];

pub const GRAPH_NAMES: [&str; 5] = ["W", "Q", "G1", "G2", "G3"];
pub const EDGE_SET_NAMES: [&str; 7] = ["M1", "M2", "M3", "M1'", "X", "M4", "M5"];

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub graph: MultiGraph,
    pub edge_sets: BTreeMap<String, EdgeSet>,
    pub vertex_sets: BTreeMap<String, Vec<Vertex>>,
}

#[derive(Debug, Clone)]
pub enum CatalogItem {
    Graph(CatalogEntry),
    EdgeSet {
        host: CatalogEntry,
        name: String,
        set: EdgeSet,
    },
}

fn eight_vertex(chords: &[&str]) -> MultiGraph {
    let labels: Vec<String> = (1..=8).map(|i| i.to_string()).collect();
    let edges = RIM
        .iter()
        .chain(chords)
        .map(|e| {
            let b = e.as_bytes();
            ((b[0] - b'1') as usize, (b[1] - b'1') as usize)
        })
        .collect();
    MultiGraph::new(8, edges)
        .and_then(|g| g.with_labels(labels))
        .expect("catalog graphs are well formed")
}

fn entry(name: &str, chords: &[&str], sets: &[(&str, [&str; 4])]) -> CatalogEntry {
    let graph = eight_vertex(chords);
    let edge_sets = sets
        .iter()
        .map(|(k, names)| {
            let set = EdgeSet::from_labels(&graph, names).expect("catalog edge sets exist");
            (k.to_string(), set)
        })
        .collect();
    CatalogEntry {
        name: name.to_string(),
        graph,
        edge_sets,
        vertex_sets: BTreeMap::new(),
    }
}

/// One of `W`, `Q`, `G1`, `G2`, `G3`.
pub fn graph(name: &str) -> Result<CatalogEntry> {
    Ok(match name {
        "W" => {
            let mut e = entry(
                "W",
                &["15", "26", "37", "48"],
                &[
                    ("M1", ["12", "34", "56", "78"]),
                    ("M2", ["15", "26", "34", "78"]),
                    ("M3", ["15", "26", "37", "48"]),
                    ("M1'", ["23", "45", "67", "18"]),
                    ("X", ["23", "56", "78", "18"]),
                ],
            );
            for (k, vs) in [
                ("D1", [1, 2, 6, 5]),
                ("D2", [2, 3, 7, 6]),
                ("D3", [3, 4, 8, 7]),
                ("D4", [4, 5, 1, 8]),
            ] {
                e.vertex_sets
                    .insert(k.to_string(), vs.iter().map(|&v| v - 1).collect());
            }
            e
        }
        "Q" => entry(
            "Q",
            &["16", "25", "38", "47"],
            &[
                ("M4", ["16", "25", "38", "47"]),
                ("M5", ["23", "45", "67", "81"]),
            ],
        ),
        "G1" => entry("G1", &["15", "28", "36", "47"], &[]),
        "G2" => entry("G2", &["14", "28", "36", "57"], &[]),
        "G3" => entry("G3", &["13", "28", "46", "57"], &[]),
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

/// A named edge set together with the graph it belongs to.
pub fn edge_set(name: &str) -> Result<(CatalogEntry, EdgeSet)> {
    let host = match name {
        "M1" | "M2" | "M3" | "M1'" | "M1p" | "X" => "W",
        "M4" | "M5" => "Q",
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let key = if name == "M1p" { "M1'" } else { name };
    let entry = graph(host)?;
    let set = entry.edge_sets[key].clone();
    Ok((entry, set))
}

pub fn get(name: &str) -> Result<CatalogItem> {
    if GRAPH_NAMES.contains(&name) {
        return graph(name).map(CatalogItem::Graph);
    }
    let (host, set) = edge_set(name)?;
    Ok(CatalogItem::EdgeSet {
        host,
        name: name.to_string(),
        set,
    })
}

pub fn list() -> Vec<&'static str> {
    GRAPH_NAMES
        .iter()
        .chain(EDGE_SET_NAMES.iter())
        .copied()
        .collect()
}

/// `B^Y_s` for a catalog base `B` and catalog edge set `Y` (`""` or `"0"`
/// for the empty set).
pub fn enlargement(base: &str, y: &str, s: usize) -> Result<EnlargedGraphSpec> {
    let entry = graph(base)?;
    let set = match y {
        "" | "0" | "empty" => EdgeSet::empty(),
        _ => entry
            .edge_sets
            .get(y)
            .cloned()
            .ok_or_else(|| Error::UnknownName(format!("{base}^{y}")))?,
    };
    EnlargedGraphSpec::new(entry.graph, set, s)
}

/// Parses references of the form `W^M1_2` (base, edge set, `s`).
pub fn parse_enlargement(reference: &str) -> Result<EnlargedGraphSpec> {
    let unknown = || Error::UnknownName(reference.to_string());
    let (base, rest) = reference.split_once('^').ok_or_else(unknown)?;
    let (y, s) = rest.rsplit_once('_').ok_or_else(unknown)?;
    let s: usize = s.parse().map_err(|_| unknown())?;
    enlargement(base, y, s)
}

/// The five enlarged graphs `W^M1_s, W^M2_s, W^M3_s, Q^M4_s, Q^M5_s`.
pub fn min_mu3_candidates(s: usize) -> Result<Vec<(String, EnlargedGraphSpec)>> {
    [
        ("W", "M1"),
        ("W", "M2"),
        ("W", "M3"),
        ("Q", "M4"),
        ("Q", "M5"),
    ]
    .iter()
    .map(|&(b, y)| Ok((format!("{b}^{y}_{s}"), enlargement(b, y, s)?)))
    .collect()
}

/// Candidates plus `W^X_s` and the uniform subdivisions `W^0_s`, `Q^0_s`.
pub fn enlarged_catalog(s: usize) -> Result<Vec<(String, EnlargedGraphSpec)>> {
    let mut out = min_mu3_candidates(s)?;
    for (b, y) in [("W", "X"), ("W", "0"), ("Q", "0")] {
        out.push((format!("{b}^{y}_{s}"), enlargement(b, y, s)?));
    }
    Ok(out)
}

fn distance_profile(g: &MultiGraph) -> Vec<Vec<usize>> {
    let inc = g.incidence();
    let mut profile: Vec<Vec<usize>> = (0..g.n())
        .map(|root| {
            let mut dist = vec![usize::MAX; g.n()];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            let mut layers = vec![1];
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &inc[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        if layers.len() <= dist[y] {
                            layers.push(0);
                        }
                        layers[dist[y]] += 1;
                        queue.push_back(y);
                    }
                }
            }
            layers
        })
        .collect();
    profile.sort();
    profile
}

/// All connected simple cubic graphs on `n` vertices up to isomorphism.
///
/// Backtracking over BFS-ordered labellings: vertex `v` is completed before
/// `v + 1`, and any neighbour it discovers receives the next unused label.
pub fn cubic_graphs(n: usize) -> Result<Vec<MultiGraph>> {
    if n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "no cubic graph has an odd number ({n}) of vertices"
        )));
    }
    if n > 10 {
        return Err(Error::SizeGuard { n, limit: 10 });
    }
    let mut found: Vec<(Vec<Vec<usize>>, MultiGraph)> = Vec::new();
    if n >= 4 {
        let mut adj = vec![Vec::new(); n];
        extend_cubic(0, 1, &mut adj, &mut found)?;
    }
    Ok(found.into_iter().map(|(_, g)| g).collect())
}

fn extend_cubic(
    v: usize,
    next: usize,
    adj: &mut [Vec<usize>],
    found: &mut Vec<(Vec<Vec<usize>>, MultiGraph)>,
) -> Result<()> {
    let n = adj.len();
    if v == n {
        let mut edges = Vec::new();
        for (a, nb) in adj.iter().enumerate() {
            edges.extend(nb.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        let g = MultiGraph::new(n, edges)?;
        let profile = distance_profile(&g);
        for (p, h) in found.iter() {
            if *p == profile && are_isomorphic(h, &g)? {
                return Ok(());
            }
        }
        found.push((profile, g));
        return Ok(());
    }
    if v >= next {
        // v was never reached: the graph would be disconnected
        return Ok(());
    }
    let need = 3 - adj[v].len();
    if need == 0 {
        return extend_cubic(v + 1, next, adj, found);
    }
    let candidates: Vec<usize> = (v + 1..next)
        .filter(|&u| adj[u].len() < 3 && !adj[v].contains(&u))
        .collect();
    for fresh in 0..=need {
        if next + fresh > n || need - fresh > candidates.len() {
            continue;
        }
        let mut combos = crate::combinatorics::Combinations::new(candidates.len(), need - fresh);
        while let Some(pick) = combos.advance() {
            let chosen: Vec<usize> = pick
                .iter()
                .map(|&i| candidates[i])
                .chain(next..next + fresh)
                .collect();
            for &u in &chosen {
                adj[v].push(u);
                adj[u].push(v);
            }
            extend_cubic(v + 1, next + fresh, adj, found)?;
            for &u in &chosen {
                adj[v].pop();
                adj[u].pop();
            }
        }
    }
    Ok(())
}

/// All perfect matchings, in lexicographic order of edge ids.
pub fn perfect_matchings(g: &MultiGraph) -> Result<Vec<EdgeSet>> {
    if g.n() % 2 == 1 {
        return Err(Error::InvalidParameter(
            "perfect matchings need an even vertex count".into(),
        ));
    }
    if g.n() > ISO_LIMIT {
        return Err(Error::SizeGuard {
            n: g.n(),
            limit: ISO_LIMIT,
        });
    }
    let inc = g.incidence();
    let mut matched = vec![false; g.n()];
    let mut current = Vec::new();
    let mut out = Vec::new();
    match_from(&inc, &mut matched, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn match_from(
    inc: &[Vec<(Vertex, usize)>],
    matched: &mut [bool],
    current: &mut Vec<usize>,
    out: &mut Vec<EdgeSet>,
) {
    let Some(v) = matched.iter().position(|&m| !m) else {
        let mut ids = current.clone();
        ids.sort_unstable();
        out.push(EdgeSet::from_sorted(ids));
        return;
    };
    matched[v] = true;
    for &(u, e) in &inc[v] {
        if !matched[u] {
            matched[u] = true;
            current.push(e);
            match_from(inc, matched, current, out);
            current.pop();
            matched[u] = false;
        }
    }
    matched[v] = false;
}

/// Partition `sets` into orbits under the automorphism group of `g`. Orbits
/// are ordered by their smallest member.
pub fn orbits(g: &MultiGraph, sets: &[EdgeSet]) -> Result<Vec<Vec<EdgeSet>>> {
    let key = |set: &EdgeSet, perm: &[Vertex]| {
        let mut pairs: Vec<(Vertex, Vertex)> = set
            .iter()
            .map(|e| {
                let (u, v) = g.edges()[e];
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        pairs
    };
    let identity: Vec<Vertex> = (0..g.n()).collect();
    let mut by_key: HashMap<Vec<(Vertex, Vertex)>, Vec<usize>> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        by_key.entry(key(s, &identity)).or_default().push(i);
    }
    let mut uf = crate::graph::UnionFind::new(sets.len());
    for perm in automorphisms(g)? {
        for (i, s) in sets.iter().enumerate() {
            if let Some(js) = by_key.get(&key(s, &perm)) {
                for &j in js {
                    uf.union(i, j);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<EdgeSet>> = BTreeMap::new();
    let mut first_of_root: HashMap<usize, usize> = HashMap::new();
    let mut sorted: Vec<usize> = (0..sets.len()).collect();
    sorted.sort_by(|&a, &b| sets[a].cmp(&sets[b]));
    for i in sorted {
        let root = uf.find(i);
        let first = *first_of_root.entry(root).or_insert(i);
        groups.entry(first).or_default().push(sets[i].clone());
    }
    let mut out: Vec<Vec<EdgeSet>> = groups.into_values().collect();
    out.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(out)
}
