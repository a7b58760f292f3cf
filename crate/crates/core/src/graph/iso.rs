//! Brute-force isomorphism for small multigraphs.
//!
//! Vertices of the first graph are mapped one at a time in BFS order; a
//! candidate image must have the same degree and the same edge multiplicity to
//! every already-mapped vertex.

use super::{MultiGraph, Vertex};
use crate::error::{Error, Result};

/// Largest vertex count accepted by the permutation search.
pub const ISO_LIMIT: usize = 12;

fn multiplicities(g: &MultiGraph) -> Vec<Vec<u32>> {
    let mut a = vec![vec![0u32; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        a[u][v] += 1;
        a[v][u] += 1;
    }
    a
}

fn bfs_order(adj: &[Vec<u32>]) -> Vec<Vertex> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in 0..n {
                if adj[x][y] > 0 && !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    a: &'a [Vec<u32>],
    b: &'a [Vec<u32>],
    deg_a: Vec<usize>,
    deg_b: Vec<usize>,
    order: Vec<Vertex>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Calls `found` for each complete mapping; stops when it returns false.
    fn run(&mut self, depth: usize, found: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return found(&self.map);
        }
        let v = self.order[depth];
        for w in 0..self.b.len() {
            if self.used[w] || self.deg_a[v] != self.deg_b[w] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.a[v][u] == self.b[w][self.map[u]]);
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            let keep_going = self.run(depth + 1, found);
            self.used[w] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn guard(g: &MultiGraph) -> Result<()> {
    if g.n() > ISO_LIMIT {
        return Err(Error::SizeGuard {
            n: g.n(),
            limit: ISO_LIMIT,
        });
    }
    Ok(())
}

fn for_each_isomorphism(
    g1: &MultiGraph,
    g2: &MultiGraph,
    found: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    guard(g1)?;
    guard(g2)?;
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return Ok(());
    }
    let (mut d1, mut d2) = (g1.degrees(), g2.degrees());
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(());
    }
    let (a, b) = (multiplicities(g1), multiplicities(g2));
    let mut search = Search {
        order: bfs_order(&a),
        a: &a,
        b: &b,
        deg_a: g1.degrees(),
        deg_b: g2.degrees(),
        map: vec![usize::MAX; g1.n()],
        used: vec![false; g1.n()],
    };
    search.run(0, found);
    Ok(())
}

pub fn are_isomorphic(g1: &MultiGraph, g2: &MultiGraph) -> Result<bool> {
    let mut hit = false;
    for_each_isomorphism(g1, g2, &mut |_| {
        hit = true;
        false
    })?;
    Ok(hit)
}

/// The full automorphism group; `perm[v]` is the image of `v`.
pub fn automorphisms(g: &MultiGraph) -> Result<Vec<Vec<Vertex>>> {
    let mut out = Vec::new();
    for_each_isomorphism(g, g, &mut |p| {
        out.push(p.to_vec());
        true
    })?;
    Ok(out)
}
