//! Random instance generators and independent checks shared by the
//! integration suites.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hampath_core::{Colouring, MultiGraph, MultipartiteSpec};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A loopless-on-`S` multigraph on at most `max_n` vertices in which every
/// permutation of `S` is an automorphism, with `S` a random subset of size
/// `s` (or random when `None`).
pub fn symmetric_orbit_graph(
    r: &mut ChaCha8Rng,
    max_n: usize,
    s: Option<usize>,
) -> (MultiGraph, Vec<usize>) {
    let n = r.gen_range(2..=max_n);
    let s = s.unwrap_or_else(|| r.gen_range(2..=n));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    let mut orbit: Vec<usize> = order[..s].to_vec();
    orbit.sort_unstable();
    let in_orbit = |v: usize| orbit.contains(&v);

    let mut pairs = Vec::new();
    let inner = r.gen_range(0..=3);
    for (i, &x) in orbit.iter().enumerate() {
        for &y in &orbit[i + 1..] {
            pairs.extend(std::iter::repeat_n((x, y), inner));
        }
    }
    for w in (0..n).filter(|&w| !in_orbit(w)) {
        let mult = r.gen_range(0..=3);
        for &x in &orbit {
            pairs.extend(std::iter::repeat_n((w.min(x), w.max(x)), mult));
        }
        for u in (w..n).filter(|&u| !in_orbit(u)) {
            let mult = r.gen_range(0..=3);
            pairs.extend(std::iter::repeat_n((w, u), mult));
        }
    }
    pairs.shuffle(r);
    (MultiGraph::from_pairs(n, pairs), orbit)
}

/// Assigns each edge a uniformly random colour in `0..t`.
pub fn random_colouring(r: &mut ChaCha8Rng, g: &MultiGraph, t: usize) -> Colouring {
    Colouring::from_pairs(t, g.edges().iter().map(|e| (e.id, r.gen_range(0..t))))
}

/// A `2k`-regular multigraph on `n` vertices: the union of `k` random
/// permutations, each contributing the edges `v – σ(v)`.
pub fn random_even_regular(r: &mut ChaCha8Rng, n: usize, k: usize) -> MultiGraph {
    let mut pairs = Vec::new();
    for _ in 0..k {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(r);
        for (v, &w) in sigma.iter().enumerate() {
            pairs.push((v.min(w), v.max(w)));
        }
    }
    MultiGraph::from_pairs(n, pairs)
}

/// A multigraph whose degrees are all multiples of `2t`: a `2t`-regular
/// multigraph on `copies` vertices with random groups of copies merged.
pub fn random_proportional(r: &mut ChaCha8Rng, copies: usize, t: usize) -> MultiGraph {
    let base = random_even_regular(r, copies, t);
    let n = r.gen_range(1..=copies);
    let mut group: Vec<usize> = (0..copies)
        .map(|c| if c < n { c } else { r.gen_range(0..n) })
        .collect();
    group.shuffle(r);
    MultiGraph::from_pairs(n, base.edges().iter().map(|e| (group[e.a], group[e.b])))
}

/// A spec with at least two parts and order in `2..=max_n`.
pub fn random_spec(r: &mut ChaCha8Rng, max_n: usize) -> MultipartiteSpec {
    let n = r.gen_range(2..=max_n);
    loop {
        let mut parts = Vec::new();
        let mut left = n;
        while left > 0 {
            let a = r.gen_range(1..=left);
            parts.push(a);
            left -= a;
        }
        if parts.len() >= 2 {
            return MultipartiteSpec::new(parts).unwrap();
        }
    }
}

/// `table[v][c]`: number of edge ends of colour `c` at `v`, loops twice.
pub fn colour_degrees(
    g: &MultiGraph,
    colour_of: &BTreeMap<usize, usize>,
    t: usize,
) -> Vec<Vec<usize>> {
    let mut table = vec![vec![0; t]; g.vertex_count()];
    for e in g.edges() {
        let c = colour_of[&e.id];
        table[e.a][c] += 1;
        table[e.b][c] += 1;
    }
    table
}

pub fn colour_map(c: &Colouring) -> BTreeMap<usize, usize> {
    c.iter().collect()
}

/// Component label of every vertex in the subgraph formed by `edges`.
pub fn component_labels(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    fn root(label: &mut [usize], mut v: usize) -> usize {
        while label[v] != v {
            label[v] = label[label[v]];
            v = label[v];
        }
        v
    }
    for &(a, b) in edges {
        let (ra, rb) = (root(&mut label, a), root(&mut label, b));
        label[ra.max(rb)] = ra.min(rb);
    }
    (0..n).map(|v| root(&mut label, v)).collect()
}

pub fn count_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let labels = component_labels(n, edges);
    (0..n).filter(|&v| labels[v] == v).count()
}

/// Edge endpoint pairs of colour class `c`.
pub fn class_pairs(
    g: &MultiGraph,
    colour_of: &BTreeMap<usize, usize>,
    c: usize,
) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .filter(|e| colour_of[&e.id] == c)
        .map(|e| (e.a, e.b))
        .collect()
}

/// Whether every colour class is almost regular on `set`.
pub fn almost_regular(table: &[Vec<usize>], set: &[usize]) -> bool {
    let colours = table.first().map_or(0, Vec::len);
    (0..colours).all(|c| {
        let degs: Vec<usize> = set.iter().map(|&v| table[v][c]).collect();
        degs.iter().max().unwrap_or(&0) - degs.iter().min().unwrap_or(&0) <= 1
    })
}

/// Does a vertex lie on a cycle of the subgraph? A loop counts, as does a
/// repeated edge or an edge whose removal keeps its ends connected.
pub fn on_cycle(n: usize, edges: &[(usize, usize)], v: usize) -> bool {
    edges.iter().enumerate().any(|(i, &(a, b))| {
        if a != v && b != v {
            return false;
        }
        if a == b {
            return true;
        }
        let rest: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        let labels = component_labels(n, &rest);
        labels[a] == labels[b]
    })
}

pub mod checks;
