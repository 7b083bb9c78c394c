//! Recolouring engines: almost-regular recolouring on a symmetric vertex set,
//! equitabilisation over the parts of a multipartite graph, and the pair
//! connecting step.
//!
//! # Balancing by colour exchanges
//!
//! Let `S` be a set of vertices any permutation of which is an automorphism.
//! While some colour `c` has `deg_c(x) ≥ deg_c(y) + 2` for `x, y ∈ S`, every
//! other vertex `z` is an *anchor*: it sends equally many edges to `x` and to
//! `y`. Recolouring an `x–z` edge from `c` to `e` together with a `y–z` edge
//! from `e` to `c` moves one unit of imbalance from colour `c` to colour `e`
//! and leaves every colour degree at `z` untouched. Chaining such exchanges
//! gives a walk on colours `c → e₁ → … → e`; intermediate colours are
//! unaffected.
//!
//! Writing `D_e = deg_e(x) − deg_e(y)`, the set `R` of colours reachable from
//! `c` satisfies `Σ_{e∈R} D_e ≤ 0`: an anchor that shows any colour of `R` on
//! its `x` side makes every colour on its `y` side reachable. Since `D_c ≥ 2`,
//! some reachable `e` has `D_e ≤ −1`, and the exchange strictly lowers
//! `Σ_c Σ_{x∈S} deg_c(x)²`. The loop therefore terminates with every colour
//! class almost regular on `S`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{ensure, Error, Result};
use crate::graph::{components, ColourId, Colouring, EdgeId, MultiGraph, VertexId};
use crate::multipartite::VertexPartition;

/// A vertex set whose permutations are automorphisms of the ambient graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricOrbit {
    vertices: Vec<VertexId>,
}

impl SymmetricOrbit {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let set: BTreeSet<VertexId> = vertices.into_iter().collect();
        SymmetricOrbit {
            vertices: set.into_iter().collect(),
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Structural symmetry check: equal multiplicities from every outside
    /// vertex, between every pair inside, and no loops inside.
    pub fn check(&self, g: &MultiGraph) -> Result<()> {
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::OrbitViolation(format!(
                "vertex {v} is not in the graph"
            )));
        }
        if self.vertices.len() < 2 {
            return Ok(());
        }
        let mult = g.multiplicity_matrix();
        if let Some(&v) = self.vertices.iter().find(|&&v| mult[v][v] > 0) {
            return Err(Error::LoopOnOrbit { vertex: v });
        }
        let first = self.vertices[0];
        for w in (0..g.vertex_count()).filter(|&w| !self.contains(w)) {
            if let Some(&x) = self
                .vertices
                .iter()
                .find(|&&x| mult[w][x] != mult[w][first])
            {
                return Err(Error::OrbitViolation(format!(
                    "vertex {w} sends {} edges to {first} but {} to {x}",
                    mult[w][first], mult[w][x]
                )));
            }
        }
        let inner = mult[self.vertices[0]][self.vertices[1]];
        for (i, &x) in self.vertices.iter().enumerate() {
            for &y in &self.vertices[i + 1..] {
                if mult[x][y] != inner {
                    return Err(Error::OrbitViolation(format!(
                        "pair ({x}, {y}) has multiplicity {} instead of {inner}",
                        mult[x][y]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// True when the per-colour degrees in `table` differ by at most one on `set`.
pub fn is_almost_regular_on(table: &[Vec<usize>], set: &[VertexId]) -> bool {
    let Some(&first) = set.first() else {
        return true;
    };
    (0..table[first].len()).all(|c| {
        let (lo, hi) = set.iter().fold((usize::MAX, 0), |(lo, hi), &v| {
            (lo.min(table[v][c]), hi.max(table[v][c]))
        });
        hi - lo <= 1
    })
}

/// Recolours edges at `orbit` so that every colour class becomes almost
/// regular on it, preserving colour class sizes, colour degrees outside the
/// orbit, and the colours of edges that avoid the orbit.
pub fn almost_regular_recolour(
    g: &MultiGraph,
    colouring: &Colouring,
    orbit: &SymmetricOrbit,
) -> Result<Colouring> {
    orbit.check(g)?;
    ensure!(
        colouring.is_total_on(g),
        "colouring does not cover the graph"
    );
    let set = orbit.vertices();
    let mut out = colouring.clone();
    let mut table = out.degree_table(g);
    while let Some((c, x, y)) = find_imbalance(&table, set, colouring.colour_count()) {
        exchange(g, &mut out, &mut table, c, x, y)?;
    }
    check_recolour(g, colouring, &out, orbit)?;
    Ok(out)
}

/// First colour whose degrees on `set` spread by two or more, with its
/// heaviest and lightest vertices (lowest id on ties).
fn find_imbalance(
    table: &[Vec<usize>],
    set: &[VertexId],
    colours: usize,
) -> Option<(ColourId, VertexId, VertexId)> {
    (0..colours).find_map(|c| {
        let mut x = set[0];
        let mut y = set[0];
        for &v in set {
            if table[v][c] > table[x][c] {
                x = v;
            }
            if table[v][c] < table[y][c] {
                y = v;
            }
        }
        (table[x][c] >= table[y][c] + 2).then_some((c, x, y))
    })
}

/// One balancing walk for colour `c` from heavy `x` to light `y`.
fn exchange(
    g: &MultiGraph,
    colouring: &mut Colouring,
    table: &mut [Vec<usize>],
    c: ColourId,
    x: VertexId,
    y: VertexId,
) -> Result<()> {
    let colours = colouring.colour_count();
    // Lowest-id edge of each colour from x (resp. y) to each anchor.
    let mut x_side: BTreeMap<VertexId, BTreeMap<ColourId, EdgeId>> = BTreeMap::new();
    let mut y_side: BTreeMap<VertexId, BTreeMap<ColourId, EdgeId>> = BTreeMap::new();
    for e in g.edges() {
        let colour = colouring.colour(e.id).expect("total colouring");
        for (from, side) in [(x, &mut x_side), (y, &mut y_side)] {
            if e.touches(from) && !e.is_loop() {
                let z = e.other(from);
                if z != x && z != y {
                    side.entry(z).or_default().entry(colour).or_insert(e.id);
                }
            }
        }
    }
    let imbalance = |e: ColourId| table[x][e] as i64 - table[y][e] as i64;
    let target = imbalance(c) - 3;

    // Breadth-first search over colours; an arc u -> w exists when some
    // anchor has a u-coloured edge to x and a w-coloured edge to y.
    let mut via: Vec<Option<(ColourId, EdgeId, EdgeId)>> = vec![None; colours];
    let mut seen = vec![false; colours];
    seen[c] = true;
    let mut queue = VecDeque::from([c]);
    let mut found = None;
    'search: while let Some(u) = queue.pop_front() {
        for (z, xs) in &x_side {
            let Some(&x_edge) = xs.get(&u) else { continue };
            let Some(ys) = y_side.get(z) else { continue };
            for (&w, &y_edge) in ys {
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                via[w] = Some((u, x_edge, y_edge));
                if imbalance(w) <= target {
                    found = Some(w);
                    break 'search;
                }
                queue.push_back(w);
            }
        }
    }
    let Some(mut w) = found else {
        return Err(Error::Infeasible { colour: c });
    };
    while let Some((u, x_edge, y_edge)) = via[w] {
        colouring.set(x_edge, w);
        colouring.set(y_edge, u);
        table[x][u] -= 1;
        table[x][w] += 1;
        table[y][w] -= 1;
        table[y][u] += 1;
        w = u;
    }
    Ok(())
}

/// Asserts the four recolouring guarantees.
fn check_recolour(
    g: &MultiGraph,
    before: &Colouring,
    after: &Colouring,
    orbit: &SymmetricOrbit,
) -> Result<()> {
    ensure!(
        before.class_sizes() == after.class_sizes(),
        "recolouring changed colour class sizes"
    );
    let (t0, t1) = (before.degree_table(g), after.degree_table(g));
    for v in (0..g.vertex_count()).filter(|&v| !orbit.contains(v)) {
        ensure!(t0[v] == t1[v], "recolouring changed colour degrees at {v}");
    }
    for e in g.edges() {
        if !orbit.contains(e.a) && !orbit.contains(e.b) {
            ensure!(
                before.colour(e.id) == after.colour(e.id),
                "recolouring touched edge {} away from the orbit",
                e.id
            );
        }
    }
    ensure!(
        is_almost_regular_on(&t1, orbit.vertices()),
        "colouring is not almost regular on {:?}",
        orbit.vertices()
    );
    Ok(())
}

/// A partition of the edges of a graph into `t` spanning factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorisation {
    graph: MultiGraph,
    assignment: Colouring,
}

impl Factorisation {
    pub fn new(graph: MultiGraph, assignment: Colouring) -> Result<Self> {
        ensure!(
            assignment.is_total_on(&graph),
            "factor assignment does not cover the graph"
        );
        Ok(Factorisation { graph, assignment })
    }

    /// Factorisation from explicit factors given as edge id lists.
    pub fn from_factors(graph: MultiGraph, factors: &[Vec<EdgeId>]) -> Result<Self> {
        let assignment = Colouring::from_pairs(
            factors.len(),
            factors
                .iter()
                .enumerate()
                .flat_map(|(i, f)| f.iter().map(move |&e| (e, i))),
        );
        let total: usize = factors.iter().map(Vec::len).sum();
        ensure!(total == graph.edge_count(), "factors overlap or miss edges");
        Factorisation::new(graph, assignment)
    }

    pub fn t(&self) -> usize {
        self.assignment.colour_count()
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn assignment(&self) -> &Colouring {
        &self.assignment
    }

    pub fn factor_of(&self, e: EdgeId) -> Option<usize> {
        self.assignment.colour(e)
    }

    pub fn factor(&self, i: usize) -> MultiGraph {
        self.assignment.class(&self.graph, i)
    }

    pub fn factors(&self) -> Vec<MultiGraph> {
        (0..self.t()).map(|i| self.factor(i)).collect()
    }

    /// `Σ_i c(F_i)`.
    pub fn component_total(&self) -> usize {
        self.factors().iter().map(|f| components(f).0).sum()
    }

    /// The same assignment over another graph with identical edge ids, such
    /// as the base graph or quotient of this one.
    pub fn transfer(&self, graph: &MultiGraph) -> Result<Factorisation> {
        Factorisation::new(graph.clone(), self.assignment.clone())
    }
}

/// Per-factor multiset of quotient edges (block pairs).
pub fn quotient_profile(
    f: &Factorisation,
    partition: &VertexPartition,
) -> Vec<BTreeMap<(usize, usize), usize>> {
    f.factors()
        .iter()
        .map(|factor| {
            let mut profile = BTreeMap::new();
            for e in factor.edges() {
                let (x, y) = (partition.block_of(e.a), partition.block_of(e.b));
                *profile.entry((x.min(y), x.max(y))).or_insert(0) += 1;
            }
            profile
        })
        .collect()
}

/// Makes every factor almost regular on every part while keeping each
/// factor's quotient over the parts unchanged.
pub fn equitabilise(
    k: &MultiGraph,
    parts: &VertexPartition,
    f: &Factorisation,
) -> Result<Factorisation> {
    ensure!(f.graph() == k, "factorisation is not over the given graph");
    let mut colouring = f.assignment().clone();
    for part in parts.blocks().iter().filter(|p| p.len() > 1) {
        colouring =
            almost_regular_recolour(k, &colouring, &SymmetricOrbit::new(part.iter().copied()))?;
    }
    let out = Factorisation::new(k.clone(), colouring)?;

    ensure!(
        quotient_profile(&out, parts) == quotient_profile(f, parts),
        "equitabilising changed a factor's part quotient"
    );
    let table = out.assignment().degree_table(k);
    for part in parts.blocks() {
        ensure!(
            is_almost_regular_on(&table, part),
            "factor not almost regular on part {part:?}"
        );
    }
    Ok(out)
}

/// Recolours a factorisation so that `alpha` and `beta` share a component in
/// every factor, changing only edges at `alpha` or `beta`.
///
/// Requires the transposition `(alpha beta)` to be an automorphism and, in
/// every factor, the two vertices to share a component or one of them to lie
/// on a cycle.
pub fn connect_pair(
    g: &MultiGraph,
    f: &Factorisation,
    alpha: VertexId,
    beta: VertexId,
) -> Result<Factorisation> {
    ensure!(f.graph() == g, "factorisation is not over the given graph");
    ensure!(alpha != beta, "connect_pair needs two distinct vertices");
    let orbit = SymmetricOrbit::new([alpha, beta]);
    orbit.check(g)?;
    let t = f.t();
    let factors = f.factors();

    // Colour i keeps the factor's bulk; colour t + i marks an alpha-beta path
    // or a cycle through one of them.
    let mut auxiliary = Colouring::new(2 * t, BTreeMap::new());
    let mut separated = false;
    for (i, factor) in factors.iter().enumerate() {
        let (_, comp) = components(factor);
        let marked = if comp[alpha] == comp[beta] {
            factor.shortest_path(alpha, beta).expect("same component")
        } else {
            separated = true;
            [alpha.min(beta), alpha.max(beta)]
                .into_iter()
                .find_map(|v| factor.cycle_through(v))
                .ok_or(Error::PreconditionViolated { factor: i })?
        };
        for e in factor.edges() {
            let colour = if marked.contains(&e.id) { t + i } else { i };
            auxiliary.set(e.id, colour);
        }
    }

    let balanced = almost_regular_recolour(g, &auxiliary, &orbit)?;
    let merged = Colouring::from_pairs(t, balanced.iter().map(|(e, c)| (e, c % t)));
    let out = Factorisation::new(g.clone(), merged)?;

    let pair = [alpha, beta];
    let table = out.assignment().degree_table(g);
    for (i, (old, new)) in factors.iter().zip(out.factors()).enumerate() {
        ensure!(
            old.edge_count() == new.edge_count(),
            "factor {i} changed size"
        );
        let (d_old, d_new) = (old.degrees(), new.degrees());
        for v in (0..g.vertex_count()).filter(|v| !pair.contains(v)) {
            ensure!(d_old[v] == d_new[v], "factor {i} changed degree at {v}");
        }
        ensure!(
            old.without_vertices(&pair) == new.without_vertices(&pair),
            "factor {i} changed away from the pair"
        );
        ensure!(
            table[alpha][i].abs_diff(table[beta][i]) <= 1,
            "factor {i} not almost regular on the pair"
        );
        let (_, comp) = components(&new);
        ensure!(
            comp[alpha] == comp[beta],
            "factor {i} still separates the pair"
        );
    }
    let (before, after) = (f.component_total(), out.component_total());
    ensure!(
        after <= before && (!separated || after < before),
        "component total went from {before} to {after}"
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_check_detects_asymmetry() {
        let g = MultiGraph::from_pairs(3, [(0, 2), (0, 2), (1, 2)]);
        assert!(matches!(
            SymmetricOrbit::new([0, 1]).check(&g),
            Err(Error::OrbitViolation(_))
        ));
        let looped = MultiGraph::from_pairs(3, [(0, 0), (1, 1)]);
        assert_eq!(
            SymmetricOrbit::new([0, 1]).check(&looped),
            Err(Error::LoopOnOrbit { vertex: 0 })
        );
        let triangle = MultiGraph::from_pairs(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]);
        assert!(matches!(
            SymmetricOrbit::new([0, 1, 2]).check(&triangle),
            Err(Error::OrbitViolation(_))
        ));
    }

    #[test]
    fn already_balanced_is_returned_as_is() {
        let g = MultiGraph::from_pairs(3, [(0, 2), (1, 2)]);
        let c = Colouring::from_pairs(2, [(0, 0), (1, 1)]);
        let out = almost_regular_recolour(&g, &c, &SymmetricOrbit::new([0, 1])).unwrap();
        assert_eq!(out, c);
    }

    #[test]
    fn edges_away_from_orbit_are_untouched() {
        let g = MultiGraph::from_pairs(4, [(2, 3), (2, 3), (3, 3)]);
        let c = Colouring::from_pairs(2, [(0, 0), (1, 1), (2, 1)]);
        let out = almost_regular_recolour(&g, &c, &SymmetricOrbit::new([0, 1])).unwrap();
        assert_eq!(out, c);
    }

    #[test]
    fn internal_orbit_edges_act_as_anchors() {
        // Triangle on S = {0, 1, 2} with an outside vertex 3 joined once to each.
        let g = MultiGraph::from_pairs(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]);
        let c = Colouring::from_pairs(2, [(0, 0), (1, 0), (2, 1), (3, 0), (4, 1), (5, 1)]);
        let out = almost_regular_recolour(&g, &c, &SymmetricOrbit::new([0, 1, 2])).unwrap();
        let table = out.degree_table(&g);
        assert!(is_almost_regular_on(&table, &[0, 1, 2]));
    }

    #[test]
    fn connect_pair_rejects_two_open_paths() {
        // alpha = 0, beta = 1; factor 0 is the two paths 0-2 and 1-3.
        let g = MultiGraph::from_pairs(4, [(0, 2), (1, 2), (0, 3), (1, 3)]);
        let f = Factorisation::from_factors(g.clone(), &[vec![0, 3], vec![1, 2]]).unwrap();
        assert_eq!(
            connect_pair(&g, &f, 0, 1),
            Err(Error::PreconditionViolated { factor: 0 })
        );
    }

    #[test]
    fn connect_pair_keeps_connected_input_valid() {
        let g = MultiGraph::from_pairs(3, [(0, 2), (1, 2)]);
        let f = Factorisation::from_factors(g.clone(), &[vec![0, 1]]).unwrap();
        let out = connect_pair(&g, &f, 0, 1).unwrap();
        assert_eq!(out.component_total(), 1);
    }
}
