//! Star certificates in the degree quotient, 2-factorisations of even
//! regular multigraphs, and degree-proportional factorisations.

use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::graph::{euler_orientation, Colouring, Edge, EdgeId, MultiGraph, VertexId};
use crate::multipartite::{BlockId, QuotientView};
use crate::recolour::Factorisation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StarCase {
    /// The star reaches every other block.
    Spanning,
    /// The star misses exactly one block, which is a single part.
    Excluded,
    /// The quotient is a single vertex.
    CompleteGraph,
}

/// A star of multiplicity `2t` in the degree quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarCertificate {
    pub center: BlockId,
    pub leaves: Vec<BlockId>,
    pub multiplicity: usize,
    pub excluded: Option<BlockId>,
}

impl StarCertificate {
    pub fn case(&self) -> StarCase {
        match (self.leaves.is_empty(), self.excluded) {
            (true, None) => StarCase::CompleteGraph,
            (_, Some(_)) => StarCase::Excluded,
            (false, None) => StarCase::Spanning,
        }
    }

    /// Checks the certificate against the quotient it claims to live in.
    pub fn validate(&self, q: &QuotientView) -> Result<()> {
        let mult = q.quotient.multiplicity_matrix();
        let s = q.quotient.vertex_count();
        ensure!(self.center < s, "star center out of range");
        ensure!(!self.leaves.contains(&self.center), "center is a leaf");
        let mut covered: Vec<BlockId> = self.leaves.clone();
        covered.push(self.center);
        if let Some(x) = self.excluded {
            ensure!(
                x != self.center && !self.leaves.contains(&x),
                "excluded block is in the star"
            );
            ensure!(mult[x][x] == 0, "excluded block {x} is not a single part");
            covered.push(x);
        }
        covered.sort_unstable();
        covered.dedup();
        ensure!(covered.len() == s, "star does not account for every block");
        for &leaf in &self.leaves {
            ensure!(
                mult[self.center][leaf] >= self.multiplicity,
                "leaf {leaf} joined by {} < {} edges",
                mult[self.center][leaf],
                self.multiplicity
            );
        }
        Ok(())
    }

    /// The lowest-id `multiplicity` parallel edges to each leaf, per leaf.
    pub fn edges(&self, q: &QuotientView) -> Vec<Vec<EdgeId>> {
        self.leaves
            .iter()
            .map(|&leaf| {
                q.quotient
                    .edges()
                    .iter()
                    .filter(|e| {
                        (e.a, e.b) == (self.center, leaf) || (e.a, e.b) == (leaf, self.center)
                    })
                    .take(self.multiplicity)
                    .map(|e| e.id)
                    .collect()
            })
            .collect()
    }
}

/// Finds a star of multiplicity `two_t` centred on a block of the degree
/// quotient that covers every block, or every block but one single part.
///
/// The largest block is tried first as a spanning centre, then with the
/// unique smallest block excluded, and finally every centre/exclusion pair.
/// A block is a single part exactly when it carries no loops.
pub fn find_star(q: &QuotientView, two_t: usize) -> Result<StarCertificate> {
    let s = q.quotient.vertex_count();
    let mult = q.quotient.multiplicity_matrix();
    let attempt = |center: BlockId, excluded: Option<BlockId>| -> Option<StarCertificate> {
        if excluded == Some(center) || excluded.is_some_and(|x| mult[x][x] > 0) {
            return None;
        }
        let leaves: Vec<BlockId> = (0..s)
            .filter(|&j| j != center && Some(j) != excluded)
            .collect();
        leaves
            .iter()
            .all(|&j| mult[center][j] >= two_t)
            .then_some(StarCertificate {
                center,
                leaves,
                multiplicity: two_t,
                excluded,
            })
    };

    if s == 1 {
        return Ok(attempt(0, None).expect("a lone vertex is an empty star"));
    }
    if let Some(cert) = attempt(0, None) {
        return Ok(cert);
    }
    let sizes: Vec<usize> = q.partition.blocks().iter().map(Vec::len).collect();
    let smallest = *sizes.iter().min().expect("non-empty quotient");
    if sizes.iter().filter(|&&b| b == smallest).count() == 1 {
        let x = sizes.iter().position(|&b| b == smallest).unwrap();
        if let Some(cert) = attempt(0, Some(x)) {
            return Ok(cert);
        }
    }
    (0..s)
        .flat_map(|c| {
            std::iter::once(None)
                .chain((0..s).map(Some))
                .map(move |x| (c, x))
        })
        .find_map(|(c, x)| attempt(c, x))
        .ok_or(Error::StarNotFound { two_t })
}

/// Splits the star's edges into `t` stars of multiplicity two.
pub fn split_star(cert: &StarCertificate, q: &QuotientView, t: usize) -> Result<Vec<Vec<EdgeId>>> {
    ensure!(t >= 1, "cannot split a star into zero parts");
    ensure!(cert.multiplicity == 2 * t, "star multiplicity is not 2t");
    cert.validate(q)?;
    let mut parts = vec![Vec::new(); t];
    for bundle in cert.edges(q) {
        for (i, pair) in bundle.chunks(2).enumerate() {
            parts[i].extend_from_slice(pair);
        }
    }
    Ok(parts)
}

/// Decomposes a `2k`-regular multigraph (loops count twice) into `k`
/// spanning 2-regular factors.
///
/// Orient along closed trails so every vertex has `k` arcs out and `k` in,
/// read the arcs as a `k`-regular bipartite multigraph (tails against heads),
/// and peel off `k` perfect matchings. Each matching is one arc out and one
/// arc in at every vertex, which is a 2-factor of the original graph.
pub fn two_factorization(g: &MultiGraph) -> Result<Vec<MultiGraph>> {
    let n = g.vertex_count();
    let degrees = g.degrees();
    let degree = degrees.first().copied().unwrap_or(0);
    if degrees.iter().any(|&d| d != degree) || degree % 2 == 1 {
        return Err(Error::NotEvenRegular);
    }
    let k = degree / 2;
    let orientation = euler_orientation(g)?;
    let mut arcs: Vec<Vec<(EdgeId, VertexId)>> = vec![Vec::new(); n];
    for (&id, &(tail, head)) in &orientation {
        arcs[tail].push((id, head));
    }

    let mut factors = Vec::with_capacity(k);
    for _ in 0..k {
        let matching = perfect_matching(&arcs).ok_or_else(|| {
            Error::InternalInconsistency(
                "regular bipartite graph without a perfect matching".into(),
            )
        })?;
        let chosen: Vec<EdgeId> = matching.iter().map(|&(id, _)| id).collect();
        for (tail, &(id, _)) in matching.iter().enumerate() {
            arcs[tail].retain(|&(e, _)| e != id);
        }
        let factor = g.subgraph(|e| chosen.contains(&e.id));
        ensure!(
            factor.degrees().iter().all(|&d| d == 2),
            "matching did not fold back to a 2-factor"
        );
        factors.push(factor);
    }
    Ok(factors)
}

/// Perfect matching of tails to heads by augmenting paths; entry `u` is the
/// arc chosen at tail `u`.
fn perfect_matching(arcs: &[Vec<(EdgeId, VertexId)>]) -> Option<Vec<(EdgeId, VertexId)>> {
    let n = arcs.len();
    let mut head_match: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    for u in 0..n {
        let mut visited = vec![false; n];
        if !augment(u, arcs, &mut head_match, &mut visited) {
            return None;
        }
    }
    let mut out = vec![(0, 0); n];
    for (head, m) in head_match.iter().enumerate() {
        let (tail, id) = (*m)?;
        out[tail] = (id, head);
    }
    Some(out)
}

fn augment(
    u: VertexId,
    arcs: &[Vec<(EdgeId, VertexId)>],
    head_match: &mut [Option<(VertexId, EdgeId)>],
    visited: &mut [bool],
) -> bool {
    for &(id, head) in &arcs[u] {
        if visited[head] {
            continue;
        }
        visited[head] = true;
        let free = match head_match[head] {
            None => true,
            Some((other, _)) => augment(other, arcs, head_match, visited),
        };
        if free {
            head_match[head] = Some((u, id));
            return true;
        }
    }
    false
}

/// Factorises `g` into `t` factors with `deg_{F_i}(v) = deg(v)/t`, given
/// that `2t` divides every degree.
///
/// Each vertex is split into `deg(v)/2t` copies of degree `2t`, handing out
/// its edge ends in edge id order; the resulting `2t`-regular graph has `t`
/// 2-factors, and merging the copies back turns 2-factor `i` into factor `i`.
pub fn proportional_factorization(g: &MultiGraph, t: usize) -> Result<Factorisation> {
    ensure!(t >= 1, "need at least one factor");
    let two_t = 2 * t;
    let degrees = g.degrees();
    if let Some((v, &d)) = degrees.iter().enumerate().find(|(_, &d)| d % two_t != 0) {
        return Err(Error::DegreeNotDivisible {
            vertex: v,
            degree: d,
            divisor: two_t,
        });
    }
    let mut first_copy = Vec::with_capacity(g.vertex_count());
    let mut copies = 0;
    for &d in &degrees {
        first_copy.push(copies);
        copies += d / two_t;
    }
    let mut ends_used = vec![0usize; g.vertex_count()];
    let mut take = |v: VertexId| {
        let copy = first_copy[v] + ends_used[v] / two_t;
        ends_used[v] += 1;
        copy
    };
    let split = MultiGraph::from_edges(
        copies,
        g.edges()
            .iter()
            .map(|e| Edge {
                id: e.id,
                a: take(e.a),
                b: take(e.b),
            })
            .collect::<Vec<_>>(),
    );

    let mut assignment = Colouring::new(t, Default::default());
    if split.edge_count() > 0 {
        let two_factors = two_factorization(&split)?;
        ensure!(two_factors.len() == t, "expected {t} 2-factors");
        for (i, factor) in two_factors.iter().enumerate() {
            for id in factor.edge_ids() {
                assignment.set(id, i);
            }
        }
    }
    let out = Factorisation::new(g.clone(), assignment)?;
    for (i, factor) in out.factors().iter().enumerate() {
        ensure!(
            factor
                .degrees()
                .iter()
                .zip(&degrees)
                .all(|(&d, &full)| d * t == full),
            "factor {i} is not degree-proportional"
        );
    }
    Ok(out)
}
