//! The three-stage construction of a Hamilton path decomposition.
//!
//! 1. [`base_factorisation`]: factors that are cycles plus one path and whose
//!    degree-block quotient is connected, built from a star in the degree
//!    quotient and a degree-proportional factorisation.
//! 2. [`part_connect`]: repeatedly joins equal-size parts that a factor
//!    separates until every factor's part quotient is connected.
//! 3. [`hamilton_decompose`]: repeatedly joins two vertices of one part that a
//!    factor separates until every factor is a Hamilton path.
//!
//! Every stage asserts its postconditions in all build modes; a failure is
//! reported as [`Error::InternalInconsistency`].

use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::factorize::{find_star, proportional_factorization, split_star};
use crate::graph::{
    classify_factor, components, is_connected, path_sequence, Colouring, EdgeId, FactorShape,
    MultiGraph, VertexId,
};
use crate::multipartite::{
    admissibility, build_graph, degree_blocks, degree_partition, quotient, BlockId,
    MultipartiteSpec, QuotientView, VertexPartition,
};
use crate::recolour::{
    almost_regular_recolour, connect_pair, equitabilise, quotient_profile, Factorisation,
    SymmetricOrbit,
};

/// The degree quotient with an extra vertex `B_∞` absorbing each block's
/// degree deficit, so block `j` has degree `2t·b_j` and `B_∞` degree `2t`.
#[derive(Clone, Debug)]
pub struct AugmentedQuotient {
    pub graph: MultiGraph,
    pub infinity: BlockId,
    pub infinity_multiplicities: Vec<usize>,
    first_infinity_edge: EdgeId,
}

impl AugmentedQuotient {
    pub fn new(q: &QuotientView, t: usize) -> Result<Self> {
        let s = q.quotient.vertex_count();
        let degrees = q.quotient.degrees();
        let mut graph = q.quotient.clone();
        let infinity = graph.add_vertex();
        let first_infinity_edge = graph.edges().last().map_or(0, |e| e.id + 1);
        let mut infinity_multiplicities = Vec::with_capacity(s);
        for (j, &deg) in degrees.iter().enumerate() {
            let target = 2 * t * q.partition.block(j).len();
            ensure!(
                deg <= target,
                "block {j} has degree {deg} above 2t·b_j = {target}"
            );
            infinity_multiplicities.push(target - deg);
            for _ in deg..target {
                graph.add_edge(j, infinity);
            }
        }
        let n = q.base.vertex_count();
        ensure!(
            graph.degree(infinity) == 2 * t,
            "B_inf does not have degree 2t"
        );
        ensure!(
            graph.edge_count() == t * (n + 1),
            "augmented quotient has wrong size"
        );
        Ok(AugmentedQuotient {
            graph,
            infinity,
            infinity_multiplicities,
            first_infinity_edge,
        })
    }

    pub fn is_infinity_edge(&self, id: EdgeId) -> bool {
        id >= self.first_infinity_edge
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub stage: String,
    /// Total number of components over all factors, measured in the graph
    /// the stage works on (part quotient for `part_connect`).
    pub component_total: usize,
    pub shapes: Vec<FactorShape>,
}

/// Component totals recorded along the way; within a merge loop they strictly
/// decrease.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PipelineTrace {
    pub entries: Vec<TraceEntry>,
}

impl PipelineTrace {
    fn record(&mut self, stage: &str, component_total: usize, f: &Factorisation) {
        self.entries.push(TraceEntry {
            stage: stage.to_owned(),
            component_total,
            shapes: f.factors().iter().map(classify_factor).collect(),
        });
    }

    /// Merge iterations performed by `stage`.
    pub fn iterations(&self, stage: &str) -> usize {
        self.entries
            .iter()
            .filter(|e| e.stage == stage)
            .count()
            .saturating_sub(1)
    }
}

/// `t` vertex sequences, each meant to be a Hamilton path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Decomposition {
    paths: Vec<Vec<VertexId>>,
}

impl Decomposition {
    /// Wraps the sequences as given.
    pub fn from_paths(paths: Vec<Vec<VertexId>>) -> Self {
        Decomposition { paths }
    }

    /// Canonical form: each path starts at its lower end and paths are sorted.
    pub fn canonical(&self) -> Self {
        let mut paths: Vec<Vec<VertexId>> = self
            .paths
            .iter()
            .map(|p| {
                let mut p = p.clone();
                if p.first() > p.last() {
                    p.reverse();
                }
                p
            })
            .collect();
        paths.sort();
        Decomposition { paths }
    }

    pub fn paths(&self) -> &[Vec<VertexId>] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Checks admissibility and returns `t`, for stages that need `r ≥ 2`.
fn pipeline_t(spec: &MultipartiteSpec) -> Result<usize> {
    let report = admissibility(spec);
    if !report.admissible {
        return Err(Error::NotAdmissible(report));
    }
    ensure!(
        spec.part_count() >= 2 && spec.order() >= 2,
        "construction needs at least two parts"
    );
    Ok(report.t.expect("admissible with n > 1"))
}

fn per_factor_components(
    f: &Factorisation,
    graph: &MultiGraph,
) -> Result<Vec<(usize, Vec<usize>)>> {
    Ok(f.transfer(graph)?
        .factors()
        .iter()
        .map(components)
        .collect())
}

/// Factorisation of `K` into cycles-plus-one-path factors whose quotient over
/// the degree partition is connected.
pub fn base_factorisation(spec: &MultipartiteSpec) -> Result<Factorisation> {
    base_stage(spec, &mut PipelineTrace::default())
}

fn base_stage(spec: &MultipartiteSpec, trace: &mut PipelineTrace) -> Result<Factorisation> {
    let t = pipeline_t(spec)?;
    let n = spec.order();
    let (k, parts) = build_graph(spec);
    let blocks = degree_partition(spec);
    let qb = quotient(&k, &blocks);
    let block_sizes: Vec<usize> = blocks.blocks().iter().map(Vec::len).collect();

    let aug = AugmentedQuotient::new(&qb, t)?;
    let star = find_star(&qb, 2 * t)?;
    star.validate(&qb)?;
    let star_edges: Vec<EdgeId> = star.edges(&qb).concat();
    let rest = aug.graph.subgraph(|e| !star_edges.contains(&e.id));
    let z = proportional_factorization(&rest, t)?;

    let mut assignment = Colouring::new(t, z.assignment().iter().collect());
    for (i, piece) in split_star(&star, &qb, t)?.iter().enumerate() {
        for &e in piece {
            assignment.set(e, i);
        }
    }
    let z_full = Factorisation::new(aug.graph.clone(), assignment)?;
    for (i, zi) in z_full.factors().iter().enumerate() {
        for (j, &b) in block_sizes.iter().enumerate() {
            ensure!(
                zi.degree(j) == 2 * b,
                "Z'_{i} has wrong degree at block {j}"
            );
        }
        ensure!(
            zi.degree(aug.infinity) == 2,
            "Z'_{i} has wrong degree at B_inf"
        );
        ensure!(
            zi.edge_count() == n + 1,
            "Z'_{i} has {} edges",
            zi.edge_count()
        );
    }

    // Dropping B_inf leaves H_i on the degree quotient; sharing edge ids, the
    // same assignment lifts to G_i on K.
    let lifted = Colouring::new(
        t,
        z_full
            .assignment()
            .iter()
            .filter(|&(e, _)| !aug.is_infinity_edge(e))
            .collect(),
    );
    let h = Factorisation::new(qb.quotient.clone(), lifted.clone())?;
    for (i, hi) in h.factors().iter().enumerate() {
        for (j, &b) in block_sizes.iter().enumerate() {
            ensure!(hi.degree(j) <= 2 * b, "H_{i} exceeds 2b_j at block {j}");
        }
        ensure!(
            hi.edge_count() == n - 1,
            "H_{i} has {} edges",
            hi.edge_count()
        );
        ensure!(is_connected(hi), "H_{i} is disconnected");
    }
    let g = Factorisation::new(k.clone(), lifted)?;
    for (i, gi) in g.factors().iter().enumerate() {
        let degrees = gi.degrees();
        for (j, block) in blocks.blocks().iter().enumerate() {
            let sum: usize = block.iter().map(|&v| degrees[v]).sum();
            ensure!(sum <= 2 * block.len(), "G_{i} exceeds 2b_j on block {j}");
        }
        ensure!(
            gi.edge_count() == n - 1,
            "G_{i} has {} edges",
            gi.edge_count()
        );
        ensure!(
            is_connected(&qb.project(gi)),
            "G_{i} has a disconnected block quotient"
        );
    }

    let g = balance_degree_blocks(spec, &k, &parts, &g)?;
    let f = equitabilise(&k, &parts, &g)?;
    for (i, fi) in f.factors().iter().enumerate() {
        ensure!(
            classify_factor(fi).is_cycles_plus_one_path(),
            "F_{i} is not cycles plus one path"
        );
        ensure!(
            is_connected(&qb.project(fi)),
            "F_{i} has a disconnected block quotient"
        );
    }
    trace.record("base", f.component_total(), &f);
    Ok(f)
}

/// Evens out factor degrees across the parts that make up each degree block.
///
/// Parts of equal size form a symmetric orbit of the part quotient, so the
/// recolouring there makes each factor's degree sum at every part at most
/// `2|A_x|` (the block sum is at most `2b_j`). It changes no block-quotient
/// multiplicity, and afterwards equitabilising within parts bounds every
/// vertex degree by two.
fn balance_degree_blocks(
    spec: &MultipartiteSpec,
    k: &MultiGraph,
    parts: &VertexPartition,
    g: &Factorisation,
) -> Result<Factorisation> {
    let qa = quotient(k, parts);
    let mut colouring = g.assignment().clone();
    for block in degree_blocks(spec).iter().filter(|b| b.parts.len() > 1) {
        colouring = almost_regular_recolour(
            &qa.quotient,
            &colouring,
            &SymmetricOrbit::new(block.parts.iter().copied()),
        )?;
    }
    let out = Factorisation::new(k.clone(), colouring)?;
    let blocks = degree_partition(spec);
    ensure!(
        quotient_profile(&out, &blocks) == quotient_profile(g, &blocks),
        "block balancing changed a block quotient"
    );
    for (i, factor) in out.transfer(&qa.quotient)?.factors().iter().enumerate() {
        for (x, &a) in spec.parts().iter().enumerate() {
            ensure!(
                factor.degree(x) <= 2 * a,
                "factor {i} exceeds 2|A_x| at part {x}"
            );
        }
    }
    Ok(out)
}

/// Turns a base factorisation into one whose part quotients are connected.
pub fn part_connect(spec: &MultipartiteSpec, f: &Factorisation) -> Result<Factorisation> {
    part_connect_stage(spec, f, &mut PipelineTrace::default())
}

fn part_connect_stage(
    spec: &MultipartiteSpec,
    f: &Factorisation,
    trace: &mut PipelineTrace,
) -> Result<Factorisation> {
    let t = pipeline_t(spec)?;
    let (k, parts) = build_graph(spec);
    ensure!(
        f.graph() == &k && f.t() == t,
        "factorisation does not match the spec"
    );
    let qa = quotient(&k, &parts);
    let blocks = degree_partition(spec);
    for (i, hi) in f.factors().iter().enumerate() {
        ensure!(
            classify_factor(hi).is_cycles_plus_one_path(),
            "input factor {i} is not cycles plus one path"
        );
        ensure!(
            is_connected(&quotient(hi, &blocks).quotient),
            "input factor {i} has a disconnected block quotient"
        );
    }

    let mut h = f.clone();
    loop {
        let comps = per_factor_components(&h, &qa.quotient)?;
        let total: usize = comps.iter().map(|c| c.0).sum();
        trace.record("part_connect", total, &h);
        if total == t {
            return Ok(h);
        }
        let (factor, (_, comp)) = comps
            .iter()
            .enumerate()
            .find(|(_, c)| c.0 > 1)
            .expect("total above t");
        let r = spec.part_count();
        let (x, y) = (0..r)
            .flat_map(|x| (x + 1..r).map(move |y| (x, y)))
            .find(|&(x, y)| spec.parts()[x] == spec.parts()[y] && comp[x] != comp[y])
            .ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "factor {factor} has no equal-size parts in distinct components"
                ))
            })?;

        let joined = connect_pair(&qa.quotient, &h.transfer(&qa.quotient)?, x, y)?;
        let next = equitabilise(&k, &parts, &joined.transfer(&k)?)?;

        let next_total: usize = per_factor_components(&next, &qa.quotient)?
            .iter()
            .map(|c| c.0)
            .sum();
        ensure!(
            next_total < total,
            "part components did not decrease ({total} -> {next_total})"
        );
        for (i, yi) in next.factors().iter().enumerate() {
            ensure!(
                classify_factor(yi).is_cycles_plus_one_path(),
                "Y_{i} is not cycles plus one path"
            );
        }
        ensure!(
            quotient_profile(&next, &blocks) == quotient_profile(&h, &blocks),
            "block quotients changed while joining parts {x} and {y}"
        );
        h = next;
    }
}

/// Decomposes an admissible complete multipartite graph into `t` Hamilton
/// paths.
pub fn hamilton_decompose(spec: &MultipartiteSpec) -> Result<Decomposition> {
    hamilton_decompose_traced(spec).map(|(d, _)| d)
}

/// [`hamilton_decompose`] together with the per-stage component totals.
pub fn hamilton_decompose_traced(
    spec: &MultipartiteSpec,
) -> Result<(Decomposition, PipelineTrace)> {
    let report = admissibility(spec);
    if !report.admissible {
        return Err(Error::NotAdmissible(report));
    }
    let mut trace = PipelineTrace::default();
    if spec.order() == 1 || report.t == Some(0) {
        return Ok((Decomposition::default(), trace));
    }
    let t = pipeline_t(spec)?;
    let (k, parts) = build_graph(spec);
    let base = base_stage(spec, &mut trace)?;
    let mut h = part_connect_stage(spec, &base, &mut trace)?;

    loop {
        let comps = per_factor_components(&h, &k)?;
        let total: usize = comps.iter().map(|c| c.0).sum();
        trace.record("hamilton", total, &h);
        if total == t {
            break;
        }
        let (factor, (_, comp)) = comps
            .iter()
            .enumerate()
            .find(|(_, c)| c.0 > 1)
            .expect("total above t");
        let (u, v) = parts
            .blocks()
            .iter()
            .flat_map(|part| {
                part.iter()
                    .enumerate()
                    .flat_map(move |(i, &u)| part[i + 1..].iter().map(move |&v| (u, v)))
            })
            .find(|&(u, v)| comp[u] != comp[v])
            .ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "factor {factor} has no part split across components"
                ))
            })?;

        let next = connect_pair(&k, &h, u, v)?;
        let next_total = next.component_total();
        ensure!(
            next_total < total,
            "components did not decrease ({total} -> {next_total})"
        );
        for (i, gi) in next.factors().iter().enumerate() {
            ensure!(
                classify_factor(gi).is_cycles_plus_one_path(),
                "G_{i} is not cycles plus one path"
            );
        }
        ensure!(
            quotient_profile(&next, &parts) == quotient_profile(&h, &parts),
            "part quotients changed while joining {u} and {v}"
        );
        h = next;
    }

    let paths = h
        .factors()
        .iter()
        .map(path_sequence)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            Error::InternalInconsistency("a final factor is not a Hamilton path".into())
        })?;
    Ok((Decomposition::from_paths(paths).canonical(), trace))
}
