//! Complete multipartite graphs, their admissibility and their quotients.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Part sizes of a complete multipartite graph, kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultipartiteSpec {
    parts: Vec<usize>,
}

impl MultipartiteSpec {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Parse("at least one part is required".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Parse("part sizes must be positive".into()));
        }
        parts.sort_unstable();
        Ok(MultipartiteSpec { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn size(&self) -> usize {
        let n = self.order();
        let squares: usize = self.parts.iter().map(|a| a * a).sum();
        (n * n - squares) / 2
    }

    pub fn is_complete_graph(&self) -> bool {
        self.parts.iter().all(|&a| a == 1)
    }

    /// First vertex id of each part under the canonical labelling.
    pub fn part_offsets(&self) -> Vec<VertexId> {
        self.parts
            .iter()
            .scan(0, |acc, &a| {
                let start = *acc;
                *acc += a;
                Some(start)
            })
            .collect()
    }

    /// `(part index, offset within part)` for each vertex id.
    pub fn vertex_coordinates(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| (0..a).map(move |j| (i, j)))
            .collect()
    }

    /// Label `p<i>v<j>` of a vertex (part `i`, offset `j`, both from zero).
    pub fn vertex_label(&self, v: VertexId) -> String {
        let (i, j) = self.vertex_coordinates()[v];
        format!("p{i}v{j}")
    }

    /// Inverse of [`vertex_label`](Self::vertex_label).
    pub fn parse_vertex_label(&self, label: &str) -> Option<VertexId> {
        let rest = label.strip_prefix('p')?;
        let (i, j) = rest.split_once('v')?;
        let (i, j): (usize, usize) = (i.parse().ok()?, j.parse().ok()?);
        if i >= self.parts.len() || j >= self.parts[i] {
            return None;
        }
        Some(self.part_offsets()[i] + j)
    }
}

impl fmt::Display for MultipartiteSpec {
    /// Canonical text form with exponents for repeated sizes, e.g. `1^4,2,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.parts.len() {
            let size = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&a| a == size).count();
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{size}")?;
            } else {
                write!(f, "{size}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for MultipartiteSpec {
    type Err = Error;

    /// Parses `size(^exponent)?(,size(^exponent)?)*`.
    fn from_str(s: &str) -> Result<Self> {
        let number = |t: &str| -> Result<usize> {
            let t = t.trim();
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!(
                    "expected a positive integer, got {t:?}"
                )));
            }
            t.parse()
                .map_err(|_| Error::Parse(format!("number out of range: {t:?}")))
        };
        let mut parts = Vec::new();
        for item in s.split(',') {
            let (size, count) = match item.split_once('^') {
                Some((size, exp)) => (number(size)?, number(exp)?),
                None => (number(item)?, 1),
            };
            if size == 0 || count == 0 {
                return Err(Error::Parse(format!("zero in {item:?}")));
            }
            parts.extend(std::iter::repeat_n(size, count));
        }
        MultipartiteSpec::new(parts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityReason {
    Ok,
    NonIntegerT,
    DegreeExceeds2t,
    TrivialSingleVertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub n: usize,
    pub m: usize,
    /// Number of Hamilton paths `m / (n - 1)` when that is an integer.
    pub t: Option<usize>,
    pub max_degree: usize,
    pub admissible: bool,
    pub reason: AdmissibilityReason,
}

/// Decides whether `t = m/(n-1)` is an integer and `Δ ≤ 2t`.
pub fn admissibility(spec: &MultipartiteSpec) -> AdmissibilityReport {
    let n = spec.order();
    let m = spec.size();
    let max_degree = n - spec.parts()[0];
    if n == 1 {
        return AdmissibilityReport {
            n,
            m,
            t: None,
            max_degree,
            admissible: true,
            reason: AdmissibilityReason::TrivialSingleVertex,
        };
    }
    let t = m.is_multiple_of(n - 1).then(|| m / (n - 1));
    let reason = match t {
        None => AdmissibilityReason::NonIntegerT,
        Some(t) if max_degree > 2 * t => AdmissibilityReason::DegreeExceeds2t,
        Some(_) => AdmissibilityReason::Ok,
    };
    AdmissibilityReport {
        n,
        m,
        t,
        max_degree,
        admissible: reason == AdmissibilityReason::Ok,
        reason,
    }
}

/// Self-check: an admissible graph with at least two parts is complete, or
/// irregular with maximum degree exactly `2t`.
pub fn validate_max_degree_characterisation(spec: &MultipartiteSpec) -> Result<bool> {
    let report = admissibility(spec);
    if !report.admissible {
        return Err(Error::NotAdmissible(report));
    }
    if spec.is_complete_graph() {
        return Ok(true);
    }
    let regular = spec.parts().first() == spec.parts().last();
    Ok(!regular && report.t.map(|t| 2 * t) == Some(report.max_degree))
}

pub type BlockId = usize;

/// A partition of `0..n` into non-empty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<VertexId>>,
    block_of: Vec<BlockId>,
}

impl VertexPartition {
    pub fn new(vertex_count: usize, mut blocks: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; vertex_count];
        for (b, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::InternalInconsistency(format!("block {b} is empty")));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v >= vertex_count || block_of[v] != usize::MAX {
                    return Err(Error::InternalInconsistency(format!(
                        "vertex {v} is out of range or in two blocks"
                    )));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InternalInconsistency(format!(
                "vertex {v} is in no block"
            )));
        }
        Ok(VertexPartition { blocks, block_of })
    }

    pub fn singletons(vertex_count: usize) -> Self {
        VertexPartition {
            blocks: (0..vertex_count).map(|v| vec![v]).collect(),
            block_of: (0..vertex_count).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    pub fn block(&self, b: BlockId) -> &[VertexId] {
        &self.blocks[b]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, v: VertexId) -> BlockId {
        self.block_of[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }
}

/// The complete multipartite graph of `spec` and its partition into parts.
///
/// Vertices are numbered part by part; edges are numbered in lexicographic
/// order of their `(lower, higher)` endpoints.
pub fn build_graph(spec: &MultipartiteSpec) -> (MultiGraph, VertexPartition) {
    let coords = spec.vertex_coordinates();
    let n = coords.len();
    let mut g = MultiGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if coords[u].0 != coords[v].0 {
                g.add_edge(u, v);
            }
        }
    }
    (g, part_partition(spec))
}

/// The partition `{A_1, …, A_r}` of the canonical vertex set into parts.
pub fn part_partition(spec: &MultipartiteSpec) -> VertexPartition {
    let offsets = spec.part_offsets();
    let blocks = spec
        .parts()
        .iter()
        .zip(offsets)
        .map(|(&a, start)| (start..start + a).collect())
        .collect();
    VertexPartition::new(spec.order(), blocks).expect("parts partition the vertex set")
}

/// One block of the degree partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBlock {
    pub part_size: usize,
    /// Indices of the parts merged into this block.
    pub parts: Vec<usize>,
    /// Common degree `n - part_size` of the block's vertices.
    pub degree: usize,
}

impl DegreeBlock {
    pub fn vertex_count(&self) -> usize {
        self.part_size * self.parts.len()
    }
}

/// Degree blocks ordered by decreasing vertex count, then by part size.
pub fn degree_blocks(spec: &MultipartiteSpec) -> Vec<DegreeBlock> {
    let n = spec.order();
    let mut blocks: Vec<DegreeBlock> = Vec::new();
    for (i, &a) in spec.parts().iter().enumerate() {
        match blocks.last_mut() {
            Some(b) if b.part_size == a => b.parts.push(i),
            _ => blocks.push(DegreeBlock {
                part_size: a,
                parts: vec![i],
                degree: n - a,
            }),
        }
    }
    blocks.sort_by_key(|b| (std::cmp::Reverse(b.vertex_count()), b.part_size));
    blocks
}

/// Groups vertices of equal degree; block order follows [`degree_blocks`].
pub fn degree_partition(spec: &MultipartiteSpec) -> VertexPartition {
    let parts = part_partition(spec);
    let blocks = degree_blocks(spec)
        .iter()
        .map(|b| {
            b.parts
                .iter()
                .flat_map(|&p| parts.block(p).iter().copied())
                .collect()
        })
        .collect();
    VertexPartition::new(spec.order(), blocks).expect("degree blocks partition the vertex set")
}

/// A quotient multigraph together with the graph it was taken from.
///
/// Each base edge and its image share the same [`EdgeId`], so the edge
/// bijection is the identity on ids and factorisations move between the two
/// graphs unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientView {
    pub base: MultiGraph,
    pub partition: VertexPartition,
    pub quotient: MultiGraph,
}

impl QuotientView {
    pub fn to_quotient(&self, base_edge: EdgeId) -> Option<EdgeId> {
        self.quotient.contains_edge(base_edge).then_some(base_edge)
    }

    pub fn to_base(&self, quotient_edge: EdgeId) -> Option<EdgeId> {
        self.base
            .contains_edge(quotient_edge)
            .then_some(quotient_edge)
    }

    /// Image of a spanning subgraph of the base graph.
    pub fn project(&self, sub: &MultiGraph) -> MultiGraph {
        quotient_graph(sub, &self.partition)
    }
}

fn quotient_graph(g: &MultiGraph, partition: &VertexPartition) -> MultiGraph {
    MultiGraph::from_edges(
        partition.block_count(),
        g.edges().iter().map(|e| {
            let (x, y) = (partition.block_of(e.a), partition.block_of(e.b));
            crate::graph::Edge {
                id: e.id,
                a: x.min(y),
                b: x.max(y),
            }
        }),
    )
}

/// Collapses each block to a vertex; edges inside a block become loops.
pub fn quotient(g: &MultiGraph, partition: &VertexPartition) -> QuotientView {
    assert_eq!(partition.vertex_count(), g.vertex_count());
    QuotientView {
        base: g.clone(),
        partition: partition.clone(),
        quotient: quotient_graph(g, partition),
    }
}
