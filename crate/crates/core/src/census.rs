//! Enumeration of part specifications and admissibility counts.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::factorize::{find_star, StarCase};
use crate::multipartite::{
    admissibility, build_graph, degree_partition, quotient, MultipartiteSpec,
};

/// Integer partitions of `n`, largest parts first, starting from `[n]` and
/// ending at `[1; n]`. Each is yielded in descending order.
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        Partitions {
            current: (n > 0).then(|| vec![n]),
        }
    }
}

impl Iterator for Partitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut ones = 0;
        while next.last() == Some(&1) {
            next.pop();
            ones += 1;
        }
        if let Some(last) = next.last_mut() {
            *last -= 1;
            let cap = *last;
            let mut rest = ones + 1;
            while rest > 0 {
                let piece = rest.min(cap);
                next.push(piece);
                rest -= piece;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Every spec of order `1..=max_order` with at least `min_parts` parts, by
/// order and then in partition-generation order within an order.
pub fn enumerate_specs(
    max_order: usize,
    min_parts: usize,
) -> impl Iterator<Item = MultipartiteSpec> {
    (1..=max_order).flat_map(move |n| {
        Partitions::new(n)
            .filter(move |p| p.len() >= min_parts)
            .map(|p| MultipartiteSpec::new(p).expect("partitions have positive parts"))
    })
}

fn admissible_per_order(
    orders: impl Iterator<Item = usize>,
    min_parts: usize,
) -> BTreeMap<usize, usize> {
    orders
        .map(|n| {
            let count = Partitions::new(n)
                .filter(|p| p.len() >= min_parts)
                .filter(|p| admissibility(&MultipartiteSpec::new(p.clone()).unwrap()).admissible)
                .count();
            (n, count)
        })
        .collect()
}

fn cumulative(per_order: BTreeMap<usize, usize>) -> BTreeMap<usize, usize> {
    let mut total = 0;
    per_order
        .into_iter()
        .map(|(n, c)| {
            total += c;
            (n, total)
        })
        .collect()
}

/// For each threshold `1..=max_order`, the number of admissible specs with at
/// least two parts and order at most the threshold.
pub fn count_admissible(max_order: usize) -> BTreeMap<usize, usize> {
    count_admissible_with(max_order, 2, 1)
}

/// Cumulative admissible counts over specs with at least `min_parts` parts,
/// tallied on `jobs` threads.
pub fn count_admissible_with(
    max_order: usize,
    min_parts: usize,
    jobs: usize,
) -> BTreeMap<usize, usize> {
    let jobs = jobs.max(1);
    if jobs == 1 {
        return cumulative(admissible_per_order(1..=max_order, min_parts));
    }
    let per_order = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                scope.spawn(move || {
                    admissible_per_order((1..=max_order).filter(move |n| n % jobs == j), min_parts)
                })
            })
            .collect();
        let mut merged = BTreeMap::new();
        for h in handles {
            merged.extend(h.join().expect("census worker panicked"));
        }
        merged
    });
    cumulative(per_order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub order: usize,
    pub spec: MultipartiteSpec,
    pub admissible: bool,
    pub t: Option<usize>,
    pub max_degree: usize,
    /// Kind of star certificate, for admissible specs with at least two parts.
    pub star_case: Option<StarCase>,
}

/// Classifies one spec, searching for a star certificate when admissible.
pub fn census_row(spec: &MultipartiteSpec) -> Result<CensusRow> {
    let report = admissibility(spec);
    let star_case = match report.t {
        Some(t) if report.admissible && spec.part_count() >= 2 => {
            let (k, _) = build_graph(spec);
            let q = quotient(&k, &degree_partition(spec));
            Some(find_star(&q, 2 * t)?.case())
        }
        _ => None,
    };
    Ok(CensusRow {
        order: report.n,
        spec: spec.clone(),
        admissible: report.admissible,
        t: report.t,
        max_degree: report.max_degree,
        star_case,
    })
}

/// Cumulative counts as written by the command-line census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub max_order: usize,
    pub min_parts: usize,
    pub cumulative: BTreeMap<usize, usize>,
}
