//! Decomposition checking and an exhaustive search oracle.
//!
//! Both work from the part sizes alone and share nothing with the
//! construction in [`crate::pipeline`].

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multipartite::MultipartiteSpec;
use crate::pipeline::Decomposition;

/// Default largest order the oracle accepts.
pub const DEFAULT_ORACLE_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FailureReason {
    NotSpanning,
    RepeatedVertex,
    NonEdge,
    DuplicateEdgeAcrossPaths,
    EdgeCountMismatch,
    WrongPathCount,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Failure {
    /// Offending path, or `None` for whole-decomposition failures.
    pub path: Option<usize>,
    pub reason: FailureReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub failures: Vec<Failure>,
}

fn part_of(spec: &MultipartiteSpec) -> Vec<usize> {
    spec.parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| std::iter::repeat_n(i, a))
        .collect()
}

/// Checks that `d` consists of exactly `m/(n-1)` Hamilton paths of the
/// complete multipartite graph whose edge sets partition its edges.
pub fn verify_decomposition(spec: &MultipartiteSpec, d: &Decomposition) -> VerificationReport {
    let part = part_of(spec);
    let n = part.len();
    let m: usize = {
        let sum: usize = spec.parts().iter().sum();
        let sq: usize = spec.parts().iter().map(|a| a * a).sum();
        (sum * sum - sq) / 2
    };
    let mut failures = Vec::new();
    let mut fail = |path, reason| failures.push(Failure { path, reason });

    let expected = if n == 1 {
        Some(0)
    } else {
        m.is_multiple_of(n - 1).then(|| m / (n - 1))
    };
    if expected != Some(d.len()) {
        fail(None, FailureReason::WrongPathCount);
    }

    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut duplicate = false;
    for (i, path) in d.paths().iter().enumerate() {
        let mut seen = vec![false; n];
        let mut repeated = false;
        for &v in path {
            if v < n {
                repeated |= std::mem::replace(&mut seen[v], true);
            }
        }
        if repeated {
            fail(Some(i), FailureReason::RepeatedVertex);
        }
        if path.len() != n || seen.iter().any(|s| !s) {
            fail(Some(i), FailureReason::NotSpanning);
        }
        let mut non_edge = false;
        for w in path.windows(2) {
            let (u, v) = (w[0].min(w[1]), w[0].max(w[1]));
            if v >= n || part[u] == part[v] {
                non_edge = true;
            } else if !used.insert((u, v)) {
                duplicate = true;
            }
        }
        if non_edge {
            fail(Some(i), FailureReason::NonEdge);
        }
    }
    if duplicate {
        fail(None, FailureReason::DuplicateEdgeAcrossPaths);
    }
    if used.len() != m {
        fail(None, FailureReason::EdgeCountMismatch);
    }
    VerificationReport {
        valid: failures.is_empty(),
        failures,
    }
}

/// Result of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Found(Decomposition),
    /// The whole search space was explored without success.
    Exhausted,
    /// The node limit was hit first; existence is unknown.
    LimitReached,
}

impl OracleOutcome {
    pub fn found(&self) -> Option<&Decomposition> {
        match self {
            OracleOutcome::Found(d) => Some(d),
            _ => None,
        }
    }
}

/// [`brute_force_decompose_bounded`] with [`DEFAULT_ORACLE_BOUND`].
pub fn brute_force_decompose(spec: &MultipartiteSpec, limit: Option<u64>) -> Result<OracleOutcome> {
    brute_force_decompose_bounded(spec, limit, DEFAULT_ORACLE_BOUND)
}

/// Backtracking search for a Hamilton path decomposition.
///
/// Each new path is required to contain the lowest remaining edge, in the
/// orientation where its lower end comes first, and is grown to the right
/// before the left, so every decomposition is reached through one sequence
/// of paths. Remaining degrees are pruned against the number of paths left.
pub fn brute_force_decompose_bounded(
    spec: &MultipartiteSpec,
    limit: Option<u64>,
    bound: usize,
) -> Result<OracleOutcome> {
    let part = part_of(spec);
    let n = part.len();
    if n > bound {
        return Err(Error::OrderTooLarge { order: n, bound });
    }
    if n == 1 {
        return Ok(OracleOutcome::Found(Decomposition::default()));
    }
    let mut adj = vec![vec![false; n]; n];
    let mut m = 0;
    for u in 0..n {
        for v in 0..n {
            if part[u] != part[v] {
                adj[u][v] = true;
                m += usize::from(u < v);
            }
        }
    }
    if m % (n - 1) != 0 {
        return Ok(OracleOutcome::Exhausted);
    }
    let mut search = Search {
        n,
        adj,
        rem: (0..n)
            .map(|v| (0..n).filter(|&w| part[v] != part[w]).count())
            .collect(),
        paths: Vec::new(),
        t: m / (n - 1),
        nodes: 0,
        limit,
        limited: false,
    };
    Ok(if search.next_path() {
        OracleOutcome::Found(Decomposition::from_paths(search.paths).canonical())
    } else if search.limited {
        OracleOutcome::LimitReached
    } else {
        OracleOutcome::Exhausted
    })
}

struct Search {
    n: usize,
    adj: Vec<Vec<bool>>,
    rem: Vec<usize>,
    paths: Vec<Vec<usize>>,
    t: usize,
    nodes: u64,
    limit: Option<u64>,
    limited: bool,
}

/// Where a vertex stands in the path being built.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Unvisited,
    End,
    Interior,
}

struct Partial {
    seq: std::collections::VecDeque<usize>,
    role: Vec<Role>,
}

impl Search {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            self.limited = true;
        }
        !self.limited
    }

    fn link(&mut self, u: usize, v: usize, on: bool) {
        self.adj[u][v] = !on;
        self.adj[v][u] = !on;
        if on {
            self.rem[u] -= 1;
            self.rem[v] -= 1;
        } else {
            self.rem[u] += 1;
            self.rem[v] += 1;
        }
    }

    /// Can every vertex still end with between `after` and `2·after`
    /// remaining edges once the current path is complete?
    fn feasible(&self, partial: &Partial, after: usize) -> bool {
        (0..self.n).all(|v| {
            let (lo_use, hi_use) = match partial.role[v] {
                Role::Interior => (0, 0),
                Role::End => (0, 1),
                Role::Unvisited => (1, 2),
            };
            self.rem[v] >= after + lo_use && self.rem[v] <= 2 * after + hi_use
        })
    }

    fn next_path(&mut self) -> bool {
        let left = self.t - self.paths.len();
        if left == 0 {
            return self.rem.iter().all(|&r| r == 0);
        }
        if self.rem.iter().any(|&r| r < left || r > 2 * left) {
            return false;
        }
        let Some((u0, v0)) = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .find(|&(u, v)| self.adj[u][v])
        else {
            return false;
        };
        let mut role = vec![Role::Unvisited; self.n];
        role[u0] = Role::End;
        role[v0] = Role::End;
        let mut partial = Partial {
            seq: [u0, v0].into_iter().collect(),
            role,
        };
        self.link(u0, v0, true);
        let ok = self.grow(&mut partial, true, left - 1);
        self.link(u0, v0, false);
        ok
    }

    fn grow(&mut self, partial: &mut Partial, right: bool, after: usize) -> bool {
        if !self.tick() || !self.feasible(partial, after) {
            return false;
        }
        if partial.seq.len() == self.n {
            self.paths.push(partial.seq.iter().copied().collect());
            if self.next_path() {
                return true;
            }
            self.paths.pop();
            return false;
        }
        let end = if right {
            *partial.seq.back().unwrap()
        } else {
            *partial.seq.front().unwrap()
        };
        for w in 0..self.n {
            if partial.role[w] != Role::Unvisited || !self.adj[end][w] {
                continue;
            }
            let interior = partial.seq.len() > 1;
            if interior {
                partial.role[end] = Role::Interior;
            }
            partial.role[w] = Role::End;
            if right {
                partial.seq.push_back(w);
            } else {
                partial.seq.push_front(w);
            }
            self.link(end, w, true);
            let ok = self.grow(partial, right, after);
            self.link(end, w, false);
            if right {
                partial.seq.pop_back();
            } else {
                partial.seq.pop_front();
            }
            partial.role[w] = Role::Unvisited;
            partial.role[end] = Role::End;
            if ok {
                return true;
            }
            if self.limited {
                return false;
            }
        }
        // Stop growing right and continue from the left end.
        right && self.grow(partial, false, after)
    }
}
