//! Simple k-uniform hypergraphs with vertex incidence lists.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::rng::uniform_index;
use crate::{Error, Result};

/// One broken structural invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Edge does not have exactly `k` entries.
    Arity { edge: usize, len: usize, k: usize },
    DuplicateVertex { edge: usize, vertex: usize },
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    /// Two distinct edges share more than one vertex.
    Simplicity { first: usize, second: usize, shared: Vec<usize> },
    UniformityTooSmall { k: usize },
    IncidenceMismatch { vertex: usize },
    MaxDegreeMismatch { stored: usize, actual: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Arity { edge, len, k } => {
                write!(f, "arity: edge {edge} has {len} vertices, expected {k}")
            }
            Violation::DuplicateVertex { edge, vertex } => {
                write!(f, "edge {edge} has duplicate vertex {vertex}")
            }
            Violation::VertexOutOfRange { edge, vertex, n } => {
                write!(f, "edge {edge} has vertex {vertex} outside [0, {n})")
            }
            Violation::Simplicity { first, second, shared } => {
                write!(f, "simplicity: edges {first},{second} share {{")?;
                for (i, v) in shared.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
            Violation::UniformityTooSmall { k } => write!(f, "uniformity k = {k} is below 2"),
            Violation::IncidenceMismatch { vertex } => {
                write!(f, "incidence list of vertex {vertex} disagrees with the edges")
            }
            Violation::MaxDegreeMismatch { stored, actual } => {
                write!(f, "stored max degree {stored} but actual is {actual}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks a raw edge list against every hypergraph invariant and reports
/// all violations found.
pub fn validate(n: usize, k: usize, edges: &[Vec<usize>]) -> ValidationReport {
    let mut violations = Vec::new();
    if k < 2 {
        violations.push(Violation::UniformityTooSmall { k });
    }
    // Only well-formed edges take part in the simplicity check.
    let mut well_formed = vec![true; edges.len()];
    for (id, edge) in edges.iter().enumerate() {
        if edge.len() != k {
            violations.push(Violation::Arity { edge: id, len: edge.len(), k });
            well_formed[id] = false;
        }
        let mut seen = BTreeSet::new();
        for &v in edge {
            if v >= n {
                violations.push(Violation::VertexOutOfRange { edge: id, vertex: v, n });
                well_formed[id] = false;
            }
            if !seen.insert(v) {
                violations.push(Violation::DuplicateVertex { edge: id, vertex: v });
                well_formed[id] = false;
            }
        }
    }

    // Two edges sharing two vertices share a vertex pair.
    let mut pair_owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut reported: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (id, edge) in edges.iter().enumerate() {
        if !well_formed[id] {
            continue;
        }
        for (a, &u) in edge.iter().enumerate() {
            for &w in &edge[a + 1..] {
                let key = (u.min(w), u.max(w));
                match pair_owner.get(&key) {
                    Some(&first) => {
                        if reported.insert((first, id)) {
                            let shared = intersection(&edges[first], edge);
                            violations.push(Violation::Simplicity { first, second: id, shared });
                        }
                    }
                    None => {
                        pair_owner.insert(key, id);
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}

fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut shared: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
    shared.sort_unstable();
    shared
}

/// A simple k-uniform hypergraph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
    max_degree: usize,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting any edge list that breaks an invariant.
    /// Vertices inside each edge are stored in ascending order.
    pub fn new(n: usize, k: usize, mut edges: Vec<Vec<usize>>) -> Result<Self> {
        let report = validate(n, k, &edges);
        if !report.is_ok() {
            return Err(Error::InvalidHypergraph(report));
        }
        for edge in &mut edges {
            edge.sort_unstable();
        }
        let mut incidence = vec![Vec::new(); n];
        for (id, edge) in edges.iter().enumerate() {
            for &v in edge {
                incidence[v].push(id);
            }
        }
        let max_degree = incidence.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Hypergraph { n, k, edges, incidence, max_degree })
    }

    /// Hypergraph on `n` vertices with no edges.
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, Vec::new())
    }

    /// `d` edges through vertex 0 that are otherwise pairwise disjoint.
    pub fn sunflower(d: usize, k: usize) -> Result<Self> {
        if d < 1 || k < 2 {
            return Err(Error::InvalidParameter("sunflower needs d >= 1 and k >= 2"));
        }
        let n = 1 + d * (k - 1);
        let edges = (0..d)
            .map(|petal| {
                let start = 1 + petal * (k - 1);
                core::iter::once(0).chain(start..start + k - 1).collect()
            })
            .collect();
        Self::new(n, k, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &[usize] {
        &self.edges[id]
    }

    /// Ids of the edges containing `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Re-checks every invariant, including incidence consistency and the
    /// cached maximum degree.
    pub fn validate(&self) -> ValidationReport {
        let mut report = validate(self.n, self.k, &self.edges);
        for v in 0..self.n {
            let expected: Vec<usize> = (0..self.edges.len())
                .filter(|&id| self.edges[id].contains(&v))
                .collect();
            if expected != self.incidence[v] {
                report.violations.push(Violation::IncidenceMismatch { vertex: v });
            }
        }
        let actual = self.incidence.iter().map(Vec::len).max().unwrap_or(0);
        if actual != self.max_degree {
            report
                .violations
                .push(Violation::MaxDegreeMismatch { stored: self.max_degree, actual });
        }
        report
    }

    /// The set of edges meeting some edge through `v`, as ascending ids.
    /// Includes the edges through `v` themselves.
    pub fn neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut set = BTreeSet::new();
        for &e in &self.incidence[v] {
            for &w in &self.edges[e] {
                set.extend(self.incidence[w].iter().copied());
            }
        }
        Ok(set.into_iter().collect())
    }

    /// Number of other edges sharing a vertex with edge `id`.
    pub fn edge_dependency_degree(&self, id: usize) -> usize {
        let mut set = BTreeSet::new();
        for &w in &self.edges[id] {
            set.extend(self.incidence[w].iter().copied());
        }
        set.remove(&id);
        set.len()
    }
}

/// How many edges the random generator tries to place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeTarget {
    /// Keep adding edges until the rejection cap is hit. Never fails.
    Saturate,
    /// Stop at exactly this many edges; failing to get there is an error.
    Exact(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub k: usize,
    pub max_degree: usize,
    pub target: EdgeTarget,
    /// Consecutive rejections before giving up. `None` means 1000 per
    /// target edge (the saturation target is the degree bound `n*max_degree/k`).
    pub rejection_cap: Option<usize>,
}

impl GeneratorConfig {
    pub fn new(n: usize, k: usize, max_degree: usize) -> Self {
        GeneratorConfig { n, k, max_degree, target: EdgeTarget::Saturate, rejection_cap: None }
    }

    fn edge_goal(&self) -> usize {
        match self.target {
            EdgeTarget::Saturate => self.n * self.max_degree / self.k,
            EdgeTarget::Exact(m) => m,
        }
    }
}

/// Rejection sampler for simple k-uniform hypergraphs with bounded degree.
///
/// Draws uniform k-subsets and keeps one iff it meets every accepted edge in
/// at most one vertex and no vertex would exceed the degree bound.
pub fn generate_random_simple<R: RngCore + ?Sized>(
    config: &GeneratorConfig,
    rng: &mut R,
) -> Result<Hypergraph> {
    let GeneratorConfig { n, k, max_degree, .. } = *config;
    if k < 2 || n < k || max_degree < 1 {
        return Err(Error::InvalidParameter("generator needs n >= k >= 2 and max degree >= 1"));
    }
    let goal = config.edge_goal();
    let cap = config.rejection_cap.unwrap_or(1000 * goal.max(1));

    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut degree = vec![0usize; n];
    let mut used_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut rejections = 0usize;
    let mut candidate = Vec::with_capacity(k);

    while edges.len() < goal {
        if rejections >= cap {
            return match config.target {
                EdgeTarget::Saturate => Hypergraph::new(n, k, edges),
                EdgeTarget::Exact(target) => {
                    Err(Error::UnreachableTarget { accepted: edges.len(), target, rejections })
                }
            };
        }
        random_subset(n, k, rng, &mut candidate);
        let fits = candidate.iter().all(|&v| degree[v] < max_degree)
            && pairs(&candidate).all(|p| !used_pairs.contains(&p));
        if !fits {
            rejections += 1;
            continue;
        }
        rejections = 0;
        for &v in &candidate {
            degree[v] += 1;
        }
        used_pairs.extend(pairs(&candidate));
        edges.push(candidate.clone());
    }
    Hypergraph::new(n, k, edges)
}

fn pairs(edge: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    edge.iter()
        .enumerate()
        .flat_map(move |(a, &u)| edge[a + 1..].iter().map(move |&w| (u.min(w), u.max(w))))
}

/// Floyd's algorithm; `out` ends up sorted.
fn random_subset<R: RngCore + ?Sized>(n: usize, k: usize, rng: &mut R, out: &mut Vec<usize>) {
    out.clear();
    for j in n - k..n {
        let t = uniform_index(rng, j + 1);
        if out.contains(&t) {
            out.push(j);
        } else {
            out.push(t);
        }
    }
    out.sort_unstable();
}
