//! Alternating-current networks and their Laplace matrices.
//!
//! Nodes `0..b` are boundary nodes and `b..b+n` interior nodes. The Laplace
//! matrix has `-c_uv` off the diagonal and the diagonal chosen so that every
//! row sums to zero.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub conductance: Complex64,
}

impl Edge {
    pub fn new(u: usize, v: usize, conductance: Complex64) -> Self {
        Self { u, v, conductance }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub boundary_count: usize,
    pub interior_count: usize,
    pub edges: Vec<Edge>,
}

impl Network {
    pub fn new(boundary_count: usize, interior_count: usize, edges: Vec<Edge>) -> Self {
        Self {
            boundary_count,
            interior_count,
            edges,
        }
    }

    /// Builds a network after merging parallel edges into one conductance.
    ///
    /// Endpoints are normalized to `u <= v`; merged edges keep the position of
    /// the first occurrence.
    pub fn with_parallel_edges_summed(
        boundary_count: usize,
        interior_count: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        let mut merged: Vec<Edge> = Vec::new();
        let mut slot: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in edges {
            let key = (e.u.min(e.v), e.u.max(e.v));
            match slot.get(&key) {
                Some(&i) => merged[i].conductance += e.conductance,
                None => {
                    slot.insert(key, merged.len());
                    merged.push(Edge::new(key.0, key.1, e.conductance));
                }
            }
        }
        Self::new(boundary_count, interior_count, merged)
    }

    /// Two boundary nodes joined by one edge.
    pub fn single_edge(conductance: Complex64) -> Self {
        Self::new(2, 0, vec![Edge::new(0, 1, conductance)])
    }

    pub fn node_count(&self) -> usize {
        self.boundary_count + self.interior_count
    }

    /// Edges sorted by normalized endpoints `(min, max)`.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(e.u.min(e.v), e.u.max(e.v), e.conductance))
            .collect();
        edges.sort_by_key(|e| (e.u, e.v));
        edges
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    TooFewBoundaryNodes { boundary_count: usize },
    IndexOutOfRange { edge: usize, node: usize },
    Loop { edge: usize, node: usize },
    NonFinite { edge: usize },
    ZeroConductance { edge: usize },
    NonPositiveRealPart { edge: usize, real_part: f64 },
    DuplicateEdge { u: usize, v: usize },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewBoundaryNodes { boundary_count } => {
                write!(f, "too few boundary nodes ({boundary_count} < 2)")
            }
            Violation::IndexOutOfRange { edge, node } => {
                write!(f, "edge {edge}: node index {node} out of range")
            }
            Violation::Loop { edge, node } => write!(f, "edge {edge}: loop at node {node}"),
            Violation::NonFinite { edge } => write!(f, "edge {edge}: non-finite conductance"),
            Violation::ZeroConductance { edge } => write!(f, "edge {edge}: zero conductance"),
            Violation::NonPositiveRealPart { edge, real_part } => {
                write!(f, "edge {edge}: nonpositive real part ({real_part})")
            }
            Violation::DuplicateEdge { u, v } => write!(f, "duplicate edge between {u} and {v}"),
            Violation::Disconnected { components } => {
                write!(f, "disconnected ({components} components)")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Union-find with path halving.
struct DisjointSets {
    parent: Vec<usize>,
    components: usize,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.components -= 1;
        }
    }
}

/// Number of connected components over the in-range edges.
pub fn component_count(node_count: usize, edges: &[Edge]) -> usize {
    let mut sets = DisjointSets::new(node_count);
    for e in edges {
        if e.u < node_count && e.v < node_count {
            sets.union(e.u, e.v);
        }
    }
    sets.components
}

pub fn validate_network(net: &Network) -> ValidationReport {
    let mut violations = Vec::new();
    let nodes = net.node_count();
    if net.boundary_count < 2 {
        violations.push(Violation::TooFewBoundaryNodes {
            boundary_count: net.boundary_count,
        });
    }
    let mut seen = BTreeMap::new();
    for (i, e) in net.edges.iter().enumerate() {
        for node in [e.u, e.v] {
            if node >= nodes {
                violations.push(Violation::IndexOutOfRange { edge: i, node });
            }
        }
        if e.u == e.v {
            violations.push(Violation::Loop { edge: i, node: e.u });
        }
        let c = e.conductance;
        if !(c.re.is_finite() && c.im.is_finite()) {
            violations.push(Violation::NonFinite { edge: i });
        } else if c.re == 0.0 && c.im == 0.0 {
            violations.push(Violation::ZeroConductance { edge: i });
        } else if c.re <= 0.0 {
            violations.push(Violation::NonPositiveRealPart {
                edge: i,
                real_part: c.re,
            });
        }
        let key = (e.u.min(e.v), e.u.max(e.v));
        if seen.insert(key, i).is_some() {
            violations.push(Violation::DuplicateEdge { u: key.0, v: key.1 });
        }
    }
    if nodes > 0 {
        let components = component_count(nodes, &net.edges);
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }
    }
    ValidationReport { violations }
}

/// The Laplace matrix split into boundary and interior blocks,
/// `L = [[A, B], [Bᵀ, C]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceBlocks {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
}

impl LaplaceBlocks {
    pub fn boundary_count(&self) -> usize {
        self.a.rows()
    }

    pub fn interior_count(&self) -> usize {
        self.c.rows()
    }

    pub fn assembled(&self) -> ComplexMatrix {
        let nb = self.boundary_count();
        let size = nb + self.interior_count();
        ComplexMatrix::from_fn(size, size, |i, j| match (i < nb, j < nb) {
            (true, true) => self.a[(i, j)],
            (true, false) => self.b[(i, j - nb)],
            (false, true) => self.b[(j, i - nb)],
            (false, false) => self.c[(i - nb, j - nb)],
        })
    }

    pub fn split(l: &ComplexMatrix, boundary_count: usize) -> Result<Self> {
        if !l.is_square() || boundary_count > l.rows() {
            return Err(Error::Shape(format!(
                "cannot split a {}x{} matrix with {boundary_count} boundary nodes",
                l.rows(),
                l.cols()
            )));
        }
        let n = l.rows() - boundary_count;
        Ok(Self {
            a: l.block(0, 0, boundary_count, boundary_count),
            b: l.block(0, boundary_count, boundary_count, n),
            c: l.block(boundary_count, boundary_count, n, n),
        })
    }
}

pub fn build_laplace(net: &Network) -> Result<LaplaceBlocks> {
    let report = validate_network(net);
    if !report.is_valid() {
        return Err(Error::InvalidNetwork(report));
    }
    let size = net.node_count();
    let mut l = ComplexMatrix::zeros(size, size);
    for e in &net.edges {
        let c = e.conductance;
        l[(e.u, e.v)] -= c;
        l[(e.v, e.u)] -= c;
        l[(e.u, e.u)] += c;
        l[(e.v, e.v)] += c;
    }
    LaplaceBlocks::split(&l, net.boundary_count)
}

/// Reads the network off a Laplace matrix: one edge `c_uv = -L_uv` per
/// off-diagonal entry that is not a structural zero.
pub fn network_from_laplace(
    l: &ComplexMatrix,
    boundary_count: usize,
    tol: &Tolerances,
) -> Result<Network> {
    if !l.is_square() || boundary_count > l.rows() {
        return Err(Error::Shape(format!(
            "{}x{} matrix with {boundary_count} boundary nodes",
            l.rows(),
            l.cols()
        )));
    }
    l.check_finite()?;
    let size = l.rows();
    let scale = l.max_abs();
    let slack = tol.laplace * (1.0 + scale);

    let asym = l.asymmetry();
    if asym > slack {
        return Err(Error::NotLaplace(format!(
            "not symmetric (residual {asym:e})"
        )));
    }
    for (i, s) in l.row_sums().into_iter().enumerate() {
        if s.norm() > slack {
            return Err(Error::NotLaplace(format!(
                "row {i} sums to {s} (threshold {slack:e})"
            )));
        }
    }

    let zero = tol.structural_zero * scale;
    let mut edges = Vec::new();
    for u in 0..size {
        for v in u + 1..size {
            let entry = l[(u, v)];
            if entry.norm() <= zero {
                continue;
            }
            if entry.re > -zero {
                return Err(Error::NotLaplace(format!(
                    "off-diagonal entry ({u}, {v}) = {entry} has nonnegative real part"
                )));
            }
            edges.push(Edge::new(u, v, -entry));
        }
    }

    let components = component_count(size, &edges);
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(Network::new(boundary_count, size - boundary_count, edges))
}
