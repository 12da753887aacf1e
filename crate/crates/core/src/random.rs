//! Random test instances: connected networks and star networks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::network::{component_count, Edge, Network};

const MAX_ATTEMPTS: usize = 1000;

/// Erdős–Rényi edges with probability `edge_probability`, redrawn until the
/// graph is connected. Conductances have real part uniform in `[0.1, 10]`
/// and imaginary part uniform in `[-10, 10]`.
pub fn random_connected_network<R: Rng>(
    rng: &mut R,
    boundary_count: usize,
    interior_count: usize,
    edge_probability: f64,
) -> Result<Network> {
    let nodes = boundary_count + interior_count;
    for _ in 0..MAX_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..nodes {
            for v in u + 1..nodes {
                if rng.gen_bool(edge_probability) {
                    let c = Complex64::new(rng.gen_range(0.1..=10.0), rng.gen_range(-10.0..=10.0));
                    edges.push(Edge::new(u, v, c));
                }
            }
        }
        if component_count(nodes, &edges) == 1 {
            return Ok(Network::new(boundary_count, interior_count, edges));
        }
    }
    Err(Error::Generator(format!(
        "no connected graph on {nodes} nodes with p = {edge_probability} after {MAX_ATTEMPTS} draws"
    )))
}

/// A random valid network with between 2 and `max_nodes` nodes, at least two
/// of them boundary nodes, deterministic in `seed`.
pub fn random_network(seed: u64, max_nodes: usize) -> Result<Network> {
    if max_nodes < 2 {
        return Err(Error::Generator(format!("max_nodes = {max_nodes} < 2")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = rng.gen_range(2..=max_nodes);
    let boundary = rng.gen_range(2..=nodes);
    let p = rng.gen_range(0.3..0.9);
    random_connected_network(&mut rng, boundary, nodes - boundary, p)
}

/// Boundary nodes `0..b` each joined to a single interior node `b` with
/// conductance `delta + i w_u`.
pub fn star_network(delta: f64, w: &[f64]) -> Network {
    let b = w.len();
    let edges = w
        .iter()
        .enumerate()
        .map(|(u, &wu)| Edge::new(u, b, Complex64::new(delta, wu)))
        .collect();
    Network::new(b, 1, edges)
}
