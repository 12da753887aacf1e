//! Forward direction: boundary voltages to boundary currents.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::network::{build_laplace, Network};
use crate::numerics::{schur_complement, solve_complex, ComplexMatrix, Tolerances};
use crate::parallel::{map_indices, Execution};

/// Boundary voltages together with the currents they drive into the network.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    pub voltages: Vec<Complex64>,
    pub currents: Vec<Complex64>,
}

/// Extends boundary voltages to every node by enforcing the equilibrium
/// condition at each interior node (interior part solves `C·x = -Bᵀ·v`).
pub fn solve_network(net: &Network, boundary_voltages: &[Complex64]) -> Result<Vec<Complex64>> {
    let blocks = build_laplace(net)?;
    let nb = net.boundary_count;
    if boundary_voltages.len() != nb {
        return Err(Error::Shape(format!(
            "{} boundary voltages supplied for {nb} boundary nodes",
            boundary_voltages.len()
        )));
    }
    let mut full = boundary_voltages.to_vec();
    if net.interior_count == 0 {
        return Ok(full);
    }
    let v = ComplexMatrix::column(boundary_voltages);
    let rhs = blocks
        .b
        .transpose()
        .matmul(&v)?
        .scale(Complex64::new(-1.0, 0.0));
    let interior = solve_complex(&blocks.c, &rhs, &Tolerances::default()).map_err(|e| match e {
        Error::Singular { pivot, .. } => Error::DegenerateInterior { pivot },
        other => other,
    })?;
    full.extend(interior.as_slice());
    Ok(full)
}

/// `I_u = Σ c_uw (V_u - V_w)` at every boundary node, summed over edges.
pub fn boundary_currents(net: &Network, full_voltages: &[Complex64]) -> Result<Vec<Complex64>> {
    if full_voltages.len() != net.node_count() {
        return Err(Error::Shape(format!(
            "{} voltages supplied for {} nodes",
            full_voltages.len(),
            net.node_count()
        )));
    }
    let nb = net.boundary_count;
    let mut currents = vec![Complex64::new(0.0, 0.0); nb];
    for e in &net.edges {
        let flow = e.conductance * (full_voltages[e.u] - full_voltages[e.v]);
        if e.u < nb {
            currents[e.u] += flow;
        }
        if e.v < nb {
            currents[e.v] -= flow;
        }
    }
    Ok(currents)
}

/// Solve the network for `boundary_voltages` and measure the boundary currents.
pub fn boundary_response(net: &Network, boundary_voltages: &[Complex64]) -> Result<BoundaryData> {
    let full = solve_network(net, boundary_voltages)?;
    Ok(BoundaryData {
        voltages: boundary_voltages.to_vec(),
        currents: boundary_currents(net, &full)?,
    })
}

/// The response matrix by Kron reduction: `L` itself without interior nodes,
/// otherwise the Schur complement `A - B C⁻¹ Bᵀ`.
pub fn response_matrix(net: &Network) -> Result<ComplexMatrix> {
    let blocks = build_laplace(net)?;
    if net.interior_count == 0 {
        return Ok(blocks.a);
    }
    schur_complement(&blocks.a, &blocks.b, &blocks.c, &Tolerances::default()).map_err(|e| match e {
        Error::Singular { pivot, .. } => Error::DegenerateInterior { pivot },
        other => other,
    })
}

/// The response matrix assembled column by column from unit-voltage
/// experiments, never forming the Schur complement.
pub fn response_matrix_oracle(net: &Network) -> Result<ComplexMatrix> {
    response_matrix_oracle_with(net, Execution::default())
}

pub fn response_matrix_oracle_with(net: &Network, exec: Execution) -> Result<ComplexMatrix> {
    let nb = net.boundary_count;
    // fail fast on an invalid network instead of once per column
    build_laplace(net)?;
    let columns = map_indices(nb, exec, |u| {
        let mut v = vec![Complex64::new(0.0, 0.0); nb];
        v[u] = Complex64::new(1.0, 0.0);
        boundary_response(net, &v).map(|d| d.currents)
    });
    let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ComplexMatrix::from_fn(nb, nb, |i, j| columns[j][i]))
}
