//! Inverse direction: build a network whose response matrix is a given
//! admissible `Λ = S + Ti`.
//!
//! For `b ≥ 3` the real part is shifted to `S' = S - λ₂ I + λ₂ 𝟙/b`, which is
//! positive semidefinite with a double zero eigenvalue, and factored as
//! `S' = W Wᵀ` with `b - 2` columns orthogonal to the all-ones vector. Each
//! column becomes one interior node joined to every boundary node by an edge
//! of conductance `δ - i ε W_uk`, and boundary nodes are joined pairwise by
//! edges with real part `λ₂ / 2b`. The imaginary parts of the boundary edges
//! (`F`) absorb every imaginary cross term, so the response reproduces `T`.

use num_complex::Complex64;

use crate::characterize::ResponseMatrix;
use crate::error::{Error, Result};
use crate::network::{network_from_laplace, validate_network, Network, Violation};
use crate::numerics::{ComplexMatrix, RealMatrix, Tolerances};
use crate::response::response_matrix;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SynthesisOptions {
    /// Omit interior nodes whose shifted eigenvalue `λ_k - λ₂` is numerically zero.
    pub minimize_interior: bool,
}

/// Intermediate quantities of the construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisPlan {
    pub b: usize,
    pub n: usize,
    pub lambda2: f64,
    /// `b×n`, `W Wᵀ = S'` and `Wᵀ e = 0`.
    pub w: RealMatrix,
    /// `λ₂ / 2n`; zero when `n = 0`.
    pub delta: f64,
    /// `√(b δ)`.
    pub epsilon: f64,
    /// Imaginary parts of the boundary block.
    pub f: RealMatrix,
    pub s_prime: RealMatrix,
}

pub fn build_plan(
    rm: &ResponseMatrix,
    options: SynthesisOptions,
    tol: &Tolerances,
) -> Result<SynthesisPlan> {
    let b = rm.size();
    if b < 3 {
        return Err(Error::Shape(format!(
            "the interior-node construction needs b >= 3, got {b}"
        )));
    }
    let spectral = rm.spectral();
    let ev = &spectral.eigenvalues;
    let u = &spectral.eigenvectors;
    let lambda2 = ev[1];
    let lambda_max = spectral.max_eigenvalue();
    let slack = tol.relative * lambda_max.max(1.0);

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(b - 2);
    for k in 2..b {
        let gap = ev[k] - lambda2;
        if gap < -slack {
            return Err(Error::Consistency(format!(
                "eigenvalue {k} ({}) is below λ₂ ({lambda2})",
                ev[k]
            )));
        }
        let gap = gap.max(0.0);
        if options.minimize_interior && gap <= tol.drop * lambda_max {
            continue;
        }
        let scale = gap.sqrt();
        let mut col: Vec<f64> = (0..b).map(|i| scale * u[(i, k)]).collect();
        // the eigenvector is orthogonal to the constants up to rounding; make it exact
        let mean = col.iter().sum::<f64>() / b as f64;
        col.iter_mut().for_each(|x| *x -= mean);
        columns.push(col);
    }

    let n = columns.len();
    let w = RealMatrix::from_fn(b, n, |i, k| columns[k][i]);
    let bf = b as f64;
    let s_prime = RealMatrix::from_fn(b, b, |i, j| {
        let shift = if i == j { lambda2 } else { 0.0 };
        rm.real_part()[(i, j)] - shift + lambda2 / bf
    });

    let (delta, epsilon) = if n == 0 {
        (0.0, 0.0)
    } else {
        let delta = lambda2 / (2.0 * n as f64);
        (delta, (bf * delta).sqrt())
    };
    let w_row_sums: Vec<f64> = (0..b).map(|i| w.row(i).iter().sum()).collect();
    let cross = (delta / bf).sqrt();
    let t = rm.imag_part();
    let f = RealMatrix::from_fn(b, b, |i, j| {
        t[(i, j)] - cross * (w_row_sums[i] + w_row_sums[j])
    });

    Ok(SynthesisPlan {
        b,
        n,
        lambda2,
        w,
        delta,
        epsilon,
        f,
        s_prime,
    })
}

/// The `(b+n)×(b+n)` Laplace matrix of the synthesized network.
pub fn assemble_laplace(plan: &SynthesisPlan) -> Result<ComplexMatrix> {
    let (b, n) = (plan.b, plan.n);
    if n == 0
        || plan.w.rows() != b
        || plan.w.cols() != n
        || plan.f.rows() != b
        || !plan.f.is_square()
    {
        return Err(Error::Shape(format!(
            "plan with b = {b}, n = {n}, W {}x{}, F {}x{}",
            plan.w.rows(),
            plan.w.cols(),
            plan.f.rows(),
            plan.f.cols()
        )));
    }
    let bf = b as f64;
    let boundary_off = -plan.lambda2 / (2.0 * bf);
    Ok(ComplexMatrix::from_fn(b + n, b + n, |i, j| {
        match (i < b, j < b) {
            (true, true) => {
                let re = if i == j {
                    plan.lambda2 + boundary_off
                } else {
                    boundary_off
                };
                Complex64::new(re, plan.f[(i, j)])
            }
            (true, false) => Complex64::new(-plan.delta, plan.epsilon * plan.w[(i, j - b)]),
            (false, true) => Complex64::new(-plan.delta, plan.epsilon * plan.w[(j, i - b)]),
            (false, false) => {
                if i == j {
                    Complex64::new(plan.delta * bf, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripReport {
    /// `‖response_matrix(net) - Λ‖_max`; infinite when the response cannot be computed.
    pub residual: f64,
    /// `residual / ‖Λ‖_max`.
    pub relative_residual: f64,
    pub boundary_count: usize,
    pub interior_count: usize,
    pub edge_count: usize,
    /// Smallest real part over all conductances.
    pub min_real_part: f64,
    pub violations: Vec<Violation>,
}

impl RoundtripReport {
    pub fn node_count(&self) -> usize {
        self.boundary_count + self.interior_count
    }

    pub fn passes(&self, relative_threshold: f64) -> bool {
        self.violations.is_empty() && self.relative_residual <= relative_threshold
    }
}

pub fn verify_roundtrip(rm: &ResponseMatrix, net: &Network) -> RoundtripReport {
    let violations = validate_network(net).violations;
    let residual = if net.boundary_count != rm.size() {
        f64::INFINITY
    } else {
        response_matrix(net)
            .map(|r| r.max_abs_diff(rm.matrix()))
            .unwrap_or(f64::INFINITY)
    };
    let scale = rm.matrix().max_abs();
    RoundtripReport {
        residual,
        relative_residual: if scale > 0.0 {
            residual / scale
        } else {
            residual
        },
        boundary_count: net.boundary_count,
        interior_count: net.interior_count,
        edge_count: net.edges.len(),
        min_real_part: net
            .edges
            .iter()
            .map(|e| e.conductance.re)
            .fold(f64::INFINITY, f64::min),
        violations,
    }
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    pub network: Network,
    /// Absent for `b = 2`.
    pub plan: Option<SynthesisPlan>,
    pub report: RoundtripReport,
}

/// Builds the network without the round-trip check.
pub(crate) fn realize(
    rm: &ResponseMatrix,
    options: SynthesisOptions,
    tol: &Tolerances,
) -> Result<(Network, Option<SynthesisPlan>)> {
    if rm.size() == 2 {
        return Ok((Network::single_edge(rm.matrix()[(0, 0)]), None));
    }
    let plan = build_plan(rm, options, tol)?;
    let net = if plan.n == 0 {
        network_from_laplace(rm.matrix(), rm.size(), tol)?
    } else {
        network_from_laplace(&assemble_laplace(&plan)?, plan.b, tol)?
    };
    Ok((net, Some(plan)))
}

/// Synthesizes a network for `rm` and checks that it reproduces `rm`.
pub fn synthesize_network(
    rm: &ResponseMatrix,
    options: SynthesisOptions,
    tol: &Tolerances,
) -> Result<Synthesis> {
    let (network, plan) = realize(rm, options, tol)?;
    let report = verify_roundtrip(rm, &network);
    if !report.passes(tol.roundtrip) {
        return Err(Error::VerificationFailed {
            residual: report.relative_residual,
            threshold: tol.roundtrip,
        });
    }
    Ok(Synthesis {
        network,
        plan,
        report,
    })
}
