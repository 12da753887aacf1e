//! Batch evaluation over many independent instances.

use crate::characterize::{validate_response, ResponseMatrix, ValidationVerdict};
use crate::error::Result;
use crate::network::Network;
use crate::numerics::{ComplexMatrix, Tolerances};
use crate::parallel::{map_slice, Execution};
use crate::response::{response_matrix, response_matrix_oracle_with};
use crate::synthesize::{synthesize_network, Synthesis, SynthesisOptions};

pub fn synthesize_all(
    matrices: &[ResponseMatrix],
    options: SynthesisOptions,
    tol: &Tolerances,
    exec: Execution,
) -> Vec<Result<Synthesis>> {
    map_slice(matrices, exec, |rm| synthesize_network(rm, options, tol))
}

pub fn responses(networks: &[Network], exec: Execution) -> Vec<Result<ComplexMatrix>> {
    map_slice(networks, exec, response_matrix)
}

/// Per network: response matrix, its admissibility verdict, and the
/// max-norm gap to the unit-voltage oracle.
#[derive(Debug, Clone)]
pub struct NecessityCase {
    pub response: ComplexMatrix,
    pub verdict: ValidationVerdict,
    pub oracle_gap: f64,
}

pub fn necessity_check(
    networks: &[Network],
    tol: &Tolerances,
    exec: Execution,
) -> Vec<Result<NecessityCase>> {
    map_slice(networks, exec, |net| {
        let response = response_matrix(net)?;
        let verdict = validate_response(&response, tol)?.verdict;
        // columns run sequentially; the batch is the parallel axis
        let oracle = response_matrix_oracle_with(net, Execution::Sequential)?;
        Ok(NecessityCase {
            oracle_gap: response.max_abs_diff(&oracle),
            response,
            verdict,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterize::random_admissible;
    use crate::random::random_network;

    #[test]
    fn sequential_and_parallel_identical() {
        let ms: Vec<_> = (0..8)
            .map(|s| random_admissible(2 + s as usize, s).unwrap())
            .collect();
        let tol = Tolerances::default();
        let a = synthesize_all(
            &ms,
            SynthesisOptions::default(),
            &tol,
            Execution::Sequential,
        );
        let b = synthesize_all(&ms, SynthesisOptions::default(), &tol, Execution::Parallel);
        for (x, y) in a.iter().zip(&b) {
            let (x, y) = (x.as_ref().unwrap(), y.as_ref().unwrap());
            assert_eq!(x.network, y.network);
            assert_eq!(x.report, y.report);
        }

        let nets: Vec<_> = (0..8).map(|s| random_network(s, 10).unwrap()).collect();
        let ra: Vec<_> = responses(&nets, Execution::Sequential)
            .into_iter()
            .map(Result::unwrap)
            .collect();
        let rb: Vec<_> = responses(&nets, Execution::Parallel)
            .into_iter()
            .map(Result::unwrap)
            .collect();
        assert_eq!(ra, rb);
    }
}
