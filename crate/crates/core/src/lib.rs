//! Response maps of alternating-current networks.
//!
//! An alternating-current network is a connected graph whose edges carry
//! complex conductances with positive real part; some nodes are boundary
//! nodes. Its response matrix maps boundary voltages to the currents flowing
//! in through the boundary nodes. This crate computes response matrices
//! ([`response`]), decides whether a matrix is a response matrix
//! ([`characterize`]), and builds a network with `b - 2` interior nodes for
//! any admissible `b×b` matrix ([`synthesize`]).
//!
//! ```
//! use acnet::prelude::*;
//!
//! let lambda = ComplexMatrix::from_real(&RealMatrix::from_rows(&[
//!     vec![2.0, 1.0, -3.0],
//!     vec![1.0, 2.0, -3.0],
//!     vec![-3.0, -3.0, 6.0],
//! ]).unwrap());
//! let tol = Tolerances::default();
//! let rm = ResponseMatrix::new(&lambda, &tol).unwrap();
//! let syn = synthesize_network(&rm, SynthesisOptions::default(), &tol).unwrap();
//! assert_eq!(syn.network.interior_count, 1);
//! let back = response_matrix(&syn.network).unwrap();
//! assert!(back.max_abs_diff(&lambda) < 1e-12);
//! ```

pub mod batch;
pub mod characterize;
pub mod cli;
pub mod error;
pub mod io;
pub mod network;
pub mod numerics;
pub mod parallel;
pub mod random;
pub mod response;
pub mod synthesize;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::characterize::{random_admissible, validate_response, ResponseMatrix};
    pub use crate::network::{
        build_laplace, network_from_laplace, validate_network, Edge, Network,
    };
    pub use crate::numerics::{ComplexMatrix, RealMatrix, Tolerances};
    pub use crate::parallel::Execution;
    pub use crate::response::{
        boundary_currents, response_matrix, response_matrix_oracle, solve_network,
    };
    pub use crate::synthesize::{synthesize_network, verify_roundtrip, SynthesisOptions};
    pub use num_complex::Complex64;
}
