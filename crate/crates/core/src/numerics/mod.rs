//! Dense linear algebra: matrices, a Jacobi symmetric eigensolver, complex LU
//! solves, and the Schur complement used for Kron reduction.

mod eigen;
mod lu;
mod matrix;

pub use eigen::{symmetric_eigendecomposition, SpectralData};
pub use lu::{solve_complex, ComplexLu};
pub use matrix::{ComplexMatrix, Entry, Matrix, RealMatrix};

use crate::error::{Error, Result};

/// Every numerical threshold used by the crate.
///
/// `relative` is the user-facing knob (`--tol` on the command line); the
/// round-trip acceptance threshold follows it at ten times its value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Symmetry, row-sum and eigenvalue classification, relative to the
    /// matrix scale.
    pub relative: f64,
    /// Jacobi stops once the off-diagonal max-norm is below this times `‖S‖_max`.
    pub jacobi_off_diagonal: f64,
    pub jacobi_max_sweeps: usize,
    /// LU declares a pivot singular below this times the largest input entry.
    pub pivot: f64,
    /// Off-diagonal Laplace entries below this times `‖L‖_max` are not edges.
    pub structural_zero: f64,
    /// Row-sum and symmetry slack when reading a Laplace matrix, relative to `1 + ‖L‖_max`.
    pub laplace: f64,
    /// `minimize_interior` drops columns with `λ_k - λ₂` at most this times `λ_max`.
    pub drop: f64,
    /// Largest accepted `‖R - Λ‖_max / ‖Λ‖_max` after synthesis.
    pub roundtrip: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            relative: 1e-9,
            jacobi_off_diagonal: 1e-12,
            jacobi_max_sweeps: 100,
            pivot: 1e-13,
            structural_zero: 1e-12,
            laplace: 1e-10,
            drop: 1e-9,
            roundtrip: 1e-8,
        }
    }
}

impl Tolerances {
    /// Defaults with the shared relative tolerance replaced.
    pub fn with_relative(relative: f64) -> Self {
        Self {
            relative,
            roundtrip: 10.0 * relative,
            ..Self::default()
        }
    }
}

/// `A - B C⁻¹ Bᵀ`, eliminating the `C` block of `[[A, B], [Bᵀ, C]]`.
pub fn schur_complement(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let (nb, n) = (a.rows(), c.rows());
    if !a.is_square() || !c.is_square() || b.rows() != nb || b.cols() != n {
        return Err(Error::Shape(format!(
            "Schur complement needs A b×b, B b×n, C n×n; got A {}x{}, B {}x{}, C {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    if n == 0 {
        return Err(Error::Shape("Schur complement of an empty block".into()));
    }
    let x = solve_complex(c, &b.transpose(), tol)?;
    a.try_sub(&b.matmul(&x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn decoupled_interior_leaves_a_unchanged() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64, j as f64 - 1.0));
        let b = ComplexMatrix::zeros(3, 2);
        let cc =
            ComplexMatrix::from_fn(2, 2, |i, j| if i == j { c(2.0, 1.0) } else { c(0.3, 0.0) });
        let r = schur_complement(&a, &b, &cc, &Tolerances::default()).unwrap();
        assert_eq!(r, a);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let a = ComplexMatrix::identity(3);
        let b = ComplexMatrix::zeros(2, 2);
        let cc = ComplexMatrix::identity(2);
        assert!(matches!(
            schur_complement(&a, &b, &cc, &Tolerances::default()),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn singular_c_propagates() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::ones(2, 2);
        let cc = ComplexMatrix::ones(2, 2);
        assert!(matches!(
            schur_complement(&a, &b, &cc, &Tolerances::default()),
            Err(Error::Singular { pivot: 1, .. })
        ));
    }

    #[test]
    fn with_relative_moves_roundtrip_threshold() {
        let t = Tolerances::with_relative(1e-6);
        assert_eq!(t.relative, 1e-6);
        assert!((t.roundtrip - 1e-5).abs() < 1e-20);
        assert_eq!(t.pivot, Tolerances::default().pivot);
    }
}
