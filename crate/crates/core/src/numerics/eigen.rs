use super::{RealMatrix, Tolerances};
use crate::error::{Error, Result};

/// An entry counts as significant for the sign convention when it is at least
/// this fraction of the column's largest magnitude.
const SIGN_SIGNIFICANCE: f64 = 1e-6;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// (column `k` of `eigenvectors` belongs to `eigenvalues[k]`).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: RealMatrix,
}

impl SpectralData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `U·diag(λ)·Uᵀ`.
    pub fn reconstruct(&self) -> RealMatrix {
        let u = &self.eigenvectors;
        let n = self.dim();
        RealMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| u[(i, k)] * self.eigenvalues[k] * u[(j, k)])
                .sum()
        })
    }

    /// `max |UᵀU - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let u = &self.eigenvectors;
        let utu = u.transpose().matmul(u).expect("square");
        utu.max_abs_diff(&RealMatrix::identity(self.dim()))
    }

    /// `max |S·U - U·diag(λ)|`.
    pub fn residual(&self, s: &RealMatrix) -> f64 {
        let u = &self.eigenvectors;
        let su = s.matmul(u).expect("square");
        let ud = RealMatrix::from_fn(u.rows(), u.cols(), |i, k| u[(i, k)] * self.eigenvalues[k]);
        su.max_abs_diff(&ud)
    }
}

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
///
/// Rotations sweep the strict upper triangle in row-major order until the
/// off-diagonal max-norm drops below `jacobi_off_diagonal · ‖S‖_max`.
/// Each eigenvector is normalized so that its first significant entry is
/// positive, which makes the output fully deterministic.
pub fn symmetric_eigendecomposition(s: &RealMatrix, tol: &Tolerances) -> Result<SpectralData> {
    if !s.is_square() {
        return Err(Error::Shape(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    s.check_finite()?;
    let scale = s.max_abs();
    let asym = s.asymmetry();
    let sym_threshold = tol.relative * (1.0 + scale);
    if asym > sym_threshold {
        return Err(Error::NotSymmetric {
            residual: asym,
            threshold: sym_threshold,
        });
    }

    let n = s.rows();
    // work on the exactly symmetric part
    let mut a = RealMatrix::from_fn(n, n, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
    let mut v = RealMatrix::identity(n);
    let threshold = tol.jacobi_off_diagonal * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_max(&a);
        if off <= threshold {
            break;
        }
        if sweeps == tol.jacobi_max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&k| a[(k, k)]).collect();
    let mut eigenvectors = RealMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    canonicalize_signs(&mut eigenvectors);

    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_max(a: &RealMatrix) -> f64 {
    let n = a.rows();
    let mut m = 0.0_f64;
    for p in 0..n {
        for q in p + 1..n {
            m = m.max(a[(p, q)].abs());
        }
    }
    m
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut RealMatrix, v: &mut RealMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = a.rows();
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp;
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

fn canonicalize_signs(u: &mut RealMatrix) {
    for k in 0..u.cols() {
        let col = u.col_vec(k);
        let biggest = col.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let first = col
            .iter()
            .copied()
            .find(|x| x.abs() >= SIGN_SIGNIFICANCE * biggest && *x != 0.0);
        if matches!(first, Some(x) if x < 0.0) {
            for i in 0..u.rows() {
                u[(i, k)] = -u[(i, k)];
            }
        }
    }
}
