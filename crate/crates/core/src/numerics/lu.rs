use num_complex::Complex64;

use super::{ComplexMatrix, Tolerances};
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P·C = L·U`, stored compactly.
#[derive(Debug, Clone)]
pub struct ComplexLu {
    lu: ComplexMatrix,
    // perm[i] is the original row now at position i
    perm: Vec<usize>,
}

impl ComplexLu {
    pub fn factor(c: &ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !c.is_square() {
            return Err(Error::Shape(format!(
                "LU needs a square matrix, got {}x{}",
                c.rows(),
                c.cols()
            )));
        }
        c.check_finite()?;
        let n = c.rows();
        let threshold = tol.pivot * c.max_abs();
        let mut lu = c.clone();
        let mut perm: Vec<usize> = (0..n).collect();

        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let m = lu[(i, k)].norm();
                if m > best {
                    best = m;
                    p = i;
                }
            }
            if best <= threshold || best == 0.0 {
                return Err(Error::Singular {
                    pivot: k,
                    magnitude: best,
                    threshold,
                });
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= factor * u;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.dim();
        if rhs.rows() != n {
            return Err(Error::Shape(format!(
                "right-hand side has {} rows, system has {n}",
                rhs.rows()
            )));
        }
        let mut x = ComplexMatrix::from_fn(n, rhs.cols(), |i, j| rhs[(self.perm[i], j)]);
        for col in 0..rhs.cols() {
            for i in 1..n {
                let mut s = x[(i, col)];
                for k in 0..i {
                    s -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, col)];
                for k in i + 1..n {
                    s -= self.lu[(i, k)] * x[(k, col)];
                }
                x[(i, col)] = s / self.lu[(i, i)];
            }
        }
        Ok(x)
    }
}

/// Solve `C·X = RHS` by LU with partial pivoting.
pub fn solve_complex(
    c: &ComplexMatrix,
    rhs: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    if c.is_square() && rhs.rows() != c.rows() {
        return Err(Error::Shape(format!(
            "right-hand side has {} rows, system has {}",
            rhs.rows(),
            c.rows()
        )));
    }
    ComplexLu::factor(c, tol)?.solve(rhs)
}
