//! Admissibility of response matrices.
//!
//! A complex symmetric `Λ = S + Ti` with `b ≥ 2` is the response matrix of a
//! connected network exactly when its rows sum to zero, `S` is positive
//! semidefinite, and the kernel of `S` is spanned by the all-ones vector.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::{
    symmetric_eigendecomposition, ComplexMatrix, RealMatrix, SpectralData, Tolerances,
};

/// Smallest acceptable `λ₂` for generated matrices.
const GENERATOR_MIN_LAMBDA2: f64 = 1e-6;
const GENERATOR_MAX_DRAWS: usize = 100;

/// One measured condition: passes when `residual <= threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionCheck {
    pub passed: bool,
    pub residual: f64,
    pub threshold: f64,
}

impl ConditionCheck {
    fn new(residual: f64, threshold: f64) -> Self {
        Self {
            passed: residual <= threshold,
            residual,
            threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCheck {
    pub passed: bool,
    /// Eigenvalues of `S` with magnitude at most `threshold`.
    pub dimension: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    pub threshold: f64,
    /// `‖S·e‖_max` for the all-ones vector `e`.
    pub ones_residual: f64,
    pub ones_threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationVerdict {
    pub admissible: bool,
    pub size: usize,
    pub symmetry: ConditionCheck,
    pub row_sums: ConditionCheck,
    /// Residual is `max(0, -λ_min)` of the real part.
    pub psd: ConditionCheck,
    pub kernel: KernelCheck,
    /// Spectrum of the (symmetrized) real part, ascending.
    pub eigenvalues: Vec<f64>,
}

impl ValidationVerdict {
    pub fn failed_conditions(&self) -> Vec<&'static str> {
        let mut failed = Vec::new();
        if !self.symmetry.passed {
            failed.push("symmetry");
        }
        if !self.row_sums.passed {
            failed.push("row sums");
        }
        if !self.psd.passed {
            failed.push("positive semidefinite real part");
        }
        if !self.kernel.passed {
            failed.push("kernel of real part");
        }
        failed
    }
}

impl fmt::Display for ValidationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.admissible {
            write!(f, "admissible")
        } else {
            write!(f, "failed: {}", self.failed_conditions().join(", "))
        }
    }
}

/// A validated admissible response matrix with its real-part spectrum cached.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseMatrix {
    matrix: ComplexMatrix,
    real: RealMatrix,
    imag: RealMatrix,
    spectral: SpectralData,
}

impl ResponseMatrix {
    /// Validates `m`, failing with [`Error::Inadmissible`] when any condition fails.
    pub fn new(m: &ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let Validation { verdict, response } = validate_response(m, tol)?;
        response.ok_or_else(|| Error::Inadmissible(Box::new(verdict)))
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// `Λ`, symmetrized.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn real_part(&self) -> &RealMatrix {
        &self.real
    }

    pub fn imag_part(&self) -> &RealMatrix {
        &self.imag
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    pub fn lambda2(&self) -> f64 {
        self.spectral.eigenvalues[1]
    }
}

#[derive(Debug, Clone)]
pub struct Validation {
    pub verdict: ValidationVerdict,
    /// Present exactly when the verdict is admissible.
    pub response: Option<ResponseMatrix>,
}

pub fn validate_response(m: &ComplexMatrix, tol: &Tolerances) -> Result<Validation> {
    if !m.is_square() || m.rows() < 2 {
        return Err(Error::Shape(format!(
            "response matrix must be square with b >= 2, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    m.check_finite()?;
    let b = m.rows();
    let entry_scale = 1.0 + m.max_abs();

    let symmetry = ConditionCheck::new(m.asymmetry(), tol.relative * entry_scale);
    let row_sums = ConditionCheck::new(m.max_row_sum(), tol.relative * entry_scale);

    let sym = ComplexMatrix::from_fn(b, b, |i, j| (m[(i, j)] + m[(j, i)]) * 0.5);
    let real = sym.re();
    let imag = sym.im();
    let spectral = symmetric_eigendecomposition(&real, tol)?;
    let ev = &spectral.eigenvalues;
    let eig_threshold = tol.relative * spectral.max_eigenvalue().max(1.0);

    let psd = ConditionCheck::new((-ev[0]).max(0.0), eig_threshold);

    let ones_residual = real
        .row_sums()
        .into_iter()
        .fold(0.0_f64, |acc, s| acc.max(s.abs()));
    let ones_threshold = tol.relative * (1.0 + real.max_abs());
    let (lambda1, lambda2) = (ev[0], ev[1]);
    let kernel = KernelCheck {
        passed: lambda1.abs() <= eig_threshold
            && lambda2 > eig_threshold
            && ones_residual <= ones_threshold,
        dimension: ev.iter().filter(|l| l.abs() <= eig_threshold).count(),
        lambda1,
        lambda2,
        threshold: eig_threshold,
        ones_residual,
        ones_threshold,
    };

    let admissible = symmetry.passed && row_sums.passed && psd.passed && kernel.passed;
    let verdict = ValidationVerdict {
        admissible,
        size: b,
        symmetry,
        row_sums,
        psd,
        kernel,
        eigenvalues: ev.clone(),
    };
    let response = admissible.then_some(ResponseMatrix {
        matrix: sym,
        real,
        imag,
        spectral,
    });
    Ok(Validation { verdict, response })
}

/// A random admissible `b×b` response matrix, deterministic in `seed`.
///
/// The real part is `G·Gᵀ` for a random `b×(b-1)` matrix `G` whose columns
/// are centred (so the all-ones vector spans the kernel); the imaginary part
/// is a random symmetric matrix with rows and columns centred.
pub fn random_admissible(b: usize, seed: u64) -> Result<ResponseMatrix> {
    if b < 2 {
        return Err(Error::Shape(format!(
            "random_admissible needs b >= 2, got {b}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = Tolerances::default();
    for _ in 0..GENERATOR_MAX_DRAWS {
        let mut g = RealMatrix::from_fn(b, b - 1, |_, _| rng.gen_range(-1.0..1.0));
        for k in 0..b - 1 {
            let mean = g.col_vec(k).iter().sum::<f64>() / b as f64;
            for i in 0..b {
                g[(i, k)] -= mean;
            }
        }
        let s = RealMatrix::from_fn(b, b, |i, j| (0..b - 1).map(|k| g[(i, k)] * g[(j, k)]).sum());

        let mut t0 = RealMatrix::zeros(b, b);
        for i in 0..b {
            for j in i..b {
                let x = rng.gen_range(-1.0..1.0);
                t0[(i, j)] = x;
                t0[(j, i)] = x;
            }
        }
        let means: Vec<f64> = t0.row_sums().iter().map(|r| r / b as f64).collect();
        let grand = means.iter().sum::<f64>() / b as f64;
        let t = RealMatrix::from_fn(b, b, |i, j| t0[(i, j)] - (means[i] + means[j]) + grand);

        let lambda = ComplexMatrix::from_parts(&s, &t)?;
        let Validation { verdict, response } = validate_response(&lambda, &tol)?;
        match response {
            Some(rm) if verdict.kernel.lambda2 > GENERATOR_MIN_LAMBDA2 => return Ok(rm),
            _ => continue,
        }
    }
    Err(Error::Generator(format!(
        "no admissible {b}x{b} matrix after {GENERATOR_MAX_DRAWS} draws"
    )))
}

/// The two-terminal response matrix `[[c, -c], [-c, c]]`.
pub fn two_terminal(c: Complex64) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| if i == j { c } else { -c })
}
