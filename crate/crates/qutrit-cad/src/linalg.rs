//! Dense complex matrix kernel: square matrices over `Complex64`, Kronecker
//! products, partial transposition and a cyclic Jacobi eigensolver for
//! Hermitian inputs.
//!
//! Everything operating on two-qutrit states downstream is 9x9, so the kernel
//! favours clarity and strict error reporting over asymptotic performance.

use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

/// Inputs to the eigensolver may deviate from exact Hermiticity by at most
/// this much (max |a_ij - conj(a_ji)|).
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Jacobi terminates once the off-diagonal Frobenius norm drops below this.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
/// Hard cap on Jacobi sweeps before reporting non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues smaller than this in magnitude are treated as exact zeros when
/// accumulating a trace norm, so roundoff dust cannot masquerade as
/// entanglement.
pub const NEGLIGIBLE_EIGENVALUE: f64 = 1e-12;

/// Square, row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// dim x dim matrix of zeros.
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Build from a closure over (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix from real entries.
    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Rank-one projector |ket><ket| (not normalized; caller's amplitudes are
    /// used as given).
    pub fn from_ket(ket: &[Complex64]) -> Self {
        let dim = ket.len();
        Self::from_fn(dim, |i, j| ket[i] * ket[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Rows as nested vectors; convenient for crossing FFI boundaries.
    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)]).collect())
            .collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Multiply every entry by a real scalar.
    pub fn scaled(&self, s: f64) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)] * s)
    }

    /// Multiply every entry by a complex scalar.
    pub fn scaled_c(&self, s: Complex64) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)] * s)
    }

    /// Hermitian part (A + A^+)/2. Used to scrub integrator roundoff.
    pub fn hermitized(&self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            0.5 * (self[(i, j)] + self[(j, i)].conj())
        })
    }

    /// Largest |a_ij - conj(a_ji)| over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry-wise |a_ij - b_ij|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when every entry is finite (no NaN/inf crept in).
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "add: dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sub: dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "mul: dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Kronecker product of two square matrices: (a ⊗ b) acts on the composite
/// space with the first factor's index major, i.e. row i*dim(b)+k.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(da * db, |r, c| {
        let (i, k) = (r / db, r % db);
        let (j, l) = (c / db, c % db);
        a[(i, j)] * b[(k, l)]
    })
}

/// Partial transpose over the *second* factor of a dim_a x dim_b bipartition:
/// out[(i,l),(k,j)] = in[(i,j),(k,l)].
pub fn partial_transpose(
    rho: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
) -> Result<ComplexMatrix> {
    if rho.dim() != dim_a * dim_b {
        return Err(Error::DimensionMismatch {
            context: format!(
                "partial_transpose: matrix is {0}x{0} but dim_a*dim_b = {1}",
                rho.dim(),
                dim_a * dim_b
            ),
        });
    }
    let mut out = ComplexMatrix::zeros(rho.dim());
    for i in 0..dim_a {
        for j in 0..dim_b {
            for k in 0..dim_a {
                for l in 0..dim_b {
                    out[(i * dim_b + l, k * dim_b + j)] = rho[(i * dim_b + j, k * dim_b + l)];
                }
            }
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi with
/// complex Givens rotations.
///
/// Rejects inputs whose Hermiticity defect exceeds [`HERMITICITY_TOL`];
/// reports non-convergence if [`JACOBI_MAX_SWEEPS`] full sweeps fail to push
/// the off-diagonal Frobenius norm under [`JACOBI_OFF_TOL`].
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let defect = m.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            max_dev: defect,
            tol: HERMITICITY_TOL,
        });
    }

    let n = m.dim();
    // Work on the exactly-Hermitian part so tiny input asymmetry cannot feed
    // the rotations.
    let mut a = m.hermitized();

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&a) < JACOBI_OFF_TOL {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == Complex64::ZERO {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Zero the (p,q) element with the unitary
                //   R = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
                // acting on rows/columns p and q, where a_pq = r e^{i phi}
                // and tan(2 theta) = 2r / (a_pp - a_qq).
                let r = apq.norm();
                let phi = apq.arg();
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let c = theta.cos();
                let s = theta.sin();
                let e_pos = Complex64::from_polar(1.0, phi);
                let e_neg = e_pos.conj();

                // A <- A R (columns p and q)
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * s * e_neg;
                    a[(k, q)] = -akp * s * e_pos + akq * c;
                }
                // A <- R^+ A (rows p and q)
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * s * e_pos;
                    a[(q, k)] = -apk * s * e_neg + aqk * c;
                }
                // The rotation annihilates (p,q) by construction and keeps the
                // diagonal real; enforce both exactly.
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let off = off_norm(&a);
    if off >= JACOBI_OFF_TOL {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off_norm: off,
        });
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(eig)
}

/// Trace norm (sum of |eigenvalues|) of a Hermitian matrix, with eigenvalues
/// below [`NEGLIGIBLE_EIGENVALUE`] in magnitude snapped to zero first.
pub fn trace_norm_hermitian(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigenvalues(m)?;
    Ok(eig
        .iter()
        .map(|&l| if l.abs() < NEGLIGIBLE_EIGENVALUE { 0.0 } else { l.abs() })
        .sum())
}

/// Trace distance (1/2)||a - b||_1 between two Hermitian matrices.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(0.5 * trace_norm_hermitian(&(a - b))?)
}
