//! Small dense linear-algebra helpers shared across the crate.
//!
//! Everything here operates on `ndarray` matrices of `Complex64`. Hermitian
//! matrices are frequently flattened into real coordinate vectors with
//! respect to the orthonormal basis
//! `{E_ii} ∪ {(E_ij + E_ji)/√2} ∪ {i(E_ij − E_ji)/√2}` (i < j), so that
//! real-valued normal equations can be formed for linear maps between
//! Hermitian spaces.

use ndarray::{Array1, Array2, ArrayView2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;

pub const IM: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Frobenius inner product `Tr(A† B)`.
pub fn frobenius_inner(a: &ArrayView2<Complex64>, b: &ArrayView2<Complex64>) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Frobenius norm.
pub fn frobenius_norm(a: &ArrayView2<Complex64>) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest absolute entry of `A − A†`; zero for exactly Hermitian input.
pub fn hermiticity_defect(a: &ArrayView2<Complex64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let d = (a[[i, j]] - a[[j, i]].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Symmetrize to the nearest Hermitian matrix, `(A + A†)/2`.
pub fn hermitize(a: &ArrayView2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    Array2::from_shape_fn((n, n), |(i, j)| (a[[i, j]] + a[[j, i]].conj()) * 0.5)
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
pub fn eigh(a: &ArrayView2<Complex64>) -> Result<(Array1<f64>, Array2<Complex64>)> {
    let (vals, vecs) = a.to_owned().eigh(UPLO::Lower)?;
    Ok((vals, vecs))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &ArrayView2<Complex64>) -> Result<f64> {
    let (vals, _) = eigh(a)?;
    Ok(vals[0])
}

/// Projection onto the positive semidefinite cone: negative eigenvalues
/// are clipped and the matrix is reassembled.
pub fn project_psd(a: &ArrayView2<Complex64>) -> Result<Array2<Complex64>> {
    let h = hermitize(a);
    let (vals, vecs) = eigh(&h.view())?;
    let n = h.nrows();
    let mut scaled = vecs.clone();
    for (j, &v) in vals.iter().enumerate() {
        let w = if v > 0.0 { v } else { 0.0 };
        for i in 0..n {
            scaled[[i, j]] *= w;
        }
    }
    // U diag(w) U†
    let mut out = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for l in 0..n {
                s += scaled[[i, l]] * vecs[[j, l]].conj();
            }
            out[[i, j]] = s;
        }
    }
    Ok(out)
}

/// Real dimension of the Hermitian space over an `n × n` complex matrix.
pub fn hermitian_dim(n: usize) -> usize {
    n * n
}

/// Flatten a Hermitian matrix into real coordinates in the orthonormal basis
/// described in the module docs. Inverse of [`coords_to_hermitian`].
pub fn hermitian_to_coords(a: &ArrayView2<Complex64>, out: &mut Vec<f64>) {
    let n = a.nrows();
    let sqrt2 = std::f64::consts::SQRT_2;
    for i in 0..n {
        out.push(a[[i, i]].re);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(a[[i, j]].re * sqrt2);
            out.push(a[[i, j]].im * sqrt2);
        }
    }
}

/// Rebuild a Hermitian matrix from real coordinates produced by
/// [`hermitian_to_coords`]. Consumes `n²` entries starting at `offset` and
/// returns the new offset.
pub fn coords_to_hermitian(coords: &[f64], offset: usize, n: usize) -> (Array2<Complex64>, usize) {
    let inv_sqrt2 = 1.0 / std::f64::consts::SQRT_2;
    let mut a = Array2::<Complex64>::zeros((n, n));
    let mut p = offset;
    for i in 0..n {
        a[[i, i]] = Complex64::new(coords[p], 0.0);
        p += 1;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let re = coords[p] * inv_sqrt2;
            let im = coords[p + 1] * inv_sqrt2;
            p += 2;
            a[[i, j]] = Complex64::new(re, im);
            a[[j, i]] = Complex64::new(re, -im);
        }
    }
    (a, p)
}

/// Kronecker product.
pub fn kron(a: &ArrayView2<Complex64>, b: &ArrayView2<Complex64>) -> Array2<Complex64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::<Complex64>::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[[i, j]];
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for p in 0..rb {
                for q in 0..cb {
                    out[[i * rb + p, j * cb + q]] = aij * b[[p, q]];
                }
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Array2<Complex64> {
    Array2::eye(n)
}

/// `A† B` without forming the conjugate transpose explicitly.
pub fn adjoint_mul(a: &ArrayView2<Complex64>, b: &ArrayView2<Complex64>) -> Array2<Complex64> {
    let (n, m) = (a.ncols(), b.ncols());
    let k = a.nrows();
    let mut out = Array2::<Complex64>::zeros((n, m));
    for i in 0..n {
        for j in 0..m {
            let mut s = Complex64::new(0.0, 0.0);
            for l in 0..k {
                s += a[[l, i]].conj() * b[[l, j]];
            }
            out[[i, j]] = s;
        }
    }
    out
}

/// Random Hermitian matrix with independent standard-normal entries.
pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> Array2<Complex64> {
    let g = random_ginibre(n, rng);
    hermitize(&g.view())
}

/// Random matrix with i.i.d. complex standard-normal entries.
pub fn random_ginibre<R: Rng>(n: usize, rng: &mut R) -> Array2<Complex64> {
    use rand::distributions::Distribution;
    let normal = rand_distr_standard();
    Array2::from_shape_fn((n, n), |_| {
        Complex64::new(normal.sample(rng), normal.sample(rng))
    })
}

fn rand_distr_standard() -> impl rand::distributions::Distribution<f64> {
    // Box-Muller via two uniforms, avoiding an extra dependency.
    struct BoxMuller;
    impl rand::distributions::Distribution<f64> for BoxMuller {
        fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        }
    }
    BoxMuller
}
