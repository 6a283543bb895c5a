//! Density-matrix value type, canonical test states, and naive tensor-space
//! utilities.
//!
//! A [`DensityMatrix`] is a dense complex matrix together with the ordered
//! list of tensor-factor dimensions it lives on. Hermiticity and unit trace
//! are enforced at construction to `1e−12`; positive semidefiniteness is
//! checked on demand via [`DensityMatrix::validate`] because intermediate
//! solver iterates may be temporarily indefinite.

use ndarray::{Array2, ArrayView2};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    data: Array2<Complex64>,
}

/// Validation report produced by [`DensityMatrix::validate`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ValidationReport {
    pub hermitian: bool,
    pub trace_dev: f64,
    pub min_eig: f64,
}

impl DensityMatrix {
    /// Wraps a matrix after checking shape, Hermiticity and unit trace.
    pub fn new(dims: Vec<usize>, data: Array2<Complex64>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::invalid("factor dimensions must be positive"));
        }
        let total: usize = dims.iter().product();
        if data.dim() != (total, total) {
            return Err(Error::invalid(format!(
                "data is {:?} but dims {:?} require {total}×{total}",
                data.dim(),
                dims
            )));
        }
        let defect = linalg::hermiticity_defect(&data.view());
        if defect > HERMITICITY_TOL {
            return Err(Error::invalid(format!(
                "matrix is not Hermitian (defect {defect:.3e})"
            )));
        }
        let trace: Complex64 = (0..total).map(|i| data[[i, i]]).sum();
        if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::invalid(format!("trace must be 1, got {trace}")));
        }
        Ok(DensityMatrix { dims, data })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> &Array2<Complex64> {
        &self.data
    }

    pub fn view(&self) -> ArrayView2<'_, Complex64> {
        self.data.view()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.total_dim()).map(|i| self.data[[i, i]]).sum()
    }

    /// Hermiticity, trace deviation and minimum eigenvalue in one report.
    pub fn validate(&self, tol: f64) -> Result<ValidationReport> {
        let defect = linalg::hermiticity_defect(&self.data.view());
        let min_eig = linalg::min_eigenvalue(&self.data.view())?;
        Ok(ValidationReport {
            hermitian: defect <= tol,
            trace_dev: (self.trace() - Complex64::new(1.0, 0.0)).norm(),
            min_eig,
        })
    }

    /// Marginal on the listed tensor factors (0-based; output factor order
    /// follows `keep` as given).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let data = partial_trace_raw(&self.data.view(), &self.dims, keep)?;
        let dims = keep.iter().map(|&f| self.dims[f]).collect();
        DensityMatrix::new(dims, data)
    }

    /// Convex combination `(1−t)·self + t·other`; factors must agree.
    pub fn interpolate(&self, other: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        if self.dims != other.dims {
            return Err(Error::invalid("interpolating states with different dims"));
        }
        let data = self.data.mapv(|x| x * (1.0 - t)) + other.data.mapv(|x| x * t);
        DensityMatrix::new(self.dims.clone(), data)
    }
}

/// Partial trace over all factors not in `keep`, for a raw matrix with the
/// given factor dimensions. Factor 0 is the most significant index.
pub fn partial_trace_raw(
    mat: &ArrayView2<Complex64>,
    dims: &[usize],
    keep: &[usize],
) -> Result<Array2<Complex64>> {
    if keep.is_empty() {
        return Err(Error::invalid("keep set must be nonempty"));
    }
    let nfac = dims.len();
    let mut seen = vec![false; nfac];
    for &f in keep {
        if f >= nfac {
            return Err(Error::invalid(format!("factor index {f} out of range")));
        }
        if seen[f] {
            return Err(Error::invalid("duplicate factor in keep set"));
        }
        seen[f] = true;
    }
    let traced: Vec<usize> = (0..nfac).filter(|f| !seen[*f]).collect();

    // Row-major strides over the factor list.
    let mut strides = vec![1usize; nfac];
    for f in (0..nfac.saturating_sub(1)).rev() {
        strides[f] = strides[f + 1] * dims[f + 1];
    }

    let out_dims: Vec<usize> = keep.iter().map(|&f| dims[f]).collect();
    let out_dim: usize = out_dims.iter().product();
    let traced_dim: usize = traced.iter().map(|&f| dims[f]).product();

    // Base offsets contributed by each traced configuration.
    let mut traced_offsets = Vec::with_capacity(traced_dim);
    for mut t in 0..traced_dim {
        let mut off = 0usize;
        for &f in traced.iter().rev() {
            off += (t % dims[f]) * strides[f];
            t /= dims[f];
        }
        traced_offsets.push(off);
    }
    // Offsets of each kept configuration.
    let keep_offset = |mut a: usize| -> usize {
        let mut off = 0usize;
        for &f in keep.iter().rev() {
            off += (a % dims[f]) * strides[f];
            a /= dims[f];
        }
        off
    };

    let mut out = Array2::<Complex64>::zeros((out_dim, out_dim));
    for a in 0..out_dim {
        let ra = keep_offset(a);
        for b in 0..out_dim {
            let cb = keep_offset(b);
            let mut s = Complex64::new(0.0, 0.0);
            for &off in &traced_offsets {
                s += mat[[ra + off, cb + off]];
            }
            out[[a, b]] = s;
        }
    }
    Ok(out)
}

/// The bipartite Werner family on `H_d ⊗ H_d`:
/// `ρ_{W,d}(α) = (I − α·SWAP) / (d² − dα)` with `α ∈ [−1, 1]`.
pub fn werner(d: usize, alpha: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::invalid("Werner state requires d ≥ 2"));
    }
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!(
            "Werner parameter must lie in [−1, 1], got {alpha}"
        )));
    }
    let n = d * d;
    let norm = 1.0 / (n as f64 - d as f64 * alpha);
    let mut data = Array2::<Complex64>::zeros((n, n));
    for i in 0..d {
        for j in 0..d {
            // identity term at |ij⟩⟨ij|, swap term at |ij⟩⟨ji|
            data[[i * d + j, i * d + j]] += Complex64::new(norm, 0.0);
            data[[i * d + j, j * d + i]] += Complex64::new(-alpha * norm, 0.0);
        }
    }
    DensityMatrix::new(vec![d, d], data)
}

/// The SWAP operator on `H_d ⊗ H_d`.
pub fn swap_operator(d: usize) -> Array2<Complex64> {
    let n = d * d;
    let mut s = Array2::<Complex64>::zeros((n, n));
    for i in 0..d {
        for j in 0..d {
            s[[i * d + j, j * d + i]] = Complex64::new(1.0, 0.0);
        }
    }
    s
}

/// Maximally mixed state on the given factors.
pub fn maximally_mixed(dims: &[usize]) -> Result<DensityMatrix> {
    if dims.is_empty() || dims.iter().any(|&d| d == 0) {
        return Err(Error::invalid("factor dimensions must be positive"));
    }
    let n: usize = dims.iter().product();
    let data = Array2::<Complex64>::eye(n).mapv(|x| x / n as f64);
    DensityMatrix::new(dims.to_vec(), data)
}

/// Random full-rank density matrix (normalized `G G†` with Ginibre `G`).
pub fn random_density<R: Rng>(dims: &[usize], rng: &mut R) -> Result<DensityMatrix> {
    let n: usize = dims.iter().product();
    let g = linalg::random_ginibre(n, rng);
    let mut m = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for l in 0..n {
                s += g[[i, l]] * g[[j, l]].conj();
            }
            m[[i, j]] = s;
        }
    }
    let tr: f64 = (0..n).map(|i| m[[i, i]].re).sum();
    let m = linalg::hermitize(&m.mapv(|x| x / tr).view());
    DensityMatrix::new(dims.to_vec(), m)
}

// ---------------------------------------------------------------------------
// JSON interchange format
//
// {"dims":[…],"data":[[re,im],…]} with `data` row-major over the full
// matrix, of length (Π dims)². Length mismatches are rejected.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DensityMatrixJson {
    dims: Vec<usize>,
    data: Vec<(f64, f64)>,
}

impl DensityMatrix {
    pub fn to_json(&self) -> String {
        let n = self.total_dim();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.data[[i, j]];
                data.push((z.re, z.im));
            }
        }
        serde_json::to_string(&DensityMatrixJson {
            dims: self.dims.clone(),
            data,
        })
        .expect("density matrix serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: DensityMatrixJson = serde_json::from_str(s)?;
        let total: usize = raw.dims.iter().product();
        if raw.data.len() != total * total {
            return Err(Error::invalid(format!(
                "data length {} does not match dims {:?} (expected {})",
                raw.data.len(),
                raw.dims,
                total * total
            )));
        }
        let mut m = Array2::<Complex64>::zeros((total, total));
        for i in 0..total {
            for j in 0..total {
                let (re, im) = raw.data[i * total + j];
                m[[i, j]] = Complex64::new(re, im);
            }
        }
        DensityMatrix::new(raw.dims, m)
    }
}
