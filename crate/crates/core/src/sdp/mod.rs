//! Conic problem model, feasibility solver, boundary bisection and SDPA
//! export.
//!
//! A [`ConicProblem`] is a tuple of Hermitian positive-semidefinite blocks
//! constrained by a linear map into one or more Hermitian target spaces:
//! find `X ⪰ 0` (blockwise) with `A(X) = b`. Both the symmetry-reduced
//! problem and the naive full-space problem instantiate this shape; the
//! solver and exporter only see the [`ConstraintMap`] trait.

mod bisection;
mod export;
mod solver;

pub use bisection::{maximize_interpolation, BisectionReport, ProbeRecord};
pub use export::{export_sdpa, read_sdpa_header, SdpaHeader, SdpaLabels};
pub use solver::{
    infeasibility_certificate, solve_feasibility, Certificate, SolveOptions, SolveResult,
    SolveStatus,
};

use ndarray::Array2;
use num_complex::Complex64;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default equality-residual tolerance.
pub const DEFAULT_EPS_EQ: f64 = 1e-7;
/// Default cone tolerance (most negative eigenvalue allowed).
pub const DEFAULT_EPS_PSD: f64 = 1e-8;
/// Default bisection bracket width.
pub const DEFAULT_EPS_C: f64 = 5e-4;
/// Default iteration budget.
pub const DEFAULT_MAX_ITER: usize = 200_000;

/// A linear map from a tuple of Hermitian blocks to a list of Hermitian
/// target matrices, together with its adjoint. Implementations must satisfy
/// `⟨apply(X), Y⟩ = ⟨X, adjoint(Y)⟩` for the Frobenius inner products.
pub trait ConstraintMap: Send + Sync {
    fn block_sizes(&self) -> Vec<usize>;
    fn target_sizes(&self) -> Vec<usize>;
    fn apply(&self, blocks: &[Array2<Complex64>]) -> Vec<Array2<Complex64>>;
    fn adjoint(&self, target: &[Array2<Complex64>]) -> Vec<Array2<Complex64>>;
}

/// Block-diagonal feasibility problem: find blockwise-PSD `X` with
/// `map(X) = target`.
#[derive(Clone)]
pub struct ConicProblem {
    pub map: Arc<dyn ConstraintMap>,
    pub target: Vec<Array2<Complex64>>,
    /// Human-readable name per block (Young diagram label or "full").
    pub block_labels: Vec<String>,
    /// Any feasible point satisfies `Σ_λ Tr X^λ ≤ trace_bound`; used to
    /// turn approximate dual witnesses into rigorous infeasibility
    /// certificates.
    pub trace_bound: f64,
}

impl ConicProblem {
    pub fn new(
        map: Arc<dyn ConstraintMap>,
        target: Vec<Array2<Complex64>>,
        block_labels: Vec<String>,
        trace_bound: f64,
    ) -> Result<Self> {
        let sizes = map.target_sizes();
        if target.len() != sizes.len() {
            return Err(Error::invalid(format!(
                "target has {} components, map expects {}",
                target.len(),
                sizes.len()
            )));
        }
        for (t, &n) in target.iter().zip(&sizes) {
            if t.dim() != (n, n) {
                return Err(Error::invalid(format!(
                    "target component is {:?}, expected {n}×{n}",
                    t.dim()
                )));
            }
        }
        if block_labels.len() != map.block_sizes().len() {
            return Err(Error::invalid("one label per block required"));
        }
        Ok(ConicProblem {
            map,
            target,
            block_labels,
            trace_bound,
        })
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.map.block_sizes()
    }

    /// Zero block tuple of the right shape.
    pub fn zero_blocks(&self) -> Vec<Array2<Complex64>> {
        self.block_sizes()
            .iter()
            .map(|&n| Array2::zeros((n, n)))
            .collect()
    }
}

/// Stacked Frobenius inner product over matching lists of matrices.
pub(crate) fn stacked_inner(a: &[Array2<Complex64>], b: &[Array2<Complex64>]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| crate::linalg::frobenius_inner(&x.view(), &y.view()).re)
        .sum()
}

pub(crate) fn stacked_norm(a: &[Array2<Complex64>]) -> f64 {
    a.iter()
        .map(|x| {
            let n = crate::linalg::frobenius_norm(&x.view());
            n * n
        })
        .sum::<f64>()
        .sqrt()
}

/// The closed-form Werner extendibility boundary map: a bisection optimum
/// `c*` over the interpolation family corresponds to the Werner parameter
/// `α = c·d / (c + d − 1)`.
pub fn boundary_from_c(c: f64, d: u32) -> f64 {
    c * d as f64 / (c + d as f64 - 1.0)
}
