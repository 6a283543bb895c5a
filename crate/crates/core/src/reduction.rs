//! Compiles `(d, d_A, k)` into the block-diagonal feasibility problem and
//! realizes the reduced marginal map and its adjoint.
//!
//! One Hermitian block `X^λ` of side `d_A·D_λ` is kept per Young diagram
//! with at most `d` rows. Its composite index is `(a, ω)` with `a` a basis
//! index of subsystem A and `ω` a GT pattern. The candidate marginal on
//! `A ⊗ B_1` is
//!
//! ```text
//! Φ(X)[(m,i),(n,j)] = Σ_λ (m_λ/k) Σ_{ω,ω′} X^λ[(m,ω),(n,ω′)] ⟨ω′|T_ji|ω⟩
//! ```
//!
//! Cross terms between inequivalent diagrams vanish and equivalent copies
//! enter only through the multiplicity weight `m_λ`, which is what makes
//! the block model complete. The original split into a scalar coefficient
//! and an A-operator per `(ω, ω′)` pair is absorbed into the single block
//! entry, since only the product is constrained.

use ndarray::{s, Array2, ArrayView2};
use num_bigint::BigUint;
use num_complex::Complex64;
use serde::Serialize;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gt::IrrepGenerators;
use crate::partitions::{catalog, IrrepCatalog};
use crate::sdp::{ConicProblem, ConstraintMap, SdpaLabels};
use crate::states::DensityMatrix;

/// Default cap on the total number of real block parameters
/// `Σ (d_A·D_λ)²`.
pub const DEFAULT_PARAM_CAP: usize = 10_000_000;

/// The compiled block-diagonal problem data: catalog, generator tensors and
/// shapes. Bind a marginal target with [`ReducedProblem::to_conic`].
#[derive(Debug)]
pub struct ReducedProblem {
    pub d: u32,
    pub d_a: u32,
    pub k: u32,
    pub catalog: IrrepCatalog,
    /// Generator matrices per catalog entry; `generators[i].matrix(j, i)`
    /// holds the coefficients `⟨ω′|T_ji|ω⟩` consumed by the marginal map.
    pub generators: Vec<IrrepGenerators>,
}

/// Search-space accounting for one compiled problem.
#[derive(Debug, Clone, Serialize)]
pub struct ParameterReport {
    /// `d_A² · Σ_λ D_λ²`: real parameters of the reduced problem.
    pub search_dim: u128,
    /// Side length `d_A·D_λ` of each block, canonical order.
    pub block_dims: Vec<usize>,
    /// Irrep dimension `D_λ` per block.
    pub irrep_dims: Vec<u128>,
    /// `d_A² · d^{2k}`: real parameters of the naive formulation.
    pub naive_dim: BigUint,
}

pub fn compile(d: u32, d_a: u32, k: u32, cap: Option<usize>) -> Result<ReducedProblem> {
    if d < 2 {
        return Err(Error::invalid("local dimension d must be at least 2"));
    }
    if d_a < 1 {
        return Err(Error::invalid("d_A must be at least 1"));
    }
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let cap = cap.unwrap_or(DEFAULT_PARAM_CAP);
    let cat = catalog(k, d)?;
    cat.verify_identities()?;

    let mut total_params = 0usize;
    for e in &cat.entries {
        let dim = usize::try_from(e.dimension)
            .map_err(|_| Error::too_large(format!("block dimension for {}", e.partition)))?;
        let side = dim
            .checked_mul(d_a as usize)
            .ok_or_else(|| Error::too_large("block side length overflows"))?;
        total_params = side
            .checked_mul(side)
            .and_then(|sq| total_params.checked_add(sq))
            .ok_or_else(|| Error::too_large("parameter count overflows"))?;
    }
    if total_params > cap {
        return Err(Error::too_large(format!(
            "reduced problem needs {total_params} real parameters, cap is {cap}"
        )));
    }

    let generators = cat
        .entries
        .iter()
        .map(|e| IrrepGenerators::build(&e.partition, d))
        .collect::<Result<Vec<_>>>()?;

    Ok(ReducedProblem {
        d,
        d_a,
        k,
        catalog: cat,
        generators,
    })
}

impl ReducedProblem {
    /// Side length of each block, `d_A · D_λ`.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| g.dim() * self.d_a as usize)
            .collect()
    }

    /// Side length of the marginal target, `d_A · d`.
    pub fn target_size(&self) -> usize {
        (self.d_a * self.d) as usize
    }

    fn check_blocks(&self, blocks: &[Array2<Complex64>]) -> Result<()> {
        let sizes = self.block_sizes();
        if blocks.len() != sizes.len() {
            return Err(Error::invalid(format!(
                "expected {} blocks, got {}",
                sizes.len(),
                blocks.len()
            )));
        }
        for (b, &n) in blocks.iter().zip(&sizes) {
            if b.dim() != (n, n) {
                return Err(Error::invalid(format!(
                    "block is {:?}, expected {n}×{n}",
                    b.dim()
                )));
            }
        }
        Ok(())
    }

    /// The reduced marginal map Φ: block tuple → candidate marginal on
    /// `A ⊗ B_1`.
    pub fn apply_marginal(&self, blocks: &[Array2<Complex64>]) -> Result<Array2<Complex64>> {
        self.check_blocks(blocks)?;
        let d = self.d as usize;
        let da = self.d_a as usize;
        let n = da * d;
        let k = self.k as f64;
        let mut out = Array2::<Complex64>::zeros((n, n));
        for (idx, entry) in self.catalog.entries.iter().enumerate() {
            let gens = &self.generators[idx];
            let dim = gens.dim();
            let weight = entry.multiplicity as f64 / k;
            let x = &blocks[idx];
            for m in 0..da {
                for nn in 0..da {
                    let sub = x.slice(s![m * dim..(m + 1) * dim, nn * dim..(nn + 1) * dim]);
                    for i in 0..d {
                        for j in 0..d {
                            let t = gens.matrix(j, i);
                            // Σ_{ω,ω′} X[(m,ω),(n,ω′)] · T_ji[ω′,ω]
                            let mut sum = Complex64::new(0.0, 0.0);
                            for w in 0..dim {
                                for wp in 0..dim {
                                    let tv = t[[wp, w]];
                                    if tv.re == 0.0 && tv.im == 0.0 {
                                        continue;
                                    }
                                    sum += sub[[w, wp]] * tv;
                                }
                            }
                            out[[m * d + i, nn * d + j]] += sum * weight;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Adjoint of the marginal map with respect to the Frobenius inner
    /// products: `⟨Φ(X), Y⟩ = ⟨X, Φ†(Y)⟩`.
    pub fn adjoint_marginal(&self, y: &ArrayView2<Complex64>) -> Result<Vec<Array2<Complex64>>> {
        let d = self.d as usize;
        let da = self.d_a as usize;
        let n = da * d;
        if y.dim() != (n, n) {
            return Err(Error::invalid(format!(
                "target is {:?}, expected {n}×{n}",
                y.dim()
            )));
        }
        let k = self.k as f64;
        let mut blocks = Vec::with_capacity(self.catalog.entries.len());
        for (idx, entry) in self.catalog.entries.iter().enumerate() {
            let gens = &self.generators[idx];
            let dim = gens.dim();
            let weight = entry.multiplicity as f64 / k;
            let mut block = Array2::<Complex64>::zeros((da * dim, da * dim));
            for m in 0..da {
                for nn in 0..da {
                    for i in 0..d {
                        for j in 0..d {
                            let yv = y[[m * d + i, nn * d + j]];
                            if yv.re == 0.0 && yv.im == 0.0 {
                                continue;
                            }
                            let t = gens.matrix(j, i);
                            // X_mn += Y[(m,i),(n,j)] · conj(T_ji)[ω′,ω]ᵀ;
                            // generator matrices are real in the GT basis.
                            for w in 0..dim {
                                for wp in 0..dim {
                                    let tv = t[[wp, w]];
                                    if tv.re == 0.0 && tv.im == 0.0 {
                                        continue;
                                    }
                                    block[[m * dim + w, nn * dim + wp]] += yv * tv.conj();
                                }
                            }
                        }
                    }
                }
            }
            blocks.push(block.mapv(|v| v * weight));
        }
        Ok(blocks)
    }

    pub fn parameter_report(&self) -> ParameterReport {
        let da2 = (self.d_a as u128) * (self.d_a as u128);
        ParameterReport {
            search_dim: da2 * self.catalog.search_dim(),
            block_dims: self.block_sizes(),
            irrep_dims: self.catalog.entries.iter().map(|e| e.dimension).collect(),
            naive_dim: BigUint::from(self.d_a) * BigUint::from(self.d_a)
                * BigUint::from(self.d as u64).pow(2 * self.k),
        }
    }

    /// Canonical block labels (Young diagram strings).
    pub fn block_labels(&self) -> Vec<String> {
        self.catalog
            .entries
            .iter()
            .map(|e| e.partition.to_string())
            .collect()
    }

    /// Binds a marginal target, producing the feasibility problem
    /// "find blockwise-PSD X with Φ(X) = ρ".
    pub fn to_conic(self: &Arc<Self>, target: &DensityMatrix) -> Result<ConicProblem> {
        if target.dims() != [self.d_a as usize, self.d as usize] {
            return Err(Error::invalid(format!(
                "target dims {:?} do not match (d_A, d) = ({}, {})",
                target.dims(),
                self.d_a,
                self.d
            )));
        }
        let trace_bound = target.trace().re;
        ConicProblem::new(
            Arc::new(ReducedMap {
                problem: Arc::clone(self),
            }),
            vec![target.data().clone()],
            self.block_labels(),
            trace_bound,
        )
    }

    /// Index labels for exported files: per block, the Young diagram and
    /// the `(a, ω)` composite row labels in order.
    pub fn export_labels(&self) -> SdpaLabels {
        let da = self.d_a as usize;
        let blocks = self
            .catalog
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let gens = &self.generators[i];
                let mut rows = Vec::with_capacity(da * gens.dim());
                for a in 0..da {
                    for p in &gens.basis {
                        rows.push(serde_json::json!({
                            "a": a,
                            "pattern": p.rows(),
                        }));
                    }
                }
                serde_json::json!({
                    "block": i + 1,
                    "partition": e.partition.to_string(),
                    "size_complex": da * gens.dim(),
                    "size_real": 2 * da * gens.dim(),
                    "rows": rows,
                })
            })
            .collect();
        SdpaLabels {
            blocks,
            constraints: Vec::new(),
        }
    }
}

/// [`ConstraintMap`] view of a compiled reduction.
pub struct ReducedMap {
    pub problem: Arc<ReducedProblem>,
}

impl ConstraintMap for ReducedMap {
    fn block_sizes(&self) -> Vec<usize> {
        self.problem.block_sizes()
    }

    fn target_sizes(&self) -> Vec<usize> {
        vec![self.problem.target_size()]
    }

    fn apply(&self, blocks: &[Array2<Complex64>]) -> Vec<Array2<Complex64>> {
        vec![self
            .problem
            .apply_marginal(blocks)
            .expect("shape-checked blocks")]
    }

    fn adjoint(&self, target: &[Array2<Complex64>]) -> Vec<Array2<Complex64>> {
        self.problem
            .adjoint_marginal(&target[0].view())
            .expect("shape-checked target")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, frobenius_inner, frobenius_norm, random_hermitian};
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_blocks(p: &ReducedProblem, rng: &mut ChaCha8Rng) -> Vec<Array2<Complex64>> {
        p.block_sizes()
            .iter()
            .map(|&n| random_hermitian(n, rng))
            .collect()
    }

    #[test]
    fn compile_3_1_3_shapes() {
        let p = compile(3, 1, 3, None).unwrap();
        assert_eq!(p.block_sizes(), vec![10, 8, 1]);
        assert_eq!(p.parameter_report().search_dim, 165);
    }

    #[test]
    fn compile_3_3_3_shapes() {
        let p = compile(3, 3, 3, None).unwrap();
        assert_eq!(p.block_sizes(), vec![30, 24, 3]);
    }

    #[test]
    fn compile_cap_guard() {
        assert!(matches!(
            compile(3, 1, 3, Some(10)),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn k_equals_one_is_identity_problem() {
        let p = compile(2, 1, 1, None).unwrap();
        assert_eq!(p.block_sizes(), vec![2]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_hermitian(2, &mut rng);
        let out = p.apply_marginal(&[x.clone()]).unwrap();
        let diff = &out - &x;
        assert!(frobenius_norm(&diff.view()) < 1e-14);
    }

    #[test]
    fn singlet_block_maps_to_maximally_mixed() {
        // d=2, k=2, d_A=1: unit weight on the antisymmetric block gives
        // I/2 on B (the singlet marginal), via ⟨T_00⟩ = ⟨T_11⟩ = 1 and the
        // multiplicity weight 1/2.
        let p = compile(2, 1, 2, None).unwrap();
        assert_eq!(p.block_sizes(), vec![3, 1]);
        let x_sym = Array2::<Complex64>::zeros((3, 3));
        let mut x_anti = Array2::<Complex64>::zeros((1, 1));
        x_anti[[0, 0]] = c(1.0, 0.0);
        let out = p.apply_marginal(&[x_sym, x_anti]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 0.5 } else { 0.0 };
                assert!((out[[i, j]].re - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn highest_weight_block_maps_to_ground_projector() {
        // Unit weight on |(2,0)⟩⟨(2,0)| of the symmetric block gives
        // |0⟩⟨0|: ⟨T_00⟩ = 2 scaled by 1/2.
        let p = compile(2, 1, 2, None).unwrap();
        let mut x_sym = Array2::<Complex64>::zeros((3, 3));
        x_sym[[0, 0]] = c(1.0, 0.0);
        let x_anti = Array2::<Complex64>::zeros((1, 1));
        let out = p.apply_marginal(&[x_sym, x_anti]).unwrap();
        assert!((out[[0, 0]].re - 1.0).abs() < 1e-14);
        for (i, j) in [(0, 1), (1, 0), (1, 1)] {
            assert!(out[[i, j]].norm() < 1e-14);
        }
    }

    #[test]
    fn trace_compatibility() {
        // Tr Φ(X) = Σ_λ m_λ Tr X^λ, a consequence of Σ_i T_ii = k·I.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (d, da, k) in [(2, 1, 2), (2, 2, 3), (3, 1, 3)] {
            let p = compile(d, da, k, None).unwrap();
            for _ in 0..100 {
                let blocks = random_blocks(&p, &mut rng);
                let out = p.apply_marginal(&blocks).unwrap();
                let lhs: Complex64 = (0..out.nrows()).map(|i| out[[i, i]]).sum();
                let rhs: f64 = p
                    .catalog
                    .entries
                    .iter()
                    .zip(&blocks)
                    .map(|(e, b)| {
                        e.multiplicity as f64
                            * (0..b.nrows()).map(|i| b[[i, i]].re).sum::<f64>()
                    })
                    .sum();
                assert!((lhs.re - rhs).abs() < 1e-10);
                assert!(lhs.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn marginal_preserves_hermiticity() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for (d, da, k) in [(2, 1, 2), (2, 2, 3), (3, 1, 3), (3, 2, 2)] {
            let p = compile(d, da, k, None).unwrap();
            for _ in 0..20 {
                let blocks = random_blocks(&p, &mut rng);
                let out = p.apply_marginal(&blocks).unwrap();
                assert!(crate::linalg::hermiticity_defect(&out.view()) < 1e-12);
            }
        }
    }

    #[test]
    fn adjoint_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = compile(2, 2, 3, None).unwrap();
        for _ in 0..25 {
            let x = random_blocks(&p, &mut rng);
            let y = random_hermitian(p.target_size(), &mut rng);
            let fx = p.apply_marginal(&x).unwrap();
            let aty = p.adjoint_marginal(&y.view()).unwrap();
            let lhs = frobenius_inner(&fx.view(), &y.view());
            let rhs: Complex64 = x
                .iter()
                .zip(&aty)
                .map(|(a, b)| frobenius_inner(&a.view(), &b.view()))
                .sum();
            assert!((lhs - rhs).norm() < 1e-10, "lhs={lhs}, rhs={rhs}");
        }
    }

    #[test]
    fn adjoint_of_zero_and_identity() {
        let p = compile(2, 2, 3, None).unwrap();
        let zero = Array2::<Complex64>::zeros((4, 4));
        for b in p.adjoint_marginal(&zero.view()).unwrap() {
            assert!(frobenius_norm(&b.view()) < 1e-15);
        }
        // Φ†(I) = m_λ · I on each block, since Σ_i T_ii = k·I.
        let eye = Array2::<Complex64>::eye(4);
        let blocks = p.adjoint_marginal(&eye.view()).unwrap();
        for (b, e) in blocks.iter().zip(&p.catalog.entries) {
            let expect = Array2::<Complex64>::eye(b.nrows()).mapv(|v| v * e.multiplicity as f64);
            let diff = b - &expect;
            assert!(frobenius_norm(&diff.view()) < 1e-12);
        }
    }

    #[test]
    fn parameter_reports_match_published_table() {
        let p = compile(3, 1, 4, None).unwrap();
        let r = p.parameter_report();
        assert_eq!(r.search_dim, 495);
        assert_eq!(r.naive_dim, BigUint::from(6561u32));

        let p = compile(4, 1, 5, None).unwrap();
        let r = p.parameter_report();
        assert_eq!(r.search_dim, 15504);
        assert_eq!(r.naive_dim, BigUint::from(1048576u32));

        let p = compile(3, 1, 6, None).unwrap();
        let r = p.parameter_report();
        assert_eq!(r.irrep_dims, vec![28, 35, 27, 10, 10, 8, 1]);
        assert_eq!(r.search_dim, 3003);
    }
}
