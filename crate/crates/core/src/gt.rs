//! Gelfand-Tsetlin bases of `u(d)` irreps and the generator matrices in
//! those bases.
//!
//! A pattern is a triangular array with `d` rows: the top row is the
//! highest weight `λ` padded to length `d`, each row below is one entry
//! shorter, and adjacent rows interlace. Patterns label an orthonormal
//! basis of the irrep via the subgroup chain
//! `u(d) ⊃ u(d−1) ⊃ … ⊃ u(1)`; the row sums determine the weight. Weight
//! multiplicities inside one irrep are *not* collapsed — the basis index is
//! the pattern, not the weight.
//!
//! Matrix elements of the simple raising generators `T_{a,a+1}` are the
//! classical square-root product formulas, evaluated in double precision
//! with the non-negative-square-root phase convention. Lowering generators
//! are their transposes, diagonal generators read off the weights, and all
//! remaining `T_ab` follow from nested commutators
//! `T_ab = [T_ac, T_cb]` routed through the intermediate index closest to
//! `b`, which makes the construction bit-reproducible.

use ndarray::Array2;
use num_complex::Complex64;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// One Gelfand-Tsetlin pattern. `rows[0]` is the top row (length `d`),
/// `rows[r]` has length `d − r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GtPattern {
    rows: Vec<Vec<u32>>,
}

impl GtPattern {
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Number of levels `d`.
    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    /// Entry at 1-based position `i` of the 1-based level `l` (levels count
    /// from the bottom: level `l` has `l` entries).
    fn entry(&self, i: usize, l: usize) -> i64 {
        self.rows[self.depth() - l][i - 1] as i64
    }

    /// Row sum of level `l` (1-based); level 0 has sum 0.
    fn level_sum(&self, l: usize) -> i64 {
        if l == 0 {
            0
        } else {
            self.rows[self.depth() - l].iter().map(|&x| x as i64).sum()
        }
    }

    /// Weight vector: component `a` (0-based) is the difference of adjacent
    /// level sums. Components are non-negative and sum to `k`.
    pub fn weight(&self) -> Vec<u32> {
        (1..=self.depth())
            .map(|l| (self.level_sum(l) - self.level_sum(l - 1)) as u32)
            .collect()
    }

    /// Top-to-bottom concatenation of the rows, used for ordering and as a
    /// hash key.
    pub fn flatten(&self) -> Vec<u32> {
        self.rows.iter().flatten().copied().collect()
    }
}

/// All patterns with top row `λ` (padded to length `d`), ordered by
/// descending lexicographic comparison of the flattened triangle.
pub fn enumerate_gt_patterns(lambda: &Partition, d: u32) -> Result<Vec<GtPattern>> {
    if lambda.num_rows() > d as usize {
        return Err(Error::invalid(format!(
            "partition {lambda} has more than {d} rows"
        )));
    }
    let top = lambda.padded(d as usize);
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![top];
    fill_rows(&mut rows, d as usize, &mut out);
    Ok(out)
}

fn fill_rows(rows: &mut Vec<Vec<u32>>, d: usize, out: &mut Vec<GtPattern>) {
    if rows.len() == d {
        out.push(GtPattern { rows: rows.clone() });
        return;
    }
    let upper = rows.last().unwrap().clone();
    let len = upper.len() - 1;
    let mut next = vec![0u32; len];
    // Descending choice at every position gives globally descending
    // flattened order.
    fn rec(
        upper: &[u32],
        next: &mut Vec<u32>,
        pos: usize,
        rows: &mut Vec<Vec<u32>>,
        d: usize,
        out: &mut Vec<GtPattern>,
    ) {
        if pos == next.len() {
            rows.push(next.clone());
            fill_rows(rows, d, out);
            rows.pop();
            return;
        }
        let hi = upper[pos];
        let lo = upper[pos + 1];
        for v in (lo..=hi).rev() {
            next[pos] = v;
            rec(upper, next, pos + 1, rows, d, out);
        }
    }
    rec(&upper, &mut next, 0, rows, d, out);
}

/// Shifted entry `σ_{i,l} = m_{i,l} − i` used by the matrix-element
/// formulas.
fn sigma(p: &GtPattern, i: usize, l: usize) -> i64 {
    p.entry(i, l) - i as i64
}

/// Whether entry (position `j`, level `l`) may be raised by one without
/// violating interlacing.
fn raise_valid(p: &GtPattern, j: usize, l: usize) -> bool {
    // Bound from the level above.
    if p.entry(j, l) + 1 > p.entry(j, l + 1) {
        return false;
    }
    // Bound from the level below (position j−1 there).
    if l >= 2 && j >= 2 && p.entry(j, l) + 1 > p.entry(j - 1, l - 1) {
        return false;
    }
    true
}

/// Matrix element `⟨M + δ_{j,l} | T_{l−1,l} | M⟩` of the simple raising
/// generator, non-negative by convention. Caller guarantees the raise is
/// valid.
fn raise_coeff(p: &GtPattern, j: usize, l: usize) -> f64 {
    let s_jl = sigma(p, j, l);
    let mut num: i128 = 1;
    for i in 1..=(l + 1) {
        num *= (sigma(p, i, l + 1) - s_jl) as i128;
    }
    if l >= 2 {
        for i in 1..l {
            num *= (sigma(p, i, l - 1) - s_jl - 1) as i128;
        }
    }
    let mut den: i128 = 1;
    for i in 1..=l {
        if i == j {
            continue;
        }
        let diff = sigma(p, i, l) - s_jl;
        den *= (diff * (diff - 1)) as i128;
    }
    ((num.unsigned_abs() as f64) / (den.unsigned_abs() as f64)).sqrt()
}

/// The complete set of `u(d)` generator matrices on one irrep in its GT
/// basis.
#[derive(Debug, Clone)]
pub struct IrrepGenerators {
    pub lambda: Partition,
    pub d: u32,
    pub basis: Vec<GtPattern>,
    /// `matrices[a*d + b]` represents the collective generator built from
    /// the single-site `|a⟩⟨b|`.
    matrices: Vec<Array2<Complex64>>,
}

impl IrrepGenerators {
    pub fn build(lambda: &Partition, d: u32) -> Result<Self> {
        let basis = enumerate_gt_patterns(lambda, d)?;
        let dim = basis.len();
        let du = d as usize;
        let index: HashMap<Vec<u32>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, p)| (p.flatten(), i))
            .collect();

        let mut mats: Vec<Array2<Complex64>> =
            vec![Array2::zeros((dim, dim)); du * du];

        // Diagonal generators from pattern weights.
        for (idx, p) in basis.iter().enumerate() {
            for (a, &w) in p.weight().iter().enumerate() {
                mats[a * du + a][[idx, idx]] = Complex64::new(w as f64, 0.0);
            }
        }

        // Simple raising T_{l−1,l} on level l, lowering as the transpose.
        for l in 1..du {
            let a = l - 1;
            let b = l;
            let mut raise = Array2::<Complex64>::zeros((dim, dim));
            for (q, p) in basis.iter().enumerate() {
                for j in 1..=l {
                    if !raise_valid(p, j, l) {
                        continue;
                    }
                    let coeff = raise_coeff(p, j, l);
                    let mut rows = p.rows.clone();
                    rows[du - l][j - 1] += 1;
                    let raised = GtPattern { rows };
                    let target = *index
                        .get(&raised.flatten())
                        .expect("raised pattern must be in the basis");
                    raise[[target, q]] += Complex64::new(coeff, 0.0);
                }
            }
            mats[b * du + a] = raise.t().to_owned();
            mats[a * du + b] = raise;
        }

        // Long-range generators by nested commutators, always routed
        // through the intermediate index closest to b.
        for width in 2..du {
            for a in 0..(du - width) {
                let b = a + width;
                let up = commutator(&mats[a * du + (b - 1)], &mats[(b - 1) * du + b]);
                let down = commutator(&mats[b * du + (b - width + 1)], &mats[(b - width + 1) * du + (b - width)]);
                mats[a * du + b] = up;
                mats[b * du + (b - width)] = down;
            }
        }

        Ok(IrrepGenerators {
            lambda: lambda.clone(),
            d,
            basis,
            matrices: mats,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of the collective generator for `|a⟩⟨b|`.
    pub fn matrix(&self, a: usize, b: usize) -> &Array2<Complex64> {
        &self.matrices[a * self.d as usize + b]
    }
}

fn commutator(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    a.dot(b) - b.dot(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, weyl_dimension};
    use ndarray::Array2;

    fn part(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn fundamental_irrep_patterns() {
        let ps = enumerate_gt_patterns(&part(&[1]), 3).unwrap();
        assert_eq!(ps.len(), 3);
        let weights: Vec<Vec<u32>> = ps.iter().map(|p| p.weight()).collect();
        assert_eq!(
            weights,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
    }

    #[test]
    fn pattern_count_2_1_in_u3() {
        let ps = enumerate_gt_patterns(&part(&[2, 1]), 3).unwrap();
        assert_eq!(ps.len(), 8);
        // Weight multiset: (1,1,1) appears twice, six others once.
        let mut weights: Vec<Vec<u32>> = ps.iter().map(|p| p.weight()).collect();
        weights.sort();
        assert_eq!(
            weights,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 1, 1],
                vec![1, 1, 1],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
    }

    #[test]
    fn symmetric_qubit_patterns() {
        let ps = enumerate_gt_patterns(&part(&[2]), 2).unwrap();
        let weights: Vec<Vec<u32>> = ps.iter().map(|p| p.weight()).collect();
        assert_eq!(weights, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn highest_pattern_weights() {
        let ps = enumerate_gt_patterns(&part(&[4]), 3).unwrap();
        assert_eq!(ps[0].weight(), vec![4, 0, 0]);
        let det = enumerate_gt_patterns(&part(&[1, 1, 1]), 3).unwrap();
        assert_eq!(det.len(), 1);
        assert_eq!(det[0].weight(), vec![1, 1, 1]);
    }

    #[test]
    fn pattern_count_matches_weyl_dimension() {
        for k in 1..=5u32 {
            for d in 2..=4u32 {
                for lam in enumerate_partitions(k, d).unwrap() {
                    let n = enumerate_gt_patterns(&lam, d).unwrap().len();
                    assert_eq!(n as u128, weyl_dimension(&lam, d).unwrap());
                }
            }
        }
    }

    #[test]
    fn too_many_rows_rejected() {
        assert!(enumerate_gt_patterns(&part(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn fundamental_generators_are_elementary_matrices() {
        for d in 2..=4u32 {
            let g = IrrepGenerators::build(&part(&[1]), d).unwrap();
            for a in 0..d as usize {
                for b in 0..d as usize {
                    let mut e = Array2::<Complex64>::zeros((d as usize, d as usize));
                    e[[a, b]] = Complex64::new(1.0, 0.0);
                    let diff = g.matrix(a, b) - &e;
                    assert!(
                        crate::linalg::frobenius_norm(&diff.view()) < 1e-14,
                        "T_{a}{b} differs from elementary matrix at d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_boxes_one_row_qubit_raising() {
        // Basis order (2,0), (1,1), (0,2): raising has √2 on the
        // superdiagonal, frozen from symmetrizing two explicit qubit
        // tensors (see tests/schur_weyl.rs for the general oracle).
        let g = IrrepGenerators::build(&part(&[2]), 2).unwrap();
        let t01 = g.matrix(0, 1);
        let s = 2f64.sqrt();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if (i, j) == (0, 1) || (i, j) == (1, 2) {
                    s
                } else {
                    0.0
                };
                assert!((t01[[i, j]].re - expect).abs() < 1e-14);
                assert!(t01[[i, j]].im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn antisymmetric_qubit_pair_is_trivial() {
        let g = IrrepGenerators::build(&part(&[1, 1]), 2).unwrap();
        assert_eq!(g.dim(), 1);
        assert!((g.matrix(0, 0)[[0, 0]].re - 1.0).abs() < 1e-15);
        assert!((g.matrix(1, 1)[[0, 0]].re - 1.0).abs() < 1e-15);
        assert!(g.matrix(0, 1)[[0, 0]].norm() < 1e-15);
        assert!(g.matrix(1, 0)[[0, 0]].norm() < 1e-15);
    }

    fn all_irreps(max_k: u32, max_d: u32) -> Vec<IrrepGenerators> {
        let mut out = Vec::new();
        for k in 1..=max_k {
            for d in 2..=max_d {
                for lam in enumerate_partitions(k, d).unwrap() {
                    out.push(IrrepGenerators::build(&lam, d).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn hermiticity_pairing() {
        for g in all_irreps(5, 4) {
            let d = g.d as usize;
            for a in 0..d {
                for b in 0..d {
                    let tab = g.matrix(a, b);
                    let tba = g.matrix(b, a);
                    let n = g.dim();
                    for i in 0..n {
                        for j in 0..n {
                            let diff = (tab[[i, j]] - tba[[j, i]].conj()).norm();
                            assert!(
                                diff < 1e-12,
                                "T_{a}{b} vs T_{b}{a}† at λ={}, d={}",
                                g.lambda,
                                g.d
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn commutation_relations() {
        // [T_ab, T_cd] = δ_bc T_ad − δ_da T_cb
        for g in all_irreps(5, 4) {
            let d = g.d as usize;
            let mut worst = 0.0f64;
            for a in 0..d {
                for b in 0..d {
                    for cc in 0..d {
                        for dd in 0..d {
                            let lhs = commutator(g.matrix(a, b), g.matrix(cc, dd));
                            let mut rhs = Array2::<Complex64>::zeros((g.dim(), g.dim()));
                            if b == cc {
                                rhs = rhs + g.matrix(a, dd);
                            }
                            if dd == a {
                                rhs = rhs - g.matrix(cc, b);
                            }
                            let diff = &lhs - &rhs;
                            worst = worst.max(
                                diff.iter().map(|z| z.norm()).fold(0.0, f64::max),
                            );
                        }
                    }
                }
            }
            assert!(
                worst < 1e-10,
                "commutator residual {worst:.3e} at λ={}, d={}",
                g.lambda,
                g.d
            );
        }
    }

    #[test]
    fn trace_generator_is_box_count() {
        for g in all_irreps(5, 4) {
            let d = g.d as usize;
            let k = g.lambda.size() as f64;
            let mut total = Array2::<Complex64>::zeros((g.dim(), g.dim()));
            for a in 0..d {
                total = total + g.matrix(a, a);
            }
            let expect = Array2::<Complex64>::eye(g.dim()).mapv(|x| x * k);
            let diff = &total - &expect;
            assert!(crate::linalg::frobenius_norm(&diff.view()) < 1e-10);
        }
    }

    #[test]
    fn diagonal_generators_carry_weights() {
        for g in all_irreps(4, 3) {
            let d = g.d as usize;
            for (idx, p) in g.basis.iter().enumerate() {
                let w = p.weight();
                for a in 0..d {
                    let m = g.matrix(a, a);
                    assert!((m[[idx, idx]].re - w[a] as f64).abs() < 1e-12);
                    for j in 0..g.dim() {
                        if j != idx {
                            assert!(m[[idx, j]].norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_casimir_is_scalar() {
        // Σ_ab T_ab T_ba acts as Σ_i λ_i (λ_i + d + 1 − 2i) times identity.
        for g in all_irreps(5, 4) {
            let d = g.d as usize;
            let n = g.dim();
            let mut cas = Array2::<Complex64>::zeros((n, n));
            for a in 0..d {
                for b in 0..d {
                    cas = cas + g.matrix(a, b).dot(g.matrix(b, a));
                }
            }
            let expect: f64 = g
                .lambda
                .padded(d)
                .iter()
                .enumerate()
                .map(|(i0, &l)| {
                    let i = (i0 + 1) as f64;
                    l as f64 * (l as f64 + d as f64 + 1.0 - 2.0 * i)
                })
                .sum();
            let mut worst = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    let e = if i == j {
                        Complex64::new(expect, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    worst = worst.max((cas[[i, j]] - e).norm());
                }
            }
            assert!(
                worst < 1e-10,
                "Casimir residual {worst:.3e} at λ={}, d={}",
                g.lambda,
                g.d
            );
        }
    }
}
