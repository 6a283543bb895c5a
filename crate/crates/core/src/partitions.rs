//! Young diagrams and the two dimension functions attached to them.
//!
//! A partition `λ = [λ_1 ≥ λ_2 ≥ …]` of `k` simultaneously labels an
//! irreducible representation of the symmetric group `S_k` (of dimension
//! `m_λ`, the number of standard tableaux) and one of the unitary group
//! `U(d)` (of dimension `D_λ`, the number of semistandard tableaux with
//! entries in `{1..d}`). These two numbers size every object downstream:
//! `m_λ` is the multiplicity of the `U(d)` irrep inside the k-fold tensor
//! power and `D_λ` is the side length of the corresponding variable block.
//!
//! All dimension arithmetic is exact: products are accumulated in
//! `BigUint` and converted to `u128` at the end, so the two identities
//! `Σ m_λ·D_λ = d^k` and `Σ D_λ² = C(d²−1+k, k)` can be checked as integer
//! equalities.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A Young diagram: weakly decreasing positive row lengths.
///
/// Trailing zero rows are stripped at construction so each diagram has a
/// single canonical representation. The empty partition is not allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    rows: Vec<u32>,
}

impl Partition {
    pub fn new(rows: impl Into<Vec<u32>>) -> Result<Self> {
        let mut rows: Vec<u32> = rows.into();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.is_empty() {
            return Err(Error::invalid("partition must contain at least one box"));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "partition rows must be weakly decreasing, got {rows:?}"
            )));
        }
        Ok(Partition { rows })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Total number of boxes `k`.
    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// Row lengths padded with zeros to length `d`.
    pub fn padded(&self, d: usize) -> Vec<u32> {
        let mut v = self.rows.clone();
        v.resize(d.max(v.len()), 0);
        v
    }

    /// Column lengths (the conjugate diagram).
    pub fn conjugate_rows(&self) -> Vec<u32> {
        let cols = self.rows[0] as usize;
        (0..cols)
            .map(|c| self.rows.iter().filter(|&&r| r as usize > c).count() as u32)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of `k` with at most `d` rows, lexicographically decreasing.
///
/// The order is part of the output contract: block indices derived from it
/// must be stable across runs and in exported files.
pub fn enumerate_partitions(k: u32, d: u32) -> Result<Vec<Partition>> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if d < 1 {
        return Err(Error::invalid("d must be at least 1"));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(k, k, d, &mut current, &mut out);
    Ok(out)
}

fn descend(remaining: u32, max_part: u32, rows_left: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { rows: current.clone() });
        return;
    }
    if rows_left == 0 {
        return;
    }
    let hi = remaining.min(max_part);
    // Largest first part first gives lexicographically decreasing output.
    for part in (1..=hi).rev() {
        current.push(part);
        descend(remaining - part, part, rows_left - 1, current, out);
        current.pop();
    }
}

/// Factorial as an exact big integer.
fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an exact big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

fn to_u128(x: BigUint, what: &str) -> Result<u128> {
    x.to_u128()
        .ok_or_else(|| Error::too_large(format!("{what} exceeds 128-bit integer range")))
}

/// Multiplicity `m_λ`: the number of standard Young tableaux of shape `λ`,
/// computed by the hook-length formula `k! / Π hooks`. Equals the dimension
/// of the `S_k` irrep labelled by `λ`.
pub fn multiplicity(p: &Partition) -> u128 {
    let k = p.size() as u64;
    let cols = p.conjugate_rows();
    let mut hooks = BigUint::one();
    for (i, &len) in p.rows().iter().enumerate() {
        for j in 0..len as usize {
            let arm = len as u64 - 1 - j as u64;
            let leg = cols[j] as u64 - 1 - i as u64;
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    let m = factorial(k) / hooks;
    to_u128(m, "multiplicity").expect("standard tableau count exceeds u128")
}

/// Weyl dimension `D_λ` of the `U(d)` irrep with highest weight `λ`:
/// `Π_{1≤i<j≤d} (λ_i − λ_j + j − i)/(j − i)` with missing rows read as zero.
/// Equals the number of semistandard tableaux of shape `λ` with entries in
/// `{1..d}`.
pub fn weyl_dimension(p: &Partition, d: u32) -> Result<u128> {
    if p.num_rows() > d as usize {
        return Err(Error::invalid(format!(
            "partition {p} has more than {d} rows"
        )));
    }
    let lam = p.padded(d as usize);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d as usize {
        for j in (i + 1)..d as usize {
            let a = lam[i] as u64 + j as u64 - i as u64 - lam[j] as u64;
            num *= BigUint::from(a);
            den *= BigUint::from((j - i) as u64);
        }
    }
    to_u128(num / den, "Weyl dimension")
}

/// One catalog row: a diagram together with its two dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub partition: Partition,
    pub multiplicity: u128,
    pub dimension: u128,
}

/// Every partition of `k` with at most `d` rows, in canonical order, with
/// `m_λ` and `D_λ` attached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepCatalog {
    pub d: u32,
    pub k: u32,
    pub entries: Vec<CatalogEntry>,
}

pub fn catalog(k: u32, d: u32) -> Result<IrrepCatalog> {
    if d < 2 {
        return Err(Error::invalid("local dimension d must be at least 2"));
    }
    let entries = enumerate_partitions(k, d)?
        .into_iter()
        .map(|p| {
            let dim = weyl_dimension(&p, d)?;
            Ok(CatalogEntry {
                multiplicity: multiplicity(&p),
                dimension: dim,
                partition: p,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IrrepCatalog { d, k, entries })
}

impl IrrepCatalog {
    /// `Σ_λ m_λ · D_λ`, which must equal `d^k`.
    pub fn total_tensor_dim(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| BigUint::from(e.multiplicity) * BigUint::from(e.dimension))
            .sum()
    }

    /// `Σ_λ D_λ²`: the number of complex parameters in the reduced search
    /// space (per unit of subsystem A).
    pub fn search_dim(&self) -> u128 {
        self.entries.iter().map(|e| e.dimension * e.dimension).sum()
    }

    /// Checks both dimension identities exactly. Returns an internal error
    /// if either fails; used as a self-test after construction.
    pub fn verify_identities(&self) -> Result<()> {
        let dk = BigUint::from(self.d as u64).pow(self.k);
        if self.total_tensor_dim() != dk {
            return Err(Error::internal(format!(
                "Σ m·D mismatch for d={}, k={}",
                self.d, self.k
            )));
        }
        let rhs = binomial((self.d as u64) * (self.d as u64) - 1 + self.k as u64, self.k as u64);
        if BigUint::from(self.search_dim()) != rhs {
            return Err(Error::internal(format!(
                "Σ D² mismatch for d={}, k={}",
                self.d, self.k
            )));
        }
        Ok(())
    }
}
