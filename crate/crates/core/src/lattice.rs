//! Intersection lattices and vanishing-cycle configurations.
//!
//! A lattice is a rational vector space with a skew pairing `<a,b> = a^T P b`.
//! Skewness is enforced at construction: the geometric setting forces
//! `<d,d> = 0` for every cycle, and a symmetric-pairing mode is deliberately
//! not offered. Cycle lists may be linearly dependent; dependence is reported,
//! never rejected.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qmat::{dot, QMat, Rat};

/// Ambient rational vector space with a skew-symmetric pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    rank: usize,
    pairing: QMat,
    nondegenerate: bool,
}

impl IntersectionLattice {
    pub fn new(pairing: QMat) -> Result<Self> {
        if pairing.rows() != pairing.cols() {
            return Err(Error::NotSquare { rows: pairing.rows(), cols: pairing.cols() });
        }
        let rank = pairing.rows();
        if rank == 0 {
            return Err(Error::RankZero);
        }
        if !pairing.is_skew() {
            return Err(Error::NotSkew);
        }
        let nondegenerate = !pairing.det()?.is_zero();
        Ok(IntersectionLattice { rank, pairing, nondegenerate })
    }

    /// Standard symplectic lattice of rank `2m`: block form [[0, I], [-I, 0]].
    pub fn symplectic(m: usize) -> Self {
        let n = 2 * m;
        let mut p = QMat::zeros(n, n);
        for i in 0..m {
            p[(i, m + i)] = crate::qmat::q(1);
            p[(m + i, i)] = crate::qmat::q(-1);
        }
        Self::new(p).expect("symplectic form is skew")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pairing_matrix(&self) -> &QMat {
        &self.pairing
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    /// The pairing `<a,b> = a^T P b`, exact.
    pub fn pair(&self, a: &[Rat], b: &[Rat]) -> Result<Rat> {
        if a.len() != self.rank || b.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "pair: vectors of length {}/{} in rank-{} lattice",
                a.len(),
                b.len(),
                self.rank
            )));
        }
        Ok(dot(a, &self.pairing.mul_vec(b)))
    }

    /// The covector `<.,b>` as a row vector, i.e. `(P b)^T`.
    pub fn covector(&self, b: &[Rat]) -> Vec<Rat> {
        self.pairing.mul_vec(b)
    }
}

/// A list of vanishing cycles in an intersection lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleConfig {
    lattice: IntersectionLattice,
    cycles: Vec<Vec<Rat>>,
}

impl CycleConfig {
    pub fn new(lattice: IntersectionLattice, cycles: Vec<Vec<Rat>>) -> Result<Self> {
        for (k, c) in cycles.iter().enumerate() {
            if c.len() != lattice.rank() {
                return Err(Error::DimensionMismatch(format!(
                    "cycle {k} has length {}, lattice rank is {}",
                    c.len(),
                    lattice.rank()
                )));
            }
            if c.iter().all(Zero::is_zero) {
                return Err(Error::ZeroCycle(k));
            }
            // Automatic from skewness, asserted anyway.
            let self_pair = lattice.pair(c, c)?;
            if !self_pair.is_zero() {
                return Err(Error::InternalInvariant(format!(
                    "cycle {k} has nonzero self-pairing {self_pair}"
                )));
            }
        }
        Ok(CycleConfig { lattice, cycles })
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Number of cycles `r`.
    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycles(&self) -> &[Vec<Rat>] {
        &self.cycles
    }

    pub fn cycle(&self, k: usize) -> Result<&[Rat]> {
        self.cycles
            .get(k)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange { index: k, len: self.cycles.len() })
    }

    /// Replaces cycle `k`, revalidating.
    pub fn with_cycle(&self, k: usize, cycle: Vec<Rat>) -> Result<Self> {
        if k >= self.cycles.len() {
            return Err(Error::IndexOutOfRange { index: k, len: self.cycles.len() });
        }
        let mut cycles = self.cycles.clone();
        cycles[k] = cycle;
        Self::new(self.lattice.clone(), cycles)
    }

    /// True when the cycle list is linearly dependent (reported, not rejected).
    pub fn cycles_dependent(&self) -> bool {
        crate::qmat::span_rank(&self.cycles) < self.cycles.len()
    }

    /// Matrix whose rows are the covectors `<., d_k>`.
    pub fn covector_matrix(&self) -> QMat {
        QMat::from_rows(self.cycles.iter().map(|c| self.lattice.covector(c)).collect())
            .expect("cycles validated rectangular")
    }
}

/// Pairwise intersection numbers `lambda_ij = <d_i, d_j>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix(QMat);

impl IntersectionMatrix {
    pub fn matrix(&self) -> &QMat {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.0[(i, j)]
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    /// True when some off-diagonal entry is nonzero.
    pub fn has_interaction(&self) -> bool {
        let r = self.0.rows();
        (0..r).any(|i| (i + 1..r).any(|j| !self.0[(i, j)].is_zero()))
    }
}

/// Computes `Lambda = (<d_i, d_j>)`, skew with zero diagonal.
pub fn intersection_matrix(config: &CycleConfig) -> Result<IntersectionMatrix> {
    let r = config.num_cycles();
    let mut m = QMat::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            m[(i, j)] = config.lattice().pair(config.cycle(i)?, config.cycle(j)?)?;
        }
    }
    if !m.is_skew() {
        return Err(Error::InternalInvariant("intersection matrix not skew".into()));
    }
    Ok(IntersectionMatrix(m))
}

/// Rational basis of `{a : <a, d_k> = 0 for all k}`, the invariant sector.
///
/// Dimension is `n - rank{P d_k}` by rank-nullity. With no cycles this is the
/// full space.
pub fn orthogonal_complement(config: &CycleConfig) -> Vec<Vec<Rat>> {
    if config.num_cycles() == 0 {
        let n = config.rank();
        return (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = crate::qmat::q(1);
                v
            })
            .collect();
    }
    config.covector_matrix().kernel_basis()
}
