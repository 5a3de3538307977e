//! Canonical cycle configurations used across tests, docs, and the CLI,
//! plus a deterministic random-configuration sampler for property checks.

use num_traits::Zero;
use rand::Rng;

use crate::lattice::{CycleConfig, IntersectionLattice};
use crate::qmat::{q, QMat, Rat};

fn e(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = q(1);
    v
}

/// Single node in the rank-4 symplectic lattice: delta = e0.
pub fn single_node() -> CycleConfig {
    CycleConfig::new(IntersectionLattice::symplectic(2), vec![e(4, 0)]).expect("valid preset")
}

/// Two interacting nodes with lambda_12 = 1 (cycles e0, e2 pairing to 1).
pub fn a2() -> CycleConfig {
    CycleConfig::new(IntersectionLattice::symplectic(2), vec![e(4, 0), e(4, 2)])
        .expect("valid preset")
}

/// Two non-interacting nodes in disjoint symplectic blocks: lambda_12 = 0.
pub fn a1xa1() -> CycleConfig {
    CycleConfig::new(IntersectionLattice::symplectic(2), vec![e(4, 0), e(4, 1)])
        .expect("valid preset")
}

/// Two cycles with lambda_12 = 2 (braid relation fails).
pub fn lambda2() -> CycleConfig {
    let two_e2: Vec<Rat> = e(4, 2).iter().map(|x| x * q(2)).collect();
    CycleConfig::new(IntersectionLattice::symplectic(2), vec![e(4, 0), two_e2])
        .expect("valid preset")
}

/// Three nodes with lambda_12 = 1 and node 3 disjoint: components {1,2},{3}.
pub fn chain_plus_isolated() -> CycleConfig {
    CycleConfig::new(
        IntersectionLattice::symplectic(3),
        vec![e(6, 0), e(6, 3), e(6, 1)],
    )
    .expect("valid preset")
}

/// Samples a random skew configuration: rank in 2..=max_rank, 1..=max_cycles
/// cycles, integer entries in [-3, 3]. Cycles are resampled until each has a
/// nonzero covector (so every node carries a rank-one operator).
/// Deterministic for a fixed RNG stream.
pub fn random_config(rng: &mut impl Rng, max_rank: usize, max_cycles: usize) -> CycleConfig {
    assert!(max_rank >= 2 && max_cycles >= 1);
    'outer: loop {
        let n = rng.gen_range(2..=max_rank);
        let mut p = QMat::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v: i64 = rng.gen_range(-3..=3);
                p[(i, j)] = q(v);
                p[(j, i)] = q(-v);
            }
        }
        let Ok(lat) = IntersectionLattice::new(p) else {
            continue;
        };
        let r = rng.gen_range(1..=max_cycles);
        let mut cycles = Vec::with_capacity(r);
        for _ in 0..r {
            let mut found = false;
            for _attempt in 0..50 {
                let v: Vec<Rat> = (0..n).map(|_| q(rng.gen_range(-3..=3))).collect();
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                if lat.covector(&v).iter().all(Zero::is_zero) {
                    continue;
                }
                cycles.push(v);
                found = true;
                break;
            }
            if !found {
                // Pairing too degenerate to host this many cycles; resample.
                continue 'outer;
            }
        }
        match CycleConfig::new(lat, cycles) {
            Ok(cfg) => return cfg,
            Err(_) => continue,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::intersection_matrix;
    use crate::qmat::q;

    #[test]
    fn preset_intersection_numbers() {
        assert_eq!(intersection_matrix(&a2()).unwrap().entry(0, 1), &q(1));
        assert_eq!(intersection_matrix(&a1xa1()).unwrap().entry(0, 1), &q(0));
        assert_eq!(intersection_matrix(&lambda2()).unwrap().entry(0, 1), &q(2));
        let chain = intersection_matrix(&chain_plus_isolated()).unwrap();
        assert_eq!(chain.entry(0, 1), &q(1));
        assert_eq!(chain.entry(0, 2), &q(0));
        assert_eq!(chain.entry(1, 2), &q(0));
    }
}
