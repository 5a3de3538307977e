//! Fock-Goncharov coordinates from central charges and their cluster mutation
//! at the conifold, cross-linked to Hurwitz cycle mutation.
//!
//! The tension between multiplicative cluster mutation `X1 (1 + X2)` and
//! naive linear central-charge transport is surfaced as a comparison report,
//! not resolved: both values are reported side by side and no equality is
//! asserted.

use num_complex::Complex64 as C64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{intersection_matrix, CycleConfig};
use crate::operators::hurwitz_mutate;
use crate::qmat::Rat;

fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("rational fits f64 for coordinate transport")
}

/// Exponentiated central charges `X_k = exp(2 pi i Z_k / z)`.
#[derive(Clone, Debug)]
pub struct ClusterState {
    /// Present until a mutation discards them (mutated states carry
    /// coordinates only).
    pub charges: Option<Vec<C64>>,
    pub z: C64,
    pub coords: Vec<C64>,
    /// Set when a mutation degenerates a coordinate to zero (X2 = -1).
    pub degenerate: bool,
}

/// Builds coordinates from central charges.
pub fn fg_coords(charges: &[C64], z: C64) -> Result<ClusterState> {
    if z.norm() == 0.0 {
        return Err(Error::InvalidInput("z must be nonzero".into()));
    }
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    let coords = charges.iter().map(|&zk| (two_pi_i * zk / z).exp()).collect();
    Ok(ClusterState { charges: Some(charges.to_vec()), z, coords, degenerate: false })
}

/// Cluster mutation on a two-node state: `X1' = X1 (1 + X2)`, `X2' = X2` when
/// `lambda12 != 0`; the identity otherwise. The mutated state keeps
/// coordinates only. `X2 = -1` degenerates `X1'` to zero and is flagged, not
/// rejected.
pub fn fg_mutate(state: &ClusterState, lambda12: &Rat) -> Result<ClusterState> {
    if state.coords.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "cluster mutation needs a two-node state, got {}",
            state.coords.len()
        )));
    }
    if lambda12.is_zero() {
        return Ok(state.clone());
    }
    let x1 = state.coords[0];
    let x2 = state.coords[1];
    let x1_new = x1 * (C64::new(1.0, 0.0) + x2);
    let degenerate = (C64::new(1.0, 0.0) + x2).norm() < 1e-14;
    Ok(ClusterState {
        charges: None,
        z: state.z,
        coords: vec![x1_new, x2],
        degenerate: degenerate || state.degenerate,
    })
}

/// Side-by-side comparison of linear central-charge transport and cluster
/// mutation for the first coordinate.
#[derive(Clone, Debug)]
pub struct MutationComparison {
    /// `exp(2 pi i (Z1 - lambda12 Z2) / z)`.
    pub linear_transport: C64,
    /// `X1 (1 + X2)`.
    pub cluster_value: C64,
    /// `|linear - cluster|`.
    pub discrepancy: f64,
    pub lambda12: Rat,
    pub second_coord: C64,
}

/// Performs the Hurwitz mutation on the cycles, transports the central
/// charges linearly (`Z1' = Z1 - lambda12 Z2`), and reports the resulting
/// exponential coordinate next to the cluster-mutated value. No equality is
/// asserted between the two branches.
pub fn mutate_and_compare(
    config: &CycleConfig,
    state: &ClusterState,
) -> Result<(CycleConfig, MutationComparison)> {
    if config.num_cycles() != 2 || state.coords.len() != 2 {
        return Err(Error::InvalidInput("comparison needs a two-node configuration".into()));
    }
    let charges = state.charges.as_ref().ok_or_else(|| {
        Error::InvalidInput("state has no central charges (already mutated)".into())
    })?;
    let lambda12 = intersection_matrix(config)?.entry(0, 1).clone();

    let mutated_config = if lambda12.is_zero() {
        config.clone()
    } else {
        hurwitz_mutate(config, 0, 1)?
    };

    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    let z1_new = charges[0] - rat_to_f64(&lambda12) * charges[1];
    let linear_transport = (two_pi_i * z1_new / state.z).exp();

    let cluster_state = fg_mutate(state, &lambda12)?;
    let cluster_value = cluster_state.coords[0];

    let comparison = MutationComparison {
        linear_transport,
        cluster_value,
        discrepancy: (linear_transport - cluster_value).norm(),
        lambda12,
        second_coord: state.coords[1],
    };
    Ok((mutated_config, comparison))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::qmat::q;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn coordinates_from_charges() {
        let s = fg_coords(&[c(0.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert!((s.coords[0] - c(1.0, 0.0)).norm() < 1e-15);

        // Z = z/2 gives X = exp(pi i) = -1.
        let s = fg_coords(&[c(0.5, 0.0)], c(1.0, 0.0)).unwrap();
        assert!((s.coords[0] - c(-1.0, 0.0)).norm() < 1e-14);

        // Imaginary charge with z = 1: |X| = exp(-2 pi Im Z).
        let s = fg_coords(&[c(0.0, 0.7)], c(1.0, 0.0)).unwrap();
        let expect = (-2.0 * std::f64::consts::PI * 0.7).exp();
        assert!((s.coords[0].norm() - expect).abs() < 1e-14);

        assert!(fg_coords(&[c(1.0, 0.0)], c(0.0, 0.0)).is_err());
    }

    #[test]
    fn exponential_homomorphism() {
        let z = c(1.3, -0.4);
        let (za, zb) = (c(0.2, 0.1), c(-0.5, 0.3));
        let sa = fg_coords(&[za], z).unwrap();
        let sb = fg_coords(&[zb], z).unwrap();
        let sum = fg_coords(&[za + zb], z).unwrap();
        assert!((sum.coords[0] - sa.coords[0] * sb.coords[0]).norm() < 1e-12);
    }

    #[test]
    fn mutation_formula() {
        let state = ClusterState {
            charges: None,
            z: c(1.0, 0.0),
            coords: vec![c(1.0, 0.0), c(1.0, 0.0)],
            degenerate: false,
        };
        // lambda = 0: identity.
        let same = fg_mutate(&state, &q(0)).unwrap();
        assert_eq!(same.coords, state.coords);

        // X = (1,1), lambda = 1 -> (2,1).
        let moved = fg_mutate(&state, &q(1)).unwrap();
        assert!((moved.coords[0] - c(2.0, 0.0)).norm() < 1e-15);
        assert!((moved.coords[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(moved.charges.is_none());
        assert!(!moved.degenerate);

        // X2 = -1 degenerates X1' to zero, flagged.
        let edge = ClusterState {
            charges: None,
            z: c(1.0, 0.0),
            coords: vec![c(1.0, 0.0), c(-1.0, 0.0)],
            degenerate: false,
        };
        let collapsed = fg_mutate(&edge, &q(1)).unwrap();
        assert!(collapsed.coords[0].norm() < 1e-14);
        assert!(collapsed.degenerate);
    }

    #[test]
    fn compare_branches_a2() {
        // Charges chosen so X = (1, 1): Z = 0 works.
        let cfg = presets::a2();
        let state = fg_coords(&[c(0.0, 0.0), c(0.0, 0.0)], c(1.0, 0.0)).unwrap();
        let (mutated, cmp) = mutate_and_compare(&cfg, &state).unwrap();
        assert_eq!(cmp.lambda12, q(1));
        // Linear branch: exp(0) = 1. Cluster branch: 1 * (1 + 1) = 2.
        assert!((cmp.linear_transport - c(1.0, 0.0)).norm() < 1e-14);
        assert!((cmp.cluster_value - c(2.0, 0.0)).norm() < 1e-14);
        assert!((cmp.discrepancy - 1.0).abs() < 1e-13);
        // Cycles were mutated.
        assert_ne!(mutated.cycle(0).unwrap(), cfg.cycle(0).unwrap());
    }

    #[test]
    fn compare_branches_disjoint() {
        let cfg = presets::a1xa1();
        let state = fg_coords(&[c(0.3, 0.0), c(0.1, 0.0)], c(1.0, 0.0)).unwrap();
        let (mutated, cmp) = mutate_and_compare(&cfg, &state).unwrap();
        // lambda = 0: both branches give X1, config unchanged.
        assert!((cmp.linear_transport - cmp.cluster_value).norm() < 1e-14);
        assert!(cmp.discrepancy < 1e-14);
        assert_eq!(mutated, cfg);
    }

    #[test]
    fn wrong_arity_rejected() {
        let cfg = presets::single_node();
        let state = fg_coords(&[c(0.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert!(mutate_and_compare(&cfg, &state).is_err());
    }
}
