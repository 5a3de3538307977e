//! Rigid-flexible decomposition, interaction graph, and the dimension-level
//! bookkeeping around it: Euler grading, Hodge-number deltas, Clemens-Schmid
//! rank data, and extension dimensions.
//!
//! The rigid sector is the orthogonal complement of the cycles (the
//! invariant-cycle part); each node contributes one rank-one flexible piece
//! carried by its vanishing line. Because every `N_k` squares to zero the
//! vanishing span sits inside the kernel of the total nilpotent, so the
//! decomposition is reported as (rigid sector, vanishing lines, overlap) and
//! never asserted as an internal direct sum.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{intersection_matrix, orthogonal_complement, CycleConfig};
use crate::operators::OperatorSet;
use crate::qmat::{qr, span_intersection_dim, span_rank, QMat, Rat};

/// Dimension data of the rigid-flexible split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomDecomposition {
    /// dim of the common kernel of the covectors `<., d_k>`.
    pub rigid_dim: usize,
    /// One flexible atom per node.
    pub flexible_count: usize,
    /// Rank of each flexible atom (always 1).
    pub flexible_dims: Vec<usize>,
    /// dim span{d_k}.
    pub vanishing_dim: usize,
    /// dim (span{d_k} ∩ rigid sector).
    pub overlap_dim: usize,
    /// True iff all off-diagonal intersection numbers vanish.
    pub splits: bool,
    /// Ambient rank.
    pub n: usize,
}

/// Vertices 1..r with an edge {i,j} labeled lambda_ij for each nonzero
/// off-diagonal pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionGraph {
    pub vertices: usize,
    /// (i, j, lambda_ij) with i < j, zero-based.
    pub edges: Vec<(usize, usize, Rat)>,
    /// Connected components as sorted vertex lists.
    pub components: Vec<Vec<usize>>,
}

impl InteractionGraph {
    pub fn has_edge(&self) -> bool {
        !self.edges.is_empty()
    }
}

/// The equivalence package of the splitting criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NnfReport {
    pub stokes_abelian: bool,
    pub graph_has_edge: bool,
    pub lambda_offdiag_nonzero: bool,
    pub splits: bool,
    /// All four flags agree (non-split <=> non-abelian <=> edge <=> nonzero
    /// off-diagonal). Enforced: disagreement is an internal error upstream.
    pub consistent: bool,
}

/// Rank data of the degree-3 invariant/vanishing short exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClemensSchmidDims {
    /// n - rank of the covector matrix = dim of the invariant sector.
    pub ker_dim: usize,
    /// rank of the total nilpotent N_sum = sum_k N_k.
    pub im_dim: usize,
    /// n - dim ker(N_sum).
    pub quotient_dim: usize,
    /// quotient_dim == rank N_sum (rank-nullity; must always hold).
    pub exact: bool,
}

/// Computes the rigid-flexible dimension data.
pub fn decompose(config: &CycleConfig) -> Result<AtomDecomposition> {
    let n = config.rank();
    let r = config.num_cycles();
    let rigid_basis = orthogonal_complement(config);
    let rigid_dim = rigid_basis.len();

    // Rank-nullity: rigid_dim + rank(covector matrix) = n.
    if r > 0 {
        let cov_rank = config.covector_matrix().rank();
        if rigid_dim + cov_rank != n {
            return Err(Error::InternalInvariant(
                "rigid_dim + rank(covectors) != n".into(),
            ));
        }
    }

    let vanishing_dim = span_rank(config.cycles());
    let overlap_dim = span_intersection_dim(config.cycles(), &rigid_basis);
    let lambda = intersection_matrix(config)?;

    Ok(AtomDecomposition {
        rigid_dim,
        flexible_count: r,
        flexible_dims: vec![1; r],
        vanishing_dim,
        overlap_dim,
        splits: !lambda.has_interaction(),
        n,
    })
}

/// Builds the interaction graph; components by union-find.
pub fn interaction_graph(config: &CycleConfig) -> Result<InteractionGraph> {
    let r = config.num_cycles();
    let lambda = intersection_matrix(config)?;
    let mut edges = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let l = lambda.entry(i, j);
            if !l.is_zero() {
                edges.push((i, j, l.clone()));
            }
        }
    }

    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for (i, j, _) in &edges {
        let (ri, rj) = (find(&mut parent, *i), find(&mut parent, *j));
        if ri != rj {
            parent[ri] = rj;
        }
    }
    let roots: Vec<usize> = (0..r).map(|v| find(&mut parent, v)).collect();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut seen_roots: Vec<usize> = Vec::new();
    for (v, &root) in roots.iter().enumerate() {
        match seen_roots.iter().position(|&s| s == root) {
            Some(idx) => components[idx].push(v),
            None => {
                seen_roots.push(root);
                components.push(vec![v]);
            }
        }
    }
    Ok(InteractionGraph { vertices: r, edges, components })
}

/// Evaluates the splitting-criterion equivalences: operator commutation,
/// graph edges, off-diagonal support of Lambda, and the splitting flag. All
/// four must agree; a mismatch is an internal error.
pub fn nnf_report(config: &CycleConfig) -> Result<NnfReport> {
    let ops = OperatorSet::new(config.clone())?;
    let r = config.num_cycles();
    let mut abelian = true;
    for i in 0..r {
        for j in i + 1..r {
            let si = ops.stokes_operator(i)?;
            let sj = ops.stokes_operator(j)?;
            if si.mul(&sj) != sj.mul(&si) {
                abelian = false;
            }
        }
    }
    let graph = interaction_graph(config)?;
    let lambda_nonzero = intersection_matrix(config)?.has_interaction();
    let splits = decompose(config)?.splits;

    let interaction = !abelian;
    let consistent = interaction == graph.has_edge()
        && interaction == lambda_nonzero
        && interaction == !splits;
    if !consistent {
        return Err(Error::InternalInvariant(
            "splitting-criterion equivalences disagree".into(),
        ));
    }
    Ok(NnfReport {
        stokes_abelian: abelian,
        graph_has_edge: graph.has_edge(),
        lambda_offdiag_nonzero: lambda_nonzero,
        splits,
        consistent,
    })
}

/// Euler eigenvalue per basis element: `deg/2 - 3/2`. Degrees must lie in
/// {0, 2, 4, 6} (even-degree convention on a threefold).
pub fn euler_grading(degrees: &[u32]) -> Result<Vec<Rat>> {
    degrees
        .iter()
        .map(|&d| {
            if d % 2 != 0 || d > 6 {
                return Err(Error::InvalidInput(format!(
                    "degree {d} outside the even-degree convention {{0,2,4,6}}"
                )));
            }
            Ok(qr(i64::from(d), 2) - qr(3, 2))
        })
        .collect()
}

/// Generic Hodge-number change across the transition: `(+r, -r)`.
pub fn hodge_delta(r: usize) -> (i64, i64) {
    let r = r as i64;
    (r, -r)
}

/// Rank data refining the degree-3 short exact sequence
/// `0 -> ker(N) -> H^3 -> H^3/ker(N) ~ im(N) -> 0`,
/// with the total nilpotent `N_sum = sum_k N_k` (a convention: the log of the
/// product would be path-ordering dependent).
pub fn clemens_schmid_dims(config: &CycleConfig) -> Result<ClemensSchmidDims> {
    let n = config.rank();
    let r = config.num_cycles();
    if r == 0 {
        return Ok(ClemensSchmidDims { ker_dim: n, im_dim: 0, quotient_dim: 0, exact: true });
    }
    let ker_dim = n - config.covector_matrix().rank();

    let ops = OperatorSet::new(config.clone())?;
    let mut n_sum = QMat::zeros(n, n);
    for k in 0..r {
        n_sum = n_sum.add(ops.nilpotent(k)?);
    }
    let im_dim = n_sum.rank();
    let quotient_dim = n - n_sum.kernel_basis().len();
    Ok(ClemensSchmidDims { ker_dim, im_dim, quotient_dim, exact: quotient_dim == im_dim })
}

/// Extension dimension in the given degree. Degree 1 decomposes nodewise with
/// one dimension per node. In degree >= 2 the single-node (and non-interacting)
/// model vanishes; for interacting multi-node configurations the value is
/// reported as unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtDimension {
    Known(usize),
    Unknown,
}

pub fn ext_dimensions(r: usize, degree: usize, interacting: bool) -> Result<ExtDimension> {
    if degree == 0 {
        return Err(Error::InvalidInput("extension degree must be >= 1".into()));
    }
    if degree == 1 {
        return Ok(ExtDimension::Known(r));
    }
    if r <= 1 || !interacting {
        return Ok(ExtDimension::Known(0));
    }
    Ok(ExtDimension::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::qmat::q;

    #[test]
    fn single_node_decomposition() {
        let d = decompose(&presets::single_node()).unwrap();
        assert_eq!(d.rigid_dim, 3);
        assert_eq!(d.vanishing_dim, 1);
        // delta lies in its own kernel, hence in the rigid sector.
        assert_eq!(d.overlap_dim, 1);
        assert!(d.splits);
        assert_eq!(d.flexible_count, 1);
        assert_eq!(d.flexible_dims, vec![1]);
    }

    #[test]
    fn a2_does_not_split() {
        let d = decompose(&presets::a2()).unwrap();
        assert!(!d.splits);
        assert_eq!(d.flexible_count, 2);
        assert_eq!(d.rigid_dim, 2);
        assert_eq!(d.vanishing_dim, 2);
    }

    #[test]
    fn a1xa1_splits() {
        let d = decompose(&presets::a1xa1()).unwrap();
        assert!(d.splits);
        assert_eq!(d.flexible_count, 2);
    }

    #[test]
    fn graph_shapes() {
        let g = interaction_graph(&presets::a2()).unwrap();
        assert_eq!(g.edges, vec![(0, 1, q(1))]);
        assert_eq!(g.components.len(), 1);

        let lat = crate::lattice::IntersectionLattice::symplectic(3);
        let iso = crate::lattice::CycleConfig::new(
            lat,
            vec![
                { let mut v = vec![Rat::zero(); 6]; v[0] = q(1); v },
                { let mut v = vec![Rat::zero(); 6]; v[1] = q(1); v },
                { let mut v = vec![Rat::zero(); 6]; v[2] = q(1); v },
            ],
        )
        .unwrap();
        let g0 = interaction_graph(&iso).unwrap();
        assert!(g0.edges.is_empty());
        assert_eq!(g0.components.len(), 3);

        let chain = interaction_graph(&presets::chain_plus_isolated()).unwrap();
        assert_eq!(chain.components, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn nnf_flags() {
        let a2 = nnf_report(&presets::a2()).unwrap();
        assert!(!a2.stokes_abelian);
        assert!(a2.graph_has_edge);
        assert!(a2.lambda_offdiag_nonzero);
        assert!(!a2.splits);
        assert!(a2.consistent);

        let split = nnf_report(&presets::a1xa1()).unwrap();
        assert!(split.stokes_abelian);
        assert!(!split.graph_has_edge);
        assert!(split.splits);
        assert!(split.consistent);
    }

    #[test]
    fn euler_grading_values() {
        let g = euler_grading(&[0, 2, 4, 6]).unwrap();
        assert_eq!(g, vec![qr(-3, 2), qr(-1, 2), qr(1, 2), qr(3, 2)]);
        assert!(euler_grading(&[3]).is_err());
        assert_eq!(euler_grading(&[6]).unwrap(), vec![qr(3, 2)]);
    }

    #[test]
    fn hodge_delta_values() {
        assert_eq!(hodge_delta(1), (1, -1));
        assert_eq!(hodge_delta(0), (0, 0));
        assert_eq!(hodge_delta(16), (16, -16));
    }

    #[test]
    fn clemens_schmid_cases() {
        let single = clemens_schmid_dims(&presets::single_node()).unwrap();
        assert_eq!((single.ker_dim, single.im_dim), (3, 1));
        assert!(single.exact);

        let empty_cfg = crate::lattice::CycleConfig::new(
            crate::lattice::IntersectionLattice::symplectic(2),
            vec![],
        )
        .unwrap();
        let none = clemens_schmid_dims(&empty_cfg).unwrap();
        assert_eq!((none.ker_dim, none.im_dim), (4, 0));
        assert!(none.exact);

        let a2 = clemens_schmid_dims(&presets::a2()).unwrap();
        assert_eq!(a2.im_dim, 2);
        assert!(a2.exact);
    }

    #[test]
    fn ext_dimension_table() {
        assert_eq!(ext_dimensions(1, 1, false).unwrap(), ExtDimension::Known(1));
        assert_eq!(ext_dimensions(1, 2, false).unwrap(), ExtDimension::Known(0));
        assert_eq!(ext_dimensions(3, 1, true).unwrap(), ExtDimension::Known(3));
        assert_eq!(ext_dimensions(2, 2, true).unwrap(), ExtDimension::Unknown);
        assert!(ext_dimensions(1, 0, false).is_err());
    }
}
