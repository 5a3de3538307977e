//! Picard-Lefschetz and Stokes operators, their exact identities, and
//! word-ball exploration of the groups they generate.
//!
//! Each cycle `d_k` contributes the rank-one nilpotent `N_k : a -> <a,d_k> d_k`
//! (the outer product `d_k (P d_k)^T`), the monodromy operator `T_k = Id + N_k`
//! and the Stokes operator `S_k = T_k`. Everything in this module is exact
//! rational arithmetic; identity checks are matrix equality, never tolerance
//! comparisons.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{intersection_matrix, CycleConfig, IntersectionMatrix};
use crate::qmat::{QMat, Rat};

/// Default cap on distinct elements during group exploration.
pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// The operator content of a cycle configuration.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    config: CycleConfig,
    lambda: IntersectionMatrix,
    nilpotents: Vec<QMat>,
}

/// Pairwise relation between two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `T_i T_j = T_j T_i`, equivalently `lambda_ij = 0`.
    Commuting,
    /// `T_i T_j T_i = T_j T_i T_j`, guaranteed when `|lambda_ij| = 1`.
    Braid,
    Neither,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Relation::Commuting => write!(f, "commuting"),
            Relation::Braid => write!(f, "braid"),
            Relation::Neither => write!(f, "neither"),
        }
    }
}

/// Result of breadth-first enumeration of the generated group.
#[derive(Clone, Debug)]
pub struct GroupExploration {
    /// Distinct elements among words of length <= `max_len`.
    pub element_count: usize,
    /// Whether all generator pairs commute.
    pub abelian: bool,
    /// Words in discovery order, when requested ("s1", "s2^-1", ...).
    pub words: Option<Vec<String>>,
    /// Word length reached.
    pub max_len: usize,
}

impl OperatorSet {
    pub fn new(config: CycleConfig) -> Result<Self> {
        let lambda = intersection_matrix(&config)?;
        let n = config.rank();
        let mut nilpotents = Vec::with_capacity(config.num_cycles());
        for k in 0..config.num_cycles() {
            let delta = config.cycle(k)?;
            let covector = config.lattice().covector(delta);
            if covector.iter().all(Zero::is_zero) {
                // A cycle in the radical of the pairing gives N_k = 0 and
                // breaks the rank-one invariant.
                return Err(Error::InvalidInput(format!(
                    "cycle {k} lies in the radical of the pairing (covector <., d_{k}> is zero)"
                )));
            }
            let nk = QMat::outer(delta, &covector);
            // N_k^2 = 0 and rank N_k = 1, exactly.
            if !nk.mul(&nk).is_zero() {
                return Err(Error::InternalInvariant(format!("N_{k}^2 != 0")));
            }
            if nk.rank() != 1 {
                return Err(Error::InternalInvariant(format!(
                    "rank N_{k} = {}, expected 1",
                    nk.rank()
                )));
            }
            debug_assert_eq!(nk.rows(), n);
            nilpotents.push(nk);
        }
        Ok(OperatorSet { config, lambda, nilpotents })
    }

    pub fn config(&self) -> &CycleConfig {
        &self.config
    }

    pub fn intersection(&self) -> &IntersectionMatrix {
        &self.lambda
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k >= self.nilpotents.len() {
            return Err(Error::IndexOutOfRange { index: k, len: self.nilpotents.len() });
        }
        Ok(())
    }

    /// The rank-one nilpotent `N_k = d_k (P d_k)^T`.
    pub fn nilpotent(&self, k: usize) -> Result<&QMat> {
        self.check_index(k)?;
        Ok(&self.nilpotents[k])
    }

    /// The Picard-Lefschetz operator `T_k = Id + N_k`.
    pub fn pl_operator(&self, k: usize) -> Result<QMat> {
        self.check_index(k)?;
        Ok(QMat::identity(self.config.rank()).add(&self.nilpotents[k]))
    }

    /// The Stokes operator at the k-th conifold divisor. At a regular singular
    /// point the Stokes matrix is the monodromy matrix itself, so this equals
    /// `pl_operator(k)`.
    pub fn stokes_operator(&self, k: usize) -> Result<QMat> {
        self.pl_operator(k)
    }

    /// `S_k^{-1} = Id - N_k`, exact because `N_k^2 = 0`.
    pub fn stokes_inverse(&self, k: usize) -> Result<QMat> {
        self.check_index(k)?;
        Ok(QMat::identity(self.config.rank()).sub(&self.nilpotents[k]))
    }

    /// `[N_i, N_j]` from the closed formula
    /// `a -> <a,d_j> l_ji d_i - <a,d_i> l_ij d_j`, cross-checked against the
    /// direct matrix commutator. A mismatch is an internal error.
    pub fn commutator_nilpotent(&self, i: usize, j: usize) -> Result<QMat> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::InvalidInput("commutator requires i != j".into()));
        }
        let di = self.config.cycle(i)?;
        let dj = self.config.cycle(j)?;
        let lat = self.config.lattice();
        let closed = QMat::outer(di, &lat.covector(dj))
            .scale(self.lambda.entry(j, i))
            .sub(&QMat::outer(dj, &lat.covector(di)).scale(self.lambda.entry(i, j)));
        let ni = &self.nilpotents[i];
        let nj = &self.nilpotents[j];
        let direct = ni.mul(nj).sub(&nj.mul(ni));
        if closed != direct {
            return Err(Error::InternalInvariant(format!(
                "closed-form [N_{i},N_{j}] disagrees with direct commutator"
            )));
        }
        Ok(closed)
    }

    /// Ring commutator `S_i S_j - S_j S_i`; equals `[N_i, N_j]` exactly
    /// (the quadratic cross terms are all that survive the expansion).
    pub fn ring_commutator(&self, i: usize, j: usize) -> Result<QMat> {
        let bracket = self.commutator_nilpotent(i, j)?;
        let si = self.stokes_operator(i)?;
        let sj = self.stokes_operator(j)?;
        let diff = si.mul(&sj).sub(&sj.mul(&si));
        if diff != bracket {
            return Err(Error::InternalInvariant(
                "S_iS_j - S_jS_i != [N_i,N_j]".into(),
            ));
        }
        Ok(diff)
    }

    /// Group commutator `S_i S_j S_i^{-1} S_j^{-1}`, verified against the
    /// exact closed form
    ///
    /// `Id + [N_i,N_j] + N_jN_iN_j - N_iN_jN_i + N_iN_jN_iN_j`.
    ///
    /// The cubic and quartic terms contain neither `N_i^2` nor `N_j^2` and do
    /// not vanish when `lambda_ij != 0`; only the linearization of the group
    /// commutator is `Id + [N_i,N_j]`. The equivalence
    /// `[S_i,S_j] = Id <=> lambda_ij = 0` is unaffected.
    pub fn group_commutator(&self, i: usize, j: usize) -> Result<QMat> {
        let product = self
            .stokes_operator(i)?
            .mul(&self.stokes_operator(j)?)
            .mul(&self.stokes_inverse(i)?)
            .mul(&self.stokes_inverse(j)?);
        let expected = self.group_commutator_closed(i, j)?;
        if product != expected {
            return Err(Error::InternalInvariant(
                "[S_i,S_j] disagrees with its closed form".into(),
            ));
        }
        Ok(product)
    }

    /// Closed form of the group commutator from the rank-one algebra: with
    /// `l = lambda_ij` and `O(u,v) : a -> <a,v> u`,
    ///
    /// `[S_i,S_j] = Id + (l^3 - l) O(d_i,d_j) - l O(d_j,d_i)
    ///              + l^2 O(d_i,d_i) - l^2 O(d_j,d_j)`.
    pub fn group_commutator_closed(&self, i: usize, j: usize) -> Result<QMat> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::InvalidInput("commutator requires i != j".into()));
        }
        let di = self.config.cycle(i)?;
        let dj = self.config.cycle(j)?;
        let lat = self.config.lattice();
        let cov_i = lat.covector(di);
        let cov_j = lat.covector(dj);
        let l = self.lambda.entry(i, j).clone();
        let l2 = &l * &l;
        let l3 = &l2 * &l;
        Ok(QMat::identity(self.config.rank())
            .add(&QMat::outer(di, &cov_j).scale(&(&l3 - &l)))
            .sub(&QMat::outer(dj, &cov_i).scale(&l))
            .add(&QMat::outer(di, &cov_i).scale(&l2))
            .sub(&QMat::outer(dj, &cov_j).scale(&l2)))
    }

    /// Classifies the pair relation by exact matrix comparison, then
    /// cross-checks against the lambda predicate (commuting iff lambda = 0;
    /// braid whenever |lambda| = 1).
    pub fn relation_classify(&self, i: usize, j: usize) -> Result<Relation> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::InvalidInput("relation requires i != j".into()));
        }
        let ti = self.pl_operator(i)?;
        let tj = self.pl_operator(j)?;
        let lam = self.lambda.entry(i, j);

        let commute = ti.mul(&tj) == tj.mul(&ti);
        if commute != lam.is_zero() {
            return Err(Error::InternalInvariant(
                "commutation disagrees with lambda_ij = 0".into(),
            ));
        }
        if commute {
            return Ok(Relation::Commuting);
        }
        let braid = ti.mul(&tj).mul(&ti) == tj.mul(&ti).mul(&tj);
        if crate::qmat::abs_is(lam, 1) && !braid {
            return Err(Error::InternalInvariant(
                "|lambda_ij| = 1 but braid relation fails".into(),
            ));
        }
        Ok(if braid { Relation::Braid } else { Relation::Neither })
    }

    /// Breadth-first enumeration of distinct group elements over words in the
    /// generators and their inverses, up to length `max_len`. Elements are
    /// deduplicated by exact rational matrix equality. Deterministic.
    pub fn group_explore(
        &self,
        max_len: usize,
        cap: usize,
        collect_words: bool,
    ) -> Result<GroupExploration> {
        if max_len == 0 {
            return Err(Error::InvalidInput("max_len must be >= 1".into()));
        }
        let r = self.nilpotents.len();
        if r == 0 {
            return Err(Error::InvalidInput("no generators: r = 0".into()));
        }
        let abelian = (0..r).all(|i| {
            (i + 1..r).all(|j| self.lambda.entry(i, j).is_zero())
        });

        let mut gens: Vec<(QMat, String)> = Vec::with_capacity(2 * r);
        for k in 0..r {
            gens.push((self.stokes_operator(k)?, format!("s{}", k + 1)));
            gens.push((self.stokes_inverse(k)?, format!("s{}^-1", k + 1)));
        }

        let id = QMat::identity(self.config.rank());
        let mut seen: HashSet<QMat> = HashSet::new();
        seen.insert(id.clone());
        let mut order: Vec<String> = vec!["e".to_string()];
        let mut frontier: Vec<(QMat, String)> = vec![(id, "e".to_string())];

        for _len in 1..=max_len {
            let mut next = Vec::new();
            for (m, w) in &frontier {
                for (g, gname) in &gens {
                    let prod = m.mul(g);
                    if seen.insert(prod.clone()) {
                        let word = if w == "e" { gname.clone() } else { format!("{w} {gname}") };
                        if seen.len() > cap {
                            return Err(Error::ResourceExceeded(format!(
                                "group exploration exceeded cap {cap} (partial count {})",
                                seen.len() - 1
                            )));
                        }
                        order.push(word.clone());
                        next.push((prod, word));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }

        Ok(GroupExploration {
            element_count: seen.len(),
            abelian,
            words: collect_words.then_some(order),
            max_len,
        })
    }
}

/// Hurwitz mutation of the cycle list: `d_i -> d_i - lambda_ij d_j`, all other
/// cycles unchanged. The mutated Picard-Lefschetz operator satisfies the
/// conjugation identity `T_{d_i'} = T_j^{-1} T_i T_j` (exact matrix equality;
/// see the sign discussion in the crate docs), which is verified here.
pub fn hurwitz_mutate(config: &CycleConfig, i: usize, j: usize) -> Result<CycleConfig> {
    mutate_with_sign(config, i, j, false)
}

/// Inverse Hurwitz mutation `d_i -> d_i + lambda_ij d_j`; composing with
/// `hurwitz_mutate` restores the original configuration because the pairing
/// `<d_i, d_j>` is unchanged by either move.
pub fn hurwitz_mutate_inverse(config: &CycleConfig, i: usize, j: usize) -> Result<CycleConfig> {
    mutate_with_sign(config, i, j, true)
}

fn mutate_with_sign(config: &CycleConfig, i: usize, j: usize, plus: bool) -> Result<CycleConfig> {
    if i == j {
        return Err(Error::InvalidInput("mutation requires i != j".into()));
    }
    let ops = OperatorSet::new(config.clone())?;
    let lam = ops.intersection().entry(i, j).clone();
    let di = config.cycle(i)?;
    let dj = config.cycle(j)?;
    let coef = if plus { lam.clone() } else { -lam.clone() };
    let mutated: Vec<Rat> = di.iter().zip(dj).map(|(a, b)| a + &coef * b).collect();
    let new_config = config.with_cycle(i, mutated)?;

    // Conjugation check: the minus move conjugates T_i by T_j^{-1} (.) T_j,
    // the plus move by T_j (.) T_j^{-1}.
    let new_ops = OperatorSet::new(new_config.clone())?;
    let ti_new = new_ops.pl_operator(i)?;
    let ti = ops.pl_operator(i)?;
    let tj = ops.pl_operator(j)?;
    let tj_inv = ops.stokes_inverse(j)?;
    let expected = if plus {
        tj.mul(&ti).mul(&tj_inv)
    } else {
        tj_inv.mul(&ti).mul(&tj)
    };
    if ti_new != expected {
        return Err(Error::InternalInvariant(
            "mutated operator fails the conjugation identity".into(),
        ));
    }
    Ok(new_config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntersectionLattice;
    use crate::presets;
    use crate::qmat::q;

    fn e(n: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        v[i] = q(1);
        v
    }

    #[test]
    fn nilpotent_single_node_action() {
        // delta = e0 in the rank-4 symplectic lattice: N e2 = <e2,e0> e0 = -e0,
        // N e0 = 0.
        let ops = OperatorSet::new(presets::single_node()).unwrap();
        let n = ops.nilpotent(0).unwrap();
        let minus_e0: Vec<Rat> = e(4, 0).iter().map(|x| -x.clone()).collect();
        assert_eq!(n.mul_vec(&e(4, 2)), minus_e0);
        assert!(n.mul_vec(&e(4, 0)).iter().all(Zero::is_zero));
        assert!(n.mul(n).is_zero());
        assert!(ops.nilpotent(1).is_err());
    }

    #[test]
    fn pl_operator_unipotent() {
        let ops = OperatorSet::new(presets::a2()).unwrap();
        for k in 0..2 {
            let t = ops.pl_operator(k).unwrap();
            assert_eq!(t.det().unwrap(), q(1));
            assert_eq!(t, ops.stokes_operator(k).unwrap());
            let t_inv = ops.stokes_inverse(k).unwrap();
            assert_eq!(t.mul(&t_inv), QMat::identity(4));
        }
    }

    #[test]
    fn commuting_when_lambda_zero() {
        let ops = OperatorSet::new(presets::a1xa1()).unwrap();
        let t1 = ops.pl_operator(0).unwrap();
        let t2 = ops.pl_operator(1).unwrap();
        assert_eq!(t1.mul(&t2), t2.mul(&t1));
        assert_eq!(ops.relation_classify(0, 1).unwrap(), Relation::Commuting);
        assert_eq!(ops.group_commutator(0, 1).unwrap(), QMat::identity(4));
        assert!(ops.ring_commutator(0, 1).unwrap().is_zero());
    }

    #[test]
    fn a2_braid_and_commutator() {
        let ops = OperatorSet::new(presets::a2()).unwrap();
        let t1 = ops.pl_operator(0).unwrap();
        let t2 = ops.pl_operator(1).unwrap();
        assert_eq!(t1.mul(&t2).mul(&t1), t2.mul(&t1).mul(&t2));
        assert_eq!(ops.relation_classify(0, 1).unwrap(), Relation::Braid);

        // [N_1,N_2](a) = -<a,d_2> d_1 - <a,d_1> d_2, nonzero.
        let bracket = ops.commutator_nilpotent(0, 1).unwrap();
        assert!(!bracket.is_zero());
        let cfg = ops.config();
        let lat = cfg.lattice();
        for probe in 0..4 {
            let a = e(4, probe);
            let expect: Vec<Rat> = (0..4)
                .map(|m| {
                    let c2 = lat.pair(&a, cfg.cycle(1).unwrap()).unwrap();
                    let c1 = lat.pair(&a, cfg.cycle(0).unwrap()).unwrap();
                    -c2 * &cfg.cycle(0).unwrap()[m] - c1 * &cfg.cycle(1).unwrap()[m]
                })
                .collect();
            assert_eq!(bracket.mul_vec(&a), expect);
        }

        let group_comm = ops.group_commutator(0, 1).unwrap();
        assert_ne!(group_comm, QMat::identity(4));
        // The four-factor product picks up cubic corrections
        // N_2N_1N_2 - N_1N_2N_1 + N_1N_2N_1N_2 beyond Id + [N_1,N_2].
        let n1 = ops.nilpotent(0).unwrap();
        let n2 = ops.nilpotent(1).unwrap();
        let cubic = n2
            .mul(n1)
            .mul(n2)
            .sub(&n1.mul(n2).mul(n1))
            .add(&n1.mul(n2).mul(n1).mul(n2));
        assert_eq!(group_comm, QMat::identity(4).add(&bracket).add(&cubic));
        assert_ne!(group_comm, QMat::identity(4).add(&bracket));

        // The ring commutator is exactly the nilpotent bracket.
        assert_eq!(ops.ring_commutator(0, 1).unwrap(), bracket);
    }

    #[test]
    fn lambda_two_is_neither() {
        let ops = OperatorSet::new(presets::lambda2()).unwrap();
        assert_eq!(ops.relation_classify(0, 1).unwrap(), Relation::Neither);
    }

    #[test]
    fn relation_rejects_equal_indices() {
        let ops = OperatorSet::new(presets::a2()).unwrap();
        assert!(ops.relation_classify(1, 1).is_err());
        assert!(ops.commutator_nilpotent(0, 0).is_err());
    }

    #[test]
    fn explore_rank_one_group() {
        let ops = OperatorSet::new(presets::single_node()).unwrap();
        for max_len in [1, 2, 5] {
            let g = ops.group_explore(max_len, DEFAULT_GROUP_CAP, false).unwrap();
            assert!(g.abelian);
            assert_eq!(g.element_count, 2 * max_len + 1);
        }
    }

    #[test]
    fn explore_z2_ball() {
        let ops = OperatorSet::new(presets::a1xa1()).unwrap();
        let g = ops.group_explore(2, DEFAULT_GROUP_CAP, true).unwrap();
        assert!(g.abelian);
        // |{(a,b) in Z^2 : |a| + |b| <= 2}| = 13.
        assert_eq!(g.element_count, 13);
        assert_eq!(g.words.unwrap().len(), 13);
    }

    #[test]
    fn explore_a2_nonabelian() {
        let ops = OperatorSet::new(presets::a2()).unwrap();
        let g = ops.group_explore(3, DEFAULT_GROUP_CAP, false).unwrap();
        assert!(!g.abelian);
        assert!(g.element_count > 7);
    }

    #[test]
    fn explore_cap_exceeded() {
        let ops = OperatorSet::new(presets::a2()).unwrap();
        assert!(matches!(
            ops.group_explore(8, 10, false),
            Err(Error::ResourceExceeded(_))
        ));
    }

    #[test]
    fn hurwitz_mutation_a2() {
        let cfg = presets::a2();
        let mutated = hurwitz_mutate(&cfg, 0, 1).unwrap();
        // d_1' = d_1 - d_2; pairing with d_2 unchanged.
        let lat = mutated.lattice();
        assert_eq!(
            lat.pair(mutated.cycle(0).unwrap(), mutated.cycle(1).unwrap()).unwrap(),
            q(1)
        );
        let expect: Vec<Rat> = cfg
            .cycle(0)
            .unwrap()
            .iter()
            .zip(cfg.cycle(1).unwrap())
            .map(|(a, b)| a - b)
            .collect();
        assert_eq!(mutated.cycle(0).unwrap(), expect.as_slice());

        // Round trip with the inverse move.
        let back = hurwitz_mutate_inverse(&mutated, 0, 1).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn hurwitz_mutation_identity_when_disjoint() {
        let cfg = presets::a1xa1();
        let mutated = hurwitz_mutate(&cfg, 0, 1).unwrap();
        assert_eq!(mutated, cfg);
    }

    #[test]
    fn invariant_sector_fixed_by_pl() {
        // T fixes every vector in the orthogonal complement.
        let cfg = presets::single_node();
        let ops = OperatorSet::new(cfg.clone()).unwrap();
        let t = ops.pl_operator(0).unwrap();
        for v in crate::lattice::orthogonal_complement(&cfg) {
            assert_eq!(t.mul_vec(&v), v);
        }
    }

    #[test]
    fn degenerate_lattice_still_works() {
        // A rank-3 lattice with a degenerate skew form.
        let p = QMat::from_i64(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        let lat = IntersectionLattice::new(p).unwrap();
        assert!(!lat.is_nondegenerate());
        let cfg = CycleConfig::new(lat.clone(), vec![e(3, 0)]).unwrap();
        let ops = OperatorSet::new(cfg).unwrap();
        assert_eq!(ops.nilpotent(0).unwrap().rank(), 1);

        // A cycle in the radical has zero covector and is rejected.
        let radical = CycleConfig::new(lat, vec![e(3, 2)]).unwrap();
        assert!(matches!(OperatorSet::new(radical), Err(Error::InvalidInput(_))));
    }
}
