//! Command implementations behind the `conifold` binary: configuration
//! ingestion, analysis orchestration, and report serialization.

pub mod config;
pub mod report;

use num_complex::Complex64 as C64;

use conifold_core::atoms;
use conifold_core::cluster;
use conifold_core::dubrovin::{self, LoopParams, Orientation};
use conifold_core::error::Error as CoreError;
use conifold_core::integral;
use conifold_core::lattice::intersection_matrix;
use conifold_core::operators::{hurwitz_mutate, OperatorSet};
use conifold_core::qmat::{format_rat, QMat};

use config::DegenerationConfig;
use report::*;

/// Exit codes: 0 pass, 1 invariant failure, 2 input error, 3 resource error.
pub fn exit_code_for(err: &CoreError) -> i32 {
    match err {
        CoreError::InternalInvariant(_) => 1,
        CoreError::ResourceExceeded(_) | CoreError::Integration(_) => 3,
        _ => 2,
    }
}

/// Options shared by the analysis-style commands.
#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    /// Word length for group exploration (None skips it).
    pub group_len: Option<usize>,
    /// Element cap for group exploration.
    pub cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { group_len: None, cap: conifold_core::operators::DEFAULT_GROUP_CAP }
    }
}

fn run_identity_suite(ops: &OperatorSet) -> Vec<InvariantCheck> {
    let cfg = ops.config();
    let r = cfg.num_cycles();
    let n = cfg.rank();
    let mut checks = Vec::new();
    let mut push = |invariant: &str, result: Result<bool, CoreError>| {
        let (pass, detail) = match result {
            Ok(true) => (true, None),
            Ok(false) => (false, None),
            Err(e) => (false, Some(e.to_string())),
        };
        checks.push(InvariantCheck { invariant: invariant.to_string(), pass, detail });
    };

    push("N_k^2 = 0 and rank N_k = 1 for every k", (|| {
        for k in 0..r {
            let nk = ops.nilpotent(k)?;
            if !nk.mul(nk).is_zero() || nk.rank() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    })());

    push("det T_k = 1 and S_k S_k^{-1} = Id for every k", (|| {
        for k in 0..r {
            let t = ops.pl_operator(k)?;
            if t.det()? != conifold_core::qmat::q(1) {
                return Ok(false);
            }
            if t.mul(&ops.stokes_inverse(k)?) != QMat::identity(n) {
                return Ok(false);
            }
        }
        Ok(true)
    })());

    push("closed-form [N_i,N_j] equals the direct commutator for every pair", (|| {
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    ops.commutator_nilpotent(i, j)?;
                }
            }
        }
        Ok(true)
    })());

    push("S_iS_j - S_jS_i = [N_i,N_j] for every pair", (|| {
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    ops.ring_commutator(i, j)?;
                }
            }
        }
        Ok(true)
    })());

    push("[S_i,S_j] matches its rank-one closed form for every pair", (|| {
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    ops.group_commutator(i, j)?;
                }
            }
        }
        Ok(true)
    })());

    push("([N_i,N_j] = 0) iff (lambda_ij = 0), and |lambda|=1 implies braid", (|| {
        for i in 0..r {
            for j in i + 1..r {
                let bracket = ops.commutator_nilpotent(i, j)?;
                let lam = ops.intersection().entry(i, j).clone();
                if bracket.is_zero() != num_traits::Zero::is_zero(&lam) {
                    return Ok(false);
                }
                // relation_classify cross-checks the braid law internally.
                ops.relation_classify(i, j)?;
            }
        }
        Ok(true)
    })());

    checks
}

fn base_report(config: &DegenerationConfig, opts: &AnalyzeOptions) -> Result<AnalysisReport, CoreError> {
    let cfg = &config.cycles;
    let ops = OperatorSet::new(cfg.clone())?;
    let lambda = intersection_matrix(cfg)?;
    let decomposition = atoms::decompose(cfg)?;
    let graph = atoms::interaction_graph(cfg)?;
    let nnf = atoms::nnf_report(cfg)?;
    let cs = atoms::clemens_schmid_dims(cfg)?;
    let frobenius = dubrovin::FrobeniusData::conifold(config.z)?;
    let grading = atoms::euler_grading(&frobenius.degrees)?;
    let r = cfg.num_cycles();
    let (dh11, dh21) = atoms::hodge_delta(r);
    let interacting = lambda.has_interaction();
    let ext1 = match atoms::ext_dimensions(r, 1, interacting)? {
        atoms::ExtDimension::Known(v) => v,
        atoms::ExtDimension::Unknown => unreachable!("degree 1 is always known"),
    };
    let ext2 = match atoms::ext_dimensions(r.max(1), 2, interacting)? {
        atoms::ExtDimension::Known(v) => v.to_string(),
        atoms::ExtDimension::Unknown => "unknown".to_string(),
    };

    let mut pair_relations = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            pair_relations.push(PairRelation {
                i: i + 1,
                j: j + 1,
                relation: ops.relation_classify(i, j)?.to_string(),
            });
        }
    }

    let group = match opts.group_len {
        None => None,
        Some(len) => match ops.group_explore(len, opts.cap, false) {
            Ok(g) => Some(GroupSummary::from_exploration(&g)),
            Err(CoreError::ResourceExceeded(msg)) => Some(GroupSummary {
                max_len: len,
                element_count: 0,
                abelian: false,
                truncated: Some(msg),
            }),
            Err(e) => return Err(e),
        },
    };

    let kdata = match &config.kdata {
        None => None,
        Some(k) => Some(build_kdata_summary(config, k, &ops)?),
    };

    let cluster_summary = match (&config.cluster, config.cluster_charges()) {
        (Some(_), Some(charges)) => {
            let z = config.cluster_z();
            let state = cluster::fg_coords(&charges, z)?;
            let mutation = if r == 2 {
                let (_, cmp) = cluster::mutate_and_compare(cfg, &state)?;
                Some(ClusterMutationSummary::from(&cmp))
            } else {
                None
            };
            Some(ClusterSummary {
                z: complex_pair(z),
                coords: state.coords.iter().map(|&x| complex_pair(x)).collect(),
                mutation,
            })
        }
        _ => None,
    };

    Ok(AnalysisReport {
        tool: ToolInfo::current(),
        config_hash: config_hash(&config.source),
        lattice: LatticeSummary {
            rank: cfg.rank(),
            nondegenerate: cfg.lattice().is_nondegenerate(),
            num_cycles: r,
            cycles_dependent: cfg.cycles_dependent(),
        },
        intersection_matrix: matrix_strings(lambda.matrix()),
        operator_identities: run_identity_suite(&ops),
        pair_relations,
        atoms: AtomSummary::from(&decomposition),
        interaction_graph: GraphSummary::from(&graph),
        nnf: NnfSummary::from(&nnf),
        clemens_schmid: ClemensSchmidSummary {
            ker_dim: cs.ker_dim,
            im_dim: cs.im_dim,
            quotient_dim: cs.quotient_dim,
            exact: cs.exact,
        },
        euler_grading: grading.iter().map(format_rat).collect(),
        hodge_delta: HodgeDelta { delta_h11: dh11, delta_h21: dh21 },
        ext_dimensions: ExtSummary { degree_1: ext1, degree_2: ext2 },
        group,
        monodromy: None,
        kdata,
        cluster: cluster_summary,
        corpus: None,
    })
}

fn build_kdata_summary(
    config: &DegenerationConfig,
    k: &config::KDataSection,
    ops: &OperatorSet,
) -> Result<KDataSummary, CoreError> {
    let chi_with_s = config::rat_vec(&k.chi_with_s)?;
    let chi_s_with = config::rat_vec(&k.chi_s_with)?;
    let nint = integral::n_int(&chi_with_s, &chi_s_with)?;

    let decat = match (&k.ch, &k.s, &k.euler_pairing) {
        (Some(ch), Some(s), Some(pairing)) => {
            let corr = integral::Correspondence {
                ch: config::rat_matrix(ch)?,
                s: config::rat_vec(s)?,
                euler_pairing: config::rat_matrix(pairing)?,
            };
            let cycle = k.cycle.unwrap_or(1) - 1;
            let rep = integral::decategorification_check(
                config.cycles.lattice(),
                &corr,
                ops,
                cycle,
            )?;
            Some(DecategorificationSummary {
                cycle: rep.cycle + 1,
                sends_s_to_minus_delta: rep.sends_s_to_minus_delta,
                commutes: rep.commutes,
            })
        }
        _ => None,
    };

    let compat = match (&k.euler_pairing, &k.solutions, &k.flat_pairing) {
        (Some(chi), Some(sols), Some(flat)) => {
            let rep = integral::pairing_compatibility_exact(
                &config::rat_matrix(chi)?,
                &config::rat_matrix(sols)?,
                &config::rat_matrix(flat)?,
            )?;
            Some(CompatibilitySummary {
                pass: rep.pass,
                failing_entries: rep.failures.iter().map(|&(i, j)| [i, j]).collect(),
            })
        }
        _ => None,
    };

    Ok(KDataSummary {
        n_int: NIntSummary {
            matrix: nint.matrix.to_strings(),
            rank: nint.matrix.rank(),
            contraction: format_rat(&nint.contraction),
            unipotent: nint.unipotent,
        },
        decategorification: decat,
        pairing_compatibility: compat,
    })
}

/// `analyze`: deterministic report of the exact invariants.
pub fn cmd_analyze(
    config: &DegenerationConfig,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, CoreError> {
    base_report(config, opts)
}

/// Parameters of the `monodromy` command.
#[derive(Clone, Copy, Debug)]
pub struct MonodromyOptions {
    pub z: Option<C64>,
    pub radius: f64,
    pub tol: f64,
    pub max_steps: usize,
    pub clockwise: bool,
    pub anchor: Option<f64>,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            z: None,
            radius: 0.3,
            tol: 1e-10,
            max_steps: 1_000_000,
            clockwise: false,
            anchor: None,
        }
    }
}

/// `monodromy`: loop transport appended to the analysis report.
pub fn cmd_monodromy(
    config: &DegenerationConfig,
    opts: &AnalyzeOptions,
    mopts: &MonodromyOptions,
) -> Result<AnalysisReport, CoreError> {
    let mut report = base_report(config, opts)?;
    let z = mopts.z.unwrap_or(config.z);
    let mut params = LoopParams::new(z, mopts.radius, mopts.tol);
    params.max_steps = mopts.max_steps;
    params.orientation =
        if mopts.clockwise { Orientation::Clockwise } else { Orientation::Counterclockwise };
    params.anchor = mopts.anchor;
    let res = dubrovin::integrate_loop(&params)?;
    let pl = if config.cycles.num_cycles() == 1 {
        Some(dubrovin::monodromy_vs_pl(&res, &config.cycles, z)?)
    } else {
        None
    };
    report.monodromy = Some(monodromy_summary(&res, pl.as_ref()));
    Ok(report)
}

/// `braid`: pairwise relation classification. Indices are 1-based.
pub fn cmd_braid(
    config: &DegenerationConfig,
    i: usize,
    j: usize,
) -> Result<conifold_core::operators::Relation, CoreError> {
    let ops = OperatorSet::new(config.cycles.clone())?;
    let r = config.cycles.num_cycles();
    if i == 0 || j == 0 || i > r || j > r {
        return Err(CoreError::IndexOutOfRange { index: i.max(j), len: r });
    }
    ops.relation_classify(i - 1, j - 1)
}

/// Output of the `mutate` command: the mutated configuration (re-usable as a
/// config file) plus the cluster comparison when charges are available.
#[derive(serde::Serialize)]
pub struct MutateOutput {
    pub mutated: MutatedConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cluster_comparison: Option<ClusterMutationSummary>,
}

#[derive(serde::Serialize)]
pub struct MutatedConfig {
    pub rank: usize,
    pub pairing: Vec<Vec<String>>,
    pub cycles: Vec<Vec<String>>,
}

/// `mutate`: Hurwitz move `d_i -> d_i - lambda_ij d_j` (1-based indices).
pub fn cmd_mutate(
    config: &DegenerationConfig,
    i: usize,
    j: usize,
) -> Result<MutateOutput, CoreError> {
    let r = config.cycles.num_cycles();
    if i == 0 || j == 0 || i > r || j > r {
        return Err(CoreError::IndexOutOfRange { index: i.max(j), len: r });
    }
    let mutated = hurwitz_mutate(&config.cycles, i - 1, j - 1)?;

    let cluster_comparison = match (r, config.cluster_charges()) {
        (2, Some(charges)) if i == 1 && j == 2 => {
            let state = cluster::fg_coords(&charges, config.cluster_z())?;
            let (_, cmp) = cluster::mutate_and_compare(&config.cycles, &state)?;
            Some(ClusterMutationSummary::from(&cmp))
        }
        _ => None,
    };

    Ok(MutateOutput {
        mutated: MutatedConfig {
            rank: mutated.rank(),
            pairing: mutated.lattice().pairing_matrix().to_strings(),
            cycles: mutated.cycles().iter().map(|c| c.iter().map(format_rat).collect()).collect(),
        },
        cluster_comparison,
    })
}

/// `report`: analyze + monodromy + group ball + a seeded random-corpus
/// property summary.
pub fn cmd_report(
    config: &DegenerationConfig,
    opts: &AnalyzeOptions,
    mopts: &MonodromyOptions,
    seed: u64,
    corpus_size: usize,
) -> Result<AnalysisReport, CoreError> {
    let mut opts = *opts;
    if opts.group_len.is_none() {
        opts.group_len = Some(3);
    }
    let mut report = cmd_monodromy(config, &opts, mopts)?;
    report.corpus = Some(run_corpus(seed, corpus_size)?);
    Ok(report)
}

fn run_corpus(seed: u64, count: usize) -> Result<CorpusSummary, CoreError> {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut commutator_ok = 0usize;
    let mut equivalences_ok = 0usize;
    let mut braid_checks = 0usize;
    for _ in 0..count {
        let cfg = conifold_core::presets::random_config(&mut rng, 8, 4);
        let ops = OperatorSet::new(cfg.clone())?;
        let r = cfg.num_cycles();
        let mut ok = true;
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                if ops.commutator_nilpotent(i, j).is_err() || ops.group_commutator(i, j).is_err() {
                    ok = false;
                }
                if conifold_core::qmat::abs_is(ops.intersection().entry(i, j), 1) {
                    braid_checks += 1;
                }
            }
        }
        if ok {
            commutator_ok += 1;
        }
        if atoms::nnf_report(&cfg).map(|n| n.consistent).unwrap_or(false) {
            equivalences_ok += 1;
        }
    }
    Ok(CorpusSummary {
        seed,
        configs: count,
        commutator_closed_form_exact: commutator_ok,
        splitting_equivalences_consistent: equivalences_ok,
        braid_checks,
        all_pass: commutator_ok == count && equivalences_ok == count,
    })
}
