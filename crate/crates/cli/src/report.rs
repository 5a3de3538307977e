//! Report structures and rendering. JSON is the canonical format (stable key
//! order, canonical rational strings); the text renderer consumes the same
//! structure.

use num_complex::Complex64 as C64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use conifold_core::atoms;
use conifold_core::cluster::MutationComparison;
use conifold_core::dubrovin::{MonodromyResult, Orientation, PlComparison};
use conifold_core::operators::{GroupExploration, Relation};
use conifold_core::qmat::{format_rat, QMat};

pub fn complex_pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn matrix_strings(m: &QMat) -> Vec<Vec<String>> {
    m.to_strings()
}

#[derive(Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo { name: "conifold", version: env!("CARGO_PKG_VERSION") }
    }
}

pub fn config_hash(source: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(source.as_bytes());
    let digest = hasher.finalize();
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

#[derive(Serialize)]
pub struct LatticeSummary {
    pub rank: usize,
    pub nondegenerate: bool,
    pub num_cycles: usize,
    pub cycles_dependent: bool,
}

#[derive(Serialize)]
pub struct InvariantCheck {
    pub invariant: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct AtomSummary {
    pub rigid_dim: usize,
    pub flexible_count: usize,
    pub flexible_dims: Vec<usize>,
    pub vanishing_dim: usize,
    pub overlap_dim: usize,
    pub splits: bool,
    pub ambient_rank: usize,
}

impl From<&atoms::AtomDecomposition> for AtomSummary {
    fn from(d: &atoms::AtomDecomposition) -> Self {
        AtomSummary {
            rigid_dim: d.rigid_dim,
            flexible_count: d.flexible_count,
            flexible_dims: d.flexible_dims.clone(),
            vanishing_dim: d.vanishing_dim,
            overlap_dim: d.overlap_dim,
            splits: d.splits,
            ambient_rank: d.n,
        }
    }
}

#[derive(Serialize)]
pub struct GraphEdge {
    /// 1-based vertex labels.
    pub i: usize,
    pub j: usize,
    pub lambda: String,
}

#[derive(Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: Vec<GraphEdge>,
    /// 1-based vertex labels.
    pub components: Vec<Vec<usize>>,
}

impl From<&atoms::InteractionGraph> for GraphSummary {
    fn from(g: &atoms::InteractionGraph) -> Self {
        GraphSummary {
            vertices: g.vertices,
            edges: g
                .edges
                .iter()
                .map(|(i, j, l)| GraphEdge { i: i + 1, j: j + 1, lambda: format_rat(l) })
                .collect(),
            components: g
                .components
                .iter()
                .map(|c| c.iter().map(|v| v + 1).collect())
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct NnfSummary {
    pub stokes_abelian: bool,
    pub graph_has_edge: bool,
    pub lambda_offdiag_nonzero: bool,
    pub splits: bool,
    pub consistent: bool,
}

impl From<&atoms::NnfReport> for NnfSummary {
    fn from(n: &atoms::NnfReport) -> Self {
        NnfSummary {
            stokes_abelian: n.stokes_abelian,
            graph_has_edge: n.graph_has_edge,
            lambda_offdiag_nonzero: n.lambda_offdiag_nonzero,
            splits: n.splits,
            consistent: n.consistent,
        }
    }
}

#[derive(Serialize)]
pub struct ClemensSchmidSummary {
    pub ker_dim: usize,
    pub im_dim: usize,
    pub quotient_dim: usize,
    pub exact: bool,
}

#[derive(Serialize)]
pub struct HodgeDelta {
    pub delta_h11: i64,
    pub delta_h21: i64,
}

#[derive(Serialize)]
pub struct ExtSummary {
    pub degree_1: usize,
    /// "0" for non-interacting models, "unknown" for interacting multi-node.
    pub degree_2: String,
}

#[derive(Serialize)]
pub struct PairRelation {
    /// 1-based.
    pub i: usize,
    pub j: usize,
    pub relation: String,
}

#[derive(Serialize)]
pub struct GroupSummary {
    pub max_len: usize,
    pub element_count: usize,
    pub abelian: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated: Option<String>,
}

impl GroupSummary {
    pub fn from_exploration(g: &GroupExploration) -> Self {
        GroupSummary {
            max_len: g.max_len,
            element_count: g.element_count,
            abelian: g.abelian,
            truncated: None,
        }
    }
}

#[derive(Serialize)]
pub struct StepSummary {
    pub accepted: usize,
    pub rejected: usize,
    pub min_step: f64,
}

#[derive(Serialize)]
pub struct MonodromySummary {
    pub z: [f64; 2],
    pub radius: f64,
    pub tol: f64,
    pub orientation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<f64>,
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub fro_m_minus_id: f64,
    pub max_entry_m_minus_id: f64,
    pub residual_unipotency: f64,
    pub residual_ratio: f64,
    pub singular_values: [f64; 4],
    pub eigenvalue_deviations: [f64; 4],
    pub rank_log: usize,
    pub steps: StepSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pl_comparison: Option<PlSummary>,
}

#[derive(Serialize)]
pub struct PlSummary {
    pub numeric_unipotent: bool,
    pub rank_log_numeric: usize,
    pub rank_pl: usize,
    pub jordan_numeric: Vec<usize>,
    pub jordan_pl: Vec<usize>,
    pub jordan_match: bool,
    pub residue_scale: f64,
}

impl From<&PlComparison> for PlSummary {
    fn from(c: &PlComparison) -> Self {
        PlSummary {
            numeric_unipotent: c.numeric_unipotent,
            rank_log_numeric: c.rank_log_numeric,
            rank_pl: c.rank_pl,
            jordan_numeric: c.jordan_numeric.clone(),
            jordan_pl: c.jordan_pl.clone(),
            jordan_match: c.jordan_match,
            residue_scale: c.residue_scale,
        }
    }
}

pub fn monodromy_summary(
    res: &MonodromyResult,
    pl: Option<&PlComparison>,
) -> MonodromySummary {
    let matrix = (0..4)
        .map(|i| (0..4).map(|j| complex_pair(res.m[(i, j)])).collect())
        .collect();
    MonodromySummary {
        z: complex_pair(res.params.z),
        radius: res.params.radius,
        tol: res.params.tol,
        orientation: match res.params.orientation {
            Orientation::Counterclockwise => "ccw".to_string(),
            Orientation::Clockwise => "cw".to_string(),
        },
        anchor: res.params.anchor,
        matrix,
        fro_m_minus_id: res.fro_m_minus_id,
        max_entry_m_minus_id: res.max_entry_m_minus_id,
        residual_unipotency: res.residual_unipotency,
        residual_ratio: if res.fro_m_minus_id > 0.0 {
            res.residual_unipotency / res.fro_m_minus_id
        } else {
            0.0
        },
        singular_values: res.singular_values,
        eigenvalue_deviations: res.eigenvalue_deviations,
        rank_log: res.rank_above(1e-6),
        steps: StepSummary {
            accepted: res.stats.accepted,
            rejected: res.stats.rejected,
            min_step: res.stats.min_step,
        },
        pl_comparison: pl.map(PlSummary::from),
    }
}

#[derive(Serialize)]
pub struct NIntSummary {
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
    pub contraction: String,
    pub unipotent: bool,
}

#[derive(Serialize)]
pub struct DecategorificationSummary {
    pub cycle: usize,
    pub sends_s_to_minus_delta: bool,
    pub commutes: bool,
}

#[derive(Serialize)]
pub struct CompatibilitySummary {
    pub pass: bool,
    pub failing_entries: Vec<[usize; 2]>,
}

#[derive(Serialize)]
pub struct KDataSummary {
    pub n_int: NIntSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decategorification: Option<DecategorificationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing_compatibility: Option<CompatibilitySummary>,
}

#[derive(Serialize)]
pub struct ClusterMutationSummary {
    pub lambda12: String,
    pub linear_transport: [f64; 2],
    pub cluster_value: [f64; 2],
    pub discrepancy: f64,
}

impl From<&MutationComparison> for ClusterMutationSummary {
    fn from(c: &MutationComparison) -> Self {
        ClusterMutationSummary {
            lambda12: format_rat(&c.lambda12),
            linear_transport: complex_pair(c.linear_transport),
            cluster_value: complex_pair(c.cluster_value),
            discrepancy: c.discrepancy,
        }
    }
}

#[derive(Serialize)]
pub struct ClusterSummary {
    pub z: [f64; 2],
    pub coords: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<ClusterMutationSummary>,
}

#[derive(Serialize)]
pub struct CorpusSummary {
    pub seed: u64,
    pub configs: usize,
    pub commutator_closed_form_exact: usize,
    pub splitting_equivalences_consistent: usize,
    pub braid_checks: usize,
    pub all_pass: bool,
}

/// The full analysis bundle. Field order is the canonical JSON key order.
#[derive(Serialize)]
pub struct AnalysisReport {
    pub tool: ToolInfo,
    pub config_hash: String,
    pub lattice: LatticeSummary,
    pub intersection_matrix: Vec<Vec<String>>,
    pub operator_identities: Vec<InvariantCheck>,
    pub pair_relations: Vec<PairRelation>,
    pub atoms: AtomSummary,
    pub interaction_graph: GraphSummary,
    pub nnf: NnfSummary,
    pub clemens_schmid: ClemensSchmidSummary,
    pub euler_grading: Vec<String>,
    pub hodge_delta: HodgeDelta,
    pub ext_dimensions: ExtSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<MonodromySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kdata: Option<KDataSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cluster: Option<ClusterSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusSummary>,
}

impl AnalysisReport {
    pub fn all_invariants_pass(&self) -> bool {
        self.operator_identities.iter().all(|c| c.pass)
            && self.nnf.consistent
            && self.clemens_schmid.exact
            && self
                .kdata
                .as_ref()
                .and_then(|k| k.decategorification.as_ref())
                .is_none_or(|d| d.commutes && d.sends_s_to_minus_delta)
    }

    pub fn failing_invariants(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .operator_identities
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.invariant.clone())
            .collect();
        if !self.nnf.consistent {
            out.push("splitting equivalences consistent".into());
        }
        if !self.clemens_schmid.exact {
            out.push("clemens-schmid rank-nullity".into());
        }
        if let Some(d) = self.kdata.as_ref().and_then(|k| k.decategorification.as_ref()) {
            if !(d.commutes && d.sends_s_to_minus_delta) {
                out.push("decategorification square commutes".into());
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        use std::fmt::Write;
        let _ = writeln!(w, "conifold analysis ({} v{})", self.tool.name, self.tool.version);
        let _ = writeln!(w, "config: {}", self.config_hash);
        let _ = writeln!(
            w,
            "lattice: rank {} ({}degenerate), {} cycle(s){}",
            self.lattice.rank,
            if self.lattice.nondegenerate { "non" } else { "" },
            self.lattice.num_cycles,
            if self.lattice.cycles_dependent { " [dependent]" } else { "" }
        );
        let _ = writeln!(w, "intersection matrix:");
        for row in &self.intersection_matrix {
            let _ = writeln!(w, "    [{}]", row.join(", "));
        }
        let _ = writeln!(w, "operator identities:");
        for c in &self.operator_identities {
            let _ = writeln!(w, "    [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.invariant);
        }
        if !self.pair_relations.is_empty() {
            let _ = writeln!(w, "pair relations:");
            for r in &self.pair_relations {
                let _ = writeln!(w, "    ({}, {}): {}", r.i, r.j, r.relation);
            }
        }
        let a = &self.atoms;
        let _ = writeln!(
            w,
            "atoms: rigid dim {}, {} flexible (rank 1 each), vanishing dim {}, overlap {}, splits: {}",
            a.rigid_dim, a.flexible_count, a.vanishing_dim, a.overlap_dim, a.splits
        );
        let g = &self.interaction_graph;
        let _ = writeln!(
            w,
            "interaction graph: {} vertices, {} edge(s), components {:?}",
            g.vertices,
            g.edges.len(),
            g.components
        );
        for e in &g.edges {
            let _ = writeln!(w, "    edge {{{}, {}}} lambda = {}", e.i, e.j, e.lambda);
        }
        let n = &self.nnf;
        let _ = writeln!(
            w,
            "splitting criterion: abelian={}, edge={}, lambda!=0: {}, splits={}, consistent={}",
            n.stokes_abelian, n.graph_has_edge, n.lambda_offdiag_nonzero, n.splits, n.consistent
        );
        let cs = &self.clemens_schmid;
        let _ = writeln!(
            w,
            "clemens-schmid: ker {}, im {}, quotient {}, exact: {}",
            cs.ker_dim, cs.im_dim, cs.quotient_dim, cs.exact
        );
        let _ = writeln!(w, "euler grading: [{}]", self.euler_grading.join(", "));
        let _ = writeln!(
            w,
            "hodge delta: (h11, h21) += ({}, {})",
            self.hodge_delta.delta_h11, self.hodge_delta.delta_h21
        );
        let _ = writeln!(
            w,
            "ext dimensions: degree 1 -> {}, degree >= 2 -> {}",
            self.ext_dimensions.degree_1, self.ext_dimensions.degree_2
        );
        if let Some(g) = &self.group {
            let _ = writeln!(
                w,
                "group ball (len <= {}): {} elements, abelian: {}",
                g.max_len, g.element_count, g.abelian
            );
        }
        if let Some(m) = &self.monodromy {
            let _ = writeln!(
                w,
                "monodromy: z = {:?}, radius {}, tol {:.1e}, {}",
                m.z, m.radius, m.tol, m.orientation
            );
            let _ = writeln!(
                w,
                "    |M-Id|_F = {:.9}, max-entry = {:.9}, unipotency residual ratio = {:.3e}",
                m.fro_m_minus_id, m.max_entry_m_minus_id, m.residual_ratio
            );
            let _ = writeln!(
                w,
                "    singular values of M-Id: {:?} (rank of log = {})",
                m.singular_values, m.rank_log
            );
            let _ = writeln!(w, "    eigenvalue deviations: {:?}", m.eigenvalue_deviations);
            let _ = writeln!(
                w,
                "    steps: {} accepted, {} rejected",
                m.steps.accepted, m.steps.rejected
            );
            if let Some(p) = &m.pl_comparison {
                let _ = writeln!(
                    w,
                    "    vs PL operator: jordan {:?} (numeric) vs {:?} (exact), match: {}, residue scale {:.9}",
                    p.jordan_numeric, p.jordan_pl, p.jordan_match, p.residue_scale
                );
            }
        }
        if let Some(k) = &self.kdata {
            let _ = writeln!(
                w,
                "K-class data: N_int rank {}, contraction {}, unipotent: {}",
                k.n_int.rank, k.n_int.contraction, k.n_int.unipotent
            );
            if let Some(d) = &k.decategorification {
                let _ = writeln!(
                    w,
                    "    decategorification (cycle {}): ch(S) = -delta: {}, square commutes: {}",
                    d.cycle, d.sends_s_to_minus_delta, d.commutes
                );
            }
            if let Some(p) = &k.pairing_compatibility {
                let _ = writeln!(w, "    pairing compatibility: {}", if p.pass { "pass" } else { "FAIL" });
            }
        }
        if let Some(c) = &self.cluster {
            let _ = writeln!(w, "cluster coordinates (z = {:?}):", c.z);
            for (k, x) in c.coords.iter().enumerate() {
                let _ = writeln!(w, "    X_{} = {:?}", k + 1, x);
            }
            if let Some(m) = &c.mutation {
                let _ = writeln!(
                    w,
                    "    mutation (lambda12 = {}): linear {:?} vs cluster {:?}, |diff| = {:.6}",
                    m.lambda12, m.linear_transport, m.cluster_value, m.discrepancy
                );
            }
        }
        if let Some(c) = &self.corpus {
            let _ = writeln!(
                w,
                "random corpus (seed {}): commutator closed form exact on {}/{} configs, equivalences consistent on {}/{}, {} braid checks, all pass: {}",
                c.seed,
                c.commutator_closed_form_exact,
                c.configs,
                c.splitting_equivalences_consistent,
                c.configs,
                c.braid_checks,
                c.all_pass
            );
        }
        let _ = writeln!(
            w,
            "verdict: {}",
            if self.all_invariants_pass() { "all invariant suites pass" } else { "INVARIANT FAILURES" }
        );
        out
    }

    /// Describes the relation of a generator pair.
    pub fn relation_string(rel: Relation) -> String {
        rel.to_string()
    }
}
