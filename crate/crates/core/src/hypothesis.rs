//! Per-node structural analysis and the per-modulus verification sweep.
//!
//! For a marked node k of an irreducible root system this module computes,
//! inside the finite Weyl group W:
//!
//! * the index of the parabolic P = ⟨s_i : i ≠ k⟩ inside the hyperplane
//!   stabilizer Q (always 1 or 2 here, and checked),
//! * whether every w outside Q moves some zero-level root to a root whose
//!   coefficient at the marked node is small (±1, ±2 — or ±3 for the relaxed
//!   bound),
//! * commutativity of the orbital schemes on W/Q and W/P,
//!
//! and combines them into a verified path: `Standard` when the strict shift
//! bound and the W/Q scheme both hold, `Extended` when only the relaxed bound
//! holds but the index is exactly 2 and W/P is commutative, `None` otherwise.
//!
//! The modulus-level sweep then builds the affine quotient data at a given h,
//! folds the coset actions of K = Q ⋉ Y and H = P ⋉ Y, takes their scheme
//! verdicts, and checks the inertia condition for every character of the
//! marked translation coordinate.

use crate::error::{Error, Result};
use crate::groupcore::{coset_action, quotient_facts, QuotientFacts, DEFAULT_DEGREE_CAP};
use crate::rootsys::{alpha_coefficient, RootType};
use crate::scheme::Scheme;
use crate::weyl_affine::{
    character_fusion, enumerate_lattice, folded_coset_action, inertia_weyl_part, LatticeConfig,
    NodeData, WeylGroup,
};
use serde::{Deserialize, Serialize};

/// Which set of side conditions was verified for the marked node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifiedPath {
    /// Shift bound ±2, W/Q scheme commutative.
    Standard,
    /// Shift bound ±3 with index exactly 2 and W/P commutative.
    Extended,
    /// Neither set of conditions holds.
    None,
}

/// Everything about a marked node that does not depend on the modulus.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeAnalysis {
    pub rt: RootType,
    pub k: usize,
    /// Coefficient of the marked simple root in the highest root.
    pub marked_coefficient: i64,
    /// |Q : P|.
    pub qp_index: u64,
    /// Every w ∉ Q sends some zero-level root to coefficient ±1 or ±2 at k.
    pub shift_bounded_by_two: bool,
    /// Same with ±3 allowed.
    pub shift_bounded_by_three: bool,
    /// W/Q orbital scheme commutative.
    pub q_commutative: bool,
    /// W/P orbital scheme commutative.
    pub p_commutative: bool,
    pub path: VerifiedPath,
    /// Table prediction for the W/P verdict.
    pub predicted_p: bool,
    /// Table prediction for the W/Q verdict, which is also the predicted
    /// multiplicity-freeness of the K-side induction at every modulus.
    pub predicted_q: bool,
    /// Predicted multiplicity-freeness of the H-side induction: the P verdict
    /// together with Q = P.
    pub predicted_h: bool,
    /// P commutative while Q is a proper extension that is not: worth
    /// flagging wherever it appears.
    pub pointwise_only: bool,
}

/// Classified-type prediction for the W/P orbital scheme.
pub fn predicted_parabolic_commutative(rt: RootType, k: usize) -> bool {
    match rt {
        RootType::A(_) | RootType::B(_) | RootType::C(_) | RootType::G2 => true,
        RootType::D(n) => {
            let n = n as usize;
            2 * k <= n || k >= n - 1
        }
        RootType::E6 => matches!(k, 1 | 2 | 6),
        RootType::E7 => matches!(k, 1 | 2 | 7),
        RootType::E8 => matches!(k, 1 | 8),
        RootType::F4 => matches!(k, 1 | 4),
    }
}

/// Classified-type prediction for the W/Q orbital scheme, which governs the
/// K-side verdict at every modulus.
pub fn predicted_normalizer_commutative(rt: RootType, k: usize) -> bool {
    match rt {
        RootType::A(_) | RootType::B(_) | RootType::C(_) | RootType::G2 => true,
        RootType::D(n) => {
            let n = n as usize;
            if n % 2 == 1 {
                true
            } else {
                k <= 2 * (n / 4) + 1 || k >= n - 1
            }
        }
        RootType::E6 => matches!(k, 1 | 2 | 6),
        RootType::E7 => matches!(k, 1 | 2 | 7),
        RootType::E8 => matches!(k, 1 | 8),
        RootType::F4 => matches!(k, 1 | 4),
    }
}

/// Predicted multiplicity-freeness for the H-side induction.
pub fn predicted_h_multiplicity_free(rt: RootType, k: usize, qp_index: u64) -> bool {
    predicted_parabolic_commutative(rt, k) && qp_index == 1
}

/// For every w ∉ Q, scan the zero-level roots and record whether some image
/// lands at coefficient ±1/±2 (first flag) or ±1/±2/±3 (second flag) at the
/// marked node. Matrices act on coroot coordinates, so a root is pushed
/// through as its coroot and the image root is recovered by lookup.
fn shift_bounds(weyl: &WeylGroup, node: &NodeData) -> Result<(bool, bool)> {
    let rs = weyl.root_system();
    let k0 = node.k - 1;
    let zero_level: Vec<&[i64]> = rs
        .roots()
        .iter()
        .filter(|r| r.root[k0] == 0)
        .map(|r| r.coroot.as_slice())
        .collect();
    let mut bounded_two = true;
    let mut bounded_three = true;
    for idx in 0..weyl.order() as u32 {
        if node.q.contains(idx) {
            continue;
        }
        let m = weyl.group().element(idx);
        let mut any_two = false;
        let mut any_three = false;
        for &coroot in &zero_level {
            let image = m.apply(coroot);
            let root = rs.root_by_coroot(&image).ok_or_else(|| {
                Error::invariant("matrix image is not a coroot".to_string())
            })?;
            let c = root.root[k0].abs();
            if c == 1 || c == 2 {
                any_two = true;
                any_three = true;
                break;
            }
            if c == 3 {
                any_three = true;
            }
        }
        bounded_two &= any_two;
        bounded_three &= any_three;
        if !bounded_two && !bounded_three {
            break;
        }
    }
    Ok((bounded_two, bounded_three))
}

fn coset_scheme(weyl: &WeylGroup, sub: &crate::groupcore::Subgroup) -> Result<Scheme> {
    let action = coset_action(
        weyl.group(),
        sub,
        weyl.group().generator_indices(),
        crate::groupcore::DEFAULT_DEGREE_CAP,
    )?;
    Scheme::from_action(&action.gen_perms, action.space.len())
}

pub fn analyze_node(weyl: &WeylGroup, node: &NodeData) -> Result<NodeAnalysis> {
    let rt = weyl.root_system().root_type();
    let k = node.k;
    let marked_coefficient = alpha_coefficient(k, &weyl.root_system().highest_root().root)?;
    let qp_index = node.qp_index();
    if qp_index > 2 {
        return Err(Error::invariant(format!(
            "stabilizer index {} exceeds 2 at node {}",
            qp_index, k
        )));
    }
    let (shift_bounded_by_two, shift_bounded_by_three) = shift_bounds(weyl, node)?;
    let q_commutative = coset_scheme(weyl, &node.q)?.is_commutative();
    let p_commutative = coset_scheme(weyl, &node.p)?.is_commutative();

    let path = if shift_bounded_by_two && q_commutative {
        VerifiedPath::Standard
    } else if qp_index == 2 && shift_bounded_by_three && p_commutative {
        VerifiedPath::Extended
    } else {
        VerifiedPath::None
    };

    let predicted_p = predicted_parabolic_commutative(rt, k);
    let predicted_q = predicted_normalizer_commutative(rt, k);
    let predicted_h = predicted_h_multiplicity_free(rt, k, qp_index);
    let pointwise_only = p_commutative && qp_index == 2 && !q_commutative;

    Ok(NodeAnalysis {
        rt,
        k,
        marked_coefficient,
        qp_index,
        shift_bounded_by_two,
        shift_bounded_by_three,
        q_commutative,
        p_commutative,
        path,
        predicted_p,
        predicted_q,
        predicted_h,
        pointwise_only,
    })
}

/// Scheme invariants in a serializable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeSummary {
    pub degree: usize,
    pub rank: usize,
    pub commutative: bool,
    pub symmetric: bool,
    pub suborbit_sizes: Vec<u64>,
}

impl From<&Scheme> for SchemeSummary {
    fn from(s: &Scheme) -> SchemeSummary {
        SchemeSummary {
            degree: s.degree(),
            rank: s.rank(),
            commutative: s.is_commutative(),
            symmetric: s.is_symmetric(),
            suborbit_sizes: s.suborbit_multiset(),
        }
    }
}

/// Verdicts for one (type, node, modulus) configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigReport {
    pub rt: RootType,
    pub k: usize,
    pub h: u32,
    /// |W| · h^rank.
    pub quotient_order: u64,
    /// The affine construction validated its translation lattice and
    /// commutator properties at this modulus.
    pub construction_valid: bool,
    /// Coset scheme of K = Q ⋉ Y.
    pub stabilizer_side: SchemeSummary,
    /// Coset scheme of H = P ⋉ Y.
    pub parabolic_side: SchemeSummary,
    /// Weyl inertia of every relevant marked-coordinate character is inside Q.
    pub inertia_contained: bool,
    /// … and equal to P.
    pub inertia_parabolic: bool,
    /// Conjugation only ever fuses the height-t character with the height
    /// h-t one.  Holds even where containment fails: when the marked matrix
    /// column is divisible by 3 and 3 | h, extra elements fix the character
    /// without leaving its exponent pair.
    pub inertia_fusion_bounded: bool,
    /// Table prediction for the K-side verdict.
    pub predicted: bool,
    /// K-side verdict matches the prediction.
    pub agrees: bool,
}

pub fn sweep_config(weyl: &WeylGroup, node: &NodeData, h: u32) -> Result<ConfigReport> {
    let rt = weyl.root_system().root_type();
    let cfg = LatticeConfig::build(weyl, node, h)?;
    let quotient_order = (weyl.order() as u64)
        .checked_mul((h as u64).pow(weyl.rank() as u32))
        .ok_or_else(|| Error::invariant("quotient order overflows".to_string()))?;

    let fk = folded_coset_action(weyl, &node.q, node.k, h)?;
    let stabilizer_scheme = Scheme::from_action(fk.gen_perms(), fk.degree())?;
    let fh = folded_coset_action(weyl, &node.p, node.k, h)?;
    let parabolic_scheme = Scheme::from_action(fh.gen_perms(), fh.degree())?;

    let mut inertia_contained = true;
    let mut inertia_parabolic = true;
    let mut inertia_fusion_bounded = true;
    for t in 1..h {
        if (2 * t) % h == 0 {
            continue;
        }
        let iw = inertia_weyl_part(&cfg, t)?;
        inertia_contained &= iw.is_subset_of(&node.q);
        inertia_parabolic &= iw.elements() == node.p.elements();
        inertia_fusion_bounded &= character_fusion(&cfg, t)
            .iter()
            .all(|&s| s == t || s == h - t);
    }

    let predicted = predicted_normalizer_commutative(rt, node.k);
    let agrees = stabilizer_scheme.is_commutative() == predicted;
    Ok(ConfigReport {
        rt,
        k: node.k,
        h,
        quotient_order,
        construction_valid: true,
        stabilizer_side: SchemeSummary::from(&stabilizer_scheme),
        parabolic_side: SchemeSummary::from(&parabolic_scheme),
        inertia_contained,
        inertia_parabolic,
        inertia_fusion_bounded,
        predicted,
        agrees,
    })
}

/// Structure of (Q ⋉ X)/(P ⋉ Y) inside the enumerated quotient at modulus h.
/// Needs the full quotient group, so only small configurations qualify.
pub fn translation_quotient_facts(cfg: &LatticeConfig, cap: usize) -> Result<QuotientFacts> {
    let lat = enumerate_lattice(cfg, cap)?;
    quotient_facts(&lat.group, &lat.kl_sub, &lat.h_sub)
}

/// Which member of the subgroup lattice a verdict talks about: the two
/// finite-level subgroups of W, or their translation-extended counterparts in
/// the quotient at a modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupKind {
    /// P ⋉ Y at a modulus.
    H,
    /// Q ⋉ Y at a modulus.
    K,
    /// The parabolic inside W.
    P,
    /// The hyperplane stabilizer inside W.
    Q,
}

impl SubgroupKind {
    pub fn parse(s: &str) -> Result<SubgroupKind> {
        match s {
            "H" | "h" => Ok(SubgroupKind::H),
            "K" | "k" => Ok(SubgroupKind::K),
            "P" | "p" => Ok(SubgroupKind::P),
            "Q" | "q" => Ok(SubgroupKind::Q),
            other => Err(Error::unsupported(format!(
                "unknown subgroup {other:?}; expected one of H, K, P, Q"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SubgroupKind::H => "H",
            SubgroupKind::K => "K",
            SubgroupKind::P => "P",
            SubgroupKind::Q => "Q",
        }
    }

    /// Does the verdict depend on the modulus at all?
    pub fn is_affine(self) -> bool {
        matches!(self, SubgroupKind::H | SubgroupKind::K)
    }
}

/// One row of a classification run. A row that could not be computed within
/// the configured caps keeps its prediction and carries the reason instead of
/// being dropped.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictRow {
    pub root_type: RootType,
    pub k: usize,
    /// Modulus for the affine subgroups; ignored echoes for P and Q rows.
    pub h: u32,
    pub subgroup: SubgroupKind,
    pub multiplicity_free: Option<bool>,
    pub scheme_rank: Option<usize>,
    pub symmetric: Option<bool>,
    pub predicted: bool,
    pub agreement: Option<bool>,
    pub skipped: Option<String>,
}

impl VerdictRow {
    fn skipped(rt: RootType, k: usize, h: u32, subgroup: SubgroupKind, why: &Error) -> VerdictRow {
        let predicted = match subgroup {
            SubgroupKind::K => predicted_normalizer_commutative(rt, k),
            SubgroupKind::Q => predicted_normalizer_commutative(rt, k),
            SubgroupKind::P => predicted_parabolic_commutative(rt, k),
            // without the stabilizer index the prediction falls back to the
            // parabolic table; a skipped row never claims agreement anyway
            SubgroupKind::H => predicted_parabolic_commutative(rt, k),
        };
        VerdictRow {
            root_type: rt,
            k,
            h,
            subgroup,
            multiplicity_free: None,
            scheme_rank: None,
            symmetric: None,
            predicted,
            agreement: None,
            skipped: Some(why.to_string()),
        }
    }

    fn from_summary(
        rt: RootType,
        k: usize,
        h: u32,
        subgroup: SubgroupKind,
        s: &SchemeSummary,
        predicted: bool,
    ) -> VerdictRow {
        VerdictRow {
            root_type: rt,
            k,
            h,
            subgroup,
            multiplicity_free: Some(s.commutative),
            scheme_rank: Some(s.rank),
            symmetric: Some(s.symmetric),
            predicted,
            agreement: Some(s.commutative == predicted),
            skipped: None,
        }
    }
}

/// Classification sweep over every node of one type and every listed modulus:
/// for each configuration a K row and an H row, each comparing the computed
/// scheme verdict with its table prediction. Rows the caps exclude are kept
/// with a skip marker.
pub fn classify_type(rt: RootType, h_list: &[u32]) -> Vec<VerdictRow> {
    let rank = rt.rank() as usize;
    let weyl = match WeylGroup::new(rt) {
        Ok(w) => w,
        Err(e) => {
            let mut rows = Vec::new();
            for k in 1..=rank {
                for &h in h_list {
                    rows.push(VerdictRow::skipped(rt, k, h, SubgroupKind::K, &e));
                    rows.push(VerdictRow::skipped(rt, k, h, SubgroupKind::H, &e));
                }
            }
            return rows;
        }
    };
    let mut rows = Vec::new();
    for k in 1..=rank {
        let node = match weyl.node_data(k) {
            Ok(n) => n,
            Err(e) => {
                for &h in h_list {
                    rows.push(VerdictRow::skipped(rt, k, h, SubgroupKind::K, &e));
                    rows.push(VerdictRow::skipped(rt, k, h, SubgroupKind::H, &e));
                }
                continue;
            }
        };
        let qp_index = node.qp_index();
        for &h in h_list {
            match sweep_config(&weyl, &node, h) {
                Ok(report) => {
                    rows.push(VerdictRow::from_summary(
                        rt,
                        k,
                        h,
                        SubgroupKind::K,
                        &report.stabilizer_side,
                        report.predicted,
                    ));
                    rows.push(VerdictRow::from_summary(
                        rt,
                        k,
                        h,
                        SubgroupKind::H,
                        &report.parabolic_side,
                        predicted_h_multiplicity_free(rt, k, qp_index),
                    ));
                }
                Err(e) => {
                    rows.push(VerdictRow::skipped(rt, k, h, SubgroupKind::K, &e));
                    rows.push(VerdictRow::skipped(rt, k, h, SubgroupKind::H, &e));
                }
            }
        }
    }
    rows
}

/// Verdict row plus the supporting reports for one fully specified
/// configuration. `config` is populated only for the modulus-dependent
/// subgroups.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SingleVerdict {
    pub row: VerdictRow,
    pub analysis: NodeAnalysis,
    pub config: Option<ConfigReport>,
}

/// Full pipeline for one (type, node, modulus, subgroup) choice: build the
/// finite group, analyze the node, run either the folded affine sweep (H, K)
/// or the finite coset scheme (P, Q), and compare with the table prediction.
pub fn verify_subgroup(
    rt: RootType,
    k: usize,
    h: u32,
    subgroup: SubgroupKind,
) -> Result<SingleVerdict> {
    if h < 2 {
        return Err(Error::BadModulus(h));
    }
    let weyl = WeylGroup::new(rt)?;
    let node = weyl.node_data(k)?;
    let analysis = analyze_node(&weyl, &node)?;
    match subgroup {
        SubgroupKind::K | SubgroupKind::H => {
            let report = sweep_config(&weyl, &node, h)?;
            let row = if subgroup == SubgroupKind::K {
                VerdictRow::from_summary(
                    rt,
                    k,
                    h,
                    subgroup,
                    &report.stabilizer_side,
                    report.predicted,
                )
            } else {
                VerdictRow::from_summary(
                    rt,
                    k,
                    h,
                    subgroup,
                    &report.parabolic_side,
                    analysis.predicted_h,
                )
            };
            Ok(SingleVerdict {
                row,
                analysis,
                config: Some(report),
            })
        }
        SubgroupKind::P | SubgroupKind::Q => {
            let (sub, predicted) = if subgroup == SubgroupKind::P {
                (&node.p, analysis.predicted_p)
            } else {
                (&node.q, analysis.predicted_q)
            };
            let crit =
                crate::scheme::coset_scheme_criterion(weyl.group(), sub, DEFAULT_DEGREE_CAP)?;
            let summary = SchemeSummary::from(&crit.scheme);
            let row = VerdictRow::from_summary(rt, k, h, subgroup, &summary, predicted);
            Ok(SingleVerdict {
                row,
                analysis,
                config: None,
            })
        }
    }
}

/// Skip row for a configuration the caps exclude, carrying the reason.
pub fn skipped_row(
    rt: RootType,
    k: usize,
    h: u32,
    subgroup: SubgroupKind,
    why: &Error,
) -> VerdictRow {
    VerdictRow::skipped(rt, k, h, subgroup, why)
}

/// Results of checking the folded coset actions against a full enumeration of
/// the quotient group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossCheck {
    pub rt: RootType,
    pub k: usize,
    pub h: u32,
    pub quotient_order: u64,
    /// Folded and direct schemes agree on degree, rank, suborbit sizes and
    /// both verdicts for the larger affine subgroup.
    pub stabilizer_consistent: bool,
    /// Same for the smaller affine subgroup.
    pub parabolic_consistent: bool,
    /// Number of double cosets of the larger affine subgroup.
    pub double_coset_count: usize,
    /// Norm of the induced trivial character equals that count.
    pub norm_matches_double_cosets: bool,
}

impl CrossCheck {
    pub fn consistent(&self) -> bool {
        self.stabilizer_consistent && self.parabolic_consistent && self.norm_matches_double_cosets
    }
}

/// Enumerate the whole quotient group at modulus h, rebuild both coset
/// schemes directly from that enumeration, and compare every scheme invariant
/// with the folded construction. Also checks that the norm of the induced
/// trivial character matches the double coset count. Only sensible when
/// |W| · h^rank fits under `cap`.
pub fn cross_check_config(
    weyl: &WeylGroup,
    node: &NodeData,
    h: u32,
    cap: usize,
) -> Result<CrossCheck> {
    let rt = weyl.root_system().root_type();
    let cfg = LatticeConfig::build(weyl, node, h)?;
    let lat = enumerate_lattice(&cfg, cap)?;
    let quotient_order = lat.group.order() as u64;

    let folded_summary = |sub: &crate::groupcore::Subgroup| -> Result<SchemeSummary> {
        let fa = folded_coset_action(weyl, sub, node.k, h)?;
        Ok(SchemeSummary::from(&Scheme::from_action(
            fa.gen_perms(),
            fa.degree(),
        )?))
    };
    let direct_summary = |sub: &crate::groupcore::Subgroup| -> Result<SchemeSummary> {
        let action = coset_action(
            &lat.group,
            sub,
            lat.group.generator_indices(),
            crate::groupcore::DEFAULT_DEGREE_CAP,
        )?;
        Ok(SchemeSummary::from(&Scheme::from_action(
            &action.gen_perms,
            action.space.len(),
        )?))
    };

    let stabilizer_consistent = folded_summary(&node.q)? == direct_summary(&lat.k_sub)?;
    let parabolic_consistent = folded_summary(&node.p)? == direct_summary(&lat.h_sub)?;

    let classes = lat.group.conjugacy_classes();
    let chi = crate::classfun::permutation_character(&lat.group, &lat.k_sub, &classes);
    let norm = crate::classfun::inner_product(&classes, quotient_order, &chi, &chi);
    let partition =
        crate::groupcore::double_coset_partition(&lat.group, &lat.k_sub, &lat.k_sub);
    let double_coset_count = partition.blocks.len();
    let norm_matches_double_cosets =
        norm == num_rational::Ratio::from_integer(double_coset_count as i128);

    Ok(CrossCheck {
        rt,
        k: node.k,
        h,
        quotient_order,
        stabilizer_consistent,
        parabolic_consistent,
        double_coset_count,
        norm_matches_double_cosets,
    })
}
