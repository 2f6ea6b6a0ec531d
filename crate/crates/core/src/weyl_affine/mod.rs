//! Finite Weyl groups as exact matrix groups, their finite affine quotients
//! W ⋉ (Z/h)^n, and the distinguished subgroup lattice attached to a marked
//! node of the diagram.
//!
//! For a marked node k the construction singles out:
//! - P: the reflection subgroup generated by the simple reflections away
//!   from k;
//! - Y: the sublattice of translation coordinates vanishing at k, with x the
//!   unit translation at k;
//! - Q: the setwise stabilizer of Y in W (equal to the normalizer of P);
//! - H: generated by P and one affine reflection per diagram component left
//!   after deleting k;
//! - L = H·⟨x⟩, K = Q·Y-translations, and KL, the stabilizer of Y in the
//!   whole quotient.

pub mod affine;
pub mod folded;
pub mod lattice;
pub mod matrix;

pub use affine::{affine_generators, build_affine_quotient, AffElem, AffOps};
pub use folded::{folded_coset_action, FoldedAction};
pub use matrix::{reflection_for, simple_reflection, Mat, MatOps};

use crate::error::{Error, Result};
use crate::groupcore::{normalizer, FiniteGroup, GroupOps, Subgroup};
use crate::rootsys::{build_root_system, Component, RootSystem, RootType};

/// Largest Weyl group this crate will enumerate elementwise.
pub const WEYL_ENUMERATION_CAP: u64 = 1_000_000;

/// Orders of the finite Weyl groups, used as generation witnesses.
pub fn known_weyl_order(rt: RootType) -> u64 {
    fn fact(n: u64) -> u64 {
        (1..=n).product()
    }
    match rt {
        RootType::A(n) => fact(n as u64 + 1),
        RootType::B(n) | RootType::C(n) => (1u64 << n) * fact(n as u64),
        RootType::D(n) => (1u64 << (n - 1)) * fact(n as u64),
        RootType::E6 => 51_840,
        RootType::E7 => 2_903_040,
        RootType::E8 => 696_729_600,
        RootType::F4 => 1_152,
        RootType::G2 => 12,
    }
}

pub struct WeylGroup {
    rs: RootSystem,
    group: FiniteGroup<Mat, MatOps>,
    simple_mats: Vec<Mat>,
}

impl WeylGroup {
    pub fn new(rt: RootType) -> Result<WeylGroup> {
        WeylGroup::with_cap(rt, WEYL_ENUMERATION_CAP)
    }

    pub fn with_cap(rt: RootType, cap: u64) -> Result<WeylGroup> {
        let expected = known_weyl_order(rt);
        if expected > cap {
            return Err(Error::unsupported(format!(
                "{}: Weyl group order {} exceeds the enumeration cap {}",
                rt.label(),
                expected,
                cap
            )));
        }
        let rs = build_root_system(rt)?;
        let n = rs.rank();
        let simple_mats: Vec<Mat> = (0..n).map(|j| simple_reflection(rs.cartan(), j)).collect();
        let group = FiniteGroup::generate(
            MatOps,
            Mat::identity(n),
            &simple_mats,
            (expected + 1) as usize,
        )?;
        if group.order() as u64 != expected {
            return Err(Error::invariant(format!(
                "{}: generated order {} does not match {}",
                rt.label(),
                group.order(),
                expected
            )));
        }
        Ok(WeylGroup {
            rs,
            group,
            simple_mats,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn group(&self) -> &FiniteGroup<Mat, MatOps> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn simple_matrices(&self) -> &[Mat] {
        &self.simple_mats
    }

    /// Index of the simple reflection s_i (node 1-based) in the group.
    pub fn simple_index(&self, node: usize) -> u32 {
        self.group.generator_indices()[node - 1]
    }

    /// Subgroup data attached to a marked node.
    pub fn node_data(&self, k: usize) -> Result<NodeData> {
        NodeData::new(self, k)
    }
}

/// Setwise stabilizer in W of the lattice {v : v_k = 0}: the matrices whose
/// rows away from k have zero k-entry.
pub fn lattice_normalizer(weyl: &WeylGroup, k: usize) -> Result<Subgroup> {
    weyl.root_system().check_node(k)?;
    let k0 = k - 1;
    let n = weyl.rank();
    let members: Vec<u32> = (0..weyl.order() as u32)
        .filter(|&idx| {
            let m = weyl.group.element(idx);
            (0..n).all(|i| i == k0 || m.get(i, k0) == 0)
        })
        .collect();
    Subgroup::from_members(&weyl.group, &members)
}

pub struct NodeData {
    pub k: usize,
    pub p: Subgroup,
    pub q: Subgroup,
    pub components: Vec<Component>,
}

impl NodeData {
    fn new(weyl: &WeylGroup, k: usize) -> Result<NodeData> {
        weyl.root_system().check_node(k)?;
        let p_gens: Vec<u32> = (1..=weyl.rank())
            .filter(|&i| i != k)
            .map(|i| weyl.simple_index(i))
            .collect();
        let p = Subgroup::generate(&weyl.group, &p_gens);
        let q = lattice_normalizer(weyl, k)?;
        if !p.is_subset_of(&q) {
            return Err(Error::invariant(
                "parabolic subgroup escapes the lattice stabilizer".to_string(),
            ));
        }
        let norm = normalizer(&weyl.group, &p)?;
        if norm.elements() != q.elements() {
            return Err(Error::invariant(
                "lattice stabilizer differs from the normalizer of the parabolic".to_string(),
            ));
        }
        let deleted = weyl.root_system().delete_node(k)?;
        Ok(NodeData {
            k,
            p,
            q,
            components: deleted.components,
        })
    }

    pub fn qp_index(&self) -> u64 {
        (self.q.order() / self.p.order()) as u64
    }
}

/// The affine data at level h for a marked node: the distinguished
/// generators of H, the extra translation x, and validated structural
/// properties of the construction.
pub struct LatticeConfig<'w> {
    pub weyl: &'w WeylGroup,
    pub node: &'w NodeData,
    pub h: u32,
    pub ops: AffOps,
    /// Unit translation at the marked node.
    pub x: AffElem,
    /// Generators of H: the simple reflections away from k, then one affine
    /// reflection per component.
    pub h_gens: Vec<AffElem>,
    /// How many of `h_gens` are plain reflections (the rest are affine).
    pub n_plain_gens: usize,
}

impl<'w> LatticeConfig<'w> {
    pub fn build(weyl: &'w WeylGroup, node: &'w NodeData, h: u32) -> Result<LatticeConfig<'w>> {
        let ops = AffOps::new(h)?;
        let n = weyl.rank();
        let k0 = node.k - 1;
        let rs = weyl.root_system();

        let mut x_v = vec![0u32; n];
        x_v[k0] = 1 % h;
        let x = AffElem::translation(x_v);

        let mut h_gens: Vec<AffElem> = (1..=n)
            .filter(|&i| i != node.k)
            .map(|i| AffElem {
                m: weyl.simple_mats[i - 1].clone(),
                v: vec![0; n],
            })
            .collect();
        let n_plain_gens = h_gens.len();

        for comp in &node.components {
            let beta = &comp.highest_root;
            let refl_mat = reflection_for(rs.cartan(), &beta.root, &beta.coroot);
            let mut chosen: Option<AffElem> = None;
            for sign in [1i64, -1] {
                let v = ops.reduce(&beta.coroot.iter().map(|&c| sign * c).collect::<Vec<_>>());
                let cand = AffElem {
                    m: refl_mat.clone(),
                    v,
                };
                if Self::affine_reflection_ok(weyl, node, &ops, &cand, k0) {
                    chosen = Some(cand);
                    break;
                }
            }
            let refl = chosen.ok_or_else(|| {
                Error::invariant(format!(
                    "no valid affine reflection for the component at nodes {:?}",
                    comp.nodes
                ))
            })?;
            h_gens.push(refl);
        }

        let cfg = LatticeConfig {
            weyl,
            node,
            h,
            ops,
            x,
            h_gens,
            n_plain_gens,
        };
        cfg.check_translation_lattice()?;
        cfg.check_commutators()?;
        Ok(cfg)
    }

    fn affine_reflection_ok(
        weyl: &WeylGroup,
        node: &NodeData,
        ops: &AffOps,
        cand: &AffElem,
        k0: usize,
    ) -> bool {
        if cand.v.iter().all(|&c| c == 0) {
            return false; // degenerates to a plain Weyl element
        }
        if cand.v[k0] != 0 {
            return false; // translation part must lie in Y
        }
        if !ops.mul(cand, cand).is_identity() {
            return false;
        }
        match weyl.group.index_of(&cand.m) {
            Some(idx) => node.p.contains(idx),
            None => false,
        }
    }

    /// Certificate that the translations inside H are exactly Y.
    ///
    /// Containment: every generator of H has its translation part in Y and
    /// its matrix part stabilizing Y, so all of H stays inside the span.
    /// Fullness: t(±β∨) lies in H for each component highest root β, and
    /// conjugating by the reflections of the component sweeps out enough
    /// coroots to span the component's coordinate lattice.  This is checked
    /// exactly, over the integers, so it holds for every modulus at once.
    fn check_translation_lattice(&self) -> Result<()> {
        let k0 = self.node.k - 1;
        for (pos, g) in self.h_gens.iter().enumerate() {
            if g.v[k0] != 0 {
                return Err(Error::invariant(format!(
                    "H generator {} translates across the marked hyperplane",
                    pos
                )));
            }
            let idx = self
                .weyl
                .group
                .index_of(&g.m)
                .ok_or_else(|| Error::invariant("H generator matrix is not in W".to_string()))?;
            if !self.node.p.contains(idx) {
                return Err(Error::invariant(format!(
                    "H generator {} has matrix part outside the parabolic",
                    pos
                )));
            }
        }
        for comp in &self.node.components {
            let beta = &comp.highest_root;
            // Orbit of the component highest coroot under the component's
            // reflections, over the integers.
            let mut orbit = vec![beta.coroot.clone()];
            let mut seen: std::collections::HashSet<Vec<i64>> = orbit.iter().cloned().collect();
            let mut frontier = orbit.clone();
            while let Some(v) = frontier.pop() {
                for &node_i in &comp.nodes {
                    let img = self.weyl.simple_mats[node_i - 1].apply(&v);
                    if seen.insert(img.clone()) {
                        orbit.push(img.clone());
                        frontier.push(img);
                    }
                }
            }
            let coords: Vec<usize> = comp.nodes.iter().map(|&i| i - 1).collect();
            for v in &orbit {
                if v[k0] != 0 {
                    return Err(Error::invariant(
                        "component coroot orbit leaves the hyperplane lattice".to_string(),
                    ));
                }
            }
            if !lattice::spans_standard_lattice(&orbit, &coords) {
                return Err(Error::invariant(format!(
                    "component at nodes {:?}: reachable translations span a proper sublattice",
                    comp.nodes
                )));
            }
        }
        Ok(())
    }

    /// Commutators of x with each generator of H must be Y-translations.
    fn check_commutators(&self) -> Result<()> {
        let k0 = self.node.k - 1;
        let xinv = self.ops.inv(&self.x);
        for (pos, g) in self.h_gens.iter().enumerate() {
            let ginv = self.ops.inv(g);
            let c = self
                .ops
                .mul(&self.ops.mul(&self.ops.mul(&xinv, &ginv), &self.x), g);
            if !c.is_translation() || c.v[k0] != 0 {
                return Err(Error::invariant(format!(
                    "commutator of x with H generator {} leaves the Y-translations",
                    pos
                )));
            }
        }
        Ok(())
    }

    /// Generators of K: the stabilizer part lifted from W, then the unit
    /// Y-translations.
    pub fn k_gens(&self) -> Vec<AffElem> {
        let n = self.weyl.rank();
        let mut gens: Vec<AffElem> = self
            .node
            .q
            .generators()
            .iter()
            .map(|&gi| AffElem {
                m: self.weyl.group.element(gi).clone(),
                v: vec![0; n],
            })
            .collect();
        gens.extend(self.y_gens());
        gens
    }

    /// Unit translations spanning Y.
    pub fn y_gens(&self) -> Vec<AffElem> {
        let n = self.weyl.rank();
        (0..n)
            .filter(|&j| j != self.node.k - 1)
            .map(|j| {
                let mut v = vec![0u32; n];
                v[j] = 1 % self.h;
                AffElem::translation(v)
            })
            .collect()
    }
}

/// Weyl part of the inertia group of the height-t character of the
/// translation lattice: the w ∈ W with t·M(w)[i][k] ≡ t·δ_ik (mod h) for
/// all i.  The full inertia group in the quotient is this subgroup extended
/// by all translations.
pub fn inertia_weyl_part(cfg: &LatticeConfig, t: u32) -> Result<Subgroup> {
    let h = cfg.h as i64;
    let t = t as i64;
    let n = cfg.weyl.rank();
    let k0 = cfg.node.k - 1;
    let members: Vec<u32> = (0..cfg.weyl.order() as u32)
        .filter(|&idx| {
            let m = cfg.weyl.group.element(idx);
            (0..n).all(|i| {
                let delta = if i == k0 { 1 } else { 0 };
                (t * (m.get(i, k0) - delta)).rem_euclid(h) == 0
            })
        })
        .collect();
    Subgroup::from_members(&cfg.weyl.group, &members)
}

/// Exponents s such that some w ∈ W carries the height-t character of the
/// translation lattice to the height-s one, i.e. t·M(w)[i][k] ≡ s·δ_ik
/// (mod h) for all i.  Translations centralize the lattice, so this is the
/// full conjugation orbit of the exponent.  Sorted and deduplicated.
pub fn character_fusion(cfg: &LatticeConfig, t: u32) -> Vec<u32> {
    let h = cfg.h as i64;
    let t = t as i64;
    let n = cfg.weyl.rank();
    let k0 = cfg.node.k - 1;
    let mut out: Vec<u32> = (0..cfg.weyl.order() as u32)
        .filter_map(|idx| {
            let m = cfg.weyl.group.element(idx);
            let fuses = (0..n).all(|i| i == k0 || (t * m.get(i, k0)).rem_euclid(h) == 0);
            fuses.then(|| (t * m.get(k0, k0)).rem_euclid(h) as u32)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The whole subgroup lattice realized inside an enumerated quotient.
/// Feasible only for small |W|·h^n; used to cross-check the folded path.
pub struct EnumeratedLattice {
    pub group: FiniteGroup<AffElem, AffOps>,
    pub h_sub: Subgroup,
    pub k_sub: Subgroup,
    pub l_sub: Subgroup,
    pub kl_sub: Subgroup,
    pub y_sub: Subgroup,
    pub x_idx: u32,
}

pub fn enumerate_lattice(cfg: &LatticeConfig, cap: usize) -> Result<EnumeratedLattice> {
    let weyl_order = cfg.weyl.order() as u64;
    let n = cfg.weyl.rank() as u32;
    let total = weyl_order
        .checked_mul((cfg.h as u64).pow(n))
        .ok_or_else(|| Error::invariant("quotient order overflows".to_string()))?;
    if total > cap as u64 {
        return Err(Error::OrderCapExceeded {
            partial: total as usize,
            cap,
        });
    }
    let group = build_affine_quotient(cfg.weyl.simple_matrices(), cfg.h, cap)?;
    if group.order() as u64 != total {
        return Err(Error::invariant(format!(
            "quotient order {} does not match |W|·h^n = {}",
            group.order(),
            total
        )));
    }
    let idx_of = |e: &AffElem| -> Result<u32> {
        group
            .index_of(e)
            .ok_or_else(|| Error::invariant("constructed element missing from quotient".to_string()))
    };

    let h_gen_idx: Vec<u32> = cfg.h_gens.iter().map(&idx_of).collect::<Result<_>>()?;
    let h_sub = Subgroup::generate(&group, &h_gen_idx);
    let k_gen_idx: Vec<u32> = cfg.k_gens().iter().map(&idx_of).collect::<Result<_>>()?;
    let k_sub = Subgroup::generate(&group, &k_gen_idx);
    let y_gen_idx: Vec<u32> = cfg.y_gens().iter().map(&idx_of).collect::<Result<_>>()?;
    let y_sub = Subgroup::generate(&group, &y_gen_idx);
    let x_idx = idx_of(&cfg.x)?;

    let mut l_gen_idx = h_gen_idx.clone();
    l_gen_idx.push(x_idx);
    let l_sub = Subgroup::generate(&group, &l_gen_idx);
    let mut kl_gen_idx = k_gen_idx.clone();
    kl_gen_idx.push(x_idx);
    let kl_sub = Subgroup::generate(&group, &kl_gen_idx);

    let h_pow = |e: u32| (cfg.h as u64).pow(e);
    let p_ord = cfg.node.p.order() as u64;
    let q_ord = cfg.node.q.order() as u64;
    let checks: [(&str, u64, u64); 5] = [
        ("|H|", h_sub.order() as u64, p_ord * h_pow(n - 1)),
        ("|K|", k_sub.order() as u64, q_ord * h_pow(n - 1)),
        ("|L|", l_sub.order() as u64, p_ord * h_pow(n)),
        ("|KL|", kl_sub.order() as u64, q_ord * h_pow(n)),
        ("|Y|", y_sub.order() as u64, h_pow(n - 1)),
    ];
    for (name, got, want) in checks {
        if got != want {
            return Err(Error::invariant(format!(
                "{} = {}, expected {}",
                name, got, want
            )));
        }
    }

    // Translations inside H are exactly Y.
    let k0 = cfg.node.k as usize - 1;
    let mut h_translations = 0u64;
    for &e in h_sub.elements() {
        let el = group.element(e);
        if el.is_translation() {
            h_translations += 1;
            if el.v[k0] != 0 {
                return Err(Error::invariant(
                    "H contains a translation outside Y".to_string(),
                ));
            }
        }
    }
    if h_translations != h_pow(n - 1) {
        return Err(Error::invariant(
            "translations of H do not exhaust Y".to_string(),
        ));
    }

    // Weyl parts inside K are exactly the lattice stabilizer.
    let mut k_weyl = 0u64;
    for &e in k_sub.elements() {
        let el = group.element(e);
        if el.v.iter().all(|&c| c == 0) {
            k_weyl += 1;
            let widx = cfg
                .weyl
                .group
                .index_of(&el.m)
                .ok_or_else(|| Error::invariant("K element matrix missing from W".to_string()))?;
            if !cfg.node.q.contains(widx) {
                return Err(Error::invariant(
                    "K contains a Weyl element outside the stabilizer".to_string(),
                ));
            }
        }
    }
    if k_weyl != q_ord {
        return Err(Error::invariant(
            "Weyl part of K does not exhaust the stabilizer".to_string(),
        ));
    }

    // KL is the full setwise stabilizer of Y in the quotient.
    for &e in kl_sub.elements() {
        let el = group.element(e);
        let widx = cfg.weyl.group.index_of(&el.m).unwrap();
        if !cfg.node.q.contains(widx) {
            return Err(Error::invariant(
                "KL contains an element moving the Y-lattice".to_string(),
            ));
        }
    }

    // K is generated by the stabilizer together with H.
    let mut qh_gens = h_gen_idx.clone();
    for &gi in cfg.node.q.generators() {
        let m = cfg.weyl.group.element(gi).clone();
        qh_gens.push(idx_of(&AffElem {
            m,
            v: vec![0; n as usize],
        })?);
    }
    let qh = Subgroup::generate(&group, &qh_gens);
    if qh.elements() != k_sub.elements() {
        return Err(Error::invariant(
            "stabilizer and H together do not generate K".to_string(),
        ));
    }

    if k_sub.contains(x_idx) {
        return Err(Error::invariant("x must lie outside K".to_string()));
    }

    Ok(EnumeratedLattice {
        group,
        h_sub,
        k_sub,
        l_sub,
        kl_sub,
        y_sub,
        x_idx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders_match_the_reference_table() {
        for (rt, want) in [
            (RootType::A(3), 24),
            (RootType::B(3), 48),
            (RootType::D(4), 192),
            (RootType::G2, 12),
            (RootType::F4, 1152),
        ] {
            let w = WeylGroup::new(rt).unwrap();
            assert_eq!(w.order(), want, "{}", rt.label());
        }
    }

    #[test]
    fn oversized_weyl_groups_are_refused() {
        assert!(WeylGroup::new(RootType::E7).is_err());
        assert!(WeylGroup::new(RootType::E8).is_err());
    }

    #[test]
    fn lattice_normalizer_orders() {
        let w = WeylGroup::new(RootType::A(3)).unwrap();
        assert_eq!(lattice_normalizer(&w, 2).unwrap().order(), 8);
        assert_eq!(lattice_normalizer(&w, 1).unwrap().order(), 6);
        let w = WeylGroup::new(RootType::A(2)).unwrap();
        assert_eq!(lattice_normalizer(&w, 1).unwrap().order(), 2);
        let w = WeylGroup::new(RootType::G2).unwrap();
        assert_eq!(lattice_normalizer(&w, 1).unwrap().order(), 4);
        assert_eq!(lattice_normalizer(&w, 2).unwrap().order(), 4);
    }

    #[test]
    fn node_data_matches_diagram_deletion() {
        let w = WeylGroup::new(RootType::A(3)).unwrap();
        let node = w.node_data(2).unwrap();
        assert_eq!(node.p.order(), 4);
        assert_eq!(node.q.order(), 8);
        assert_eq!(node.qp_index(), 2);
        assert_eq!(node.components.len(), 2);

        let node1 = w.node_data(1).unwrap();
        assert_eq!(node1.p.order(), 6);
        assert_eq!(node1.qp_index(), 1);

        let w4 = WeylGroup::new(RootType::D(4)).unwrap();
        let center = w4.node_data(2).unwrap();
        assert_eq!(center.p.order(), 8);
        assert_eq!(center.q.order(), 16);
        assert_eq!(center.components.len(), 3);
    }

    #[test]
    fn lattice_config_builds_and_validates() {
        let w = WeylGroup::new(RootType::A(3)).unwrap();
        let node = w.node_data(2).unwrap();
        let cfg = LatticeConfig::build(&w, &node, 3).unwrap();
        assert_eq!(cfg.h_gens.len(), 2 + 2);
        assert_eq!(cfg.n_plain_gens, 2);
        let enumerated = enumerate_lattice(&cfg, 100_000).unwrap();
        assert_eq!(enumerated.group.order(), 648);
        assert_eq!(enumerated.h_sub.order(), 36);
        assert_eq!(enumerated.k_sub.order(), 72);
        assert_eq!(enumerated.l_sub.order(), 108);
        assert_eq!(enumerated.kl_sub.order(), 216);
    }

    #[test]
    fn leaf_node_collapses_k_to_h() {
        let w = WeylGroup::new(RootType::A(3)).unwrap();
        let node = w.node_data(1).unwrap();
        assert_eq!(node.qp_index(), 1);
        let cfg = LatticeConfig::build(&w, &node, 3).unwrap();
        let enumerated = enumerate_lattice(&cfg, 100_000).unwrap();
        assert_eq!(enumerated.h_sub.elements(), enumerated.k_sub.elements());
    }

    #[test]
    fn inertia_weyl_part_behaves_at_special_heights() {
        let w = WeylGroup::new(RootType::A(3)).unwrap();
        let node = w.node_data(2).unwrap();
        let cfg = LatticeConfig::build(&w, &node, 5).unwrap();
        // Height h: the character is trivial, inertia is all of W.
        assert_eq!(inertia_weyl_part(&cfg, 5).unwrap().order(), 24);
        // Generic height: inertia is exactly the parabolic.
        let i1 = inertia_weyl_part(&cfg, 1).unwrap();
        assert_eq!(i1.elements(), node.p.elements());
        let cfg4 = LatticeConfig::build(&w, &node, 4).unwrap();
        // Height h/2 is genuinely special: inertia grows beyond P.
        let i2 = inertia_weyl_part(&cfg4, 2).unwrap();
        assert!(i2.order() > node.p.order());
    }

    #[test]
    fn g2_configs_build_for_both_nodes() {
        let w = WeylGroup::new(RootType::G2).unwrap();
        for k in [1, 2] {
            let node = w.node_data(k).unwrap();
            let cfg = LatticeConfig::build(&w, &node, 3).unwrap();
            let enumerated = enumerate_lattice(&cfg, 100_000).unwrap();
            assert_eq!(enumerated.group.order(), 12 * 9);
            assert_eq!(enumerated.h_sub.order(), 2 * 3);
            assert_eq!(enumerated.kl_sub.order(), 4 * 9);
        }
    }
}
