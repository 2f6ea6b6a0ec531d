//! Coset action of W ⋉ (Z/h)^n on the cosets of R ⋉ Y without enumerating
//! the quotient group.
//!
//! Here R is a subgroup of W whose elements fix the hyperplane lattice
//! Y = {v : v_k = 0} setwise, and R ⋉ Y is the subgroup generated by R and
//! the Y-translations.  A coset is labeled by a pair (r, m): r indexes a
//! coset R·w_r in W and m ∈ Z/h is the k-coordinate of u·M(w_r⁻¹) for any
//! group element (w, u) in the coset.  That coordinate is constant on the
//! coset because left factors from R ⋉ Y contribute nothing to it, so the
//! labeling is a bijection onto R\W × Z/h.

use super::matrix::Mat;
use super::WeylGroup;
use crate::error::{Error, Result};
use crate::groupcore::{CosetSpace, Perm, Subgroup};

pub struct FoldedAction {
    n_cosets: usize,
    h: u32,
    gen_perms: Vec<Perm>,
}

impl FoldedAction {
    pub fn degree(&self) -> usize {
        self.n_cosets * self.h as usize
    }

    pub fn n_cosets(&self) -> usize {
        self.n_cosets
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// Generator images: the n simple reflections followed by the n unit
    /// translations, in node order.
    pub fn gen_perms(&self) -> &[Perm] {
        &self.gen_perms
    }

    pub fn point(&self, coset: usize, m: u32) -> usize {
        coset * self.h as usize + m as usize
    }
}

/// Build the action for the subgroup R ⋉ Y of W ⋉ (Z/h)^n, where `sub` is R.
pub fn folded_coset_action(
    weyl: &WeylGroup,
    sub: &Subgroup,
    k: usize,
    h: u32,
) -> Result<FoldedAction> {
    if h < 2 {
        return Err(Error::BadModulus(h));
    }
    let group = weyl.group();
    let n = weyl.rank();
    weyl.root_system().check_node(k)?;
    let k0 = k - 1;
    // R must act on Y for the labels to be well defined.
    for &g in sub.generators() {
        let m = group.element(g);
        for i in 0..n {
            if i != k0 && m.get(i, k0) != 0 {
                return Err(Error::invariant(format!(
                    "subgroup does not preserve the coordinate-{} hyperplane lattice",
                    k
                )));
            }
        }
    }
    let space = CosetSpace::build(group, sub);
    let n_cosets = space.reps.len();
    let hi = h as i64;

    // Per-transversal data: w_r⁻¹ as a matrix.
    let inv_mats: Vec<&Mat> = space
        .reps
        .iter()
        .map(|&r| group.element(group.inv_idx(r)))
        .collect();

    let degree = n_cosets * h as usize;
    let mut gen_perms = Vec::with_capacity(2 * n);

    // Simple reflections: (r, m) ↦ (r', m·a) with
    // a = k-entry of e_k·M(w_r s_j)·M(w_{r'}⁻¹), a unit since w_r s_j w_{r'}⁻¹
    // stabilizes Y.
    for gpos in 0..n {
        let mut images = vec![0u32; degree];
        for (r, &rep) in space.reps.iter().enumerate() {
            let target = group.right_by_generator(rep, gpos);
            let rprime = space.coset_of[target as usize] as usize;
            let prod = group.element(target);
            let a = prod.product_entry(inv_mats[rprime], k0, k0);
            if a.abs() != 1 {
                return Err(Error::invariant(
                    "coset label multiplier is not a unit".to_string(),
                ));
            }
            for m in 0..h as i64 {
                let m2 = (m * a).rem_euclid(hi) as usize;
                images[r * h as usize + m as usize] = (rprime * h as usize + m2) as u32;
            }
        }
        gen_perms.push(Perm::from_images(images)?);
    }

    // Unit translations: (r, m) ↦ (r, m + b_j) with b_j = M(w_r⁻¹)[j][k].
    for j in 0..n {
        let mut images = vec![0u32; degree];
        for (r, inv_mat) in inv_mats.iter().enumerate() {
            let b = inv_mat.get(j, k0).rem_euclid(hi);
            for m in 0..h as i64 {
                let m2 = ((m + b) % hi) as usize;
                images[r * h as usize + m as usize] = (r * h as usize + m2) as u32;
            }
        }
        gen_perms.push(Perm::from_images(images)?);
    }

    Ok(FoldedAction {
        n_cosets,
        h,
        gen_perms,
    })
}
