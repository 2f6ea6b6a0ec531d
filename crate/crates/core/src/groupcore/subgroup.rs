//! Subgroups, coset spaces, and double cosets over an enumerated group.

use crate::error::{Error, Result};
use crate::groupcore::{FiniteGroup, GroupOps};
use std::collections::HashMap;
use std::hash::Hash;

/// A subgroup of an enumerated group, held as a sorted index list plus a
/// membership bitset over the parent's indices.
#[derive(Debug, Clone)]
pub struct Subgroup {
    elems: Vec<u32>,
    mask: Vec<u64>,
    gens: Vec<u32>,
}

fn mask_get(mask: &[u64], i: u32) -> bool {
    mask[(i >> 6) as usize] & (1u64 << (i & 63)) != 0
}

fn mask_set(mask: &mut [u64], i: u32) {
    mask[(i >> 6) as usize] |= 1u64 << (i & 63);
}

impl Subgroup {
    /// Closure of `gens` (parent indices) inside `group`.
    pub fn generate<E, O>(group: &FiniteGroup<E, O>, gens: &[u32]) -> Subgroup
    where
        E: Clone + Eq + Hash,
        O: GroupOps<E>,
    {
        let n = group.order();
        let mut mask = vec![0u64; n.div_ceil(64)];
        let mut elems = vec![0u32];
        mask_set(&mut mask, 0);
        let mut head = 0usize;
        let mut kept_gens: Vec<u32> = Vec::new();
        for &g in gens {
            if g != 0 && !kept_gens.contains(&g) {
                kept_gens.push(g);
            }
        }
        while head < elems.len() {
            let x = elems[head];
            head += 1;
            for &g in &kept_gens {
                let y = group.mul_idx(x, g);
                if !mask_get(&mask, y) {
                    mask_set(&mut mask, y);
                    elems.push(y);
                }
            }
        }
        elems.sort_unstable();
        Subgroup {
            elems,
            mask,
            gens: kept_gens,
        }
    }

    /// Wraps an explicit member list, verifying closure by regeneration from
    /// a reduced generating set.
    pub fn from_members<E, O>(group: &FiniteGroup<E, O>, members: &[u32]) -> Result<Subgroup>
    where
        E: Clone + Eq + Hash,
        O: GroupOps<E>,
    {
        let gens = reduce_generators(group, members);
        let sub = Subgroup::generate(group, &gens);
        if sub.order() != members.len() {
            return Err(Error::NotASubgroup(
                "member list is not closed under multiplication",
            ));
        }
        Ok(sub)
    }

    pub fn whole_group<E, O>(group: &FiniteGroup<E, O>) -> Subgroup
    where
        E: Clone + Eq + Hash,
        O: GroupOps<E>,
    {
        Subgroup::generate(group, group.generator_indices())
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, i: u32) -> bool {
        mask_get(&self.mask, i)
    }

    /// Sorted member indices.
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&i| other.contains(i))
    }

    /// |G| / |self|, with the divisibility sanity check.
    pub fn index_in<E, O>(&self, group: &FiniteGroup<E, O>) -> Result<u64>
    where
        E: Clone + Eq + Hash,
        O: GroupOps<E>,
    {
        let g = group.order() as u64;
        let h = self.order() as u64;
        if h == 0 || g % h != 0 {
            return Err(Error::invariant(format!(
                "subgroup order {h} does not divide group order {g}"
            )));
        }
        Ok(g / h)
    }

    /// True when every group generator conjugates every subgroup generator
    /// back into the subgroup.
    pub fn is_normal_in<E, O>(&self, group: &FiniteGroup<E, O>) -> bool
    where
        E: Clone + Eq + Hash,
        O: GroupOps<E>,
    {
        group
            .generator_indices()
            .iter()
            .all(|&g| normalizes(group, self, g))
    }
}

/// Does g normalize the subgroup: g^{-1} s g in sub for every subgroup
/// generator s.  Conjugates of generators generate the conjugate subgroup,
/// and containment plus equal cardinality forces equality.
pub fn normalizes<E, O>(group: &FiniteGroup<E, O>, sub: &Subgroup, g: u32) -> bool
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let ginv = group.inv_idx(g);
    sub.gens
        .iter()
        .all(|&s| sub.contains(group.mul_idx(group.mul_idx(ginv, s), g)))
}

/// The normalizer of `sub` in `group`, by a full element scan.
pub fn normalizer<E, O>(group: &FiniteGroup<E, O>, sub: &Subgroup) -> Result<Subgroup>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let members: Vec<u32> = (0..group.order() as u32)
        .filter(|&g| normalizes(group, sub, g))
        .collect();
    Subgroup::from_members(group, &members)
}

/// Greedy generating set for the subgroup spanned by `members`: keep an
/// element only when it is not already in the closure of those kept so far.
pub fn reduce_generators<E, O>(group: &FiniteGroup<E, O>, members: &[u32]) -> Vec<u32>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let mut gens: Vec<u32> = Vec::new();
    let mut closed = Subgroup::generate(group, &gens);
    for &m in members {
        if !closed.contains(m) {
            gens.push(m);
            closed = Subgroup::generate(group, &gens);
        }
    }
    gens
}

/// The partition of a group into right cosets Kg of a subgroup.
///
/// Coset ids are ordered by smallest member index; the representative of a
/// coset is its minimal member under the element type's total order, so the
/// choice does not depend on traversal order.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
}

impl CosetSpace {
    pub fn build<E, O>(group: &FiniteGroup<E, O>, sub: &Subgroup) -> CosetSpace
    where
        E: Clone + Eq + Hash,
        O: GroupOps<E>,
    {
        let n = group.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &s in sub.elements() {
                coset_of[group.mul_idx(s, g) as usize] = id;
            }
        }
        CosetSpace { coset_of, reps }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// One double coset A g B: its minimal-index representative and size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleCoset {
    pub rep: u32,
    pub size: u64,
}

/// The full partition into double cosets, with the block id of every group
/// element.
#[derive(Debug, Clone)]
pub struct DoubleCosetPartition {
    pub blocks: Vec<DoubleCoset>,
    pub block_of: Vec<u32>,
}

/// Partition of the group into double cosets A g B, ordered by minimal
/// member index.
pub fn double_cosets<E, O>(
    group: &FiniteGroup<E, O>,
    left: &Subgroup,
    right: &Subgroup,
) -> Vec<DoubleCoset>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    double_coset_partition(group, left, right).blocks
}

pub fn double_coset_partition<E, O>(
    group: &FiniteGroup<E, O>,
    left: &Subgroup,
    right: &Subgroup,
) -> DoubleCosetPartition
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let n = group.order();
    let mut block_of = vec![u32::MAX; n];
    let mut blocks = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n as u32 {
        if block_of[start as usize] != u32::MAX {
            continue;
        }
        let id = blocks.len() as u32;
        block_of[start as usize] = id;
        let mut size = 1u64;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for &a in left.generators() {
                let y = group.mul_idx(a, x);
                if block_of[y as usize] == u32::MAX {
                    block_of[y as usize] = id;
                    size += 1;
                    stack.push(y);
                }
            }
            for &b in right.generators() {
                let y = group.mul_idx(x, b);
                if block_of[y as usize] == u32::MAX {
                    block_of[y as usize] = id;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        blocks.push(DoubleCoset { rep: start, size });
    }
    DoubleCosetPartition { blocks, block_of }
}

/// Order and abelianness of the quotient `big`/`normal`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientFacts {
    pub order: usize,
    pub abelian: bool,
}

/// Form the left cosets of `normal` inside `big`, verify they are also right
/// cosets, and test commutativity of the induced multiplication.
pub fn quotient_facts<E, O>(
    group: &FiniteGroup<E, O>,
    big: &Subgroup,
    normal: &Subgroup,
) -> Result<QuotientFacts>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    if !normal.is_subset_of(big) {
        return Err(Error::NotASubgroup("denominator not inside numerator"));
    }
    let mut coset_of: HashMap<u32, u32> = HashMap::with_capacity(big.order());
    let mut reps: Vec<u32> = Vec::new();
    for &e in big.elements() {
        if coset_of.contains_key(&e) {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(e);
        for &m in normal.elements() {
            coset_of.insert(group.mul_idx(m, e), id);
        }
    }
    if coset_of.len() != big.order() {
        return Err(Error::invariant(
            "cosets do not tile the enclosing subgroup".to_string(),
        ));
    }
    // Normality inside `big`: right multiplication by the denominator's
    // generators must preserve left cosets.
    for &e in big.elements() {
        for &m in normal.generators() {
            if coset_of[&group.mul_idx(e, m)] != coset_of[&e] {
                return Err(Error::NotASubgroup("denominator is not normal"));
            }
        }
    }
    let mut abelian = true;
    'outer: for (i, &a) in reps.iter().enumerate() {
        for &b in reps.iter().skip(i + 1) {
            if coset_of[&group.mul_idx(a, b)] != coset_of[&group.mul_idx(b, a)] {
                abelian = false;
                break 'outer;
            }
        }
    }
    Ok(QuotientFacts {
        order: reps.len(),
        abelian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcore::perm::{transposition, Perm};
    use crate::groupcore::symmetric_group;

    #[test]
    fn small_subgroups_of_s4() {
        let g = symmetric_group(4);
        let t01 = g.index_of(&transposition(4, 0, 1)).unwrap();
        let sub = Subgroup::generate(&g, &[t01]);
        assert_eq!(sub.order(), 2);
        assert_eq!(sub.index_in(&g).unwrap(), 12);
        assert!(!sub.is_normal_in(&g));

        let v4a = g
            .index_of(&Perm::from_images(vec![1, 0, 3, 2]).unwrap())
            .unwrap();
        let v4b = g
            .index_of(&Perm::from_images(vec![2, 3, 0, 1]).unwrap())
            .unwrap();
        let v4 = Subgroup::generate(&g, &[v4a, v4b]);
        assert_eq!(v4.order(), 4);
        assert!(v4.is_normal_in(&g));
        assert_eq!(normalizer(&g, &v4).unwrap().order(), 24);
    }

    #[test]
    fn normalizer_of_a_transposition_pair() {
        let g = symmetric_group(4);
        // <(01)(23)> has normalizer the dihedral group of order 8.
        let e = g
            .index_of(&Perm::from_images(vec![1, 0, 3, 2]).unwrap())
            .unwrap();
        let sub = Subgroup::generate(&g, &[e]);
        assert_eq!(sub.order(), 2);
        let nz = normalizer(&g, &sub).unwrap();
        assert_eq!(nz.order(), 8);
        assert!(sub.is_subset_of(&nz));
    }

    #[test]
    fn coset_space_of_point_stabilizer() {
        let g = symmetric_group(4);
        // Stabilizer of the letter 3 is generated by (01) and (12).
        let a = g.index_of(&transposition(4, 0, 1)).unwrap();
        let b = g.index_of(&transposition(4, 1, 2)).unwrap();
        let s3 = Subgroup::generate(&g, &[a, b]);
        assert_eq!(s3.order(), 6);
        let cs = CosetSpace::build(&g, &s3);
        assert_eq!(cs.len(), 4);
        // Every element lands in exactly one coset and reps map to themselves.
        for (i, &c) in cs.coset_of.iter().enumerate() {
            assert!((c as usize) < 4, "element {i} unassigned");
        }
        for (id, &r) in cs.reps.iter().enumerate() {
            assert_eq!(cs.coset_of[r as usize], id as u32);
        }
    }

    #[test]
    fn double_cosets_match_orbit_rank() {
        let g = symmetric_group(4);
        let a = g.index_of(&transposition(4, 0, 1)).unwrap();
        let b = g.index_of(&transposition(4, 1, 2)).unwrap();
        let s3 = Subgroup::generate(&g, &[a, b]);
        // S4 is 2-transitive on 4 letters, so there are two (S3, S3) double
        // cosets, of sizes 6 and 18.
        let dc = double_cosets(&g, &s3, &s3);
        assert_eq!(dc.len(), 2);
        let mut sizes: Vec<u64> = dc.iter().map(|d| d.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![6, 18]);
        assert_eq!(dc[0].rep, 0);
    }

    #[test]
    fn reduce_generators_shrinks_member_lists() {
        let g = symmetric_group(4);
        let whole = Subgroup::whole_group(&g);
        let v4: Vec<u32> = whole
            .elements()
            .iter()
            .copied()
            .filter(|&i| {
                let p = g.element(i);
                p.is_identity() || (p.order() == 2 && p.cycles().len() == 2)
            })
            .collect();
        assert_eq!(v4.len(), 4);
        let gens = reduce_generators(&g, &v4);
        assert_eq!(gens.len(), 2);
        let sub = Subgroup::from_members(&g, &v4).unwrap();
        assert_eq!(sub.order(), 4);
    }

    #[test]
    fn from_members_rejects_non_subgroups() {
        let g = symmetric_group(4);
        let t01 = g.index_of(&transposition(4, 0, 1)).unwrap();
        let t12 = g.index_of(&transposition(4, 1, 2)).unwrap();
        let err = Subgroup::from_members(&g, &[0, t01, t12]).unwrap_err();
        assert!(matches!(err, Error::NotASubgroup(_)));
    }
}
