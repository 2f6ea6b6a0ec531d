//! Finite groups enumerated from generators, with dense integer indexing.
//!
//! Everything downstream (coset actions, double cosets, characters) works on
//! `u32` element indices; the element type only has to be hashable and the
//! multiplication law lives in a separate [`GroupOps`] value so that context
//! like a translation modulus does not have to be baked into every element.

pub mod action;
pub mod perm;
pub mod subgroup;

pub use action::{coset_action, is_transitive, orbits, CosetAction};
pub use perm::{Perm, PermOps};
pub use subgroup::{
    double_coset_partition, double_cosets, normalizer, quotient_facts, CosetSpace, DoubleCoset,
    DoubleCosetPartition, QuotientFacts, Subgroup,
};

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::hash::Hash;

/// Multiplication and inversion for elements of type `E`.
pub trait GroupOps<E> {
    fn mul(&self, a: &E, b: &E) -> E;
    fn inv(&self, a: &E) -> E;
}

/// Default ceiling on enumerated group order.
pub const DEFAULT_GROUP_CAP: usize = 10_000_000;

/// Default ceiling on permutation-action degree.
pub const DEFAULT_DEGREE_CAP: usize = 100_000;

/// A finite group enumerated from generators.
///
/// Index 0 is the identity.  Enumeration is breadth-first with generators
/// applied on the right in their given order, so indices are deterministic
/// for a fixed generator list.
pub struct FiniteGroup<E, O> {
    ops: O,
    elements: Vec<E>,
    index: HashMap<E, u32>,
    gen_indices: Vec<u32>,
    /// right_by_gen[g][i] = index of elements[i] * gen_g.
    right_by_gen: Vec<Vec<u32>>,
}

/// Conjugacy classes of a [`FiniteGroup`], as a labeling of every element.
pub struct ConjClasses {
    pub class_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
}

impl ConjClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

impl<E: Clone + Eq + Hash, O: GroupOps<E>> FiniteGroup<E, O> {
    /// Enumerates the closure of `generators`.  Fails once more than `cap`
    /// elements have been found.
    pub fn generate(ops: O, identity: E, generators: &[E], cap: usize) -> Result<Self> {
        let mut gen_elems: Vec<E> = Vec::new();
        for g in generators {
            if *g != identity && !gen_elems.contains(g) {
                gen_elems.push(g.clone());
            }
        }
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0u32);
        let mut right_by_gen: Vec<Vec<u32>> = vec![Vec::new(); gen_elems.len()];
        let mut head = 0usize;
        while head < elements.len() {
            for (gi, g) in gen_elems.iter().enumerate() {
                let prod = ops.mul(&elements[head], g);
                let idx = match index.get(&prod) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::OrderCapExceeded {
                                partial: elements.len(),
                                cap,
                            });
                        }
                        let i = elements.len() as u32;
                        elements.push(prod.clone());
                        index.insert(prod, i);
                        i
                    }
                };
                right_by_gen[gi].push(idx);
            }
            head += 1;
        }
        let gen_indices = gen_elems.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            ops,
            elements,
            index,
            gen_indices,
            right_by_gen,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ops(&self) -> &O {
        &self.ops
    }

    pub fn element(&self, i: u32) -> &E {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Indices of the distinct non-identity generators, in the order given
    /// at construction.
    pub fn generator_indices(&self) -> &[u32] {
        &self.gen_indices
    }

    pub fn index_of(&self, e: &E) -> Option<u32> {
        self.index.get(e).copied()
    }

    /// Product of two elements by index.
    ///
    /// Panics if the product is missing from the index, which cannot happen
    /// for indices produced by this group.
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        let p = self
            .ops
            .mul(&self.elements[a as usize], &self.elements[b as usize]);
        *self.index.get(&p).expect("group closed under products")
    }

    pub fn inv_idx(&self, a: u32) -> u32 {
        let p = self.ops.inv(&self.elements[a as usize]);
        *self.index.get(&p).expect("group closed under inverses")
    }

    /// Fast right multiplication by the `gen_pos`-th generator.
    pub fn right_by_generator(&self, i: u32, gen_pos: usize) -> u32 {
        self.right_by_gen[gen_pos][i as usize]
    }

    /// inverse_table[i] = index of the inverse of element i.
    pub fn inverse_table(&self) -> Vec<u32> {
        (0..self.order() as u32).map(|i| self.inv_idx(i)).collect()
    }

    /// Conjugacy classes, computed as orbits of generator conjugation.
    /// Class ids are ordered by smallest member index; reps are those
    /// smallest members.
    pub fn conjugacy_classes(&self) -> ConjClasses {
        let n = self.order();
        // left_inv[g][x] = gen_g^{-1} * x, so conjugation by gen_g is the
        // composite right_by_gen[g] . left_inv[g].
        let mut left_inv: Vec<Vec<u32>> = Vec::with_capacity(self.gen_indices.len());
        for &g in &self.gen_indices {
            let ginv = self.ops.inv(&self.elements[g as usize]);
            let tbl: Vec<u32> = self
                .elements
                .iter()
                .map(|e| *self.index.get(&self.ops.mul(&ginv, e)).unwrap())
                .collect();
            left_inv.push(tbl);
        }
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let cid = reps.len() as u32;
            reps.push(start);
            let mut size = 1u64;
            class_of[start as usize] = cid;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for gpos in 0..self.gen_indices.len() {
                    let y = self.right_by_gen[gpos][left_inv[gpos][x as usize] as usize];
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = cid;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        ConjClasses {
            class_of,
            reps,
            sizes,
        }
    }
}

/// Word length of every element over the given generators: breadth-first
/// distance from the identity in the right Cayley graph.  For a Coxeter
/// group over its simple reflections this is the standard length function.
pub fn length_function<E, O>(group: &FiniteGroup<E, O>, gens: &[u32]) -> Vec<u32>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let n = group.order();
    let mut dist = vec![u32::MAX; n];
    dist[0] = 0;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(0u32);
    while let Some(x) = queue.pop_front() {
        let d = dist[x as usize] + 1;
        for &g in gens {
            let y = group.mul_idx(x, g);
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = d;
                queue.push_back(y);
            }
        }
    }
    assert!(
        dist.iter().all(|&d| d != u32::MAX),
        "generators do not generate the group"
    );
    dist
}

/// Symmetric group on n letters from adjacent transpositions (test helper).
#[cfg(test)]
pub(crate) fn symmetric_group(n: usize) -> FiniteGroup<Perm, PermOps> {
    let gens: Vec<Perm> = (0..n - 1)
        .map(|i| perm::adjacent_transposition(n, i))
        .collect();
    FiniteGroup::generate(PermOps, Perm::identity(n), &gens, DEFAULT_GROUP_CAP).unwrap()
}
