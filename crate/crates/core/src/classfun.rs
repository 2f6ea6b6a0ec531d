//! Exact class function arithmetic on enumerated finite groups.
//!
//! Values are rationals indexed by conjugacy class. Everything the crate
//! needs — permutation characters, induction from a subgroup, inner
//! products — is computed exactly, with i128 rationals in the accumulators so
//! group orders in the hundreds of thousands stay far from overflow.

use crate::error::{Error, Result};
use crate::groupcore::{ConjClasses, CosetSpace, FiniteGroup, GroupOps, Subgroup};
use num_rational::{Ratio, Rational64};
use num_traits::Zero;
use std::hash::Hash;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Rational64>,
}

impl ClassFunction {
    pub fn constant(n_classes: usize, v: Rational64) -> ClassFunction {
        ClassFunction {
            values: vec![v; n_classes],
        }
    }

    /// Value at a group element, through its class.
    pub fn at(&self, classes: &ConjClasses, element: u32) -> Rational64 {
        self.values[classes.class_of[element as usize] as usize]
    }
}

fn widen(v: Rational64) -> Ratio<i128> {
    Ratio::new(*v.numer() as i128, *v.denom() as i128)
}

/// ⟨f, g⟩ = (1/|G|) Σ_c |c| f(c) g(c). Class functions here are
/// rational-valued, so complex conjugation is the identity.
pub fn inner_product(
    classes: &ConjClasses,
    group_order: u64,
    f: &ClassFunction,
    g: &ClassFunction,
) -> Ratio<i128> {
    let mut acc: Ratio<i128> = Ratio::zero();
    for (c, &size) in classes.sizes.iter().enumerate() {
        acc += Ratio::from_integer(size as i128) * widen(f.values[c]) * widen(g.values[c]);
    }
    acc / Ratio::from_integer(group_order as i128)
}

/// Inner product over a subgroup of two functions given by element index.
pub fn subgroup_inner<E, O>(
    group: &FiniteGroup<E, O>,
    sub: &Subgroup,
    f: impl Fn(u32) -> Rational64,
    g: impl Fn(u32) -> Rational64,
) -> Ratio<i128>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let _ = group;
    let mut acc: Ratio<i128> = Ratio::zero();
    for &s in sub.elements() {
        acc += widen(f(s)) * widen(g(s));
    }
    acc / Ratio::from_integer(sub.order() as i128)
}

/// Character of the permutation action on right cosets of `sub`: the value at
/// a class is the number of transversal elements x with x g x⁻¹ in `sub`.
pub fn permutation_character<E, O>(
    group: &FiniteGroup<E, O>,
    sub: &Subgroup,
    classes: &ConjClasses,
) -> ClassFunction
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let space = CosetSpace::build(group, sub);
    let values = classes
        .reps
        .iter()
        .map(|&g| {
            let fixed = space
                .reps
                .iter()
                .filter(|&&x| {
                    let xg = group.mul_idx(x, g);
                    sub.contains(group.mul_idx(xg, group.inv_idx(x)))
                })
                .count();
            Rational64::from_integer(fixed as i64)
        })
        .collect();
    ClassFunction { values }
}

/// Induce a function defined on a subgroup up to the whole group:
/// (Ind f)(g) = (1/|K|) Σ_{x ∈ G} f(x g x⁻¹), where `f` returns None outside
/// the subgroup. The scan is by value over all of G, so it needs nothing but
/// the subgroup's order.
pub fn induce_fn<E, O>(
    group: &FiniteGroup<E, O>,
    classes: &ConjClasses,
    sub_order: u64,
    f: impl Fn(u32) -> Option<Rational64>,
) -> Result<ClassFunction>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    if sub_order == 0 {
        return Err(Error::invariant("subgroup order zero".to_string()));
    }
    let inv = group.inverse_table();
    let n = group.order() as u32;
    let mut values = Vec::with_capacity(classes.reps.len());
    for &g in &classes.reps {
        let mut acc: Ratio<i128> = Ratio::zero();
        for x in 0..n {
            let xg = group.mul_idx(x, g);
            let conj = group.mul_idx(xg, inv[x as usize]);
            if let Some(v) = f(conj) {
                acc += widen(v);
            }
        }
        acc /= Ratio::from_integer(sub_order as i128);
        let numer = i64::try_from(*acc.numer())
            .map_err(|_| Error::invariant("induced value overflows".to_string()))?;
        let denom = i64::try_from(*acc.denom())
            .map_err(|_| Error::invariant("induced value overflows".to_string()))?;
        values.push(Rational64::new(numer, denom));
    }
    Ok(ClassFunction { values })
}

/// Induction of the constant-one function on a subgroup; same object as the
/// permutation character on its cosets.
pub fn induce_trivial<E, O>(
    group: &FiniteGroup<E, O>,
    classes: &ConjClasses,
    sub: &Subgroup,
) -> Result<ClassFunction>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let one = Rational64::from_integer(1);
    induce_fn(group, classes, sub.order() as u64, |e| {
        if sub.contains(e) {
            Some(one)
        } else {
            None
        }
    })
}
