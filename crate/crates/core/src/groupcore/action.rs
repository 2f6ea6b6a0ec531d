//! Permutation actions on coset spaces.

use crate::error::{Error, Result};
use crate::groupcore::{CosetSpace, FiniteGroup, GroupOps, Perm, Subgroup};
use std::hash::Hash;

/// Right action of chosen group elements on the cosets Kg of a subgroup.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub space: CosetSpace,
    /// One permutation per acting element, in the order given.
    pub gen_perms: Vec<Perm>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.space.len()
    }
}

/// Builds the right action of `acting` (element indices; typically the group
/// generators) on the coset space of `sub`.  Fails when the degree exceeds
/// `degree_cap`.
pub fn coset_action<E, O>(
    group: &FiniteGroup<E, O>,
    sub: &Subgroup,
    acting: &[u32],
    degree_cap: usize,
) -> Result<CosetAction>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let space = CosetSpace::build(group, sub);
    if space.len() > degree_cap {
        return Err(Error::DegreeCapExceeded {
            degree: space.len(),
            cap: degree_cap,
        });
    }
    let mut gen_perms = Vec::with_capacity(acting.len());
    for &a in acting {
        let images: Vec<u32> = space
            .reps
            .iter()
            .map(|&r| space.coset_of[group.mul_idx(r, a) as usize])
            .collect();
        gen_perms.push(Perm::from_images(images)?);
    }
    Ok(CosetAction { space, gen_perms })
}

/// Orbits of the group generated by `perms` on 0..degree, each sorted, in
/// order of smallest member.
pub fn orbits(perms: &[Perm], degree: usize) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..degree as u32 {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut orbit = vec![start];
        stack.push(start);
        while let Some(p) = stack.pop() {
            for g in perms {
                let q = g.image(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                    stack.push(q);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn is_transitive(perms: &[Perm], degree: usize) -> bool {
    degree > 0 && orbits(perms, degree).len() == 1
}

/// Point stabilizer order implied by the orbit-stabilizer relation, as a
/// consistency check for transitive actions.
pub fn check_transitive(perms: &[Perm], degree: usize) -> Result<()> {
    let orb = orbits(perms, degree);
    if orb.len() != 1 {
        return Err(Error::NotTransitive {
            orbit_size: orb.first().map_or(0, |o| o.len()),
            degree,
        });
    }
    Ok(())
}
