//! Orbital schemes of transitive permutation actions.
//!
//! The orbits of a group on ordered pairs of points partition the d×d grid
//! into relation classes. For a transitive action this partition is an
//! association scheme: class 0 is the diagonal, every class has constant row
//! sums, and the intersection numbers p^k_{ij} (the number of y with (x,y) in
//! class i and (y,z) in class j, for (x,z) in class k) do not depend on the
//! chosen pair. The adjacency algebra is commutative exactly when the
//! permutation character is multiplicity-free, so `is_commutative` is the
//! verdict the rest of the crate consumes.

use crate::error::{Error, Result};
use crate::groupcore::{
    double_coset_partition, is_transitive, length_function, DoubleCosetPartition, FiniteGroup,
    GroupOps, Perm, Subgroup,
};
use std::hash::Hash;

/// A triple of classes where the adjacency algebra fails to commute, with the
/// two differing intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub count_ij: u64,
    pub count_ji: u64,
}

pub struct Scheme {
    degree: usize,
    rank: usize,
    class_of: Vec<u32>,
    reps: Vec<(u32, u32)>,
    suborbit_sizes: Vec<u64>,
    transpose_of: Vec<u32>,
    commutative: bool,
    symmetric: bool,
    witness: Option<SchemeWitness>,
}

/// Pair classification grids larger than this are refused outright; every
/// action this crate builds schemes for stays well below it.
const MAX_PAIR_GRID: usize = 64_000_000;

impl Scheme {
    /// Classify all ordered pairs of points under the group generated by
    /// `perms` and compute the scheme invariants. The action must be
    /// transitive.
    pub fn from_action(perms: &[Perm], degree: usize) -> Result<Scheme> {
        if degree == 0 {
            return Err(Error::invariant("empty point set".to_string()));
        }
        if degree > MAX_PAIR_GRID / degree {
            return Err(Error::unsupported(format!(
                "pair grid for degree {} is too large",
                degree
            )));
        }
        for p in perms {
            if p.degree() != degree {
                return Err(Error::invariant(
                    "permutation degree mismatch".to_string(),
                ));
            }
        }
        if !is_transitive(perms, degree) {
            let orbit = crate::groupcore::orbits(perms, degree)
                .into_iter()
                .next()
                .map(|o| o.len())
                .unwrap_or(0);
            return Err(Error::NotTransitive {
                orbit_size: orbit,
                degree,
            });
        }

        let d = degree;
        let mut class_of = vec![u32::MAX; d * d];
        let mut reps: Vec<(u32, u32)> = Vec::new();
        let mut stack: Vec<(u32, u32)> = Vec::new();

        // Every orbital meets the row {(0, y)}, so seeding from that row
        // classifies the whole grid. Seeding (0,0) first pins the diagonal
        // orbital at class 0.
        for y0 in 0..d as u32 {
            if class_of[y0 as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push((0, y0));
            class_of[y0 as usize] = id;
            stack.push((0, y0));
            while let Some((x, y)) = stack.pop() {
                for p in perms {
                    let nx = p.image(x);
                    let ny = p.image(y);
                    let cell = &mut class_of[nx as usize * d + ny as usize];
                    if *cell == u32::MAX {
                        *cell = id;
                        stack.push((nx, ny));
                    }
                }
            }
        }
        let rank = reps.len();
        debug_assert!(class_of.iter().all(|&c| c != u32::MAX));
        if (0..d).any(|x| class_of[x * d + x] != 0) {
            return Err(Error::invariant(
                "diagonal pairs split across classes".to_string(),
            ));
        }

        // Row sums must be constant; the common value is the suborbit size.
        let mut suborbit_sizes = vec![0u64; rank];
        for y in 0..d {
            suborbit_sizes[class_of[y] as usize] += 1;
        }
        let mut row = vec![0u64; rank];
        for x in 1..d {
            row.iter_mut().for_each(|v| *v = 0);
            for y in 0..d {
                row[class_of[x * d + y] as usize] += 1;
            }
            if row != suborbit_sizes {
                return Err(Error::invariant(format!(
                    "row sums differ between points 0 and {}",
                    x
                )));
            }
        }

        let transpose_of: Vec<u32> = reps
            .iter()
            .map(|&(x, y)| class_of[y as usize * d + x as usize])
            .collect();
        for (i, &t) in transpose_of.iter().enumerate() {
            if transpose_of[t as usize] != i as u32 {
                return Err(Error::invariant(
                    "transpose map is not an involution".to_string(),
                ));
            }
            if suborbit_sizes[t as usize] != suborbit_sizes[i] {
                return Err(Error::invariant(
                    "paired classes have unequal sizes".to_string(),
                ));
            }
        }
        let symmetric = transpose_of.iter().enumerate().all(|(i, &t)| t == i as u32);

        // Intersection numbers at one representative pair per class; the
        // group action makes them constant on the class.
        let mut commutative = true;
        let mut witness = None;
        let mut table = vec![0u64; rank * rank];
        'outer: for (k, &(x, z)) in reps.iter().enumerate() {
            table.iter_mut().for_each(|v| *v = 0);
            let xrow = &class_of[x as usize * d..(x as usize + 1) * d];
            for y in 0..d {
                let c1 = xrow[y] as usize;
                let c2 = class_of[y * d + z as usize] as usize;
                table[c1 * rank + c2] += 1;
            }
            for i in 0..rank {
                for j in (i + 1)..rank {
                    let a = table[i * rank + j];
                    let b = table[j * rank + i];
                    if a != b {
                        commutative = false;
                        witness = Some(SchemeWitness {
                            i,
                            j,
                            k,
                            count_ij: a,
                            count_ji: b,
                        });
                        break 'outer;
                    }
                }
            }
        }
        if symmetric && !commutative {
            return Err(Error::invariant(
                "symmetric scheme with noncommuting classes".to_string(),
            ));
        }

        Ok(Scheme {
            degree: d,
            rank,
            class_of,
            reps,
            suborbit_sizes,
            transpose_of,
            commutative,
            symmetric,
            witness,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self, x: u32, y: u32) -> u32 {
        self.class_of[x as usize * self.degree + y as usize]
    }

    pub fn rep_pair(&self, class: usize) -> (u32, u32) {
        self.reps[class]
    }

    pub fn suborbit_sizes(&self) -> &[u64] {
        &self.suborbit_sizes
    }

    /// Suborbit sizes in sorted order, for comparing actions up to
    /// relabeling.
    pub fn suborbit_multiset(&self) -> Vec<u64> {
        let mut v = self.suborbit_sizes.clone();
        v.sort_unstable();
        v
    }

    pub fn transpose_of(&self) -> &[u32] {
        &self.transpose_of
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn witness(&self) -> Option<&SchemeWitness> {
        self.witness.as_ref()
    }

    /// Recompute every intersection table at every pair and compare with the
    /// representative's table. Cubic in the degree, so only for cross-checks
    /// on small actions.
    pub fn check_intersection_constancy(&self) -> Result<()> {
        let d = self.degree;
        let rank = self.rank;
        let mut ref_tables = vec![0u64; rank * rank * rank];
        for (k, &(x, z)) in self.reps.iter().enumerate() {
            let slot = &mut ref_tables[k * rank * rank..(k + 1) * rank * rank];
            for y in 0..d {
                let c1 = self.class_of[x as usize * d + y] as usize;
                let c2 = self.class_of[y * d + z as usize] as usize;
                slot[c1 * rank + c2] += 1;
            }
        }
        let mut table = vec![0u64; rank * rank];
        for x in 0..d {
            for z in 0..d {
                let k = self.class_of[x * d + z] as usize;
                table.iter_mut().for_each(|v| *v = 0);
                for y in 0..d {
                    let c1 = self.class_of[x * d + y] as usize;
                    let c2 = self.class_of[y * d + z] as usize;
                    table[c1 * rank + c2] += 1;
                }
                if table != ref_tables[k * rank * rank..(k + 1) * rank * rank] {
                    return Err(Error::invariant(format!(
                        "intersection numbers vary within class {} at pair ({}, {})",
                        k, x, z
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Minimal-length representatives of the A\G/B double cosets, together with
/// whether each is an involution. Relies on group element indices being
/// sorted by word length, which `FiniteGroup::generate` guarantees, and on
/// the minimal element of a parabolic double coset being unique.
#[derive(Debug, Clone)]
pub struct MinRepReport {
    pub reps: Vec<u32>,
    pub lengths: Vec<u32>,
    pub all_involutions: bool,
    /// First block whose minimal representative is not an involution.
    pub non_involution: Option<u32>,
}

/// Extract the minimal-length representative of every block and test each for
/// being an involution. `require_unique_minimum` additionally checks that no
/// block has two elements of minimal length, which holds for parabolic double
/// cosets in a Coxeter group.
pub fn min_rep_report<E, O>(
    group: &FiniteGroup<E, O>,
    partition: &DoubleCosetPartition,
    lengths: &[u32],
    require_unique_minimum: bool,
) -> Result<MinRepReport>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let n_blocks = partition.blocks.len();
    let mut min_len = vec![u32::MAX; n_blocks];
    let mut min_count = vec![0u64; n_blocks];
    for (e, &b) in partition.block_of.iter().enumerate() {
        let l = lengths[e];
        let slot = &mut min_len[b as usize];
        if l < *slot {
            *slot = l;
            min_count[b as usize] = 1;
        } else if l == *slot {
            min_count[b as usize] += 1;
        }
    }
    if require_unique_minimum {
        if let Some(b) = min_count.iter().position(|&c| c != 1) {
            return Err(Error::invariant(format!(
                "double coset {} has {} elements of minimal length",
                b, min_count[b]
            )));
        }
    }
    let mut reps = Vec::with_capacity(n_blocks);
    let mut rep_lengths = Vec::with_capacity(n_blocks);
    let mut all_involutions = true;
    let mut non_involution = None;
    for (b, block) in partition.blocks.iter().enumerate() {
        let rep = block.rep;
        if lengths[rep as usize] != min_len[b] {
            return Err(Error::invariant(format!(
                "block {} representative is not length-minimal",
                b
            )));
        }
        reps.push(rep);
        rep_lengths.push(min_len[b]);
        if group.mul_idx(rep, rep) != group.identity() {
            all_involutions = false;
            if non_involution.is_none() {
                non_involution = Some(b as u32);
            }
        }
    }
    Ok(MinRepReport {
        reps,
        lengths: rep_lengths,
        all_involutions,
        non_involution,
    })
}

/// Both sides of the coset-scheme commutativity criterion for a subgroup P:
/// the orbital scheme on G/P, and the involution test on minimal double coset
/// representatives. The two verdicts agree for parabolic subgroups of finite
/// Coxeter groups; `verdicts_agree` records the comparison.
pub struct CosetSchemeCriterion {
    pub scheme: Scheme,
    pub partition: DoubleCosetPartition,
    pub min_reps: MinRepReport,
    pub verdicts_agree: bool,
}

pub fn coset_scheme_criterion<E, O>(
    group: &FiniteGroup<E, O>,
    sub: &Subgroup,
    degree_cap: usize,
) -> Result<CosetSchemeCriterion>
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let action = crate::groupcore::coset_action(group, sub, group.generator_indices(), degree_cap)?;
    let scheme = Scheme::from_action(&action.gen_perms, action.space.len())?;
    let partition = double_coset_partition(group, sub, sub);
    if partition.blocks.len() != scheme.rank() {
        return Err(Error::invariant(format!(
            "{} double cosets but scheme rank {}",
            partition.blocks.len(),
            scheme.rank()
        )));
    }
    let lengths = length_function(group, group.generator_indices());
    let min_reps = min_rep_report(group, &partition, &lengths, true)?;
    let verdicts_agree = scheme.is_commutative() == min_reps.all_involutions;
    Ok(CosetSchemeCriterion {
        scheme,
        partition,
        min_reps,
        verdicts_agree,
    })
}

/// Count involutions inside each block of a double coset partition and record
/// whether each block is closed under inversion.
pub fn block_involutions<E, O>(
    group: &FiniteGroup<E, O>,
    partition: &DoubleCosetPartition,
) -> (Vec<u64>, Vec<bool>)
where
    E: Clone + Eq + Hash,
    O: GroupOps<E>,
{
    let n_blocks = partition.blocks.len();
    let mut counts = vec![0u64; n_blocks];
    let mut closed = vec![true; n_blocks];
    for (e, &b) in partition.block_of.iter().enumerate() {
        let inv = group.inv_idx(e as u32);
        if group.mul_idx(e as u32, e as u32) == group.identity() && e as u32 != group.identity() {
            counts[b as usize] += 1;
        }
        if partition.block_of[inv as usize] != b {
            closed[b as usize] = false;
        }
    }
    (counts, closed)
}
