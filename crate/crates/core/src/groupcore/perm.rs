//! Permutations on {0, .., n-1} in image-table form.

use crate::error::{Error, Result};
use crate::groupcore::GroupOps;

/// A permutation stored as its image table: `p.image(i)` is where `i` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    /// Validates that `images` is a bijection on 0..len.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::invariant(format!(
                    "image table {images:?} is not a permutation"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, p: u32) -> u32 {
        self.0[p as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Composition "self first, then other": i -> other(self(i)).
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    /// Cycle decomposition, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start as u32 {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start as u32;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cyc.push(p);
                p = self.0[p as usize];
            }
            out.push(cyc);
        }
        out
    }

    /// Element order: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1u64, |acc, l| acc / gcd(acc, l) * l)
    }
}

/// Group operations for permutations of a fixed degree.
#[derive(Debug, Clone, Copy, Default)]
pub struct PermOps;

impl GroupOps<Perm> for PermOps {
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.then(b)
    }

    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }
}

/// The adjacent transposition (i, i+1) on 0..n.
pub fn adjacent_transposition(n: usize, i: usize) -> Perm {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.swap(i, i + 1);
    Perm(v)
}

/// The transposition (i, j) on 0..n.
pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.swap(i, j);
    Perm(v)
}
