//! Elements of the finite quotient W ⋉ (Z/h)^n and its group operations.
//!
//! An element (w, v) sends a coroot-coordinate vector u to u·M(w) + v, all
//! coordinates taken mod h.  Composition is (w1,v1)·(w2,v2) =
//! (w1·w2, v1·M(w2) + v2), matching the row-vector convention.

use super::matrix::Mat;
use crate::error::{Error, Result};
use crate::groupcore::{FiniteGroup, GroupOps};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffElem {
    pub m: Mat,
    pub v: Vec<u32>,
}

impl AffElem {
    pub fn identity(n: usize) -> AffElem {
        AffElem {
            m: Mat::identity(n),
            v: vec![0; n],
        }
    }

    pub fn translation(v: Vec<u32>) -> AffElem {
        let n = v.len();
        AffElem {
            m: Mat::identity(n),
            v,
        }
    }

    pub fn is_translation(&self) -> bool {
        self.m.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.is_translation() && self.v.iter().all(|&x| x == 0)
    }
}

/// Operations for a fixed modulus h.
#[derive(Debug, Clone, Copy)]
pub struct AffOps {
    pub h: u32,
}

impl AffOps {
    pub fn new(h: u32) -> Result<AffOps> {
        if h < 2 {
            return Err(Error::BadModulus(h));
        }
        Ok(AffOps { h })
    }

    /// v·M reduced mod h.
    pub fn apply_vec(&self, v: &[u32], m: &Mat) -> Vec<u32> {
        let n = v.len();
        let h = self.h as i64;
        let mut out = vec![0u32; n];
        for (j, o) in out.iter_mut().enumerate() {
            let mut acc = 0i64;
            for (i, &x) in v.iter().enumerate() {
                acc += x as i64 * m.get(i, j);
            }
            *o = acc.rem_euclid(h) as u32;
        }
        out
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<u32> {
        v.iter().map(|&x| x.rem_euclid(self.h as i64) as u32).collect()
    }
}

impl GroupOps<AffElem> for AffOps {
    fn mul(&self, a: &AffElem, b: &AffElem) -> AffElem {
        let mut v = self.apply_vec(&a.v, &b.m);
        for (o, &x) in v.iter_mut().zip(&b.v) {
            *o = (*o + x) % self.h;
        }
        AffElem { m: a.m.mul(&b.m), v }
    }

    fn inv(&self, a: &AffElem) -> AffElem {
        let minv = a.m.inverse().expect("group matrices are unimodular");
        let w = self.apply_vec(&a.v, &minv);
        let v = w.iter().map(|&x| (self.h - x) % self.h).collect();
        AffElem { m: minv, v }
    }
}

/// Generators of W ⋉ (Z/h)^n: the n simple reflections (as matrices with
/// zero translation part) followed by the n unit translations.  Orderings
/// elsewhere (the folded action in particular) rely on this layout.
pub fn affine_generators(simple: &[Mat], h: u32) -> Vec<AffElem> {
    let n = simple.len();
    let mut gens: Vec<AffElem> = simple
        .iter()
        .map(|m| AffElem {
            m: m.clone(),
            v: vec![0; n],
        })
        .collect();
    for j in 0..n {
        let mut v = vec![0u32; n];
        v[j] = 1 % h;
        gens.push(AffElem::translation(v));
    }
    gens
}

/// Enumerate the full quotient.  Only feasible for small |W|·h^n; the cap
/// is enforced in elements, not memory.
pub fn build_affine_quotient(
    simple: &[Mat],
    h: u32,
    cap: usize,
) -> Result<FiniteGroup<AffElem, AffOps>> {
    let ops = AffOps::new(h)?;
    let n = simple.len();
    let gens = affine_generators(simple, h);
    FiniteGroup::generate(ops, AffElem::identity(n), &gens, cap)
}
