//! Exact verification of multiplicity-free (Gelfand) subgroup properties in
//! finite quotients of affine Weyl groups.
//!
//! The toolkit builds irreducible crystallographic root systems, realizes
//! their Weyl groups as integer matrices acting on the coroot lattice, forms
//! the finite quotients `G_h = W ⋉ (Z_h)^n`, and constructs the subgroup
//! lattice attached to deleting one node of the Dynkin diagram (parabolic P,
//! its normalizer Q, reflection subgroup H, translation complement Y, and the
//! double cover K = QH).  Whether `1_K^{G_h}` is multiplicity-free is decided
//! exactly through the orbital scheme of the coset action: the permutation
//! character is multiplicity-free if and only if the orbital adjacency
//! algebra is commutative.  All arithmetic is exact (integers and rationals);
//! nothing here touches floating point.

pub mod classfun;
pub mod dn_model;
pub mod error;
pub mod groupcore;
pub mod hypothesis;
pub mod rootsys;
pub mod scheme;
pub mod weyl_affine;

pub use error::{Error, Result};
pub use rootsys::{build_root_system, RootSystem, RootType};
