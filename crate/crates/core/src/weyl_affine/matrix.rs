//! Exact integer matrices acting on coroot coordinates as row vectors.
//!
//! The convention throughout: vectors are rows, maps act on the right, so
//! the matrix of "f then g" is M(f)·M(g).

use crate::error::{Error, Result};
use crate::groupcore::GroupOps;
use num_rational::Ratio;
use num_traits::{One, Zero};

type Q128 = Ratio<i128>;

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    a: Vec<i64>,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Mat {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for r in &rows {
            assert_eq!(r.len(), n, "matrix must be square");
            a.extend_from_slice(r);
        }
        Mat { n, a }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    /// self · other.
    pub fn mul(&self, other: &Mat) -> Mat {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = self.a[i * n + l];
                if x != 0 {
                    let orow = &other.a[l * n..(l + 1) * n];
                    let out_row = &mut out[i * n..(i + 1) * n];
                    for (o, &y) in out_row.iter_mut().zip(orow) {
                        *o += x * y;
                    }
                }
            }
        }
        Mat { n, a: out }
    }

    /// Row-vector action v ↦ v·M.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        debug_assert_eq!(v.len(), n);
        let mut out = vec![0i64; n];
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                for (o, &m) in out.iter_mut().zip(self.row(i)) {
                    *o += x * m;
                }
            }
        }
        out
    }

    /// Entry (i, j) of self·other without forming the product.
    pub fn product_entry(&self, other: &Mat, i: usize, j: usize) -> i64 {
        (0..self.n).map(|l| self.get(i, l) * other.get(l, j)).sum()
    }

    /// Exact inverse.  Fails unless the matrix is invertible over the
    /// integers (determinant ±1), which all Weyl elements are.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.n;
        let mut m: Vec<Vec<Q128>> = (0..n)
            .map(|i| {
                let mut row: Vec<Q128> = self
                    .row(i)
                    .iter()
                    .map(|&x| Q128::from_integer(x as i128))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Q128::one()
                    } else {
                        Q128::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::invariant("matrix is singular".to_string()))?;
            m.swap(col, pivot);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col];
                    for c in 0..2 * n {
                        let sub = m[col][c] * f;
                        m[r][c] -= sub;
                    }
                }
            }
        }
        let mut out = Mat::identity(n);
        for i in 0..n {
            for j in 0..n {
                let q = m[i][n + j];
                if !q.is_integer() {
                    return Err(Error::invariant(
                        "matrix inverse is not integral".to_string(),
                    ));
                }
                let v = q.to_integer();
                if v < i64::MIN as i128 || v > i64::MAX as i128 {
                    return Err(Error::invariant("matrix inverse overflows".to_string()));
                }
                out.set(i, j, v as i64);
            }
        }
        Ok(out)
    }
}

/// Group operations for unimodular integer matrices.
#[derive(Debug, Clone, Copy, Default)]
pub struct MatOps;

impl GroupOps<Mat> for MatOps {
    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        a.mul(b)
    }

    fn inv(&self, a: &Mat) -> Mat {
        a.inverse().expect("group matrices are unimodular")
    }
}

/// Matrix of the simple reflection s_j (0-based) on coroot coordinates:
/// only column j differs from the identity, N[i][j] = δ_ij − a[j][i].
pub fn simple_reflection(cartan: &[Vec<i64>], j: usize) -> Mat {
    let n = cartan.len();
    let mut m = Mat::identity(n);
    for i in 0..n {
        let d = if i == j { 1 } else { 0 };
        m.set(i, j, d - cartan[j][i]);
    }
    m
}

/// Matrix of the reflection in a root with given root coefficients `c` and
/// coroot coefficients `d`: N = I − (Aᵀc) ⊗ d.
pub fn reflection_for(cartan: &[Vec<i64>], c: &[i64], d: &[i64]) -> Mat {
    let n = cartan.len();
    let mut atc = vec![0i64; n];
    for (i, entry) in atc.iter_mut().enumerate() {
        *entry = (0..n).map(|q| cartan[q][i] * c[q]).sum();
    }
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j) - atc[i] * d[j];
            m.set(i, j, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, RootType};

    fn order_of(m: &Mat) -> usize {
        let mut p = m.clone();
        for ord in 1..=48 {
            if p.is_identity() {
                return ord;
            }
            p = p.mul(m);
        }
        panic!("order too large")
    }

    #[test]
    fn simple_reflections_are_involutions() {
        for rt in [RootType::A(3), RootType::G2, RootType::F4, RootType::B(4)] {
            let rs = build_root_system(rt).unwrap();
            for j in 0..rs.rank() {
                let m = simple_reflection(rs.cartan(), j);
                assert!(m.mul(&m).is_identity());
            }
        }
    }

    #[test]
    fn braid_orders_match_diagram_bonds() {
        for rt in [
            RootType::A(3),
            RootType::B(3),
            RootType::C(4),
            RootType::D(4),
            RootType::F4,
            RootType::G2,
            RootType::E6,
        ] {
            let rs = build_root_system(rt).unwrap();
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    if i == j {
                        continue;
                    }
                    let si = simple_reflection(rs.cartan(), i);
                    let sj = simple_reflection(rs.cartan(), j);
                    let expected = rs.diagram().bond(i + 1, j + 1) as usize;
                    assert_eq!(
                        order_of(&si.mul(&sj)),
                        expected,
                        "{} nodes {} {}",
                        rt.label(),
                        i + 1,
                        j + 1
                    );
                }
            }
        }
    }

    #[test]
    fn reflection_for_agrees_on_simple_roots() {
        let rs = build_root_system(RootType::F4).unwrap();
        for j in 0..4 {
            let mut c = vec![0i64; 4];
            c[j] = 1;
            assert_eq!(
                reflection_for(rs.cartan(), &c, &c),
                simple_reflection(rs.cartan(), j)
            );
        }
    }

    #[test]
    fn reflections_permute_the_coroot_set() {
        for rt in [RootType::B(3), RootType::G2] {
            let rs = build_root_system(rt).unwrap();
            for j in 0..rs.rank() {
                let m = simple_reflection(rs.cartan(), j);
                for r in rs.roots() {
                    let img = m.apply(&r.coroot);
                    assert!(rs.root_by_coroot(&img).is_some());
                }
            }
        }
    }

    #[test]
    fn exact_inverse_roundtrip() {
        let rs = build_root_system(RootType::G2).unwrap();
        let s1 = simple_reflection(rs.cartan(), 0);
        let s2 = simple_reflection(rs.cartan(), 1);
        let w = s1.mul(&s2).mul(&s1).mul(&s2);
        let winv = w.inverse().unwrap();
        assert!(w.mul(&winv).is_identity());
        assert!(winv.mul(&w).is_identity());
    }

    #[test]
    fn non_unimodular_inverse_rejected() {
        let m = Mat::from_rows(vec![vec![2, 0], vec![0, 1]]);
        assert!(m.inverse().is_err());
        let s = Mat::from_rows(vec![vec![1, 1], vec![1, 1]]);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn row_action_matches_multiplication() {
        let rs = build_root_system(RootType::B(3)).unwrap();
        let s1 = simple_reflection(rs.cartan(), 0);
        let s3 = simple_reflection(rs.cartan(), 2);
        let prod = s1.mul(&s3);
        let v = vec![1, -2, 3];
        assert_eq!(prod.apply(&v), s3.apply(&s1.apply(&v)));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(prod.product_entry(&Mat::identity(3), i, j), prod.get(i, j));
            }
        }
    }
}
