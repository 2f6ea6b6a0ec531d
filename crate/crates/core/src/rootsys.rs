//! Irreducible crystallographic root systems over exact integer coordinates.
//!
//! Roots are stored as coefficient vectors over the simple roots, paired with
//! their coroots as coefficient vectors over the simple coroots.  Both
//! expansions are produced together by one reflection closure, so no length
//! normalization or floating point ever enters.  Node numbering follows the
//! standard (Bourbaki) convention; it is pinned operationally by the braid
//! orders and highest-root tests rather than by any geometric embedding.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// Classification label of an irreducible crystallographic root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A(u8),
    B(u8),
    C(u8),
    D(u8),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::B(n) | RootType::C(n) | RootType::D(n) => n as usize,
            RootType::E6 => 6,
            RootType::E7 => 7,
            RootType::E8 => 8,
            RootType::F4 => 4,
            RootType::G2 => 2,
        }
    }

    pub fn family(self) -> char {
        match self {
            RootType::A(_) => 'A',
            RootType::B(_) => 'B',
            RootType::C(_) => 'C',
            RootType::D(_) => 'D',
            RootType::E6 | RootType::E7 | RootType::E8 => 'E',
            RootType::F4 => 'F',
            RootType::G2 => 'G',
        }
    }

    /// Checks the rank restrictions: A n>=1, B/C n>=2, D n>=3, E 6..8, F4, G2.
    pub fn validate(self) -> Result<()> {
        let ok = match self {
            RootType::A(n) => n >= 1,
            RootType::B(n) | RootType::C(n) => n >= 2,
            RootType::D(n) => n >= 3,
            _ => true,
        };
        if ok && self.rank() <= 16 {
            Ok(())
        } else {
            Err(Error::InvalidRank {
                family: self.family(),
                rank: self.rank(),
            })
        }
    }

    pub fn label(self) -> String {
        format!("{}{}", self.family(), self.rank())
    }

    /// Parses labels like "A3", "a3", "E6", "F4", "G2".
    pub fn parse(s: &str) -> Result<RootType> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .ok_or_else(|| Error::unsupported("empty type label".to_string()))?
            .to_ascii_uppercase();
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::unsupported(format!("cannot parse type label {s:?}")))?;
        Self::from_family_rank(fam, rank)
    }

    pub fn from_family_rank(fam: char, rank: usize) -> Result<RootType> {
        if rank == 0 || rank > 16 {
            return Err(Error::InvalidRank { family: fam, rank });
        }
        let n = rank as u8;
        let rt = match fam.to_ascii_uppercase() {
            'A' => RootType::A(n),
            'B' => RootType::B(n),
            'C' => RootType::C(n),
            'D' => RootType::D(n),
            'E' => match rank {
                6 => RootType::E6,
                7 => RootType::E7,
                8 => RootType::E8,
                _ => return Err(Error::InvalidRank { family: 'E', rank }),
            },
            'F' => {
                if rank == 4 {
                    RootType::F4
                } else {
                    return Err(Error::InvalidRank { family: 'F', rank });
                }
            }
            'G' => {
                if rank == 2 {
                    RootType::G2
                } else {
                    return Err(Error::InvalidRank { family: 'G', rank });
                }
            }
            c => return Err(Error::InvalidRank { family: c, rank }),
        };
        rt.validate()?;
        Ok(rt)
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A root together with its coroot, both as integer coefficient vectors over
/// the simple roots / simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

/// Dynkin diagram: adjacency with bond orders m_ij in {3,4,6}.
#[derive(Debug, Clone)]
pub struct Diagram {
    n: usize,
    /// bond[i][j] = order of s_i s_j (2 when not adjacent, i != j).
    bond: Vec<Vec<u8>>,
}

impl Diagram {
    fn from_cartan(cartan: &[Vec<i64>]) -> Result<Diagram> {
        let n = cartan.len();
        let mut bond = vec![vec![2u8; n]; n];
        for i in 0..n {
            bond[i][i] = 1;
            for j in 0..n {
                if i == j {
                    continue;
                }
                bond[i][j] = match cartan[i][j] * cartan[j][i] {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    3 => 6,
                    q => {
                        return Err(Error::invariant(format!(
                            "off-diagonal Cartan product {q} is not crystallographic"
                        )))
                    }
                };
            }
        }
        Ok(Diagram { n, bond })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Order of s_i s_j for 1-based nodes.
    pub fn bond(&self, i: usize, j: usize) -> u8 {
        self.bond[i - 1][j - 1]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.bond(i, j) >= 3
    }

    pub fn degree(&self, i: usize) -> usize {
        (1..=self.n).filter(|&j| self.adjacent(i, j)).count()
    }

    /// Nodes of diagram degree one (degree zero counts for rank 1).
    pub fn leaves(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.degree(i) <= 1).collect()
    }

    /// Connected components of the diagram restricted to `keep`.
    pub fn components_of(&self, keep: &[usize]) -> Vec<Vec<usize>> {
        let mut remaining: Vec<usize> = keep.to_vec();
        remaining.sort_unstable();
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        for &start in &remaining {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &remaining {
                    if !seen[v] && self.adjacent(u, v) {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Graph distance between two nodes (usize::MAX if disconnected).
    pub fn distance(&self, from: usize, to: usize) -> usize {
        let mut dist = vec![usize::MAX; self.n + 1];
        dist[from] = 0;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for v in 1..=self.n {
                if self.adjacent(u, v) && dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist[to]
    }

    /// The pair of leaves at maximal mutual distance (diameter endpoints).
    pub fn farthest_leaf_pair(&self) -> (usize, usize) {
        let leaves = self.leaves();
        let mut best = (leaves[0], leaves[0], 0usize);
        for &a in &leaves {
            for &b in &leaves {
                if a < b {
                    let d = self.distance(a, b);
                    if d > best.2 {
                        best = (a, b, d);
                    }
                }
            }
        }
        (best.0, best.1)
    }
}

/// An irreducible root system: Cartan matrix, diagram, and the full root set
/// produced by reflection closure of the simple roots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    rt: RootType,
    cartan: Vec<Vec<i64>>,
    diagram: Diagram,
    /// All roots; positive roots first, then their negatives in the same order.
    roots: Vec<Root>,
    n_positive: usize,
    highest: usize,
    coroot_index: HashMap<Vec<i64>, usize>,
}

/// One connected component of the diagram with a node deleted.
#[derive(Debug, Clone)]
pub struct Component {
    /// 1-based node indices, sorted.
    pub nodes: Vec<usize>,
    /// Highest root of the component's subsystem, in full-rank coordinates.
    pub highest_root: Root,
    /// Number of positive roots of the component subsystem.
    pub n_positive: usize,
}

/// Result of deleting one node: the residual subsystem split into components.
#[derive(Debug, Clone)]
pub struct DeletedNodeSystem {
    pub rt: RootType,
    /// Deleted node, 1-based.
    pub k: usize,
    pub components: Vec<Component>,
}

/// Bourbaki Cartan matrix; entry (i,j) is <alpha_i, alpha_j^vee>.
fn cartan_matrix(rt: RootType) -> Vec<Vec<i64>> {
    let n = rt.rank();
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut chain = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match rt {
        RootType::A(_) => {
            for i in 0..n - 1 {
                chain(i, i + 1);
            }
        }
        RootType::B(_) => {
            for i in 0..n - 1 {
                chain(i, i + 1);
            }
            // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2.
            a[n - 2][n - 1] = -2;
        }
        RootType::C(_) => {
            for i in 0..n - 1 {
                chain(i, i + 1);
            }
            // alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2.
            a[n - 1][n - 2] = -2;
        }
        RootType::D(_) => {
            for i in 0..n.saturating_sub(3) {
                chain(i, i + 1);
            }
            chain(n - 3, n - 2);
            chain(n - 3, n - 1);
        }
        RootType::E6 | RootType::E7 | RootType::E8 => {
            // Chain 1-3-4-5-...-n with node 2 attached to node 4.
            chain(0, 2);
            for i in 2..n - 1 {
                chain(i, i + 1);
            }
            chain(1, 3);
        }
        RootType::F4 => {
            chain(0, 1);
            chain(2, 3);
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short.
            a[1][2] = -2;
            a[2][1] = -1;
        }
        RootType::G2 => {
            // alpha_1 short, alpha_2 long.
            a[0][1] = -1;
            a[1][0] = -3;
        }
    }
    a
}

/// Applies simple reflection s_j (0-based) to a (root, coroot) coefficient
/// pair in place.  Root coordinates transform through column j of the Cartan
/// matrix, coroot coordinates through row j.
fn reflect_pair(cartan: &[Vec<i64>], root: &mut [i64], coroot: &mut [i64], j: usize) {
    let n = cartan.len();
    let mut pairing = 0i64;
    for i in 0..n {
        pairing += root[i] * cartan[i][j];
    }
    root[j] -= pairing;
    let mut copairing = 0i64;
    for i in 0..n {
        copairing += cartan[j][i] * coroot[i];
    }
    coroot[j] -= copairing;
}

/// Reflection closure of the seed pairs under the reflections in `nodes`
/// (0-based). Returns all roots reached, positives first.
fn closure(
    cartan: &[Vec<i64>],
    seeds: &[(Vec<i64>, Vec<i64>)],
    nodes: &[usize],
) -> Result<(Vec<Root>, usize)> {
    const CLOSURE_CAP: usize = 4096;
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for (r, c) in seeds {
        if seen.insert(r.clone(), c.clone()).is_none() {
            queue.push(r.clone());
        }
    }
    while let Some(r) = queue.pop() {
        let c = seen[&r].clone();
        for &j in nodes {
            let mut r2 = r.clone();
            let mut c2 = c.clone();
            reflect_pair(cartan, &mut r2, &mut c2, j);
            if seen.len() >= CLOSURE_CAP {
                return Err(Error::invariant(
                    "reflection closure exceeded the sanity cap".to_string(),
                ));
            }
            if !seen.contains_key(&r2) {
                seen.insert(r2.clone(), c2);
                queue.push(r2);
            }
        }
    }
    let mut positive: Vec<Root> = Vec::new();
    let mut negative: Vec<Root> = Vec::new();
    for (r, c) in &seen {
        let pos = r.iter().all(|&x| x >= 0);
        let neg = r.iter().all(|&x| x <= 0);
        if pos == neg {
            return Err(Error::invariant(format!(
                "root {r:?} has mixed-sign coefficients"
            )));
        }
        let root = Root {
            root: r.clone(),
            coroot: c.clone(),
        };
        if pos {
            positive.push(root);
        } else {
            negative.push(root);
        }
    }
    if positive.len() != negative.len() {
        return Err(Error::invariant(
            "positive and negative root counts differ".to_string(),
        ));
    }
    positive.sort_by(|a, b| a.root.cmp(&b.root));
    let n_positive = positive.len();
    let mut all = positive;
    let negs: Vec<Root> = all
        .iter()
        .map(|r| Root {
            root: r.root.iter().map(|x| -x).collect(),
            coroot: r.coroot.iter().map(|x| -x).collect(),
        })
        .collect();
    all.extend(negs);
    Ok((all, n_positive))
}

/// Index (into a root list) of the unique root whose coefficient vector
/// dominates every other coordinatewise.
fn dominant_index(roots: &[Root], candidates: &[usize]) -> Result<usize> {
    let best = *candidates
        .iter()
        .max_by_key(|&&i| roots[i].root.iter().sum::<i64>())
        .ok_or_else(|| Error::invariant("empty root set".to_string()))?;
    for &i in candidates {
        let dominated = roots[best]
            .root
            .iter()
            .zip(&roots[i].root)
            .all(|(a, b)| a >= b);
        if !dominated {
            return Err(Error::invariant(format!(
                "no coordinatewise-dominant root: {:?} vs {:?}",
                roots[best].root, roots[i].root
            )));
        }
    }
    Ok(best)
}

/// Builds the root system for a validated type label.
pub fn build_root_system(rt: RootType) -> Result<RootSystem> {
    rt.validate()?;
    let n = rt.rank();
    let cartan = cartan_matrix(rt);
    let diagram = Diagram::from_cartan(&cartan)?;
    let seeds: Vec<(Vec<i64>, Vec<i64>)> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            (e.clone(), e)
        })
        .collect();
    let all_nodes: Vec<usize> = (0..n).collect();
    let (roots, n_positive) = closure(&cartan, &seeds, &all_nodes)?;
    let expected = expected_root_count(rt);
    if roots.len() != expected {
        return Err(Error::invariant(format!(
            "{} closure found {} roots, expected {}",
            rt.label(),
            roots.len(),
            expected
        )));
    }
    let highest = dominant_index(&roots, &(0..n_positive).collect::<Vec<_>>())?;
    let mut coroot_index = HashMap::new();
    for (i, r) in roots.iter().enumerate() {
        if coroot_index.insert(r.coroot.clone(), i).is_some() {
            return Err(Error::invariant("duplicate coroot coordinates".to_string()));
        }
    }
    Ok(RootSystem {
        rt,
        cartan,
        diagram,
        roots,
        n_positive,
        highest,
        coroot_index,
    })
}

/// Total number of roots, from the classification.
pub fn expected_root_count(rt: RootType) -> usize {
    let n = rt.rank();
    match rt {
        RootType::A(_) => n * (n + 1),
        RootType::B(_) | RootType::C(_) => 2 * n * n,
        RootType::D(_) => 2 * n * (n - 1),
        RootType::E6 => 72,
        RootType::E7 => 126,
        RootType::E8 => 240,
        RootType::F4 => 48,
        RootType::G2 => 12,
    }
}

/// Frozen expected highest-root coefficient table, one row per type.
pub fn reference_highest_root(rt: RootType) -> Vec<i64> {
    let n = rt.rank();
    match rt {
        RootType::A(_) => vec![1; n],
        RootType::B(_) => {
            let mut v = vec![2; n];
            v[0] = 1;
            v
        }
        RootType::C(_) => {
            let mut v = vec![2; n];
            v[n - 1] = 1;
            v
        }
        RootType::D(_) => {
            let mut v = vec![2; n];
            v[0] = 1;
            v[n - 2] = 1;
            v[n - 1] = 1;
            v
        }
        RootType::E6 => vec![1, 2, 2, 3, 2, 1],
        RootType::E7 => vec![2, 2, 3, 4, 3, 2, 1],
        RootType::E8 => vec![2, 3, 4, 6, 5, 4, 3, 2],
        RootType::F4 => vec![2, 3, 4, 2],
        RootType::G2 => vec![3, 2],
    }
}

impl RootSystem {
    pub fn root_type(&self) -> RootType {
        self.rt
    }

    pub fn rank(&self) -> usize {
        self.rt.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    /// All roots, positive first.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_positive]
    }

    pub fn highest_root(&self) -> &Root {
        &self.roots[self.highest]
    }

    /// Simple root alpha_k as a (root, coroot) pair, 1-based.
    pub fn simple_root(&self, k: usize) -> Result<Root> {
        self.check_node(k)?;
        let mut e = vec![0i64; self.rank()];
        e[k - 1] = 1;
        Ok(Root {
            root: e.clone(),
            coroot: e,
        })
    }

    pub fn check_node(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.rank() {
            Err(Error::NodeOutOfRange {
                node: k,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// Looks a root up by its coroot coordinate vector.
    pub fn root_by_coroot(&self, coroot: &[i64]) -> Option<&Root> {
        self.coroot_index.get(coroot).map(|&i| &self.roots[i])
    }

    /// Applies s_j (1-based) to a (root, coroot) pair.
    pub fn reflect(&self, r: &Root, j: usize) -> Result<Root> {
        self.check_node(j)?;
        let mut root = r.root.clone();
        let mut coroot = r.coroot.clone();
        reflect_pair(&self.cartan, &mut root, &mut coroot, j - 1);
        Ok(Root { root, coroot })
    }

    /// Deletes node k (1-based) and splits the residual diagram into
    /// components, each carrying the highest root of its subsystem.
    pub fn delete_node(&self, k: usize) -> Result<DeletedNodeSystem> {
        self.check_node(k)?;
        let keep: Vec<usize> = (1..=self.rank()).filter(|&i| i != k).collect();
        let comps = self.diagram.components_of(&keep);
        let mut union: Vec<usize> = comps.iter().flatten().copied().collect();
        union.sort_unstable();
        if union != keep {
            return Err(Error::invariant(
                "components do not partition the residual node set".to_string(),
            ));
        }
        let mut components = Vec::with_capacity(comps.len());
        for nodes in comps {
            let zero_based: Vec<usize> = nodes.iter().map(|&i| i - 1).collect();
            let seeds: Vec<(Vec<i64>, Vec<i64>)> = zero_based
                .iter()
                .map(|&i| {
                    let mut e = vec![0i64; self.rank()];
                    e[i] = 1;
                    (e.clone(), e)
                })
                .collect();
            let (roots, n_positive) = closure(&self.cartan, &seeds, &zero_based)?;
            let hi = dominant_index(&roots, &(0..n_positive).collect::<Vec<_>>())?;
            let highest_root = roots[hi].clone();
            for (pos, coeff) in highest_root.root.iter().enumerate() {
                let inside = nodes.contains(&(pos + 1));
                if inside && *coeff < 1 {
                    return Err(Error::invariant(format!(
                        "component highest root has non-positive coefficient at node {}",
                        pos + 1
                    )));
                }
                if !inside && *coeff != 0 {
                    return Err(Error::invariant(format!(
                        "component highest root has support outside the component at node {}",
                        pos + 1
                    )));
                }
            }
            components.push(Component {
                nodes,
                highest_root,
                n_positive,
            });
        }
        Ok(DeletedNodeSystem {
            rt: self.rt,
            k,
            components,
        })
    }
}

/// Coordinate k (1-based) of a coefficient vector. The vector may be a root
/// expansion over the simple roots or a coroot expansion over the simple
/// coroots; the accessor does not care.
pub fn alpha_coefficient(k: usize, v: &[i64]) -> Result<i64> {
    if k == 0 || k > v.len() {
        return Err(Error::NodeOutOfRange {
            node: k,
            rank: v.len(),
        });
    }
    Ok(v[k - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(rt: RootType) -> Vec<i64> {
        build_root_system(rt).unwrap().highest_root().root.clone()
    }

    #[test]
    fn highest_root_coefficients_match_reference_table() {
        let types = [
            RootType::A(1),
            RootType::A(3),
            RootType::A(7),
            RootType::B(2),
            RootType::B(5),
            RootType::C(2),
            RootType::C(6),
            RootType::D(3),
            RootType::D(4),
            RootType::D(7),
            RootType::E6,
            RootType::E7,
            RootType::E8,
            RootType::F4,
            RootType::G2,
        ];
        for rt in types {
            assert_eq!(coeffs(rt), reference_highest_root(rt), "{}", rt.label());
        }
    }

    #[test]
    fn named_rows() {
        assert_eq!(coeffs(RootType::G2), vec![3, 2]);
        assert_eq!(coeffs(RootType::F4), vec![2, 3, 4, 2]);
        assert_eq!(coeffs(RootType::A(3)), vec![1, 1, 1]);
        assert_eq!(coeffs(RootType::E8), vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn root_counts() {
        for (rt, count) in [
            (RootType::G2, 12),
            (RootType::F4, 48),
            (RootType::E6, 72),
            (RootType::E8, 240),
            (RootType::A(3), 12),
            (RootType::B(3), 18),
            (RootType::C(3), 18),
            (RootType::D(4), 24),
            (RootType::D(3), 12),
        ] {
            let rs = build_root_system(rt).unwrap();
            assert_eq!(rs.roots().len(), count, "{}", rt.label());
            assert_eq!(rs.positive_roots().len() * 2, count);
        }
    }

    #[test]
    fn d3_equals_a3_as_a_root_count_and_highest_root() {
        assert_eq!(coeffs(RootType::D(3)), vec![1, 1, 1]);
    }

    #[test]
    fn root_set_closed_under_simple_reflections() {
        for rt in [RootType::B(3), RootType::G2, RootType::F4, RootType::D(4)] {
            let rs = build_root_system(rt).unwrap();
            for r in rs.roots() {
                for j in 1..=rs.rank() {
                    let img = rs.reflect(r, j).unwrap();
                    assert!(
                        rs.roots().contains(&img),
                        "{} not closed at {:?}",
                        rt.label(),
                        r.root
                    );
                }
            }
        }
    }

    #[test]
    fn highest_root_dominates() {
        for rt in [RootType::E6, RootType::C(4), RootType::D(5)] {
            let rs = build_root_system(rt).unwrap();
            let hi = rs.highest_root();
            for r in rs.positive_roots() {
                assert!(hi.root.iter().zip(&r.root).all(|(a, b)| a >= b));
            }
        }
    }

    #[test]
    fn delete_node_components() {
        let rs = build_root_system(RootType::A(3)).unwrap();
        let del = rs.delete_node(2).unwrap();
        let sizes: Vec<usize> = del.components.iter().map(|c| c.nodes.len()).collect();
        assert_eq!(sizes, vec![1, 1]);

        let rs = build_root_system(RootType::D(5)).unwrap();
        let del = rs.delete_node(3).unwrap();
        let mut sizes: Vec<usize> = del.components.iter().map(|c| c.nodes.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2]);

        let rs = build_root_system(RootType::E6).unwrap();
        let del = rs.delete_node(4).unwrap();
        let mut sizes: Vec<usize> = del.components.iter().map(|c| c.nodes.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2]);
    }

    #[test]
    fn component_highest_roots_positive_on_support() {
        let rs = build_root_system(RootType::D(6)).unwrap();
        for k in 1..=6 {
            let del = rs.delete_node(k).unwrap();
            let mut all: Vec<usize> = del.components.iter().flat_map(|c| c.nodes.clone()).collect();
            all.sort_unstable();
            let expect: Vec<usize> = (1..=6).filter(|&i| i != k).collect();
            assert_eq!(all, expect);
        }
    }

    #[test]
    fn alpha_coefficient_reads_coordinates() {
        let rs = build_root_system(RootType::A(3)).unwrap();
        let hi = rs.highest_root();
        assert_eq!(alpha_coefficient(2, &hi.coroot).unwrap(), 1);
        let a1 = rs.simple_root(1).unwrap();
        assert_eq!(alpha_coefficient(2, &a1.coroot).unwrap(), 0);
        // G2: the short node carries coefficient 3 in the highest root.
        let g2 = build_root_system(RootType::G2).unwrap();
        assert_eq!(alpha_coefficient(1, &g2.highest_root().root).unwrap(), 3);
        // Its coroot expansion is a different vector.
        assert_eq!(g2.highest_root().coroot, vec![1, 2]);
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(RootType::D(2).validate().is_err());
        assert!(RootType::B(1).validate().is_err());
        assert!(RootType::from_family_rank('E', 5).is_err());
        assert!(RootType::from_family_rank('F', 3).is_err());
        assert!(RootType::parse("A0").is_err());
        assert!(RootType::parse("G2").is_ok());
    }

    #[test]
    fn diagram_structure() {
        let e8 = build_root_system(RootType::E8).unwrap();
        assert_eq!(e8.diagram().leaves(), vec![1, 2, 8]);
        assert_eq!(e8.diagram().farthest_leaf_pair(), (1, 8));
        let e6 = build_root_system(RootType::E6).unwrap();
        assert_eq!(e6.diagram().leaves(), vec![1, 2, 6]);
        let b4 = build_root_system(RootType::B(4)).unwrap();
        assert_eq!(b4.diagram().bond(3, 4), 4);
        assert_eq!(b4.diagram().bond(1, 2), 3);
        assert_eq!(b4.diagram().bond(1, 3), 2);
        let g2 = build_root_system(RootType::G2).unwrap();
        assert_eq!(g2.diagram().bond(1, 2), 6);
    }

    #[test]
    fn coroot_lookup_roundtrip() {
        let rs = build_root_system(RootType::F4).unwrap();
        for r in rs.roots() {
            let back = rs.root_by_coroot(&r.coroot).unwrap();
            assert_eq!(back, r);
        }
    }
}
