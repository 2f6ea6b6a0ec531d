//! Bit-vector model of the even signed-permutation groups.
//!
//! The reflection group attached to a fork diagram of rank n is realized here
//! as V ⋊ S_n with V = F_2^(n-1): the permutation part shuffles coordinate
//! labels and the vector part records sign flips in the quotient of the full
//! sign group by its diagonal. This form makes the middle-node subgroup pair
//! (parabolic P and its doubled normalizer Q) and the character bookkeeping
//! behind their multiplicity-free verdicts cheap to compute for ranks the
//! matrix representation handles slowly.

use num_rational::{Ratio, Rational64};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::classfun::{induce_fn, inner_product, permutation_character, ClassFunction};
use crate::error::{Error, Result};
use crate::groupcore::{
    coset_action, normalizer, ConjClasses, FiniteGroup, GroupOps, Subgroup, DEFAULT_DEGREE_CAP,
};
use crate::rootsys::RootType;
use crate::scheme::Scheme;
use crate::weyl_affine::WeylGroup;

/// Largest rank the convenience constructor will enumerate.
pub const DN_MODEL_MAX_RANK: usize = 7;

/// One group element: permutation images (0-based, slots at and past n are
/// fixed points) and the sign vector, bit j standing for the j+1-st basis
/// vector of V.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DnElem {
    pub s: [u8; 8],
    pub v: u16,
}

/// Multiplication context: everything depends on the rank n.
#[derive(Clone, Copy, Debug)]
pub struct DnOps {
    n: usize,
}

const IDENTITY_IMAGES: [u8; 8] = [0, 1, 2, 3, 4, 5, 6, 7];

impl DnOps {
    pub fn new(n: usize) -> Result<DnOps> {
        if n < 4 || n > 8 {
            return Err(Error::InvalidRank {
                family: 'D',
                rank: n,
            });
        }
        Ok(DnOps { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> DnElem {
        DnElem {
            s: IDENTITY_IMAGES,
            v: 0,
        }
    }

    /// Right action of a permutation on the sign part, extended linearly from
    /// its values on basis vectors: with ℓ the last label, basis bit i goes to
    /// bit iσ when ℓσ = ℓ, to bit ℓσ when iσ = ℓ, and to the two bits iσ, ℓσ
    /// otherwise.
    pub fn act(&self, v: u16, s: &[u8; 8]) -> u16 {
        let last = self.n - 1;
        let sn = s[last] as usize;
        let mut out = 0u16;
        let mut rest = v;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let si = s[i] as usize;
            if sn == last {
                out ^= 1 << si;
            } else if si == last {
                out ^= 1 << sn;
            } else {
                out ^= (1 << si) | (1 << sn);
            }
        }
        out
    }

    /// Element with a pure permutation part, images given 0-based.
    pub fn from_images(&self, images: &[usize]) -> Result<DnElem> {
        if images.len() != self.n {
            return Err(Error::invariant("image list length differs from rank"));
        }
        let mut s = IDENTITY_IMAGES;
        let mut seen = [false; 8];
        for (i, &im) in images.iter().enumerate() {
            if im >= self.n || seen[im] {
                return Err(Error::invariant("images are not a permutation"));
            }
            seen[im] = true;
            s[i] = im as u8;
        }
        Ok(DnElem { s, v: 0 })
    }

    /// Pure sign element.
    pub fn from_sign(&self, mask: u16) -> Result<DnElem> {
        if mask >> (self.n - 1) != 0 {
            return Err(Error::invariant("sign mask has bits past the rank"));
        }
        Ok(DnElem {
            s: IDENTITY_IMAGES,
            v: mask,
        })
    }

    /// Transposition of two 0-based labels.
    pub fn transposition(&self, a: usize, b: usize) -> Result<DnElem> {
        if a >= self.n || b >= self.n || a == b {
            return Err(Error::invariant("bad transposition labels"));
        }
        let mut s = IDENTITY_IMAGES;
        s.swap(a, b);
        Ok(DnElem { s, v: 0 })
    }
}

impl GroupOps<DnElem> for DnOps {
    fn mul(&self, a: &DnElem, b: &DnElem) -> DnElem {
        let mut s = [0u8; 8];
        for i in 0..8 {
            s[i] = b.s[a.s[i] as usize];
        }
        DnElem {
            s,
            v: self.act(a.v, &b.s) ^ b.v,
        }
    }

    fn inv(&self, a: &DnElem) -> DnElem {
        let mut s = [0u8; 8];
        for i in 0..8 {
            s[a.s[i] as usize] = i as u8;
        }
        let v = self.act(a.v, &s);
        DnElem { s, v }
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The fully enumerated model group.
pub struct DnModel {
    ops: DnOps,
    group: FiniteGroup<DnElem, DnOps>,
}

impl DnModel {
    pub fn build(n: usize) -> Result<DnModel> {
        DnModel::with_max_rank(n, DN_MODEL_MAX_RANK)
    }

    pub fn with_max_rank(n: usize, max_rank: usize) -> Result<DnModel> {
        let ops = DnOps::new(n)?;
        if n > max_rank {
            return Err(Error::unsupported(format!(
                "model rank {n} past the enumeration limit {max_rank}"
            )));
        }
        let mut gens = Vec::new();
        for j in 0..n - 1 {
            gens.push(ops.transposition(j, j + 1)?);
        }
        for j in 0..n - 1 {
            gens.push(ops.from_sign(1 << j)?);
        }
        let expected = (1u64 << (n - 1)) * factorial(n);
        let group = FiniteGroup::generate(ops, ops.identity(), &gens, expected as usize + 1)?;
        if group.order() as u64 != expected {
            return Err(Error::invariant(format!(
                "model order {} differs from 2^(n-1) n! = {}",
                group.order(),
                expected
            )));
        }
        let model = DnModel { ops, group };
        model.check_action_compatibility()?;
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.ops.n
    }

    pub fn ops(&self) -> DnOps {
        self.ops
    }

    pub fn group(&self) -> &FiniteGroup<DnElem, DnOps> {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order() as u64
    }

    fn index_of(&self, e: &DnElem) -> Result<u32> {
        self.group
            .index_of(e)
            .ok_or_else(|| Error::invariant("element missing from the enumerated model"))
    }

    /// The sign action must compose: acting by a then b equals acting by ab.
    /// Checked on pseudo-random triples so a convention slip in either the
    /// action or the multiplication cannot survive construction.
    fn check_action_compatibility(&self) -> Result<()> {
        let order = self.group.order() as u64;
        let mask = (1u16 << (self.ops.n - 1)) - 1;
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..256 {
            let a = (next() % order) as u32;
            let b = (next() % order) as u32;
            let v = (next() as u16) & mask;
            let ea = self.group.element(a);
            let eb = self.group.element(b);
            let ab = self.ops.mul(ea, eb);
            let stepped = self.ops.act(self.ops.act(v, &ea.s), &eb.s);
            let direct = self.ops.act(v, &ab.s);
            if stepped != direct {
                return Err(Error::invariant(
                    "sign action is not composition-compatible",
                ));
            }
        }
        Ok(())
    }

    /// The parabolic P fixing the k-th node and its sign-extended normalizer
    /// Q, built from generators and cross-checked against the generic
    /// normalizer scan.
    pub fn pair(&self, k: usize) -> Result<DnPair<'_>> {
        let n = self.ops.n;
        if !(2 * k > n && k + 1 < n) {
            return Err(Error::unsupported(format!(
                "node {k} of rank {n} is outside n/2 < k < n-1; the plain parabolic \
                 classification already settles that range"
            )));
        }
        let mut p_gens = Vec::new();
        for j in 1..k {
            p_gens.push(self.index_of(&self.ops.transposition(j - 1, j)?)?);
        }
        for j in k + 1..n {
            p_gens.push(self.index_of(&self.ops.transposition(j - 1, j)?)?);
        }
        for j in k..n - 1 {
            p_gens.push(self.index_of(&self.ops.from_sign(1 << j)?)?);
        }
        let p = Subgroup::generate(&self.group, &p_gens);
        let expected_p = factorial(k) * (1u64 << (n - k - 1)) * factorial(n - k);
        if p.order() as u64 != expected_p {
            return Err(Error::invariant(format!(
                "parabolic order {} differs from k! 2^(n-k-1) (n-k)! = {}",
                p.order(),
                expected_p
            )));
        }
        let mut q_gens = p_gens.clone();
        let diag = self.index_of(&self.ops.from_sign(((1u32 << k) - 1) as u16)?)?;
        q_gens.push(diag);
        let q = Subgroup::generate(&self.group, &q_gens);
        if q.order() != 2 * p.order() {
            return Err(Error::invariant("extended subgroup is not twice the parabolic"));
        }
        let scan = normalizer(&self.group, &p)?;
        if scan.elements() != q.elements() {
            return Err(Error::invariant(
                "generated extension differs from the normalizer scan",
            ));
        }
        Ok(DnPair {
            model: self,
            k,
            p,
            q,
        })
    }
}

/// The subgroup pair at a marked middle node.
pub struct DnPair<'a> {
    model: &'a DnModel,
    k: usize,
    p: Subgroup,
    q: Subgroup,
}

/// Predicted verdict for the doubled normalizer at a middle node.
pub fn q_verdict_expected(n: usize, k: usize) -> bool {
    n % 2 == 1 || (n % 4 == 0 && k == n / 2 + 1)
}

/// Predicted verdict for the plain parabolic.
pub fn p_verdict_expected(n: usize, k: usize) -> bool {
    2 * k <= n || k >= n - 1
}

impl<'a> DnPair<'a> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> &Subgroup {
        &self.p
    }

    pub fn q(&self) -> &Subgroup {
        &self.q
    }

    /// Block test for the inertia subgroup of the i-th sign character: the
    /// permutation part must preserve {1..2i}, {2i+1..k} and {k+1..n}.
    fn preserves_blocks(e: &DnElem, i2: usize, k: usize, n: usize) -> bool {
        e.s[..n].iter().enumerate().all(|(a, &b)| {
            let b = b as usize;
            (a < i2) == (b < i2) && (a < k) == (b < k)
        })
    }

    /// Value of the extended sign character on an element of its inertia
    /// subgroup: parity of the first 2i sign bits, independent of the
    /// permutation part.
    fn nu_value(e: &DnElem, i2: usize) -> Rational64 {
        let mask = ((1u32 << i2) - 1) as u16;
        if (e.v & mask).count_ones() % 2 == 0 {
            Rational64::from_integer(1)
        } else {
            Rational64::from_integer(-1)
        }
    }

    fn inertia_order(&self, i: usize) -> u64 {
        let n = self.model.ops.n;
        let k = self.k;
        (1u64 << (n - 1)) * factorial(2 * i) * factorial(k - 2 * i) * factorial(n - k)
    }

    /// The class function induced from the i-th extended sign character all
    /// the way up to the whole group.
    pub fn chi_w(&self, i: usize, classes: &ConjClasses) -> Result<ClassFunction> {
        let n = self.model.ops.n;
        let k = self.k;
        if 2 * i > k {
            return Err(Error::invariant("character index past k/2"));
        }
        let i2 = 2 * i;
        let group = &self.model.group;
        induce_fn(group, classes, self.inertia_order(i), |g| {
            let e = group.element(g);
            if DnPair::preserves_blocks(e, i2, k, n) {
                Some(DnPair::nu_value(e, i2))
            } else {
                None
            }
        })
    }
}

/// Everything the middle-node verdict rests on, in one record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DnReport {
    pub n: usize,
    pub k: usize,
    pub group_order: u64,
    pub parabolic_order: u64,
    pub normalizer_order: u64,
    pub degree: usize,
    pub scheme_rank: usize,
    pub q_gelfand: bool,
    pub q_predicted: bool,
    pub p_gelfand: bool,
    pub p_predicted: bool,
    pub agrees: bool,
    /// pairings[i][j] = inner product of the i-th and j-th induced characters.
    pub pairings: Vec<Vec<i64>>,
    /// Positivity exactly on the diagonal and the anti-diagonal 2i+2j = n.
    pub pairing_pattern_ok: bool,
    pub sum_matches_coset_character: bool,
    pub vq_self_pairings_one: bool,
    pub witness: Option<(usize, usize)>,
    pub witness_value: Option<i64>,
}

fn as_integer(r: Ratio<i128>) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::invariant("inner product is not an integer"));
    }
    i64::try_from(r.to_integer()).map_err(|_| Error::invariant("inner product overflows"))
}

/// Full verdict for one middle node: scheme commutativity on both coset
/// spaces, the induced-character pairing table with its positivity pattern,
/// irreducibility of each constituent over the sign-extended Levi, and the
/// witness pair in the negative cases.
pub fn verify_dn_theorem(n: usize, k: usize) -> Result<DnReport> {
    let model = DnModel::build(n)?;
    let pair = model.pair(k)?;
    let group = model.group();

    let q_act = coset_action(group, pair.q(), group.generator_indices(), DEFAULT_DEGREE_CAP)?;
    let q_scheme = Scheme::from_action(&q_act.gen_perms, q_act.space.len())?;
    let p_act = coset_action(group, pair.p(), group.generator_indices(), DEFAULT_DEGREE_CAP)?;
    let p_scheme = Scheme::from_action(&p_act.gen_perms, p_act.space.len())?;

    let q_gelfand = q_scheme.is_commutative();
    let p_gelfand = p_scheme.is_commutative();
    let q_predicted = q_verdict_expected(n, k);
    let p_predicted = p_verdict_expected(n, k);

    let classes = group.conjugacy_classes();
    let top = k / 2;
    let mut chis = Vec::with_capacity(top + 1);
    for i in 0..=top {
        chis.push(pair.chi_w(i, &classes)?);
    }

    let coset_char = permutation_character(group, pair.q(), &classes);
    let mut sum = ClassFunction::constant(classes.len(), Rational64::zero());
    for chi in &chis {
        for (acc, v) in sum.values.iter_mut().zip(chi.values.iter()) {
            *acc += *v;
        }
    }
    let sum_matches = sum.values == coset_char.values;

    let order = group.order() as u64;
    let mut pairings = vec![vec![0i64; top + 1]; top + 1];
    let mut pattern_ok = true;
    for i in 0..=top {
        for j in 0..=top {
            let val = as_integer(inner_product(&classes, order, &chis[i], &chis[j]))?;
            pairings[i][j] = val;
            let expected_positive = i == j || 2 * i + 2 * j == n;
            if (val > 0) != expected_positive || val < 0 {
                pattern_ok = false;
            }
        }
    }

    let total: i64 = pairings.iter().flatten().sum();
    let self_pair = as_integer(inner_product(&classes, order, &coset_char, &coset_char))?;
    if total != self_pair {
        return Err(Error::invariant(
            "pairing table does not add up to the coset character norm",
        ));
    }

    let vq_self_pairings_one = vq_irreducibility(&model, k)?;

    let (witness, witness_value) = if q_predicted {
        (None, None)
    } else {
        let j = k / 2;
        let i = n / 2 - j;
        (Some((i, j)), Some(pairings[i][j]))
    };

    let agrees = q_gelfand == q_predicted && p_gelfand == p_predicted;
    Ok(DnReport {
        n,
        k,
        group_order: model.order(),
        parabolic_order: pair.p().order() as u64,
        normalizer_order: pair.q().order() as u64,
        degree: q_scheme.degree(),
        scheme_rank: q_scheme.rank(),
        q_gelfand,
        q_predicted,
        p_gelfand,
        p_predicted,
        agrees,
        pairings,
        pairing_pattern_ok: pattern_ok,
        sum_matches_coset_character: sum_matches,
        vq_self_pairings_one,
        witness,
        witness_value,
    })
}

/// Each induced constituent must have norm one over the sign-extended Levi
/// V ⋊ (S_k × S_{n-k}), which is enumerated standalone so its own conjugacy
/// classes are available.
fn vq_irreducibility(model: &DnModel, k: usize) -> Result<bool> {
    let n = model.n();
    let ops = model.ops();
    let mut gens = Vec::new();
    for j in 1..k {
        gens.push(ops.transposition(j - 1, j)?);
    }
    for j in k + 1..n {
        gens.push(ops.transposition(j - 1, j)?);
    }
    for j in 0..n - 1 {
        gens.push(ops.from_sign(1 << j)?);
    }
    let expected = (1u64 << (n - 1)) * factorial(k) * factorial(n - k);
    let vq = FiniteGroup::generate(ops, ops.identity(), &gens, expected as usize + 1)?;
    if vq.order() as u64 != expected {
        return Err(Error::invariant("sign-extended Levi has unexpected order"));
    }
    let classes = vq.conjugacy_classes();
    for i in 0..=k / 2 {
        let i2 = 2 * i;
        let m_order = (1u64 << (n - 1)) * factorial(i2) * factorial(k - i2) * factorial(n - k);
        let chi = induce_fn(&vq, &classes, m_order, |g| {
            let e = vq.element(g);
            if DnPair::preserves_blocks(e, i2, k, n) {
                Some(DnPair::nu_value(e, i2))
            } else {
                None
            }
        })?;
        let norm = inner_product(&classes, vq.order() as u64, &chi, &chi);
        if norm != Ratio::from_integer(1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scheme data from the bit-vector model against the same data from the
/// reflection-matrix construction of the identical rank and node.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelComparison {
    pub n: usize,
    pub k: usize,
    pub degree: usize,
    pub ranks_match: bool,
    pub suborbits_match: bool,
    pub verdicts_match: bool,
}

impl ModelComparison {
    pub fn all_match(&self) -> bool {
        self.ranks_match && self.suborbits_match && self.verdicts_match
    }
}

/// Cross-representation consistency: the two constructions of the same group
/// must induce identical scheme data on the normalizer coset space.
pub fn compare_with_reflection_model(n: usize, k: usize) -> Result<ModelComparison> {
    let model = DnModel::build(n)?;
    let pair = model.pair(k)?;
    let group = model.group();
    let act = coset_action(group, pair.q(), group.generator_indices(), DEFAULT_DEGREE_CAP)?;
    let model_scheme = Scheme::from_action(&act.gen_perms, act.space.len())?;

    let weyl = WeylGroup::new(RootType::D(n as u8))?;
    let node = weyl.node_data(k)?;
    let wg = weyl.group();
    let mat_act = coset_action(wg, &node.q, wg.generator_indices(), DEFAULT_DEGREE_CAP)?;
    let mat_scheme = Scheme::from_action(&mat_act.gen_perms, mat_act.space.len())?;

    Ok(ModelComparison {
        n,
        k,
        degree: model_scheme.degree(),
        ranks_match: model_scheme.rank() == mat_scheme.rank(),
        suborbits_match: model_scheme.suborbit_multiset() == mat_scheme.suborbit_multiset(),
        verdicts_match: model_scheme.is_commutative() == mat_scheme.is_commutative()
            && model_scheme.is_symmetric() == mat_scheme.is_symmetric(),
    })
}
