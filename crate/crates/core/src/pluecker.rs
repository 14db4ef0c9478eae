//! Plücker embedding of generators, the Plücker relations and the linear
//! isotropy constraints cutting the Lagrangian Grassmannian out of the
//! Grassmannian.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{check_n, Error, Result};
use crate::gf2::{word_det, BinMat, BinVec};
use crate::par;
use crate::pauli::{Generator, MAX_ENUM_QUBITS};

/// A sorted subset of `{1, …, n_ambient}`, keyed by `Σ 2^(j-1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetIndex {
    n_ambient: u8,
    key: u32,
}

impl SubsetIndex {
    pub fn new(n_ambient: usize, members: &[usize]) -> Result<Self> {
        if n_ambient > 31 {
            return Err(Error::IndexOutOfRange {
                index: n_ambient,
                bound: 31,
            });
        }
        let mut key = 0u32;
        let mut prev = 0;
        for &m in members {
            if m == 0 || m > n_ambient {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    bound: n_ambient,
                });
            }
            if m <= prev {
                return Err(Error::InvalidPoint {
                    input: format!("{members:?}"),
                    reason: "subset members must be strictly increasing".into(),
                });
            }
            prev = m;
            key |= 1 << (m - 1);
        }
        Ok(SubsetIndex {
            n_ambient: n_ambient as u8,
            key,
        })
    }

    pub fn from_key(n_ambient: usize, key: u32) -> Self {
        debug_assert!(n_ambient <= 31 && key >> n_ambient == 0);
        SubsetIndex {
            n_ambient: n_ambient as u8,
            key,
        }
    }

    pub fn key(&self) -> u32 {
        self.key
    }

    pub fn n_ambient(&self) -> usize {
        self.n_ambient as usize
    }

    pub fn len(&self) -> usize {
        self.key.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.key == 0
    }

    pub fn contains(&self, j: usize) -> bool {
        j >= 1 && j <= self.n_ambient() && self.key >> (j - 1) & 1 == 1
    }

    /// 1-based members, ascending.
    pub fn members(&self) -> Vec<usize> {
        (1..=self.n_ambient())
            .filter(|&j| self.contains(j))
            .collect()
    }

    fn columns(&self) -> Vec<usize> {
        self.members().into_iter().map(|j| j - 1).collect()
    }
}

impl fmt::Display for SubsetIndex {
    /// `p136`, or `p{1,2,10}` once two-digit indices occur.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.members();
        if self.n_ambient() <= 9 {
            f.write_str("p")?;
            for j in m {
                write!(f, "{j}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = m.iter().map(usize::to_string).collect();
            write!(f, "p{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Debug for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coordinate layout of `∧^N K^{2N}`: all N-subsets of `{1..2N}` by key.
pub struct PlueckerLayout {
    n: usize,
    subsets: Vec<SubsetIndex>,
    columns: Vec<Vec<usize>>,
    position: Vec<u32>,
    constraints: OnceLock<Vec<LinearConstraint>>,
}

impl PlueckerLayout {
    fn build(n: usize) -> Self {
        let width = 2 * n;
        let mut position = vec![u32::MAX; 1 << width];
        let subsets: Vec<SubsetIndex> = (0u32..1 << width)
            .filter(|k| k.count_ones() as usize == n)
            .map(|k| SubsetIndex::from_key(width, k))
            .collect();
        for (i, s) in subsets.iter().enumerate() {
            position[s.key as usize] = i as u32;
        }
        let columns = subsets.iter().map(SubsetIndex::columns).collect();
        PlueckerLayout {
            n,
            subsets,
            columns,
            position,
            constraints: OnceLock::new(),
        }
    }

    /// Shared layout for `1 <= n <= 5`.
    pub fn get(n: usize) -> &'static PlueckerLayout {
        static LAYOUTS: [OnceLock<PlueckerLayout>; MAX_ENUM_QUBITS + 1] =
            [const { OnceLock::new() }; MAX_ENUM_QUBITS + 1];
        assert!(
            (1..=MAX_ENUM_QUBITS).contains(&n),
            "no Plücker layout for N = {n}"
        );
        LAYOUTS[n].get_or_init(|| PlueckerLayout::build(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[SubsetIndex] {
        &self.subsets
    }

    pub fn position(&self, s: &SubsetIndex) -> Option<usize> {
        if s.n_ambient() != 2 * self.n {
            return None;
        }
        match self.position[s.key as usize] {
            u32::MAX => None,
            p => Some(p as usize),
        }
    }
}

/// Plücker coordinates of an N-plane, indexed in ascending subset key order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PlueckerVec {
    n: usize,
    coords: BinVec,
}

impl PlueckerVec {
    pub fn new(n: usize, coords: BinVec) -> Result<Self> {
        check_n("PlueckerVec", n, 1, MAX_ENUM_QUBITS)?;
        let len = PlueckerLayout::get(n).len();
        if coords.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: coords.len(),
            });
        }
        Ok(PlueckerVec { n, coords })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &BinVec {
        &self.coords
    }

    pub fn layout(&self) -> &'static PlueckerLayout {
        PlueckerLayout::get(self.n)
    }

    /// Coordinate at `s`; panics if `s` is not an N-subset of `{1..2N}`.
    pub fn get(&self, s: &SubsetIndex) -> bool {
        let pos = self
            .layout()
            .position(s)
            .unwrap_or_else(|| panic!("{s} is not a coordinate for N = {}", self.n));
        self.coords.get(pos)
    }

    pub fn support(&self) -> Vec<SubsetIndex> {
        let subsets = self.layout().subsets();
        self.coords.ones().map(|i| subsets[i]).collect()
    }
}

/// Plücker vector of a generator: the coordinate at `S` is the maximal
/// minor of the canonical basis on the columns in `S`. Any two bases differ
/// by an invertible matrix of determinant 1, so the vector depends on the
/// subspace only.
pub fn embed(g: &Generator) -> PlueckerVec {
    let n = g.n_qubits();
    let layout = PlueckerLayout::get(n);
    let rows: Vec<u64> = g.basis().rows().iter().map(BinVec::to_u64).collect();
    let coords = BinVec::from_bools(layout.columns.iter().map(|cols| {
        let mut packed = [0u64; MAX_ENUM_QUBITS];
        for (dst, &row) in packed.iter_mut().zip(&rows) {
            *dst = cols
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &c)| acc | (row >> c & 1) << j);
        }
        word_det(&mut packed[..n], n)
    }));
    PlueckerVec { n, coords }
}

/// A quadratic relation: sum of products of two coordinates, zero on the
/// Grassmannian.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlueckerRelation {
    terms: Vec<(SubsetIndex, SubsetIndex)>,
}

impl PlueckerRelation {
    pub fn terms(&self) -> &[(SubsetIndex, SubsetIndex)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, v: &PlueckerVec) -> bool {
        self.terms
            .iter()
            .filter(|(a, b)| v.get(a) && v.get(b))
            .count()
            % 2
            == 1
    }
}

impl fmt::Display for PlueckerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if a == b {
                write!(f, "{a}^2")?;
            } else {
                write!(f, "{a}*{b}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PlueckerRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn subsets_of_size(m: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << m).filter(move |s| s.count_ones() as usize == k)
}

/// All distinct Plücker relations over GF(2), sorted.
///
/// For every `(N-1)`-subset `i` and `(N+1)`-subset `j` the relation
/// `Σ_a p_{i ∪ j_a} p_{j \ j_a}` is formed; terms with `j_a ∈ i` vanish, signs
/// drop out, repeated monomials cancel in pairs, and empty or duplicate
/// relations are discarded.
pub fn all_pluecker_relations(n: usize) -> Result<Vec<PlueckerRelation>> {
    check_n("all_pluecker_relations", n, 2, MAX_ENUM_QUBITS)?;
    let width = 2 * n;
    let lows: Vec<u32> = subsets_of_size(width, n - 1).collect();
    let all: Vec<PlueckerRelation> = par::flat_map(&lows, |&i| {
        subsets_of_size(width, n + 1)
            .filter_map(|j| {
                let mut monomials = BTreeSet::new();
                for a in 0..width {
                    let bit = 1u32 << a;
                    if j & bit == 0 || i & bit != 0 {
                        continue;
                    }
                    let x = SubsetIndex::from_key(width, i | bit);
                    let y = SubsetIndex::from_key(width, j & !bit);
                    let pair = if x <= y { (x, y) } else { (y, x) };
                    if !monomials.remove(&pair) {
                        monomials.insert(pair);
                    }
                }
                (!monomials.is_empty()).then(|| PlueckerRelation {
                    terms: monomials.into_iter().collect(),
                })
            })
            .collect()
    });
    let distinct: BTreeSet<PlueckerRelation> = all.into_iter().collect();
    Ok(distinct.into_iter().collect())
}

/// A linearly independent subset of [`all_pluecker_relations`] spanning the
/// same space of quadrics. Relations are taken greedily, shortest first
/// (ties in sorted order), and skipped when already in the span of those
/// kept. For `N = 3` this keeps 30 three-term and 5 four-term relations.
pub fn pluecker_relations(n: usize) -> Result<Vec<PlueckerRelation>> {
    let mut all = all_pluecker_relations(n)?;
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut basis = SparseEchelon::new(PlueckerLayout::get(n));
    Ok(all.into_iter().filter(|r| basis.insert(r)).collect())
}

/// Incremental row echelon form over sparse GF(2) vectors of monomials.
struct SparseEchelon {
    layout: &'static PlueckerLayout,
    rows: HashMap<u32, Vec<u32>>,
}

impl SparseEchelon {
    fn new(layout: &'static PlueckerLayout) -> Self {
        SparseEchelon {
            layout,
            rows: HashMap::new(),
        }
    }

    fn monomial(&self, (a, b): &(SubsetIndex, SubsetIndex)) -> u32 {
        let pos = |s: &SubsetIndex| {
            self.layout
                .position(s)
                .expect("relation term is a coordinate") as u32
        };
        pos(a) * self.layout.len() as u32 + pos(b)
    }

    /// Adds `r` unless it is in the span already; returns whether it was added.
    fn insert(&mut self, r: &PlueckerRelation) -> bool {
        let mut v: Vec<u32> = r.terms.iter().map(|t| self.monomial(t)).collect();
        v.sort_unstable();
        while let Some(&lead) = v.last() {
            match self.rows.get(&lead) {
                Some(row) => v = xor_sorted(&v, row),
                None => {
                    self.rows.insert(lead, v);
                    return true;
                }
            }
        }
        false
    }
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A linear relation `Σ p_S = 0` among Plücker coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearConstraint {
    terms: Vec<SubsetIndex>,
}

impl LinearConstraint {
    pub fn terms(&self) -> &[SubsetIndex] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, v: &PlueckerVec) -> bool {
        self.terms.iter().filter(|s| v.get(s)).count() % 2 == 1
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [a, b] = self.terms.as_slice() {
            return write!(f, "{a} = {b}");
        }
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "{} = 0", parts.join(" + "))
    }
}

impl fmt::Debug for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Linear conditions for an N-plane to be totally isotropic: contracting
/// with the symplectic form gives, for every `(N-2)`-subset `K`,
/// `Σ_i p_{K ∪ {i, N+i}} = 0` over the `i` with `i, N+i ∉ K`.
/// Listed by ascending key of `K`.
pub fn lagrangian_constraints(n: usize) -> Result<Vec<LinearConstraint>> {
    check_n("lagrangian_constraints", n, 2, MAX_ENUM_QUBITS)?;
    let width = 2 * n;
    Ok(subsets_of_size(width, n - 2)
        .filter_map(|k| {
            let terms: Vec<SubsetIndex> = (0..n)
                .map(|i| (1u32 << i) | (1u32 << (n + i)))
                .filter(|pair| k & pair == 0)
                .map(|pair| SubsetIndex::from_key(width, k | pair))
                .collect();
            (terms.len() >= 2).then_some(LinearConstraint { terms })
        })
        .collect())
}

/// Rank over GF(2) of the isotropy constraints.
pub fn constraint_rank(n: usize) -> Result<usize> {
    let layout = PlueckerLayout::get(n);
    let rows = lagrangian_constraints(n)?
        .iter()
        .map(|c| {
            let mut v = BinVec::zeros(layout.len());
            for s in c.terms() {
                v.flip(layout.position(s).expect("constraint term is a coordinate"));
            }
            v
        })
        .collect();
    Ok(BinMat::from_rows(layout.len(), rows).rank())
}

/// Coordinates occurring in some isotropy constraint.
pub fn eliminated_indices(n: usize) -> Result<BTreeSet<SubsetIndex>> {
    Ok(lagrangian_constraints(n)?
        .into_iter()
        .flat_map(|c| c.terms)
        .collect())
}

/// Coordinates free of every isotropy constraint (the principal minors).
pub fn retained_indices(n: usize) -> Result<Vec<SubsetIndex>> {
    let gone = eliminated_indices(n)?;
    Ok(PlueckerLayout::get(n)
        .subsets()
        .iter()
        .filter(|s| !gone.contains(s))
        .copied()
        .collect())
}

/// First isotropy constraint violated by `v`, if any.
pub fn first_violated(v: &PlueckerVec) -> Option<LinearConstraint> {
    if v.n < 2 {
        return None;
    }
    let cached = v
        .layout()
        .constraints
        .get_or_init(|| lagrangian_constraints(v.n).expect("N checked above"));
    cached.iter().find(|c| c.eval(v)).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{enumerate_generators, generator_from_operators, parse_label};

    fn s(n_ambient: usize, m: &[usize]) -> SubsetIndex {
        SubsetIndex::new(n_ambient, m).unwrap()
    }

    fn gen(labels: &[&str]) -> Generator {
        let ops: Vec<_> = labels.iter().map(|l| parse_label(l).unwrap()).collect();
        generator_from_operators(&ops).unwrap()
    }

    #[test]
    fn subset_index_basics() {
        let x = s(6, &[1, 3, 6]);
        assert_eq!(x.key(), 0b100101);
        assert_eq!(x.to_string(), "p136");
        assert_eq!(x.members(), vec![1, 3, 6]);
        assert!(SubsetIndex::new(6, &[3, 1]).is_err());
        assert!(SubsetIndex::new(6, &[7]).is_err());
        assert_eq!(s(10, &[1, 2, 10]).to_string(), "p{1,2,10}");
        assert!(s(4, &[1, 2]) < s(4, &[1, 3]));
        assert!(s(4, &[2, 3]) < s(4, &[1, 4]));
    }

    #[test]
    fn embed_examples() {
        let std = gen(&["ZI", "IZ"]);
        assert_eq!(embed(&std).support(), vec![s(4, &[1, 2])]);
        let a = gen(&["XI", "IX"]);
        assert_eq!(embed(&a).support(), vec![s(4, &[3, 4])]);
        let b = embed(&gen(&["ZZI", "XXI", "IIX"]));
        assert!(b.get(&s(6, &[1, 5, 6])));
        assert!(b.get(&s(6, &[2, 4, 6])));
        assert!(b.get(&s(6, &[1, 4, 6])));
        let std3 = gen(&["ZII", "IZI", "IIZ"]);
        assert_eq!(embed(&std3).support(), vec![s(6, &[1, 2, 3])]);
    }

    #[test]
    fn single_relation_for_two_qubits() {
        let rels = pluecker_relations(2).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].to_string(), "p12*p34 + p13*p24 + p23*p14");
        assert_eq!(all_pluecker_relations(2).unwrap(), rels);
    }

    #[test]
    fn three_qubit_relation_counts() {
        let rels = pluecker_relations(3).unwrap();
        let three = rels.iter().filter(|r| r.len() == 3).count();
        let four = rels.iter().filter(|r| r.len() == 4).count();
        assert_eq!((three, four, rels.len()), (30, 5, 35));
        let all = all_pluecker_relations(3).unwrap();
        assert_eq!(all.iter().filter(|r| r.len() == 3).count(), 30);
        assert_eq!(all.iter().filter(|r| r.len() == 4).count(), 15);
        for r in &rels {
            assert!(all.contains(r));
        }
        // the first listed relation: p123 p145 + p124 p135 + p125 p134
        let first = PlueckerRelation {
            terms: vec![
                (s(6, &[1, 2, 3]), s(6, &[1, 4, 5])),
                (s(6, &[1, 2, 4]), s(6, &[1, 3, 5])),
                (s(6, &[1, 3, 4]), s(6, &[1, 2, 5])),
            ],
        };
        assert!(rels.contains(&first));
    }

    #[test]
    fn constraint_lists() {
        let c2 = lagrangian_constraints(2).unwrap();
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[0].to_string(), "p13 = p24");

        let c3: BTreeSet<String> = lagrangian_constraints(3)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        let expected: BTreeSet<String> = [
            "p125 = p136",
            "p134 = p235",
            "p124 = p236",
            "p245 = p346",
            "p146 = p256",
            "p145 = p356",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(c3, expected);

        let c4 = lagrangian_constraints(4).unwrap();
        assert_eq!(c4.iter().filter(|c| c.len() == 2).count(), 24);
        let triples: Vec<&LinearConstraint> = c4.iter().filter(|c| c.len() == 3).collect();
        assert_eq!(triples.len(), 4);
        let listed = [
            vec![
                s(8, &[1, 2, 5, 6]),
                s(8, &[1, 3, 5, 7]),
                s(8, &[1, 4, 5, 8]),
            ],
            vec![
                s(8, &[1, 2, 5, 6]),
                s(8, &[2, 3, 6, 7]),
                s(8, &[2, 4, 6, 8]),
            ],
            vec![
                s(8, &[1, 3, 5, 7]),
                s(8, &[2, 3, 6, 7]),
                s(8, &[3, 4, 7, 8]),
            ],
        ];
        for t in &listed {
            assert!(triples.iter().any(|c| c.terms() == t.as_slice()), "{t:?}");
        }
        let c4s: BTreeSet<String> = c4.iter().map(ToString::to_string).collect();
        for pair in [
            "p1345 = p2346",
            "p1237 = p1248",
            "p3567 = p4568",
            "p2357 = p2458",
            "p1367 = p1468",
        ] {
            assert!(c4s.contains(pair), "{pair}");
        }
    }

    #[test]
    fn constraint_ranks() {
        assert_eq!(constraint_rank(2).unwrap(), 1);
        assert_eq!(constraint_rank(3).unwrap(), 6);
        assert_eq!(constraint_rank(4).unwrap(), 27);
    }

    #[test]
    fn eliminated_and_retained() {
        let gone: Vec<String> = eliminated_indices(2)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(gone, ["p13", "p24"]);
        let kept: Vec<String> = retained_indices(2)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(kept, ["p12", "p23", "p14", "p34"]);
        let gone3 = eliminated_indices(3).unwrap();
        assert_eq!(gone3.len(), 12);
        for m in [
            [1, 3, 6],
            [2, 3, 6],
            [2, 3, 5],
            [3, 5, 6],
            [2, 5, 6],
            [3, 4, 6],
        ] {
            assert!(gone3.contains(&s(6, &m)));
        }
        assert_eq!(eliminated_indices(4).unwrap().len(), 54);
        for n in 2..=5 {
            assert_eq!(retained_indices(n).unwrap().len(), 1 << n);
        }
    }

    #[test]
    fn embedded_generators_satisfy_everything() {
        for n in 2..=3 {
            let rels = pluecker_relations(n).unwrap();
            let cons = lagrangian_constraints(n).unwrap();
            for g in enumerate_generators(n).unwrap() {
                let v = embed(&g);
                assert!(!v.coords().is_zero());
                assert!(rels.iter().all(|r| !r.eval(&v)), "{g:?}");
                assert!(cons.iter().all(|c| !c.eval(&v)), "{g:?}");
            }
        }
    }

    #[test]
    fn n_out_of_range() {
        assert!(matches!(
            pluecker_relations(1),
            Err(Error::UnsupportedN { .. })
        ));
        assert!(matches!(
            lagrangian_constraints(6),
            Err(Error::UnsupportedN { .. })
        ));
    }
}
