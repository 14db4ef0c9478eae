//! Binary symplectic encoding of N-qubit Pauli operators modulo phases, and
//! the generators (maximal totally isotropic subspaces) of W(2N-1, 2).
//!
//! A Pauli operator `A_1 ⊗ … ⊗ A_N` is the vector `(x_1, …, x_2N)` with the
//! letter on qubit `i` read from the pair `(x_i, x_{N+i})`:
//!
//! | letter | `(x_i, x_{N+i})` |
//! |--------|------------------|
//! | `I`    | `(0, 0)`         |
//! | `X`    | `(0, 1)`         |
//! | `Y`    | `(1, 1)`         |
//! | `Z`    | `(1, 0)`         |
//!
//! Two operators commute iff their symplectic product vanishes.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_n, Error, Result};
use crate::gf2::{BinMat, BinVec};
use crate::par;

/// Largest qubit count for which generators are enumerated.
pub const MAX_ENUM_QUBITS: usize = 5;

/// A non-identity N-qubit Pauli operator, signs quotiented out.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliPoint {
    n: usize,
    coords: BinVec,
}

impl PauliPoint {
    /// Fails on a wrong length or the zero vector (the identity operator).
    pub fn new(n: usize, coords: BinVec) -> Result<Self> {
        if coords.len() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: coords.len(),
            });
        }
        if coords.is_zero() {
            return Err(Error::InvalidLabel {
                label: "I".repeat(n),
                reason: "identity operator is excluded".into(),
            });
        }
        Ok(PauliPoint { n, coords })
    }

    pub(crate) fn from_coords_unchecked(n: usize, coords: BinVec) -> Self {
        debug_assert!(coords.len() == 2 * n && !coords.is_zero());
        PauliPoint { n, coords }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &BinVec {
        &self.coords
    }

    /// Letter on qubit `q` (0-based).
    pub fn letter(&self, q: usize) -> char {
        letter_for(self.coords.get(q), self.coords.get(q + self.n))
    }

    pub fn label(&self) -> String {
        (0..self.n).map(|q| self.letter(q)).collect()
    }

    /// `σ(a, b)`; `false` iff the operators commute.
    pub fn symplectic_product(&self, other: &PauliPoint) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::MixedQubitCounts {
                first: self.n,
                second: other.n,
            });
        }
        Ok(symplectic(&self.coords, &other.coords, self.n))
    }

    pub fn commutes_with(&self, other: &PauliPoint) -> Result<bool> {
        self.symplectic_product(other).map(|s| !s)
    }

    /// `x_1 x_{N+1} + … + x_N x_{2N}`; zero exactly for symmetric operators
    /// (an even number of `Y` letters).
    pub fn quad_form(&self) -> bool {
        (0..self.n)
            .filter(|&i| self.coords.get(i) && self.coords.get(i + self.n))
            .count()
            % 2
            == 1
    }

    /// All `4^N - 1` operators, in increasing coordinate order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliPoint> {
        (1u64..1 << (2 * n)).map(move |w| PauliPoint {
            n,
            coords: BinVec::from_u64(2 * n, w),
        })
    }
}

fn letter_for(x: bool, z: bool) -> char {
    match (x, z) {
        (false, false) => 'I',
        (false, true) => 'X',
        (true, true) => 'Y',
        (true, false) => 'Z',
    }
}

pub(crate) fn symplectic(a: &BinVec, b: &BinVec, n: usize) -> bool {
    (0..n)
        .filter(|&i| (a.get(i) && b.get(n + i)) != (a.get(n + i) && b.get(i)))
        .count()
        % 2
        == 1
}

/// Parses a label such as `IYZX`. A leading sign (`+`, `-`, `−`) is ignored.
pub fn parse_label(s: &str) -> Result<PauliPoint> {
    let err = |reason: &str| Error::InvalidLabel {
        label: s.to_string(),
        reason: reason.to_string(),
    };
    let body = s.strip_prefix(['+', '-', '−']).unwrap_or(s);
    if body.is_empty() {
        return Err(err("empty label"));
    }
    let letters: Vec<char> = body.chars().collect();
    let n = letters.len();
    let mut coords = BinVec::zeros(2 * n);
    for (q, &ch) in letters.iter().enumerate() {
        let (x, z) = match ch {
            'I' => (false, false),
            'X' => (false, true),
            'Y' => (true, true),
            'Z' => (true, false),
            _ => return Err(err(&format!("unexpected character {ch:?}"))),
        };
        coords.set(q, x);
        coords.set(q + n, z);
    }
    if coords.is_zero() {
        return Err(err("identity operator is excluded"));
    }
    Ok(PauliPoint { n, coords })
}

impl FromStr for PauliPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_label(s)
    }
}

impl fmt::Display for PauliPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for PauliPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliPoint({})", self.label())
    }
}

/// A maximal totally isotropic subspace of GF(2)^{2N}, i.e. a maximal set
/// of mutually commuting N-qubit Pauli operators.
///
/// The basis is kept in reduced row echelon form, so equality and ordering
/// are those of the subspace. Ordering is lexicographic on the flattened
/// canonical matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    n: usize,
    basis: BinMat,
}

impl Generator {
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Canonical (rref) basis, N x 2N.
    pub fn basis(&self) -> &BinMat {
        &self.basis
    }

    pub fn basis_operators(&self) -> Vec<PauliPoint> {
        self.basis
            .rows()
            .iter()
            .map(|r| PauliPoint::from_coords_unchecked(self.n, r.clone()))
            .collect()
    }

    /// Builds the generator spanned by `rows`, which must already be a
    /// totally isotropic set of rank N.
    pub(crate) fn from_spanning_rows(n: usize, rows: Vec<BinVec>) -> Self {
        let basis = BinMat::from_rows(2 * n, rows).rref();
        debug_assert_eq!(basis.n_rows(), n);
        Generator { n, basis }
    }

    /// The `2^N - 1` operators of the subspace. Entry `k - 1` is the sum of
    /// the basis rows selected by the bits of `k`.
    pub fn points(&self) -> Vec<PauliPoint> {
        (1u32..1 << self.n)
            .map(|mask| {
                let mut v = BinVec::zeros(2 * self.n);
                for (i, row) in self.basis.rows().iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v.xor_assign(row);
                    }
                }
                PauliPoint::from_coords_unchecked(self.n, v)
            })
            .collect()
    }

    pub fn contains(&self, p: &PauliPoint) -> bool {
        if p.n != self.n {
            return false;
        }
        let mut rows = self.basis.rows().to_vec();
        rows.push(p.coords.clone());
        BinMat::from_rows(2 * self.n, rows).rank() == self.n
    }

    /// Space-separated labels of the canonical basis, e.g. `ZZI XXI IIX`.
    pub fn basis_labels(&self) -> String {
        self.basis_operators()
            .iter()
            .map(PauliPoint::label)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator<{}>", self.basis_labels())
    }
}

/// The generator spanned by a set of mutually commuting operators.
pub fn generator_from_operators(ops: &[PauliPoint]) -> Result<Generator> {
    let Some(first) = ops.first() else {
        return Err(Error::NotMaximal { rank: 0, n: 0 });
    };
    let n = first.n;
    if let Some(bad) = ops.iter().find(|p| p.n != n) {
        return Err(Error::MixedQubitCounts {
            first: n,
            second: bad.n,
        });
    }
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            if symplectic(&a.coords, &b.coords, n) {
                return Err(Error::NonCommuting {
                    first: a.label(),
                    second: b.label(),
                });
            }
        }
    }
    let basis = BinMat::from_rows(2 * n, ops.iter().map(|p| p.coords.clone()).collect()).rref();
    if basis.n_rows() < n {
        return Err(Error::NotMaximal {
            rank: basis.n_rows(),
            n,
        });
    }
    Ok(Generator { n, basis })
}

/// Product `(2+1)(2^2+1)…(2^N+1)`.
pub fn generator_count(n: usize) -> u64 {
    (1..=n).map(|i| (1u64 << i) + 1).product()
}

/// Every generator of W(2N-1, 2), sorted and duplicate-free.
///
/// Depth-first over canonical bases: row `r` gets a pivot column beyond the
/// previous pivot, must vanish on all later pivot columns (checked when
/// those pivots are chosen), and must be orthogonal to the rows above it.
/// Each subspace is therefore reached exactly once, already in canonical
/// form, and the traversal order is the lexicographic order of bases.
pub fn enumerate_generators(n: usize) -> Result<Vec<Generator>> {
    check_n("enumerate_generators", n, 1, MAX_ENUM_QUBITS)?;
    let dfs = RrefSearch { n };
    let firsts: Vec<u32> = dfs.candidates(&[], 0).collect();
    let bases: Vec<Vec<u32>> = par::flat_map(&firsts, |&row| {
        let mut out = Vec::new();
        let mut rows = vec![row];
        dfs.extend(&mut rows, dfs.pivot_of(row), &mut out);
        out
    });
    Ok(bases
        .into_iter()
        .map(|rows| dfs.to_generator(&rows))
        .collect())
}

/// Rows packed into `u32` with coordinate 1 in the most significant of the
/// `2N` low bits, so integer order is lexicographic order.
struct RrefSearch {
    n: usize,
}

impl RrefSearch {
    fn width(&self) -> usize {
        2 * self.n
    }

    /// 1-based pivot column of a packed row.
    fn pivot_of(&self, row: u32) -> usize {
        self.width() - (31 - row.leading_zeros() as usize)
    }

    fn sigma(&self, a: u32, b: u32) -> bool {
        let lo = (1u32 << self.n) - 1;
        ((((a >> self.n) & b) ^ (a & (b >> self.n))) & lo).count_ones() % 2 == 1
    }

    /// Admissible next rows after `rows`, whose last pivot is `last_pivot`
    /// (0 when empty), in increasing order.
    fn candidates<'a>(
        &'a self,
        rows: &'a [u32],
        last_pivot: usize,
    ) -> impl Iterator<Item = u32> + 'a {
        let remaining = self.n - rows.len();
        let max_pivot = self.width() + 1 - remaining;
        (last_pivot + 1..=max_pivot)
            .rev()
            .filter(move |&c| {
                let bit = 1u32 << (self.width() - c);
                rows.iter().all(|r| r & bit == 0)
            })
            .flat_map(move |c| {
                let bit = 1u32 << (self.width() - c);
                (0..bit).map(move |free| bit | free)
            })
            .filter(move |&v| rows.iter().all(|&r| !self.sigma(r, v)))
    }

    fn extend(&self, rows: &mut Vec<u32>, last_pivot: usize, out: &mut Vec<Vec<u32>>) {
        if rows.len() == self.n {
            out.push(rows.clone());
            return;
        }
        let next: Vec<u32> = self.candidates(rows, last_pivot).collect();
        for v in next {
            rows.push(v);
            self.extend(rows, self.pivot_of(v), out);
            rows.pop();
        }
    }

    fn to_generator(&self, rows: &[u32]) -> Generator {
        let w = self.width();
        let basis = rows
            .iter()
            .map(|&r| BinVec::from_bools((0..w).map(|k| r >> (w - 1 - k) & 1 == 1)))
            .collect();
        Generator {
            n: self.n,
            basis: BinMat::from_rows(w, basis),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliPoint {
        parse_label(s).unwrap()
    }

    fn bits(v: &[u8]) -> BinVec {
        BinVec::from_bools(v.iter().map(|&b| b == 1))
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("IYZX").coords(), &bits(&[0, 1, 1, 0, 0, 1, 0, 1]));
        assert_eq!(p("XI").coords(), &bits(&[0, 0, 1, 0]));
        assert_eq!(p("ZZI").coords(), &bits(&[1, 1, 0, 0, 0, 0]));
        assert_eq!(p("-XI"), p("XI"));
        assert_eq!(p("+XI"), p("XI"));
        assert_eq!(p("−XI"), p("XI"));
    }

    #[test]
    fn print_examples() {
        for s in ["IYZX", "XI", "ZZI"] {
            assert_eq!(p(s).label(), s);
        }
        let q = PauliPoint::new(4, bits(&[0, 1, 1, 0, 0, 1, 0, 1])).unwrap();
        assert_eq!(q.to_string(), "IYZX");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_label(""), Err(Error::InvalidLabel { .. })));
        assert!(matches!(parse_label("-"), Err(Error::InvalidLabel { .. })));
        assert!(matches!(
            parse_label("III"),
            Err(Error::InvalidLabel { .. })
        ));
        assert!(matches!(parse_label("XQ"), Err(Error::InvalidLabel { .. })));
        assert!(matches!(parse_label("xi"), Err(Error::InvalidLabel { .. })));
    }

    #[test]
    fn symplectic_examples() {
        assert!(!p("XI").symplectic_product(&p("IX")).unwrap());
        assert!(p("X").symplectic_product(&p("Z")).unwrap());
        assert!(!p("ZX").symplectic_product(&p("XZ")).unwrap());
        assert!(matches!(
            p("X").symplectic_product(&p("XX")),
            Err(Error::MixedQubitCounts { .. })
        ));
    }

    #[test]
    fn quad_form_examples() {
        assert!(p("IYZX").quad_form());
        assert!(!p("YYII").quad_form());
        assert!(!p("XIII").quad_form());
    }

    #[test]
    fn point_counts() {
        for n in 1..=4 {
            assert_eq!(PauliPoint::all(n).count(), (1 << (2 * n)) - 1);
        }
    }

    #[test]
    fn quad_form_is_y_parity() {
        for n in 1..=4 {
            for q in PauliPoint::all(n) {
                let ys = q.label().chars().filter(|&c| c == 'Y').count();
                assert_eq!(q.quad_form(), ys % 2 == 1, "{q}");
            }
        }
    }

    #[test]
    fn labels_round_trip_exhaustively() {
        for n in 1..=3 {
            for q in PauliPoint::all(n) {
                assert_eq!(parse_label(&q.label()).unwrap(), q);
            }
        }
    }

    #[test]
    fn generator_counts() {
        assert_eq!(enumerate_generators(1).unwrap().len(), 3);
        assert_eq!(enumerate_generators(2).unwrap().len(), 15);
        assert_eq!(enumerate_generators(3).unwrap().len(), 135);
        assert_eq!(generator_count(4), 2295);
        assert!(matches!(
            enumerate_generators(0),
            Err(Error::UnsupportedN { .. })
        ));
        assert!(matches!(
            enumerate_generators(6),
            Err(Error::UnsupportedN { .. })
        ));
    }

    #[test]
    fn enumeration_is_sorted_isotropic_and_canonical() {
        for n in 1..=3 {
            let gens = enumerate_generators(n).unwrap();
            assert!(gens.windows(2).all(|w| w[0] < w[1]));
            for g in &gens {
                assert_eq!(g.basis().rank(), n);
                assert_eq!(&g.basis().rref(), g.basis());
                let ops = g.basis_operators();
                for a in &ops {
                    for b in &ops {
                        assert!(a.commutes_with(b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn every_point_lies_on_a_generator() {
        for n in 1..=3 {
            let gens = enumerate_generators(n).unwrap();
            for q in PauliPoint::all(n) {
                assert!(gens.iter().any(|g| g.contains(&q)), "{q}");
            }
        }
    }

    #[test]
    fn generator_from_operators_examples() {
        let a = generator_from_operators(&[p("XI"), p("IX")]).unwrap();
        assert_eq!(
            a.basis(),
            &BinMat::from_bits(&[&[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        let b = generator_from_operators(&[p("ZZI"), p("XXI"), p("IIX")]).unwrap();
        assert_eq!(
            b.basis(),
            &BinMat::from_bits(&[
                &[1, 1, 0, 0, 0, 0],
                &[0, 0, 0, 1, 1, 0],
                &[0, 0, 0, 0, 0, 1]
            ])
        );
        match generator_from_operators(&[p("XI"), p("ZI")]) {
            Err(Error::NonCommuting { first, second }) => {
                assert_eq!((first.as_str(), second.as_str()), ("XI", "ZI"))
            }
            other => panic!("expected non-commuting error, got {other:?}"),
        }
        assert!(matches!(
            generator_from_operators(&[p("XI"), p("XI")]),
            Err(Error::NotMaximal { rank: 1, n: 2 })
        ));
        assert!(matches!(
            generator_from_operators(&[p("XI"), p("X")]),
            Err(Error::MixedQubitCounts { .. })
        ));
    }

    #[test]
    fn generator_points_examples() {
        let a = generator_from_operators(&[p("XI"), p("IX")]).unwrap();
        let mut labels: Vec<String> = a.points().iter().map(PauliPoint::label).collect();
        labels.sort();
        assert_eq!(labels, ["IX", "XI", "XX"]);

        let b = generator_from_operators(&[p("ZZI"), p("XXI"), p("IIX")]).unwrap();
        let labels: Vec<String> = b.points().iter().map(PauliPoint::label).collect();
        assert_eq!(labels.len(), 7);
        for l in ["ZZI", "XXI", "IIX", "YYI"] {
            assert!(labels.iter().any(|x| x == l), "{l} missing from {labels:?}");
        }
        for g in enumerate_generators(3).unwrap() {
            let pts = g.points();
            assert_eq!(pts.len(), 7);
            for x in &pts {
                for y in &pts {
                    assert!(x.commutes_with(y).unwrap());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn symplectic_is_alternating_and_bilinear(n in 1usize..=5, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let mask = (1u64 << (2 * n)) - 1;
            let v = |w: u64| BinVec::from_u64(2 * n, w & mask);
            let (va, vb, vc) = (v(a), v(b), v(c));
            prop_assert!(!symplectic(&va, &va, n));
            prop_assert_eq!(symplectic(&va, &vb, n), symplectic(&vb, &va, n));
            let mut bc = vb.clone();
            bc.xor_assign(&vc);
            prop_assert_eq!(symplectic(&va, &bc, n), symplectic(&va, &vb, n) ^ symplectic(&va, &vc, n));
        }
    }
}
