//! Projection of the Lagrangian Grassmannian onto its principal-minor
//! coordinates, and the resulting correspondence between maximal commuting
//! sets on N qubits and points of `P^{2^N - 1}`.
//!
//! A [`ProjPoint`] stores its coordinates by subset `I ⊆ {1..N}` (bit `j-1`
//! of the key marks element `j`); the coordinate `x_I` is the Plücker
//! coordinate at [`principal_index`]`(I)`. Points are shown in *display
//! order*: first the subsets not containing 1, ascending when read as binary
//! numbers with element 1 as the leading digit, then their complements in
//! the same order. For `N = 2` this gives `[p12 : p14 : p34 : p23]`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{check_n, Error, Result};
use crate::gf2::{BinMat, BinVec};
use crate::par;
use crate::pauli::{enumerate_generators, Generator, PauliPoint, MAX_ENUM_QUBITS};
use crate::pluecker::{embed, first_violated, PlueckerVec, SubsetIndex};

/// Plücker index `({1..N} \ I) ∪ {N + i : i ∈ I}` for the subset with key `i_key`.
pub fn principal_index(n: usize, i_key: u32) -> SubsetIndex {
    let full = (1u32 << n) - 1;
    debug_assert!(i_key & !full == 0);
    SubsetIndex::from_key(2 * n, (full & !i_key) | (i_key << n))
}

/// Display position <-> subset key tables for one N.
pub struct DisplayOrder {
    keys: Vec<u32>,
    positions: Vec<u32>,
}

impl DisplayOrder {
    fn build(n: usize) -> Self {
        let half = 1u32 << (n - 1);
        let full = (1u32 << n) - 1;
        // value v in 0..2^(N-1), element j at bit N-j: key bit j-1.
        let key_of = |v: u32| {
            (1..=n)
                .filter(|&j| v >> (n - j) & 1 == 1)
                .fold(0u32, |k, j| k | 1 << (j - 1))
        };
        let first: Vec<u32> = (0..half).map(key_of).collect();
        let keys: Vec<u32> = first
            .iter()
            .copied()
            .chain(first.iter().map(|k| full & !k))
            .collect();
        let mut positions = vec![0u32; keys.len()];
        for (p, &k) in keys.iter().enumerate() {
            positions[k as usize] = p as u32;
        }
        DisplayOrder { keys, positions }
    }

    pub fn get(n: usize) -> &'static DisplayOrder {
        static ORDERS: [OnceLock<DisplayOrder>; MAX_ENUM_QUBITS + 1] =
            [const { OnceLock::new() }; MAX_ENUM_QUBITS + 1];
        assert!(
            (1..=MAX_ENUM_QUBITS).contains(&n),
            "no display order for N = {n}"
        );
        ORDERS[n].get_or_init(|| DisplayOrder::build(n))
    }

    /// Subset key shown at 0-based display position `pos`.
    pub fn key_at(&self, pos: usize) -> u32 {
        self.keys[pos]
    }

    /// 0-based display position of the subset with key `key`.
    pub fn position_of(&self, key: u32) -> usize {
        self.positions[key as usize] as usize
    }

    pub fn keys(&self) -> &[u32] {
        &self.keys
    }

    /// Re-packs an internal mask so that display position `k` sits at bit `k`.
    pub fn to_display_mask(&self, mask: u64) -> u64 {
        self.keys
            .iter()
            .enumerate()
            .fold(0, |acc, (p, &k)| acc | ((mask >> k) & 1) << p)
    }

    pub fn from_display_mask(&self, display: u64) -> u64 {
        self.keys
            .iter()
            .enumerate()
            .fold(0, |acc, (p, &k)| acc | ((display >> p) & 1) << k)
    }
}

/// A nonzero point of `P^{2^N - 1}(GF(2))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    n: usize,
    coords: BinVec,
}

impl ProjPoint {
    fn check(n: usize, mask: u64) -> Result<()> {
        check_n("ProjPoint", n, 1, MAX_ENUM_QUBITS)?;
        let len = 1usize << n;
        if len < 64 && mask >> len != 0 {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: 64 - mask.leading_zeros() as usize,
            });
        }
        if mask == 0 {
            return Err(Error::InvalidPoint {
                input: "0".repeat(len),
                reason: "the zero vector is not a projective point".into(),
            });
        }
        Ok(())
    }

    /// From an internal mask: bit `key(I)` holds `x_I`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        Self::check(n, mask)?;
        Ok(Self::from_mask_unchecked(n, mask))
    }

    pub(crate) fn from_mask_unchecked(n: usize, mask: u64) -> Self {
        ProjPoint {
            n,
            coords: BinVec::from_u64(1 << n, mask),
        }
    }

    /// From coordinates listed in display order.
    pub fn from_display_bits(n: usize, bits: &[bool]) -> Result<Self> {
        check_n("ProjPoint", n, 1, MAX_ENUM_QUBITS)?;
        if bits.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: bits.len(),
            });
        }
        let display = bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (p, &b)| acc | (b as u64) << p);
        Self::from_mask(n, DisplayOrder::get(n).from_display_mask(display))
    }

    /// Parses `[0:0:1:0]`, `0:0:1:0`, `0010` (display order) or a hex string
    /// such as `0x2`, which is the display bit string read as a binary number.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        check_n("ProjPoint", n, 1, MAX_ENUM_QUBITS)?;
        let bad = |reason: String| Error::InvalidPoint {
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        let len = 1usize << n;
        let bits: Vec<bool> =
            if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
                let value = u64::from_str_radix(hex, 16).map_err(|e| bad(e.to_string()))?;
                if len < 64 && value >> len != 0 {
                    return Err(bad(format!("value exceeds {len} bits")));
                }
                (0..len).map(|p| value >> (len - 1 - p) & 1 == 1).collect()
            } else {
                let inner = t
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .unwrap_or(t);
                inner
                    .chars()
                    .filter(|c| !matches!(c, ':' | ',') && !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(bad(format!("unexpected character {other:?}"))),
                    })
                    .collect::<Result<_>>()?
            };
        if bits.len() != len {
            return Err(bad(format!(
                "expected {len} coordinates, found {}",
                bits.len()
            )));
        }
        Self::from_display_bits(n, &bits).map_err(|e| match e {
            Error::InvalidPoint { reason, .. } => bad(reason),
            other => other,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Internal mask, bit `key(I)` = `x_I`.
    pub fn mask(&self) -> u64 {
        self.coords.to_u64()
    }

    pub fn coords(&self) -> &BinVec {
        &self.coords
    }

    /// `x_I` for the subset with key `i_key`.
    pub fn coord(&self, i_key: u32) -> bool {
        self.coords.get(i_key as usize)
    }

    /// Whether `x_∅ = 1`, i.e. the point lies in the standard affine chart.
    pub fn on_chart(&self) -> bool {
        self.coord(0)
    }

    pub fn display_mask(&self) -> u64 {
        DisplayOrder::get(self.n).to_display_mask(self.mask())
    }

    pub fn display_bits(&self) -> Vec<bool> {
        let d = self.display_mask();
        (0..1 << self.n).map(|p| d >> p & 1 == 1).collect()
    }

    /// Coordinates in display order as a string of 0s and 1s.
    pub fn bit_string(&self) -> String {
        self.display_bits()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn hex(&self) -> String {
        let len = 1usize << self.n;
        let value = self
            .display_bits()
            .iter()
            .fold(0u64, |acc, &b| acc << 1 | b as u64);
        format!("0x{:0width$x}", value, width = len.div_ceil(4))
    }

    /// 1-based display positions of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.display_bits()
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(p, _)| p + 1)
            .collect()
    }
}

impl Ord for ProjPoint {
    /// Lexicographic in display order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.display_bits().cmp(&other.display_bits()))
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .display_bits()
            .iter()
            .map(|&b| if b { "1" } else { "0" })
            .collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Restricts a Lagrangian Plücker vector to its principal-minor coordinates.
pub fn project(v: &PlueckerVec) -> Result<ProjPoint> {
    if let Some(c) = first_violated(v) {
        return Err(Error::NotLagrangian {
            constraint: c.to_string(),
        });
    }
    let n = v.n_qubits();
    let mask = (0u32..1 << n)
        .filter(|&i| v.get(&principal_index(n, i)))
        .fold(0u64, |m, i| m | 1 << i);
    if mask == 0 {
        return Err(Error::ZeroProjection);
    }
    Ok(ProjPoint::from_mask_unchecked(n, mask))
}

/// The point attached to a maximal commuting set.
pub fn point_of(g: &Generator) -> Result<ProjPoint> {
    project(&embed(g))
}

/// Reads a point of `P^{2^N - 1}` as a Pauli operator on `2^(N-1)` qubits:
/// qubit `k` gets the letter of the display coordinate pair `(x_k, x_{k+2^(N-1)})`.
pub fn to_observable(p: &ProjPoint) -> PauliPoint {
    PauliPoint::from_coords_unchecked(1 << (p.n - 1), BinVec::from_bools(p.display_bits()))
}

/// The symmetric matrix `A` of a chart point, with the point equal to the
/// principal minors of `A` (`x_∅ = 1`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChartMatrix {
    n: usize,
    a: BinMat,
}

impl ChartMatrix {
    /// `a_ii = x_{i}` and `a_ij = x_{i} x_{j} + x_{ij}`.
    pub fn from_point(p: &ProjPoint) -> Result<Self> {
        if !p.on_chart() {
            return Err(Error::InvalidPoint {
                input: p.to_string(),
                reason: "x_∅ = 0, point is off the standard chart".into(),
            });
        }
        let n = p.n;
        let mut a = BinMat::zeros(n, n);
        for i in 0..n {
            a.set(i, i, p.coord(1 << i));
            for j in i + 1..n {
                let v = (p.coord(1 << i) & p.coord(1 << j)) ^ p.coord(1 << i | 1 << j);
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        Ok(ChartMatrix { n, a })
    }

    pub fn matrix(&self) -> &BinMat {
        &self.a
    }

    /// Row space of `[I | A]`.
    pub fn to_generator(&self) -> Generator {
        let n = self.n;
        let rows = (0..n)
            .map(|i| {
                let mut v = BinVec::unit(2 * n, i);
                for j in 0..n {
                    v.set(n + j, self.a.get(i, j));
                }
                v
            })
            .collect();
        Generator::from_spanning_rows(n, rows)
    }

    /// Minor on rows `i_key` and columns `j_key` (subset keys).
    pub fn minor(&self, i_key: u32, j_key: u32) -> Result<bool> {
        let rows: Vec<usize> = (0..self.n).filter(|&k| i_key >> k & 1 == 1).collect();
        let cols: Vec<usize> = (0..self.n).filter(|&k| j_key >> k & 1 == 1).collect();
        self.a.minor(&rows, &cols)
    }

    /// Largest `k` with a nonzero `k x k` minor on disjoint row and column sets.
    pub fn max_exclusive_minor(&self) -> usize {
        let n = self.n;
        let mut best = 0;
        for i in 1u32..1 << n {
            let k = i.count_ones() as usize;
            if k <= best || 2 * k > n {
                continue;
            }
            let rest = ((1u32 << n) - 1) & !i;
            let mut j = rest;
            while j != 0 {
                if j.count_ones() as usize == k && self.minor(i, j).expect("square by construction")
                {
                    best = k;
                    break;
                }
                j = (j - 1) & rest;
            }
        }
        best
    }
}

/// Inverse of the projection on the chart `x_∅ = 1`, checked by projecting back.
pub fn lift_chart(p: &ProjPoint) -> Result<Generator> {
    let g = ChartMatrix::from_point(p)?.to_generator();
    match point_of(&g) {
        Ok(q) if &q == p => Ok(g),
        _ => Err(Error::NotInImage(p.to_string())),
    }
}

/// All generators on N qubits with their projected points.
pub struct Correspondence {
    n: usize,
    generators: Vec<Generator>,
    points: Vec<ProjPoint>,
    index: HashMap<u64, usize>,
}

impl Correspondence {
    pub fn build(n: usize) -> Result<Self> {
        check_n("Correspondence", n, 2, MAX_ENUM_QUBITS)?;
        let generators = enumerate_generators(n)?;
        let points = par::map(&generators, point_of)
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            index.entry(p.mask()).or_insert(i);
        }
        Ok(Correspondence {
            n,
            generators,
            points,
            index,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Generators in enumeration order.
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// `points()[k]` is the image of `generators()[k]`.
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// Whether no two generators share a point.
    pub fn is_injective(&self) -> bool {
        self.index.len() == self.generators.len()
    }

    pub fn image_size(&self) -> usize {
        self.index.len()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.n == self.n && self.index.contains_key(&p.mask())
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.index.contains_key(&mask)
    }

    /// Image points, sorted.
    pub fn image(&self) -> Vec<ProjPoint> {
        let mut v = self.points.clone();
        v.sort();
        v.dedup();
        v
    }

    /// The generator mapping to `p`: the chart formula when `x_∅ = 1`,
    /// otherwise a table lookup.
    pub fn lift(&self, p: &ProjPoint) -> Result<Generator> {
        if p.n != self.n {
            return Err(Error::MixedQubitCounts {
                first: self.n,
                second: p.n,
            });
        }
        if p.on_chart() {
            return lift_chart(p);
        }
        self.index
            .get(&p.mask())
            .map(|&i| self.generators[i].clone())
            .ok_or_else(|| Error::NotInImage(p.to_string()))
    }
}

/// Sorted image of the projection for `2 <= n <= 5`.
pub fn image(n: usize) -> Result<Vec<ProjPoint>> {
    Ok(Correspondence::build(n)?.image())
}
