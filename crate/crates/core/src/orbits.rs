//! The group `G = SL(2,2)^{×N} ⋊ S_N` acting on `(K^2)^{⊗N}`, its orbits on
//! `P^{2^N - 1}`, tensor rank, and the exclusive-minor rank of image points.
//!
//! Tensor axis `j` (0-based) is bit `j` of the subset key used by
//! [`ProjPoint`], so `x_I` is the coefficient of `e_{b_1} ⊗ … ⊗ e_{b_N}`
//! with `b_j = 1` iff `j ∈ I`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::catalog::{known_classes, KnownClass};
use crate::error::{check_n, Error, Result};
use crate::gf2::BinMat;
use crate::par;
use crate::pauli::{Generator, PauliPoint};
use crate::projection::{to_observable, ChartMatrix, Correspondence, ProjPoint};

/// Largest N for which full orbit and rank tables are built.
pub const MAX_TABLE_QUBITS: usize = 4;

/// An element of `SL(2,2) = GL(2,2)`, acting by `(x0, x1) -> (a x0 + b x1, c x0 + d x1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2 {
    a: bool,
    b: bool,
    c: bool,
    d: bool,
}

impl Sl2 {
    pub const IDENTITY: Sl2 = Sl2 {
        a: true,
        b: false,
        c: false,
        d: true,
    };
    /// `[[1,1],[0,1]]`
    pub const SHEAR: Sl2 = Sl2 {
        a: true,
        b: true,
        c: false,
        d: true,
    };
    /// `[[0,1],[1,0]]`
    pub const SWAP: Sl2 = Sl2 {
        a: false,
        b: true,
        c: true,
        d: false,
    };

    pub fn new(a: bool, b: bool, c: bool, d: bool) -> Result<Self> {
        if (a & d) ^ (b & c) {
            Ok(Sl2 { a, b, c, d })
        } else {
            Err(Error::InvalidPoint {
                input: format!("[[{}, {}], [{}, {}]]", a as u8, b as u8, c as u8, d as u8),
                reason: "singular 2x2 matrix".into(),
            })
        }
    }

    /// The six elements.
    pub fn all() -> Vec<Sl2> {
        (0u8..16)
            .filter_map(|m| Sl2::new(m & 8 != 0, m & 4 != 0, m & 2 != 0, m & 1 != 0).ok())
            .collect()
    }

    pub fn inverse(self) -> Sl2 {
        // det = 1, so the inverse is the adjugate.
        Sl2 {
            a: self.d,
            b: self.b,
            c: self.c,
            d: self.a,
        }
    }

    pub fn apply(self, x0: bool, x1: bool) -> (bool, bool) {
        ((self.a & x0) ^ (self.b & x1), (self.c & x0) ^ (self.d & x1))
    }

    pub fn to_matrix(self) -> BinMat {
        BinMat::from_bits(&[&[self.a as u8, self.b as u8], &[self.c as u8, self.d as u8]])
    }
}

impl std::ops::Mul for Sl2 {
    type Output = Sl2;

    fn mul(self, rhs: Sl2) -> Sl2 {
        Sl2 {
            a: (self.a & rhs.a) ^ (self.b & rhs.c),
            b: (self.a & rhs.b) ^ (self.b & rhs.d),
            c: (self.c & rhs.a) ^ (self.d & rhs.c),
            d: (self.c & rhs.b) ^ (self.d & rhs.d),
        }
    }
}

impl fmt::Debug for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.a as u8, self.b as u8, self.c as u8, self.d as u8
        )
    }
}

/// `P_σ ∘ (F_1 ⊗ … ⊗ F_N)`: local factors first, then axis `j` moves to `perm[j]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElem {
    factors: Vec<Sl2>,
    perm: Vec<usize>,
}

impl GroupElem {
    pub fn identity(n: usize) -> Self {
        GroupElem {
            factors: vec![Sl2::IDENTITY; n],
            perm: (0..n).collect(),
        }
    }

    pub fn new(factors: Vec<Sl2>, perm: Vec<usize>) -> Result<Self> {
        let n = factors.len();
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPoint {
                    input: format!("{perm:?}"),
                    reason: "not a permutation".into(),
                });
            }
        }
        Ok(GroupElem { factors, perm })
    }

    pub fn n_axes(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Sl2] {
        &self.factors
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// `self · h`, acting as `h` first.
    pub fn compose(&self, h: &GroupElem) -> GroupElem {
        assert_eq!(self.n_axes(), h.n_axes());
        let perm = h.perm.iter().map(|&t| self.perm[t]).collect();
        let factors = h
            .factors
            .iter()
            .zip(&h.perm)
            .map(|(&fh, &t)| self.factors[t] * fh)
            .collect();
        GroupElem { factors, perm }
    }

    pub fn inverse(&self) -> GroupElem {
        let n = self.n_axes();
        let mut perm = vec![0; n];
        let mut factors = vec![Sl2::IDENTITY; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            factors[self.perm[j]] = self.factors[j].inverse();
        }
        GroupElem { factors, perm }
    }

    /// Action on an internal coordinate mask over `2^N` coordinates.
    pub fn act_mask(&self, mask: u64) -> u64 {
        let n = self.n_axes();
        let mut v = mask;
        for (j, f) in self.factors.iter().enumerate() {
            if *f == Sl2::IDENTITY {
                continue;
            }
            let bit = 1usize << j;
            let mut out = 0u64;
            for i in (0..1usize << n).filter(|i| i & bit == 0) {
                let (y0, y1) = f.apply(v >> i & 1 == 1, v >> (i | bit) & 1 == 1);
                out |= (y0 as u64) << i | (y1 as u64) << (i | bit);
            }
            v = out;
        }
        if self.perm.iter().enumerate().all(|(j, &p)| j == p) {
            return v;
        }
        let mut out = 0u64;
        for i in 0..1usize << n {
            if v >> i & 1 == 1 {
                let target = (0..n)
                    .filter(|&j| i >> j & 1 == 1)
                    .fold(0usize, |t, j| t | 1 << self.perm[j]);
                out |= 1 << target;
            }
        }
        out
    }

    pub fn act(&self, p: &ProjPoint) -> ProjPoint {
        assert_eq!(self.n_axes(), p.n_qubits());
        ProjPoint::from_mask_unchecked(p.n_qubits(), self.act_mask(p.mask()))
    }
}

/// `SHEAR` and `SWAP` on every axis plus the adjacent axis transpositions.
pub fn group_generators(n: usize) -> Vec<GroupElem> {
    let mut gens = Vec::new();
    for j in 0..n {
        for f in [Sl2::SHEAR, Sl2::SWAP] {
            let mut g = GroupElem::identity(n);
            g.factors[j] = f;
            gens.push(g);
        }
    }
    for j in 0..n.saturating_sub(1) {
        let mut g = GroupElem::identity(n);
        g.perm.swap(j, j + 1);
        gens.push(g);
    }
    gens
}

/// `|G| = 6^N · N!`.
pub fn group_order(n: usize) -> u64 {
    6u64.pow(n as u32) * (1..=n as u64).product::<u64>()
}

/// The orbit of `p`, sorted by internal mask.
pub fn orbit_of(p: &ProjPoint) -> Vec<ProjPoint> {
    let n = p.n_qubits();
    let gens = group_generators(n);
    let mut seen = HashSet::from([p.mask()]);
    let mut queue = VecDeque::from([p.mask()]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let w = g.act_mask(m);
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    let mut masks: Vec<u64> = seen.into_iter().collect();
    masks.sort_unstable();
    masks
        .into_iter()
        .map(|m| ProjPoint::from_mask_unchecked(n, m))
        .collect()
}

/// One G-orbit on `P^{2^N - 1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orbit {
    pub id: usize,
    pub size: usize,
    /// Member with the smallest internal mask.
    pub representative: ProjPoint,
}

/// Partition of `P^{2^N - 1}` into G-orbits, ordered by `(size, representative mask)`
/// and numbered from 1.
pub struct Stratification {
    n: usize,
    orbits: Vec<Orbit>,
    orbit_of: Vec<u32>,
}

impl Stratification {
    pub fn compute(n: usize) -> Result<Self> {
        check_n("orbit partition", n, 1, MAX_TABLE_QUBITS)?;
        let total = 1usize << (1 << n);
        let gens = group_generators(n);
        const UNSEEN: u32 = u32::MAX;
        let mut label = vec![UNSEEN; total];
        let mut found: Vec<(usize, u64)> = Vec::new();
        for seed in 1..total {
            if label[seed] != UNSEEN {
                continue;
            }
            // Seeds are scanned upward, so each seed is its orbit's minimum.
            let tag = found.len() as u32;
            label[seed] = tag;
            let mut queue = VecDeque::from([seed as u64]);
            let mut size = 0;
            while let Some(m) = queue.pop_front() {
                size += 1;
                for g in &gens {
                    let w = g.act_mask(m) as usize;
                    if label[w] == UNSEEN {
                        label[w] = tag;
                        queue.push_back(w as u64);
                    }
                }
            }
            found.push((size, seed as u64));
        }
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by_key(|&t| found[t]);
        let mut rename = vec![0u32; found.len()];
        for (id0, &t) in order.iter().enumerate() {
            rename[t] = id0 as u32 + 1;
        }
        let orbit_of = label
            .iter()
            .map(|&t| if t == UNSEEN { 0 } else { rename[t as usize] })
            .collect();
        let orbits = order
            .iter()
            .enumerate()
            .map(|(id0, &t)| Orbit {
                id: id0 + 1,
                size: found[t].0,
                representative: ProjPoint::from_mask_unchecked(n, found[t].1),
            })
            .collect();
        Ok(Stratification {
            n,
            orbits,
            orbit_of,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit(&self, id: usize) -> &Orbit {
        &self.orbits[id - 1]
    }

    /// 1-based id of the orbit containing `p`.
    pub fn orbit_id(&self, p: &ProjPoint) -> usize {
        assert_eq!(p.n_qubits(), self.n);
        self.orbit_of[p.mask() as usize] as usize
    }

    pub fn members(&self, id: usize) -> Vec<ProjPoint> {
        (1..self.orbit_of.len())
            .filter(|&m| self.orbit_of[m] as usize == id)
            .map(|m| ProjPoint::from_mask_unchecked(self.n, m as u64))
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.size).collect()
    }

    /// Ids of the orbits inside the image of the correspondence. An orbit
    /// meeting the image only partly is an error.
    pub fn image_orbits(&self, corr: &Correspondence) -> Result<Vec<usize>> {
        if corr.n_qubits() != self.n {
            return Err(Error::MixedQubitCounts {
                first: self.n,
                second: corr.n_qubits(),
            });
        }
        let mut hits = vec![0usize; self.orbits.len() + 1];
        for p in corr.points() {
            hits[self.orbit_id(p)] += 1;
        }
        let mut ids = Vec::new();
        for o in &self.orbits {
            match hits[o.id] {
                0 => {}
                h if h == o.size => ids.push(o.id),
                _ => return Err(Error::MixedOrbit { orbit: o.id }),
            }
        }
        Ok(ids)
    }
}

/// The 3^N nonzero product vectors `v_1 ⊗ … ⊗ v_N`, as internal masks.
pub fn separable_vectors(n: usize) -> Vec<u64> {
    const FACTORS: [(bool, bool); 3] = [(true, false), (false, true), (true, true)];
    let mut out = Vec::with_capacity(3usize.pow(n as u32));
    let mut choice = vec![0usize; n];
    loop {
        let mask = (0u64..1 << n)
            .filter(|&i| {
                choice.iter().enumerate().all(|(j, &c)| {
                    let (b0, b1) = FACTORS[c];
                    if i >> j & 1 == 1 {
                        b1
                    } else {
                        b0
                    }
                })
            })
            .fold(0u64, |m, i| m | 1 << i);
        out.push(mask);
        let mut j = 0;
        while j < n && choice[j] == 2 {
            choice[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
        choice[j] += 1;
    }
    out.sort_unstable();
    out
}

/// Rank-one test through the N single-axis flattenings.
pub fn is_separable(p: &ProjPoint) -> bool {
    let n = p.n_qubits();
    let m = p.mask();
    (0..n).all(|j| {
        let others: Vec<usize> = (0usize..1 << n).filter(|i| i >> j & 1 == 0).collect();
        let rows = (0..2)
            .map(|b| {
                crate::gf2::BinVec::from_bools(others.iter().map(|&i| m >> (i | b << j) & 1 == 1))
            })
            .collect();
        BinMat::from_rows(others.len(), rows).rank() <= 1
    })
}

/// Tensor rank of every vector of `(K^2)^{⊗N}`: the least number of
/// product vectors summing to it, by breadth-first search from 0.
pub struct TRankTable {
    n: usize,
    rank: Vec<u8>,
}

impl TRankTable {
    pub fn build(n: usize) -> Result<Self> {
        check_n("tensor rank table", n, 1, MAX_TABLE_QUBITS)?;
        const UNSEEN: u8 = u8::MAX;
        let total = 1usize << (1 << n);
        let seps = separable_vectors(n);
        let mut rank = vec![UNSEEN; total];
        rank[0] = 0;
        let mut frontier = vec![0u64];
        let mut level = 0u8;
        while !frontier.is_empty() {
            level += 1;
            let table = &rank;
            let mut next = par::flat_map(&frontier, |&v| {
                seps.iter()
                    .map(|s| v ^ s)
                    .filter(|&w| table[w as usize] == UNSEEN)
                    .collect()
            });
            next.sort_unstable();
            next.dedup();
            for &w in &next {
                rank[w as usize] = level;
            }
            frontier = next;
        }
        Ok(TRankTable { n, rank })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn rank_of_mask(&self, mask: u64) -> usize {
        self.rank[mask as usize] as usize
    }

    pub fn rank(&self, p: &ProjPoint) -> usize {
        assert_eq!(p.n_qubits(), self.n);
        self.rank_of_mask(p.mask())
    }

    pub fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0) as usize
    }
}

/// Largest nonzero exclusive minor of the symmetric matrix of `p`, after
/// moving `p` within its orbit onto the chart `x_∅ = 1` (the chart member
/// with the smallest mask is used). `p` must lie in the image.
pub fn e_rank(p: &ProjPoint, corr: &Correspondence) -> Result<usize> {
    if !corr.contains(p) {
        return Err(Error::NotInImage(p.to_string()));
    }
    let chart = orbit_of(p)
        .into_iter()
        .find(ProjPoint::on_chart)
        .ok_or_else(|| Error::NotInImage(p.to_string()))?;
    Ok(ChartMatrix::from_point(&chart)?.max_exclusive_minor())
}

/// One row of an orbit table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub orbit_id: usize,
    /// Label from the reference catalogue, when the orbit is listed there.
    pub label: Option<String>,
    pub size: usize,
    /// Catalogue point when available, else the canonical representative.
    pub representative: ProjPoint,
    pub canonical: ProjPoint,
    pub observable: PauliPoint,
    pub t_rank: usize,
    pub in_image: bool,
    pub e_rank: Option<usize>,
    /// Generator mapping to `representative`, for image orbits.
    pub generator: Option<Generator>,
    /// Canonical basis of `generator`.
    pub commuting_set: Vec<PauliPoint>,
}

fn catalogue_match(strat: &Stratification, c: &KnownClass) -> Option<usize> {
    if let Some(p) = c.point() {
        return Some(strat.orbit_id(&p));
    }
    let same: Vec<&Orbit> = strat.orbits().iter().filter(|o| o.size == c.size).collect();
    (same.len() == 1).then(|| same[0].id)
}

/// Orbit table for `2 <= N <= 4`, one row per orbit in id order.
pub fn orbit_table(corr: &Correspondence) -> Result<Vec<TableRow>> {
    let n = corr.n_qubits();
    check_n("orbit table", n, 2, MAX_TABLE_QUBITS)?;
    let strat = Stratification::compute(n)?;
    let ranks = TRankTable::build(n)?;
    let image: HashSet<usize> = strat.image_orbits(corr)?.into_iter().collect();
    let known = known_classes(n);
    let mut rows = Vec::with_capacity(strat.orbits().len());
    for o in strat.orbits() {
        let class = known
            .iter()
            .find(|c| catalogue_match(&strat, c) == Some(o.id));
        let representative = class
            .and_then(|c| c.point())
            .unwrap_or_else(|| o.representative.clone());
        let in_image = image.contains(&o.id);
        let (generator, e, commuting_set) = if in_image {
            let g = corr.lift(&representative)?;
            let set = g.basis_operators();
            (Some(g), Some(e_rank(&representative, corr)?), set)
        } else {
            (None, None, Vec::new())
        };
        rows.push(TableRow {
            orbit_id: o.id,
            label: class.map(|c| c.label.to_string()),
            size: o.size,
            observable: to_observable(&representative),
            t_rank: ranks.rank(&representative),
            canonical: o.representative.clone(),
            representative,
            in_image,
            e_rank: e,
            generator,
            commuting_set,
        });
    }
    Ok(rows)
}
