//! Quadratic forms on `P^{2^N - 1}` and the quadrics cutting out the image
//! of the projection.
//!
//! Variables are the display coordinates `x_1, …, x_{2^N}` (see
//! [`crate::projection`]); internally they are 0-based positions.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{check_n, Error, Result};
use crate::gf2::{BinMat, BinVec};
use crate::orbits::{group_generators, GroupElem, MAX_TABLE_QUBITS};
use crate::par;
use crate::pauli::MAX_ENUM_QUBITS;
use crate::projection::{Correspondence, DisplayOrder, ProjPoint};

/// A homogeneous quadratic form over GF(2), as a set of monomials `x_i x_j`
/// with `i <= j` (0-based display positions). Squares are kept as monomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    n: usize,
    monomials: BTreeSet<(u16, u16)>,
}

fn monomial_index(i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    j * (j + 1) / 2 + i
}

fn monomial_count(n: usize) -> usize {
    let m = 1usize << n;
    m * (m + 1) / 2
}

impl QuadForm {
    pub fn zero(n: usize) -> Self {
        QuadForm {
            n,
            monomials: BTreeSet::new(),
        }
    }

    /// Sum of `x_a x_b` over the given 1-based display pairs; repeated
    /// monomials cancel.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        check_n("QuadForm", n, 1, MAX_ENUM_QUBITS)?;
        let m = 1usize << n;
        let mut q = QuadForm::zero(n);
        for &(a, b) in pairs {
            for v in [a, b] {
                if v == 0 || v > m {
                    return Err(Error::IndexOutOfRange { index: v, bound: m });
                }
            }
            q.toggle(a - 1, b - 1);
        }
        Ok(q)
    }

    fn toggle(&mut self, i: usize, j: usize) {
        let key = (i.min(j) as u16, i.max(j) as u16);
        if !self.monomials.remove(&key) {
            self.monomials.insert(key);
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn n_vars(&self) -> usize {
        1 << self.n
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Monomials as 1-based display pairs `(a, b)`, `a <= b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.monomials
            .iter()
            .map(|&(i, j)| (i as usize + 1, j as usize + 1))
            .collect()
    }

    pub fn add(&self, other: &QuadForm) -> QuadForm {
        assert_eq!(self.n, other.n);
        QuadForm {
            n: self.n,
            monomials: self
                .monomials
                .symmetric_difference(&other.monomials)
                .copied()
                .collect(),
        }
    }

    /// Value at the point whose display coordinate `k` is bit `k` of `display`.
    pub fn eval_display_mask(&self, display: u64) -> bool {
        self.monomials
            .iter()
            .filter(|&&(i, j)| display >> i & display >> j & 1 == 1)
            .count()
            % 2
            == 1
    }

    pub fn eval(&self, p: &ProjPoint) -> Result<bool> {
        if p.n_qubits() != self.n {
            return Err(Error::MixedQubitCounts {
                first: self.n,
                second: p.n_qubits(),
            });
        }
        Ok(self.eval_display_mask(p.display_mask()))
    }

    /// Coefficient vector over all monomials `x_i x_j`, `i <= j`.
    pub fn coefficients(&self) -> BinVec {
        let mut v = BinVec::zeros(monomial_count(self.n));
        for &(i, j) in &self.monomials {
            v.set(monomial_index(i as usize, j as usize), true);
        }
        v
    }

    fn from_coefficients(n: usize, v: &BinVec) -> Self {
        let m = 1usize << n;
        let mut q = QuadForm::zero(n);
        for j in 0..m {
            for i in 0..=j {
                if v.get(monomial_index(i, j)) {
                    q.monomials.insert((i as u16, j as u16));
                }
            }
        }
        q
    }

    /// `q ∘ L` for the linear map with columns `cols` (display masks):
    /// each `x_a` becomes `Σ_j L[a][j] x_j`.
    pub fn substitute(&self, cols: &[u64]) -> Result<QuadForm> {
        let m = self.n_vars();
        if cols.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: cols.len(),
            });
        }
        let row = |a: u16| -> Vec<usize> { (0..m).filter(|&j| cols[j] >> a & 1 == 1).collect() };
        let mut out = QuadForm::zero(self.n);
        for &(a, b) in &self.monomials {
            let (ra, rb) = (row(a), row(b));
            for &j in &ra {
                for &k in &rb {
                    out.toggle(j, k);
                }
            }
        }
        Ok(out)
    }

    /// `q ∘ g`, with `g` acting linearly on the coordinates.
    pub fn transform(&self, g: &GroupElem) -> QuadForm {
        assert_eq!(g.n_axes(), self.n);
        let order = DisplayOrder::get(self.n);
        let cols: Vec<u64> = (0..self.n_vars())
            .map(|j| order.to_display_mask(g.act_mask(1 << order.key_at(j))))
            .collect();
        self.substitute(&cols).expect("one column per variable")
    }
}

impl fmt::Display for QuadForm {
    /// `x2*x9 + x4*x11`, squares as `x3^2`, the zero form as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if a == b {
                write!(f, "x{a}^2")?;
            } else {
                write!(f, "x{a}*x{b}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ_k x_k x_{k+M}` with `M = 2^(N-1)`, pairing each display coordinate
/// with the one for the complementary subset.
pub fn hyperbolic_pairing(n: usize) -> Result<QuadForm> {
    check_n("hyperbolic_pairing", n, 1, MAX_ENUM_QUBITS)?;
    let half = 1usize << (n - 1);
    QuadForm::from_pairs(n, &(1..=half).map(|k| (k, k + half)).collect::<Vec<_>>())
}

const FOUR_QUBIT_QUADRICS: [(&str, [(usize, usize); 4]); 10] = [
    ("Q1", [(12, 13), (11, 14), (10, 15), (9, 16)]),
    ("Q2", [(1, 13), (2, 14), (3, 15), (4, 16)]),
    ("Q3", [(1, 11), (2, 12), (5, 15), (6, 16)]),
    ("Q4", [(4, 5), (3, 6), (2, 7), (1, 8)]),
    ("Q5", [(1, 10), (3, 12), (5, 14), (7, 16)]),
    ("Q6", [(5, 9), (6, 10), (7, 11), (8, 12)]),
    ("Q7", [(3, 9), (4, 10), (7, 13), (8, 14)]),
    ("Q8", [(2, 9), (4, 11), (6, 13), (8, 15)]),
    ("Q9", [(1, 9), (4, 12), (6, 14), (7, 15)]),
    ("Q10", [(2, 10), (3, 11), (5, 13), (8, 16)]),
];

/// The named quadrics defining the image: none for `N = 2`, the pairing
/// form `Q` for `N = 3`, and `Q1..Q10` for `N = 4`.
pub fn named_quadrics(n: usize) -> Result<Vec<(String, QuadForm)>> {
    check_n("named_quadrics", n, 2, MAX_TABLE_QUBITS)?;
    Ok(match n {
        2 => Vec::new(),
        3 => vec![("Q".to_string(), hyperbolic_pairing(3)?)],
        _ => FOUR_QUBIT_QUADRICS
            .iter()
            .map(|(name, pairs)| Ok((name.to_string(), QuadForm::from_pairs(4, pairs)?)))
            .collect::<Result<_>>()?,
    })
}

pub fn defining_quadrics(n: usize) -> Result<Vec<QuadForm>> {
    Ok(named_quadrics(n)?.into_iter().map(|(_, q)| q).collect())
}

/// Common zeros of `forms` in `P^{2^N - 1}`, sorted.
pub fn zero_set(n: usize, forms: &[QuadForm]) -> Result<Vec<ProjPoint>> {
    check_n("zero_set", n, 1, MAX_TABLE_QUBITS)?;
    if let Some(q) = forms.iter().find(|q| q.n != n) {
        return Err(Error::MixedQubitCounts {
            first: n,
            second: q.n,
        });
    }
    let order = DisplayOrder::get(n);
    let display = par::filter_range(1..1u64 << (1 << n), |d| {
        forms.iter().all(|q| !q.eval_display_mask(d))
    });
    let mut points: Vec<ProjPoint> = display
        .into_iter()
        .map(|d| ProjPoint::from_mask_unchecked(n, order.from_display_mask(d)))
        .collect();
    points.sort();
    Ok(points)
}

/// Comparison of the image with the common zero set of the defining quadrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyReport {
    pub n: usize,
    pub image_size: usize,
    pub zero_set_size: usize,
    /// Every image point satisfies every defining quadric.
    pub image_in_zero_set: bool,
    /// Every common zero lies in the image.
    pub zero_set_in_image: bool,
}

impl VarietyReport {
    pub fn equal(&self) -> bool {
        self.image_in_zero_set && self.zero_set_in_image
    }
}

pub fn verify_variety(corr: &Correspondence) -> Result<VarietyReport> {
    let n = corr.n_qubits();
    let forms = defining_quadrics(n)?;
    let zeros = zero_set(n, &forms)?;
    let image_in_zero_set = par::all(corr.points(), |p| {
        forms.iter().all(|q| !q.eval_display_mask(p.display_mask()))
    });
    let zero_set_in_image = zeros.iter().all(|p| corr.contains(p));
    Ok(VarietyReport {
        n,
        image_size: corr.image_size(),
        zero_set_size: zeros.len(),
        image_in_zero_set,
        zero_set_in_image,
    })
}

/// Basis of the quadratic forms vanishing at every point of `points`.
pub fn vanishing_quadrics(points: &[ProjPoint]) -> Result<Vec<QuadForm>> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidPoint {
            input: String::new(),
            reason: "empty point set".into(),
        });
    };
    let n = first.n_qubits();
    if let Some(p) = points.iter().find(|p| p.n_qubits() != n) {
        return Err(Error::MixedQubitCounts {
            first: n,
            second: p.n_qubits(),
        });
    }
    let m = 1usize << n;
    let rows = par::map(points, |p| {
        let d = p.display_mask();
        let mut v = BinVec::zeros(monomial_count(n));
        for j in (0..m).filter(|&j| d >> j & 1 == 1) {
            for i in (0..=j).filter(|&i| d >> i & 1 == 1) {
                v.set(monomial_index(i, j), true);
            }
        }
        v
    });
    let kernel = BinMat::from_rows(monomial_count(n), rows).kernel();
    Ok(kernel
        .rows()
        .iter()
        .map(|v| QuadForm::from_coefficients(n, v))
        .collect())
}

/// Dimension of the span of `forms`.
pub fn span_rank(forms: &[QuadForm]) -> usize {
    let Some(first) = forms.first() else { return 0 };
    BinMat::from_rows(
        monomial_count(first.n),
        forms.iter().map(QuadForm::coefficients).collect(),
    )
    .rank()
}

/// Whether `q` lies in the span of `forms`.
pub fn span_contains(forms: &[QuadForm], q: &QuadForm) -> bool {
    let mut with = forms.to_vec();
    with.push(q.clone());
    span_rank(&with) == span_rank(forms)
}

/// The quadric obtained from the Cayley hyperdeterminant construction on
/// axes 1..3, with the remaining axes `4..N` fixed to 1 in both factors of
/// every monomial. Gives the pairing form for `N = 3` and `Q8` for `N = 4`.
pub fn cayley_quadric(n: usize) -> Result<QuadForm> {
    check_n("cayley_quadric", n, 3, MAX_ENUM_QUBITS)?;
    let spectators: u32 = ((1u32 << n) - 1) & !0b111;
    let pairs = [
        (0b000, 0b111),
        (0b100, 0b011),
        (0b010, 0b101),
        (0b110, 0b001),
    ];
    let order = DisplayOrder::get(n);
    let display: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| {
            (
                order.position_of(a | spectators) + 1,
                order.position_of(b | spectators) + 1,
            )
        })
        .collect();
    QuadForm::from_pairs(n, &display)
}

/// The G-orbit of `q` under substitution, sorted.
pub fn quadric_orbit(q: &QuadForm) -> Vec<QuadForm> {
    let gens = group_generators(q.n);
    let mut seen = HashSet::from([q.clone()]);
    let mut queue = VecDeque::from([q.clone()]);
    while let Some(f) = queue.pop_front() {
        for g in &gens {
            let h = f.transform(g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<QuadForm> = seen.into_iter().collect();
    out.sort();
    out
}
