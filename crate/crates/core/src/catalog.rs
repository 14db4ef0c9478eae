//! Known orbit classes with tabulated invariants, used to label orbit
//! tables and as fixtures in tests.

use crate::error::Result;
use crate::pauli::{parse_label, PauliPoint};
use crate::projection::ProjPoint;

/// A labelled orbit. Classes without a `support` are identified by their
/// size, which must then be unique among the orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownClass {
    pub n: usize,
    pub label: &'static str,
    pub size: usize,
    /// 1-based display positions of the nonzero coordinates of a member.
    pub support: &'static [usize],
    pub observable: Option<&'static str>,
    pub t_rank: Option<usize>,
    pub e_rank: Option<usize>,
    /// A maximal commuting set mapping to the member.
    pub commuting_set: &'static [&'static str],
}

impl KnownClass {
    pub fn point(&self) -> Option<ProjPoint> {
        if self.support.is_empty() {
            return None;
        }
        let mut bits = vec![false; 1 << self.n];
        for &p in self.support {
            bits[p - 1] = true;
        }
        Some(ProjPoint::from_display_bits(self.n, &bits).expect("catalogue point is well formed"))
    }

    pub fn commuting_operators(&self) -> Result<Vec<PauliPoint>> {
        self.commuting_set.iter().map(|s| parse_label(s)).collect()
    }
}

#[allow(clippy::too_many_arguments)]
const fn class(
    n: usize,
    label: &'static str,
    size: usize,
    support: &'static [usize],
    observable: &'static str,
    t_rank: usize,
    e_rank: usize,
    commuting_set: &'static [&'static str],
) -> KnownClass {
    KnownClass {
        n,
        label,
        size,
        support,
        observable: Some(observable),
        t_rank: Some(t_rank),
        e_rank: Some(e_rank),
        commuting_set,
    }
}

const fn size_only(n: usize, label: &'static str, size: usize) -> KnownClass {
    KnownClass {
        n,
        label,
        size,
        support: &[],
        observable: None,
        t_rank: None,
        e_rank: None,
        commuting_set: &[],
    }
}

static TWO: [KnownClass; 2] = [
    class(2, "O1", 9, &[3], "XI", 1, 0, &["XI", "IX"]),
    class(2, "O2", 6, &[1, 3], "YI", 2, 1, &["ZX", "XZ"]),
];

static THREE: [KnownClass; 5] = [
    class(3, "O1", 27, &[5], "XIII", 1, 0, &["XII", "IXI", "IIX"]),
    class(3, "O2", 54, &[4, 7], "IIXZ", 2, 1, &["ZZI", "XXI", "IIX"]),
    size_only(3, "O3", 108),
    class(
        3,
        "O4",
        54,
        &[4, 6, 7],
        "IXXZ",
        3,
        1,
        &["XIX", "IXX", "ZZZ"],
    ),
    size_only(3, "O5", 12),
];

static FOUR: [KnownClass; 6] = [
    class(
        4,
        "O2",
        81,
        &[9],
        "XIIIIIII",
        1,
        0,
        &["XIII", "IXII", "IIXI", "IIIX"],
    ),
    class(
        4,
        "O3",
        324,
        &[10, 11],
        "IXXIIIII",
        2,
        1,
        &["XIII", "IXII", "IIZZ", "IIYY"],
    ),
    class(
        4,
        "O6",
        648,
        &[10, 11, 13],
        "IXXIXIII",
        3,
        1,
        &["XIII", "IZZZ", "IYYZ", "IYZY"],
    ),
    class(
        4,
        "O14",
        162,
        &[8, 10, 11, 13],
        "IXXIXIIZ",
        4,
        1,
        &["ZYYY", "YZYY", "YYZY", "YYYZ"],
    ),
    class(
        4,
        "O17",
        108,
        &[6, 7, 14, 15],
        "IIIIIYYI",
        4,
        2,
        &["XXII", "ZZII", "IIZZ", "IIYY"],
    ),
    class(
        4,
        "O18",
        972,
        &[6, 7, 9, 14, 15],
        "XIIIIYYI",
        4,
        2,
        &["XIZZ", "IXZZ", "ZZXI", "ZZIX"],
    ),
];

/// Reference classes for `n`; empty when none are recorded.
pub fn known_classes(n: usize) -> &'static [KnownClass] {
    match n {
        2 => &TWO,
        3 => &THREE,
        4 => &FOUR,
        _ => &[],
    }
}
