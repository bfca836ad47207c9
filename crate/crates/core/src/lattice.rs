//! Periodic square tori, site indexing and the interaction displacement sets.
//!
//! Coordinates are 0-based: a site `(x1, x2)` with `0 <= x1 < W`,
//! `0 <= x2 < H` has linear index `x1 + W * x2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `W x H` square lattice with periodic boundaries in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusLattice {
    width: usize,
    height: usize,
}

/// Linear site index, `x1 + W * x2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SiteIndex(pub usize);

impl TorusLattice {
    /// Both sides must be even and at least 4.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        let reason = if width < 4 || height < 4 {
            Some("both sides must be at least 4")
        } else if width % 2 != 0 || height % 2 != 0 {
            Some("both sides must be even")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidLattice {
                width,
                height,
                reason,
            }),
            None => Ok(Self { width, height }),
        }
    }

    /// The `4L x 4L` torus.
    pub fn canonical(l: usize) -> Result<Self> {
        Self::new(4 * l, 4 * l)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn num_sites(&self) -> usize {
        self.width * self.height
    }

    pub fn is_canonical(&self) -> bool {
        self.width == self.height && self.width % 4 == 0
    }

    /// Wrapped site for arbitrary integer coordinates.
    pub fn site(&self, x1: i64, x2: i64) -> SiteIndex {
        let w = self.width as i64;
        let h = self.height as i64;
        SiteIndex((x1.rem_euclid(w) + w * x2.rem_euclid(h)) as usize)
    }

    pub fn coords(&self, site: SiteIndex) -> (usize, usize) {
        (site.0 % self.width, site.0 / self.width)
    }

    pub fn sites(&self) -> impl Iterator<Item = SiteIndex> {
        (0..self.num_sites()).map(SiteIndex)
    }

    /// `site + delta` with wrapping.
    pub fn shift(&self, site: SiteIndex, delta: (i64, i64)) -> SiteIndex {
        let (x1, x2) = self.coords(site);
        self.site(x1 as i64 + delta.0, x2 as i64 + delta.1)
    }

    /// Neighbors `site + delta` for every `delta` in `set`, in the set's
    /// order. Coincident neighbors on narrow tori are kept.
    pub fn neighbors(&self, site: SiteIndex, set: DisplacementSet) -> Vec<SiteIndex> {
        set.vectors().iter().map(|&d| self.shift(site, d)).collect()
    }

    /// Row-major list of the sites with parities `(a, b)`.
    pub fn sublattice_sites(&self, id: SublatticeId) -> Vec<SiteIndex> {
        let mut out = Vec::with_capacity(self.num_sites() / 4);
        for x2 in (id.b as usize..self.height).step_by(2) {
            for x1 in (id.a as usize..self.width).step_by(2) {
                out.push(SiteIndex(x1 + self.width * x2));
            }
        }
        out
    }

    pub fn sublattice_of(&self, site: SiteIndex) -> SublatticeId {
        let (x1, x2) = self.coords(site);
        SublatticeId::new((x1 % 2) as u8, (x2 % 2) as u8)
    }
}

const U1: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const U2: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
const U3: [(i64, i64); 8] = [
    (1, 2),
    (1, -2),
    (-1, 2),
    (-1, -2),
    (2, 1),
    (-2, 1),
    (2, -1),
    (-2, -1),
];

/// The three interaction displacement sets.
///
/// `U1` holds the nearest neighbors, `U2` the diagonals and `U3` the
/// knight-move vectors `±e1±2e2, ±e2±2e1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DisplacementSet {
    U1,
    U2,
    U3,
}

impl DisplacementSet {
    pub const ALL: [DisplacementSet; 3] = [Self::U1, Self::U2, Self::U3];

    pub fn vectors(self) -> &'static [(i64, i64)] {
        match self {
            Self::U1 => &U1,
            Self::U2 => &U2,
            Self::U3 => &U3,
        }
    }
}

/// Period-2 sublattice `{x : x1 = a, x2 = b (mod 2)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SublatticeId {
    pub a: u8,
    pub b: u8,
}

impl SublatticeId {
    /// The four sublattices in the order (0,0), (1,0), (0,1), (1,1).
    pub const ALL: [SublatticeId; 4] = [
        SublatticeId { a: 0, b: 0 },
        SublatticeId { a: 1, b: 0 },
        SublatticeId { a: 0, b: 1 },
        SublatticeId { a: 1, b: 1 },
    ];

    pub fn new(a: u8, b: u8) -> Self {
        assert!(a < 2 && b < 2, "sublattice parities must be 0 or 1");
        Self { a, b }
    }

    /// Position in [`SublatticeId::ALL`].
    pub fn ordinal(self) -> usize {
        (self.a + 2 * self.b) as usize
    }

    /// The sublattice offset by `(1, 1)`.
    pub fn diagonal_partner(self) -> Self {
        Self::new(1 - self.a, 1 - self.b)
    }
}

impl std::fmt::Display for SublatticeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}
