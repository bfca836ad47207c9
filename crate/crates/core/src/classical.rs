//! Hopping-free interaction energetics, exact ground-state enumeration and
//! the sector / green-site structure of the classical ground states.

mod transfer;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DisplacementSet, SiteIndex, SublatticeId, TorusLattice};

pub use transfer::{count_min_energy_configs_dp, MAX_DP_WIDTH};

/// Largest torus an occupation mask can describe.
pub const MAX_SITES: usize = 128;

/// Default cap on the number of configurations enumerated by brute force.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Number of minimizers listed in a report by default.
pub const DEFAULT_LIST_CAP: usize = 64;

/// Occupation numbers of all sites, one bit per site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OccupationConfig(pub u128);

impl OccupationConfig {
    pub const EMPTY: Self = Self(0);

    pub fn from_sites<I: IntoIterator<Item = SiteIndex>>(sites: I) -> Self {
        let mut bits = 0u128;
        for s in sites {
            debug_assert!(s.0 < MAX_SITES);
            bits |= 1u128 << s.0;
        }
        Self(bits)
    }

    /// The fully occupied sublattice `id`.
    pub fn sublattice(lattice: &TorusLattice, id: SublatticeId) -> Self {
        Self::from_sites(lattice.sublattice_sites(id))
    }

    pub fn particles(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_occupied(&self, site: SiteIndex) -> bool {
        self.0 >> site.0 & 1 == 1
    }

    pub fn with(self, site: SiteIndex) -> Self {
        Self(self.0 | 1u128 << site.0)
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn occupied(&self) -> impl Iterator<Item = SiteIndex> + '_ {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(SiteIndex(i))
        })
    }

    /// Image under the torus translation by `delta`.
    pub fn translated(&self, lattice: &TorusLattice, delta: (i64, i64)) -> Self {
        Self::from_sites(self.occupied().map(|s| lattice.shift(s, delta)))
    }
}

pub(crate) fn check_sites(lattice: &TorusLattice) -> Result<()> {
    if lattice.num_sites() > MAX_SITES {
        return Err(Error::TooManySites {
            sites: lattice.num_sites(),
            max: MAX_SITES,
        });
    }
    Ok(())
}

/// Positive couplings `g1` (nearest-neighbor and knight-move pairs) and
/// `g2` (diagonal pairs).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingConstants {
    pub g1: f64,
    pub g2: f64,
}

impl CouplingConstants {
    pub fn new(g1: f64, g2: f64) -> Result<Self> {
        if !(g1 > 0.0 && g1.is_finite() && g2 > 0.0 && g2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "couplings must be positive and finite, got g1 = {g1}, g2 = {g2}"
            )));
        }
        Ok(Self { g1, g2 })
    }
}

/// Interacting pair multiplicities. `m1` counts pairs joined by a vector
/// of `U1 ∪ U3`, `m2` pairs joined by `U2`.
///
/// The derived ordering is lexicographic in `(m1, m2)`.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct PairCounts {
    pub m1: u64,
    pub m2: u64,
}

impl PairCounts {
    pub fn energy(&self, couplings: &CouplingConstants) -> f64 {
        couplings.g1 * self.m1 as f64 + couplings.g2 * self.m2 as f64
    }
}

impl std::ops::Add for PairCounts {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            m1: self.m1 + rhs.m1,
            m2: self.m2 + rhs.m2,
        }
    }
}

/// How ground states are ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Minimize `g1 m1 + g2 m2`.
    Numeric,
    /// Minimize `(m1, m2)` lexicographically, the `g1 >> g2` regime.
    Lexicographic,
}

/// Precomputed neighbor masks for fast pair counting on one lattice.
///
/// `masks1[x][k]` holds the sites reached from `x` by more than `k`
/// vectors of `U1 ∪ U3`, so a popcount sum reproduces the multiplicity.
#[derive(Debug, Clone)]
pub struct PairCounter {
    masks1: Vec<Vec<u128>>,
    masks2: Vec<Vec<u128>>,
}

fn multiplicity_masks(
    lattice: &TorusLattice,
    site: SiteIndex,
    sets: &[DisplacementSet],
) -> Vec<u128> {
    let mut mult = vec![0usize; lattice.num_sites()];
    for &set in sets {
        for y in lattice.neighbors(site, set) {
            mult[y.0] += 1;
        }
    }
    let top = mult.iter().copied().max().unwrap_or(0);
    (0..top)
        .map(|k| {
            mult.iter()
                .enumerate()
                .filter(|(_, &m)| m > k)
                .fold(0u128, |acc, (i, _)| acc | 1u128 << i)
        })
        .collect()
}

impl PairCounter {
    pub fn new(lattice: &TorusLattice) -> Result<Self> {
        check_sites(lattice)?;
        let masks1 = lattice
            .sites()
            .map(|s| multiplicity_masks(lattice, s, &[DisplacementSet::U1, DisplacementSet::U3]))
            .collect();
        let masks2 = lattice
            .sites()
            .map(|s| multiplicity_masks(lattice, s, &[DisplacementSet::U2]))
            .collect();
        Ok(Self { masks1, masks2 })
    }

    pub fn counts(&self, config: OccupationConfig) -> PairCounts {
        let mut twice1 = 0u64;
        let mut twice2 = 0u64;
        for x in config.occupied() {
            for m in &self.masks1[x.0] {
                twice1 += (config.0 & m).count_ones() as u64;
            }
            for m in &self.masks2[x.0] {
                twice2 += (config.0 & m).count_ones() as u64;
            }
        }
        debug_assert!(twice1 % 2 == 0 && twice2 % 2 == 0);
        PairCounts {
            m1: twice1 / 2,
            m2: twice2 / 2,
        }
    }
}

/// Pair counts of `config`, evaluated literally as the halved double sum
/// over sites and displacement vectors.
pub fn interaction_pair_counts(config: OccupationConfig, lattice: &TorusLattice) -> PairCounts {
    let mut twice = [0u64; 2];
    for x in config.occupied() {
        for set in DisplacementSet::ALL {
            let slot = usize::from(set == DisplacementSet::U2);
            for y in lattice.neighbors(x, set) {
                if config.is_occupied(y) {
                    twice[slot] += 1;
                }
            }
        }
    }
    PairCounts {
        m1: twice[0] / 2,
        m2: twice[1] / 2,
    }
}

/// The sublattice `config` occupies exactly, if any.
pub fn classify_sector(config: OccupationConfig, lattice: &TorusLattice) -> Option<SublatticeId> {
    SublatticeId::ALL
        .into_iter()
        .find(|&id| OccupationConfig::sublattice(lattice, id) == config)
}

/// Sites where extra fermions sit on top of the sector pattern paying only
/// diagonal contacts: the sublattice offset by `(1, 1)`.
pub fn green_sites(sector: SublatticeId, lattice: &TorusLattice) -> Vec<SiteIndex> {
    lattice.sublattice_sites(sector.diagonal_partner())
}

/// One listed minimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEntry {
    /// Bit mask as a decimal string (exact for up to 128 sites).
    pub mask: String,
    pub sites: Vec<(usize, usize)>,
    pub pair_counts: PairCounts,
    /// Sublattice for pure period-2 patterns.
    pub sector: Option<SublatticeId>,
    /// Sector pattern contained in the configuration, if any.
    pub contains_sector: Option<SublatticeId>,
}

/// Result of an exhaustive ground-state scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStateReport {
    pub width: usize,
    pub height: usize,
    pub particles: usize,
    pub mode: Mode,
    pub couplings: CouplingConstants,
    /// Smallest pair counts among the minimizers.
    pub min_pair_counts: PairCounts,
    pub min_energy: f64,
    /// Number of minimizers, independent of the list cap.
    pub degeneracy: u64,
    pub configurations_scanned: u128,
    pub list_cap: usize,
    pub truncated: bool,
    pub configurations: Vec<ConfigEntry>,
}

/// Exact binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Options for [`enumerate_ground_states_with`].
#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    pub budget: u128,
    pub list_cap: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            list_cap: DEFAULT_LIST_CAP,
        }
    }
}

pub fn enumerate_ground_states(
    lattice: &TorusLattice,
    n: usize,
    couplings: CouplingConstants,
    mode: Mode,
) -> Result<GroundStateReport> {
    enumerate_ground_states_with(lattice, n, couplings, mode, EnumerationOptions::default())
}

/// Minimum of one leading-bit partition.
struct Partial<K> {
    key: K,
    counts: PairCounts,
    count: u64,
    first: Vec<OccupationConfig>,
}

fn merge<K: PartialOrd + Copy>(a: Option<Partial<K>>, b: Partial<K>, cap: usize) -> Partial<K> {
    let Some(mut a) = a else { return b };
    if b.key < a.key {
        return b;
    }
    if b.key == a.key {
        a.count += b.count;
        a.counts = a.counts.min(b.counts);
        let room = cap.saturating_sub(a.first.len());
        a.first.extend(b.first.into_iter().take(room));
    }
    a
}

/// Visit every `k`-subset of the lowest `bits` bits in increasing order.
pub(crate) fn for_each_combination(bits: usize, k: usize, mut f: impl FnMut(u128)) {
    if k == 0 {
        f(0);
        return;
    }
    if k > bits {
        return;
    }
    let limit: u128 = if bits == 128 { u128::MAX } else { 1u128 << bits };
    let mut c: u128 = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
    loop {
        f(c);
        // Gosper's hack
        let u = c & c.wrapping_neg();
        let v = c.wrapping_add(u);
        if v == 0 {
            return;
        }
        c = v + (((v ^ c) / u) >> 2);
        if bits < 128 && c >= limit {
            return;
        }
    }
}

fn scan<K, F>(counter: &PairCounter, num_sites: usize, n: usize, cap: usize, key: F) -> Partial<K>
where
    K: PartialOrd + Copy + Send,
    F: Fn(PairCounts) -> K + Sync,
{
    let scan_part = |top: Option<usize>| -> Option<Partial<K>> {
        let mut best: Option<Partial<K>> = None;
        let (lower, k, high) = match top {
            Some(t) => (t, n - 1, 1u128 << t),
            None => (num_sites, n, 0),
        };
        for_each_combination(lower, k, |low| {
            let config = OccupationConfig(low | high);
            let counts = counter.counts(config);
            let kv = key(counts);
            match &mut best {
                None => {
                    best = Some(Partial {
                        key: kv,
                        counts,
                        count: 1,
                        first: vec![config],
                    })
                }
                Some(b) if kv < b.key => {
                    *b = Partial {
                        key: kv,
                        counts,
                        count: 1,
                        first: vec![config],
                    }
                }
                Some(b) if kv == b.key => {
                    b.count += 1;
                    b.counts = b.counts.min(counts);
                    if b.first.len() < cap {
                        b.first.push(config);
                    }
                }
                _ => {}
            }
        });
        best
    };
    if n == 0 {
        return scan_part(None).expect("empty configuration");
    }
    // Partition by the highest occupied site; partitions come back in
    // increasing mask order.
    let parts: Vec<Option<Partial<K>>> = (n - 1..num_sites)
        .into_par_iter()
        .map(|top| scan_part(Some(top)))
        .collect();
    parts
        .into_iter()
        .flatten()
        .fold(None, |acc, p| Some(merge(acc, p, cap)))
        .expect("at least one configuration")
}

fn contained_sector(config: OccupationConfig, lattice: &TorusLattice) -> Option<SublatticeId> {
    SublatticeId::ALL.into_iter().find(|&id| {
        let pattern = OccupationConfig::sublattice(lattice, id);
        config.0 & pattern.0 == pattern.0
    })
}

/// Exhaustive scan of all `n`-particle configurations.
pub fn enumerate_ground_states_with(
    lattice: &TorusLattice,
    n: usize,
    couplings: CouplingConstants,
    mode: Mode,
    options: EnumerationOptions,
) -> Result<GroundStateReport> {
    check_sites(lattice)?;
    let num_sites = lattice.num_sites();
    if n > num_sites {
        return Err(Error::InvalidParameter(format!(
            "{n} particles do not fit on {num_sites} sites"
        )));
    }
    let total = binomial(num_sites as u64, n as u64);
    if total > options.budget {
        return Err(Error::BudgetExceeded {
            configurations: total,
            budget: options.budget,
        });
    }
    let counter = PairCounter::new(lattice)?;
    let cap = options.list_cap;
    let (counts, count, first, energy) = match mode {
        Mode::Lexicographic => {
            let p = scan(&counter, num_sites, n, cap, |c| c);
            (p.counts, p.count, p.first, p.key.energy(&couplings))
        }
        Mode::Numeric => {
            let p = scan(&counter, num_sites, n, cap, |c| c.energy(&couplings));
            (p.counts, p.count, p.first, p.key)
        }
    };
    let configurations = first
        .into_iter()
        .map(|c| ConfigEntry {
            mask: c.0.to_string(),
            sites: c.occupied().map(|s| lattice.coords(s)).collect(),
            pair_counts: counter.counts(c),
            sector: classify_sector(c, lattice),
            contains_sector: contained_sector(c, lattice),
        })
        .collect::<Vec<_>>();
    Ok(GroundStateReport {
        width: lattice.width(),
        height: lattice.height(),
        particles: n,
        mode,
        couplings,
        min_pair_counts: counts,
        min_energy: energy,
        degeneracy: count,
        configurations_scanned: total,
        list_cap: cap,
        truncated: (count as usize) > configurations.len(),
        configurations,
    })
}
