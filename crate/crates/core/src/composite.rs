//! Four-sector assembly: one Hatsugai-Kohmoto copy per period-2
//! sublattice, the sector Chern vector, its exact average and the
//! FCI / CDW classification.
//!
//! The copy attached to sector `(a, b)` lives on that sector's green
//! sublattice `(1-a, 1-b)`; the `(W/2) x (H/2)` sublattice is read as a
//! `2 L1 x L2` HK lattice with `L1 = W/4`, `L2 = H/2`. HK column `l`
//! sits at original column `x1 = a' + 2 ((l - origin) mod 2 L1)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::chern::{chern_analytic, chern_plaquette};
use crate::error::{Error, Result};
use crate::hk::{hermitize, hops, wrap, HkLatticeSize, HkParams};
use crate::lattice::{SiteIndex, SublatticeId, TorusLattice};

/// Mesh used by plaquette sector Chern numbers unless overridden.
pub const DEFAULT_SECTOR_GRID: usize = 24;

/// HK parameters of one sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorSpec {
    pub sector: SublatticeId,
    pub params: HkParams,
    /// HK column index of original sublattice column 0; aligned copies
    /// use 0.
    pub origin: usize,
}

impl SectorSpec {
    pub fn new(sector: SublatticeId, params: HkParams) -> Self {
        Self {
            sector,
            params,
            origin: 0,
        }
    }

    /// Sublattice carrying this sector's hopping copy.
    pub fn host(&self) -> SublatticeId {
        self.sector.diagonal_partner()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            params: self.params.scaled(factor),
            ..*self
        }
    }
}

/// Aligned specs for the four sectors in [`SublatticeId::ALL`] order.
pub fn aligned_specs(params: [HkParams; 4]) -> [SectorSpec; 4] {
    let mut out = [SectorSpec::new(SublatticeId::ALL[0], params[0]); 4];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = SectorSpec::new(SublatticeId::ALL[i], params[i]);
    }
    out
}

/// Specs sorted into [`SublatticeId::ALL`] order; every sector exactly once.
pub fn ordered_specs(specs: &[SectorSpec; 4]) -> Result<[SectorSpec; 4]> {
    let mut out = *specs;
    out.sort_by_key(|s| s.sector.ordinal());
    for (i, s) in out.iter().enumerate() {
        if s.sector.ordinal() != i {
            return Err(Error::InvalidParameter(
                "sector specs must cover each sublattice exactly once".into(),
            ));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChernMethod {
    Plaquette { grid: usize },
    Analytic,
}

/// Chern number of the half-filled HK copy of one sector.
pub fn sector_chern(spec: &SectorSpec, method: ChernMethod) -> Result<i64> {
    match method {
        ChernMethod::Plaquette { grid } => Ok(chern_plaquette(&spec.params, grid)?.chern),
        ChernMethod::Analytic => {
            crate::hk::require_gap(&spec.params)?;
            chern_analytic(&spec.params)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    /// Three sector Chern numbers agree and one differs: average ±1/2.
    #[serde(rename = "FCI")]
    Fci,
    /// All four agree: average ±1.
    #[serde(rename = "CDW")]
    Cdw,
    #[serde(rename = "OTHER")]
    Other,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::Fci => "FCI",
            Phase::Cdw => "CDW",
            Phase::Other => "OTHER",
        })
    }
}

pub fn classify_phase(sigma: &[i64; 4]) -> Phase {
    let sum: i64 = sigma.iter().sum();
    if sigma.iter().all(|&s| s == sigma[0]) {
        Phase::Cdw
    } else if sum.abs() == 2 {
        Phase::Fci
    } else {
        Phase::Other
    }
}

fn ratio_as_string<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationFlags {
    pub e1: bool,
    pub e2: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositeReport {
    /// Sector Chern numbers in [`SublatticeId::ALL`] order.
    pub sigma: [i64; 4],
    /// `Σσ / 4`, reduced; serialized as `"p/q"`.
    #[serde(serialize_with = "ratio_as_string")]
    pub average: Ratio<i64>,
    pub phase: Phase,
    pub translation_invariant: Option<TranslationFlags>,
}

/// Sector Chern vector, exact average and phase label. Translation flags
/// are filled in when a lattice is supplied.
pub fn composite_chern(
    specs: &[SectorSpec; 4],
    method: ChernMethod,
    lattice: Option<&TorusLattice>,
) -> Result<CompositeReport> {
    let specs = ordered_specs(specs)?;
    let mut sigma = [0i64; 4];
    for (slot, spec) in sigma.iter_mut().zip(&specs) {
        *slot = sector_chern(spec, method)?;
    }
    let translation_invariant = match lattice {
        Some(l) => {
            let m = build_total_hopping(l, &specs, (0.0, 0.0))?;
            Some(TranslationFlags {
                e1: translation_check(&m, (1, 0)),
                e2: translation_check(&m, (0, 1)),
            })
        }
        None => None,
    };
    Ok(CompositeReport {
        sigma,
        average: Ratio::new(sigma.iter().sum::<i64>(), 4),
        phase: classify_phase(&sigma),
        translation_invariant,
    })
}

/// Single-particle hopping on the whole torus.
#[derive(Debug, Clone, PartialEq)]
pub struct TotalHoppingMatrix {
    pub lattice: TorusLattice,
    pub matrix: DMatrix<Complex64>,
}

impl TotalHoppingMatrix {
    /// Restriction to one sublattice, sites in row-major order.
    pub fn block(&self, id: SublatticeId) -> DMatrix<Complex64> {
        let sites = self.lattice.sublattice_sites(id);
        DMatrix::from_fn(sites.len(), sites.len(), |i, j| {
            self.matrix[(sites[i].0, sites[j].0)]
        })
    }

    pub fn is_block_diagonal(&self) -> bool {
        let l = &self.lattice;
        l.sites().all(|x| {
            l.sites().all(|y| {
                l.sublattice_of(x) == l.sublattice_of(y) || self.matrix[(x.0, y.0)] == Complex64::new(0.0, 0.0)
            })
        })
    }
}

/// HK size of one sublattice copy on `lattice`.
pub fn embedded_size(lattice: &TorusLattice) -> Result<HkLatticeSize> {
    if lattice.width() % 4 != 0 || lattice.height() % 4 != 0 {
        return Err(Error::SizeNotEmbeddable {
            width: lattice.width(),
            height: lattice.height(),
        });
    }
    HkLatticeSize::new(lattice.width() / 4, lattice.height() / 2)
}

/// The four HK copies embedded with spacing 2. Hops crossing the torus
/// boundary in direction `a` pick up `e^{i θa}`.
pub fn build_total_hopping(
    lattice: &TorusLattice,
    specs: &[SectorSpec; 4],
    twists: (f64, f64),
) -> Result<TotalHoppingMatrix> {
    let size = embedded_size(lattice)?;
    let specs = ordered_specs(specs)?;
    let n = lattice.num_sites();
    let cols = size.columns() as i64;
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for spec in &specs {
        let host = spec.host();
        let origin = (spec.origin % size.columns()) as i64;
        let place = |p: usize, q: usize| -> SiteIndex {
            lattice.site(host.a as i64 + 2 * p as i64, host.b as i64 + 2 * q as i64)
        };
        for hop in hops(&spec.params, size) {
            let (l, n_row) = hop.from;
            let p = (l as i64 - origin).rem_euclid(cols);
            let p_target = p + (hop.to.0 - l as i64);
            let (pt, w1) = wrap(p_target, size.columns());
            let (qt, w2) = wrap(hop.to.1, size.l2);
            let phase = if w1 == 0 && w2 == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, w1 as f64 * twists.0 + w2 as f64 * twists.1)
            };
            let row = place(p as usize, n_row);
            let col = place(pt, qt);
            m[(row.0, col.0)] += hop.amplitude * phase;
        }
    }
    hermitize(&mut m);
    Ok(TotalHoppingMatrix {
        lattice: *lattice,
        matrix: m,
    })
}

/// Exact `P† M P == M` for the torus translation by `shift`.
pub fn translation_check(matrix: &TotalHoppingMatrix, shift: (i64, i64)) -> bool {
    let l = &matrix.lattice;
    let image: Vec<usize> = l.sites().map(|s| l.shift(s, shift).0).collect();
    l.sites().all(|x| {
        l.sites()
            .all(|y| matrix.matrix[(image[x.0], image[y.0])] == matrix.matrix[(x.0, y.0)])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hk::{hermitian_eigenvalues, realspace_hamiltonian};

    fn p(t1: f64, t2: f64, td: f64) -> HkParams {
        HkParams::new(t1, t2, td).unwrap()
    }

    fn mixed() -> [SectorSpec; 4] {
        aligned_specs([p(1.0, 1.0, 1.0), p(1.0, 1.0, 1.0), p(1.0, 1.0, 1.0), p(1.0, 1.0, -1.0)])
    }

    fn uniform(td: f64) -> [SectorSpec; 4] {
        aligned_specs([p(1.0, 1.0, td); 4])
    }

    fn l8() -> TorusLattice {
        TorusLattice::new(8, 8).unwrap()
    }

    #[test]
    fn sector_chern_examples() {
        let s = SectorSpec::new(SublatticeId::new(0, 0), p(1.0, 1.0, 1.0));
        for method in [ChernMethod::Analytic, ChernMethod::Plaquette { grid: 24 }] {
            assert_eq!(sector_chern(&s, method).unwrap(), 1);
            let flipped = SectorSpec::new(s.sector, p(1.0, 1.0, -1.0));
            assert_eq!(sector_chern(&flipped, method).unwrap(), -1);
            let gapless = SectorSpec::new(s.sector, p(1.0, 1.0, 0.0));
            assert!(sector_chern(&gapless, method).is_err());
        }
    }

    #[test]
    fn averages_are_exact() {
        let r = composite_chern(&mixed(), ChernMethod::Analytic, None).unwrap();
        assert_eq!(r.sigma, [1, 1, 1, -1]);
        assert_eq!(r.average, Ratio::new(1, 2));
        assert_eq!(r.phase, Phase::Fci);
        let r = composite_chern(&uniform(1.0), ChernMethod::Analytic, None).unwrap();
        assert_eq!(r.average, Ratio::from_integer(1));
        assert_eq!(r.phase, Phase::Cdw);
        let r = composite_chern(&uniform(-1.0), ChernMethod::Analytic, None).unwrap();
        assert_eq!(r.average, Ratio::from_integer(-1));
        assert_eq!(r.phase, Phase::Cdw);
    }

    #[test]
    fn phase_labels() {
        assert_eq!(classify_phase(&[-1, 1, 1, 1]), Phase::Fci);
        assert_eq!(classify_phase(&[-1, -1, 1, -1]), Phase::Fci);
        assert_eq!(classify_phase(&[1, -1, 1, -1]), Phase::Other);
        assert_eq!(classify_phase(&[-1; 4]), Phase::Cdw);
    }

    #[test]
    fn report_serializes_ratio_as_string() {
        let r = composite_chern(&mixed(), ChernMethod::Analytic, Some(&l8())).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["average"], "1/2");
        assert_eq!(v["phase"], "FCI");
        assert_eq!(v["sigma"], serde_json::json!([1, 1, 1, -1]));
        assert_eq!(v["translation_invariant"]["e1"], false);
    }

    #[test]
    fn specs_must_cover_all_sectors() {
        let mut s = mixed();
        s[1].sector = s[0].sector;
        assert!(composite_chern(&s, ChernMethod::Analytic, None).is_err());
    }

    #[test]
    fn total_hopping_shape() {
        let m = build_total_hopping(&l8(), &mixed(), (0.0, 0.0)).unwrap();
        assert_eq!(m.matrix.nrows(), 64);
        assert_eq!(m.matrix, m.matrix.adjoint());
        assert!(m.is_block_diagonal());
        for id in SublatticeId::ALL {
            assert_eq!(m.block(id).nrows(), 16);
        }
        let zero = build_total_hopping(&l8(), &aligned_specs([p(0.0, 0.0, 0.0); 4]), (0.0, 0.0)).unwrap();
        assert!(zero.matrix.iter().all(|z| *z == Complex64::new(0.0, 0.0)));
        assert!(matches!(
            build_total_hopping(&TorusLattice::new(6, 8).unwrap(), &mixed(), (0.0, 0.0)),
            Err(Error::SizeNotEmbeddable { .. })
        ));
    }

    #[test]
    fn twisted_total_hopping_stays_block_diagonal() {
        for l in [l8(), TorusLattice::new(4, 4).unwrap(), TorusLattice::new(8, 12).unwrap()] {
            let m = build_total_hopping(&l, &mixed(), (0.9, -2.1)).unwrap();
            assert_eq!(m.matrix, m.matrix.adjoint());
            assert!(m.is_block_diagonal());
        }
    }

    #[test]
    fn blocks_reproduce_realspace_spectrum() {
        for l in [l8(), TorusLattice::new(8, 4).unwrap(), TorusLattice::new(12, 8).unwrap()] {
            let size = embedded_size(&l).unwrap();
            let mut specs = mixed();
            specs[2].origin = 1;
            let m = build_total_hopping(&l, &specs, (0.3, 1.1)).unwrap();
            for spec in &specs {
                let block = hermitian_eigenvalues(&m.block(spec.host()));
                let reference = hermitian_eigenvalues(&realspace_hamiltonian(&spec.params, size, (0.3, 1.1)));
                for (a, b) in block.iter().zip(&reference) {
                    assert!((a - b).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn translation_symmetry() {
        let mixed_m = build_total_hopping(&l8(), &mixed(), (0.0, 0.0)).unwrap();
        assert!(!translation_check(&mixed_m, (1, 0)));
        assert!(!translation_check(&mixed_m, (0, 1)));
        let uniform_m = build_total_hopping(&l8(), &uniform(1.0), (0.0, 0.0)).unwrap();
        assert!(translation_check(&uniform_m, (0, 1)));
        // the HK copy is only invariant under two-column shifts
        assert!(!translation_check(&uniform_m, (1, 0)));
        assert!(translation_check(&uniform_m, (4, 0)));
        let zero = build_total_hopping(&l8(), &aligned_specs([p(0.0, 0.0, 0.0); 4]), (0.0, 0.0)).unwrap();
        assert!(translation_check(&zero, (1, 0)) && translation_check(&zero, (0, 1)));
    }

    #[test]
    fn mixed_specs_break_both_unit_translations_for_any_odd_sector() {
        for odd in 0..4 {
            let mut params = [p(1.0, 1.0, 1.0); 4];
            params[odd] = p(1.0, 1.0, -1.0);
            let specs = aligned_specs(params);
            let r = composite_chern(&specs, ChernMethod::Plaquette { grid: 24 }, Some(&l8())).unwrap();
            assert_eq!(r.phase, Phase::Fci);
            assert_eq!(r.translation_invariant, Some(TranslationFlags { e1: false, e2: false }));
        }
    }
}
