use serde::Serialize;

use super::hamiltonian::build_many_body;
use super::spectrum::low_spectrum;
use crate::classical::{interaction_pair_counts, CouplingConstants, OccupationConfig};
use crate::composite::{build_total_hopping, ordered_specs, SectorSpec};
use crate::error::{Error, Result};
use crate::hk::hermitian_eigenvalues;
use crate::lattice::TorusLattice;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub g1: f64,
    pub max_deviation: f64,
}

fn subset_sums(values: &[f64], k: usize) -> Vec<f64> {
    fn go(values: &[f64], k: usize, acc: f64, out: &mut Vec<f64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in 0..values.len() {
            if values.len() - i < k {
                break;
            }
            go(&values[i + 1..], k - 1, acc + values[i], out);
        }
    }
    let mut out = Vec::new();
    go(values, k, 0.0, &mut out);
    out
}

/// Levels predicted by freezing each sector's pattern and letting the extra
/// fermions hop freely on its green sublattice: the classical cost of
/// pattern plus green sites, the trace of the frozen block, and every
/// many-fermion level of the green block. Sorted ascending.
pub fn effective_spectrum(
    lattice: &TorusLattice,
    particles: usize,
    specs: &[SectorSpec; 4],
    g2: f64,
) -> Result<Vec<f64>> {
    let quarter = lattice.num_sites() / 4;
    if particles < quarter || particles - quarter > quarter {
        return Err(Error::InvalidParameter(format!(
            "{particles} particles cannot be one sector pattern plus green sites"
        )));
    }
    let extra = particles - quarter;
    let specs = ordered_specs(specs)?;
    let hopping = build_total_hopping(lattice, &specs, (0.0, 0.0))?;
    let mut out = Vec::new();
    for spec in &specs {
        let black = lattice.sublattice_sites(spec.sector);
        let green = lattice.sublattice_sites(spec.host());
        let probe = OccupationConfig::from_sites(black.iter().chain(&green[..extra]).copied());
        let counts = interaction_pair_counts(probe, lattice);
        if counts.m1 != 0 {
            return Err(Error::InvalidParameter("sector pattern carries U1/U3 pairs".into()));
        }
        let frozen = hopping.block(spec.sector).trace().re;
        let single = hermitian_eigenvalues(&hopping.block(spec.host()));
        let base = g2 * counts.m2 as f64 + frozen;
        out.extend(subset_sums(&single, extra).into_iter().map(|e| base + e));
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

pub fn is_strictly_decreasing(rows: &[ScanRow]) -> bool {
    rows.windows(2).all(|w| w[1].max_deviation < w[0].max_deviation)
}

/// Largest deviation between the lowest levels of the full Hamiltonian and
/// [`effective_spectrum`], for each `g1`. Hopping amplitudes are multiplied
/// by `t_scale`.
pub fn strong_coupling_scan(
    lattice: &TorusLattice,
    particles: usize,
    specs: &[SectorSpec; 4],
    g2: f64,
    g1_values: &[f64],
    t_scale: f64,
) -> Result<Vec<ScanRow>> {
    if lattice.width() != 4 || lattice.height() != 4 || particles != 6 {
        return Err(Error::InvalidParameter(
            "the convergence scan runs on the 4x4 torus with 6 particles".into(),
        ));
    }
    if !(t_scale.is_finite() && t_scale >= 0.0) {
        return Err(Error::InvalidParameter(format!("invalid hopping scale {t_scale}")));
    }
    if g1_values.is_empty() || g1_values.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("g1 values must be strictly ascending".into()));
    }
    let scaled: Vec<SectorSpec> = specs.iter().map(|s| s.scaled(t_scale)).collect();
    let scaled: [SectorSpec; 4] = scaled.try_into().expect("four specs");
    let t_max = scaled.iter().map(|s| s.params.max_abs()).fold(0.0, f64::max);
    let floor = 10.0 * (g2 + t_max);
    if let Some(&g1) = g1_values.iter().find(|&&g| g < floor) {
        return Err(Error::InvalidParameter(format!(
            "g1 = {g1} is below the strong-coupling floor 10 (g2 + max|t|) = {floor}"
        )));
    }
    let predicted = effective_spectrum(lattice, particles, &scaled, g2)?;
    let levels = predicted.len();
    g1_values
        .iter()
        .map(|&g1| {
            let couplings = CouplingConstants::new(g1, g2)?;
            let h = build_many_body(lattice, particles, &scaled, &couplings, (0.0, 0.0))?;
            let s = low_spectrum(&h, levels)?;
            let max_deviation = s
                .energies
                .iter()
                .zip(&predicted)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Ok(ScanRow { g1, max_deviation })
        })
        .collect()
}
