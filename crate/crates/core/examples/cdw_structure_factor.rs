//! Density structure factor of the classical sector patterns and of the
//! interacting quarter-filling ground multiplet on the 4x4 torus.
//!
//! ```text
//! cargo run --release --example cdw_structure_factor
//! ```

use std::f64::consts::PI;

use fci::classical::{CouplingConstants, OccupationConfig};
use fci::composite::aligned_specs;
use fci::ed::{
    build_many_body, correlated_structure_factor, low_spectrum_with, structure_factor_config,
    structure_factor_state, SpectrumOptions,
};
use fci::hk::HkParams;
use fci::lattice::{SublatticeId, TorusLattice};

fn main() -> fci::Result<()> {
    let lattice = TorusLattice::new(4, 4)?;
    let q = (PI, PI);
    let patterns: Vec<OccupationConfig> = SublatticeId::ALL
        .iter()
        .map(|&id| OccupationConfig::from_sites(lattice.sublattice_sites(id)))
        .collect();
    println!("S(pi, pi) of one pattern: {:.6}", structure_factor_config(&lattice, patterns[0], q));
    let mixture = correlated_structure_factor(&lattice, patterns.iter().map(|&c| (0.25, c)), q);
    println!("S(pi, pi) of the equal mixture: {mixture:.6}");

    let specs = aligned_specs([HkParams::new(0.2, 0.2, 0.1)?; 4]);
    let h = build_many_body(&lattice, 4, &specs, &CouplingConstants::new(20.0, 5.0)?, (0.0, 0.0))?;
    let options = SpectrumOptions {
        vectors: true,
        ..SpectrumOptions::default()
    };
    let spectrum = low_spectrum_with(&h, 8, &options)?;
    let ground = spectrum.ground_multiplet().expect("non-empty spectrum");
    let vectors = &spectrum.vectors.as_ref().expect("requested")[ground.start..ground.start + ground.size];
    println!(
        "ground multiplet: {} levels at {:.6}, gap {:.4}",
        ground.size,
        ground.energy,
        spectrum.gap().unwrap_or(f64::NAN)
    );
    for q in [(PI, PI), (PI, 0.0), (PI / 2.0, PI / 2.0)] {
        println!(
            "S({:.3}, {:.3}) = {:.6}",
            q.0,
            q.1,
            structure_factor_state(h.basis(), vectors, q)
        );
    }
    Ok(())
}
