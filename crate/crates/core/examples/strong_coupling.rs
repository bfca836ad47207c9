//! Low spectrum of the full interacting Hamiltonian on the 4x4 torus at
//! six fermions, compared level by level with the green-sublattice model.
//!
//! ```text
//! cargo run --release --example strong_coupling -- 1.0
//! ```
//!
//! The optional argument scales every hopping amplitude.

use fci::classical::CouplingConstants;
use fci::composite::aligned_specs;
use fci::ed::{build_many_body, effective_spectrum, low_spectrum, strong_coupling_scan};
use fci::hk::HkParams;
use fci::lattice::TorusLattice;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scale: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1.0);
    let lattice = TorusLattice::new(4, 4)?;
    let specs = aligned_specs([HkParams::new(1.0, 1.0, 0.5)?; 4]);
    let g2 = 5.0;

    let rows = strong_coupling_scan(&lattice, 6, &specs, g2, &[1e2, 1e3, 1e4], scale)?;
    for r in &rows {
        println!("g1 = {:>7}  max deviation {:.6e}", r.g1, r.max_deviation);
    }

    let scaled = specs.map(|s| s.scaled(scale));
    let predicted = effective_spectrum(&lattice, 6, &scaled, g2)?;
    let h = build_many_body(&lattice, 6, &scaled, &CouplingConstants::new(1e4, g2)?, (0.0, 0.0))?;
    let full = low_spectrum(&h, predicted.len())?;
    println!("{:>3} {:>14} {:>14}", "i", "full", "green model");
    for (i, (a, b)) in full.energies.iter().zip(&predicted).enumerate() {
        println!("{i:>3} {a:>14.9} {b:>14.9}");
    }
    for c in &full.clusters {
        println!("cluster at {:.6}: {} levels, splitting {:.2e}", c.energy, c.size, c.splitting);
    }
    Ok(())
}
