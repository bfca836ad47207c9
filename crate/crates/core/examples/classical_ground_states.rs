//! Exhaustive ground states of the classical interaction on small tori, and
//! the transfer-matrix count of interaction-free configurations on larger
//! ones.
//!
//! ```text
//! cargo run --release --example classical_ground_states
//! ```

use fci::classical::{
    count_min_energy_configs_dp, enumerate_ground_states, CouplingConstants, Mode,
};
use fci::lattice::TorusLattice;

fn main() -> fci::Result<()> {
    let l4 = TorusLattice::new(4, 4)?;
    let couplings = CouplingConstants::new(10.0, 1.0)?;

    let quarter = enumerate_ground_states(&l4, 4, couplings, Mode::Numeric)?;
    println!(
        "4x4, n = 4: {} ground states at {:?}",
        quarter.degeneracy, quarter.min_pair_counts
    );
    for entry in &quarter.configurations {
        println!("  sector {:?}: sites {:?}", entry.sector.map(|s| s.to_string()), entry.sites);
    }

    let extra = enumerate_ground_states(&l4, 6, couplings, Mode::Lexicographic)?;
    println!(
        "4x4, n = 6 (g1 >> g2): {} ground states at {:?}",
        extra.degeneracy, extra.min_pair_counts
    );

    for l in [4, 8] {
        let lattice = TorusLattice::new(l, l)?;
        let n = l * l / 4;
        let count = count_min_energy_configs_dp(&lattice, n)?;
        println!("{l}x{l}, n = {n}: {count} interaction-free configurations");
    }
    Ok(())
}
