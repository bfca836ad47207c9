//! Sector Chern vectors, their exact average and the FCI / CDW label,
//! with translation symmetry of the assembled hopping matrix.
//!
//! ```text
//! cargo run --release --example composite_phase
//! ```

use fci::composite::{aligned_specs, composite_chern, ChernMethod};
use fci::hk::HkParams;
use fci::lattice::TorusLattice;

fn main() -> fci::Result<()> {
    let plus = HkParams::new(1.0, 1.0, 1.0)?;
    let minus = HkParams::new(1.0, 1.0, -1.0)?;
    let lattice = TorusLattice::new(8, 8)?;
    let cases = [
        ("three up, one down", [plus, plus, plus, minus]),
        ("all up", [plus; 4]),
        ("all down", [minus; 4]),
        ("two and two", [plus, minus, plus, minus]),
    ];
    for (name, params) in cases {
        let report = composite_chern(&aligned_specs(params), ChernMethod::Plaquette { grid: 24 }, Some(&lattice))?;
        let flags = report.translation_invariant.expect("lattice supplied");
        println!(
            "{name:<20} sigma {:?}  average {:>4}  {}  e1 {:<5} e2 {}",
            report.sigma, report.average.to_string(), report.phase, flags.e1, flags.e2
        );
    }
    Ok(())
}
