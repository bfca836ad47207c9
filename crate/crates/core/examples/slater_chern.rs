//! Chern number of the half-filled Slater ground state over the torus of
//! boundary twists, for single sectors and the four-sector average.
//!
//! ```text
//! cargo run --release --example slater_chern
//! ```

use fci::chern::chern_plaquette;
use fci::composite::aligned_specs;
use fci::ed::{composite_many_body_chern, slater_chern, TwistGrid};
use fci::hk::{HkLatticeSize, HkParams};

fn main() -> fci::Result<()> {
    let size = HkLatticeSize::new(2, 4)?;
    let grid = TwistGrid::new(8)?;
    let half = size.dimension() / 2;
    for td in [1.0, -1.0, 0.25] {
        let p = HkParams::new(1.0, 1.0, td)?;
        println!(
            "td = {td:>5}: twist Chern {:>2}, band Chern {:>2}",
            slater_chern(&p, size, half, grid)?,
            chern_plaquette(&p, 24)?.chern
        );
    }
    let plus = HkParams::new(1.0, 1.0, 1.0)?;
    let minus = HkParams::new(1.0, 1.0, -1.0)?;
    let avg = composite_many_body_chern(&aligned_specs([plus, plus, plus, minus]), size, grid)?;
    println!("four-sector average {avg}");
    Ok(())
}
