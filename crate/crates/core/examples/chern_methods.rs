//! The lower-band Chern number by link variables, by the closed form and by
//! the Berry-connection loop around the gauge vortex.
//!
//! ```text
//! cargo run --release --example chern_methods
//! ```

use fci::chern::{chern_analytic, chern_loop, chern_plaquette, curvature_map, LoopSpec};
use fci::hk::HkParams;

fn main() -> fci::Result<()> {
    let spec = LoopSpec::new(0.05, 2048)?;
    println!("{:>6} {:>6} {:>6} {:>10} {:>9} {:>12}", "t1", "t2", "td", "plaquette", "analytic", "loop");
    for (t1, t2, td) in [(1.0, 1.0, 1.0), (1.0, 1.0, -1.0), (-0.5, 2.0, 0.25), (1.0, 0.5, -2.0)] {
        let p = HkParams::new(t1, t2, td)?;
        let plaquette = chern_plaquette(&p, 24)?;
        let analytic = chern_analytic(&p)?;
        let looped = chern_loop(&p, &spec)?;
        println!(
            "{t1:>6} {t2:>6} {td:>6} {:>10} {analytic:>9} {looped:>12.6}",
            plaquette.chern
        );
    }

    let map = curvature_map(&HkParams::new(1.0, 1.0, 1.0)?, 24)?;
    let (peak, at) = map
        .field
        .iter()
        .enumerate()
        .fold((f64::MIN, 0), |acc, (i, &f)| if f > acc.0 { (f, i) } else { acc });
    let (k1, k2) = map.center(at / map.grid, at % map.grid);
    println!("curvature total {:.9}, peak {peak:.4} near ({k1:.3}, {k2:.3})", map.total);

    match chern_plaquette(&HkParams::new(1.0, 1.0, 0.0)?, 24) {
        Err(e) => println!("td = 0: {e}"),
        Ok(c) => println!("td = 0 unexpectedly gapped: {}", c.chern),
    }
    Ok(())
}
