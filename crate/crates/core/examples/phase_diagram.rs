//! Gap and Chern number along a td sweep, computed in parallel and printed
//! in sweep order.
//!
//! ```text
//! cargo run --release --example phase_diagram
//! ```

use rayon::prelude::*;

use fci::chern::chern_plaquette;
use fci::hk::{band_gap, HkParams};

fn main() -> fci::Result<()> {
    let tds: Vec<f64> = (-8..=8).map(|i| i as f64 * 0.25).collect();
    let rows: Vec<(f64, f64, String)> = tds
        .par_iter()
        .map(|&td| {
            let p = HkParams::new(1.0, 1.0, td)?;
            let gap = band_gap(&p, 24)?.gap;
            let chern = match chern_plaquette(&p, 24) {
                Ok(c) => c.chern.to_string(),
                Err(_) => "gapless".to_string(),
            };
            Ok((td, gap, chern))
        })
        .collect::<fci::Result<_>>()?;
    println!("td,gap,chern");
    for (td, gap, chern) in rows {
        println!("{td},{gap:.6},{chern}");
    }
    Ok(())
}
