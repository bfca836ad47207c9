//! Hatsugai-Kohmoto bands: analytic spectrum against the real-space
//! matrix, the gap, and a band table written as CSV.
//!
//! ```text
//! cargo run --release --example hk_bands -- 1,1,0.5 bands.csv
//! ```

use std::fs::File;
use std::io::BufWriter;

use fci::hk::{
    analytic_spectrum, band_gap, hermitian_eigenvalues, realspace_hamiltonian, write_band_csv,
    HkLatticeSize, HkParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let params: HkParams = args.next().as_deref().unwrap_or("1,1,0.5").parse()?;
    let size = HkLatticeSize::new(4, 4)?;

    let real = hermitian_eigenvalues(&realspace_hamiltonian(&params, size, (0.0, 0.0)));
    let bloch = analytic_spectrum(&params, size);
    let deviation = real
        .iter()
        .zip(&bloch)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("{} real-space levels, max deviation from Bloch bands {deviation:.2e}", real.len());

    let gap = band_gap(&params, 64)?;
    println!("gap {:.6} at k = ({:.4}, {:.4})", gap.gap, gap.k.k1, gap.k.k2);

    if let Some(path) = args.next() {
        let mut out = BufWriter::new(File::create(&path)?);
        write_band_csv(&params, 64, &mut out)?;
        println!("wrote {path}");
    }
    Ok(())
}
