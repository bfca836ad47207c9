use num_complex::Complex64;

use super::basis::FockBasis;
use crate::classical::OccupationConfig;
use crate::lattice::TorusLattice;

fn phase(lattice: &TorusLattice, site: usize, q: (f64, f64)) -> Complex64 {
    let (x1, x2) = lattice.coords(crate::lattice::SiteIndex(site));
    Complex64::from_polar(1.0, q.0 * x1 as f64 + q.1 * x2 as f64)
}

/// `(1/N) |Σ_x e^{iQ·x} (n_x - ν)|²` for a classical configuration.
pub fn structure_factor_config(lattice: &TorusLattice, config: OccupationConfig, q: (f64, f64)) -> f64 {
    let n = lattice.num_sites();
    let nu = config.particles() as f64 / n as f64;
    let amplitude: Complex64 = (0..n)
        .map(|x| {
            let occ = if config.0 >> x & 1 == 1 { 1.0 } else { 0.0 };
            phase(lattice, x, q) * (occ - nu)
        })
        .sum();
    amplitude.norm_sqr() / n as f64
}

/// `(1/N) Σ_{x,y} e^{iQ·(x-y)} (<n_x n_y> - ν²)` for a diagonal ensemble of
/// configurations with the given weights (normalized internally).
pub fn correlated_structure_factor<I>(lattice: &TorusLattice, ensemble: I, q: (f64, f64)) -> f64
where
    I: IntoIterator<Item = (f64, OccupationConfig)>,
{
    let n = lattice.num_sites();
    let mut nn = vec![0.0; n * n];
    let mut weight = 0.0;
    let mut particles = 0.0;
    for (w, config) in ensemble {
        if w == 0.0 {
            continue;
        }
        weight += w;
        particles += w * config.particles() as f64;
        let occ: Vec<usize> = (0..n).filter(|&x| config.0 >> x & 1 == 1).collect();
        for &x in &occ {
            for &y in &occ {
                nn[x * n + y] += w;
            }
        }
    }
    if weight == 0.0 {
        return 0.0;
    }
    let nu = particles / weight / n as f64;
    let phases: Vec<Complex64> = (0..n).map(|x| phase(lattice, x, q)).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for x in 0..n {
        for y in 0..n {
            total += phases[x] * phases[y].conj() * (nn[x * n + y] / weight - nu * nu);
        }
    }
    total.re / n as f64
}

/// Correlated structure factor of an equal-weight mixture of eigenvectors
/// (a single vector for a pure state).
pub fn structure_factor_state(basis: &FockBasis, vectors: &[Vec<Complex64>], q: (f64, f64)) -> f64 {
    let ensemble = (0..basis.len()).map(|i| {
        let p: f64 = vectors.iter().map(|v| v[i].norm_sqr()).sum();
        (p, basis.state(i))
    });
    correlated_structure_factor(basis.lattice(), ensemble, q)
}
