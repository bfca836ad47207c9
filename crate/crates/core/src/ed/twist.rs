use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::chern::{pairwise_sum, plaquette_field_with, round_total};
use crate::composite::{ordered_specs, SectorSpec};
use crate::error::{Error, Result};
use crate::hk::{realspace_hamiltonian, HkLatticeSize, HkParams};

/// Smallest twist grid accepted for Chern numbers.
pub const MIN_TWIST_GRID: usize = 6;

/// `n x n` boundary phases `(2π i / n, 2π j / n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwistGrid {
    pub n: usize,
}

impl TwistGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_TWIST_GRID {
            return Err(Error::InvalidParameter(format!(
                "twist grid needs at least {MIN_TWIST_GRID} points per side, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        let step = 2.0 * PI / self.n as f64;
        (step * i as f64, step * j as f64)
    }
}

/// Lowest `particles` orbitals of the twisted single-particle matrix.
fn occupied_orbitals(
    params: &HkParams,
    size: HkLatticeSize,
    particles: usize,
    twists: (f64, f64),
) -> Result<DMatrix<Complex64>> {
    let eig = SymmetricEigen::new(realspace_hamiltonian(params, size, twists));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    if particles > 0 && particles < order.len() {
        let gap = eig.eigenvalues[order[particles]] - eig.eigenvalues[order[particles - 1]];
        if !(gap > params.gap_threshold()) {
            return Err(Error::GapClosedAtTwist {
                theta1: twists.0,
                theta2: twists.1,
                gap,
            });
        }
    }
    let d = order.len();
    Ok(DMatrix::from_fn(d, particles, |r, c| eig.eigenvectors[(r, order[c])]))
}

/// Chern number of the `particles`-fermion Slater ground state over the
/// twist torus; links are determinants of occupied-orbital overlaps.
pub fn slater_chern(
    params: &HkParams,
    size: HkLatticeSize,
    particles: usize,
    grid: TwistGrid,
) -> Result<i64> {
    if size.columns() < 4 || size.l2 < 4 {
        return Err(Error::InvalidParameter(format!(
            "green lattice must be at least 4x4 sites, got {}x{}",
            size.columns(),
            size.l2
        )));
    }
    let d = size.dimension();
    if particles > d {
        return Err(Error::InvalidParameter(format!(
            "{particles} fermions exceed {d} orbitals"
        )));
    }
    if particles == 0 || particles == d {
        return Ok(0);
    }
    let n = grid.n;
    let states: Vec<DMatrix<Complex64>> = (0..n * n)
        .into_par_iter()
        .map(|idx| occupied_orbitals(params, size, particles, grid.point(idx / n, idx % n)))
        .collect::<Result<_>>()?;
    let field = plaquette_field_with(&states, n, |a, b| (a.adjoint() * b).determinant());
    Ok(round_total(pairwise_sum(&field) / (2.0 * PI))?.chern)
}

/// Average half-filling Slater Chern number of the four sectors.
pub fn composite_many_body_chern(
    specs: &[SectorSpec; 4],
    size: HkLatticeSize,
    grid: TwistGrid,
) -> Result<Ratio<i64>> {
    let specs = ordered_specs(specs)?;
    let mut total = 0;
    for spec in &specs {
        total += slater_chern(&spec.params, size, size.dimension() / 2, grid)?;
    }
    Ok(Ratio::new(total, 4))
}
