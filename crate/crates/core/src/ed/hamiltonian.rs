use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::FockBasis;
use crate::classical::{CouplingConstants, OccupationConfig, PairCounter};
use crate::composite::{build_total_hopping, SectorSpec};
use crate::error::{Error, Result};
use crate::lattice::TorusLattice;

/// Largest basis the dense path is asked to handle.
pub const DENSE_DIMENSION_LIMIT: u128 = 50_000;
/// Largest basis assembled at all.
pub const SPARSE_DIMENSION_LIMIT: u128 = 1_000_000;

/// Hermitian operator on a [`FockBasis`] in compressed-row form.
#[derive(Debug, Clone)]
pub struct ManyBodyHamiltonian {
    basis: FockBasis,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<Complex64>,
}

impl ManyBodyHamiltonian {
    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn nonzeros(&self) -> usize {
        self.values.len()
    }

    /// `(column, value)` entries of row `i`, columns ascending.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[r.clone()].binary_search(&j) {
            Ok(k) => self.values[r.start + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dimension()).map(|i| self.get(i, i).re).sum()
    }

    /// `out = H v`.
    pub fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.par_iter_mut().enumerate().for_each(|(i, o)| {
            *o = self.row(i).map(|(j, h)| h * v[j]).sum();
        });
    }

    /// Largest `|H_ij - conj(H_ji)|` over stored entries.
    pub fn hermiticity_defect(&self) -> f64 {
        (0..self.dimension())
            .flat_map(|i| self.row(i).map(move |(j, h)| (i, j, h)))
            .map(|(i, j, h)| (h - self.get(j, i).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let d = self.dimension();
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            for (j, h) in self.row(i) {
                m[(i, j)] = h;
            }
        }
        m
    }

    /// Restriction to the listed basis indices, in that order.
    pub(crate) fn dense_block(&self, indices: &[usize]) -> DMatrix<Complex64> {
        let local: std::collections::HashMap<usize, usize> =
            indices.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let mut m = DMatrix::zeros(indices.len(), indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (j, h) in self.row(i) {
                if let Some(&b) = local.get(&j) {
                    m[(a, b)] = h;
                }
            }
        }
        m
    }
}

/// Full Hamiltonian: four sector hopping copies plus both interaction terms.
pub fn build_many_body(
    lattice: &TorusLattice,
    particles: usize,
    specs: &[SectorSpec; 4],
    couplings: &CouplingConstants,
    twists: (f64, f64),
) -> Result<ManyBodyHamiltonian> {
    let hopping = build_total_hopping(lattice, specs, twists)?;
    build_from_hopping(lattice, particles, &hopping.matrix, couplings)
}

/// `Σ t_xy a_x† a_y + g1 H1 + g2 H2` for an arbitrary Hermitian `t`.
pub fn build_from_hopping(
    lattice: &TorusLattice,
    particles: usize,
    hopping: &DMatrix<Complex64>,
    couplings: &CouplingConstants,
) -> Result<ManyBodyHamiltonian> {
    let sites = lattice.num_sites();
    if hopping.nrows() != sites || hopping.ncols() != sites {
        return Err(Error::InvalidParameter(format!(
            "hopping matrix is {}x{}, lattice has {sites} sites",
            hopping.nrows(),
            hopping.ncols()
        )));
    }
    let basis = FockBasis::new(lattice, particles, SPARSE_DIMENSION_LIMIT)?;
    let counter = PairCounter::new(lattice)?;
    let zero = Complex64::new(0.0, 0.0);
    let targets: Vec<Vec<(usize, Complex64)>> = (0..sites)
        .map(|x| {
            (0..sites)
                .filter(|&y| y != x && hopping[(x, y)] != zero)
                .map(|y| (y, hopping[(x, y)]))
                .collect()
        })
        .collect();

    let rows: Vec<Vec<(usize, Complex64)>> = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let state = basis.state(i).0;
            let mut entries = Vec::new();
            let mut diag = Complex64::new(counter.counts(OccupationConfig(state)).energy(couplings), 0.0);
            for x in 0..sites {
                if state >> x & 1 == 0 {
                    continue;
                }
                diag += hopping[(x, x)];
                for &(y, t) in &targets[x] {
                    if state >> y & 1 == 1 {
                        continue;
                    }
                    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                    let between = (state >> (lo + 1)) & ((1u128 << (hi - lo - 1)) - 1);
                    let sign = if between.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    let column = state ^ (1u128 << x) ^ (1u128 << y);
                    let j = basis.index_of(OccupationConfig(column)).expect("same particle number");
                    entries.push((j, t * sign));
                }
            }
            entries.push((i, Complex64::new(diag.re, 0.0)));
            entries.sort_by_key(|e| e.0);
            // merge repeated columns
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(entries.len());
            for (j, h) in entries {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += h,
                    _ => merged.push((j, h)),
                }
            }
            merged
        })
        .collect();

    let mut row_ptr = Vec::with_capacity(rows.len() + 1);
    row_ptr.push(0);
    let mut cols = Vec::new();
    let mut values = Vec::new();
    for row in rows {
        for (j, h) in row {
            cols.push(j);
            values.push(h);
        }
        row_ptr.push(cols.len());
    }
    Ok(ManyBodyHamiltonian {
        basis,
        row_ptr,
        cols,
        values,
    })
}
