//! Chern number of the lower Hatsugai-Kohmoto band, three ways.
//!
//! * [`chern_plaquette`]: gauge-invariant link variables on a Brillouin-zone
//!   mesh, integer by construction.
//! * [`chern_loop`]: the Berry-connection line integral around the zero of
//!   the gauge-fixed eigenvector at `(π, π)`.
//! * [`chern_analytic`]: the closed form `sgn(td / t1)` for `t2 > 0`.
//!
//! Orientation: plaquettes are traversed `k -> k + e2 -> k + e1 + e2 ->
//! k + e1 -> k`. With this orientation the mesh total coincides with the
//! counter-clockwise loop integral `(1/2πi) ∮ A·dk` around the vortex of
//! the gauge `(B, -A - E)`, so all three routes share one sign convention.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hk::{bloch_components, lower_state, require_gap, BlochMomentum, HkParams};
use crate::output::fmt_float;

/// Largest rounding residue accepted for an integer Chern number.
pub const RESIDUE_TOLERANCE: f64 = 1e-6;

/// Smallest plaquette mesh.
pub const MIN_GRID: usize = 16;

/// Mesh momentum `-π + 2π (j + 1/2) / G`; never hits `±π` or `0`.
pub fn mesh_momentum(j: usize, grid: usize) -> f64 {
    -PI + 2.0 * PI * (j as f64 + 0.5) / grid as f64
}

/// Product of normalized overlaps around each plaquette, as a principal
/// argument in `(-π, π]`. `states[i * grid + j]` sits at
/// `(mesh(i), mesh(j))`.
pub(crate) fn plaquette_field(states: &[[Complex64; 2]], grid: usize) -> Vec<f64> {
    plaquette_field_with(states, grid, |a, b| a[0].conj() * b[0] + a[1].conj() * b[1])
}

/// [`plaquette_field`] for any state type, given its overlap `<a|b>`.
pub(crate) fn plaquette_field_with<T, F>(states: &[T], grid: usize, overlap: F) -> Vec<f64>
where
    T: Sync,
    F: Fn(&T, &T) -> Complex64 + Sync,
{
    let at = |i: usize, j: usize| &states[(i % grid) * grid + (j % grid)];
    let link = |a: &T, b: &T| {
        let z = overlap(a, b);
        z / z.norm()
    };
    (0..grid)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..grid).map(move |j| {
                let p = link(at(i, j), at(i, j + 1))
                    * link(at(i, j + 1), at(i + 1, j + 1))
                    * link(at(i + 1, j + 1), at(i + 1, j))
                    * link(at(i + 1, j), at(i, j));
                p.arg()
            })
        })
        .collect()
}

/// Fixed-order pairwise sum.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let (a, b) = values.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn mesh_states(params: &HkParams, grid: usize) -> Vec<[Complex64; 2]> {
    (0..grid * grid)
        .into_par_iter()
        .map(|idx| {
            let k = BlochMomentum::raw(mesh_momentum(idx / grid, grid), mesh_momentum(idx % grid, grid));
            lower_state(params, k)
                .normalized()
                .expect("half-offset mesh avoids the vortex")
        })
        .collect()
}

/// Integer Chern number with its rounding residue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaquetteChern {
    pub chern: i64,
    pub total: f64,
    pub residue: f64,
}

pub(crate) fn round_total(total: f64) -> Result<PlaquetteChern> {
    let chern = total.round();
    let residue = (total - chern).abs();
    if !(residue < RESIDUE_TOLERANCE) {
        return Err(Error::NonIntegerResidue { total, residue });
    }
    Ok(PlaquetteChern {
        chern: chern as i64,
        total,
        residue,
    })
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < MIN_GRID {
        return Err(Error::InvalidParameter(format!(
            "plaquette mesh needs at least {MIN_GRID} points per side, got {grid}"
        )));
    }
    Ok(())
}

/// Link-variable Chern number of the lower band on a `grid x grid` mesh.
pub fn chern_plaquette(params: &HkParams, grid: usize) -> Result<PlaquetteChern> {
    curvature_map(params, grid)?.chern()
}

/// `sgn(td / t1)`, valid for `t2 > 0`, `t1 != 0`, `td != 0`.
pub fn chern_analytic(params: &HkParams) -> Result<i64> {
    if !(params.t2 > 0.0) || params.t1 == 0.0 || params.td == 0.0 {
        return Err(Error::OutOfDerivedDomain);
    }
    Ok(if (params.td > 0.0) == (params.t1 > 0.0) {
        1
    } else {
        -1
    })
}

/// `A(k) = u† ∇u` for the normalized lower eigenvector `u`, using analytic
/// derivatives of `A(k)` and `B(k)`.
pub fn berry_connection(params: &HkParams, k: BlochMomentum) -> Result<[Complex64; 2]> {
    let state = lower_state(params, k);
    if state.norm <= 1e-12 || state.e_plus <= 1e-12 {
        return Err(Error::SingularPoint { k1: k.k1, k2: k.k2 });
    }
    let (a, b) = bloch_components(params, k);
    let e = state.e_plus;
    let (s1, c1) = (0.5 * k.k1).sin_cos();
    let (s2, c2) = k.k2.sin_cos();
    let phase = Complex64::from_polar(1.0, -0.5 * k.k1);
    let i = Complex64::i();

    let da = [0.0, -2.0 * params.t2 * s2];
    let db = [
        -0.5 * i * b + phase * Complex64::new(-params.t1 * s1, 2.0 * params.td * c1 * s2),
        phase * Complex64::new(0.0, 4.0 * params.td * s1 * c2),
    ];
    let mut out = [Complex64::new(0.0, 0.0); 2];
    let n2 = state.norm * state.norm;
    for mu in 0..2 {
        let de = (a * da[mu] + (b.conj() * db[mu]).re) / e;
        // v = (B, -A - E), dv = (dB, -dA - dE)
        let dbeta = -da[mu] - de;
        let overlap = state.alpha.conj() * db[mu] + state.beta.conj() * dbeta;
        let dn2 = 2.0 * (b.conj() * db[mu]).re + 2.0 * (a + e) * (da[mu] + de);
        let dn_over_n = 0.5 * dn2 / n2;
        out[mu] = overlap / n2 - dn_over_n;
    }
    Ok(out)
}

/// Ellipse `(ε cos θ, ε |t1/(4 td)| sin θ)` around `(π, π)` sampled at
/// `steps` equally spaced angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopSpec {
    pub epsilon: f64,
    pub steps: usize,
}

/// Loops larger than this may enclose features other than the vortex.
pub const MAX_LOOP_EPSILON: f64 = 0.2;

impl LoopSpec {
    pub fn new(epsilon: f64, steps: usize) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) || steps < 64 {
            return Err(Error::InvalidParameter(format!(
                "loop needs 0 < eps < 0.5 and steps >= 64, got eps = {epsilon}, steps = {steps}"
            )));
        }
        Ok(Self { epsilon, steps })
    }
}

/// `(1/2πi) ∮ A·dk` by the periodic trapezoid rule, counter-clockwise.
pub fn chern_loop(params: &HkParams, spec: &LoopSpec) -> Result<f64> {
    if params.td == 0.0 || params.t1 == 0.0 {
        return Err(Error::AspectUndefined {
            t1: params.t1,
            td: params.td,
        });
    }
    if !(params.t2 > 0.0) {
        return Err(Error::OutOfDerivedDomain);
    }
    if spec.epsilon > MAX_LOOP_EPSILON {
        return Err(Error::InvalidParameter(format!(
            "loop radius {} exceeds {MAX_LOOP_EPSILON}",
            spec.epsilon
        )));
    }
    let aspect = (params.t1 / (4.0 * params.td)).abs();
    let eps = spec.epsilon;
    let dtheta = 2.0 * PI / spec.steps as f64;
    let terms = (0..spec.steps)
        .map(|s| {
            let (sin, cos) = (dtheta * s as f64).sin_cos();
            let k = BlochMomentum::raw(PI + eps * cos, PI + eps * aspect * sin);
            let conn = berry_connection(params, k)?;
            let tangent = [-eps * sin, eps * aspect * cos];
            Ok(conn[0] * tangent[0] + conn[1] * tangent[1])
        })
        .collect::<Result<Vec<Complex64>>>()?;
    let integral: Complex64 = terms.iter().sum::<Complex64>() * dtheta;
    Ok((integral / (2.0 * PI * Complex64::i())).re)
}

/// Plaquette field strengths on the half-offset mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureMap {
    pub grid: usize,
    /// `field[i * grid + j]` is the plaquette with lower corner
    /// `(mesh(i), mesh(j))`.
    pub field: Vec<f64>,
    /// `Σ F / 2π`.
    pub total: f64,
}

impl CurvatureMap {
    /// Center of plaquette `(i, j)`, `-π + 2π (i + 1) / G`.
    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        let c = |x: usize| -PI + 2.0 * PI * (x as f64 + 1.0) / self.grid as f64;
        (c(i), c(j))
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.field[(i % self.grid) * self.grid + (j % self.grid)]
    }

    pub fn chern(&self) -> Result<PlaquetteChern> {
        round_total(self.total)
    }

    /// Rows `k1,k2,F` at plaquette centers.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "k1,k2,F")?;
        for i in 0..self.grid {
            for j in 0..self.grid {
                let (k1, k2) = self.center(i, j);
                writeln!(
                    out,
                    "{},{},{}",
                    fmt_float(k1),
                    fmt_float(k2),
                    fmt_float(self.at(i, j))
                )?;
            }
        }
        Ok(())
    }
}

pub fn curvature_map(params: &HkParams, grid: usize) -> Result<CurvatureMap> {
    check_grid(grid)?;
    require_gap(params)?;
    let states = mesh_states(params, grid);
    let field = plaquette_field(&states, grid);
    let total = pairwise_sum(&field) / (2.0 * PI);
    Ok(CurvatureMap { grid, field, total })
}
