//! The two-band Hatsugai-Kohmoto hopping model on a `2L1 x L2` square
//! lattice.
//!
//! Real-space sites are `(l, n)` with `0 <= l < 2 L1`, `0 <= n < L2` and
//! linear index `l + 2 L1 n`. Even columns `l = 2m` carry the `+t2`
//! vertical bonds and the `alpha` amplitude of the Bloch spinor, odd
//! columns `l = 2m + 1` carry `-t2` and `beta`. The diagonal hops are the
//! pure-imaginary `±i td`.

use std::f64::consts::PI;
use std::io::{self, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::output::fmt_float;

/// Gap below this fraction of `max |t|` counts as closed.
pub const GAP_TOLERANCE: f64 = 1e-8;

/// Hopping amplitudes: horizontal `t1`, alternating vertical `±t2`,
/// diagonal `i td`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HkParams {
    pub t1: f64,
    pub t2: f64,
    pub td: f64,
}

impl HkParams {
    pub fn new(t1: f64, t2: f64, td: f64) -> Result<Self> {
        if !(t1.is_finite() && t2.is_finite() && td.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "hopping amplitudes must be finite, got ({t1}, {t2}, {td})"
            )));
        }
        Ok(Self { t1, t2, td })
    }

    pub fn max_abs(&self) -> f64 {
        self.t1.abs().max(self.t2.abs()).max(self.td.abs())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            t1: self.t1 * factor,
            t2: self.t2 * factor,
            td: self.td * factor,
        }
    }

    /// Absolute gap threshold for these amplitudes.
    pub fn gap_threshold(&self) -> f64 {
        GAP_TOLERANCE * self.max_abs()
    }
}

impl std::str::FromStr for HkParams {
    type Err = Error;

    /// Parses `"t1,t2,td"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParameter(format!(
                "expected \"t1,t2,td\", got {s:?}"
            )));
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("not a number: {p:?}")))?;
        }
        Self::new(v[0], v[1], v[2])
    }
}

/// Crystal momentum `(k1, k2)` reduced to `[-π, π)`. `k1` is conjugate to
/// the two-site cell index, `k2` to the row index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochMomentum {
    pub k1: f64,
    pub k2: f64,
}

fn reduce(k: f64) -> f64 {
    let r = k - 2.0 * PI * ((k + PI) / (2.0 * PI)).floor();
    if r >= PI {
        r - 2.0 * PI
    } else {
        r
    }
}

impl BlochMomentum {
    pub fn new(k1: f64, k2: f64) -> Self {
        Self {
            k1: reduce(k1),
            k2: reduce(k2),
        }
    }

    /// Unreduced momentum, for evaluation exactly at `±π`.
    pub fn raw(k1: f64, k2: f64) -> Self {
        Self { k1, k2 }
    }
}

/// Bloch data at one momentum, in the gauge `(alpha, beta) = (B, -A - E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub a: f64,
    pub b: Complex64,
    pub e_minus: f64,
    pub e_plus: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub norm: f64,
}

impl BlochState {
    /// The gauge-fixed vector vanishes (only at `(π, π)` for `t2 > 0`).
    pub fn is_singular(&self) -> bool {
        self.norm < 1e-12
    }

    /// Unit-norm lower eigenvector, `None` at the singular point.
    pub fn normalized(&self) -> Option<[Complex64; 2]> {
        if self.is_singular() {
            None
        } else {
            Some([self.alpha / self.norm, self.beta / self.norm])
        }
    }
}

/// `A(k) = 2 t2 cos k2` and
/// `B(k) = e^{-i k1/2} (2 t1 cos(k1/2) + 4 i td sin(k1/2) sin k2)`.
pub fn bloch_components(params: &HkParams, k: BlochMomentum) -> (f64, Complex64) {
    let a = 2.0 * params.t2 * k.k2.cos();
    let (s, c) = (0.5 * k.k1).sin_cos();
    let inner = Complex64::new(2.0 * params.t1 * c, 4.0 * params.td * s * k.k2.sin());
    (a, Complex64::from_polar(1.0, -0.5 * k.k1) * inner)
}

/// `(E-, E+) = (-√(A² + |B|²), +√(A² + |B|²))`.
pub fn band_energies(params: &HkParams, k: BlochMomentum) -> (f64, f64) {
    let (a, b) = bloch_components(params, k);
    let e = a.hypot(b.norm());
    (-e, e)
}

pub fn lower_state(params: &HkParams, k: BlochMomentum) -> BlochState {
    let (a, b) = bloch_components(params, k);
    let e = a.hypot(b.norm());
    let alpha = b;
    let beta = Complex64::new(-a - e, 0.0);
    BlochState {
        a,
        b,
        e_minus: -e,
        e_plus: e,
        alpha,
        beta,
        norm: (alpha.norm_sqr() + beta.norm_sqr()).sqrt(),
    }
}

/// The 2x2 Bloch matrix `[[A, B], [B*, -A]]`.
pub fn bloch_matrix(params: &HkParams, k: BlochMomentum) -> [[Complex64; 2]; 2] {
    let (a, b) = bloch_components(params, k);
    [
        [Complex64::new(a, 0.0), b],
        [b.conj(), Complex64::new(-a, 0.0)],
    ]
}

/// Minimal direct gap and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub gap: f64,
    pub k: BlochMomentum,
}

fn gap_at(params: &HkParams, k1: f64, k2: f64) -> f64 {
    2.0 * band_energies(params, BlochMomentum::raw(k1, k2)).1
}

/// Minimum of `2√(A² + |B|²)` on a `grid x grid` mesh through `(-π, -π)`,
/// followed by a shrinking pattern search around the mesh minimizer.
pub fn band_gap(params: &HkParams, grid: usize) -> Result<GapReport> {
    if grid < 16 {
        return Err(Error::InvalidParameter(format!(
            "gap mesh needs at least 16 points per side, got {grid}"
        )));
    }
    let step = 2.0 * PI / grid as f64;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..grid {
        let k1 = -PI + step * i as f64;
        for j in 0..grid {
            let k2 = -PI + step * j as f64;
            let g = gap_at(params, k1, k2);
            if g < best.0 {
                best = (g, k1, k2);
            }
        }
    }
    let mut h = step;
    while h > 1e-12 {
        let (_, c1, c2) = best;
        for d1 in [-1.0, 0.0, 1.0] {
            for d2 in [-1.0, 0.0, 1.0] {
                let (k1, k2) = (c1 + d1 * h, c2 + d2 * h);
                let g = gap_at(params, k1, k2);
                if g < best.0 {
                    best = (g, k1, k2);
                }
            }
        }
        h *= 0.5;
    }
    Ok(GapReport {
        gap: best.0,
        k: BlochMomentum::new(best.1, best.2),
    })
}

/// Gap report, or [`Error::GaplessRefusal`] when the gap is below
/// [`HkParams::gap_threshold`].
pub fn require_gap(params: &HkParams) -> Result<GapReport> {
    let report = band_gap(params, 64)?;
    let threshold = params.gap_threshold();
    if !(report.gap > threshold) {
        return Err(Error::GaplessRefusal {
            gap: report.gap,
            threshold,
        });
    }
    Ok(report)
}

/// Real-space lattice of `2 L1 x L2` sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HkLatticeSize {
    pub l1: usize,
    pub l2: usize,
}

impl HkLatticeSize {
    pub fn new(l1: usize, l2: usize) -> Result<Self> {
        if l1 == 0 || l2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "HK lattice needs L1, L2 >= 1, got ({l1}, {l2})"
            )));
        }
        Ok(Self { l1, l2 })
    }

    pub fn columns(&self) -> usize {
        2 * self.l1
    }

    pub fn dimension(&self) -> usize {
        2 * self.l1 * self.l2
    }

    pub fn index(&self, l: usize, n: usize) -> usize {
        l + self.columns() * n
    }

    /// Allowed momenta `(2πj/L1, 2πl/L2)` for zero twist.
    pub fn momentum_grid(&self) -> Vec<BlochMomentum> {
        let mut out = Vec::with_capacity(self.l1 * self.l2);
        for j in 0..self.l1 {
            for l in 0..self.l2 {
                out.push(BlochMomentum::new(
                    2.0 * PI * j as f64 / self.l1 as f64,
                    2.0 * PI * l as f64 / self.l2 as f64,
                ));
            }
        }
        out
    }
}

/// One hop `row <- col` with amplitude, before boundary phases.
pub(crate) struct Hop {
    /// Source site `(l, n)`.
    pub from: (usize, usize),
    /// Raw target coordinates, possibly outside the fundamental domain.
    pub to: (i64, i64),
    pub amplitude: Complex64,
}

/// Every term of the two single-particle Schrödinger equations, read as
/// `H[(l, n), target] += amplitude`.
pub(crate) fn hops(params: &HkParams, size: HkLatticeSize) -> Vec<Hop> {
    let t1 = Complex64::new(params.t1, 0.0);
    let t2 = Complex64::new(params.t2, 0.0);
    let itd = Complex64::new(0.0, params.td);
    let mut out = Vec::with_capacity(8 * size.dimension());
    for n in 0..size.l2 {
        for m in 0..size.l1 {
            let ni = n as i64;
            // even column, odd site 2m-1 in 1-based labels
            let l = 2 * m;
            let li = l as i64;
            let even: [((i64, i64), Complex64); 8] = [
                ((li - 1, ni), t1),
                ((li + 1, ni), t1),
                ((li, ni - 1), t2),
                ((li, ni + 1), t2),
                ((li - 1, ni - 1), -itd),
                ((li + 1, ni + 1), -itd),
                ((li + 1, ni - 1), itd),
                ((li - 1, ni + 1), itd),
            ];
            for (to, amplitude) in even {
                out.push(Hop {
                    from: (l, n),
                    to,
                    amplitude,
                });
            }
            // odd column, even site 2m in 1-based labels
            let l = 2 * m + 1;
            let li = l as i64;
            let odd: [((i64, i64), Complex64); 8] = [
                ((li - 1, ni), t1),
                ((li + 1, ni), t1),
                ((li, ni + 1), -t2),
                ((li, ni - 1), -t2),
                ((li - 1, ni - 1), itd),
                ((li + 1, ni + 1), itd),
                ((li + 1, ni - 1), -itd),
                ((li - 1, ni + 1), -itd),
            ];
            for (to, amplitude) in odd {
                out.push(Hop {
                    from: (l, n),
                    to,
                    amplitude,
                });
            }
        }
    }
    out
}

/// Wrapped coordinate and number of boundary crossings (signed).
pub(crate) fn wrap(x: i64, period: usize) -> (usize, i64) {
    let p = period as i64;
    (x.rem_euclid(p) as usize, x.div_euclid(p))
}

/// Make `m` exactly Hermitian by averaging with its adjoint.
pub(crate) fn hermitize(m: &mut DMatrix<Complex64>) {
    let d = m.nrows();
    for i in 0..d {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in i + 1..d {
            let upper = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = upper;
            m[(j, i)] = upper.conj();
        }
    }
}

/// Single-particle Hamiltonian with periodic boundaries. A hop whose target
/// lies across the boundary in direction `a` picks up `e^{i θa}` per
/// crossing.
pub fn realspace_hamiltonian(
    params: &HkParams,
    size: HkLatticeSize,
    twists: (f64, f64),
) -> DMatrix<Complex64> {
    let d = size.dimension();
    let mut h = DMatrix::<Complex64>::zeros(d, d);
    for hop in hops(params, size) {
        let (l, w1) = wrap(hop.to.0, size.columns());
        let (n, w2) = wrap(hop.to.1, size.l2);
        let phase = if w1 == 0 && w2 == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::from_polar(1.0, w1 as f64 * twists.0 + w2 as f64 * twists.1)
        };
        let row = size.index(hop.from.0, hop.from.1);
        let col = size.index(l, n);
        h[(row, col)] += hop.amplitude * phase;
    }
    hermitize(&mut h);
    h
}

/// Sorted eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Analytic band energies on the allowed momentum grid, sorted.
pub fn analytic_spectrum(params: &HkParams, size: HkLatticeSize) -> Vec<f64> {
    let mut v: Vec<f64> = size
        .momentum_grid()
        .into_iter()
        .flat_map(|k| {
            let (lo, hi) = band_energies(params, k);
            [lo, hi]
        })
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Band-structure table `k1,k2,E-,E+` on a `grid x grid` mesh through
/// `(-π, -π)`.
pub fn write_band_csv<W: Write>(params: &HkParams, grid: usize, out: &mut W) -> io::Result<()> {
    writeln!(out, "k1,k2,E-,E+")?;
    let step = 2.0 * PI / grid as f64;
    for i in 0..grid {
        let k1 = -PI + step * i as f64;
        for j in 0..grid {
            let k2 = -PI + step * j as f64;
            let (lo, hi) = band_energies(params, BlochMomentum::raw(k1, k2));
            writeln!(
                out,
                "{},{},{},{}",
                fmt_float(k1),
                fmt_float(k2),
                fmt_float(lo),
                fmt_float(hi)
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t1: f64, t2: f64, td: f64) -> HkParams {
        HkParams::new(t1, t2, td).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn components_at_special_points() {
        let q = p(1.0, 1.0, 1.0);
        let (a, b) = bloch_components(&q, BlochMomentum::raw(0.0, 0.0));
        assert!((a - 2.0).abs() < 1e-15 && close(b, Complex64::new(2.0, 0.0)));
        let (a, b) = bloch_components(&q, BlochMomentum::raw(PI, PI));
        assert!((a + 2.0).abs() < 1e-14 && b.norm() < 1e-14);
        let (a, b) = bloch_components(&q, BlochMomentum::raw(PI, 0.0));
        assert!((a - 2.0).abs() < 1e-14 && b.norm() < 1e-14);
    }

    #[test]
    fn energies() {
        let q = p(1.0, 1.0, 1.0);
        let (lo, hi) = band_energies(&q, BlochMomentum::raw(0.0, 0.0));
        assert!((hi - 2.0 * 2f64.sqrt()).abs() < 1e-14 && lo == -hi);
        let (lo, hi) = band_energies(&q, BlochMomentum::raw(PI, PI));
        assert!((hi - 2.0).abs() < 1e-14 && lo == -hi);
        let q = p(1.0, 1.0, 0.5);
        for i in 0..20 {
            let k = BlochMomentum::new(0.37 * i as f64, -0.91 * i as f64);
            let (lo, hi) = band_energies(&q, k);
            assert_eq!(lo, -hi);
            assert!(lo <= 0.0 && hi >= 0.0);
        }
    }

    #[test]
    fn lower_state_examples() {
        let q = p(1.0, 1.0, 1.0);
        assert!(lower_state(&q, BlochMomentum::raw(PI, PI)).is_singular());
        let s = lower_state(&q, BlochMomentum::raw(0.0, 0.0));
        let r2 = 2f64.sqrt();
        assert!(close(s.alpha, Complex64::new(2.0, 0.0)));
        assert!(close(s.beta, Complex64::new(-2.0 - 2.0 * r2, 0.0)));
        let s = lower_state(&q, BlochMomentum::raw(0.0, PI));
        assert!(close(s.alpha, Complex64::new(2.0, 0.0)));
        assert!(close(s.beta, Complex64::new(2.0 - 2.0 * r2, 0.0)));
        assert!(s.norm > 0.0);
    }

    #[test]
    fn lower_state_is_an_eigenvector() {
        let q = p(0.7, 1.3, -0.4);
        for i in 0..50 {
            let k = BlochMomentum::new(0.123 * i as f64, 0.456 * i as f64 - 1.0);
            let s = lower_state(&q, k);
            let m = bloch_matrix(&q, k);
            let v = [s.alpha, s.beta];
            for r in 0..2 {
                let hv = m[r][0] * v[0] + m[r][1] * v[1];
                assert!((hv - v[r] * s.e_minus).norm() < 1e-12 * (1.0 + s.norm));
            }
            let n2 = s.alpha.norm_sqr() + s.beta.norm_sqr();
            assert!((s.norm * s.norm - n2).abs() < 1e-12 * (1.0 + n2));
        }
    }

    #[test]
    fn reduction_to_fundamental_domain() {
        let k = BlochMomentum::new(3.0 * PI, -PI);
        assert!((k.k1 + PI).abs() < 1e-12);
        assert!((k.k2 + PI).abs() < 1e-12);
        let k = BlochMomentum::new(0.5, 2.0 * PI + 0.25);
        assert!((k.k1 - 0.5).abs() < 1e-15 && (k.k2 - 0.25).abs() < 1e-12);
    }

    #[test]
    fn gap_closures() {
        let g = band_gap(&p(1.0, 1.0, 0.0), 64).unwrap();
        assert!(g.gap < 1e-10);
        assert!((g.k.k1.abs() - PI).abs() < 1e-6);
        assert!((g.k.k2.abs() - PI / 2.0).abs() < 1e-6);
        let g = band_gap(&p(1.0, 0.0, 1.0), 64).unwrap();
        assert!(g.gap < 1e-10);
        assert!((g.k.k1.abs() - PI).abs() < 1e-6 && g.k.k2.abs() < 1e-6);
        assert!(band_gap(&p(1.0, 1.0, 1.0), 8).is_err());
    }

    #[test]
    fn gap_matches_dense_scan() {
        // dense-scan oracle, independent of the refinement pass
        let q = p(1.0, 1.0, 1.0);
        let n = 1024;
        let mut oracle = f64::INFINITY;
        for i in 0..n {
            for j in 0..n {
                let k1 = -PI + 2.0 * PI * i as f64 / n as f64;
                let k2 = -PI + 2.0 * PI * j as f64 / n as f64;
                oracle = oracle.min(2.0 * band_energies(&q, BlochMomentum::raw(k1, k2)).1);
            }
        }
        let g = band_gap(&q, 64).unwrap();
        assert!(g.gap <= 4.0 + 1e-12);
        assert!(g.gap <= oracle + 1e-9);
        assert!(oracle - g.gap < 1e-4);
    }

    #[test]
    fn gap_positive_when_all_amplitudes_nonzero() {
        for t1 in [-1.5, -0.5, 0.5, 1.5] {
            for t2 in [0.25, 1.0, 3.0] {
                for td in [-2.0, -0.1, 0.1, 2.0] {
                    let g = band_gap(&p(t1, t2, td), 32).unwrap();
                    assert!(g.gap > 1e-3, "({t1},{t2},{td}) gap {}", g.gap);
                }
            }
        }
    }

    #[test]
    fn realspace_is_hermitian() {
        for (l1, l2) in [(1, 1), (1, 2), (2, 2), (3, 5)] {
            let size = HkLatticeSize::new(l1, l2).unwrap();
            let h = realspace_hamiltonian(&p(0.3, -1.1, 0.7), size, (0.4, 1.9));
            assert_eq!(h.nrows(), 2 * l1 * l2);
            assert_eq!(h, h.adjoint());
        }
    }

    #[test]
    fn realspace_matches_bloch_bands() {
        for (l1, l2) in [(1, 1), (2, 3), (4, 4), (3, 8), (8, 5)] {
            let size = HkLatticeSize::new(l1, l2).unwrap();
            for q in [p(1.0, 1.0, 1.0), p(1.0, 1.0, 0.5), p(-0.5, 2.0, -0.25)] {
                let h = realspace_hamiltonian(&q, size, (0.0, 0.0));
                let num = hermitian_eigenvalues(&h);
                let ana = analytic_spectrum(&q, size);
                for (x, y) in num.iter().zip(&ana) {
                    assert!((x - y).abs() < 1e-10, "{l1}x{l2}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn twisted_spectrum_follows_shifted_momenta() {
        let size = HkLatticeSize::new(3, 4).unwrap();
        let q = p(1.0, 0.8, 0.6);
        let (th1, th2) = (0.7, -1.3);
        let h = realspace_hamiltonian(&q, size, (th1, th2));
        let num = hermitian_eigenvalues(&h);
        let mut ana: Vec<f64> = size
            .momentum_grid()
            .into_iter()
            .flat_map(|k| {
                let k = BlochMomentum::new(k.k1 + th1 / 3.0, k.k2 + th2 / 4.0);
                let (lo, hi) = band_energies(&q, k);
                [lo, hi]
            })
            .collect();
        ana.sort_by(f64::total_cmp);
        for (x, y) in num.iter().zip(&ana) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn translation_invariance_of_realspace_matrix() {
        let size = HkLatticeSize::new(3, 4).unwrap();
        let h = realspace_hamiltonian(&p(1.0, 0.7, -0.4), size, (0.0, 0.0));
        let cols = size.columns();
        let perm = |l: usize, n: usize, dl: usize, dn: usize| {
            size.index((l + dl) % cols, (n + dn) % size.l2)
        };
        let sites: Vec<(usize, usize)> = (0..size.l2)
            .flat_map(|n| (0..cols).map(move |l| (l, n)))
            .collect();
        let invariant = |dl, dn| {
            sites.iter().all(|&(l, n)| {
                sites.iter().all(|&(l2, n2)| {
                    h[(perm(l, n, dl, dn), perm(l2, n2, dl, dn))] == h[(size.index(l, n), size.index(l2, n2))]
                })
            })
        };
        assert!(invariant(2, 0));
        assert!(invariant(0, 1));
        assert!(!invariant(1, 0));
    }

    #[test]
    fn norm_zero_only_near_pi_pi() {
        let n = 128;
        let step = 2.0 * PI / n as f64;
        for q in [p(1.0, 1.0, 1.0), p(-0.5, 0.5, 0.25), p(1.0, 2.0, -2.0)] {
            for i in 0..n {
                for j in 0..n {
                    let k1 = -PI + step * i as f64;
                    let k2 = -PI + step * j as f64;
                    let s = lower_state(&q, BlochMomentum::raw(k1, k2));
                    if s.norm < 1e-6 {
                        assert!(i == 0 && j == 0, "zero at ({k1}, {k2})");
                    }
                }
            }
        }
    }

    #[test]
    fn params_parse() {
        let q: HkParams = "1, 1,-0.5".parse().unwrap();
        assert_eq!(q, p(1.0, 1.0, -0.5));
        assert!("1,2".parse::<HkParams>().is_err());
        assert!("1,x,2".parse::<HkParams>().is_err());
    }

    #[test]
    fn band_csv_has_header_and_rows() {
        let mut buf = Vec::new();
        write_band_csv(&p(1.0, 1.0, 1.0), 4, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "k1,k2,E-,E+");
        assert_eq!(lines.len(), 17);
    }
}
