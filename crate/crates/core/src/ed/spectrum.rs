use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::hamiltonian::ManyBodyHamiltonian;
use crate::error::{Error, Result};

/// A gap closes a cluster when it exceeds this multiple of the splitting.
pub const CLUSTER_GAP_FACTOR: f64 = 10.0;
/// Connected blocks up to this size are diagonalized densely.
pub const DENSE_COMPONENT_LIMIT: usize = 2000;

const LANCZOS_SEED: u64 = 0x5eed_1a2c_705f_0001;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    pub vectors: bool,
    pub dense_limit: usize,
    pub krylov: usize,
    pub tolerance: f64,
    pub max_restarts: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            vectors: false,
            dense_limit: DENSE_COMPONENT_LIMIT,
            krylov: 80,
            tolerance: 1e-10,
            max_restarts: 200,
        }
    }
}

/// Consecutive levels grouped by [`cluster_levels`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cluster {
    pub start: usize,
    pub size: usize,
    pub energy: f64,
    pub splitting: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManyBodySpectrum {
    /// Ascending.
    pub energies: Vec<f64>,
    /// Full-basis eigenvectors, when requested.
    pub vectors: Option<Vec<Vec<Complex64>>>,
    pub clusters: Vec<Cluster>,
}

impl ManyBodySpectrum {
    pub fn ground_multiplet(&self) -> Option<&Cluster> {
        self.clusters.first()
    }

    /// Gap between the first two clusters.
    pub fn gap(&self) -> Option<f64> {
        let second = self.clusters.get(1)?;
        Some(self.energies[second.start] - self.energies[second.start - 1])
    }
}

/// Groups sorted levels. The gap after level `i` is a cluster boundary
/// when it exceeds ten times both neighboring gaps and the floor
/// `1e-9 max(1, |E|)`; the neighboring gaps bound the splitting inside the
/// clusters it separates.
pub fn cluster_levels(energies: &[f64]) -> Vec<Cluster> {
    let gaps: Vec<f64> = energies.windows(2).map(|w| w[1] - w[0]).collect();
    let boundary = |i: usize| {
        let left = if i > 0 { gaps[i - 1] } else { 0.0 };
        let right = gaps.get(i + 1).copied().unwrap_or(0.0);
        let floor = 1e-9 * energies[i].abs().max(1.0);
        gaps[i] > CLUSTER_GAP_FACTOR * left.max(right).max(floor)
    };
    let mut out: Vec<Cluster> = Vec::new();
    let mut start = 0;
    for i in 0..energies.len() {
        if i + 1 == energies.len() || boundary(i) {
            let size = i + 1 - start;
            out.push(Cluster {
                start,
                size,
                energy: energies[start..=i].iter().sum::<f64>() / size as f64,
                splitting: energies[i] - energies[start],
            });
            start = i + 1;
        }
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Basis indices of each connected block of `h`, ordered by smallest index.
fn components(h: &ManyBodyHamiltonian) -> Vec<Vec<usize>> {
    let d = h.dimension();
    let mut parent: Vec<usize> = (0..d).collect();
    for i in 0..d {
        for (j, v) in h.row(i) {
            if j != i && v != Complex64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut label = vec![usize::MAX; d];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..d {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = out.len();
            out.push(Vec::new());
        }
        out[label[r]].push(i);
    }
    out
}

struct Eigenpairs {
    values: Vec<f64>,
    vectors: Vec<Vec<Complex64>>,
}

fn dense_lowest(m: DMatrix<Complex64>, count: usize, vectors: bool) -> Eigenpairs {
    if !vectors {
        let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values.truncate(count);
        return Eigenpairs {
            values,
            vectors: Vec::new(),
        };
    }
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    order.truncate(count);
    Eigenpairs {
        values: order.iter().map(|&k| eig.eigenvalues[k]).collect(),
        vectors: order
            .iter()
            .map(|&k| eig.eigenvectors.column(k).iter().copied().collect())
            .collect(),
    }
}

/// Operator restricted to one block, on local coordinates.
struct Block<'a> {
    h: &'a ManyBodyHamiltonian,
    indices: &'a [usize],
    local: Vec<usize>,
}

impl<'a> Block<'a> {
    fn new(h: &'a ManyBodyHamiltonian, indices: &'a [usize]) -> Self {
        let mut local = vec![usize::MAX; h.dimension()];
        for (a, &i) in indices.iter().enumerate() {
            local[i] = a;
        }
        Self { h, indices, local }
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.par_iter_mut().enumerate().for_each(|(a, o)| {
            *o = self
                .h
                .row(self.indices[a])
                .map(|(j, x)| x * v[self.local[j]])
                .sum();
        });
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Two classical Gram-Schmidt passes over every set, in order.
fn orthogonalize(v: &mut [Complex64], sets: &[&[Vec<Complex64>]]) {
    for _ in 0..2 {
        for u in sets.iter().flat_map(|s| s.iter()) {
            let c = dot(u, v);
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= c * y);
        }
    }
}

/// Lowest `count` eigenpairs by restarted Lanczos with full
/// reorthogonalization and locking of converged Ritz pairs.
fn lanczos_lowest(block: &Block, count: usize, opts: &SpectrumOptions) -> Result<Eigenpairs> {
    let d = block.indices.len();
    let mut rng = ChaCha8Rng::seed_from_u64(LANCZOS_SEED);
    let random = |rng: &mut ChaCha8Rng| -> Vec<Complex64> {
        (0..d)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect()
    };
    let mut locked: Vec<Vec<Complex64>> = Vec::new();
    let mut locked_values: Vec<f64> = Vec::new();
    let mut start = random(&mut rng);
    let mut residual = f64::INFINITY;
    let mut w = vec![Complex64::new(0.0, 0.0); d];

    for _ in 0..opts.max_restarts {
        let room = d - locked.len();
        let k = opts.krylov.min(room);
        let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(k);
        let mut v = start.clone();
        orthogonalize(&mut v, &[&locked]);
        let nv = norm(&v);
        v.iter_mut().for_each(|x| *x /= nv);
        let mut hq: Vec<Vec<Complex64>> = Vec::with_capacity(k);
        let mut scale = 0.0f64;
        loop {
            block.apply(&v, &mut w);
            hq.push(w.clone());
            scale = scale.max(dot(&v, &w).re.abs());
            q.push(v);
            orthogonalize(&mut w, &[&locked, &q]);
            let b = norm(&w);
            scale = scale.max(b);
            if q.len() == k || b <= 1e-10 * scale.max(1e-300) {
                break;
            }
            v = w.iter().map(|x| x / b).collect();
        }
        // Rayleigh-Ritz on the explicit projection; exact even after
        // near-breakdown of the recurrence
        let m = q.len();
        let mut t = DMatrix::<Complex64>::from_fn(m, m, |i, j| dot(&q[i], &hq[j]));
        crate::hk::hermitize(&mut t);
        let eig = SymmetricEigen::new(t);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let need = count - locked.len();
        let ritz = |k: usize| -> Vec<Complex64> {
            let mut y = vec![Complex64::new(0.0, 0.0); d];
            for (i, qi) in q.iter().enumerate() {
                let c = eig.eigenvectors[(i, k)];
                y.iter_mut().zip(qi).for_each(|(a, b)| *a += b * c);
            }
            y
        };
        let mut newly = 0;
        let mut pending: Vec<Vec<Complex64>> = Vec::new();
        for &k in order.iter().take(need.min(m)) {
            let mut y = ritz(k);
            orthogonalize(&mut y, &[&locked]);
            let ny = norm(&y);
            y.iter_mut().for_each(|x| *x /= ny);
            block.apply(&y, &mut w);
            let theta = dot(&y, &w).re;
            let r = w
                .iter()
                .zip(&y)
                .map(|(a, b)| (a - b * theta).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let tol_scale = theta.abs().max(1.0);
            // one lock per pass keeps degenerate partners from being skipped
            if newly == 0 && pending.is_empty() && r < opts.tolerance * tol_scale {
                locked.push(y);
                locked_values.push(theta);
                newly += 1;
            } else {
                residual = residual.min(r);
                pending.push(y);
            }
        }
        if locked.len() == count {
            break;
        }
        // restart from the unconverged wanted directions plus a fresh kick
        let kick = random(&mut rng);
        start = kick.iter().map(|x| x * 1e-3).collect();
        for y in &pending {
            start.iter_mut().zip(y).for_each(|(a, b)| *a += b);
        }
    }
    if locked.len() < count {
        return Err(Error::NoConvergence { residual });
    }
    let mut order: Vec<usize> = (0..locked.len()).collect();
    order.sort_by(|&a, &b| locked_values[a].total_cmp(&locked_values[b]));
    Ok(Eigenpairs {
        values: order.iter().map(|&k| locked_values[k]).collect(),
        vectors: order.iter().map(|&k| locked[k].clone()).collect(),
    })
}

pub fn low_spectrum(h: &ManyBodyHamiltonian, m: usize) -> Result<ManyBodySpectrum> {
    low_spectrum_with(h, m, &SpectrumOptions::default())
}

/// Lowest `m` levels. The operator is split into its exactly decoupled
/// blocks; each block is diagonalized densely up to `dense_limit` and by
/// Lanczos above.
pub fn low_spectrum_with(
    h: &ManyBodyHamiltonian,
    m: usize,
    opts: &SpectrumOptions,
) -> Result<ManyBodySpectrum> {
    let d = h.dimension();
    if m > d {
        return Err(Error::InvalidParameter(format!(
            "requested {m} levels from a {d}-dimensional space"
        )));
    }
    let blocks = components(h);
    let solved: Vec<Result<Eigenpairs>> = blocks
        .par_iter()
        .map(|indices| {
            let want = m.min(indices.len());
            if indices.len() <= opts.dense_limit {
                Ok(dense_lowest(h.dense_block(indices), want, opts.vectors))
            } else {
                lanczos_lowest(&Block::new(h, indices), want, opts)
            }
        })
        .collect();
    let mut levels: Vec<(f64, usize, usize)> = Vec::new();
    let mut pairs = Vec::with_capacity(blocks.len());
    for (b, r) in solved.into_iter().enumerate() {
        let p = r?;
        levels.extend(p.values.iter().enumerate().map(|(k, &e)| (e, b, k)));
        pairs.push(p);
    }
    levels.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    levels.truncate(m);
    let energies: Vec<f64> = levels.iter().map(|l| l.0).collect();
    let vectors = opts.vectors.then(|| {
        levels
            .iter()
            .map(|&(_, b, k)| {
                let mut full = vec![Complex64::new(0.0, 0.0); d];
                for (a, &i) in blocks[b].iter().enumerate() {
                    full[i] = pairs[b].vectors[k][a];
                }
                full
            })
            .collect()
    });
    Ok(ManyBodySpectrum {
        clusters: cluster_levels(&energies),
        energies,
        vectors,
    })
}
