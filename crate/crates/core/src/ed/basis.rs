use crate::classical::{binomial, check_sites, for_each_combination, OccupationConfig};
use crate::error::{Error, Result};
use crate::lattice::TorusLattice;

/// All `n`-particle occupation masks in increasing numeric order.
#[derive(Debug, Clone, PartialEq)]
pub struct FockBasis {
    lattice: TorusLattice,
    particles: usize,
    states: Vec<u128>,
}

impl FockBasis {
    pub fn new(lattice: &TorusLattice, particles: usize, limit: u128) -> Result<Self> {
        check_sites(lattice)?;
        let sites = lattice.num_sites();
        if particles > sites {
            return Err(Error::InvalidParameter(format!(
                "{particles} particles do not fit on {sites} sites"
            )));
        }
        let dimension = binomial(sites as u64, particles as u64);
        if dimension > limit {
            return Err(Error::DimensionExceeded { dimension, limit });
        }
        let mut states = Vec::with_capacity(dimension as usize);
        for_each_combination(sites, particles, |bits| states.push(bits));
        Ok(Self {
            lattice: *lattice,
            particles,
            states,
        })
    }

    pub fn lattice(&self) -> &TorusLattice {
        &self.lattice
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, i: usize) -> OccupationConfig {
        OccupationConfig(self.states[i])
    }

    pub fn states(&self) -> &[u128] {
        &self.states
    }

    pub fn index_of(&self, config: OccupationConfig) -> Option<usize> {
        self.states.binary_search(&config.0).ok()
    }
}
