//! Exact diagonalization of the full interacting Hamiltonian on small tori.
//!
//! Fermionic signs follow row-major site order: `a_x† a_y` acting on a
//! basis state picks up `(-1)^k`, `k` the number of occupied sites strictly
//! between `x` and `y`.

mod basis;
mod hamiltonian;
mod scan;
mod spectrum;
mod structure;
mod twist;

pub use basis::FockBasis;
pub use hamiltonian::{
    build_from_hopping, build_many_body, ManyBodyHamiltonian, DENSE_DIMENSION_LIMIT,
    SPARSE_DIMENSION_LIMIT,
};
pub use scan::{effective_spectrum, is_strictly_decreasing, strong_coupling_scan, ScanRow};
pub use spectrum::{
    cluster_levels, low_spectrum, low_spectrum_with, Cluster, ManyBodySpectrum, SpectrumOptions,
    CLUSTER_GAP_FACTOR, DENSE_COMPONENT_LIMIT,
};
pub use structure::{
    correlated_structure_factor, structure_factor_config, structure_factor_state,
};
pub use twist::{composite_many_body_chern, slater_chern, TwistGrid, MIN_TWIST_GRID};
