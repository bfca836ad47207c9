use thiserror::Error;

/// Failures raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice {width}x{height}: {reason}")]
    InvalidLattice {
        width: usize,
        height: usize,
        reason: &'static str,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("brute force over {configurations} configurations exceeds the budget of {budget}; use count_min_energy_configs_dp")]
    BudgetExceeded { configurations: u128, budget: u128 },
    #[error("transfer counter supports width <= {max}, got {width}; use enumerate_ground_states on smaller tori")]
    WidthExceeded { width: usize, max: usize },
    #[error("lattice has {sites} sites, occupation masks hold at most {max}")]
    TooManySites { sites: usize, max: usize },
    #[error("band gap {gap:e} below threshold {threshold:e}: Chern number undefined")]
    GaplessRefusal { gap: f64, threshold: f64 },
    #[error("Chern sum {total} is not an integer (residue {residue:e}); increase the grid")]
    NonIntegerResidue { total: f64, residue: f64 },
    #[error("closed form is derived only for t2 > 0, t1 != 0, td != 0; use the plaquette method")]
    OutOfDerivedDomain,
    #[error("eigenvector norm vanishes at k = ({k1}, {k2})")]
    SingularPoint { k1: f64, k2: f64 },
    #[error("loop aspect |t1/(4 td)| undefined (t1 = {t1}, td = {td})")]
    AspectUndefined { t1: f64, td: f64 },
    #[error("lattice {width}x{height} cannot host the spacing-2 HK embedding (both sides must be multiples of 4)")]
    SizeNotEmbeddable { width: usize, height: usize },
    #[error("Hilbert space dimension {dimension} exceeds the limit {limit}")]
    DimensionExceeded { dimension: u128, limit: u128 },
    #[error("iterative eigensolver did not converge (worst residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("many-body gap {gap:e} closes at twist ({theta1}, {theta2})")]
    GapClosedAtTwist { theta1: f64, theta2: f64, gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
