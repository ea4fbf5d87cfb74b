//! The asymptotic iteration method on a coefficient quartet.

mod eigen;
mod recursion;
mod spectrum;

pub use eigen::{assemble_wavefunction, ode_residual, polynomial_eigenfunction, sample_points, PolyEigenfunction, WavePoint};
pub use recursion::{aim_step, delta_at, AimRow, DeltaPair};
pub use spectrum::{solve_spectrum, Level, RootSet, SolveOptions, SpectrumResult, Trajectory, WhichDelta};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum AimError {
    #[error("uncoupled system; use the closed form")]
    Decoupled,
    #[error("no termination polynomial has real roots")]
    NoRealRoots,
    #[error("termination polynomial vanishes identically at n = {n} (delta1: {delta1}, delta2: {delta2})")]
    IdenticallyZero { n: u32, delta1: bool, delta2: bool },
    #[error("no polynomial solution of degree at most {max_deg}")]
    NotPolynomial { max_deg: usize },
    #[error("wavefunction undefined at ({x}, {y})")]
    DomainError { x: f64, y: f64 },
    #[error("invalid options: {0}")]
    InvalidOptions(String),
}
