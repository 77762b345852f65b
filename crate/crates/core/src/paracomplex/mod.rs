//! Para-complex numbers and a single-chart curvature lab for para-Kähler
//! potentials.

pub mod curvature;
pub mod number;
pub mod poly;
pub mod potential;

pub use curvature::{
    check_admissible, christoffel, einstein_residual, fit_lambda, metric_from_potential, metric_matrix, ricci,
    Christoffel, DiffMode, FdConfig, MetricSample, RICCI_SIGN,
};
pub use number::{pc_conj, pc_inv, pc_mul, ParaComplex};
pub use potential::{ChartPotential, Monomial, PotentialConfig, PotentialKind, SampleSpec};
