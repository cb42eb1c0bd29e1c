//! Fractal calculus toolkit.
//!
//! Builds prefractal interval sets from iterated function systems, computes
//! Hausdorff-style mass distributions and staircase functions on grid
//! delta-covers, and implements the fractal derivative together with its
//! continuous approximations: the local fractional form, the q-derivative,
//! the Caputo derivative (L1 product integration), and the finite-window
//! kernel forms. An analysis layer provides power-law fitting, operator
//! comparison tables, and convergence studies.
//!
//! All computations are deterministic: pure functions over immutable inputs,
//! no randomness, results independent of evaluation order.

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod measure;
pub mod operators;

pub use error::{FraktalError, Result};
pub use geometry::{
    build_prefractal, delta_cover, similarity_dimension, DeltaCover, IfsMap, IfsSpec, Interval,
    IntervalSet,
};
pub use measure::{
    box_counting_dimension, mass_distribution, staircase, DimensionEstimate, StaircaseFunction,
};
pub use operators::{
    caputo_derivative, caputo_like_window_derivative, fractal_function_window_derivative,
    fractal_space_window_derivative, inverse_fractal_derivative, local_fractal_derivative,
    parvate_gangal_derivative, parvate_gangal_derivative_extrapolated, q_derivative,
    q_exponential, surface_coefficient, CoeffMode, OperatorConfig, OperatorKind, QuadScheme,
    SampledFunction,
};
pub use analysis::{
    compare_operators, convergence_study, fit_power_law, ComparisonReport, ConvergenceRow,
    FitMethod, PowerLawFit,
};
