//! Closed-form quantities: edge-process probabilities, mixing-time bounds and
//! the colouring threshold.

pub mod bounds;
pub mod edge_process;
pub mod quadrature;
pub mod threshold;

pub use bounds::{
    colouring_path_bound, indset_alpha_bound, indset_mixing_bound, stopping_time_bound,
    stopping_time_horizon, stopping_time_report, threshold_alpha_expression, threshold_ratio,
    AlphaBound, BoundInputs, BoundReport, BoundVariant,
};
pub use edge_process::{
    edge_process_closed, edge_process_closed_exact, edge_process_closed_table, edge_process_first,
    edge_process_last, edge_process_solve, edge_process_solve_exact, EdgeProcessTable,
};
pub use threshold::{
    beta_integral, beta_star, colouring_integral_constants, phi, series_value, success_integral,
    IntegralConstants, RootMethod, SeriesValue, ThresholdReport,
};
