//! Grids, fields and the flux-form discrete operator.

pub mod energy;
pub mod field;
pub mod grid;
pub mod operator;

pub use energy::discrete_energy;
pub use field::{EndCondition, Field};
pub use grid::{build_grid, BlowUpEnds, Geometry, Grid1D};
pub use operator::{
    boundary_fluxes, dual_volumes, jacobian, p_lap_residual, Tridiagonal, EPS_REG_REL,
};
