//! Discrete solution values on a grid with per-endpoint boundary data.

use std::sync::Arc;

use crate::discretization::grid::Grid1D;
use crate::error::{CoreError, Result};
use crate::real::Real;

/// Boundary treatment at one end of the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndCondition<T> {
    /// Fixed boundary value (the `L` of the truncated problems; zero is
    /// admitted for pure-absorption barrier configurations).
    Dirichlet(T),
    /// Symmetry axis at the origin of a ball: zero flux, no boundary value.
    Symmetry,
}

impl<T: Real> EndCondition<T> {
    pub fn dirichlet_value(&self) -> Option<T> {
        match *self {
            EndCondition::Dirichlet(v) => Some(v),
            EndCondition::Symmetry => None,
        }
    }
}

/// Strictly positive nodal values plus boundary data on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    grid: Arc<Grid1D<T>>,
    values: Vec<T>,
    boundary: [EndCondition<T>; 2],
}

impl<T: Real> Field<T> {
    pub fn new(
        grid: Arc<Grid1D<T>>,
        values: Vec<T>,
        boundary: [EndCondition<T>; 2],
    ) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(CoreError::InvalidField(format!(
                "value count {} does not match interior node count {}",
                values.len(),
                grid.n_nodes()
            )));
        }
        for &v in &values {
            if !v.is_finite() || !(v > T::zero()) {
                return Err(CoreError::InvalidField(
                    "nodal values must be finite and strictly positive".into(),
                ));
            }
        }
        for (side, b) in boundary.iter().enumerate() {
            match *b {
                EndCondition::Dirichlet(v) => {
                    if !v.is_finite() || v < T::zero() {
                        return Err(CoreError::InvalidField(
                            "boundary values must be finite and nonnegative".into(),
                        ));
                    }
                }
                EndCondition::Symmetry => {
                    if side == 1 {
                        return Err(CoreError::InvalidField(
                            "symmetry condition only applies to the inner end".into(),
                        ));
                    }
                    if !grid.has_origin() {
                        return Err(CoreError::InvalidField(
                            "symmetry condition requires a radial grid with r_lo = 0".into(),
                        ));
                    }
                }
            }
        }
        Ok(Self {
            grid,
            values,
            boundary,
        })
    }

    /// Constant field at `value` with Dirichlet data `value` on both ends
    /// (symmetry at the origin for balls).
    pub fn constant(grid: Arc<Grid1D<T>>, value: T) -> Result<Self> {
        let left = if grid.has_origin() {
            EndCondition::Symmetry
        } else {
            EndCondition::Dirichlet(value)
        };
        let n = grid.n_nodes();
        Field::new(grid, vec![value; n], [left, EndCondition::Dirichlet(value)])
    }

    pub fn grid(&self) -> &Arc<Grid1D<T>> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn boundary(&self) -> &[EndCondition<T>; 2] {
        &self.boundary
    }

    /// Largest Dirichlet boundary value.
    pub fn max_boundary_value(&self) -> T {
        self.boundary
            .iter()
            .filter_map(|b| b.dirichlet_value())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Same grid and boundary with replaced nodal values.
    pub fn with_values(&self, values: Vec<T>) -> Result<Self> {
        Field::new(self.grid.clone(), values, self.boundary)
    }

    /// Same grid and values with replaced boundary data.
    pub fn with_boundary(&self, boundary: [EndCondition<T>; 2]) -> Result<Self> {
        Field::new(self.grid.clone(), self.values.clone(), boundary)
    }

    /// Pointwise scaling by a positive factor (boundary data included).
    pub fn scaled(&self, factor: T) -> Result<Self> {
        let values = self.values.iter().map(|&v| v * factor).collect();
        let boundary = self.boundary.map(|b| match b {
            EndCondition::Dirichlet(v) => EndCondition::Dirichlet(v * factor),
            EndCondition::Symmetry => EndCondition::Symmetry,
        });
        Field::new(self.grid.clone(), values, boundary)
    }
}
