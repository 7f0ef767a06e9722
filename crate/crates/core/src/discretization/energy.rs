//! Discrete energy `(1/p) int |grad u|^p - int H(x, u)`.
//!
//! The gradient term is a midpoint rule over the inter-node segments (which
//! tile the whole domain); the `H` term is integrated over the dual cells
//! plus the two boundary half-segments. `H` is supplied per chain index:
//! index 0 is the inner boundary, `1..=n` the interior nodes, `n+1` the
//! outer boundary. The solver uses this as the line-search merit function.

use crate::discretization::field::{EndCondition, Field};
use crate::error::Result;
use crate::real::{cast, Real};

pub fn discrete_energy<T: Real>(
    field: &Field<T>,
    p: T,
    h_at: &dyn Fn(usize, T) -> T,
) -> Result<T> {
    let grid = field.grid();
    let x = grid.nodes();
    let n = x.len();
    let u = field.values();
    let (lo, hi) = grid.geometry().endpoints();
    let dim = grid.geometry().dim() as i32;
    let dim_t = cast::<T>(dim as f64);
    let half = cast::<T>(0.5);
    let seg_vol = |a: T, b: T| (b.powi(dim) - a.powi(dim)) / dim_t;

    let mut energy = T::zero();

    // gradient term over the full chain of segments
    let mut chain_pos = Vec::with_capacity(n + 2);
    let mut chain_val = Vec::with_capacity(n + 2);
    chain_pos.push(lo);
    chain_val.push(match field.boundary()[0] {
        EndCondition::Dirichlet(v) => v,
        EndCondition::Symmetry => u[0], // zero-slope continuation
    });
    for i in 0..n {
        chain_pos.push(x[i]);
        chain_val.push(u[i]);
    }
    chain_pos.push(hi);
    chain_val.push(match field.boundary()[1] {
        EndCondition::Dirichlet(v) => v,
        EndCondition::Symmetry => u[n - 1],
    });
    for j in 0..n + 1 {
        let h = chain_pos[j + 1] - chain_pos[j];
        let du = (chain_val[j + 1] - chain_val[j]) / h;
        energy += du.abs().powf(p) / p * seg_vol(chain_pos[j], chain_pos[j + 1]);
    }

    // H term: dual cells for nodes, half-segments at the boundaries
    let face = |i: usize| -> T {
        // left dual face of node i (chain index i+1)
        half * (chain_pos[i] + chain_pos[i + 1])
    };
    for i in 0..n {
        let fl = if i == 0 && matches!(field.boundary()[0], EndCondition::Symmetry) {
            lo
        } else {
            face(i)
        };
        let fr = face(i + 1);
        energy -= h_at(i + 1, u[i]) * seg_vol(fl, fr);
    }
    if let EndCondition::Dirichlet(v) = field.boundary()[0] {
        energy -= h_at(0, v) * seg_vol(lo, face(0));
    }
    if let EndCondition::Dirichlet(v) = field.boundary()[1] {
        energy -= h_at(n + 1, v) * seg_vol(face(n), hi);
    }
    Ok(energy)
}
