//! Flux-form discretization of the radial p-Laplacian and its linearization.
//!
//! For interior node `i` with dual cell `[fl_i, fr_i]`,
//!
//! ```text
//! residual_i = -(F(fr_i) - F(fl_i)) / vol_i - rhs_i,
//! F(face)    = face^(N-1) * |Du|^(p-2) Du,
//! vol_i      = (fr_i^N - fl_i^N) / N,
//! ```
//!
//! with `Du` the divided difference across the face (boundary data enters
//! the one-sided differences) and faces at segment midpoints. `vol_i` is the
//! exact dual-cell moment; for `N = 1` it reduces to the dual width, and at
//! the origin of a ball it keeps the scheme consistent where the midpoint
//! approximation `w_i r_i^(N-1)` degenerates. The degeneracy of
//! `|Du|^(p-2)` is regularized as `(Du^2 + eps^2)^((p-2)/2)`: always in the
//! Jacobian, in the residual only where `|Du| < eps`.

use crate::discretization::field::{EndCondition, Field};
use crate::error::{CoreError, Result};
use crate::real::{cast, Real};

/// Relative regularization scale for the degenerate/singular flux law.
pub const EPS_REG_REL: f64 = 1e-10;

/// Geometry of one assembled scheme: segment differences, faces, volumes.
struct Stencil<T> {
    /// Divided difference per segment (`n+1` entries, boundary to boundary).
    du: Vec<T>,
    /// Segment length.
    h: Vec<T>,
    /// Radial factor `face^(N-1)` per segment face.
    face_pow: Vec<T>,
    /// Dual-cell volume per node.
    vol: Vec<T>,
    /// Zero-flux marker for the first segment (symmetry axis).
    zero_first_flux: bool,
    /// Regularization threshold `eps = EPS_REG_REL * max(1, |Du|_inf)`.
    eps: T,
}

fn assemble<T: Real>(field: &Field<T>) -> Result<Stencil<T>> {
    let grid = field.grid();
    let x = grid.nodes();
    let n = x.len();
    let u = field.values();
    let (lo, hi) = grid.geometry().endpoints();
    let dim = grid.geometry().dim() as i32;

    for &v in u {
        if !v.is_finite() {
            return Err(CoreError::InvalidField("non-finite nodal value".into()));
        }
    }

    let (left, right) = (field.boundary()[0], field.boundary()[1]);
    let right_val = match right {
        EndCondition::Dirichlet(v) => v,
        EndCondition::Symmetry => {
            return Err(CoreError::InvalidField(
                "outer end must carry Dirichlet data".into(),
            ))
        }
    };

    let mut du = Vec::with_capacity(n + 1);
    let mut h = Vec::with_capacity(n + 1);
    let mut face_pow = Vec::with_capacity(n + 1);
    let half = cast::<T>(0.5);
    let zero_first_flux = matches!(left, EndCondition::Symmetry);

    // first segment: boundary -> x[0]
    match left {
        EndCondition::Dirichlet(v) => {
            let hh = x[0] - lo;
            du.push((u[0] - v) / hh);
            h.push(hh);
            face_pow.push((half * (lo + x[0])).powi(dim - 1));
        }
        EndCondition::Symmetry => {
            du.push(T::zero());
            h.push(x[0] - lo);
            face_pow.push(lo.powi(dim - 1));
        }
    }
    for i in 1..n {
        let hh = x[i] - x[i - 1];
        du.push((u[i] - u[i - 1]) / hh);
        h.push(hh);
        face_pow.push((half * (x[i - 1] + x[i])).powi(dim - 1));
    }
    // last segment: x[n-1] -> boundary
    let hh = hi - x[n - 1];
    du.push((right_val - u[n - 1]) / hh);
    h.push(hh);
    face_pow.push((half * (x[n - 1] + hi)).powi(dim - 1));

    // dual-cell faces and exact volume moments
    let dim_t = cast::<T>(dim as f64);
    let face_at = |j: usize| -> T {
        // left face of node j's dual cell
        if j == 0 {
            if zero_first_flux {
                lo
            } else {
                half * (lo + x[0])
            }
        } else {
            half * (x[j - 1] + x[j])
        }
    };
    let mut vol = Vec::with_capacity(n);
    for i in 0..n {
        let fl = face_at(i);
        let fr = if i + 1 == n {
            half * (x[n - 1] + hi)
        } else {
            face_at(i + 1)
        };
        vol.push((fr.powi(dim) - fl.powi(dim)) / dim_t);
    }

    let du_max = du
        .iter()
        .fold(T::zero(), |a, &b| a.max(b.abs()))
        .max(T::one());
    Ok(Stencil {
        du,
        h,
        face_pow,
        vol,
        zero_first_flux,
        eps: cast::<T>(EPS_REG_REL) * du_max,
    })
}

/// `|d|^(p-2) d`, switching to the regularized law below the threshold.
fn flux_law<T: Real>(d: T, p: T, eps: T) -> T {
    let two = cast::<T>(2.0);
    if d.abs() < eps {
        (d * d + eps * eps).powf((p - two) / two) * d
    } else {
        d.abs().powf(p - two) * d
    }
}

/// Derivative of the always-regularized flux law.
fn flux_law_derivative<T: Real>(d: T, p: T, eps: T) -> T {
    let two = cast::<T>(2.0);
    let four = cast::<T>(4.0);
    let s = d * d + eps * eps;
    s.powf((p - four) / two) * ((p - T::one()) * d * d + eps * eps)
}

/// Residual of `-div(|grad u|^(p-2) grad u) - rhs` at every interior node.
pub fn p_lap_residual<T: Real>(field: &Field<T>, p: T, rhs: &[T]) -> Result<Vec<T>> {
    let st = assemble(field)?;
    let n = st.vol.len();
    if rhs.len() != n {
        return Err(CoreError::InvalidField(
            "rhs length does not match node count".into(),
        ));
    }
    let flux = |j: usize| -> T {
        if j == 0 && st.zero_first_flux {
            T::zero()
        } else {
            st.face_pow[j] * flux_law(st.du[j], p, st.eps)
        }
    };
    let mut res = Vec::with_capacity(n);
    for i in 0..n {
        res.push(-(flux(i + 1) - flux(i)) / st.vol[i] - rhs[i]);
    }
    Ok(res)
}

/// Boundary fluxes `(F_left, F_right)` of the dual domain, used by the
/// discrete divergence identity.
pub fn boundary_fluxes<T: Real>(field: &Field<T>, p: T) -> Result<(T, T)> {
    let st = assemble(field)?;
    let first = if st.zero_first_flux {
        T::zero()
    } else {
        st.face_pow[0] * flux_law(st.du[0], p, st.eps)
    };
    let last_j = st.du.len() - 1;
    Ok((first, st.face_pow[last_j] * flux_law(st.du[last_j], p, st.eps)))
}

/// Dual-cell volumes (the measure of each interior node).
pub fn dual_volumes<T: Real>(field: &Field<T>) -> Result<Vec<T>> {
    Ok(assemble(field)?.vol)
}

/// Tridiagonal operator with a Thomas-algorithm solver.
#[derive(Debug, Clone)]
pub struct Tridiagonal<T> {
    pub lower: Vec<T>,
    pub diag: Vec<T>,
    pub upper: Vec<T>,
}

impl<T: Real> Tridiagonal<T> {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        let n = self.n();
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            let mut s = self.diag[i] * v[i];
            if i > 0 {
                s += self.lower[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                s += self.upper[i] * v[i + 1];
            }
            out[i] = s;
        }
        out
    }

    /// Solves `A x = b` by forward elimination; the assembled operators are
    /// diagonally dominant M-matrices, so no pivoting is needed.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.n();
        let mut c = vec![T::zero(); n];
        let mut d = vec![T::zero(); n];
        let mut denom = self.diag[0];
        if denom == T::zero() || !denom.is_finite() {
            return Err(CoreError::LinearSolve("zero or non-finite pivot".into()));
        }
        c[0] = self.upper.first().copied().unwrap_or(T::zero()) / denom;
        d[0] = b[0] / denom;
        for i in 1..n {
            denom = self.diag[i] - self.lower[i - 1] * c[i - 1];
            if denom == T::zero() || !denom.is_finite() {
                return Err(CoreError::LinearSolve("zero or non-finite pivot".into()));
            }
            if i < n - 1 {
                c[i] = self.upper[i] / denom;
            }
            d[i] = (b[i] - self.lower[i - 1] * d[i - 1]) / denom;
        }
        let mut x = d;
        for i in (0..n - 1).rev() {
            let next = x[i + 1];
            x[i] = x[i] - c[i] * next;
        }
        Ok(x)
    }
}

/// Exact derivative of the regularized residual with respect to the nodal
/// values; `rhs_derivative` (the derivative of the rhs in `u`) lands on the
/// diagonal.
pub fn jacobian<T: Real>(field: &Field<T>, p: T, rhs_derivative: &[T]) -> Result<Tridiagonal<T>> {
    let st = assemble(field)?;
    let n = st.vol.len();
    if rhs_derivative.len() != n {
        return Err(CoreError::InvalidField(
            "rhs_derivative length does not match node count".into(),
        ));
    }
    // conductance of segment j: face^(N-1) * phi'(Du_j) / h_j
    let cond = |j: usize| -> T {
        if j == 0 && st.zero_first_flux {
            T::zero()
        } else {
            st.face_pow[j] * flux_law_derivative(st.du[j], p, st.eps) / st.h[j]
        }
    };
    let mut lower = vec![T::zero(); n - 1];
    let mut diag = vec![T::zero(); n];
    let mut upper = vec![T::zero(); n - 1];
    for i in 0..n {
        let a_l = cond(i);
        let a_r = cond(i + 1);
        diag[i] = (a_l + a_r) / st.vol[i] - rhs_derivative[i];
        if i > 0 {
            lower[i - 1] = -a_l / st.vol[i];
        }
        if i + 1 < n {
            upper[i] = -a_r / st.vol[i];
        }
    }
    Ok(Tridiagonal { lower, diag, upper })
}
