//! Small numeric helpers shared across modules.

use crate::real::{cast, Real};

/// Least-squares line through `(x_i, y_i)`: returns `(slope, intercept)`.
///
/// Also returns the RMS residual of the fit as the third component.
pub(crate) fn linear_fit<T: Real>(xs: &[T], ys: &[T]) -> (T, T, T) {
    assert!(xs.len() == ys.len() && xs.len() >= 2, "need >= 2 points");
    let n = cast::<T>(xs.len() as f64);
    let sx: T = xs.iter().copied().sum();
    let sy: T = ys.iter().copied().sum();
    let mx = sx / n;
    let my = sy / n;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let r = y - (intercept + slope * x);
        ss += r * r;
    }
    (slope, intercept, (ss / n).sqrt())
}

/// Golden-section maximization of `f` on `[lo, hi]` to relative width `tol`.
pub(crate) fn golden_max<T: Real>(mut lo: T, mut hi: T, tol: T, f: impl Fn(T) -> T) -> T {
    let inv_phi = cast::<T>(0.618_033_988_749_894_8);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 300 iterations shrink the bracket far below any practical tol.
    for _ in 0..300 {
        if hi - lo <= tol * lo.abs().max(hi.abs()).max(T::one()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        x1
    } else {
        x2
    }
}

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
pub(crate) fn adaptive_simpson<T: Real>(f: &impl Fn(T) -> T, a: T, b: T, tol: T) -> T {
    fn simpson<T: Real>(f: &impl Fn(T) -> T, a: T, fa: T, b: T, fb: T) -> (T, T, T) {
        let two = cast::<T>(2.0);
        let six = cast::<T>(6.0);
        let m = (a + b) / two;
        let fm = f(m);
        ((b - a) / six * (fa + cast::<T>(4.0) * fm + fb), m, fm)
    }
    fn recurse<T: Real>(
        f: &impl Fn(T) -> T,
        a: T,
        fa: T,
        b: T,
        fb: T,
        whole: T,
        m: T,
        fm: T,
        tol: T,
        depth: usize,
    ) -> T {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= cast::<T>(15.0) * tol {
            left + right + delta / cast::<T>(15.0)
        } else {
            let half = tol / cast::<T>(2.0);
            recurse(f, a, fa, m, fm, left, lm, flm, half, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, half, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 40)
}

/// Median of `values` weighted by `weights` (both positive, same length).
pub(crate) fn weighted_median<T: Real>(values: &[T], weights: &[T]) -> T {
    assert_eq!(values.len(), weights.len());
    assert!(!values.is_empty());
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite values"));
    let total: T = weights.iter().copied().sum();
    let half = total / cast::<T>(2.0);
    let mut acc = T::zero();
    for &i in &idx {
        acc += weights[i];
        if acc >= half {
            return values[i];
        }
    }
    values[*idx.last().unwrap()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_fit_recovers_exact_line() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.25).collect();
        let (s, c, rms) = linear_fit(&xs, &ys);
        assert!((s - 2.5).abs() < 1e-12);
        assert!((c + 1.25).abs() < 1e-12);
        assert!(rms < 1e-12);
    }

    #[test]
    fn golden_max_finds_parabola_peak() {
        let x = golden_max(0.0f64, 10.0, 1e-12, |x| -(x - 3.7) * (x - 3.7));
        assert!((x - 3.7).abs() < 1e-9);
    }

    #[test]
    fn simpson_integrates_power() {
        let v = adaptive_simpson(&|x: f64| x * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 4.0).abs() < 1e-10);
    }

    #[test]
    fn weighted_median_respects_weights() {
        let v = weighted_median(&[1.0f64, 2.0, 3.0], &[0.1, 0.1, 10.0]);
        assert_eq!(v, 3.0);
    }
}
