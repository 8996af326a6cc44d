use crate::{Error, Result};

const BISECTION_TOL: f64 = 1e-15;

/// Mean degree `c = r·ln(r/(r−1))` at which the giant component of an
/// Erdős–Rényi graph on `rM` vertices has `M` vertices.
pub fn phase_transition_curve(r: f64) -> Result<f64> {
    check_ratio(r)?;
    Ok(r * (r / (r - 1.0)).ln())
}

/// Giant-component fraction `β ∈ [0, 1)` solving `β + e^{−βc} = 1`; zero for
/// `c ≤ 1`.
pub fn giant_component_fraction(c: f64) -> Result<f64> {
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::param(format!("mean degree c = {c} must be finite and ≥ 0")));
    }
    if c <= 1.0 {
        return Ok(0.0);
    }
    let f = |b: f64| b + (-b * c).exp() - 1.0;
    // f(1 − 1/c) < 0 < f(1) brackets the positive root
    let (mut lo, mut hi) = (1.0 - 1.0 / c, 1.0);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Measurement redundancy `N/M ≈ r(1 + 1.5·r·ln(r/(r−1)))` of an Erdős–Rényi
/// ensemble sitting on the phase-transition curve.
pub fn redundancy(r: f64) -> Result<f64> {
    Ok(r * (1.0 + 1.5 * phase_transition_curve(r)?))
}

fn check_ratio(r: f64) -> Result<()> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::param(format!("vertex ratio r = {r} must be finite and > 1")));
    }
    Ok(())
}

/// Golden-section search for a minimizer of a unimodal `f` on `[a, b]`.
pub fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Redundancy-minimizing ratio over `(1, 4]` and the minimum value.
pub fn minimize_redundancy() -> (f64, f64) {
    golden_section_min(|r| redundancy(r).unwrap_or(f64::INFINITY), 1.0 + 1e-9, 4.0, 1e-10)
}
