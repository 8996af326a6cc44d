use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, CVector};
use crate::rng::rng_from_seed;
use crate::{Complex64, Error, Result};

/// Monte-Carlo upper estimate of the `α`-projective uniformity of the columns
/// of `phi`.
///
/// For a unit `x` the inner `max_I min_{i∈I}` equals the `⌈αn⌉`-th largest
/// of `|⟨x,φ_i⟩|²`; the estimate is the minimum of that order statistic over
/// `n_samples` uniformly random unit vectors, so it never falls below the
/// true value.
pub fn estimate_projective_uniformity(phi: &CMatrix, alpha: f64, n_samples: usize, seed: u64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::param(format!("α = {alpha} must lie in (0, 1]")));
    }
    if n_samples == 0 || phi.ncols() == 0 || phi.nrows() == 0 {
        return Err(Error::param("projective uniformity needs samples and a nonempty frame"));
    }
    let (dim, n) = phi.shape();
    let rank = ((alpha * n as f64 - 1e-9).ceil() as usize).clamp(1, n);
    let mut rng = rng_from_seed(seed);
    let mut best = f64::INFINITY;
    let mut vals = vec![0.0; n];
    for _ in 0..n_samples {
        let mut x = CVector::from_fn(dim, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        });
        let norm = x.norm();
        if norm == 0.0 {
            continue;
        }
        x /= Complex64::new(norm, 0.0);
        for (j, v) in vals.iter_mut().enumerate() {
            *v = phi.column(j).dotc(&x).norm_sqr();
        }
        // rank-th largest = (n − rank)-th smallest (0-based)
        let (_, kth, _) = vals.select_nth_unstable_by(n - rank, f64::total_cmp);
        best = best.min(*kth);
    }
    Ok(best)
}
