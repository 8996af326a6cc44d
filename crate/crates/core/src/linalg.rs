//! Dense linear algebra shared by the spectral and reconstruction code.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Smallest singular value accepted by [`LeastSquares`].
pub const RANK_TOL: f64 = 1e-10;

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending.
pub fn sym_eigen_sorted(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let order = ascending_order(eig.eigenvalues.as_slice());
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn sym_eigenvalues_sorted(m: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Eigenpairs of a complex Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen_sorted(m: CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let order = ascending_order(eig.eigenvalues.as_slice());
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Bottom eigenpair of a positive semidefinite Hermitian matrix.
///
/// Tries inverse iteration on `m + 10⁻²·I` first, which converges quickly
/// when the bottom eigenvalue is well separated. If that stalls, the
/// eigenvalues are computed (much cheaper than eigenvectors), the shift is
/// moved just below `λ1`, and inverse iteration is rerun. A full
/// eigendecomposition is the last resort. Convergence means a residual
/// `‖m v − μ v‖ ≤ 10⁻¹²`.
pub fn psd_bottom_eigenpair(m: &CMatrix) -> (f64, CVector) {
    let n = m.nrows();
    let dense = || {
        let (values, vectors) = hermitian_eigen_sorted(m.clone());
        (values[0], vectors.column(0).into_owned())
    };
    if n == 0 {
        return (0.0, CVector::zeros(0));
    }
    if n <= 8 {
        return dense();
    }
    let start = CVector::from_fn(n, |i, _| Complex64::new(1.0 + 0.5 * (i as f64 * 0.7).sin(), 0.3 * (i as f64 * 1.3).cos()));
    if let Some(pair) = shifted_inverse_iteration(m, -1e-2, &start, 25) {
        return pair;
    }
    let values = sym_eigenvalues_sorted_c(m);
    let gap = values[1] - values[0];
    let shift = values[0] - (1e-3 * gap).max(1e-9);
    // a near-exact shift converges in a handful of steps
    shifted_inverse_iteration(m, shift, &start, 50).unwrap_or_else(dense)
}

fn sym_eigenvalues_sorted_c(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Inverse iteration on `m − shift·I`; `None` if the shifted matrix is not
/// positive definite or the residual is still above tolerance after
/// `max_iter` steps.
fn shifted_inverse_iteration(m: &CMatrix, shift: f64, start: &CVector, max_iter: usize) -> Option<(f64, CVector)> {
    const RESIDUAL_TOL: f64 = 1e-12;
    let n = m.nrows();
    let chol = (m - CMatrix::from_diagonal_element(n, n, Complex64::new(shift, 0.0))).cholesky()?;
    let mut v = start / Complex64::new(start.norm(), 0.0);
    for _ in 0..max_iter {
        let mut w = chol.solve(&v);
        let norm = w.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return None;
        }
        w /= Complex64::new(norm, 0.0);
        let mw = m * &w;
        let mu = w.dotc(&mw).re;
        v = w;
        if (mw - &v * Complex64::new(mu, 0.0)).norm() <= RESIDUAL_TOL {
            return Some((mu, v));
        }
    }
    None
}

fn ascending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    order
}

/// Index of the largest-magnitude entry; the first one wins ties.
pub fn argmax_abs<I: IntoIterator<Item = f64>>(abs: I) -> usize {
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (k, a) in abs.into_iter().enumerate() {
        if a > best_val {
            best = k;
            best_val = a;
        }
    }
    best
}

/// Flips a real eigenvector so its largest-magnitude coordinate is positive.
pub fn fix_sign(v: &mut [f64]) {
    if v.is_empty() {
        return;
    }
    let k = argmax_abs(v.iter().map(|x| x.abs()));
    if v[k] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Rotates a complex eigenvector so its largest-magnitude coordinate is
/// positive real.
pub fn fix_phase(v: &mut [Complex64]) {
    if v.is_empty() {
        return;
    }
    let k = argmax_abs(v.iter().map(|z| z.norm()));
    let r = v[k].norm();
    if r > 0.0 {
        let rot = v[k].conj() / r;
        v.iter_mut().for_each(|z| *z *= rot);
    }
}

/// Least-squares solver for `min_x ‖Φ* x − y‖` with `Φ` an `M × k` frame
/// (`k ≥ M`).
///
/// Factors `Φ*` once through a thin SVD; [`solve`](Self::solve) applies the
/// Moore-Penrose pseudoinverse and [`project`](Self::project) the orthogonal
/// projector onto the range of `Φ*`.
pub struct LeastSquares {
    // Φ* = U Σ V*, U is k × M
    u: CMatrix,
    sigma: DVector<f64>,
    v: CMatrix,
}

impl LeastSquares {
    pub fn new(phi: &CMatrix) -> Result<Self> {
        let (m, k) = phi.shape();
        if m == 0 || k < m {
            return Err(Error::RankDeficient { sigma_min: 0.0 });
        }
        let svd = SVD::new(phi.adjoint(), true, true);
        let sigma_min = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
        if !(sigma_min > RANK_TOL) {
            return Err(Error::RankDeficient { sigma_min });
        }
        let u = svd.u.expect("requested U");
        let v = svd.v_t.expect("requested V*").adjoint();
        Ok(Self { u, sigma: svd.singular_values, v })
    }

    pub fn dim(&self) -> usize {
        self.v.nrows()
    }

    pub fn n_rows(&self) -> usize {
        self.u.nrows()
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma.iter().copied().fold(0.0, f64::max)
    }

    pub fn solve(&self, y: &CVector) -> Result<CVector> {
        if y.len() != self.n_rows() {
            return Err(Error::DimensionMismatch { expected: self.n_rows(), found: y.len() });
        }
        let mut coeff = self.u.ad_mul(y);
        for (c, s) in coeff.iter_mut().zip(self.sigma.iter()) {
            *c /= *s;
        }
        Ok(&self.v * coeff)
    }

    pub fn project(&self, y: &CVector) -> CVector {
        &self.u * self.u.ad_mul(y)
    }
}

/// Frame coefficients `Φ* x`, i.e. `⟨x, φ_i⟩ = Σ_m conj(φ_i[m]) x[m]`.
pub fn analysis(phi: &CMatrix, x: &CVector) -> CVector {
    phi.ad_mul(x)
}
