//! Dense complex linear algebra helpers shared by every module.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Entries below this magnitude never decide a phase.
const PHASE_THRESHOLD: f64 = 1e-6;

#[inline]
pub fn cplx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn max_abs_diff_slice(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "length mismatch in max_abs_diff_slice");
    a.iter()
        .zip(b)
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// max |U U* - I|
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_abs_diff(&(u * u.adjoint()), &CMatrix::identity(n, n))
}

/// max |A - A*|
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    max_abs_diff(a, &a.adjoint())
}

/// Scalar multiple of the identity closest to `m`, with the max deviation from it.
pub fn scalar_part(m: &CMatrix) -> (Complex64, f64) {
    let n = m.nrows();
    if n == 0 {
        return (ZERO, 0.0);
    }
    let s = m.trace() / n as f64;
    let dev = max_abs_diff(m, &(CMatrix::identity(n, n) * s));
    (s, dev)
}

/// Rotate `v` so its first entry of significant magnitude is real and positive.
pub fn fix_phase(v: &mut CVector) {
    if let Some(lead) = v.iter().find(|z| z.norm() > PHASE_THRESHOLD).copied() {
        let phase = lead.conj() / lead.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

/// Column-pivoted Gram-Schmidt: at each step the residual with the largest norm
/// (lowest index on ties) is normalized, phase-fixed and projected out of the
/// rest. Stops when every residual is below `tol`. Deterministic for a given
/// input, independent of any eigensolver basis choice.
pub fn pivoted_orthonormal_columns(cols: &[CVector], tol: f64) -> Vec<CVector> {
    let mut residuals: Vec<CVector> = cols.to_vec();
    let mut used = vec![false; cols.len()];
    let mut basis: Vec<CVector> = Vec::new();
    loop {
        let mut best: Option<(usize, f64)> = None;
        for (i, r) in residuals.iter().enumerate() {
            if used[i] {
                continue;
            }
            let n = r.norm();
            if best.is_none_or(|(_, bn)| n > bn * (1.0 + 1e-9)) {
                best = Some((i, n));
            }
        }
        let Some((pivot, norm)) = best else { break };
        if norm < tol {
            break;
        }
        used[pivot] = true;
        let mut q = residuals[pivot].clone();
        // re-orthogonalize once against the accepted basis
        for b in &basis {
            let proj = b.dotc(&q);
            q -= b * proj;
        }
        let qn = q.norm();
        if qn < tol {
            continue;
        }
        q /= Complex64::from(qn);
        fix_phase(&mut q);
        for (i, r) in residuals.iter_mut().enumerate() {
            if !used[i] {
                let proj = q.dotc(r);
                *r -= &q * proj;
            }
        }
        basis.push(q);
    }
    basis
}

/// Orthonormal basis of the column space of `m` via [`pivoted_orthonormal_columns`].
pub fn column_space(m: &CMatrix, tol: f64) -> Vec<CVector> {
    let cols: Vec<CVector> = m.column_iter().map(|c| c.into_owned()).collect();
    pivoted_orthonormal_columns(&cols, tol)
}

/// Extends an orthonormal family to a full orthonormal basis of C^n by
/// appending standard basis vectors in index order.
pub fn complete_basis(partial: &[CVector], n: usize) -> Vec<CVector> {
    let mut basis: Vec<CVector> = partial.to_vec();
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v = CVector::zeros(n);
        v[k] = ONE;
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dotc(&v);
                v -= b * proj;
            }
        }
        let norm = v.norm();
        if norm > 1e-8 {
            v /= Complex64::from(norm);
            fix_phase(&mut v);
            basis.push(v);
        }
    }
    basis
}

pub fn columns_to_matrix(cols: &[CVector], nrows: usize) -> CMatrix {
    let mut m = CMatrix::zeros(nrows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted ascending.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    let sym = (a + a.adjoint()) * cplx(0.5, 0.0);
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Groups sorted eigenvalues into clusters whose members lie within `tol` of
/// their neighbours. Returns index ranges.
pub fn cluster_sorted(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Rank of a Hermitian positive semidefinite matrix from its spectrum.
pub fn psd_rank(a: &CMatrix, tol: f64) -> usize {
    let (values, _) = hermitian_eigen(a);
    values.iter().filter(|&&v| v > tol).count()
}
