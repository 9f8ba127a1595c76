//! SU(2): elements, Euler angles, spin-j matrices, class-sphere quadrature
//! and the class operator on each spin block.
//!
//! Spins are carried doubled (`j2 = 2j`). Conjugacy classes are the spheres
//! `C_psi = { x g(psi) x^-1 }`, parametrized by `x = g(phi) h(theta)` with
//! `g(t) = exp(i t/2 sigma_3)` and `h(theta) = exp(i theta/2 sigma_1)`.

use std::f64::consts::PI;

use nalgebra::Matrix3;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cplx, CMatrix, ONE, ZERO};
use crate::quadrature::{gauss_legendre, uniform_periodic};

pub const DEFAULT_N_THETA: usize = 16;
pub const DEFAULT_N_PHI: usize = 32;

/// `[[a, b], [-conj(b), conj(a)]]` with `|a|^2 + |b|^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SU2Element {
    pub a: Complex64,
    pub b: Complex64,
}

impl SU2Element {
    pub fn identity() -> Self {
        SU2Element { a: ONE, b: ZERO }
    }

    /// Normalizes `(a, b)`; fails on the zero pair.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if !(r.is_finite() && r > 1e-300) {
            return Err(Error::InvalidGroup(format!("({a}, {b}) does not normalize to SU(2)")));
        }
        Ok(SU2Element { a: a / r, b: b / r })
    }

    /// `g(t) = diag(e^{it/2}, e^{-it/2})`
    pub fn g(t: f64) -> Self {
        SU2Element { a: Complex64::from_polar(1.0, t / 2.0), b: ZERO }
    }

    /// `h(theta) = exp(i theta/2 sigma_1)`
    pub fn h(theta: f64) -> Self {
        SU2Element { a: cplx((theta / 2.0).cos(), 0.0), b: cplx(0.0, (theta / 2.0).sin()) }
    }

    /// `exp(i x . sigma)`; surjective onto SU(2) from the ball `|x| <= pi`.
    pub fn exp(x: [f64; 3]) -> Self {
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if r == 0.0 {
            return Self::identity();
        }
        let (s, c) = r.sin_cos();
        let u = [x[0] / r, x[1] / r, x[2] / r];
        SU2Element { a: cplx(c, s * u[2]), b: cplx(s * u[1], s * u[0]) }
    }

    pub fn from_euler(angles: &EulerAngles) -> Self {
        Self::g(angles.phi).mul(&Self::h(angles.theta)).mul(&Self::g(angles.psi))
    }

    /// Uniform (Haar) sample via a normalized Gaussian 4-vector.
    pub fn haar_random(rng: &mut impl Rng) -> Self {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        SU2Element::new(cplx(v[0], v[1]), cplx(v[2], v[3])).expect("nonzero Gaussian sample")
    }

    pub fn mul(&self, o: &Self) -> Self {
        SU2Element { a: self.a * o.a - self.b * o.b.conj(), b: self.a * o.b + self.b * o.a.conj() }
    }

    pub fn inverse(&self) -> Self {
        SU2Element { a: self.a.conj(), b: -self.b }
    }

    /// `self * x * self^-1`
    pub fn conjugate(&self, x: &Self) -> Self {
        self.mul(x).mul(&self.inverse())
    }

    pub fn renormalized(&self) -> Self {
        SU2Element::new(self.a, self.b).unwrap_or_else(|_| Self::identity())
    }

    pub fn norm_defect(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() - 1.0).abs()
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[self.a, self.b, -self.b.conj(), self.a.conj()])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles {
    pub phi: f64,
    pub theta: f64,
    pub psi: f64,
}

impl EulerAngles {
    /// `phi in [0, 2pi)`, `theta in [0, pi]`, `psi in [-2pi, 2pi)`.
    pub fn new(phi: f64, theta: f64, psi: f64) -> Result<Self> {
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidGroup(format!("Euler angle phi = {phi} outside [0, 2pi)")));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidGroup(format!("Euler angle theta = {theta} outside [0, pi]")));
        }
        if !(-2.0 * PI..2.0 * PI).contains(&psi) {
            return Err(Error::InvalidGroup(format!("Euler angle psi = {psi} outside [-2pi, 2pi)")));
        }
        Ok(EulerAngles { phi, theta, psi })
    }

    pub fn element(&self) -> SU2Element {
        SU2Element::from_euler(self)
    }
}

/// Pauli matrices.
pub fn sigma() -> [CMatrix; 3] {
    let (z, o, i) = (ZERO, ONE, cplx(0.0, 1.0));
    [
        CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
    ]
}

/// `Ad(g)_{beta alpha} = tr(sigma_beta g sigma_alpha g^-1) / 2`, the covering
/// map onto SO(3). `Ad(g(phi) h(theta)) e_3 = (sin t sin p, sin t cos p, cos t)`.
pub fn ad_map(g: &SU2Element) -> Matrix3<f64> {
    let s = sigma();
    let gm = g.matrix();
    let gi = g.inverse().matrix();
    Matrix3::from_fn(|beta, alpha| 0.5 * (&s[beta] * &gm * &s[alpha] * &gi).trace().re)
}

/// Class-sphere point `n(phi, theta)`.
pub fn class_axis(phi: f64, theta: f64) -> [f64; 3] {
    [theta.sin() * phi.sin(), theta.sin() * phi.cos(), theta.cos()]
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = vec![1.0; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k as f64;
    }
    f
}

/// Spin-`j2/2` representation on the symmetric power of C^2. Basis index
/// `i = 0..=j2` carries weight `m = j - i`, so `g(t)` acts diagonally by
/// `e^{i m t}`.
#[derive(Clone, Debug)]
pub struct WignerD {
    j2: u32,
    fact: Vec<f64>,
}

impl WignerD {
    pub fn new(j2: u32) -> Self {
        WignerD { j2, fact: factorials(j2 as usize) }
    }

    pub fn j2(&self) -> u32 {
        self.j2
    }

    pub fn dim(&self) -> usize {
        self.j2 as usize + 1
    }

    pub fn matrix(&self, g: &SU2Element) -> CMatrix {
        let n = self.j2 as usize;
        let d = n + 1;
        let powers = |z: Complex64| {
            let mut v = vec![ONE; d];
            for k in 1..d {
                v[k] = v[k - 1] * z;
            }
            v
        };
        // U e1 = a e1 - conj(b) e2, U e2 = b e1 + conj(a) e2
        let (pa, pmb, pb, pac) = (powers(g.a), powers(-g.b.conj()), powers(g.b), powers(g.a.conj()));
        let f = &self.fact;
        let binom = |n: usize, k: usize| f[n] / (f[k] * f[n - k]);
        let mut out = CMatrix::zeros(d, d);
        for col in 0..d {
            // u = e1^p e2^q / sqrt(p! q!), q = col
            let q = col;
            let p = n - q;
            let norm_in = (f[p] * f[q]).sqrt();
            for s in 0..=p {
                let left = pa[s] * pmb[p - s] * binom(p, s);
                for t in 0..=q {
                    let p_out = s + t;
                    let q_out = n - p_out;
                    let term = left * pb[t] * pac[q - t] * binom(q, t);
                    out[(q_out, col)] += term * ((f[p_out] * f[q_out]).sqrt() / norm_in);
                }
            }
        }
        out
    }

    /// `sin((2j+1) psi/2) / sin(psi/2)`, the character at `g(psi)`.
    pub fn character_closed_form(&self, psi: f64) -> f64 {
        let d = self.dim() as f64;
        let s = (psi / 2.0).sin();
        if s.abs() < 1e-300 {
            // psi in 2pi Z: +-dim
            return d * ((psi / 2.0).cos().signum()).powi(self.j2 as i32);
        }
        (d * psi / 2.0).sin() / s
    }
}

/// Product rule on the class sphere: Gauss–Legendre in `cos(theta)` times
/// uniform `phi`; weights sum to 1.
#[derive(Clone, Debug)]
pub struct SphereQuadrature {
    pub n_theta: usize,
    pub n_phi: usize,
    /// `(phi, theta, weight)`
    pub nodes: Vec<(f64, f64, f64)>,
}

impl SphereQuadrature {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::InvalidGroup(format!("sphere quadrature needs positive node counts, got ({n_theta}, {n_phi})")));
        }
        let (x, w) = gauss_legendre(n_theta);
        let phis = uniform_periodic(n_phi, 0.0, 2.0 * PI);
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        for (xi, wi) in x.iter().zip(&w) {
            let theta = xi.clamp(-1.0, 1.0).acos();
            for &(phi, wp) in &phis {
                nodes.push((phi, theta, wi / 2.0 * wp));
            }
        }
        Ok(SphereQuadrature { n_theta, n_phi, nodes })
    }

    pub fn weight_sum(&self) -> f64 {
        self.nodes.iter().map(|n| n.2).sum()
    }
}

impl Default for SphereQuadrature {
    fn default() -> Self {
        SphereQuadrature::new(DEFAULT_N_THETA, DEFAULT_N_PHI).expect("default node counts are positive")
    }
}

/// Haar rule on SU(2) in Euler angles, exact for products of matrix elements
/// whose doubled spins add up to at most `total_j2`.
pub fn haar_rule(total_j2: u32) -> Vec<(SU2Element, f64)> {
    let n_angle = total_j2 as usize + 1;
    let n_theta = (total_j2 as usize + 2).div_ceil(4) + 1;
    let (x, w) = gauss_legendre(n_theta);
    let phis = uniform_periodic(n_angle, 0.0, 2.0 * PI);
    let psis = uniform_periodic(n_angle, -2.0 * PI, 4.0 * PI);
    let mut out = Vec::with_capacity(n_theta * n_angle * n_angle);
    for (xi, wi) in x.iter().zip(&w) {
        let theta = xi.clamp(-1.0, 1.0).acos();
        for &(phi, wp) in &phis {
            for &(psi, ws) in &psis {
                let e = SU2Element::g(phi).mul(&SU2Element::h(theta)).mul(&SU2Element::g(psi));
                out.push((e, wi / 2.0 * wp * ws));
            }
        }
    }
    out
}

/// Average of the spin-`j2/2` matrices over the diagonal circle `{g(t)}`:
/// the projector onto the weight-zero line (zero for half-integer spin).
pub fn centralizer_average(j2: u32) -> CMatrix {
    let d = WignerD::new(j2);
    let mut m = CMatrix::zeros(d.dim(), d.dim());
    // g(t) for t over [0, 4pi) covers the circle once
    for (t, w) in uniform_periodic(2 * j2 as usize + 2, 0.0, 4.0 * PI) {
        m += d.matrix(&SU2Element::g(t)) * cplx(w, 0.0);
    }
    m
}

fn check_psi(psi: f64) -> Result<()> {
    if !(psi > 0.0 && psi < 2.0 * PI) {
        return Err(Error::AngleDomain(psi));
    }
    Ok(())
}

/// `sin((2j+1) psi/2) / ((2j+1) sin(psi/2))` for `0 < psi < 2pi`.
pub fn closed_form_eigenvalue(j2: u32, psi: f64) -> Result<f64> {
    check_psi(psi)?;
    Ok(WignerD::new(j2).character_closed_form(psi) / (j2 as f64 + 1.0))
}

/// One term `coeff * conj(D^l(x)_{row, l})`: the weight-zero column is fixed
/// by the centralizer, so the term is a function on the class sphere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightTerm {
    pub l2: u32,
    pub row: usize,
    pub coeff: Complex64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SphereWeight {
    pub terms: Vec<WeightTerm>,
}

impl SphereWeight {
    pub fn constant(value: Complex64) -> Self {
        SphereWeight { terms: vec![WeightTerm { l2: 0, row: 0, coeff: value }] }
    }

    pub fn matrix_element(l2: u32, row: usize) -> Self {
        SphereWeight { terms: vec![WeightTerm { l2, row, coeff: ONE }] }
    }

    pub fn validate(&self) -> Result<()> {
        for t in &self.terms {
            if t.l2 % 2 == 1 {
                return Err(Error::HalfIntegerWeight { l2: t.l2 });
            }
            if t.row > t.l2 as usize {
                return Err(Error::IndexOutOfRange { index: t.row, dim: t.l2 as usize + 1 });
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &SU2Element) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let d = WignerD::new(t.l2).matrix(x);
                t.coeff * d[(t.row, t.l2 as usize / 2)].conj()
            })
            .sum()
    }

    /// `(lambda(g) f)(x) = f(g^-1 x)`; stays inside each spin-l span.
    pub fn left_translate(&self, g: &SU2Element) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            let d = WignerD::new(t.l2).matrix(g);
            for k in 0..=t.l2 as usize {
                terms.push(WeightTerm { l2: t.l2, row: k, coeff: t.coeff * d[(k, t.row)] });
            }
        }
        SphereWeight { terms }
    }
}

/// `int_{S^2} f(n) T^j(x g(psi) x^-1) dmu` with `x = g(phi) h(theta)`.
pub fn weighted_class_operator_su2(j2: u32, psi: f64, weight: &SphereWeight, quad: &SphereQuadrature) -> Result<CMatrix> {
    check_psi(psi)?;
    weight.validate()?;
    let d = WignerD::new(j2);
    let g0 = SU2Element::g(psi);
    let mut m = CMatrix::zeros(d.dim(), d.dim());
    for &(phi, theta, w) in &quad.nodes {
        let x = SU2Element::g(phi).mul(&SU2Element::h(theta));
        let f = weight.evaluate(&x);
        if f == ZERO {
            continue;
        }
        m += d.matrix(&x.conjugate(&g0)) * (f * w);
    }
    Ok(m)
}

/// Class operator `T^j(1; g(psi))` by quadrature.
pub fn class_operator_quadrature(j2: u32, psi: f64, quad: &SphereQuadrature) -> Result<CMatrix> {
    check_psi(psi)?;
    let d = WignerD::new(j2);
    let g0 = SU2Element::g(psi);
    let mut m = CMatrix::zeros(d.dim(), d.dim());
    for &(phi, theta, w) in &quad.nodes {
        let x = SU2Element::g(phi).mul(&SU2Element::h(theta));
        m += d.matrix(&x.conjugate(&g0)) * cplx(w, 0.0);
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub j2: u32,
    pub psi: f64,
    pub n_theta: usize,
    pub n_phi: usize,
    pub max_abs_error: f64,
    pub closed_form_value: f64,
}

/// Max-abs error of the quadrature against `closed_form * I`, per
/// `(j2, psi, order)`, in that nesting order.
pub fn convergence_table(j2s: &[u32], psis: &[f64], orders: &[(usize, usize)]) -> Result<Vec<ConvergenceRow>> {
    let quads = orders.iter().map(|&(t, p)| SphereQuadrature::new(t, p)).collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for &j2 in j2s {
        for &psi in psis {
            let value = closed_form_eigenvalue(j2, psi)?;
            let target = CMatrix::identity(j2 as usize + 1, j2 as usize + 1) * cplx(value, 0.0);
            for q in &quads {
                let m = class_operator_quadrature(j2, psi, q)?;
                rows.push(ConvergenceRow {
                    j2,
                    psi,
                    n_theta: q.n_theta,
                    n_phi: q.n_phi,
                    max_abs_error: crate::linalg::max_abs_diff(&m, &target),
                    closed_form_value: value,
                });
            }
        }
    }
    Ok(rows)
}

pub const DEFAULT_PSIS: [f64; 6] = [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, PI, 3.0 * PI / 2.0];

/// `n_theta` doubling from 4 to 64 with `n_phi = 2 n_theta`.
pub fn default_orders() -> Vec<(usize, usize)> {
    [4, 8, 16, 32, 64].iter().map(|&n| (n, 2 * n)).collect()
}
