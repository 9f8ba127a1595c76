//! Coupling coefficients for the conjugation representation on `L(V^sigma)`,
//! centralizer-adapted bases, Frobenius multiplicities and the
//! Wigner–Eckart factorization of weighted class operators.
//!
//! `L(V)` carries the Frobenius inner product `<A|B> = tr(A B*)`, so the
//! matrix units `E_ij` are orthonormal and
//! `c(sigma i; sigma-bar j | gamma m n) = <E_ij | e^gamma_mn> = conj(e^gamma_mn[i, j])`.
//! The adapted vectors are built with the projectors
//! `P^gamma_qn = n^gamma int conj(t^gamma_qn(x)) Ad(x) dx`, so each copy
//! `{e^gamma_mn}_n` transforms by exactly the chosen matrices `t^gamma`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ConjugacyClass, FiniteGroup};
use crate::linalg::{column_space, columns_to_matrix, complete_basis, cplx, max_abs, CMatrix, CVector, ZERO};
use crate::repr::{CharacterTable, Irrep};
use crate::su2::{centralizer_average, haar_rule, WignerD};

pub const COUPLING_SCHEMA: &str = "classop-coupling/1";
const RANK_TOL: f64 = 1e-8;

/// Irreducible matrices sampled on an exact Haar rule: all elements with
/// weight `1/|G|` for a finite group, a product rule for truncated SU(2).
#[derive(Clone, Debug)]
pub struct IrrepSystem {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub weights: Vec<f64>,
    /// `matrices[alpha][node]`
    pub matrices: Vec<Vec<CMatrix>>,
    /// `bases[alpha]`: columns of the working basis in the original one.
    pub bases: Vec<CMatrix>,
    /// Largest `sigma` whose `L(V^sigma)` fits inside the truncation and
    /// whose coupling integrals the rule integrates exactly.
    pub max_sigma: usize,
}

impl IrrepSystem {
    pub fn finite(group: &FiniteGroup, irreps: &[Irrep]) -> Self {
        let w = 1.0 / group.order() as f64;
        IrrepSystem {
            labels: irreps.iter().map(|r| r.alpha.to_string()).collect(),
            dims: irreps.iter().map(|r| r.dim).collect(),
            weights: vec![w; group.order()],
            matrices: irreps.iter().map(|r| r.matrices.clone()).collect(),
            bases: irreps.iter().map(|r| CMatrix::identity(r.dim, r.dim)).collect(),
            max_sigma: irreps.len().saturating_sub(1),
        }
    }

    /// Spins `0, 1/2, ..., max_j2/2`, on a rule exact for coupling tables of
    /// every `sigma` with `2 sigma <= max_j2 / 2`.
    pub fn su2(max_j2: u32) -> Self {
        let rule = haar_rule(2 * max_j2);
        let spins: Vec<WignerD> = (0..=max_j2).map(WignerD::new).collect();
        IrrepSystem {
            labels: (0..=max_j2).map(spin_label).collect(),
            dims: spins.iter().map(|d| d.dim()).collect(),
            weights: rule.iter().map(|r| r.1).collect(),
            matrices: spins.iter().map(|d| rule.iter().map(|(g, _)| d.matrix(g)).collect()).collect(),
            bases: spins.iter().map(|d| CMatrix::identity(d.dim(), d.dim())).collect(),
            max_sigma: max_j2 as usize / 2,
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Re-expresses every irrep in the orthonormal basis `bases[alpha]`
    /// (columns given in the current working basis).
    pub fn with_bases(&self, bases: &[CMatrix]) -> Self {
        let matrices = self
            .matrices
            .iter()
            .zip(bases)
            .map(|(ms, b)| ms.iter().map(|m| b.adjoint() * m * b).collect())
            .collect();
        IrrepSystem {
            labels: self.labels.clone(),
            dims: self.dims.clone(),
            weights: self.weights.clone(),
            matrices,
            bases: self.bases.iter().zip(bases).map(|(old, b)| old * b).collect(),
            max_sigma: self.max_sigma,
        }
    }

    /// Converts a matrix given in the original basis of `alpha` to the working basis.
    pub fn to_working(&self, alpha: usize, original: &CMatrix) -> CMatrix {
        let b = &self.bases[alpha];
        b.adjoint() * original * b
    }

    /// `int f(x) dx` over the rule.
    fn integrate<F: FnMut(usize) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.weights.iter().enumerate().map(|(k, &w)| f(k) * w).sum()
    }
}

pub fn spin_label(j2: u32) -> String {
    if j2.is_multiple_of(2) {
        format!("j={}", j2 / 2)
    } else {
        format!("j={j2}/2")
    }
}

/// One copy `{e^gamma_mn}_n`; `coeffs[n][i * dim + j] = c(sigma i; sigma-bar j | gamma m n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingBlock {
    pub gamma: usize,
    pub copy: usize,
    pub coeffs: Vec<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingTable {
    pub schema: String,
    pub sigma: usize,
    pub dim: usize,
    pub gamma_dims: Vec<usize>,
    /// `m(sigma; gamma)` for every gamma of the system.
    pub multiplicities: Vec<usize>,
    pub blocks: Vec<CouplingBlock>,
}

impl CouplingTable {
    pub fn multiplicity(&self, gamma: usize) -> usize {
        self.multiplicities[gamma]
    }

    /// Same integer under the name used for multiplicities of `L(V)`.
    pub fn three_j(&self, gamma: usize) -> usize {
        self.multiplicity(gamma)
    }

    /// Classes occurring in `L(V^sigma)`.
    pub fn gammas(&self) -> Vec<usize> {
        (0..self.multiplicities.len()).filter(|&g| self.multiplicities[g] > 0).collect()
    }

    fn block(&self, gamma: usize, m: usize) -> Option<&CouplingBlock> {
        self.blocks.iter().find(|b| b.gamma == gamma && b.copy == m)
    }

    /// `c(sigma i; sigma-bar j | gamma m n)`, zero outside the table.
    pub fn c(&self, i: usize, j: usize, gamma: usize, m: usize, n: usize) -> Complex64 {
        self.block(gamma, m).map_or(ZERO, |b| b.coeffs[n][i * self.dim + j])
    }

    /// Adapted basis vector `e^gamma_mn` as a matrix on `V^sigma`.
    pub fn basis_element(&self, gamma: usize, m: usize, n: usize) -> Option<CMatrix> {
        let b = self.block(gamma, m)?;
        Some(CMatrix::from_fn(self.dim, self.dim, |i, j| b.coeffs[n][i * self.dim + j].conj()))
    }

    /// Change of basis with rows `(i, j)` and columns `(gamma, m, n)`.
    pub fn change_of_basis(&self) -> CMatrix {
        let d2 = self.dim * self.dim;
        let cols: Vec<CVector> = self
            .blocks
            .iter()
            .flat_map(|b| b.coeffs.iter().map(|c| CVector::from_column_slice(c)))
            .collect();
        let mut m = CMatrix::zeros(d2, cols.len());
        for (k, c) in cols.iter().enumerate() {
            m.set_column(k, c);
        }
        m
    }

    /// `sum_{gamma m n} n^gamma m(sigma; gamma)` against `(n^sigma)^2`.
    pub fn dimension_defect(&self) -> i64 {
        let covered: usize = self.multiplicities.iter().zip(&self.gamma_dims).map(|(m, n)| m * n).sum();
        covered as i64 - (self.dim * self.dim) as i64
    }

    /// `max |sum_{gamma m n} c(ij|.) conj(c(kl|.)) - delta_ik delta_jl|`.
    pub fn unitarity_defect(&self) -> f64 {
        let u = self.change_of_basis();
        if u.ncols() != u.nrows() {
            return f64::INFINITY;
        }
        let n = u.nrows();
        let a = max_abs(&(&u * u.adjoint() - CMatrix::identity(n, n)));
        let b = max_abs(&(u.adjoint() * &u - CMatrix::identity(n, n)));
        a.max(b)
    }

    /// `max_{ij} |E_ij - sum c(sigma i; sigma-bar j | gamma m n) e^gamma_mn|`.
    pub fn reconstruction_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut acc = CMatrix::zeros(d, d);
                for b in &self.blocks {
                    for (n, coeff) in b.coeffs.iter().enumerate() {
                        let e = self.basis_element(b.gamma, b.copy, n).expect("block exists");
                        acc += e * coeff[i * d + j];
                    }
                }
                acc[(i, j)] -= Complex64::from(1.0);
                worst = worst.max(max_abs(&acc));
            }
        }
        worst
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let table: CouplingTable = serde_json::from_str(text)?;
        if table.schema != COUPLING_SCHEMA {
            return Err(Error::Schema { found: table.schema, expected: COUPLING_SCHEMA.into() });
        }
        Ok(table)
    }
}

/// `Ad(x) = T(x) (x) conj(T(x))` acting on row-major `vec(A)`.
fn conjugation_matrix(t: &CMatrix) -> CMatrix {
    t.kronecker(&t.map(|z| z.conj()))
}

/// Canonical decomposition of `A -> T^sigma(x) A T^sigma(x)^-1` with coupling
/// coefficients against the matrix units of the working basis.
pub fn conjugation_decomposition(system: &IrrepSystem, sigma: usize) -> Result<CouplingTable> {
    let n = system.dims[sigma];
    let d2 = n * n;
    if sigma > system.max_sigma {
        // only the integer spins up to the truncation fit
        let top = system.len().saturating_sub(1) / 2;
        return Err(Error::Truncation { covered: ((top + 1) * (top + 1)).min(d2), expected: d2 });
    }
    let ads: Vec<CMatrix> = system.matrices[sigma].iter().map(conjugation_matrix).collect();
    let mut multiplicities = vec![0; system.len()];
    let mut blocks = Vec::new();
    for gamma in 0..system.len() {
        let ng = system.dims[gamma];
        // P^gamma_{q0}, q = 0..ng
        let projectors: Vec<CMatrix> = (0..ng)
            .map(|q| {
                let mut p = CMatrix::zeros(d2, d2);
                for (k, ad) in ads.iter().enumerate() {
                    let coeff = system.matrices[gamma][k][(q, 0)].conj() * (ng as f64 * system.weights[k]);
                    if coeff != ZERO {
                        p += ad * coeff;
                    }
                }
                p
            })
            .collect();
        let heads = column_space(&projectors[0], RANK_TOL);
        let trace = projectors[0].trace().re;
        if (trace - heads.len() as f64).abs() > 1e-6 {
            return Err(Error::IrrepCheck(format!(
                "isotypic projector for gamma = {} has trace {trace} but rank {}",
                system.labels[gamma],
                heads.len()
            )));
        }
        multiplicities[gamma] = heads.len();
        for (copy, head) in heads.iter().enumerate() {
            let coeffs = projectors
                .iter()
                .map(|p| {
                    let e = p * head;
                    e.iter().map(|z| z.conj()).collect()
                })
                .collect();
            blocks.push(CouplingBlock { gamma, copy, coeffs });
        }
    }
    let table = CouplingTable {
        schema: COUPLING_SCHEMA.into(),
        sigma,
        dim: n,
        gamma_dims: system.dims.clone(),
        multiplicities,
        blocks,
    };
    let defect = table.dimension_defect();
    if defect != 0 {
        return Err(Error::Truncation { covered: (d2 as i64 + defect) as usize, expected: d2 });
    }
    Ok(table)
}

/// Residual of
/// `conj(t^s_ir) t^s_sp = sum_{gamma m n q} conj(c(s i|gamma m q)) t^gamma_qn c(p r|gamma m n)`
/// at one element, given as the matrices of every irrep there (working basis).
pub fn product_expansion_check(table: &CouplingTable, at: &[CMatrix]) -> f64 {
    let d = table.dim;
    let t = &at[table.sigma];
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for r in 0..d {
            for s in 0..d {
                for p in 0..d {
                    let lhs = t[(i, r)].conj() * t[(s, p)];
                    let mut rhs = ZERO;
                    for b in &table.blocks {
                        let tg = &at[b.gamma];
                        for n in 0..tg.nrows() {
                            let cp = b.coeffs[n][p * d + r];
                            if cp == ZERO {
                                continue;
                            }
                            for q in 0..tg.nrows() {
                                rhs += b.coeffs[q][s * d + i].conj() * tg[(q, n)] * cp;
                            }
                        }
                    }
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
    }
    worst
}

/// Residual of
/// `int conj(t^a_kl) conj(t^s_ir) t^s_sp = (1/n^a) sum_m conj(c(s i|a m k)) c(p r|a m l)`
/// over all index tuples.
pub fn triple_product_check(system: &IrrepSystem, table: &CouplingTable, alpha: usize) -> f64 {
    let d = table.dim;
    let na = system.dims[alpha];
    let ta = &system.matrices[alpha];
    let ts = &system.matrices[table.sigma];
    let mut worst: f64 = 0.0;
    for k in 0..na {
        for l in 0..na {
            for i in 0..d {
                for r in 0..d {
                    for s in 0..d {
                        for p in 0..d {
                            let lhs = system.integrate(|x| ta[x][(k, l)].conj() * ts[x][(i, r)].conj() * ts[x][(s, p)]);
                            let rhs: Complex64 = (0..table.multiplicity(alpha))
                                .map(|m| table.c(s, i, alpha, m, k).conj() * table.c(p, r, alpha, m, l))
                                .sum::<Complex64>()
                                / na as f64;
                            worst = worst.max((lhs - rhs).norm());
                        }
                    }
                }
            }
        }
    }
    worst
}

/// Orthonormal basis of `V^alpha` whose first `m_alpha` columns span the
/// centralizer-fixed vectors; the remaining columns span the invariant
/// complement.
#[derive(Clone, Debug, PartialEq)]
pub struct ZFixedBasis {
    pub alpha: usize,
    pub m_alpha: usize,
    pub basis: CMatrix,
}

impl ZFixedBasis {
    /// From the centralizer average (the projector onto the fixed vectors).
    pub fn from_average(alpha: usize, average: &CMatrix) -> Self {
        let fixed = column_space(average, RANK_TOL);
        let m_alpha = fixed.len();
        let full = complete_basis(&fixed, average.nrows());
        ZFixedBasis { alpha, m_alpha, basis: columns_to_matrix(&full, average.nrows()) }
    }

    /// `max_{h, c < m_alpha} |T(h) e_c - e_c|` over the given centralizer matrices.
    pub fn fixed_defect<'a>(&self, centralizer: impl IntoIterator<Item = &'a CMatrix>) -> f64 {
        let mut worst: f64 = 0.0;
        for t in centralizer {
            for c in 0..self.m_alpha {
                let e = self.basis.column(c);
                worst = worst.max((t * e - e).iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
        worst
    }
}

/// `(1/|Z0|) sum_{h in Z0} T^alpha(h)`
pub fn centralizer_mean(irrep: &Irrep, class: &ConjugacyClass) -> CMatrix {
    let mut avg = CMatrix::zeros(irrep.dim, irrep.dim);
    for &h in &class.centralizer {
        avg += irrep.matrix(h);
    }
    avg / Complex64::from(class.centralizer_order() as f64)
}

pub fn z_fixed_basis(irrep: &Irrep, class: &ConjugacyClass) -> ZFixedBasis {
    ZFixedBasis::from_average(irrep.alpha, &centralizer_mean(irrep, class))
}

/// SU(2) with the diagonal circle as centralizer: the weight-zero vector.
pub fn z_fixed_basis_su2(j2: u32) -> ZFixedBasis {
    ZFixedBasis::from_average(j2 as usize, &centralizer_average(j2))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrobeniusRow {
    pub alpha: usize,
    pub fixed_dim: usize,
    pub induced_multiplicity: usize,
    /// Distance of the character inner product from the nearest integer.
    pub rounding: f64,
    pub pass: bool,
}

/// `dim V^alpha_0` against the multiplicity of `alpha` in the permutation
/// representation on `G/Z0`, for every irrep.
pub fn frobenius_multiplicity_check(
    group: &FiniteGroup,
    table: &CharacterTable,
    irreps: &[Irrep],
    class: &ConjugacyClass,
) -> Vec<FrobeniusRow> {
    // fixed points of g on the class = members commuting with g
    let fixed_counts: Vec<f64> = group
        .elements()
        .map(|g| class.members.iter().filter(|&&c| group.mul(g, c) == group.mul(c, g)).count() as f64)
        .collect();
    irreps
        .iter()
        .map(|irrep| {
            let alpha = irrep.alpha;
            let fixed_dim = z_fixed_basis(irrep, class).m_alpha;
            let inner: Complex64 = group
                .elements()
                .map(|g| table.chi(alpha, g).conj() * fixed_counts[g])
                .sum::<Complex64>()
                / group.order() as f64;
            let rounded = inner.re.round();
            let rounding = (inner - cplx(rounded, 0.0)).norm();
            let induced_multiplicity = rounded.max(0.0) as usize;
            FrobeniusRow { alpha, fixed_dim, induced_multiplicity, rounding, pass: fixed_dim == induced_multiplicity && rounding < 1e-8 }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedMatrixElement {
    pub sigma: usize,
    pub alpha: usize,
    pub l: usize,
    pub m: usize,
    pub g0: String,
    /// `(1/n^alpha) sum_{pr} c(sigma p; sigma-bar r | alpha m l) t^sigma_pr(g0)`
    pub value: Complex64,
}

/// Prediction for the weight `conj(t^alpha_kl)` restricted to the sigma block.
#[derive(Clone, Debug)]
pub struct WignerEckartPrediction {
    pub alpha: usize,
    pub sigma: usize,
    pub k: usize,
    pub l: usize,
    /// `block[(u, i)] = (1/n^alpha) sum_m conj(c(sigma u; sigma-bar i | alpha m k)) R_ml`;
    /// also the matrix of `T^sigma(conj(t^alpha_kl); g0)`.
    pub block: CMatrix,
    pub reduced: Vec<ReducedMatrixElement>,
}

impl WignerEckartPrediction {
    /// `n^sigma <lambda~(conj t^alpha_kl; g0) conj t^sigma_ij | conj t^gamma_uv>`
    pub fn coefficient(&self, i: usize, j: usize, gamma: usize, u: usize, v: usize) -> Complex64 {
        if gamma != self.sigma || j != v {
            return ZERO;
        }
        self.block[(u, i)]
    }
}

/// Predicted matrix coefficients of the weighted class operator with weight
/// `conj(t^alpha_kl)`. `l` must index a fixed column (`l < m_alpha`) of the
/// centralizer-adapted basis in which `table` and `t_sigma_g0` are expressed.
pub fn wigner_eckart_matrix(
    table: &CouplingTable,
    alpha: usize,
    k: usize,
    l: usize,
    m_alpha: usize,
    t_sigma_g0: &CMatrix,
    g0_label: &str,
) -> Result<WignerEckartPrediction> {
    if l >= m_alpha {
        return Err(Error::NotFixedColumn { l, m: m_alpha });
    }
    let na = table.gamma_dims[alpha];
    if k >= na {
        return Err(Error::IndexOutOfRange { index: k, dim: na });
    }
    let d = table.dim;
    let reduced: Vec<ReducedMatrixElement> = (0..table.multiplicity(alpha))
        .map(|m| {
            let mut r = ZERO;
            for p in 0..d {
                for q in 0..d {
                    r += table.c(p, q, alpha, m, l) * t_sigma_g0[(p, q)];
                }
            }
            ReducedMatrixElement { sigma: table.sigma, alpha, l, m, g0: g0_label.to_string(), value: r / na as f64 }
        })
        .collect();
    let block = CMatrix::from_fn(d, d, |u, i| {
        reduced.iter().map(|rme| table.c(u, i, alpha, rme.m, k).conj() * rme.value).sum()
    });
    Ok(WignerEckartPrediction { alpha, sigma: table.sigma, k, l, block, reduced })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub alpha: usize,
    /// Fixed column `j < m_alpha`; `None` when `alpha` has no fixed vectors.
    pub column: Option<usize>,
    pub max_norm: f64,
    pub vanishes: bool,
}

/// For each `alpha` and fixed column `j`, the largest entry over `i` of the
/// family `T(conj(t^alpha_ij); g0)` produced by `operator(alpha, i, j)`.
pub fn tensor_operator_scan<F>(m_alphas: &[usize], dims: &[usize], tol: f64, mut operator: F) -> Result<Vec<ScanRow>>
where
    F: FnMut(usize, usize, usize) -> Result<CMatrix>,
{
    let mut rows = Vec::new();
    for (alpha, (&m, &n)) in m_alphas.iter().zip(dims).enumerate() {
        if m == 0 {
            rows.push(ScanRow { alpha, column: None, max_norm: 0.0, vanishes: true });
            continue;
        }
        for j in 0..m {
            let mut norm: f64 = 0.0;
            for i in 0..n {
                norm = norm.max(max_abs(&operator(alpha, i, j)?));
            }
            rows.push(ScanRow { alpha, column: Some(j), max_norm: norm, vanishes: norm < tol });
        }
    }
    Ok(rows)
}
