//! Verification suites shared by the CLI and the acceptance tests. Each check
//! produces a [`CheckRecord`]; suites are assembled in a fixed order so the
//! reports are deterministic.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::class_ops::{
    brute_force_class_operator, centralizer_invariance_check, class_operator_from_classfunction,
    class_sum_expansion, regular_matrix_coefficients, scaled_tolerance, spectral_class_operator, transfer,
    weighted_class_operator, DEFAULT_TOL,
};
use crate::coupling::{
    conjugation_decomposition, tensor_operator_scan, wigner_eckart_matrix, z_fixed_basis, z_fixed_basis_su2,
    CouplingTable, IrrepSystem, ReducedMatrixElement, ScanRow,
};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ConjugacyClass, FiniteGroup, GroupAlgebraElement};
use crate::linalg::{max_abs_diff, max_abs_diff_slice, CMatrix, ZERO};
use crate::repr::{character_table_with_seed, irreps, CharacterTable, Irrep, Representation};
use crate::su2::{weighted_class_operator_su2, SU2Element, SphereQuadrature, SphereWeight, WeightTerm, WignerD};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub group: String,
    pub class: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(check: &str, group: &str, class: &str, max_deviation: f64, tolerance: f64) -> Self {
        CheckRecord {
            check: check.into(),
            group: group.into(),
            class: class.into(),
            max_deviation,
            tolerance,
            pass: max_deviation.is_finite() && max_deviation <= tolerance,
        }
    }
}

/// Named tolerances; unnamed checks fall back to `default`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Tolerances(pub BTreeMap<String, f64>);

impl Tolerances {
    pub fn get(&self, name: &str, fallback: f64) -> f64 {
        self.0.get(name).or_else(|| self.0.get("default")).copied().unwrap_or(fallback)
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidGroup(format!("tolerance {name} = {value} must be positive")));
        }
        self.0.insert(name.to_string(), value);
        Ok(())
    }
}

/// Group with its classes, characters and irreps computed once.
#[derive(Clone, Debug)]
pub struct FiniteContext {
    pub group: FiniteGroup,
    pub name: String,
    pub classes: Vec<ConjugacyClass>,
    pub table: CharacterTable,
    pub irreps: Vec<Irrep>,
}

impl FiniteContext {
    pub fn new(group: FiniteGroup, seed: u64) -> Result<Self> {
        let table = character_table_with_seed(&group, seed)?;
        let irreps = irreps(&group, &table)?;
        let classes = table.classes.clone();
        Ok(FiniteContext { name: group.name(), group, classes, table, irreps })
    }

    pub fn class_label(&self, class: &ConjugacyClass) -> String {
        self.group.label(class.base).to_string()
    }

    /// Classes whose base label matches `selector`, or all for `"all"`.
    pub fn select_classes(&self, selector: &str) -> Result<Vec<usize>> {
        if selector == "all" {
            return Ok((0..self.classes.len()).collect());
        }
        let g = self.group.find_label(selector)?;
        let idx = self.classes.iter().position(|c| c.members.contains(&g)).expect("every element lies in a class");
        Ok(vec![idx])
    }
}

/// Class with `g0` as its base point (coset representatives recomputed).
pub fn class_based_at(group: &FiniteGroup, g0: usize) -> ConjugacyClass {
    let mut class = conjugacy_classes(group).into_iter().find(|c| c.members.contains(&g0)).expect("class exists");
    if class.base == g0 {
        return class;
    }
    class.base = g0;
    class.centralizer = group.elements().filter(|&h| group.mul(h, g0) == group.mul(g0, h)).collect();
    class.coset_reps = class
        .members
        .iter()
        .map(|&c| group.elements().find(|&x| group.conjugate(x, g0) == c).expect("member is conjugate"))
        .collect();
    class
}

/// The five per-class checks on the regular representation: covariance,
/// centralizer invariance, factorization through the class, spectral form
/// and character expansion of the class sum.
pub fn finite_class_checks(
    ctx: &FiniteContext,
    class_index: usize,
    tol: &Tolerances,
    seed: u64,
    samples: usize,
) -> Result<Vec<CheckRecord>> {
    let group = &ctx.group;
    let class = &ctx.classes[class_index];
    let label = ctx.class_label(class);
    let n = group.order();
    let reg = Representation::regular(group);
    let default = scaled_tolerance(DEFAULT_TOL, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (class_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));

    let (mut cov, mut inv, mut fac) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..samples.max(1) {
        let f = GroupAlgebraElement::random(n, &mut rng);
        let g = rng.random_range(0..n);
        let op = weighted_class_operator(group, &reg, class.base, &f)?;
        let lhs = reg.matrix(g) * &op.matrix * reg.matrix(group.inv(g));
        let rhs = weighted_class_operator(group, &reg, class.base, &f.left_translate(group, g))?;
        cov = cov.max(max_abs_diff(&lhs, &rhs.matrix));
        inv = inv.max(centralizer_invariance_check(group, &reg, class, &f)?.max_deviation);
        let via = class_operator_from_classfunction(group, &reg, class, &transfer(group, class, &f))?;
        fac = fac.max(max_abs_diff(&op.matrix, &via.matrix));
    }
    let spectral = max_abs_diff(&brute_force_class_operator(group, class), &spectral_class_operator(group, &ctx.table, class)?);
    let expansion = max_abs_diff_slice(
        GroupAlgebraElement::class_sum(n, class).coeffs(),
        class_sum_expansion(group, &ctx.table, class).coeffs(),
    );
    Ok(vec![
        CheckRecord::new("covariance", &ctx.name, &label, cov, tol.get("covariance", default)),
        CheckRecord::new("centralizer_invariance", &ctx.name, &label, inv, tol.get("centralizer_invariance", default)),
        CheckRecord::new("factorization", &ctx.name, &label, fac, tol.get("factorization", default)),
        CheckRecord::new("spectral", &ctx.name, &label, spectral, tol.get("spectral", default)),
        CheckRecord::new("class_sum_expansion", &ctx.name, &label, expansion, tol.get("class_sum_expansion", default)),
    ])
}

/// Irreps, coupling tables and fixed-vector counts in the basis adapted to
/// the centralizer of one class.
#[derive(Clone, Debug)]
pub struct AdaptedData {
    pub irreps: Vec<Irrep>,
    pub m_alpha: Vec<usize>,
    pub system: IrrepSystem,
    pub tables: Vec<CouplingTable>,
}

pub fn adapted_data(ctx: &FiniteContext, class: &ConjugacyClass) -> Result<AdaptedData> {
    let bases: Vec<_> = ctx.irreps.iter().map(|r| z_fixed_basis(r, class)).collect();
    let irreps: Vec<Irrep> = ctx.irreps.iter().zip(&bases).map(|(r, b)| r.in_basis(&b.basis)).collect();
    let system = IrrepSystem::finite(&ctx.group, &irreps);
    let tables = (0..irreps.len()).map(|s| conjugation_decomposition(&system, s)).collect::<Result<Vec<_>>>()?;
    Ok(AdaptedData { irreps, m_alpha: bases.iter().map(|b| b.m_alpha).collect(), system, tables })
}

/// One `(alpha, sigma, k, l)` comparison of the predicted coefficients with
/// brute-force inner products on the regular representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WignerEckartRecord {
    pub group: String,
    pub sigma: usize,
    pub alpha: usize,
    pub k: usize,
    pub l: usize,
    pub g0: String,
    pub max_dev: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct WignerEckartReport {
    pub records: Vec<WignerEckartRecord>,
    pub reduced: Vec<ReducedMatrixElement>,
    /// Largest brute-force coefficient outside the `delta_{gamma sigma} delta_{jv}` pattern.
    pub off_pattern_max: f64,
    pub notes: Vec<String>,
}

impl WignerEckartReport {
    pub fn pass(&self, off_pattern_tol: f64) -> bool {
        self.records.iter().all(|r| r.pass) && self.off_pattern_max <= off_pattern_tol
    }
}

/// Full coefficient check for every `alpha` with fixed vectors, every `k`, every
/// fixed column `l` and every `sigma`, over all `(i, j, gamma, u, v)`.
pub fn wigner_eckart_finite(ctx: &FiniteContext, class: &ConjugacyClass, tol: f64) -> Result<WignerEckartReport> {
    let group = &ctx.group;
    let data = adapted_data(ctx, class)?;
    let g0_label = group.label(class.base).to_string();
    let mut report = WignerEckartReport::default();
    for alpha in 0..data.irreps.len() {
        let na = data.irreps[alpha].dim;
        if data.m_alpha[alpha] == 0 {
            report.notes.push(format!(
                "alpha {alpha}: no Z0-fixed columns; operator family necessarily zero"
            ));
            continue;
        }
        for l in 0..data.m_alpha[alpha] {
            for k in 0..na {
                let f = GroupAlgebraElement::new(
                    group.elements().map(|x| data.irreps[alpha].matrices[x][(k, l)].conj()).collect(),
                );
                let brute = regular_matrix_coefficients(group, &data.irreps, class.base, &f)?;
                for (sigma, table) in data.tables.iter().enumerate() {
                    let t0 = &data.irreps[sigma].matrices[class.base];
                    let pred = wigner_eckart_matrix(table, alpha, k, l, data.m_alpha[alpha], t0, &g0_label)?;
                    if k == 0 {
                        report.reduced.extend(pred.reduced.iter().cloned());
                    }
                    let mut dev: f64 = 0.0;
                    for (col, &(s, i, j)) in brute.index.iter().enumerate() {
                        if s != sigma {
                            continue;
                        }
                        for (row, &(gamma, u, v)) in brute.index.iter().enumerate() {
                            let b = brute.values[(row, col)];
                            dev = dev.max((b - pred.coefficient(i, j, gamma, u, v)).norm());
                            if gamma != sigma || j != v {
                                report.off_pattern_max = report.off_pattern_max.max(b.norm());
                            }
                        }
                    }
                    report.records.push(WignerEckartRecord {
                        group: ctx.name.clone(),
                        sigma,
                        alpha,
                        k,
                        l,
                        g0: g0_label.clone(),
                        max_dev: dev,
                        pass: dev <= tol,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// SU(2) truncated at `max_j2`, class of `g(psi)`: predictions from the
/// coupling tables against sphere quadrature of `T^sigma(conj(t^alpha_k0); g(psi))`,
/// blockwise for every `sigma` whose tables fit the truncation.
pub fn wigner_eckart_su2(max_j2: u32, psi: f64, quad: &SphereQuadrature, tol: f64) -> Result<WignerEckartReport> {
    let bases: Vec<_> = (0..=max_j2).map(z_fixed_basis_su2).collect();
    let system = IrrepSystem::su2(max_j2).with_bases(&bases.iter().map(|b| b.basis.clone()).collect::<Vec<_>>());
    let g0 = SU2Element::g(psi);
    let g0_label = format!("g({psi})");
    let mut report = WignerEckartReport::default();
    for sigma in 0..=system.max_sigma {
        let table = conjugation_decomposition(&system, sigma)?;
        let t0 = system.to_working(sigma, &WignerD::new(sigma as u32).matrix(&g0));
        for alpha in 0..=max_j2 as usize {
            if bases[alpha].m_alpha == 0 {
                if sigma == 0 {
                    report.notes.push(format!(
                        "{}: no Z0-fixed columns; operator family necessarily zero",
                        crate::coupling::spin_label(alpha as u32)
                    ));
                }
                continue;
            }
            let b_alpha = &bases[alpha].basis;
            for k in 0..system.dims[alpha] {
                let pred = wigner_eckart_matrix(&table, alpha, k, 0, 1, &t0, &g0_label)?;
                if k == 0 {
                    report.reduced.extend(pred.reduced.iter().cloned());
                }
                // conj(t_adapted(x)_{k0}) = sum_a B_{ak} conj(D(x)_{a, fixed})
                let weight = SphereWeight {
                    terms: (0..system.dims[alpha])
                        .filter(|&a| b_alpha[(a, k)] != ZERO)
                        .map(|a| WeightTerm { l2: alpha as u32, row: a, coeff: b_alpha[(a, k)] })
                        .collect(),
                };
                let quad_op = weighted_class_operator_su2(sigma as u32, psi, &weight, quad)?;
                let dev = max_abs_diff(&system.to_working(sigma, &quad_op), &pred.block);
                report.records.push(WignerEckartRecord {
                    group: "SU(2)".into(),
                    sigma,
                    alpha,
                    k,
                    l: 0,
                    g0: g0_label.clone(),
                    max_dev: dev,
                    pass: dev <= tol,
                });
            }
        }
    }
    Ok(report)
}

/// Vanishing report for the families `T(conj(t^alpha_ij); g0)`, `j < m_alpha`,
/// in the representation `rep`.
pub fn scan_finite(ctx: &FiniteContext, class: &ConjugacyClass, rep: &Representation, tol: f64) -> Result<Vec<ScanRow>> {
    let group = &ctx.group;
    let bases: Vec<_> = ctx.irreps.iter().map(|r| z_fixed_basis(r, class)).collect();
    let adapted: Vec<Irrep> = ctx.irreps.iter().zip(&bases).map(|(r, b)| r.in_basis(&b.basis)).collect();
    let m_alphas: Vec<usize> = bases.iter().map(|b| b.m_alpha).collect();
    let dims: Vec<usize> = adapted.iter().map(|r| r.dim).collect();
    tensor_operator_scan(&m_alphas, &dims, tol, |alpha, i, j| {
        let f = GroupAlgebraElement::new(group.elements().map(|x| adapted[alpha].matrices[x][(i, j)].conj()).collect());
        Ok(weighted_class_operator(group, rep, class.base, &f)?.matrix)
    })
}

/// Same scan for the spin-`j2/2` representation of SU(2) and spins up to `max_l2`.
pub fn scan_su2(j2: u32, max_l2: u32, psi: f64, quad: &SphereQuadrature, tol: f64) -> Result<Vec<ScanRow>> {
    let m_alphas: Vec<usize> = (0..=max_l2).map(|l2| usize::from(l2 % 2 == 0)).collect();
    let dims: Vec<usize> = (0..=max_l2).map(|l2| l2 as usize + 1).collect();
    tensor_operator_scan(&m_alphas, &dims, tol, |alpha, i, _| {
        weighted_class_operator_su2(j2, psi, &SphereWeight::matrix_element(alpha as u32, i), quad)
    })
}

/// Residuals of the product expansion and of the triple-product integral
/// for every `sigma` of a finite group, exhaustively over elements.
pub fn coupling_residuals_finite(ctx: &FiniteContext) -> Result<(f64, f64)> {
    let system = IrrepSystem::finite(&ctx.group, &ctx.irreps);
    let (mut prod, mut triple) = (0.0f64, 0.0f64);
    for sigma in 0..system.len() {
        let table = conjugation_decomposition(&system, sigma)?;
        for x in ctx.group.elements() {
            let at: Vec<CMatrix> = system.matrices.iter().map(|ms| ms[x].clone()).collect();
            prod = prod.max(crate::coupling::product_expansion_check(&table, &at));
        }
        for alpha in 0..system.len() {
            triple = triple.max(crate::coupling::triple_product_check(&system, &table, alpha));
        }
    }
    Ok((prod, triple))
}

/// Same residuals for SU(2) spins `sigma <= max_sigma_j2 / 2` at `samples`
/// Haar-random elements (product expansion) and on the exact rule (triple product).
pub fn coupling_residuals_su2(max_sigma_j2: u32, samples: usize, seed: u64) -> Result<(f64, f64)> {
    let max_j2 = 2 * max_sigma_j2;
    let system = IrrepSystem::su2(max_j2);
    let spins: Vec<WignerD> = (0..=max_j2).map(WignerD::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<SU2Element> = (0..samples).map(|_| SU2Element::haar_random(&mut rng)).collect();
    let (mut prod, mut triple) = (0.0f64, 0.0f64);
    for sigma in 0..=max_sigma_j2 as usize {
        let table = conjugation_decomposition(&system, sigma)?;
        for g in &points {
            let at: Vec<CMatrix> = spins.iter().map(|d| d.matrix(g)).collect();
            prod = prod.max(crate::coupling::product_expansion_check(&table, &at));
        }
        for alpha in 0..system.len() {
            triple = triple.max(crate::coupling::triple_product_check(&system, &table, alpha));
        }
    }
    Ok((prod, triple))
}
