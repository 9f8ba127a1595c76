//! Weighted class operators `T(f; g0) = (1/|G|) sum_x f(x) T(x) T(g0) T(x)^-1`,
//! their factorization through functions on the class `G/Z0 ~ C0`, and the
//! spectral form of the class operator on the group algebra.
//!
//! The invariant measure on `G/Z0` has total mass 1, so the constant weight
//! reproduces the normalized class sum without stray `|C0|` factors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{ConjugacyClass, FiniteGroup, GroupAlgebraElement};
use crate::linalg::{max_abs_diff, CMatrix, ZERO};
use crate::repr::{isotypic_projector, matrix_element_basis, CharacterTable, Irrep, Representation};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Default tolerance for an equality check between `dim x dim` matrices.
pub fn scaled_tolerance(tol: f64, dim: usize) -> f64 {
    tol * dim.max(1) as f64
}

/// Function on a conjugacy class, indexed like `ConjugacyClass::members`
/// (equivalently by the cosets `x Z0` through `x Z0 -> x g0 x^-1`).
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction(Vec<Complex64>);

impl ClassFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        ClassFunction(values)
    }

    pub fn constant(class: &ConjugacyClass, value: Complex64) -> Self {
        ClassFunction(vec![value; class.size()])
    }

    pub fn values(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Transported left action: `(lambda(g) phi)(c) = phi(g^-1 c g)`.
    pub fn left_translate(&self, group: &FiniteGroup, class: &ConjugacyClass, g: usize) -> Self {
        let gi = group.inv(g);
        ClassFunction(
            class
                .members
                .iter()
                .map(|&c| {
                    let pos = class.position(group.conjugate(gi, c)).expect("classes are conjugation-stable");
                    self.0[pos]
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    OnGroup(GroupAlgebraElement),
    OnClass(ClassFunction),
}

#[derive(Clone, Debug)]
pub struct WeightedClassOperator {
    pub g0: usize,
    pub weight: Weight,
    pub matrix: CMatrix,
}

impl WeightedClassOperator {
    /// Deviation from the literal triple-product sum `T(x) T(g0) T(x^-1)`.
    pub fn recompute_defect(&self, group: &FiniteGroup, rep: &Representation) -> f64 {
        let Weight::OnGroup(f) = &self.weight else {
            return 0.0;
        };
        let t0 = rep.matrix(self.g0);
        let mut m = CMatrix::zeros(rep.dim(), rep.dim());
        for x in group.elements() {
            m += rep.matrix(x) * t0 * rep.matrix(group.inv(x)) * f[x];
        }
        m /= Complex64::from(group.order() as f64);
        max_abs_diff(&m, &self.matrix)
    }
}

fn check_rep(group: &FiniteGroup, rep: &Representation) -> Result<()> {
    if rep.len() != group.order() {
        return Err(Error::SizeMismatch { expected: group.order(), got: rep.len() });
    }
    Ok(())
}

/// `T(f; g0) = (1/|G|) sum_x f(x) T(x g0 x^-1)`
pub fn weighted_class_operator(
    group: &FiniteGroup,
    rep: &Representation,
    g0: usize,
    f: &GroupAlgebraElement,
) -> Result<WeightedClassOperator> {
    check_rep(group, rep)?;
    if f.len() != group.order() {
        return Err(Error::SizeMismatch { expected: group.order(), got: f.len() });
    }
    let d = rep.dim();
    let mut m = CMatrix::zeros(d, d);
    for x in group.elements() {
        if f[x] != ZERO {
            m += rep.matrix(group.conjugate(x, g0)) * f[x];
        }
    }
    m /= Complex64::from(group.order() as f64);
    Ok(WeightedClassOperator { g0, weight: Weight::OnGroup(f.clone()), matrix: m })
}

/// Returns `T(g) op T(g)^-1` after checking that it equals `T(lambda(g) f; g0)`.
pub fn covariance_conjugate(
    group: &FiniteGroup,
    rep: &Representation,
    op: &WeightedClassOperator,
    g: usize,
    tol: f64,
) -> Result<WeightedClassOperator> {
    let conjugated = rep.matrix(g) * &op.matrix * rep.matrix(group.inv(g));
    let (expected, weight) = match &op.weight {
        Weight::OnGroup(f) => {
            let moved = f.left_translate(group, g);
            (weighted_class_operator(group, rep, op.g0, &moved)?.matrix, Weight::OnGroup(moved))
        }
        Weight::OnClass(phi) => {
            return Err(Error::InvalidGroup(format!(
                "covariance_conjugate expects a group weight, got a class function of length {}",
                phi.len()
            )))
        }
    };
    let deviation = max_abs_diff(&conjugated, &expected);
    if deviation > tol {
        return Err(Error::Tolerance { check: "covariance".into(), deviation, tolerance: tol });
    }
    Ok(WeightedClassOperator { g0: op.g0, weight, matrix: conjugated })
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    /// `(h, deviation)` for every `h` in the centralizer.
    pub per_element: Vec<(usize, f64)>,
    pub max_deviation: f64,
}

/// Max over `h in Z0` of `|T(rho(h) f; g0) - T(f; g0)|`.
pub fn centralizer_invariance_check(
    group: &FiniteGroup,
    rep: &Representation,
    class: &ConjugacyClass,
    f: &GroupAlgebraElement,
) -> Result<InvarianceReport> {
    let base = weighted_class_operator(group, rep, class.base, f)?;
    let mut per_element = Vec::with_capacity(class.centralizer_order());
    for &h in &class.centralizer {
        let moved = weighted_class_operator(group, rep, class.base, &f.right_translate(group, h))?;
        per_element.push((h, max_abs_diff(&moved.matrix, &base.matrix)));
    }
    let max_deviation = per_element.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok(InvarianceReport { per_element, max_deviation })
}

/// Centralizer average `f~(x Z0) = (1/|Z0|) sum_{h in Z0} f(x h)`, one value
/// per class member through the cached coset representatives.
pub fn transfer(group: &FiniteGroup, class: &ConjugacyClass, f: &GroupAlgebraElement) -> ClassFunction {
    let z = class.centralizer_order() as f64;
    ClassFunction(
        class
            .coset_reps
            .iter()
            .map(|&x| class.centralizer.iter().map(|&h| f[group.mul(x, h)]).sum::<Complex64>() / z)
            .collect(),
    )
}

/// `T~(phi; g0) = (1/|C0|) sum_{c in C0} phi(c) T(c)`
pub fn class_operator_from_classfunction(
    group: &FiniteGroup,
    rep: &Representation,
    class: &ConjugacyClass,
    phi: &ClassFunction,
) -> Result<WeightedClassOperator> {
    check_rep(group, rep)?;
    if phi.len() != class.size() {
        return Err(Error::SizeMismatch { expected: class.size(), got: phi.len() });
    }
    let d = rep.dim();
    let mut m = CMatrix::zeros(d, d);
    for (&c, &w) in class.members.iter().zip(phi.values()) {
        m += rep.matrix(c) * w;
    }
    m /= Complex64::from(class.size() as f64);
    Ok(WeightedClassOperator { g0: class.base, weight: Weight::OnClass(phi.clone()), matrix: m })
}

/// `(1/|G|) sum_x lambda(x g0 x^-1)` assembled directly on the delta basis.
pub fn brute_force_class_operator(group: &FiniteGroup, class: &ConjugacyClass) -> CMatrix {
    let n = group.order();
    let w = Complex64::from(1.0 / n as f64);
    let mut m = CMatrix::zeros(n, n);
    for x in group.elements() {
        let c = group.conjugate(x, class.base);
        for y in 0..n {
            m[(group.mul(c, y), y)] += w;
        }
    }
    m
}

/// `lambda(C0) = sum_alpha (chi^alpha(C0) / n^alpha) P^alpha` on the group algebra.
pub fn spectral_class_operator(
    group: &FiniteGroup,
    table: &CharacterTable,
    class: &ConjugacyClass,
) -> Result<CMatrix> {
    let reg = Representation::regular(group);
    let n = group.order();
    let mut m = CMatrix::zeros(n, n);
    for alpha in 0..table.len() {
        let p = isotypic_projector(group, table, alpha, &reg)?;
        m += p.matrix * (table.chi(alpha, class.base) / table.dims[alpha] as f64);
    }
    Ok(m)
}

/// Character expansion of the class sum: `(1/|G|) sum_alpha conj(chi^alpha(C0)) chi^alpha`.
pub fn class_sum_expansion(group: &FiniteGroup, table: &CharacterTable, class: &ConjugacyClass) -> GroupAlgebraElement {
    let n = group.order() as f64;
    let mut out = GroupAlgebraElement::zeros(group.order());
    for alpha in 0..table.len() {
        let coeff = table.chi(alpha, class.base).conj() / n;
        out = out.add(&table.character_function(alpha).scaled(coeff));
    }
    out
}

/// Matrix coefficients `n^sigma <lambda~(f; g0) conj(t^sigma_ij) | conj(t^gamma_uv)>`
/// computed by brute force on the regular representation. Rows are indexed by
/// `(gamma, u, v)` and columns by `(sigma, i, j)`, both in `index` order.
#[derive(Clone, Debug)]
pub struct MatrixCoefficients {
    pub index: Vec<(usize, usize, usize)>,
    pub values: CMatrix,
}

impl MatrixCoefficients {
    pub fn position(&self, alpha: usize, i: usize, j: usize) -> Option<usize> {
        self.index.iter().position(|&t| t == (alpha, i, j))
    }

    pub fn get(&self, sigma: (usize, usize, usize), gamma: (usize, usize, usize)) -> Complex64 {
        let col = self.position(sigma.0, sigma.1, sigma.2).expect("sigma index");
        let row = self.position(gamma.0, gamma.1, gamma.2).expect("gamma index");
        self.values[(row, col)]
    }
}

pub fn regular_matrix_coefficients(
    group: &FiniteGroup,
    irreps: &[Irrep],
    g0: usize,
    f: &GroupAlgebraElement,
) -> Result<MatrixCoefficients> {
    let reg = Representation::regular(group);
    let op = weighted_class_operator(group, &reg, g0, f)?;
    let (phi, index) = matrix_element_basis(group, irreps);
    let mut values = phi.adjoint() * &op.matrix * &phi / Complex64::from(group.order() as f64);
    for (col, &(sigma, _, _)) in index.iter().enumerate() {
        let n_sigma = irreps[sigma].dim as f64;
        values.column_mut(col).scale_mut(n_sigma);
    }
    Ok(MatrixCoefficients { index, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, conjugacy_classes, left_regular_matrix, CatalogSpec, GroupSpec};
    use crate::linalg::{cplx, max_abs_diff_slice, ONE};
    use crate::repr::{character_table, irreps};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn catalog(spec: CatalogSpec) -> FiniteGroup {
        build_group(&GroupSpec::Catalog(spec)).unwrap()
    }

    #[test]
    fn zero_weight_and_identity_base() {
        let g = catalog(CatalogSpec::symmetric(3));
        let reg = Representation::regular(&g);
        let zero = weighted_class_operator(&g, &reg, 2, &GroupAlgebraElement::zeros(6)).unwrap();
        assert_eq!(zero.matrix, CMatrix::zeros(6, 6));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = GroupAlgebraElement::random(6, &mut rng);
        let at_e = weighted_class_operator(&g, &reg, 0, &f).unwrap();
        let expect = CMatrix::identity(6, 6) * f.mean();
        assert!(max_abs_diff(&at_e.matrix, &expect) < 1e-15);
        assert!(at_e.recompute_defect(&g, &reg) < 1e-12);
    }

    #[test]
    fn constant_weight_matches_class_sum_multiplication() {
        let g = catalog(CatalogSpec::symmetric(3));
        let reg = Representation::regular(&g);
        let classes = conjugacy_classes(&g);
        let transpositions = &classes[1];
        let g0 = g.find_label("(1 2)").unwrap();
        let op = weighted_class_operator(&g, &reg, g0, &GroupAlgebraElement::constant(6, ONE)).unwrap();
        let l0 = left_regular_matrix(&g, &GroupAlgebraElement::class_sum(6, transpositions)).unwrap();
        assert!(max_abs_diff(&op.matrix, &l0) < 1e-15);
        let tilde = class_operator_from_classfunction(&g, &reg, transpositions, &ClassFunction::constant(transpositions, ONE)).unwrap();
        assert!(max_abs_diff(&tilde.matrix, &l0) < 1e-15);
        assert!(max_abs_diff(&brute_force_class_operator(&g, transpositions), &l0) < 1e-15);
    }

    #[test]
    fn covariance_examples() {
        let s4 = catalog(CatalogSpec::symmetric(4));
        let reg = Representation::regular(&s4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = GroupAlgebraElement::random(24, &mut rng);
        let g0 = s4.find_label("(1 2)(3 4)").unwrap();
        let op = weighted_class_operator(&s4, &reg, g0, &f).unwrap();
        let same = covariance_conjugate(&s4, &reg, &op, 0, 1e-11).unwrap();
        assert!(max_abs_diff(&same.matrix, &op.matrix) < 1e-15);
        for _ in 0..10 {
            let g = rng.random_range(0..24);
            covariance_conjugate(&s4, &reg, &op, g, 1e-11).unwrap();
        }
        // a wrong representation breaks covariance
        let mut broken = reg.matrices().to_vec();
        broken[1] = CMatrix::identity(24, 24);
        let bad = Representation::new(broken).unwrap();
        let op_bad = weighted_class_operator(&s4, &bad, g0, &f).unwrap();
        assert!(matches!(covariance_conjugate(&s4, &bad, &op_bad, 1, 1e-11), Err(Error::Tolerance { .. })));
    }

    #[test]
    fn central_elements_act_trivially_in_q8() {
        let q8 = catalog(CatalogSpec::quaternion());
        let t = character_table(&q8).unwrap();
        let two = irreps(&q8, &t).unwrap().into_iter().find(|r| r.dim == 2).unwrap();
        let rep = Representation::from_irrep(&two);
        let minus_one = q8.find_label("-1").unwrap();
        let g0 = q8.find_label("i").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = GroupAlgebraElement::random(8, &mut rng);
        let op = weighted_class_operator(&q8, &rep, g0, &f).unwrap();
        let moved = covariance_conjugate(&q8, &rep, &op, minus_one, 1e-12).unwrap();
        assert!(max_abs_diff(&moved.matrix, &op.matrix) < 1e-14);
    }

    #[test]
    fn centralizer_invariance_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c5 = catalog(CatalogSpec::cyclic(5));
        let reg5 = Representation::regular(&c5);
        let f5 = GroupAlgebraElement::random(5, &mut rng);
        for class in conjugacy_classes(&c5) {
            let rep = centralizer_invariance_check(&c5, &reg5, &class, &f5).unwrap();
            assert_eq!(rep.per_element.len(), 5);
            assert!(rep.max_deviation < 1e-12);
        }
        let s3 = catalog(CatalogSpec::symmetric(3));
        let classes = conjugacy_classes(&s3);
        let f = GroupAlgebraElement::random(6, &mut rng);
        let rep = centralizer_invariance_check(&s3, &Representation::regular(&s3), &classes[1], &f).unwrap();
        assert!(rep.max_deviation < 1e-12);

        let s4 = catalog(CatalogSpec::symmetric(4));
        let classes4 = conjugacy_classes(&s4);
        let g0 = s4.find_label("(1 2)(3 4)").unwrap();
        let class = classes4.iter().find(|c| c.members.contains(&g0)).unwrap();
        // base point is the minimal member; rebuild a class around (1 2)(3 4) itself
        let centralizer: Vec<usize> = s4.elements().filter(|&h| s4.mul(h, g0) == s4.mul(g0, h)).collect();
        assert_eq!(centralizer.len(), 8);
        assert_eq!(class.centralizer_order(), 8);
        let f = GroupAlgebraElement::random(24, &mut rng);
        let reg = Representation::regular(&s4);
        let base = weighted_class_operator(&s4, &reg, g0, &f).unwrap();
        for h in centralizer {
            let moved = weighted_class_operator(&s4, &reg, g0, &f.right_translate(&s4, h)).unwrap();
            assert!(max_abs_diff(&moved.matrix, &base.matrix) < 1e-12);
        }
    }

    #[test]
    fn transfer_examples() {
        let g = catalog(CatalogSpec::symmetric(3));
        let classes = conjugacy_classes(&g);
        let class = &classes[1];
        let one = transfer(&g, class, &GroupAlgebraElement::constant(6, ONE));
        assert!(one.values().iter().all(|z| (z - ONE).norm() < 1e-15));
        for x in g.elements() {
            let f = GroupAlgebraElement::delta(6, x).scaled(cplx(6.0, 0.0));
            let ft = transfer(&g, class, &f);
            let member = class.position(g.conjugate(x, class.base)).unwrap();
            for (pos, v) in ft.values().iter().enumerate() {
                let want = if pos == member { 6.0 / 2.0 } else { 0.0 };
                assert!((v - cplx(want, 0.0)).norm() < 1e-15);
            }
        }
        // mean-zero weight supported on Z0 averages to zero on the base coset
        let mut f = GroupAlgebraElement::zeros(6);
        let z = &class.centralizer;
        f = f.add(&GroupAlgebraElement::delta(6, z[0])).add(&GroupAlgebraElement::delta(6, z[1]).scaled(-ONE));
        let ft = transfer(&g, class, &f);
        assert!(ft.values()[0].norm() < 1e-15);
    }

    #[test]
    fn factorization_and_singleton_class() {
        let g = catalog(CatalogSpec::dihedral(4));
        let reg = Representation::regular(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for class in conjugacy_classes(&g) {
            let f = GroupAlgebraElement::random(8, &mut rng);
            let direct = weighted_class_operator(&g, &reg, class.base, &f).unwrap();
            let via = class_operator_from_classfunction(&g, &reg, &class, &transfer(&g, &class, &f)).unwrap();
            assert!(max_abs_diff(&direct.matrix, &via.matrix) < 1e-12);
            if class.size() == 1 {
                let phi = ClassFunction::new(vec![cplx(0.3, -2.0)]);
                let op = class_operator_from_classfunction(&g, &reg, &class, &phi).unwrap();
                assert!(max_abs_diff(&op.matrix, &(reg.matrix(class.base) * cplx(0.3, -2.0))) < 1e-15);
            }
        }
        let classes = conjugacy_classes(&g);
        assert!(class_operator_from_classfunction(&g, &reg, &classes[1], &ClassFunction::new(vec![ONE; 7])).is_err());
    }

    #[test]
    fn spectral_examples_s3() {
        let g = catalog(CatalogSpec::symmetric(3));
        let t = character_table(&g).unwrap();
        let classes = conjugacy_classes(&g);
        let id = spectral_class_operator(&g, &t, &classes[0]).unwrap();
        assert!(max_abs_diff(&id, &CMatrix::identity(6, 6)) < 1e-14);
        let reg = Representation::regular(&g);
        for (class, eig) in [(&classes[1], [1.0, -1.0, 0.0]), (&classes[2], [1.0, 1.0, -0.5])] {
            let m = spectral_class_operator(&g, &t, class).unwrap();
            assert!(max_abs_diff(&m, &brute_force_class_operator(&g, class)) < 1e-12);
            for (alpha, want) in eig.iter().enumerate() {
                let p = isotypic_projector(&g, &t, alpha, &reg).unwrap().matrix;
                assert!(max_abs_diff(&(&m * &p), &(&p * cplx(*want, 0.0))) < 1e-12);
            }
        }
    }

    #[test]
    fn class_sum_expansion_matches_normalized_class_sum() {
        let g = catalog(CatalogSpec::symmetric(4));
        let t = character_table(&g).unwrap();
        for class in &t.classes {
            let lhs = GroupAlgebraElement::class_sum(24, class);
            let rhs = class_sum_expansion(&g, &t, class);
            assert!(max_abs_diff_slice(lhs.coeffs(), rhs.coeffs()) < 1e-12);
        }
    }

    #[test]
    fn classfunction_intertwining() {
        let g = catalog(CatalogSpec::symmetric(3));
        let reg = Representation::regular(&g);
        let classes = conjugacy_classes(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for class in &classes {
            let phi = ClassFunction::new(
                (0..class.size()).map(|_| cplx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect(),
            );
            let op = class_operator_from_classfunction(&g, &reg, class, &phi).unwrap();
            for x in g.elements() {
                let lhs = reg.matrix(x) * &op.matrix * reg.matrix(g.inv(x));
                let rhs = class_operator_from_classfunction(&g, &reg, class, &phi.left_translate(&g, class, x)).unwrap();
                assert!(max_abs_diff(&lhs, &rhs.matrix) < 1e-12);
            }
        }
    }

    #[test]
    fn regular_coefficients_for_constant_weight_are_diagonal() {
        let g = catalog(CatalogSpec::symmetric(3));
        let t = character_table(&g).unwrap();
        let irr = irreps(&g, &t).unwrap();
        let classes = conjugacy_classes(&g);
        let coeffs = regular_matrix_coefficients(&g, &irr, classes[1].base, &GroupAlgebraElement::constant(6, ONE)).unwrap();
        // lambda(C0) acts on L2(G)^sigma as chi^sigma(C0)/n^sigma; the Gram factor is 1/n^sigma
        for (col, &(sigma, i, j)) in coeffs.index.iter().enumerate() {
            for (row, &(gamma, u, v)) in coeffs.index.iter().enumerate() {
                let want = if (gamma, u, v) == (sigma, i, j) {
                    t.chi(sigma, classes[1].base) / t.dims[sigma] as f64
                } else {
                    ZERO
                };
                assert!((coeffs.values[(row, col)] - want).norm() < 1e-12);
            }
        }
    }
}
