use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use classop::class_ops::{
    centralizer_invariance_check, class_operator_from_classfunction, covariance_conjugate, transfer,
    weighted_class_operator,
};
use classop::group::{build_group, convolve, inner_product, CatalogSpec, GroupAlgebraElement, GroupSpec};
use classop::linalg::{cplx, max_abs_diff, CMatrix};
use classop::quadrature::{gauss_legendre, uniform_periodic};
use classop::repr::{isotypic_projector, Representation};
use classop::su2::{haar_rule, SU2Element, SphereQuadrature, WignerD};
use classop::verify::{class_based_at, FiniteContext};

const TOL: f64 = 1e-10;

fn contexts() -> &'static [FiniteContext] {
    static CTX: OnceLock<Vec<FiniteContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        CatalogSpec::all_up_to(24)
            .into_iter()
            .map(|s| FiniteContext::new(build_group(&GroupSpec::Catalog(s)).unwrap(), 42).unwrap())
            .collect()
    })
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, rng_seed: RngSeed::Fixed(42), failure_persistence: None, ..ProptestConfig::default() }
}

fn element(n: usize, seed: u64) -> GroupAlgebraElement {
    GroupAlgebraElement::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn group_axioms(which in 0usize..39, a in 0usize..24, b in 0usize..24, c in 0usize..24) {
        let g = &contexts()[which % contexts().len()].group;
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        let e = g.identity();
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(e, a), a);
        prop_assert_eq!(g.mul(a, e), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), e);
        prop_assert_eq!(g.conjugate(a, g.conjugate(b, c)), g.conjugate(g.mul(a, b), c));
    }

    #[test]
    fn schur_orthogonality(which in 0usize..39) {
        let ctx = &contexts()[which % contexts().len()];
        let n = ctx.group.order() as f64;
        for a in &ctx.irreps {
            prop_assert!(a.schur_defect(&ctx.group) < TOL);
            prop_assert!(a.unitarity_defect() < TOL);
            prop_assert!(a.homomorphism_defect(&ctx.group) < TOL);
            for b in &ctx.irreps {
                let s: Complex64 = ctx.group.elements().map(|x| a.character(x) * b.character(x).conj()).sum();
                let want = if a.alpha == b.alpha { 1.0 } else { 0.0 };
                prop_assert!((s / n - cplx(want, 0.0)).norm() < TOL);
            }
        }
        prop_assert!(ctx.table.row_orthonormality_defect() < TOL);
        prop_assert!(ctx.table.column_orthogonality_defect() < TOL);
    }

    #[test]
    fn projector_algebra(which in 0usize..39) {
        let ctx = &contexts()[which % contexts().len()];
        let reg = Representation::regular(&ctx.group);
        let n = ctx.group.order();
        let ps: Vec<CMatrix> =
            (0..ctx.table.len()).map(|a| isotypic_projector(&ctx.group, &ctx.table, a, &reg).unwrap().matrix).collect();
        let mut sum = CMatrix::zeros(n, n);
        for (a, pa) in ps.iter().enumerate() {
            sum += pa;
            prop_assert!(max_abs_diff(pa, &pa.adjoint()) < TOL);
            for (b, pb) in ps.iter().enumerate() {
                let want = if a == b { pa.clone() } else { CMatrix::zeros(n, n) };
                prop_assert!(max_abs_diff(&(pa * pb), &want) < TOL);
            }
        }
        prop_assert!(max_abs_diff(&sum, &CMatrix::identity(n, n)) < TOL);
    }

    #[test]
    fn convolution_identity_and_inner_product(which in 0usize..39, seed in any::<u64>()) {
        let g = &contexts()[which % contexts().len()].group;
        let n = g.order();
        let (phi, psi) = (element(n, seed), element(n, seed ^ 1));
        let unit = GroupAlgebraElement::delta(n, g.identity()).scaled(cplx(n as f64, 0.0));
        let back = convolve(g, &unit, &psi).unwrap();
        prop_assert!(classop::linalg::max_abs_diff_slice(back.coeffs(), psi.coeffs()) < TOL);
        let ab = inner_product(g, &phi, &psi).unwrap();
        let ba = inner_product(g, &psi, &phi).unwrap();
        prop_assert!((ab - ba.conj()).norm() < TOL);
        prop_assert!(inner_product(g, &phi, &phi).unwrap().re >= 0.0);
    }

    #[test]
    fn factorization_covariance_invariance(which in 0usize..39, seed in any::<u64>(), g0 in 0usize..24, h in 0usize..24) {
        let group = &contexts()[which % contexts().len()].group;
        let n = group.order();
        let (g0, h) = (g0 % n, h % n);
        let reg = Representation::regular(group);
        let class = class_based_at(group, g0);
        let f = element(n, seed);
        let op = weighted_class_operator(group, &reg, g0, &f).unwrap();
        let via = class_operator_from_classfunction(group, &reg, &class, &transfer(group, &class, &f)).unwrap();
        prop_assert!(max_abs_diff(&op.matrix, &via.matrix) < 1e-11);
        prop_assert!(covariance_conjugate(group, &reg, &op, h, 1e-11).is_ok());
        let report = centralizer_invariance_check(group, &reg, &class, &f).unwrap();
        prop_assert!(report.max_deviation < 1e-11);
    }

    #[test]
    fn su2_representation_is_homomorphism(seed in any::<u64>(), j2 in 0u32..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (SU2Element::haar_random(&mut rng), SU2Element::haar_random(&mut rng));
        let d = WignerD::new(j2);
        let lhs = d.matrix(&a.mul(&b));
        let rhs = d.matrix(&a) * d.matrix(&b);
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
        prop_assert!(classop::linalg::unitarity_defect(&d.matrix(&a)) < 1e-12);
        prop_assert!(a.norm_defect() < 1e-14);
    }

    #[test]
    fn quadrature_weights_normalized(n in 1usize..80, t in 1usize..40, p in 1usize..80) {
        let (x, w) = gauss_legendre(n);
        prop_assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        prop_assert!(x.windows(2).all(|s| s[0] < s[1]));
        prop_assert!(w.iter().all(|&wi| wi > 0.0));
        let periodic: f64 = uniform_periodic(p, 0.0, 1.0).iter().map(|r| r.1).sum();
        prop_assert!((periodic - 1.0).abs() < 1e-13);
        let sphere = SphereQuadrature::new(t, p).unwrap();
        prop_assert!((sphere.weight_sum() - 1.0).abs() < 1e-15 * (t * p) as f64);
    }

    #[test]
    fn haar_rule_normalized(j2 in 0u32..20) {
        let rule = haar_rule(j2);
        let s: f64 = rule.iter().map(|r| r.1).sum();
        prop_assert!((s - 1.0).abs() < 1e-15 * rule.len() as f64);
    }
}

#[test]
fn gauss_legendre_is_exact_for_low_degree_polynomials() {
    for n in 1..20usize {
        let (x, w) = gauss_legendre(n);
        for k in 0..2 * n {
            let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(k as i32)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-13, "n = {n}, degree {k}");
        }
    }
}
