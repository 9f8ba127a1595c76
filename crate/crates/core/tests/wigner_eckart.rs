use classop::group::{build_group, CatalogSpec, GroupSpec};
use classop::su2::SphereQuadrature;
use classop::coupling::wigner_eckart_matrix;
use classop::linalg::{max_abs_diff, CMatrix};
use classop::verify::{adapted_data, class_based_at, wigner_eckart_finite, wigner_eckart_su2, FiniteContext};

fn context(spec: CatalogSpec) -> FiniteContext {
    FiniteContext::new(build_group(&GroupSpec::Catalog(spec)).unwrap(), 42).unwrap()
}

#[test]
fn s3_transposition_class_matches_brute_force() {
    let ctx = context(CatalogSpec::symmetric(3));
    let g0 = ctx.group.find_label("(1 2)").unwrap();
    let class = class_based_at(&ctx.group, g0);
    let report = wigner_eckart_finite(&ctx, &class, 1e-10).unwrap();
    // alpha in {trivial, standard}: (1 + 2) weights x 3 sigmas
    assert_eq!(report.records.len(), 9);
    let worst = report.records.iter().map(|r| r.max_dev).fold(0.0, f64::max);
    assert!(worst < 1e-12, "max deviation {worst}");
    assert!(report.off_pattern_max < 1e-12);
    assert_eq!(report.notes.len(), 1, "sign has no fixed vector");
}

#[test]
fn trivial_alpha_reduces_to_class_operator_eigenvalue() {
    let ctx = context(CatalogSpec::symmetric(3));
    let class = ctx.classes[2].clone();
    let data = adapted_data(&ctx, &class).unwrap();
    for (sigma, table) in data.tables.iter().enumerate() {
        let t0 = &data.irreps[sigma].matrices[class.base];
        let pred = wigner_eckart_matrix(table, 0, 0, 0, 1, t0, "g0").unwrap();
        let n = ctx.table.dims[sigma];
        let want = CMatrix::identity(n, n) * (ctx.table.chi(sigma, class.base) / n as f64);
        assert!(max_abs_diff(&pred.block, &want) < 1e-12);
    }
}

#[test]
fn s4_transposition_class_matches_brute_force() {
    let ctx = context(CatalogSpec::symmetric(4));
    let g0 = ctx.group.find_label("(1 2)").unwrap();
    let class = class_based_at(&ctx.group, g0);
    let report = wigner_eckart_finite(&ctx, &class, 1e-9).unwrap();
    assert!(report.pass(1e-10), "{:?}", report.records.iter().map(|r| r.max_dev).fold(0.0, f64::max));
}

#[test]
fn su2_blocks_match_quadrature() {
    let quad = SphereQuadrature::new(16, 32).unwrap();
    for psi in [0.9, 2.5] {
        let report = wigner_eckart_su2(4, psi, &quad, 1e-8).unwrap();
        assert!(!report.records.is_empty());
        for r in &report.records {
            assert!(r.pass, "sigma {} alpha {} k {}: {}", r.sigma, r.alpha, r.k, r.max_dev);
        }
    }
}
