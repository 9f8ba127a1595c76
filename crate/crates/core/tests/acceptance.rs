//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines are always shown.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use classop::class_ops::{
    brute_force_class_operator, class_operator_from_classfunction, regular_matrix_coefficients,
    spectral_class_operator, transfer, weighted_class_operator,
};
use classop::coupling::{
    conjugation_decomposition, frobenius_multiplicity_check, product_expansion_check, triple_product_check,
    wigner_eckart_matrix, IrrepSystem,
};
use classop::group::{build_group, CatalogSpec, FiniteGroup, GroupAlgebraElement, GroupSpec};
use classop::linalg::{cplx, max_abs, max_abs_diff, scalar_part, CMatrix};
use classop::quadrature::gauss_legendre;
use classop::repr::{isotypic_projector, Representation};
use classop::su2::{class_operator_quadrature, closed_form_eigenvalue, haar_rule, SU2Element, SphereQuadrature, WignerD, DEFAULT_PSIS};
use classop::verify::{adapted_data, class_based_at, FiniteContext};

const SEED: u64 = 42;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn context(spec: CatalogSpec) -> FiniteContext {
    let group = build_group(&GroupSpec::Catalog(spec)).expect("catalog group builds");
    FiniteContext::new(group, SEED).expect("character table and irreps")
}

fn within_time(start: Instant, limit: Duration, mut o: Outcome) -> Outcome {
    let took = start.elapsed();
    o.detail = format!("{}; {:.2}s (limit {}s)", o.detail, took.as_secs_f64(), limit.as_secs());
    o.pass &= took < limit;
    o
}

/// Brute-force class operator against the spectral form for every class.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for spec in [CatalogSpec::cyclic(6), CatalogSpec::symmetric(3), CatalogSpec::dihedral(4), CatalogSpec::quaternion(), CatalogSpec::symmetric(4)] {
        let ctx = context(spec);
        for class in &ctx.classes {
            let brute = brute_force_class_operator(&ctx.group, class);
            let spectral = spectral_class_operator(&ctx.group, &ctx.table, class).expect("spectral operator");
            worst = worst.max(max_abs_diff(&brute, &spectral));
        }
    }
    within_time(
        start,
        Duration::from_secs(10),
        Outcome { pass: worst <= 1e-10, detail: format!("C6 S3 D4 Q8 S4 all classes, max dev {worst:.3e} (tol 1e-10)") },
    )
}

/// S3 isotypic eigenvalues, each matched to its block through projector support.
fn criterion_2() -> Outcome {
    let ctx = context(CatalogSpec::symmetric(3));
    let g = &ctx.group;
    let reg = Representation::regular(g);
    let t12 = g.find_label("(1 2)").unwrap();
    let c123 = g.find_label("(1 2 3)").unwrap();
    // identify blocks by their characters rather than by row order
    let kind = |alpha: usize| -> &'static str {
        if ctx.table.dims[alpha] == 2 {
            "standard"
        } else if ctx.table.chi(alpha, t12).re > 0.0 {
            "trivial"
        } else {
            "sign"
        }
    };
    let expected = |base: usize, k: &str| -> f64 {
        match (base == t12, k) {
            (true, "trivial") => 1.0,
            (true, "sign") => -1.0,
            (true, _) => 0.0,
            (false, "standard") => -0.5,
            (false, _) => 1.0,
        }
    };
    let mut worst: f64 = 0.0;
    let mut seen = Vec::new();
    for base in [t12, c123] {
        let class = class_based_at(g, base);
        let op = brute_force_class_operator(g, &class);
        for alpha in 0..ctx.table.len() {
            let p = isotypic_projector(g, &ctx.table, alpha, &reg).unwrap().matrix;
            // eigenvalue on the support of P: tr(L P) / tr(P), then L P = lambda P
            let lambda = (&op * &p).trace() / p.trace();
            let block_dev = max_abs_diff(&(&op * &p), &(&p * lambda));
            let want = expected(base, kind(alpha));
            worst = worst.max(block_dev).max((lambda - cplx(want, 0.0)).norm());
            seen.push(format!("{}:{}={:.3}", g.label(base), kind(alpha), lambda.re));
        }
    }
    Outcome { pass: worst <= 1e-10, detail: format!("{}; max dev {worst:.3e} (tol 1e-10)", seen.join(" ")) }
}

/// SU(2) class operator by quadrature against the closed form.
fn criterion_3() -> Outcome {
    let start = Instant::now();
    let fine = SphereQuadrature::new(32, 64).unwrap();
    let coarse = SphereQuadrature::new(8, 64).unwrap();
    let mut worst_fine: f64 = 0.0;
    let mut worst_scalar: f64 = 0.0;
    let mut convergence_ok = true;
    for j2 in 0..=12u32 {
        for psi in DEFAULT_PSIS {
            let value = closed_form_eigenvalue(j2, psi).unwrap();
            let target = CMatrix::identity(j2 as usize + 1, j2 as usize + 1) * cplx(value, 0.0);
            let m32 = class_operator_quadrature(j2, psi, &fine).unwrap();
            let m8 = class_operator_quadrature(j2, psi, &coarse).unwrap();
            let (e32, e8) = (max_abs_diff(&m32, &target), max_abs_diff(&m8, &target));
            worst_fine = worst_fine.max(e32);
            worst_scalar = worst_scalar.max(scalar_part(&m32).1);
            if !(e8 >= 10.0 * e32 || (e8 < 1e-13 && e32 < 1e-13)) {
                convergence_ok = false;
            }
        }
    }
    within_time(
        start,
        Duration::from_secs(5),
        Outcome {
            pass: worst_fine <= 1e-9 && worst_scalar <= 1e-9 && convergence_ok,
            detail: format!(
                "j <= 6, 6 angles: max err {worst_fine:.3e}, scalar dev {worst_scalar:.3e} (tol 1e-9); n_theta 8 vs 32 ratio rule {}",
                if convergence_ok { "holds" } else { "violated" }
            ),
        },
    )
}

/// Factorization through the class, covariance and centralizer invariance
/// for 200 random (f, g) per group.
fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut fac, mut cov, mut inv) = (0.0f64, 0.0f64, 0.0f64);
    for spec in [CatalogSpec::symmetric(3), CatalogSpec::symmetric(4), CatalogSpec::quaternion()] {
        let group = build_group(&GroupSpec::Catalog(spec)).unwrap();
        let n = group.order();
        let reg = Representation::regular(&group);
        let classes: Vec<_> = group.elements().map(|g0| class_based_at(&group, g0)).collect();
        for _ in 0..200 {
            let f = GroupAlgebraElement::random(n, &mut rng);
            let g = rng.random_range(0..n);
            let class = &classes[rng.random_range(0..n)];
            let op = weighted_class_operator(&group, &reg, class.base, &f).unwrap();
            let via = class_operator_from_classfunction(&group, &reg, class, &transfer(&group, class, &f)).unwrap();
            fac = fac.max(max_abs_diff(&op.matrix, &via.matrix));
            let lhs = reg.matrix(g) * &op.matrix * reg.matrix(group.inv(g));
            let rhs = weighted_class_operator(&group, &reg, class.base, &f.left_translate(&group, g)).unwrap();
            cov = cov.max(max_abs_diff(&lhs, &rhs.matrix));
            for &h in &class.centralizer {
                let moved = weighted_class_operator(&group, &reg, class.base, &f.right_translate(&group, h)).unwrap();
                inv = inv.max(max_abs_diff(&moved.matrix, &op.matrix));
            }
        }
    }
    let worst = fac.max(cov).max(inv);
    within_time(
        start,
        Duration::from_secs(30),
        Outcome {
            pass: worst <= 1e-11,
            detail: format!("S3 S4 Q8 x 200: factorization {fac:.3e}, covariance {cov:.3e}, centralizer {inv:.3e} (tol 1e-11)"),
        },
    )
}

/// Predicted Wigner–Eckart coefficients against brute-force inner products.
fn wigner_eckart_against_brute_force(spec: CatalogSpec) -> (f64, f64, usize) {
    let ctx = context(spec);
    let g = &ctx.group;
    let class = class_based_at(g, g.find_label("(1 2)").unwrap());
    let data = adapted_data(&ctx, &class).unwrap();
    let (mut dev, mut off, mut cases) = (0.0f64, 0.0f64, 0usize);
    for alpha in 0..data.irreps.len() {
        for l in 0..data.m_alpha[alpha] {
            for k in 0..data.irreps[alpha].dim {
                let f = GroupAlgebraElement::new(g.elements().map(|x| data.irreps[alpha].matrices[x][(k, l)].conj()).collect());
                let brute = regular_matrix_coefficients(g, &data.irreps, class.base, &f).unwrap();
                for (sigma, table) in data.tables.iter().enumerate() {
                    let t0 = &data.irreps[sigma].matrices[class.base];
                    let pred = wigner_eckart_matrix(table, alpha, k, l, data.m_alpha[alpha], t0, "(1 2)").unwrap();
                    cases += 1;
                    for (col, &(s, i, j)) in brute.index.iter().enumerate() {
                        if s != sigma {
                            continue;
                        }
                        for (row, &(gamma, u, v)) in brute.index.iter().enumerate() {
                            let b = brute.values[(row, col)];
                            dev = dev.max((b - pred.coefficient(i, j, gamma, u, v)).norm());
                            if gamma != sigma || j != v {
                                off = off.max(b.norm());
                            }
                        }
                    }
                }
            }
        }
    }
    (dev, off, cases)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let (dev3, off3, n3) = wigner_eckart_against_brute_force(CatalogSpec::symmetric(3));
    let (dev4, off4, n4) = wigner_eckart_against_brute_force(CatalogSpec::symmetric(4));
    let (dev, off) = (dev3.max(dev4), off3.max(off4));
    within_time(
        start,
        Duration::from_secs(60),
        Outcome {
            pass: dev <= 1e-9 && off <= 1e-10 && n3 > 0 && n4 > 0,
            detail: format!("S3 ({n3} cases), S4 ({n4} cases): max dev {dev:.3e} (tol 1e-9), off-pattern {off:.3e} (tol 1e-10)"),
        },
    )
}

/// Product expansion and triple-product identities.
fn criterion_6() -> Outcome {
    let mut finite: f64 = 0.0;
    let mut groups = 0;
    for spec in CatalogSpec::all_up_to(24) {
        let ctx = context(spec);
        let system = IrrepSystem::finite(&ctx.group, &ctx.irreps);
        for sigma in 0..system.len() {
            let table = conjugation_decomposition(&system, sigma).unwrap();
            for x in ctx.group.elements() {
                let at: Vec<CMatrix> = system.matrices.iter().map(|m| m[x].clone()).collect();
                finite = finite.max(product_expansion_check(&table, &at));
            }
            for alpha in 0..system.len() {
                finite = finite.max(triple_product_check(&system, &table, alpha));
            }
        }
        groups += 1;
    }
    // spins <= 2 for sigma; the system must carry gamma up to 2 sigma = 4
    let system = IrrepSystem::su2(8);
    let spins: Vec<WignerD> = (0..=8).map(WignerD::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let samples: Vec<SU2Element> = (0..50).map(|_| SU2Element::haar_random(&mut rng)).collect();
    let mut su2: f64 = 0.0;
    for sigma in 0..=4usize {
        let table = conjugation_decomposition(&system, sigma).unwrap();
        for g in &samples {
            let at: Vec<CMatrix> = spins.iter().map(|d| d.matrix(g)).collect();
            su2 = su2.max(product_expansion_check(&table, &at));
        }
        for alpha in 0..system.len() {
            su2 = su2.max(triple_product_check(&system, &table, alpha));
        }
    }
    Outcome {
        pass: finite <= 1e-10 && su2 <= 1e-9,
        detail: format!("{groups} catalog groups exhaustive: {finite:.3e} (tol 1e-10); SU(2) spins <= 2, 50 Haar samples: {su2:.3e} (tol 1e-9)"),
    }
}

/// Fixed-vector dimension equals the induced multiplicity, exactly.
fn criterion_7() -> Outcome {
    let mut rows = 0;
    let mut failures = Vec::new();
    for spec in CatalogSpec::all_up_to(24) {
        let ctx = context(spec);
        for class in &ctx.classes {
            for r in frobenius_multiplicity_check(&ctx.group, &ctx.table, &ctx.irreps, class) {
                rows += 1;
                if !r.pass {
                    failures.push(format!("{} class {} alpha {}", ctx.name, ctx.group.label(class.base), r.alpha));
                }
            }
        }
    }
    Outcome { pass: failures.is_empty(), detail: format!("{rows} (group, class, alpha) rows, {} mismatches {:?}", failures.len(), failures) }
}

fn group_axiom_defect(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut bad = 0;
    for a in 0..n {
        bad += usize::from(g.mul(0, a) != a || g.mul(a, 0) != a || g.mul(a, g.inv(a)) != 0);
        for b in 0..n {
            for c in 0..n {
                bad += usize::from(g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)));
            }
        }
    }
    bad
}

/// Group axioms, Schur orthogonality, projector algebra and quadrature
/// normalization under the default seed.
fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for spec in CatalogSpec::all_up_to(24) {
        let ctx = context(spec);
        let g = &ctx.group;
        let n = g.order();
        checks += 1;
        if group_axiom_defect(g) != 0 {
            failures.push(format!("{}: group axioms", ctx.name));
        }
        // Schur orthogonality: (1/|G|) sum t^a_ij conj(t^b_kl) = delta / n
        for a in &ctx.irreps {
            for b in &ctx.irreps {
                checks += 1;
                let mut worst: f64 = 0.0;
                for i in 0..a.dim {
                    for j in 0..a.dim {
                        for k in 0..b.dim {
                            for l in 0..b.dim {
                                let s: num_complex::Complex64 =
                                    g.elements().map(|x| a.matrices[x][(i, j)] * b.matrices[x][(k, l)].conj()).sum::<num_complex::Complex64>() / n as f64;
                                let want = if a.alpha == b.alpha && i == k && j == l { 1.0 / a.dim as f64 } else { 0.0 };
                                worst = worst.max((s - cplx(want, 0.0)).norm());
                            }
                        }
                    }
                }
                if worst > 1e-10 {
                    failures.push(format!("{}: Schur ({}, {}) {worst:e}", ctx.name, a.alpha, b.alpha));
                }
            }
        }
        // projector algebra on the regular representation
        let reg = Representation::regular(g);
        let ps: Vec<CMatrix> = (0..ctx.table.len()).map(|a| isotypic_projector(g, &ctx.table, a, &reg).unwrap().matrix).collect();
        let mut sum = CMatrix::zeros(n, n);
        let mut worst: f64 = 0.0;
        for (a, pa) in ps.iter().enumerate() {
            sum += pa;
            worst = worst.max(max_abs(&(pa - pa.adjoint())));
            for (b, pb) in ps.iter().enumerate() {
                let want = if a == b { pa.clone() } else { CMatrix::zeros(n, n) };
                worst = worst.max(max_abs_diff(&(pa * pb), &want));
            }
            worst = worst.max((pa.trace() - cplx((ctx.table.dims[a] * ctx.table.dims[a]) as f64, 0.0)).norm());
        }
        worst = worst.max(max_abs_diff(&sum, &CMatrix::identity(n, n)));
        checks += 1;
        if worst > 1e-10 {
            failures.push(format!("{}: projector algebra {worst:e}", ctx.name));
        }
        // random group-algebra elements: projectors commute with left translations
        let f = GroupAlgebraElement::random(n, &mut rng);
        let lf = classop::group::left_regular_matrix(g, &f).unwrap();
        let comm = ps.iter().map(|p| max_abs_diff(&(p * &lf), &(&lf * p))).fold(0.0, f64::max);
        checks += 1;
        if comm > 1e-10 {
            failures.push(format!("{}: projector centrality {comm:e}", ctx.name));
        }
    }
    // quadrature weight normalization
    for nq in 1..=64 {
        checks += 1;
        let (_, w) = gauss_legendre(nq);
        if (w.iter().sum::<f64>() - 2.0).abs() > 1e-13 {
            failures.push(format!("Gauss-Legendre n = {nq}"));
        }
    }
    for (t, p) in [(2, 2), (4, 8), (8, 64), (16, 32), (32, 64), (64, 128)] {
        checks += 1;
        if (SphereQuadrature::new(t, p).unwrap().weight_sum() - 1.0).abs() > 1e-15 * (t * p) as f64 {
            failures.push(format!("sphere rule ({t}, {p})"));
        }
    }
    for j2 in [0, 4, 8, 16, 24] {
        checks += 1;
        let rule = haar_rule(j2);
        let s: f64 = rule.iter().map(|r| r.1).sum();
        // naive summation: rounding grows with the node count
        if (s - 1.0).abs() > 1e-15 * rule.len() as f64 {
            failures.push(format!("Haar rule {j2}"));
        }
    }
    within_time(
        start,
        Duration::from_secs(300),
        Outcome { pass: failures.is_empty(), detail: format!("{checks} property checks, {} failures {:?}", failures.len(), failures) },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 class operator spectral form", criterion_1),
        ("2 S3 isotypic eigenvalues", criterion_2),
        ("3 SU(2) closed-form spectrum", criterion_3),
        ("4 factorization and covariance", criterion_4),
        ("5 Wigner-Eckart coefficients", criterion_5),
        ("6 product and triple-product expansions", criterion_6),
        ("7 Frobenius multiplicities", criterion_7),
        ("8 property suites", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
