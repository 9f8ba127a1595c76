//! Irreducible unitary representations, characters and isotypic projectors of
//! finite groups.
//!
//! Characters come from simultaneous diagonalization of the class-sum
//! multiplication operators (Burnside-Dixon in floating point). Catalog groups
//! get explicit irreps built from generator images; any other group falls back
//! to cutting one irreducible copy out of the regular representation.

use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{
    class_map, conjugacy_classes, quaternion_mul, CatalogFamily, CatalogSpec, ConjugacyClass,
    FiniteGroup, GroupAlgebraElement, GroupOrigin, QUAT_I, QUAT_J,
};
use crate::linalg::{
    cluster_sorted, column_space, columns_to_matrix, cplx, hermitian_eigen, max_abs_diff,
    scalar_part, unitarity_defect, CMatrix, CVector, ONE, ZERO,
};

pub const DEFAULT_SEED: u64 = 42;
const MAX_ATTEMPTS: usize = 8;
/// Relative eigenvalue separation required to accept a randomized split.
const GAP_TOL: f64 = 1e-6;
/// Agreement between constructed traces and the character table.
pub const TRACE_TOL: f64 = 1e-10;
/// Tolerance of the Schur irreducibility check.
pub const SCHUR_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub classes: Vec<ConjugacyClass>,
    /// `class_of[g]` is the index of the class containing `g`.
    pub class_of: Vec<usize>,
    /// `rows[alpha][c]` is the character of `alpha` on class `c`.
    pub rows: Vec<Vec<Complex64>>,
    pub dims: Vec<usize>,
    order: usize,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn chi(&self, alpha: usize, g: usize) -> Complex64 {
        self.rows[alpha][self.class_of[g]]
    }

    /// Character of `alpha` as a function on the group.
    pub fn character_function(&self, alpha: usize) -> GroupAlgebraElement {
        GroupAlgebraElement::new(self.class_of.iter().map(|&c| self.rows[alpha][c]).collect())
    }

    fn row(&self, alpha: usize) -> Result<&[Complex64]> {
        self.rows.get(alpha).map(|r| r.as_slice()).ok_or(Error::MissingCharacter(alpha))
    }

    /// max |(1/|G|) sum_c |C_c| chi_a(c) conj(chi_b(c)) - delta_ab|
    pub fn row_orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.len() {
            for b in 0..self.len() {
                let s: Complex64 = self
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(c, cl)| self.rows[a][c] * self.rows[b][c].conj() * cl.size() as f64)
                    .sum::<Complex64>()
                    / self.order as f64;
                let expect = if a == b { ONE } else { ZERO };
                worst = worst.max((s - expect).norm());
            }
        }
        worst
    }

    /// max |sum_a chi_a(c) conj(chi_a(d)) - delta_cd |Z_c||
    pub fn column_orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for c in 0..self.classes.len() {
            for d in 0..self.classes.len() {
                let s: Complex64 = (0..self.len()).map(|a| self.rows[a][c] * self.rows[a][d].conj()).sum();
                let expect = if c == d { self.classes[c].centralizer_order() as f64 } else { 0.0 };
                worst = worst.max((s - cplx(expect, 0.0)).norm());
            }
        }
        worst
    }
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    character_table_with_seed(group, DEFAULT_SEED)
}

/// Burnside-Dixon: the class-sum multiplication operators, written in the
/// orthonormal basis `sqrt(|G|/|C_k|) K_k` of the center, are commuting normal
/// matrices. A random Hermitian combination of them and their adjoints has the
/// normalized characters as eigenvectors. Degenerate spectra trigger a retry
/// with the next seed.
pub fn character_table_with_seed(group: &FiniteGroup, seed: u64) -> Result<CharacterTable> {
    let classes = conjugacy_classes(group);
    let class_of = class_map(group, &classes);
    let k = classes.len();
    let n = group.order();
    let sizes: Vec<f64> = classes.iter().map(|c| c.size() as f64).collect();

    // a[i][j][l] = #{(x, y) : x in C_i, y in C_j, x y = base(C_l)}
    let mut coeff = vec![0u64; k * k * k];
    for (l, cl) in classes.iter().enumerate() {
        for x in 0..n {
            let y = group.mul(group.inv(x), cl.base);
            coeff[(class_of[x] * k + class_of[y]) * k + l] += 1;
        }
    }
    let normal_ops: Vec<CMatrix> = (0..k)
        .map(|i| {
            CMatrix::from_fn(k, k, |l, j| {
                cplx(coeff[(i * k + j) * k + l] as f64 * (sizes[l] / sizes[j]).sqrt(), 0.0)
            })
        })
        .collect();

    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut h = CMatrix::zeros(k, k);
        for op in &normal_ops {
            let (r, s): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let adj = op.adjoint();
            h += (op + &adj) * cplx(r, 0.0) + (op - &adj) * cplx(0.0, s);
        }
        let (values, vectors) = hermitian_eigen(&h);
        let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        if cluster_sorted(&values, GAP_TOL * scale).len() != k {
            continue;
        }
        let mut rows = Vec::with_capacity(k);
        let mut dims = Vec::with_capacity(k);
        let mut ok = true;
        for col in vectors.column_iter() {
            let lead = col[0];
            if lead.norm() < 1e-8 {
                ok = false;
                break;
            }
            let phase = lead.conj() / lead.norm();
            let row: Vec<Complex64> = (0..k)
                .map(|c| (col[c] * phase).conj() * (n as f64 / sizes[c]).sqrt())
                .collect();
            let dim = row[0].re.round();
            if (row[0].re - dim).abs() > 1e-6 || dim < 1.0 {
                ok = false;
                break;
            }
            dims.push(dim as usize);
            rows.push(row);
        }
        if !ok || dims.iter().map(|d| d * d).sum::<usize>() != n {
            continue;
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| row_order(&rows[a], dims[a], &rows[b], dims[b]));
        let table = CharacterTable {
            classes,
            class_of,
            rows: order.iter().map(|&a| rows[a].clone()).collect(),
            dims: order.iter().map(|&a| dims[a]).collect(),
            order: n,
        };
        return Ok(table);
    }
    Err(Error::Clustering { attempts: MAX_ATTEMPTS })
}

fn round_key(z: Complex64) -> (f64, f64) {
    let r = |x: f64| {
        let v = (x * 1e8).round() / 1e8;
        if v == 0.0 {
            0.0
        } else {
            v
        }
    };
    (r(z.re), r(z.im))
}

/// Trivial row first, then by dimension, then lexicographically by value.
fn row_order(a: &[Complex64], da: usize, b: &[Complex64], db: usize) -> Ordering {
    let trivial = |row: &[Complex64]| row.iter().all(|z| (z - ONE).norm() < 1e-8);
    trivial(b)
        .cmp(&trivial(a))
        .then(da.cmp(&db))
        .then_with(|| {
            for (x, y) in a.iter().zip(b) {
                let (kx, ky) = (round_key(*x), round_key(*y));
                let c = kx.0.total_cmp(&ky.0).then(kx.1.total_cmp(&ky.1));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
}

/// Matrices of a representation indexed by group element.
#[derive(Clone, Debug)]
pub struct Representation {
    matrices: Vec<CMatrix>,
    dim: usize,
}

impl Representation {
    pub fn new(matrices: Vec<CMatrix>) -> Result<Self> {
        let dim = matrices.first().map_or(0, |m| m.nrows());
        for m in &matrices {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::SizeMismatch { expected: dim, got: m.nrows().max(m.ncols()) });
            }
        }
        Ok(Representation { matrices, dim })
    }

    /// Left regular representation on the delta basis.
    pub fn regular(group: &FiniteGroup) -> Self {
        let matrices = group.elements().map(|g| crate::group::left_regular(group, g)).collect();
        Representation { matrices, dim: group.order() }
    }

    pub fn from_irrep(irrep: &Irrep) -> Self {
        Representation { matrices: irrep.matrices.clone(), dim: irrep.dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn homomorphism_defect(&self, group: &FiniteGroup) -> f64 {
        let mut worst: f64 = 0.0;
        for a in group.elements() {
            for b in group.elements() {
                let prod = &self.matrices[a] * &self.matrices[b];
                worst = worst.max(max_abs_diff(&prod, &self.matrices[group.mul(a, b)]));
            }
        }
        worst
    }
}

/// A unitary irreducible representation in a fixed basis.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub alpha: usize,
    pub dim: usize,
    pub matrices: Vec<CMatrix>,
}

impl Irrep {
    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn character(&self, g: usize) -> Complex64 {
        self.matrices[g].trace()
    }

    pub fn homomorphism_defect(&self, group: &FiniteGroup) -> f64 {
        Representation::from_irrep(self).homomorphism_defect(group)
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.matrices.iter().map(unitarity_defect).fold(0.0, f64::max)
    }

    /// max |t_ij(g^-1) - conj(t_ji(g))|
    pub fn inverse_conjugate_defect(&self, group: &FiniteGroup) -> f64 {
        group
            .elements()
            .map(|g| max_abs_diff(&self.matrices[group.inv(g)], &self.matrices[g].adjoint()))
            .fold(0.0, f64::max)
    }

    /// Deviation from scalar of the group average of a fixed generic matrix.
    /// Zero (to rounding) iff the commutant is one-dimensional.
    pub fn schur_defect(&self, group: &FiniteGroup) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5c40);
        let probe = CMatrix::from_fn(self.dim, self.dim, |_, _| {
            cplx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let mut avg = CMatrix::zeros(self.dim, self.dim);
        for g in group.elements() {
            avg += &self.matrices[g] * &probe * self.matrices[g].adjoint();
        }
        avg /= cplx(group.order() as f64, 0.0);
        scalar_part(&avg).1
    }

    /// Conjugate into a new orthonormal basis: `B* T(g) B`.
    pub fn in_basis(&self, basis: &CMatrix) -> Irrep {
        Irrep {
            alpha: self.alpha,
            dim: self.dim,
            matrices: self.matrices.iter().map(|m| basis.adjoint() * m * basis).collect(),
        }
    }
}

/// One irrep per character-table row, in row order.
pub fn irreps(group: &FiniteGroup, table: &CharacterTable) -> Result<Vec<Irrep>> {
    let built = match group.origin() {
        GroupOrigin::Catalog(spec) => explicit_irreps(group, table, *spec)?,
        _ => generic_irreps(group, table, DEFAULT_SEED)?,
    };
    for irrep in &built {
        check_irrep(group, table, irrep)?;
    }
    Ok(built)
}

fn check_irrep(group: &FiniteGroup, table: &CharacterTable, irrep: &Irrep) -> Result<()> {
    let worst = group
        .elements()
        .map(|g| (irrep.character(g) - table.chi(irrep.alpha, g)).norm())
        .fold(0.0, f64::max);
    if worst > TRACE_TOL * irrep.dim as f64 {
        return Err(Error::IrrepCheck(format!(
            "traces of irrep {} deviate from its character by {worst:e}",
            irrep.alpha
        )));
    }
    let schur = irrep.schur_defect(group);
    if schur > SCHUR_TOL {
        return Err(Error::IrrepCheck(format!("irrep {} fails the Schur check ({schur:e})", irrep.alpha)));
    }
    Ok(())
}

fn explicit_irreps(group: &FiniteGroup, table: &CharacterTable, spec: CatalogSpec) -> Result<Vec<Irrep>> {
    let images = catalog_generator_images(spec);
    let mut slots: Vec<Option<Irrep>> = vec![None; table.len()];
    for gen_images in images {
        let dim = gen_images.first().map_or(1, |m| m.nrows());
        let mut matrices: Vec<CMatrix> = Vec::with_capacity(group.order());
        matrices.push(CMatrix::identity(dim, dim));
        for g in 1..group.order() {
            let (s, h) = group
                .word(g)
                .ok_or_else(|| Error::IrrepCheck("catalog group without generator words".into()))?;
            matrices.push(&gen_images[s] * &matrices[h]);
        }
        let alpha = (0..table.len())
            .find(|&a| {
                table.dims[a] == dim
                    && group
                        .elements()
                        .all(|g| (matrices[g].trace() - table.chi(a, g)).norm() < 1e-8)
            })
            .ok_or_else(|| Error::IrrepCheck("explicit irrep matches no character".into()))?;
        if slots[alpha].is_some() {
            return Err(Error::IrrepCheck(format!("two explicit irreps match character {alpha}")));
        }
        slots[alpha] = Some(Irrep { alpha, dim, matrices });
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(a, s)| s.ok_or_else(|| Error::IrrepCheck(format!("no explicit irrep for character {a}"))))
        .collect()
}

fn scalar(z: Complex64) -> CMatrix {
    CMatrix::from_element(1, 1, z)
}

/// Per irrep, the images of the catalog generators in generator order.
fn catalog_generator_images(spec: CatalogSpec) -> Vec<Vec<CMatrix>> {
    let n = spec.n;
    match spec.family {
        CatalogFamily::Cyclic => (0..n)
            .map(|k| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                vec![scalar(Complex64::from_polar(1.0, angle))]
            })
            .collect(),
        CatalogFamily::Dihedral => {
            let mut out = vec![
                vec![scalar(ONE), scalar(ONE)],
                vec![scalar(ONE), scalar(-ONE)],
            ];
            if n.is_multiple_of(2) {
                out.push(vec![scalar(-ONE), scalar(ONE)]);
                out.push(vec![scalar(-ONE), scalar(-ONE)]);
            }
            let reflection = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
            for h in 1..=(n - 1) / 2 {
                let t = 2.0 * std::f64::consts::PI * h as f64 / n as f64;
                let rotation = CMatrix::from_row_slice(
                    2,
                    2,
                    &[cplx(t.cos(), 0.0), cplx(-t.sin(), 0.0), cplx(t.sin(), 0.0), cplx(t.cos(), 0.0)],
                );
                out.push(vec![rotation, reflection.clone()]);
            }
            out
        }
        CatalogFamily::Symmetric => partitions(n)
            .iter()
            .map(|shape| young_orthogonal_generators(shape, n))
            .collect(),
        CatalogFamily::Quaternion => {
            let i = Complex64::i();
            // generator images must satisfy the quaternion relations for L_i, L_j
            debug_assert_eq!(quaternion_mul(QUAT_I, QUAT_J), 6);
            let mut out: Vec<Vec<CMatrix>> = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
                .iter()
                .map(|&(a, b)| vec![scalar(cplx(a, 0.0)), scalar(cplx(b, 0.0))])
                .collect();
            out.push(vec![
                CMatrix::from_row_slice(2, 2, &[i, ZERO, ZERO, -i]),
                CMatrix::from_row_slice(2, 2, &[ZERO, ONE, -ONE, ZERO]),
            ]);
            out
        }
    }
}

/// Partitions of `n` in decreasing lexicographic order.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Standard Young tableaux of `shape`, each as the row index of entries 0..n.
fn standard_tableaux(shape: &[usize]) -> Vec<Vec<usize>> {
    fn rec(shape: &[usize], filled: &mut Vec<usize>, rows: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n: usize = shape.iter().sum();
        if rows.len() == n {
            out.push(rows.clone());
            return;
        }
        for r in 0..shape.len() {
            let fits = filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]);
            if fits {
                filled[r] += 1;
                rows.push(r);
                rec(shape, filled, rows, out);
                rows.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(shape, &mut vec![0; shape.len()], &mut Vec::new(), &mut out);
    out
}

/// Young's orthogonal form for the adjacent transpositions `(k k+1)`.
fn young_orthogonal_generators(shape: &[usize], n: usize) -> Vec<CMatrix> {
    let tableaux = standard_tableaux(shape);
    let dim = tableaux.len();
    // (row, column) of every entry per tableau
    let cells: Vec<Vec<(i64, i64)>> = tableaux
        .iter()
        .map(|rows| {
            let mut seen = vec![0i64; shape.len()];
            rows.iter()
                .map(|&r| {
                    let c = seen[r];
                    seen[r] += 1;
                    (r as i64, c)
                })
                .collect()
        })
        .collect();
    (0..n.saturating_sub(1))
        .map(|k| {
            let mut m = CMatrix::zeros(dim, dim);
            for (t, cell) in cells.iter().enumerate() {
                let (r0, c0) = cell[k];
                let (r1, c1) = cell[k + 1];
                if r0 == r1 {
                    m[(t, t)] = ONE;
                } else if c0 == c1 {
                    m[(t, t)] = -ONE;
                } else {
                    let axial = ((c1 - r1) - (c0 - r0)) as f64;
                    let mut swapped = tableaux[t].clone();
                    swapped.swap(k, k + 1);
                    let partner = tableaux.iter().position(|x| *x == swapped).expect("swap stays standard");
                    m[(t, t)] = cplx(1.0 / axial, 0.0);
                    m[(partner, t)] = cplx((1.0 - 1.0 / (axial * axial)).sqrt(), 0.0);
                }
            }
            m
        })
        .collect()
}

/// Irreps extracted from the regular representation: the range of `P^alpha`
/// holds `n` copies of `alpha`; a random self-adjoint operator from the right
/// regular commutant acts there as `I (x) A`, so each of its eigenspaces is a
/// single irreducible copy. The first eigenspace is re-based with pivoted
/// Gram-Schmidt so the basis does not depend on the eigensolver.
pub fn generic_irreps(group: &FiniteGroup, table: &CharacterTable, seed: u64) -> Result<Vec<Irrep>> {
    let order = group.order();
    let mut out = Vec::with_capacity(table.len());
    for alpha in 0..table.len() {
        let dim = table.dims[alpha];
        if dim == 1 {
            let matrices = group.elements().map(|g| scalar(table.chi(alpha, g))).collect();
            out.push(Irrep { alpha, dim, matrices });
            continue;
        }
        let scale = dim as f64 / order as f64;
        let projector = CMatrix::from_fn(order, order, |x, y| {
            table.chi(alpha, group.mul(x, group.inv(y))).conj() * scale
        });
        let range = column_space(&projector, 1e-8);
        if range.len() != dim * dim {
            return Err(Error::IrrepCheck(format!(
                "isotypic range of {alpha} has dimension {} instead of {}",
                range.len(),
                dim * dim
            )));
        }
        let q = columns_to_matrix(&range, order);
        let mut copy: Option<CMatrix> = None;
        for attempt in 0..MAX_ATTEMPTS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1000 * alpha as u64 + attempt as u64));
            let mut hq = CMatrix::zeros(order, dim * dim);
            for g in group.elements() {
                let c = cplx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                // (rho(g) v)(x) = v(x g)
                for x in 0..order {
                    let src = group.mul(x, g);
                    for col in 0..dim * dim {
                        hq[(x, col)] += c * q[(src, col)];
                    }
                }
            }
            let h_small = q.adjoint() * &hq;
            let h_small = &h_small + h_small.adjoint();
            let (values, vectors) = hermitian_eigen(&h_small);
            let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let clusters = cluster_sorted(&values, 1e-7 * scale);
            if clusters.len() != dim || clusters.iter().any(|c| c.len() != dim) {
                continue;
            }
            let span = vectors.columns(clusters[0].start, dim).into_owned();
            let w = &q * span;
            let projector_copy = &w * w.adjoint();
            let basis = column_space(&projector_copy, 1e-6);
            if basis.len() == dim {
                copy = Some(columns_to_matrix(&basis, order));
                break;
            }
        }
        let w = copy.ok_or(Error::Clustering { attempts: MAX_ATTEMPTS })?;
        let matrices = group
            .elements()
            .map(|g| {
                let gi = group.inv(g);
                // (lambda(g) w)(x) = w(g^-1 x)
                let lw = CMatrix::from_fn(order, dim, |x, col| w[(group.mul(gi, x), col)]);
                w.adjoint() * lw
            })
            .collect();
        out.push(Irrep { alpha, dim, matrices });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct IsotypicProjection {
    pub alpha: usize,
    pub matrix: CMatrix,
}

impl IsotypicProjection {
    pub fn idempotency_defect(&self) -> f64 {
        max_abs_diff(&(&self.matrix * &self.matrix), &self.matrix)
    }

    /// Self-adjointness for an orthogonal delta basis with equal norms.
    pub fn adjointness_defect(&self) -> f64 {
        crate::linalg::hermiticity_defect(&self.matrix)
    }

    pub fn rank(&self) -> usize {
        self.matrix.trace().re.round() as usize
    }
}

/// `P^alpha = (n^alpha/|G|) sum_g conj(chi^alpha(g)) U(g)`
pub fn isotypic_projector(
    group: &FiniteGroup,
    table: &CharacterTable,
    alpha: usize,
    rep: &Representation,
) -> Result<IsotypicProjection> {
    table.row(alpha)?;
    if rep.len() != group.order() {
        return Err(Error::SizeMismatch { expected: group.order(), got: rep.len() });
    }
    let d = rep.dim();
    let scale = table.dims[alpha] as f64 / group.order() as f64;
    let mut m = CMatrix::zeros(d, d);
    for g in group.elements() {
        m += rep.matrix(g) * (table.chi(alpha, g).conj() * scale);
    }
    Ok(IsotypicProjection { alpha, matrix: m })
}

/// The functions `g -> conj(t_ij(g))` of one irrep, row-major in `(i, j)`.
/// Multiplying by `normalization = sqrt(n)` makes them orthonormal.
#[derive(Clone, Debug)]
pub struct MatrixElementFunctions {
    pub alpha: usize,
    pub dim: usize,
    pub functions: Vec<GroupAlgebraElement>,
    pub normalization: f64,
}

impl MatrixElementFunctions {
    pub fn get(&self, i: usize, j: usize) -> &GroupAlgebraElement {
        &self.functions[i * self.dim + j]
    }
}

pub fn matrix_element_functions(group: &FiniteGroup, irrep: &Irrep) -> MatrixElementFunctions {
    let n = irrep.dim;
    let functions = (0..n * n)
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            GroupAlgebraElement::new(group.elements().map(|g| irrep.matrices[g][(i, j)].conj()).collect())
        })
        .collect();
    MatrixElementFunctions { alpha: irrep.alpha, dim: n, functions, normalization: (n as f64).sqrt() }
}

/// Orthonormal vector view of the matrix-element functions of all irreps:
/// column `(alpha, i, j)` holds `conj(t^alpha_ij)` on the delta basis.
pub fn matrix_element_basis(group: &FiniteGroup, irreps: &[Irrep]) -> (CMatrix, Vec<(usize, usize, usize)>) {
    let mut index = Vec::new();
    let mut cols = Vec::new();
    for irrep in irreps {
        for i in 0..irrep.dim {
            for j in 0..irrep.dim {
                index.push((irrep.alpha, i, j));
                cols.push(CVector::from_iterator(
                    group.order(),
                    group.elements().map(|g| irrep.matrices[g][(i, j)].conj()),
                ));
            }
        }
    }
    (columns_to_matrix(&cols, group.order()), index)
}
