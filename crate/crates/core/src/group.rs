//! Finite groups, conjugacy classes and the group algebra.
//!
//! Normalization conventions live here and nowhere else:
//!
//! * the inner product on functions is `(f|g) = (1/|G|) sum_x f(x) conj(g(x))`;
//! * convolution is `(f * g)(x) = (1/|G|) sum_y f(y) g(y^-1 x)`;
//! * left multiplication by `f` in the group algebra is `lambda(f) = sum_y f(y) lambda(y)`,
//!   i.e. convolution with the rescaled function `|G| f`.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ONE, ZERO};
use crate::perm::Permutation;

pub const DEFAULT_ORDER_CAP: usize = 10080;

/// Tables up to this order are checked for associativity over every triple.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 60;
const SAMPLED_TRIPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogFamily {
    Cyclic,
    Dihedral,
    Symmetric,
    Quaternion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSpec {
    pub family: CatalogFamily,
    #[serde(default)]
    pub n: usize,
}

impl CatalogSpec {
    pub fn cyclic(n: usize) -> Self {
        CatalogSpec { family: CatalogFamily::Cyclic, n }
    }
    pub fn dihedral(n: usize) -> Self {
        CatalogSpec { family: CatalogFamily::Dihedral, n }
    }
    pub fn symmetric(n: usize) -> Self {
        CatalogSpec { family: CatalogFamily::Symmetric, n }
    }
    pub fn quaternion() -> Self {
        CatalogSpec { family: CatalogFamily::Quaternion, n: 8 }
    }

    /// Short name such as `C6`, `D4`, `S3`, `Q8`.
    pub fn short_name(&self) -> String {
        match self.family {
            CatalogFamily::Cyclic => format!("C{}", self.n),
            CatalogFamily::Dihedral => format!("D{}", self.n),
            CatalogFamily::Symmetric => format!("S{}", self.n),
            CatalogFamily::Quaternion => "Q8".to_string(),
        }
    }

    pub fn order(&self) -> usize {
        match self.family {
            CatalogFamily::Cyclic => self.n,
            CatalogFamily::Dihedral => 2 * self.n,
            CatalogFamily::Symmetric => (1..=self.n).product(),
            CatalogFamily::Quaternion => 8,
        }
    }

    /// Every catalog group of order at most `max_order`, family by family.
    pub fn all_up_to(max_order: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (1..=max_order).map(Self::cyclic).collect();
        out.extend((3..).map(Self::dihedral).take_while(|s| s.order() <= max_order));
        out.extend((1..=5).map(Self::symmetric).filter(|s| s.order() <= max_order));
        if max_order >= 8 {
            out.push(Self::quaternion());
        }
        out
    }

    pub fn parse_short(name: &str) -> Result<Self> {
        let name = name.trim();
        if name.eq_ignore_ascii_case("Q8") {
            return Ok(CatalogSpec::quaternion());
        }
        let mut chars = name.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('C') => CatalogFamily::Cyclic,
            Some('D') => CatalogFamily::Dihedral,
            Some('S') => CatalogFamily::Symmetric,
            _ => return Err(Error::InvalidGroup(format!("unknown catalog group {name:?}"))),
        };
        let n = chars
            .as_str()
            .parse::<usize>()
            .map_err(|_| Error::InvalidGroup(format!("bad catalog parameter in {name:?}")))?;
        Ok(CatalogSpec { family, n })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableSpec {
    /// `rows[a][b]` is the index of `a*b`.
    pub rows: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Group input document: `{"catalog": {"family": "symmetric", "n": 3}}`,
/// `{"generators": ["(1 2)", "(1 2 3)"]}` or `{"table": {"rows": [[..]]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Catalog(CatalogSpec),
    Generators(Vec<String>),
    Table(TableSpec),
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupOrigin {
    Catalog(CatalogSpec),
    Generators,
    Table,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub order_cap: usize,
    /// Seed for sampled associativity checks on large input tables.
    pub seed: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { order_cap: DEFAULT_ORDER_CAP, seed: 42 }
    }
}

/// A finite group given by its full multiplication table. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inverse: Vec<usize>,
    labels: Vec<String>,
    generators: Vec<usize>,
    /// `words[g] = Some((s, h))` means `g = generators[s] * h` with `h` earlier
    /// in the breadth-first order.
    words: Vec<Option<(usize, usize)>>,
    origin: GroupOrigin,
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_group_with(spec, &BuildOptions::default())
}

pub fn build_group_with(spec: &GroupSpec, opts: &BuildOptions) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Catalog(c) => build_catalog(*c, opts),
        GroupSpec::Generators(gens) => {
            let degree = gens
                .iter()
                .map(|g| Permutation::max_point(g))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .unwrap_or(0)
                .max(1);
            let perms = gens
                .iter()
                .map(|g| Permutation::parse_cycles(g, degree))
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_permutations(&perms, degree, opts.order_cap, GroupOrigin::Generators, |p| {
                p.to_string()
            })
        }
        GroupSpec::Table(t) => FiniteGroup::from_table(t, opts),
    }
}

fn build_catalog(spec: CatalogSpec, opts: &BuildOptions) -> Result<FiniteGroup> {
    let origin = GroupOrigin::Catalog(spec);
    let n = spec.n;
    match spec.family {
        CatalogFamily::Cyclic => {
            if n == 0 {
                return Err(Error::InvalidGroup("cyclic group needs n >= 1".into()));
            }
            let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
            FiniteGroup::from_permutations(&[rot], n, opts.order_cap, origin, |p| p.to_string())
        }
        CatalogFamily::Dihedral => {
            if n < 3 {
                return Err(Error::InvalidGroup("dihedral group D_n needs n >= 3".into()));
            }
            let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
            let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
            FiniteGroup::from_permutations(&[rot, refl], n, opts.order_cap, origin, |p| p.to_string())
        }
        CatalogFamily::Symmetric => {
            if n == 0 || n > 5 {
                return Err(Error::InvalidGroup("catalog symmetric group needs 1 <= n <= 5".into()));
            }
            let gens: Vec<Permutation> = (0..n.saturating_sub(1))
                .map(|k| {
                    let mut images: Vec<usize> = (0..n).collect();
                    images.swap(k, k + 1);
                    Permutation::from_images(images)
                })
                .collect::<Result<_>>()?;
            FiniteGroup::from_permutations(&gens, n, opts.order_cap, origin, |p| p.to_string())
        }
        CatalogFamily::Quaternion => {
            let left = |u: usize| Permutation::from_images((0..8).map(|v| quaternion_mul(u, v)).collect());
            let gens = [left(QUAT_I)?, left(QUAT_J)?];
            FiniteGroup::from_permutations(&gens, 8, opts.order_cap, origin, |p| {
                QUATERNION_LABELS[p.apply(0)].to_string()
            })
        }
    }
}

/// Quaternion units indexed as `2*axis + negative`, axis in {1, i, j, k}.
pub(crate) const QUAT_I: usize = 2;
pub(crate) const QUAT_J: usize = 4;
const QUATERNION_LABELS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

pub(crate) fn quaternion_mul(a: usize, b: usize) -> usize {
    // (axis_a * axis_b) = sign * axis
    const TABLE: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let (neg, axis) = TABLE[a / 2][b / 2];
    let negative = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
    2 * axis + usize::from(negative)
}

impl FiniteGroup {
    /// Breadth-first closure of `gens`. Each new level is sorted by one-line
    /// image, which fixes the element order independently of hashing.
    pub fn from_permutations(
        gens: &[Permutation],
        degree: usize,
        order_cap: usize,
        origin: GroupOrigin,
        labeler: impl Fn(&Permutation) -> String,
    ) -> Result<Self> {
        let gens: Vec<Permutation> = gens.iter().map(|g| g.extend(degree)).collect();
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut words: Vec<Option<(usize, usize)>> = vec![None];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut level: BTreeMap<Permutation, (usize, usize)> = BTreeMap::new();
            for &h in &frontier {
                for (s, gen) in gens.iter().enumerate() {
                    let p = gen.compose(&elements[h]);
                    if !index.contains_key(&p) {
                        level.entry(p).or_insert((s, h));
                    }
                }
            }
            frontier.clear();
            for (p, word) in level {
                if elements.len() >= order_cap {
                    return Err(Error::GroupTooLarge { cap: order_cap });
                }
                index.insert(p.clone(), elements.len());
                frontier.push(elements.len());
                elements.push(p);
                words.push(Some(word));
            }
        }
        let order = elements.len();
        // left multiplication by each generator as an index map
        let gen_left: Vec<Vec<usize>> = gens
            .iter()
            .map(|gen| elements.iter().map(|e| index[&gen.compose(e)]).collect())
            .collect();
        let mut mult = vec![0usize; order * order];
        for b in 0..order {
            mult[b] = b;
        }
        for a in 1..order {
            let (s, h) = words[a].expect("non-identity elements carry a word");
            for b in 0..order {
                mult[a * order + b] = gen_left[s][mult[h * order + b]];
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        let labels = elements.iter().map(&labeler).collect();
        let mut group = FiniteGroup {
            order,
            mult,
            inverse: Vec::new(),
            labels,
            generators,
            words,
            origin,
        };
        group.inverse = group.compute_inverses()?;
        Ok(group)
    }

    fn from_table(spec: &TableSpec, opts: &BuildOptions) -> Result<Self> {
        let n = spec.rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if n > opts.order_cap {
            return Err(Error::GroupTooLarge { cap: opts.order_cap });
        }
        for (a, row) in spec.rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {a} is not closed (order {n})")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| spec.rows[e][g] == g && spec.rows[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("table has no two-sided identity".into()))?;
        // move the identity to index 0, keeping the relative order of the rest
        let mut order_new: Vec<usize> = vec![identity];
        order_new.extend((0..n).filter(|&g| g != identity));
        let mut old_to_new = vec![0; n];
        for (new, &old) in order_new.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = old_to_new[spec.rows[order_new[a]][order_new[b]]];
            }
        }
        let labels = match &spec.labels {
            Some(l) if l.len() == n => order_new.iter().map(|&old| l[old].clone()).collect(),
            Some(l) => {
                return Err(Error::InvalidGroup(format!("{} labels for {n} elements", l.len())));
            }
            None => order_new.iter().map(|old| format!("g{old}")).collect(),
        };
        let mut group = FiniteGroup {
            order: n,
            mult,
            inverse: Vec::new(),
            labels,
            generators: Vec::new(),
            words: vec![None; n],
            origin: GroupOrigin::Table,
        };
        group.inverse = group.compute_inverses()?;
        group.check_associative(opts.seed)?;
        Ok(group)
    }

    fn compute_inverses(&self) -> Result<Vec<usize>> {
        (0..self.order)
            .map(|a| {
                (0..self.order)
                    .find(|&b| self.mul(a, b) == 0 && self.mul(b, a) == 0)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect()
    }

    /// Exhaustive over all triples up to order 60, otherwise 10^4 seeded samples.
    pub fn check_associative(&self, seed: u64) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_TRIPLES {
                check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
            }
        }
        Ok(())
    }

    /// Verifies every group-axiom invariant of the type.
    pub fn validate(&self, seed: u64) -> Result<()> {
        for g in 0..self.order {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(Error::InvalidGroup(format!("element 0 is not an identity for {g}")));
            }
            let gi = self.inv(g);
            if self.mul(g, gi) != 0 || self.mul(gi, g) != 0 {
                return Err(Error::InvalidGroup(format!("bad inverse for {g}")));
            }
        }
        self.check_associative(seed)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `x g x^-1`
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Result<usize> {
        let wanted = label.trim();
        self.labels
            .iter()
            .position(|l| l == wanted)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `Some((s, h))` with `g = generators[s] * h`, for groups built by closure.
    pub fn word(&self, g: usize) -> Option<(usize, usize)> {
        self.words[g]
    }

    pub fn origin(&self) -> &GroupOrigin {
        &self.origin
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Human-readable name: the catalog short name, or `|G|=n` otherwise.
    pub fn name(&self) -> String {
        match &self.origin {
            GroupOrigin::Catalog(c) => c.short_name(),
            _ => format!("order{}", self.order),
        }
    }
}

/// A conjugacy class together with its base point and centralizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub base: usize,
    pub members: Vec<usize>,
    pub centralizer: Vec<usize>,
    /// `coset_reps[i]` is the smallest `x` with `x base x^-1 = members[i]`;
    /// it names the coset `x Z0` matched to that member.
    pub coset_reps: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn centralizer_order(&self) -> usize {
        self.centralizer.len()
    }

    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }
}

/// Classes sorted by base element, which is the minimal member index.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<ConjugacyClass> {
    let n = group.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for g in 0..n {
        if assigned[g] {
            continue;
        }
        let mut rep_of: BTreeMap<usize, usize> = BTreeMap::new();
        for x in 0..n {
            rep_of.entry(group.conjugate(x, g)).or_insert(x);
        }
        let members: Vec<usize> = rep_of.keys().copied().collect();
        let coset_reps: Vec<usize> = rep_of.values().copied().collect();
        for &m in &members {
            assigned[m] = true;
        }
        let centralizer = (0..n).filter(|&h| group.mul(h, g) == group.mul(g, h)).collect();
        classes.push(ConjugacyClass { base: g, members, centralizer, coset_reps });
    }
    classes
}

/// `map[g]` is the position of the class containing `g`.
pub fn class_map(group: &FiniteGroup, classes: &[ConjugacyClass]) -> Vec<usize> {
    let mut map = vec![usize::MAX; group.order()];
    for (ci, c) in classes.iter().enumerate() {
        for &m in &c.members {
            map[m] = ci;
        }
    }
    map
}

/// Class whose base element or member carries `label`; `None` matches nothing.
pub fn find_class(group: &FiniteGroup, classes: &[ConjugacyClass], label: &str) -> Result<usize> {
    let g = group.find_label(label)?;
    Ok(class_map(group, classes)[g])
}

/// Coefficient function `g -> phi(g)` of a group-algebra element.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement(Vec<Complex64>);

impl GroupAlgebraElement {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        GroupAlgebraElement(coeffs)
    }

    pub fn zeros(order: usize) -> Self {
        GroupAlgebraElement(vec![ZERO; order])
    }

    pub fn constant(order: usize, value: Complex64) -> Self {
        GroupAlgebraElement(vec![value; order])
    }

    /// Indicator function of `g`.
    pub fn delta(order: usize, g: usize) -> Self {
        let mut v = vec![ZERO; order];
        v[g] = ONE;
        GroupAlgebraElement(v)
    }

    /// Normalized class sum `L0 = (1/|C0|) sum_{g in C0} g`.
    pub fn class_sum(order: usize, class: &ConjugacyClass) -> Self {
        let w = Complex64::from(1.0 / class.size() as f64);
        let mut v = vec![ZERO; order];
        for &m in &class.members {
            v[m] = w;
        }
        GroupAlgebraElement(v)
    }

    /// Entries with independent standard-normal-ish real and imaginary parts in [-1, 1).
    pub fn random(order: usize, rng: &mut impl Rng) -> Self {
        GroupAlgebraElement(
            (0..order)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.0
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        GroupAlgebraElement(self.0.iter().map(|z| z * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        GroupAlgebraElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Sum of coefficients divided by their number (the Haar mean).
    pub fn mean(&self) -> Complex64 {
        self.0.iter().sum::<Complex64>() / self.0.len() as f64
    }

    /// `(lambda(g) phi)(x) = phi(g^-1 x)`
    pub fn left_translate(&self, group: &FiniteGroup, g: usize) -> Self {
        let gi = group.inv(g);
        GroupAlgebraElement((0..group.order()).map(|x| self.0[group.mul(gi, x)]).collect())
    }

    /// `(rho(g) phi)(x) = phi(x g)`
    pub fn right_translate(&self, group: &FiniteGroup, g: usize) -> Self {
        GroupAlgebraElement((0..group.order()).map(|x| self.0[group.mul(x, g)]).collect())
    }
}

impl std::ops::Index<usize> for GroupAlgebraElement {
    type Output = Complex64;
    fn index(&self, g: usize) -> &Complex64 {
        &self.0[g]
    }
}

fn check_len(group: &FiniteGroup, phi: &GroupAlgebraElement) -> Result<()> {
    if phi.len() != group.order() {
        return Err(Error::SizeMismatch { expected: group.order(), got: phi.len() });
    }
    Ok(())
}

/// `(phi * psi)(x) = (1/|G|) sum_g phi(g) psi(g^-1 x)`
pub fn convolve(
    group: &FiniteGroup,
    phi: &GroupAlgebraElement,
    psi: &GroupAlgebraElement,
) -> Result<GroupAlgebraElement> {
    check_len(group, phi)?;
    check_len(group, psi)?;
    let n = group.order();
    let scale = 1.0 / n as f64;
    let out = (0..n)
        .map(|x| {
            let s: Complex64 = (0..n)
                .map(|g| phi[g] * psi[group.mul(group.inv(g), x)])
                .sum();
            s * scale
        })
        .collect();
    Ok(GroupAlgebraElement(out))
}

/// `(phi|psi) = (1/|G|) sum_g phi(g) conj(psi(g))`
pub fn inner_product(
    group: &FiniteGroup,
    phi: &GroupAlgebraElement,
    psi: &GroupAlgebraElement,
) -> Result<Complex64> {
    check_len(group, phi)?;
    check_len(group, psi)?;
    Ok(inner_product_slices(phi.coeffs(), psi.coeffs()))
}

pub(crate) fn inner_product_slices(phi: &[Complex64], psi: &[Complex64]) -> Complex64 {
    let s: Complex64 = phi.iter().zip(psi).map(|(a, b)| a * b.conj()).sum();
    s / phi.len() as f64
}

/// Matrix of left multiplication by `phi` on the delta basis:
/// `M psi = (|G| phi) * psi = sum_g phi(g) lambda(g) psi`.
pub fn left_regular_matrix(group: &FiniteGroup, phi: &GroupAlgebraElement) -> Result<CMatrix> {
    check_len(group, phi)?;
    let n = group.order();
    let mut m = CMatrix::zeros(n, n);
    for g in 0..n {
        if phi[g] == ZERO {
            continue;
        }
        for y in 0..n {
            m[(group.mul(g, y), y)] += phi[g];
        }
    }
    Ok(m)
}

/// Left regular matrix `lambda(g)`: `lambda(g) e_y = e_{g y}`.
pub fn left_regular(group: &FiniteGroup, g: usize) -> CMatrix {
    let n = group.order();
    let mut m = CMatrix::zeros(n, n);
    for y in 0..n {
        m[(group.mul(g, y), y)] = ONE;
    }
    m
}

/// Right regular matrix `rho(g)`: `rho(g) e_y = e_{y g^-1}`.
pub fn right_regular(group: &FiniteGroup, g: usize) -> CMatrix {
    let n = group.order();
    let gi = group.inv(g);
    let mut m = CMatrix::zeros(n, n);
    for y in 0..n {
        m[(group.mul(y, gi), y)] = ONE;
    }
    m
}

/// `(lambda(g), rho(g))` as permutation matrices on the delta basis.
pub fn regular_actions(group: &FiniteGroup, g: usize) -> (CMatrix, CMatrix) {
    (left_regular(group, g), right_regular(group, g))
}
