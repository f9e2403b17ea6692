//! Braid operators at the classical specialization and the inductive
//! root-vector construction along the periodic quiver.
//!
//! For a root vector e with sl2 partner f (normalized by [e, f] = H),
//! the operator is T = exp(ad e) o exp(-ad f) o exp(ad e). These satisfy
//! the braid relations, permute root spaces, and transport root vectors
//! along adapted words; the cell rule
//!     E at twist(v) = (prod over neighbors T_gamma) T_alpha (E at v)
//! propagates slice seeds around the full period.
//!
//! Everything is written against a small realization trait so that the
//! abstract structure-constant table and the traceless-matrix model for
//! type A run through identical code paths.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gammahat::{sweep, GammaHat, HeightFunction};
use crate::liebuild::{AlgebraElement, BasisLabel, StructureTable};
use crate::ratmat::{rat, Rat, RatMatrix};
use crate::rootsys::{CoxeterElement, RootId, RootSystem};

/// A Lie algebra with a distinguished generator in every root space.
pub trait LieRealization {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn dim(&self) -> usize;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Rat, x: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// The reference generator of the root space.
    fn root_generator(&self, root: RootId) -> Self::Elem;
    /// The Cartan element paired with a root.
    fn cartan_of_root(&self, root: RootId) -> Self::Elem;
    /// The scalar c with y = c x, if one exists and x is nonzero.
    fn proportion(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Rat>;
}

/// The structure-constant table viewed as a realization.
#[derive(Debug, Clone, Copy)]
pub struct TableRealization<'a>(pub &'a StructureTable);

impl LieRealization for TableRealization<'_> {
    type Elem = AlgebraElement;

    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.0.bracket(x, y).expect("table elements carry valid labels")
    }

    fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        x.add(y)
    }

    fn scale(&self, c: &Rat, x: &AlgebraElement) -> AlgebraElement {
        x.scale(c)
    }

    fn is_zero(&self, x: &AlgebraElement) -> bool {
        x.is_zero()
    }

    fn root_generator(&self, root: RootId) -> AlgebraElement {
        AlgebraElement::basis(self.0.root_label(root))
    }

    fn cartan_of_root(&self, root: RootId) -> AlgebraElement {
        self.0.cartan_of_root(root)
    }

    fn proportion(&self, x: &AlgebraElement, y: &AlgebraElement) -> Option<Rat> {
        let (&l, c) = x.0.iter().next()?;
        let ratio = y.coeff(l) / c;
        if &x.scale(&ratio) == y {
            Some(ratio)
        } else {
            None
        }
    }
}

/// exp(ad x) applied to y; the series must terminate within the
/// dimension bound.
pub fn exp_ad_apply<R: LieRealization>(r: &R, x: &R::Elem, y: &R::Elem) -> Result<R::Elem> {
    let mut total = y.clone();
    let mut term = y.clone();
    let mut k: u64 = 1;
    loop {
        term = r.bracket(x, &term);
        if r.is_zero(&term) {
            return Ok(total);
        }
        term = r.scale(&Rat::new(BigInt::one(), BigInt::from(k)), &term);
        total = r.add(&total, &term);
        k += 1;
        if k as usize > r.dim() + 2 {
            return Err(Error::NotNilpotent);
        }
    }
}

/// The partner f of a root vector e, normalized by [e, f] = H_alpha.
pub fn sl2_partner<R: LieRealization>(
    r: &R,
    roots: &RootSystem,
    e: &R::Elem,
    alpha: RootId,
) -> Result<R::Elem> {
    let gen = r.root_generator(roots.negate(alpha));
    let z = r.bracket(e, &gen);
    let h = r.cartan_of_root(alpha);
    let c = r.proportion(&z, &h).ok_or(Error::NoSl2Triple)?;
    if c.is_zero() {
        return Err(Error::NoSl2Triple);
    }
    Ok(r.scale(&(Rat::one() / c), &gen))
}

/// T applied to a single element, for the root vector e sitting in the
/// alpha root space.
pub fn apply_braid<R: LieRealization>(
    r: &R,
    roots: &RootSystem,
    e: &R::Elem,
    alpha: RootId,
    y: &R::Elem,
) -> Result<R::Elem> {
    let f = sl2_partner(r, roots, e, alpha)?;
    let minus_f = r.scale(&rat(-1), &f);
    let y1 = exp_ad_apply(r, e, y)?;
    let y2 = exp_ad_apply(r, &minus_f, &y1)?;
    exp_ad_apply(r, e, &y2)
}

/// An automorphism of the abstract table as an exact matrix on basis
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraAutomorphism {
    matrix: RatMatrix,
}

impl AlgebraAutomorphism {
    pub fn identity(dim: usize) -> Self {
        AlgebraAutomorphism { matrix: RatMatrix::identity(dim) }
    }

    fn from_action<F>(dim: usize, mut action: F) -> Result<Self>
    where
        F: FnMut(&AlgebraElement) -> Result<AlgebraElement>,
    {
        let mut matrix = RatMatrix::zero(dim);
        for col in 0..dim {
            let image = action(&AlgebraElement::basis(col))?;
            for (&row, c) in image.support() {
                matrix[(row, col)] = c.clone();
            }
        }
        Ok(AlgebraAutomorphism { matrix })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (&col, c) in x.support() {
            for row in 0..self.matrix.size() {
                let entry = &self.matrix[(row, col)];
                if !entry.is_zero() {
                    out.add_term(row, entry * c);
                }
            }
        }
        out
    }

    /// self o other: other acts first.
    pub fn compose(&self, other: &AlgebraAutomorphism) -> AlgebraAutomorphism {
        AlgebraAutomorphism { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn inverse(&self) -> Result<AlgebraAutomorphism> {
        Ok(AlgebraAutomorphism { matrix: self.matrix.inverse()? })
    }

    /// phi([x, y]) = [phi x, phi y] on all basis pairs.
    pub fn preserves_bracket(&self, table: &StructureTable) -> bool {
        let dim = table.dim();
        for x in 0..dim {
            for y in 0..dim {
                let mut lhs = AlgebraElement::zero();
                for &(l, c) in table.basis_bracket(x, y) {
                    lhs.add_term(l, rat(c));
                }
                let lhs = self.apply(&lhs);
                let rhs = table
                    .bracket(
                        &self.apply(&AlgebraElement::basis(x)),
                        &self.apply(&AlgebraElement::basis(y)),
                    )
                    .expect("valid labels");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The permutation induced on root spaces, when each root generator
    /// lands in a single root space and the Cartan part stays Cartan.
    pub fn root_space_permutation(&self, table: &StructureTable) -> Option<Vec<RootId>> {
        let rank = table.rootsys().rank();
        for v in 1..=rank {
            let image = self.apply(&AlgebraElement::basis(table.cartan_label(v)));
            for (&l, _) in image.support() {
                if !matches!(table.label(l), BasisLabel::Cartan(_)) {
                    return None;
                }
            }
        }
        let mut perm = Vec::with_capacity(table.rootsys().len());
        for a in 0..table.rootsys().len() {
            let image = self.apply(&AlgebraElement::basis(table.root_label(a)));
            let mut support = image.support();
            let (&l, _) = support.next()?;
            if support.next().is_some() {
                return None;
            }
            match table.label(l) {
                BasisLabel::Root(b) => perm.push(b),
                BasisLabel::Cartan(_) => return None,
            }
        }
        Some(perm)
    }
}

/// exp(ad x) as an automorphism of the table.
pub fn ad_exp(table: &StructureTable, x: &AlgebraElement) -> Result<AlgebraAutomorphism> {
    let r = TableRealization(table);
    AlgebraAutomorphism::from_action(table.dim(), |y| exp_ad_apply(&r, x, y))
}

/// The braid operator at the simple root of a diagram vertex, built from
/// the table's own generators: e = E_i and f = -E_{-i}, so [e, f] = H_i.
pub fn braid_simple(table: &StructureTable, vertex: usize) -> Result<AlgebraAutomorphism> {
    let alpha = table.rootsys().simple(vertex);
    braid_root(table, &AlgebraElement::basis(table.root_label(alpha)), alpha)
}

/// The braid operator for an arbitrary root vector e in the alpha root
/// space, with the partner normalized through the sl2 relations.
pub fn braid_root(
    table: &StructureTable,
    e: &AlgebraElement,
    alpha: RootId,
) -> Result<AlgebraAutomorphism> {
    let r = TableRealization(table);
    let roots = table.rootsys();
    AlgebraAutomorphism::from_action(table.dim(), |y| apply_braid(&r, roots, e, alpha, y))
}

/// The operator of a word, rightmost letter acting first.
pub fn braid_word(table: &StructureTable, word: &[usize]) -> Result<AlgebraAutomorphism> {
    let mut acc = AlgebraAutomorphism::identity(table.dim());
    for &i in word {
        acc = acc.compose(&braid_simple(table, i)?);
    }
    Ok(acc)
}

/// Root vectors constructed by cell propagation from slice seeds.
#[derive(Debug, Clone)]
pub struct RootVectorAssignment<E> {
    pub vectors: BTreeMap<RootId, E>,
    /// Wrap-around recomputations: (root, value recomputed after a full
    /// period). Consistency demands these match the stored vectors.
    pub closure: Vec<(RootId, E)>,
    pub seeds: BTreeMap<RootId, E>,
}

/// The slice roots of a bijection's generating height function, ordered
/// by diagram vertex.
pub fn slice_roots(gammahat: &GammaHat, bijection: &crate::bijection::RootVertexBijection) -> Vec<RootId> {
    (1..=gammahat.diagram().rank())
        .map(|i| bijection.root_at(gammahat, (i, bijection.height().level(i))))
        .collect()
}

/// Seeds: the realization's own generator at every slice root.
pub fn canonical_seeds<R: LieRealization>(
    r: &R,
    gammahat: &GammaHat,
    bijection: &crate::bijection::RootVertexBijection,
) -> BTreeMap<RootId, R::Elem> {
    slice_roots(gammahat, bijection)
        .into_iter()
        .map(|root| (root, r.root_generator(root)))
        .collect()
}

/// Canonical seeds with one sign per diagram vertex.
pub fn seeds_with_signs<R: LieRealization>(
    r: &R,
    gammahat: &GammaHat,
    bijection: &crate::bijection::RootVertexBijection,
    signs: &[i8],
) -> BTreeMap<RootId, R::Elem> {
    assert_eq!(signs.len(), gammahat.diagram().rank());
    slice_roots(gammahat, bijection)
        .into_iter()
        .enumerate()
        .map(|(k, root)| {
            let gen = r.root_generator(root);
            let signed = if signs[k] < 0 { r.scale(&rat(-1), &gen) } else { gen };
            (root, signed)
        })
        .collect()
}

/// Propagate slice seeds around the full period.
///
/// Vertices fire in source order: the smallest-index vertex that is a
/// source of the running orientation and has fired fewer than h times.
/// Each firing applies the cell rule at (i, level): the value at the
/// twisted vertex is the braid product over the level+1 neighbors
/// applied to T_alpha(E_alpha). The neighbor factors commute because the
/// neighbor roots are pairwise orthogonal (asserted).
pub fn adapted_root_vectors<R: LieRealization>(
    r: &R,
    roots: &RootSystem,
    gammahat: &GammaHat,
    bijection: &crate::bijection::RootVertexBijection,
    seeds: &BTreeMap<RootId, R::Elem>,
) -> Result<RootVectorAssignment<R::Elem>> {
    let d = roots.diagram();
    let rank = d.rank();
    let h = d.coxeter_number();
    let two_h = 2 * h;

    let expected: BTreeMap<RootId, ()> =
        slice_roots(gammahat, bijection).into_iter().map(|r| (r, ())).collect();
    assert_eq!(
        seeds.keys().copied().collect::<Vec<_>>(),
        expected.keys().copied().collect::<Vec<_>>(),
        "seeds must cover exactly the slice roots"
    );
    for (&root, elem) in seeds {
        let gen = r.root_generator(root);
        assert!(
            r.proportion(&gen, elem).map_or(false, |c| !c.is_zero()),
            "seed must be a nonzero multiple of the root-space generator"
        );
    }

    let mut levels: Vec<usize> = (1..=rank).map(|i| bijection.height().level(i)).collect();
    let mut fired = vec![0usize; rank + 1];
    let mut vectors: BTreeMap<RootId, R::Elem> = seeds.clone();
    let mut closure = Vec::new();

    let is_source = |levels: &[usize], i: usize| {
        d.neighbors(i)
            .iter()
            .all(|&j| levels[j - 1] == (levels[i - 1] + 1) % two_h)
    };

    for step in 0..rank * h {
        let i = (1..=rank)
            .find(|&i| fired[i] < h && is_source(&levels, i))
            .ok_or(Error::SweepStuck(step))?;
        let site = (i, levels[i - 1]);
        let alpha = bijection.root_at(gammahat, site);
        let e_alpha = vectors
            .get(&alpha)
            .cloned()
            .ok_or_else(|| Error::MissingPredecessor(format!("{:?}", roots.coords(alpha))))?;

        let mut y = apply_braid(r, roots, &e_alpha, alpha, &e_alpha)?;
        let gammas: Vec<RootId> = d
            .neighbors(i)
            .iter()
            .map(|&j| bijection.root_at(gammahat, (j, (levels[i - 1] + 1) % two_h)))
            .collect();
        for (a, &ga) in gammas.iter().enumerate() {
            for &gb in gammas.iter().skip(a + 1) {
                assert_eq!(roots.pairing(ga, gb), 0, "neighbor roots are orthogonal");
            }
        }
        for &gamma in &gammas {
            let e_gamma = vectors
                .get(&gamma)
                .cloned()
                .ok_or_else(|| Error::MissingPredecessor(format!("{:?}", roots.coords(gamma))))?;
            y = apply_braid(r, roots, &e_gamma, gamma, &y)?;
        }

        let target = bijection.root_at(gammahat, (i, (levels[i - 1] + 2) % two_h));
        if vectors.contains_key(&target) {
            closure.push((target, y));
        } else {
            vectors.insert(target, y);
        }
        levels[i - 1] = (levels[i - 1] + 2) % two_h;
        fired[i] += 1;
    }

    assert_eq!(vectors.len(), roots.len(), "every root receives a vector");
    Ok(RootVectorAssignment { vectors, closure, seeds: seeds.clone() })
}

/// Root vectors for the positive system from the adapted word of a
/// height function: the k-th vector is the composite of the first k-1
/// simple braid operators applied to the k-th simple generator.
pub fn std_root_vectors(
    table: &StructureTable,
    heightfn: &HeightFunction,
) -> Result<BTreeMap<RootId, AlgebraElement>> {
    let roots = table.rootsys();
    let swept = sweep(roots, heightfn)?;
    let mut acting = AlgebraAutomorphism::identity(table.dim());
    let mut out = BTreeMap::new();
    for (k, &i) in swept.word.iter().enumerate() {
        let e_i = AlgebraElement::basis(table.root_label(roots.simple(i)));
        out.insert(swept.gammas[k], acting.apply(&e_i));
        if k + 1 < swept.word.len() {
            acting = acting.compose(&braid_simple(table, i)?);
        }
    }
    Ok(out)
}

/// Verification report for a constructed root-vector family.
#[derive(Debug, Clone, Default)]
pub struct ConstructionReport {
    pub closure_failures: Vec<RootId>,
    pub coxeter_transport_failures: Vec<RootId>,
    pub bracket_failures: Vec<(RootId, RootId)>,
    pub adapted_failures: usize,
    pub heights_checked: usize,
}

impl ConstructionReport {
    pub fn all_pass(&self) -> bool {
        self.closure_failures.is_empty()
            && self.coxeter_transport_failures.is_empty()
            && self.bracket_failures.is_empty()
            && self.adapted_failures == 0
    }
}

/// Check a constructed family against everything it is supposed to do:
/// wrap-around closure, transport by the Coxeter braid product, the
/// sign pattern of the bracket, and adaptedness to every height
/// function when `check_adapted` is set.
#[allow(clippy::too_many_arguments)]
pub fn verify_construction<R: LieRealization>(
    r: &R,
    table: &StructureTable,
    gammahat: &GammaHat,
    cox: &CoxeterElement,
    bijection: &crate::bijection::RootVertexBijection,
    assignment: &RootVectorAssignment<R::Elem>,
    check_adapted: bool,
) -> Result<ConstructionReport> {
    let roots = table.rootsys();
    let mut report = ConstructionReport::default();

    for (root, value) in &assignment.closure {
        if assignment.vectors[root] != *value {
            report.closure_failures.push(*root);
        }
    }

    // T_C as the braid product over the order word, applied elementwise
    // with the assignment's own simple-root vectors.
    let simple_vectors: Vec<(RootId, R::Elem)> = cox
        .order_word()
        .iter()
        .map(|&i| {
            let a = roots.simple(i);
            (a, assignment.vectors[&a].clone())
        })
        .collect();
    for root in 0..roots.len() {
        let mut y = assignment.vectors[&root].clone();
        for (a, e) in simple_vectors.iter().rev() {
            y = apply_braid(r, roots, e, *a, &y)?;
        }
        if y != assignment.vectors[&cox.apply_root(root)] {
            report.coxeter_transport_failures.push(root);
        }
    }

    for a in 0..roots.len() {
        for b in 0..roots.len() {
            let z = r.bracket(&assignment.vectors[&a], &assignment.vectors[&b]);
            if let Some(s) = roots.sum_id(a, b) {
                let want = r.scale(&rat(table.epsilon(a, b)), &assignment.vectors[&s]);
                if z != want {
                    report.bracket_failures.push((a, b));
                }
            } else if roots.negate(a) != b && !r.is_zero(&z) {
                report.bracket_failures.push((a, b));
            }
        }
    }

    if check_adapted {
        let base = bijection.height().clone();
        for height in HeightFunction::all(gammahat, &base) {
            report.heights_checked += 1;
            let b = crate::bijection::build_bijection(roots, gammahat, cox, &height)?;
            let transporter = b.transporter().clone();
            let swept = sweep(roots, &height)?;
            // Prefix images, computed elementwise with braid operators
            // built from the assignment's own vectors.
            for k in 0..swept.word.len() {
                let beta = transporter.apply_root(roots, roots.simple(swept.word[k]));
                let mut y = assignment.vectors[&beta].clone();
                // The prefix product applies the earliest prefix root first.
                for m in 0..k {
                    let gamma_m = transporter.apply_root(roots, swept.gammas[m]);
                    let e = assignment.vectors[&gamma_m].clone();
                    y = apply_braid(r, roots, &e, gamma_m, &y)?;
                }
                let target = transporter.apply_root(roots, swept.gammas[k]);
                if y != assignment.vectors[&target] {
                    report.adapted_failures += 1;
                }
            }
        }
    }

    Ok(report)
}

/// Survey of seed sign patterns: for every pattern over the slice, run
/// the construction and report whether the bracket signs match the
/// table's pattern. Exhaustive, so meant for small ranks.
pub fn seed_sign_survey(
    table: &StructureTable,
    gammahat: &GammaHat,
    cox: &CoxeterElement,
    bijection: &crate::bijection::RootVertexBijection,
) -> Result<Vec<(Vec<i8>, bool)>> {
    let r = TableRealization(table);
    let roots = table.rootsys();
    let rank = roots.rank();
    let mut out = Vec::new();
    for mask in 0..(1u32 << rank) {
        let signs: Vec<i8> =
            (0..rank).map(|k| if mask & (1 << k) == 0 { 1 } else { -1 }).collect();
        let seeds = seeds_with_signs(&r, gammahat, bijection, &signs);
        let assignment = adapted_root_vectors(&r, roots, gammahat, bijection, &seeds)?;
        let report =
            verify_construction(&r, table, gammahat, cox, bijection, &assignment, false)?;
        out.push((signs, report.all_pass()));
    }
    Ok(out)
}
