//! Traceless-matrix model for type A: the rank-n algebra realized on
//! (n+1) x (n+1) rational matrices with the commutator bracket. Root
//! spaces are spanned by matrix units, so the whole braid construction
//! can be cross-checked against hand-checkable matrix arithmetic.

use num_traits::Zero;

use crate::braid::{LieRealization, RootVectorAssignment};
use crate::dynkin::Family;
use crate::liebuild::StructureTable;
use crate::ratmat::{rat, Rat};
use crate::rootsys::{RootId, RootSystem};

/// A square rational matrix of fixed size n+1.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub n: usize,
    pub entries: Vec<Rat>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat { n, entries: vec![Rat::zero(); n * n] }
    }

    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[row * n + col] = rat(1);
        m
    }

    pub fn get(&self, row: usize, col: usize) -> &Rat {
        &self.entries[row * self.n + col]
    }

    fn commutator(&self, other: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                let b = other.get(i, k);
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let mut acc = out.entries[i * n + j].clone();
                    if !a.is_zero() && !other.get(k, j).is_zero() {
                        acc += a * other.get(k, j);
                    }
                    if !b.is_zero() && !self.get(k, j).is_zero() {
                        acc -= b * self.get(k, j);
                    }
                    out.entries[i * n + j] = acc;
                }
            }
        }
        out
    }

    pub fn is_traceless(&self) -> bool {
        let mut acc = Rat::zero();
        for i in 0..self.n {
            acc += self.get(i, i);
        }
        acc.is_zero()
    }
}

/// The model: root ids resolved to matrix-unit positions once.
#[derive(Debug, Clone)]
pub struct SlModel {
    n1: usize,
    /// positions[root] = (row, col): the root is e_{row+1} - e_{col+1}.
    positions: Vec<(usize, usize)>,
}

impl SlModel {
    pub fn new(roots: &RootSystem) -> Self {
        assert_eq!(roots.diagram().family(), Family::A, "matrix model exists for type A only");
        let rank = roots.rank();
        let n1 = rank + 1;
        let positions = (0..roots.len())
            .map(|id| {
                let coords = roots.coords(id);
                let support: Vec<usize> =
                    (0..rank).filter(|&k| coords[k] != 0).collect();
                let a = *support.first().unwrap();
                let b = *support.last().unwrap();
                if coords[a] > 0 {
                    (a, b + 1)
                } else {
                    (b + 1, a)
                }
            })
            .collect();
        SlModel { n1, positions }
    }

    pub fn size(&self) -> usize {
        self.n1
    }

    pub fn unit_of_root(&self, root: RootId) -> Mat {
        let (row, col) = self.positions[root];
        Mat::unit(self.n1, row, col)
    }

    /// Decompose the bracket of two assignment vectors against the model
    /// basis: a multiple of a root unit, a multiple of the Cartan element
    /// of a root, or zero.
    pub fn classify(&self, roots: &RootSystem, z: &Mat) -> ModelValue {
        if z.entries.iter().all(Rat::is_zero) {
            return ModelValue::Zero;
        }
        for root in 0..roots.len() {
            if let Some(c) = self.proportion(&self.unit_of_root(root), z) {
                return ModelValue::Root(c, root);
            }
        }
        for root in 0..roots.len() {
            if let Some(c) = self.proportion(&self.cartan_of_root(root), z) {
                return ModelValue::Cartan(c, root);
            }
        }
        ModelValue::Other
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelValue {
    Zero,
    Root(Rat, RootId),
    Cartan(Rat, RootId),
    Other,
}

impl LieRealization for SlModel {
    type Elem = Mat;

    fn dim(&self) -> usize {
        self.n1 * self.n1
    }

    fn bracket(&self, x: &Mat, y: &Mat) -> Mat {
        x.commutator(y)
    }

    fn add(&self, x: &Mat, y: &Mat) -> Mat {
        let mut out = x.clone();
        for (o, e) in out.entries.iter_mut().zip(&y.entries) {
            *o += e;
        }
        out
    }

    fn scale(&self, c: &Rat, x: &Mat) -> Mat {
        let mut out = x.clone();
        for e in out.entries.iter_mut() {
            *e *= c;
        }
        out
    }

    fn is_zero(&self, x: &Mat) -> bool {
        x.entries.iter().all(Rat::is_zero)
    }

    fn root_generator(&self, root: RootId) -> Mat {
        self.unit_of_root(root)
    }

    fn cartan_of_root(&self, root: RootId) -> Mat {
        let (row, col) = self.positions[root];
        let mut m = Mat::zero(self.n1);
        m.entries[row * self.n1 + row] = rat(1);
        m.entries[col * self.n1 + col] = rat(-1);
        m
    }

    fn proportion(&self, x: &Mat, y: &Mat) -> Option<Rat> {
        crate::ratmat::proportion(&x.entries, &y.entries)
    }
}

/// Structure constants of a model assignment in its own basis, compared
/// entry by entry with the abstract table under the identity relabeling
/// of roots: epsilon signs on root sums, -H_a on opposite pairs, zero
/// elsewhere.
pub fn agrees_with_table(
    model: &SlModel,
    roots: &RootSystem,
    table: &StructureTable,
    assignment: &RootVectorAssignment<Mat>,
) -> bool {
    for a in 0..roots.len() {
        for b in 0..roots.len() {
            let z = assignment.vectors[&a].commutator(&assignment.vectors[&b]);
            let want = if let Some(s) = roots.sum_id(a, b) {
                model.scale(&rat(table.epsilon(a, b)), &assignment.vectors[&s])
            } else if roots.negate(a) == b {
                model.scale(&rat(-1), &model.cartan_of_root(a))
            } else {
                Mat::zero(model.size())
            };
            if z != want {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::build_bijection;
    use crate::braid::{
        adapted_root_vectors, apply_braid, canonical_seeds, verify_construction,
    };
    use crate::dynkin::DynkinDiagram;
    use crate::gammahat::{height_from_word, GammaHat};
    use crate::liebuild::build_lie_algebra;
    use crate::rootsys::CoxeterElement;

    fn sl(rank: usize) -> (RootSystem, SlModel) {
        let d = DynkinDiagram::new(Family::A, rank).unwrap();
        let roots = RootSystem::new(d);
        let model = SlModel::new(&roots);
        (roots, model)
    }

    #[test]
    fn roots_map_to_units() {
        let (roots, model) = sl(3);
        let a23 = roots.id_of(&[0, 1, 1]).unwrap();
        assert_eq!(model.unit_of_root(a23), Mat::unit(4, 1, 3));
        let neg = roots.negate(a23);
        assert_eq!(model.unit_of_root(neg), Mat::unit(4, 3, 1));
    }

    #[test]
    fn commutator_of_units() {
        let (roots, model) = sl(2);
        let e1 = model.unit_of_root(roots.id_of(&[1, 0]).unwrap());
        let e2 = model.unit_of_root(roots.id_of(&[0, 1]).unwrap());
        let theta = model.unit_of_root(roots.id_of(&[1, 1]).unwrap());
        assert_eq!(e1.commutator(&e2), theta);
        let f1 = model.unit_of_root(roots.id_of(&[-1, 0]).unwrap());
        let h1 = model.cartan_of_root(roots.id_of(&[1, 0]).unwrap());
        assert_eq!(e1.commutator(&f1), h1);
    }

    #[test]
    fn sl3_braid_fixtures() {
        // T_1(e_2) = E_13 and T_1(e_1) = -f_1; conjugation by
        // W = exp(e1) exp(-f1) exp(e1) in the 3x3 model.
        let (roots, model) = sl(2);
        let a1 = roots.id_of(&[1, 0]).unwrap();
        let e1 = model.unit_of_root(a1);
        let e2 = model.unit_of_root(roots.id_of(&[0, 1]).unwrap());
        let got = apply_braid(&model, &roots, &e1, a1, &e2).unwrap();
        assert_eq!(got, Mat::unit(3, 0, 2));
        let got = apply_braid(&model, &roots, &e1, a1, &e1).unwrap();
        let f1 = model.unit_of_root(roots.id_of(&[-1, 0]).unwrap());
        assert_eq!(got, model.scale(&rat(-1), &f1));
    }

    #[test]
    fn sl4_construction_verifies_and_matches_table() {
        for word in [vec![1, 2, 3], vec![1, 3, 2]] {
            let d = DynkinDiagram::new(Family::A, 3).unwrap();
            let roots = RootSystem::new(d.clone());
            let gammahat = GammaHat::new(d);
            let cox = CoxeterElement::from_word(&roots, &word).unwrap();
            let table = build_lie_algebra(&roots, &cox);
            let h = height_from_word(&gammahat, &word);
            let bijection = build_bijection(&roots, &gammahat, &cox, &h).unwrap();
            let model = SlModel::new(&roots);
            let seeds = canonical_seeds(&model, &gammahat, &bijection);
            let assignment =
                adapted_root_vectors(&model, &roots, &gammahat, &bijection, &seeds).unwrap();
            for m in assignment.vectors.values() {
                assert!(m.is_traceless());
            }
            let report = verify_construction(
                &model, &table, &gammahat, &cox, &bijection, &assignment, false,
            )
            .unwrap();
            assert!(report.all_pass(), "word {word:?}: {report:?}");
            assert!(agrees_with_table(&model, &roots, &table, &assignment), "word {word:?}");
        }
    }
}
