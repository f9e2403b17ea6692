//! Root systems, the Weyl group action, Coxeter elements, the longest
//! element, and the two bilinear forms: the symmetric pairing ( , ) and
//! its de-symmetrization <x,y> = ((1-C)^{-1} x, y).
//!
//! Roots are integer coordinate vectors in the fixed reference simple
//! basis. Everything runs in exact arithmetic; words compose with the
//! rightmost reflection acting first.

use std::collections::HashMap;

use num_traits::Zero;

use crate::dynkin::DynkinDiagram;
use crate::error::{Error, Result};
use crate::ratmat::{rat, Rat, RatMatrix};

pub type RootId = usize;

#[derive(Debug, Clone)]
pub struct RootSystem {
    diagram: DynkinDiagram,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, RootId>,
    positive: Vec<RootId>,
}

impl RootSystem {
    /// Closure of the simple roots under all simple reflections.
    pub fn new(diagram: DynkinDiagram) -> Self {
        let r = diagram.rank();
        let mut set: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        for i in 0..r {
            let mut v = vec![0i64; r];
            v[i] = 1;
            seen.insert(v.clone(), ());
            set.push(v);
        }
        let mut frontier = set.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for root in frontier {
                for i in 1..=r {
                    let refl = reflect_simple(&diagram, i, &root);
                    if !seen.contains_key(&refl) {
                        seen.insert(refl.clone(), ());
                        set.push(refl.clone());
                        next.push(refl);
                    }
                }
            }
            frontier = next;
        }

        // Deterministic order: positive roots by (height, coordinates),
        // then negative roots the same way.
        set.sort_by_key(|v| {
            let s: i64 = v.iter().sum();
            (s < 0, s.abs(), v.clone())
        });
        let index: HashMap<Vec<i64>, RootId> =
            set.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        let positive =
            set.iter().enumerate().filter(|(_, v)| is_positive(v)).map(|(k, _)| k).collect();
        RootSystem { diagram, roots: set, index, positive }
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn coords(&self, id: RootId) -> &[i64] {
        &self.roots[id]
    }

    pub fn id_of(&self, coords: &[i64]) -> Option<RootId> {
        self.index.get(coords).copied()
    }

    pub fn simple(&self, vertex: usize) -> RootId {
        let mut v = vec![0i64; self.rank()];
        v[vertex - 1] = 1;
        self.index[&v]
    }

    pub fn negate(&self, id: RootId) -> RootId {
        let v: Vec<i64> = self.roots[id].iter().map(|&c| -c).collect();
        self.index[&v]
    }

    pub fn is_positive_root(&self, id: RootId) -> bool {
        is_positive(&self.roots[id])
    }

    pub fn positive(&self) -> &[RootId] {
        &self.positive
    }

    /// Sum of two roots if it is again a root.
    pub fn sum_id(&self, a: RootId, b: RootId) -> Option<RootId> {
        let v: Vec<i64> =
            self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index.get(&v).copied()
    }

    /// Symmetric pairing (alpha, beta) of two roots.
    pub fn pairing(&self, a: RootId, b: RootId) -> i64 {
        self.diagram.pairing(&self.roots[a], &self.roots[b])
    }

    pub fn reflect(&self, vertex: usize, id: RootId) -> RootId {
        let v = reflect_simple(&self.diagram, vertex, &self.roots[id]);
        self.index[&v]
    }
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&c| c >= 0)
}

/// s_i applied to a vector in simple-root coordinates.
fn reflect_simple(diagram: &DynkinDiagram, vertex: usize, v: &[i64]) -> Vec<i64> {
    let i = vertex - 1;
    let mut out = v.to_vec();
    let mut acc = 0;
    for (j, &c) in v.iter().enumerate() {
        acc += diagram.cartan()[i][j] * c;
    }
    out[i] -= acc;
    out
}

/// An element of the Weyl group as an integer matrix on simple-root
/// coordinates, with the word that produced it when one is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    matrix: Vec<Vec<i64>>,
    word: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement { matrix, word: Some(Vec::new()) }
    }

    pub fn simple(diagram: &DynkinDiagram, vertex: usize) -> Self {
        let rank = diagram.rank();
        let mut m = Self::identity(rank).matrix;
        for j in 0..rank {
            m[vertex - 1][j] -= diagram.cartan()[vertex - 1][j];
        }
        WeylElement { matrix: m, word: Some(vec![vertex]) }
    }

    /// Product of the simple reflections in the word, rightmost first.
    pub fn from_word(diagram: &DynkinDiagram, word: &[usize]) -> Self {
        let mut el = Self::identity(diagram.rank());
        for &i in word.iter().rev() {
            el = Self::simple(diagram, i).compose(&el);
        }
        el.word = Some(word.to_vec());
        el
    }

    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Self {
        WeylElement { matrix, word: None }
    }

    pub fn matrix(&self) -> &Vec<Vec<i64>> {
        &self.matrix
    }

    pub fn word(&self) -> Option<&[usize]> {
        self.word.as_deref()
    }

    /// self âˆ˜ other: other acts first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.matrix.len();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.matrix[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += self.matrix[i][k] * other.matrix[k][j];
                }
            }
        }
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => {
                let mut w = a.clone();
                w.extend_from_slice(b);
                Some(w)
            }
            _ => None,
        };
        WeylElement { matrix: out, word }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.matrix.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[i][j] * v[j]).sum())
            .collect()
    }

    pub fn apply_root(&self, roots: &RootSystem, id: RootId) -> RootId {
        let v = self.apply(roots.coords(id));
        roots.id_of(&v).expect("Weyl elements permute the root set")
    }

    pub fn is_identity(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
    }

    /// The permutation induced on root ids.
    pub fn root_permutation(&self, roots: &RootSystem) -> Vec<RootId> {
        (0..roots.len()).map(|id| self.apply_root(roots, id)).collect()
    }
}

/// A Coxeter element given by a vertex ordering; every vertex appears
/// exactly once, so the reference simple system is compatible with it.
#[derive(Debug, Clone)]
pub struct CoxeterElement {
    order_word: Vec<usize>,
    element: WeylElement,
    order: usize,
    root_perm: Vec<RootId>,
    /// (1-C)^{-1} transposed against the Gram matrix, cached so that the
    /// de-symmetrized form is a single exact dot product per call.
    form_matrix: RatMatrix,
}

impl CoxeterElement {
    pub fn from_word(roots: &RootSystem, order_word: &[usize]) -> Result<Self> {
        let r = roots.rank();
        let mut seen = vec![false; r + 1];
        if order_word.len() != r {
            return Err(Error::NotAPermutation(order_word.to_vec()));
        }
        for &v in order_word {
            if v == 0 || v > r || seen[v] {
                return Err(Error::NotAPermutation(order_word.to_vec()));
            }
            seen[v] = true;
        }

        let element = WeylElement::from_word(roots.diagram(), order_word);
        let root_perm = element.root_permutation(roots);

        // Multiplicative order; must equal the Coxeter number.
        let mut order = 1usize;
        let mut power = element.clone();
        while !power.is_identity() {
            power = element.compose(&power);
            order += 1;
        }
        let h = roots.diagram().coxeter_number();
        assert_eq!(order, h, "Coxeter element must have order h");

        // C acts freely on roots with exactly r orbits of size h; this is
        // cheap enough to verify at construction.
        let mut seen_root = vec![false; roots.len()];
        let mut orbits = 0usize;
        for start in 0..roots.len() {
            if seen_root[start] {
                continue;
            }
            orbits += 1;
            let mut cur = start;
            let mut steps = 0usize;
            loop {
                seen_root[cur] = true;
                cur = root_perm[cur];
                steps += 1;
                if cur == start {
                    break;
                }
            }
            assert_eq!(steps, h, "every C-orbit on roots has size h");
        }
        assert_eq!(orbits, r, "C has exactly r orbits on roots");

        let one_minus_c = one_minus(&element);
        let inv = one_minus_c.inverse().map_err(|_| Error::SingularMatrix)?;
        let gram = RatMatrix::from_int_rows(roots.diagram().cartan());
        let form_matrix = inv.transpose().mul(&gram);

        Ok(CoxeterElement {
            order_word: order_word.to_vec(),
            element,
            order,
            root_perm,
            form_matrix,
        })
    }

    pub fn order_word(&self) -> &[usize] {
        &self.order_word
    }

    pub fn element(&self) -> &WeylElement {
        &self.element
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn apply_root(&self, id: RootId) -> RootId {
        self.root_perm[id]
    }

    pub fn apply_root_power(&self, id: RootId, k: usize) -> RootId {
        let mut cur = id;
        for _ in 0..k {
            cur = self.root_perm[cur];
        }
        cur
    }

    /// The de-symmetrized bilinear form <x,y> = ((1-C)^{-1} x, y).
    pub fn c_form(&self, x: &[i64], y: &[i64]) -> Rat {
        let n = x.len();
        let yr: Vec<Rat> = y.iter().map(|&v| rat(v)).collect();
        let by = self.form_matrix.mul_vec(&yr);
        let mut acc = Rat::zero();
        for i in 0..n {
            if x[i] != 0 {
                acc += rat(x[i]) * &by[i];
            }
        }
        acc
    }

    /// The form on two roots; always an integer on the root lattice.
    pub fn c_form_roots(&self, roots: &RootSystem, a: RootId, b: RootId) -> i64 {
        let v = self.c_form(roots.coords(a), roots.coords(b));
        assert!(
            crate::ratmat::is_integer(&v),
            "de-symmetrized form must be integral on the lattice"
        );
        v.to_integer().try_into().expect("form value fits in i64")
    }
}

fn one_minus(el: &WeylElement) -> RatMatrix {
    let n = el.matrix().len();
    let mut m = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= rat(el.matrix()[i][j]);
        }
    }
    m
}

/// The longest element together with the vertex involution it induces:
/// w0(alpha_i) = -alpha_{invol(i)}.
pub fn longest_element(roots: &RootSystem) -> (WeylElement, Vec<usize>) {
    let r = roots.rank();
    let mut w = WeylElement::identity(r);
    let mut word: Vec<usize> = Vec::new();
    // Append a letter on the right while some simple root stays positive;
    // each step lengthens the word by one, so this stops exactly at w0.
    loop {
        let mut progressed = false;
        for i in 1..=r {
            let img = w.apply_root(roots, roots.simple(i));
            if roots.is_positive_root(img) {
                w = w.compose(&WeylElement::simple(roots.diagram(), i));
                word.push(i);
                progressed = true;
                break;
            }
        }
        if !progressed {
            break;
        }
    }
    let w0 = WeylElement { matrix: w.matrix().clone(), word: Some(word) };

    let mut invol = vec![0usize; r + 1];
    for i in 1..=r {
        let img = w0.apply_root(roots, roots.simple(i));
        let neg = roots.negate(img);
        let coords = roots.coords(neg);
        let j = coords.iter().position(|&c| c == 1).expect("w0 sends simples to minus simples") + 1;
        invol[i] = j;
    }
    (w0, invol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::Family;

    fn system(f: Family, r: usize) -> RootSystem {
        RootSystem::new(DynkinDiagram::new(f, r).unwrap())
    }

    #[test]
    fn a2_roots_by_hand() {
        // Reflection closure by hand: {±a1, ±a2, ±(a1+a2)}.
        let rs = system(Family::A, 2);
        let mut got: Vec<Vec<i64>> = (0..rs.len()).map(|i| rs.coords(i).to_vec()).collect();
        got.sort();
        let mut want =
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0], vec![0, -1], vec![-1, -1]];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn root_counts_match_rh() {
        for (f, r) in [(Family::A, 1), (Family::A, 4), (Family::D, 4), (Family::D, 5), (Family::E, 6)] {
            let rs = system(f, r);
            let h = rs.diagram().coxeter_number();
            assert_eq!(rs.len(), r * h, "{f}{r}");
            assert_eq!(rs.positive().len(), r * h / 2);
        }
    }

    #[test]
    fn roots_have_norm_two_and_signed_coordinates() {
        let rs = system(Family::D, 4);
        for id in 0..rs.len() {
            assert_eq!(rs.pairing(id, id), 2);
            let v = rs.coords(id);
            assert!(v.iter().all(|&c| c >= 0) || v.iter().all(|&c| c <= 0));
        }
    }

    #[test]
    fn coxeter_a2_images_match_hand_composition() {
        let rs = system(Family::A, 2);
        let c12 = CoxeterElement::from_word(&rs, &[1, 2]).unwrap();
        let a1 = rs.simple(1);
        let a2 = rs.simple(2);
        assert_eq!(rs.coords(c12.apply_root(a1)), &[0, 1]);
        assert_eq!(rs.coords(c12.apply_root(a2)), &[-1, -1]);

        let c21 = CoxeterElement::from_word(&rs, &[2, 1]).unwrap();
        assert_eq!(rs.coords(c21.apply_root(a1)), &[-1, -1]);
        assert_eq!(rs.coords(c21.apply_root(a2)), &[1, 0]);
    }

    #[test]
    fn repeated_vertex_is_rejected() {
        let rs = system(Family::A, 2);
        assert!(matches!(
            CoxeterElement::from_word(&rs, &[1, 1]),
            Err(Error::NotAPermutation(_))
        ));
        assert!(CoxeterElement::from_word(&rs, &[1]).is_err());
    }

    #[test]
    fn c_form_a2_frozen_values() {
        let rs = system(Family::A, 2);
        let c = CoxeterElement::from_word(&rs, &[1, 2]).unwrap();
        let a1 = rs.simple(1);
        let a2 = rs.simple(2);
        assert_eq!(c.c_form_roots(&rs, a1, a1), 1);
        assert_eq!(c.c_form_roots(&rs, a1, a2), 0);
        assert_eq!(c.c_form_roots(&rs, a2, a1), -1);
        assert_eq!(c.c_form_roots(&rs, a2, a2), 1);
    }

    #[test]
    fn c_form_duality_and_normalization() {
        for (f, r) in [(Family::A, 1), (Family::A, 3), (Family::D, 4)] {
            let rs = system(f, r);
            let word: Vec<usize> = (1..=r).collect();
            let c = CoxeterElement::from_word(&rs, &word).unwrap();
            for a in 0..rs.len() {
                assert_eq!(c.c_form_roots(&rs, a, a), 1, "diagonal normalization");
                for b in 0..rs.len() {
                    let lhs = c.c_form_roots(&rs, a, b) + c.c_form_roots(&rs, b, a);
                    assert_eq!(lhs, rs.pairing(a, b), "duality");
                }
            }
        }
    }

    #[test]
    fn weyl_elements_preserve_pairing() {
        let rs = system(Family::D, 4);
        let w = WeylElement::from_word(rs.diagram(), &[1, 3, 2, 4, 2]);
        for a in [rs.simple(1), rs.simple(2), rs.simple(4)] {
            for b in [rs.simple(2), rs.simple(3)] {
                let wa = w.apply_root(&rs, a);
                let wb = w.apply_root(&rs, b);
                assert_eq!(rs.pairing(wa, wb), rs.pairing(a, b));
            }
        }
    }

    #[test]
    fn longest_element_small_cases() {
        // Rank <= 2 oracle: enumerate the full Weyl group and find the
        // unique element sending all positives to negatives.
        let rs = system(Family::A, 2);
        let (w0, invol) = longest_element(&rs);
        let brute = brute_force_longest(&rs);
        assert_eq!(w0.matrix(), brute.matrix());
        assert_eq!(w0.word().unwrap().len(), rs.positive().len());
        assert_eq!(&invol[1..], &[2, 1]);

        let rs1 = system(Family::A, 1);
        let (w0, invol) = longest_element(&rs1);
        assert_eq!(w0.matrix(), WeylElement::simple(rs1.diagram(), 1).matrix());
        assert_eq!(&invol[1..], &[1]);
    }

    #[test]
    fn d4_longest_element_is_minus_identity() {
        let rs = system(Family::D, 4);
        let (w0, invol) = longest_element(&rs);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(w0.matrix()[i][j], -i64::from(i == j));
            }
        }
        assert_eq!(&invol[1..], &[1, 2, 3, 4]);
    }

    #[test]
    fn coxeter_element_acts_freely() {
        let rs = system(Family::A, 4);
        let c = CoxeterElement::from_word(&rs, &[2, 4, 1, 3]).unwrap();
        let h = rs.diagram().coxeter_number();
        for id in 0..rs.len() {
            let mut cur = id;
            for k in 1..h {
                cur = c.apply_root(cur);
                assert_ne!(cur, id, "C^{k} must not fix any root");
            }
        }
    }

    fn brute_force_longest(rs: &RootSystem) -> WeylElement {
        let r = rs.rank();
        let mut group: Vec<WeylElement> = vec![WeylElement::identity(r)];
        let mut frontier = group.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in frontier {
                for i in 1..=r {
                    let cand = WeylElement::simple(rs.diagram(), i).compose(&w);
                    if !group.iter().any(|g| g.matrix() == cand.matrix()) {
                        group.push(cand.clone());
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        group
            .into_iter()
            .find(|w| {
                rs.positive()
                    .iter()
                    .all(|&p| !rs.is_positive_root(w.apply_root(rs, p)))
            })
            .expect("w0 exists")
    }
}
