//! The Lie algebra as an exact structure-constant table over the basis
//! {H_i} u {E_a}: Cartan generators for each diagram vertex plus one
//! generator per root. Bracket signs on root pairs are (-1)^{<a,b>} for
//! the de-symmetrized form of the chosen Coxeter element, with
//! [E_a, E_{-a}] = -H_a closing the table. The Jacobi identity over all
//! basis triples is checked by `jacobi_report`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ratmat::{rat, Rat};
use crate::rootsys::{CoxeterElement, RootId, RootSystem};

/// Index into the basis: 0..rank are Cartan labels, the rest are roots.
pub type LabelId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    /// H for the simple root at a 1-based diagram vertex.
    Cartan(usize),
    Root(RootId),
}

/// Sparse integer combination of basis labels, sorted by label.
pub type SparseInt = Vec<(LabelId, i64)>;

#[derive(Debug, Clone)]
pub struct StructureTable {
    roots: RootSystem,
    cox: CoxeterElement,
    dim: usize,
    /// form[a][b] = <a, b> for root ids a, b.
    form: Vec<Vec<i64>>,
    /// brackets[x][y] for label ids x, y.
    brackets: Vec<Vec<SparseInt>>,
}

/// Finitely supported rational combination of basis labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement(pub BTreeMap<LabelId, Rat>);

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement(BTreeMap::new())
    }

    pub fn basis(label: LabelId) -> Self {
        let mut m = BTreeMap::new();
        m.insert(label, rat(1));
        AlgebraElement(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, label: LabelId, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.0.entry(label).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.0.remove(&label);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (&l, c) in &other.0 {
            out.add_term(l, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement(self.0.iter().map(|(&l, v)| (l, v * c)).collect())
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&rat(-1))
    }

    pub fn coeff(&self, label: LabelId) -> Rat {
        self.0.get(&label).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&LabelId, &Rat)> {
        self.0.iter()
    }
}

pub fn build_lie_algebra(roots: &RootSystem, cox: &CoxeterElement) -> StructureTable {
    let r = roots.rank();
    let nroots = roots.len();
    let dim = r + nroots;

    let mut form = vec![vec![0i64; nroots]; nroots];
    for a in 0..nroots {
        for b in 0..nroots {
            form[a][b] = cox.c_form_roots(roots, a, b);
        }
    }

    let mut brackets = vec![vec![SparseInt::new(); dim]; dim];
    let label_of_root = |id: RootId| r + id;
    for x in 0..dim {
        for y in 0..dim {
            brackets[x][y] = match (label_of(roots, x), label_of(roots, y)) {
                (BasisLabel::Cartan(_), BasisLabel::Cartan(_)) => Vec::new(),
                (BasisLabel::Cartan(i), BasisLabel::Root(b)) => {
                    let c = roots.pairing(roots.simple(i), b);
                    scalar_term(label_of_root(b), c)
                }
                (BasisLabel::Root(a), BasisLabel::Cartan(i)) => {
                    let c = roots.pairing(roots.simple(i), a);
                    scalar_term(label_of_root(a), -c)
                }
                (BasisLabel::Root(a), BasisLabel::Root(b)) => {
                    if roots.negate(a) == b {
                        // [E_a, E_{-a}] = -H_a, expanded over the Cartan basis.
                        let coords = roots.coords(a);
                        (0..r)
                            .filter(|&i| coords[i] != 0)
                            .map(|i| (i, -coords[i]))
                            .collect()
                    } else if let Some(s) = roots.sum_id(a, b) {
                        let sign = if form[a][b].rem_euclid(2) == 0 { 1 } else { -1 };
                        scalar_term(label_of_root(s), sign)
                    } else {
                        Vec::new()
                    }
                }
            };
        }
    }

    StructureTable { roots: roots.clone(), cox: cox.clone(), dim, form, brackets }
}

fn scalar_term(label: LabelId, c: i64) -> SparseInt {
    if c == 0 {
        Vec::new()
    } else {
        vec![(label, c)]
    }
}

fn label_of(roots: &RootSystem, id: LabelId) -> BasisLabel {
    let r = roots.rank();
    if id < r {
        BasisLabel::Cartan(id + 1)
    } else {
        BasisLabel::Root(id - r)
    }
}

impl StructureTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rootsys(&self) -> &RootSystem {
        &self.roots
    }

    pub fn coxeter(&self) -> &CoxeterElement {
        &self.cox
    }

    pub fn label(&self, id: LabelId) -> BasisLabel {
        label_of(&self.roots, id)
    }

    pub fn root_label(&self, root: RootId) -> LabelId {
        self.roots.rank() + root
    }

    pub fn cartan_label(&self, vertex: usize) -> LabelId {
        vertex - 1
    }

    /// <a, b> for roots of the table's Coxeter element.
    pub fn form(&self, a: RootId, b: RootId) -> i64 {
        self.form[a][b]
    }

    /// The sign (-1)^{<a,b>}.
    pub fn epsilon(&self, a: RootId, b: RootId) -> i64 {
        if self.form[a][b].rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn basis_bracket(&self, x: LabelId, y: LabelId) -> &SparseInt {
        &self.brackets[x][y]
    }

    /// H_a for an arbitrary root, extended linearly from the H_i.
    pub fn cartan_of_root(&self, a: RootId) -> AlgebraElement {
        let coords = self.roots.coords(a);
        let mut out = AlgebraElement::zero();
        for (i, &c) in coords.iter().enumerate() {
            out.add_term(i, rat(c));
        }
        out
    }

    /// Bilinear extension of the basis bracket.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        for element in [x, y] {
            if let Some((&l, _)) = element.0.iter().next_back() {
                if l >= self.dim {
                    return Err(Error::UnknownLabel(format!("#{l}")));
                }
            }
        }
        let mut out = AlgebraElement::zero();
        for (&lx, cx) in &x.0 {
            for (&ly, cy) in &y.0 {
                let c = cx * cy;
                for &(l, k) in &self.brackets[lx][ly] {
                    out.add_term(l, &c * rat(k));
                }
            }
        }
        Ok(out)
    }

    /// Label strings: "H3" for Cartan generators, "E[1,0,-1]" for roots.
    pub fn label_string(&self, id: LabelId) -> String {
        match self.label(id) {
            BasisLabel::Cartan(i) => format!("H{i}"),
            BasisLabel::Root(a) => {
                let mut s = String::from("E[");
                for (k, c) in self.roots.coords(a).iter().enumerate() {
                    if k > 0 {
                        s.push(',');
                    }
                    let _ = write!(s, "{c}");
                }
                s.push(']');
                s
            }
        }
    }

    pub fn parse_label(&self, s: &str) -> Result<LabelId> {
        let err = || Error::UnknownLabel(s.to_string());
        if let Some(rest) = s.strip_prefix('H') {
            let i: usize = rest.parse().map_err(|_| err())?;
            if i == 0 || i > self.roots.rank() {
                return Err(err());
            }
            return Ok(self.cartan_label(i));
        }
        if let Some(rest) = s.strip_prefix("E[") {
            let inner = rest.strip_suffix(']').ok_or_else(err)?;
            let coords: std::result::Result<Vec<i64>, _> =
                inner.split(',').map(|t| t.trim().parse::<i64>()).collect();
            let coords = coords.map_err(|_| err())?;
            let id = self.roots.id_of(&coords).ok_or_else(err)?;
            return Ok(self.root_label(id));
        }
        Err(err())
    }

    /// All basis triples, with any violating triple and its residual.
    pub fn jacobi_report(&self) -> Vec<JacobiViolation> {
        let mut out = Vec::new();
        for x in 0..self.dim {
            for y in 0..self.dim {
                for z in 0..self.dim {
                    if let Some(residual) = self.jacobi_residual(x, y, z) {
                        out.push(JacobiViolation { triple: (x, y, z), residual });
                    }
                }
            }
        }
        out
    }

    fn jacobi_residual(&self, x: LabelId, y: LabelId, z: LabelId) -> Option<SparseInt> {
        let mut acc: BTreeMap<LabelId, i64> = BTreeMap::new();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            // [a, [b, c]]
            for &(inner, k1) in &self.brackets[b][c] {
                for &(l, k2) in &self.brackets[a][inner] {
                    let e = acc.entry(l).or_insert(0);
                    *e += k1 * k2;
                    if *e == 0 {
                        acc.remove(&l);
                    }
                }
            }
        }
        if acc.is_empty() {
            None
        } else {
            Some(acc.into_iter().collect())
        }
    }

    pub fn to_json(&self) -> Value {
        let mut brackets = Vec::new();
        for x in 0..self.dim {
            for y in 0..self.dim {
                if self.brackets[x][y].is_empty() {
                    continue;
                }
                let value: BTreeMap<String, i64> = self.brackets[x][y]
                    .iter()
                    .map(|&(l, c)| (self.label_string(l), c))
                    .collect();
                brackets.push(json!({
                    "x": self.label_string(x),
                    "y": self.label_string(y),
                    "value": value,
                }));
            }
        }
        json!({ "dim": self.dim, "brackets": brackets })
    }
}

#[derive(Debug, Clone)]
pub struct JacobiViolation {
    pub triple: (LabelId, LabelId, LabelId),
    pub residual: SparseInt,
}
