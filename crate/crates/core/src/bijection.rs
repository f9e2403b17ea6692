//! The bijection between roots and vertices of the periodic quiver that
//! a Coxeter element induces. It sends C to the twist, carries positive
//! systems to connected half-period regions, and identifies the
//! de-symmetrized form with the combinatorial pairing.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gammahat::{height_from_word, sweep, GammaHat, HeightFunction, QVertex};
use crate::rootsys::{CoxeterElement, RootId, RootSystem, WeylElement};

#[derive(Debug, Clone)]
pub struct RootVertexBijection {
    forward: Vec<usize>,
    backward: Vec<RootId>,
    height: HeightFunction,
    /// Sites swept from the generating height function, in sweep order.
    positive_sites: Vec<QVertex>,
    /// Transporter w with the generating simple system equal to w applied
    /// to the reference one. Identity for the height of the order word.
    transporter: WeylElement,
    coxeter_word: Vec<usize>,
}

/// Flip path from `from` to `to` through the height-function graph.
fn flip_path(
    gammahat: &GammaHat,
    from: &HeightFunction,
    to: &HeightFunction,
) -> Result<Vec<usize>> {
    let d = gammahat.diagram();
    if from == to {
        return Ok(Vec::new());
    }
    let mut prev: HashMap<HeightFunction, (HeightFunction, usize)> = HashMap::new();
    let mut queue = VecDeque::from([from.clone()]);
    prev.insert(from.clone(), (from.clone(), 0));
    while let Some(h) = queue.pop_front() {
        for i in 1..=d.rank() {
            if let Ok(next) = h.flip(d, i) {
                if !prev.contains_key(&next) {
                    prev.insert(next.clone(), (h.clone(), i));
                    if &next == to {
                        let mut path = Vec::new();
                        let mut cur = next;
                        while &cur != from {
                            let (p, letter) = prev[&cur].clone();
                            path.push(letter);
                            cur = p;
                        }
                        path.reverse();
                        return Ok(path);
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Err(Error::InconsistentExtension)
}

/// Build the bijection for a Coxeter element from a height function
/// reachable from the one its order word induces.
///
/// The sweep from the given height pairs each step's root image with the
/// site it fires at; images are transported by the flip-path element so
/// that the finished map does not depend on which height generated it.
/// The half-period table is then extended to all of the quiver through
/// the identification of C with the twist.
pub fn build_bijection(
    roots: &RootSystem,
    gammahat: &GammaHat,
    cox: &CoxeterElement,
    height: &HeightFunction,
) -> Result<RootVertexBijection> {
    let d = roots.diagram();
    let h = d.coxeter_number();

    let base = height_from_word(gammahat, cox.order_word());
    let path = flip_path(gammahat, &base, height)?;
    let mut transporter = WeylElement::identity(d.rank());
    for &i in &path {
        transporter = transporter.compose(&WeylElement::simple(d, i));
    }

    let swept = sweep(roots, height)?;
    let nverts = gammahat.vertices().len();
    let mut forward: Vec<Option<usize>> = vec![None; roots.len()];
    let mut backward: Vec<Option<RootId>> = vec![None; nverts];
    for (k, &site) in swept.sites.iter().enumerate() {
        let root = transporter.apply_root(roots, swept.gammas[k]);
        let mut r = root;
        let mut v = site;
        for _ in 0..h {
            let vi = gammahat.vertex_index(v);
            match (forward[r], backward[vi]) {
                (None, None) => {
                    forward[r] = Some(vi);
                    backward[vi] = Some(r);
                }
                (Some(fv), Some(br)) if fv == vi && br == r => {}
                _ => return Err(Error::InconsistentExtension),
            }
            r = cox.apply_root(r);
            v = gammahat.twist(v);
        }
    }
    let forward: Option<Vec<usize>> = forward.into_iter().collect();
    let backward: Option<Vec<RootId>> = backward.into_iter().collect();
    let (forward, backward) = match (forward, backward) {
        (Some(f), Some(b)) => (f, b),
        _ => return Err(Error::InconsistentExtension),
    };

    Ok(RootVertexBijection {
        forward,
        backward,
        height: height.clone(),
        positive_sites: swept.sites,
        transporter,
        coxeter_word: cox.order_word().to_vec(),
    })
}

impl RootVertexBijection {
    pub fn vertex_of(&self, gammahat: &GammaHat, root: RootId) -> QVertex {
        gammahat.vertices()[self.forward[root]]
    }

    pub fn root_at(&self, gammahat: &GammaHat, v: QVertex) -> RootId {
        self.backward[gammahat.vertex_index(v)]
    }

    pub fn height(&self) -> &HeightFunction {
        &self.height
    }

    pub fn transporter(&self) -> &WeylElement {
        &self.transporter
    }

    pub fn coxeter_word(&self) -> &[usize] {
        &self.coxeter_word
    }

    /// The swept half-period: images of the positive system attached to
    /// the generating height function.
    pub fn positive_region(&self) -> &[QVertex] {
        &self.positive_sites
    }

    /// Roots whose images make up the positive region.
    pub fn positive_roots(&self, gammahat: &GammaHat) -> Vec<RootId> {
        self.positive_sites.iter().map(|&v| self.root_at(gammahat, v)).collect()
    }

    /// The simple system of the generating height function: swept roots
    /// that are not sums of two swept roots.
    pub fn simple_system(&self, roots: &RootSystem, gammahat: &GammaHat) -> Vec<RootId> {
        let region: BTreeSet<RootId> = self.positive_roots(gammahat).into_iter().collect();
        let mut out: Vec<RootId> = region
            .iter()
            .copied()
            .filter(|&candidate| {
                !region.iter().any(|&a| {
                    region
                        .iter()
                        .any(|&b| a <= b && roots.sum_id(a, b).map_or(false, |s| s == candidate))
                })
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_json(&self, roots: &RootSystem, gammahat: &GammaHat) -> Value {
        let rows: Vec<Value> = gammahat
            .vertices()
            .iter()
            .enumerate()
            .map(|(vi, &(i, n))| {
                json!({
                    "vertex": [i, n],
                    "root": roots.coords(self.backward[vi]),
                })
            })
            .collect();
        Value::Array(rows)
    }
}

/// True when some ordering of the given roots multiplies to C with each
/// reflection used once. Searched over all orderings for rank <= 6; for
/// larger ranks the height-sorted ordering is verified directly.
pub fn compatible_with(
    roots: &RootSystem,
    cox: &CoxeterElement,
    simples: &[RootId],
    height: &HeightFunction,
) -> bool {
    let r = roots.rank();
    assert_eq!(simples.len(), r);
    let reflections: Vec<WeylElement> =
        simples.iter().map(|&s| reflection_in_root(roots, s)).collect();
    if r <= 6 {
        permutations(r).into_iter().any(|perm| {
            let mut acc = WeylElement::identity(r);
            for &k in &perm {
                acc = acc.compose(&reflections[k]);
            }
            acc.matrix() == cox.element().matrix()
        })
    } else {
        // Transported orderings follow the height: sort vertices by level
        // lift along the flip path, matching the order-word convention.
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&k| height.level(k + 1));
        let mut acc = WeylElement::identity(r);
        for &k in &order {
            acc = acc.compose(&reflections[k]);
        }
        acc.matrix() == cox.element().matrix()
    }
}

/// The reflection in an arbitrary root, as a lattice matrix.
fn reflection_in_root(roots: &RootSystem, root: RootId) -> WeylElement {
    let r = roots.rank();
    let alpha = roots.coords(root);
    let mut rows = vec![vec![0i64; r]; r];
    for j in 0..r {
        let mut basis = vec![0i64; r];
        basis[j] = 1;
        // s_alpha(x) = x - (x, alpha) alpha  (all roots have norm 2).
        let pair = roots.diagram().pairing(&basis, alpha);
        for (i, row) in rows.iter_mut().enumerate() {
            row[j] = i64::from(i == j) - pair * alpha[i];
        }
    }
    WeylElement::from_matrix(rows)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap(&mut items, n, &mut out);
    return out;

    fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(items, k - 1, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
}

/// Connectivity of a vertex subset in the underlying undirected graph of
/// the periodic quiver.
pub fn is_connected(gammahat: &GammaHat, subset: &[QVertex]) -> bool {
    if subset.is_empty() {
        return true;
    }
    let set: BTreeSet<QVertex> = subset.iter().copied().collect();
    let d = gammahat.diagram();
    let two_h = gammahat.two_h();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([*subset.first().unwrap()]);
    seen.insert(*subset.first().unwrap());
    while let Some((i, n)) = queue.pop_front() {
        for j in d.neighbors(i) {
            for m in [(n + 1) % two_h, (n + two_h - 1) % two_h] {
                let w = (j, m);
                if set.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    seen.len() == set.len()
}
