//! The periodic quiver sitting inside (diagram) x Z_{2h}: vertices are
//! pairs (i, n) with p(i) + n even, arrows go (i, n) -> (j, n+1) for
//! adjacent i, j, and the twist shifts levels by two.
//!
//! Height functions pick out slices and orientations; flipping a source
//! or sink reorients, and a source-to-sink sweep across half a period
//! yields an adapted reduced word for the longest element.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde_json::{json, Value};

use crate::dynkin::DynkinDiagram;
use crate::error::{Error, Result};
use crate::rootsys::{RootId, RootSystem, WeylElement};

/// A vertex of the periodic quiver: (1-based diagram vertex, level in [0, 2h)).
pub type QVertex = (usize, usize);

#[derive(Debug, Clone)]
pub struct GammaHat {
    diagram: DynkinDiagram,
    two_h: usize,
    vertices: Vec<QVertex>,
    vindex: HashMap<QVertex, usize>,
}

impl GammaHat {
    pub fn new(diagram: DynkinDiagram) -> Self {
        let two_h = 2 * diagram.coxeter_number();
        let mut vertices = Vec::new();
        for i in 1..=diagram.rank() {
            for n in 0..two_h {
                if (usize::from(diagram.parity(i)) + n) % 2 == 0 {
                    vertices.push((i, n));
                }
            }
        }
        vertices.sort_unstable();
        let vindex = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        GammaHat { diagram, two_h, vertices, vindex }
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn two_h(&self) -> usize {
        self.two_h
    }

    pub fn vertices(&self) -> &[QVertex] {
        &self.vertices
    }

    pub fn contains(&self, v: QVertex) -> bool {
        self.vindex.contains_key(&v)
    }

    pub fn vertex_index(&self, v: QVertex) -> usize {
        self.vindex[&v]
    }

    pub fn twist(&self, (i, n): QVertex) -> QVertex {
        (i, (n + 2) % self.two_h)
    }

    /// All arrows (i,n) -> (j,n+1), in vertex order.
    pub fn arrows(&self) -> Vec<(QVertex, QVertex)> {
        let mut out = Vec::new();
        for &(i, n) in &self.vertices {
            for j in self.diagram.neighbors(i) {
                let head = (j, (n + 1) % self.two_h);
                debug_assert!(self.contains(head));
                out.push(((i, n), head));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.diagram.type_name(),
            "levels": self.two_h,
            "vertices": self.vertices.iter().map(|&(i, n)| vec![i, n]).collect::<Vec<_>>(),
            "arrows": self
                .arrows()
                .iter()
                .map(|&((i, n), (j, m))| vec![vec![i, n], vec![j, m]])
                .collect::<Vec<_>>(),
            "twist": self
                .vertices
                .iter()
                .map(|&v| {
                    let (i, n) = v;
                    let (j, m) = self.twist(v);
                    vec![vec![i, n], vec![j, m]]
                })
                .collect::<Vec<_>>(),
        })
    }

    /// DOT rendering with one rank row per level; `label` overrides the
    /// default "(i,n)" node text.
    pub fn to_dot(&self, label: Option<&dyn Fn(QVertex) -> String>) -> String {
        let mut s = String::from("digraph gammahat {\n  rankdir=BT;\n");
        for n in 0..self.two_h {
            let level: Vec<&QVertex> = self.vertices.iter().filter(|&&(_, m)| m == n).collect();
            if level.is_empty() {
                continue;
            }
            s.push_str("  { rank=same;");
            for &&(i, m) in &level {
                s.push_str(&format!(" \"{i},{m}\";"));
            }
            s.push_str(" }\n");
        }
        for &(i, n) in &self.vertices {
            let text = match label {
                Some(f) => f((i, n)),
                None => format!("({i},{n})"),
            };
            s.push_str(&format!("  \"{i},{n}\" [label=\"{text}\"];\n"));
        }
        for ((i, n), (j, m)) in self.arrows() {
            s.push_str(&format!("  \"{i},{n}\" -> \"{j},{m}\";\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Levels per diagram vertex, stored as canonical residues in [0, 2h).
/// Adjacent vertices sit on adjacent levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeightFunction {
    levels: Vec<usize>,
    two_h: usize,
}

impl HeightFunction {
    pub fn level(&self, vertex: usize) -> usize {
        self.levels[vertex - 1]
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn two_h(&self) -> usize {
        self.two_h
    }

    /// True if the arrow between adjacent i, j points i -> j.
    fn arrow_forward(&self, i: usize, j: usize) -> bool {
        (self.level(i) + 1) % self.two_h == self.level(j)
    }

    pub fn is_source(&self, diagram: &DynkinDiagram, i: usize) -> bool {
        diagram.neighbors(i).iter().all(|&j| self.arrow_forward(i, j))
    }

    pub fn is_sink(&self, diagram: &DynkinDiagram, i: usize) -> bool {
        diagram.neighbors(i).iter().all(|&j| self.arrow_forward(j, i))
    }

    pub fn sources(&self, diagram: &DynkinDiagram) -> Vec<usize> {
        (1..=diagram.rank()).filter(|&i| self.is_source(diagram, i)).collect()
    }

    /// Move the level at `i` by +2 (source) or -2 (sink).
    pub fn flip(&self, diagram: &DynkinDiagram, i: usize) -> Result<HeightFunction> {
        let mut levels = self.levels.clone();
        if self.is_source(diagram, i) {
            levels[i - 1] = (levels[i - 1] + 2) % self.two_h;
        } else if self.is_sink(diagram, i) {
            levels[i - 1] = (levels[i - 1] + self.two_h - 2) % self.two_h;
        } else {
            return Err(Error::NotExtremal(i));
        }
        Ok(HeightFunction { levels, two_h: self.two_h })
    }

    /// Every height function on the diagram, found by flip closure.
    pub fn all(gammahat: &GammaHat, start: &HeightFunction) -> Vec<HeightFunction> {
        let d = gammahat.diagram();
        let mut seen: BTreeSet<HeightFunction> = BTreeSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(h) = queue.pop_front() {
            for i in 1..=d.rank() {
                if let Ok(next) = h.flip(d, i) {
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// The height function induced by a vertex ordering: for adjacent i, j
/// with i earlier in the word, level(j) = level(i) + 1. The global shift
/// is fixed by the parity constraint and by lifting the minimum to 0 or 1.
pub fn height_from_word(gammahat: &GammaHat, order_word: &[usize]) -> HeightFunction {
    let d = gammahat.diagram();
    let r = d.rank();
    let pos: HashMap<usize, usize> =
        order_word.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    assert_eq!(pos.len(), r, "order word must cover every vertex");

    // Solve the edge constraints over the integers by search from vertex 1.
    let mut lift = vec![i64::MAX; r + 1];
    lift[1] = 0;
    let mut queue = VecDeque::from([1usize]);
    while let Some(v) = queue.pop_front() {
        for j in d.neighbors(v) {
            if lift[j] != i64::MAX {
                continue;
            }
            lift[j] = if pos[&v] < pos[&j] { lift[v] + 1 } else { lift[v] - 1 };
            queue.push_back(j);
        }
    }

    // One parity shift fixes all vertices at once because both parities
    // and lifts alternate along edges.
    let s = (usize::from(d.parity(1)) as i64 + lift[1]).rem_euclid(2);
    for l in lift[1..=r].iter_mut() {
        *l += s;
    }
    let min = *lift[1..=r].iter().min().unwrap();
    let shift = 2 * min.div_euclid(2);
    let two_h = gammahat.two_h() as i64;
    let levels = (1..=r)
        .map(|v| (lift[v] - shift).rem_euclid(two_h) as usize)
        .collect();
    HeightFunction { levels, two_h: gammahat.two_h() }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub word: Vec<usize>,
    pub gammas: Vec<RootId>,
    pub sites: Vec<QVertex>,
    pub final_height: HeightFunction,
}

/// Repeatedly reflect at sources: at each step take the smallest-index
/// source whose accumulated image of its simple root is still positive.
/// Half a period of steps yields an adapted reduced word for w0 whose
/// prefix images enumerate the positive roots.
pub fn sweep(roots: &RootSystem, height: &HeightFunction) -> Result<Sweep> {
    let d = roots.diagram();
    let r = d.rank();
    let h = d.coxeter_number();
    let steps = r * h / 2;

    let mut cur = height.clone();
    let mut acting = WeylElement::identity(r);
    let mut word = Vec::with_capacity(steps);
    let mut gammas = Vec::with_capacity(steps);
    let mut sites = Vec::with_capacity(steps);
    for step in 0..steps {
        let mut chosen = None;
        for i in cur.sources(d) {
            let gamma = acting.apply_root(roots, roots.simple(i));
            if roots.is_positive_root(gamma) {
                chosen = Some((i, gamma));
                break;
            }
        }
        let (i, gamma) = chosen.ok_or(Error::SweepStuck(step))?;
        word.push(i);
        gammas.push(gamma);
        sites.push((i, cur.level(i)));
        acting = acting.compose(&WeylElement::simple(d, i));
        cur = cur.flip(d, i)?;
    }
    Ok(Sweep { word, gammas, sites, final_height: cur })
}

/// Every source sequence of full sweep length, by branching over all
/// admissible sources at each step. Exponential in the worst case, so
/// guarded by r*h <= 40.
pub fn all_adapted_words(roots: &RootSystem, height: &HeightFunction) -> Result<Vec<Vec<usize>>> {
    let d = roots.diagram();
    let r = d.rank();
    let h = d.coxeter_number();
    if r * h > 40 {
        return Err(Error::TooLarge(format!(
            "adapted-word enumeration guard: r*h = {} exceeds 40",
            r * h
        )));
    }
    let steps = r * h / 2;
    let mut out = Vec::new();
    let mut word = Vec::new();
    recurse(
        roots,
        d,
        height.clone(),
        WeylElement::identity(r),
        steps,
        &mut word,
        &mut out,
    )?;
    out.sort();
    return Ok(out);

    fn recurse(
        roots: &RootSystem,
        d: &DynkinDiagram,
        cur: HeightFunction,
        acting: WeylElement,
        remaining: usize,
        word: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if remaining == 0 {
            out.push(word.clone());
            return Ok(());
        }
        for i in cur.sources(d) {
            let gamma = acting.apply_root(roots, roots.simple(i));
            if !roots.is_positive_root(gamma) {
                continue;
            }
            word.push(i);
            let next = cur.flip(d, i)?;
            let next_acting = acting.compose(&WeylElement::simple(d, i));
            recurse(roots, d, next, next_acting, remaining - 1, word, out)?;
            word.pop();
        }
        Ok(())
    }
}

/// Lexicographically least representative of the commutation class: pull
/// the smallest letter that commutes past everything before it to the
/// front, then recurse. Two words are commutation-equivalent exactly
/// when their normal forms coincide.
pub fn commutation_normal_form(diagram: &DynkinDiagram, word: &[usize]) -> Vec<usize> {
    let mut rest: Vec<usize> = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for (k, &letter) in rest.iter().enumerate() {
            let movable = rest[..k]
                .iter()
                .all(|&earlier| earlier != letter && !diagram.adjacent(earlier, letter));
            if movable && best.map_or(true, |b| letter < rest[b]) {
                best = Some(k);
            }
        }
        let k = best.expect("first letter is always movable");
        out.push(rest.remove(k));
    }
    out
}

/// The combinatorial pairing on quiver vertices, tabulated by forward
/// propagation of the three-term recurrence
///   f(i, n+2) = sum_{j adjacent i} f(j, n+1) - f(i, n)
/// from the two base rows. Propagating a full period must reproduce the
/// base rows; anything else is a hard error.
#[derive(Debug, Clone)]
pub struct FormHat {
    two_h: usize,
    rank: usize,
    /// table[i-1][d][j-1] = <(i, n), (j, n + d)> for any valid level n.
    table: Vec<Vec<Vec<i64>>>,
}

impl FormHat {
    pub fn new(gammahat: &GammaHat) -> Result<Self> {
        let d = gammahat.diagram();
        let r = d.rank();
        let two_h = gammahat.two_h();
        let mut table = vec![vec![vec![0i64; r]; two_h]; r];
        for i in 1..=r {
            // Offsets are taken from a level of the parity of i; entries at
            // mismatched parities stay zero and are never read.
            let rows = &mut table[i - 1];
            for j in 1..=r {
                rows[0][j - 1] = i64::from(i == j);
                rows[1][j - 1] = i64::from(d.adjacent(i, j));
            }
            for offset in 0..two_h {
                let next = (offset + 2) % two_h;
                let mut row = vec![0i64; r];
                for j in 1..=r {
                    let mut acc = -rows[offset][j - 1];
                    for k in d.neighbors(j) {
                        acc += rows[(offset + 1) % two_h][k - 1];
                    }
                    row[j - 1] = acc;
                }
                if next == 0 || next == 1 {
                    // Wrapped around: the recurrence must close up.
                    if rows[next] != row {
                        return Err(Error::PeriodicityViolation);
                    }
                } else {
                    rows[next] = row;
                }
            }
        }
        Ok(FormHat { two_h, rank: r, table })
    }

    pub fn value(&self, q1: QVertex, q2: QVertex) -> i64 {
        let (i, n) = q1;
        let (j, m) = q2;
        assert!(i >= 1 && i <= self.rank && j >= 1 && j <= self.rank);
        let d = (m + self.two_h - n) % self.two_h;
        self.table[i - 1][d][j - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{DynkinDiagram, Family};
    use crate::rootsys::RootSystem;

    fn setup(f: Family, r: usize) -> (RootSystem, GammaHat) {
        let d = DynkinDiagram::new(f, r).unwrap();
        (RootSystem::new(d.clone()), GammaHat::new(d))
    }

    #[test]
    fn a2_vertices_enumerated() {
        let (_, gh) = setup(Family::A, 2);
        assert_eq!(
            gh.vertices(),
            &[(1, 0), (1, 2), (1, 4), (2, 1), (2, 3), (2, 5)]
        );
    }

    #[test]
    fn d5_vertex_count_is_rh() {
        let (_, gh) = setup(Family::D, 5);
        assert_eq!(gh.two_h(), 16);
        assert_eq!(gh.vertices().len(), 40);
    }

    #[test]
    fn a1_has_two_vertices_and_no_arrows() {
        let (_, gh) = setup(Family::A, 1);
        assert_eq!(gh.vertices(), &[(1, 0), (1, 2)]);
        assert!(gh.arrows().is_empty());
    }

    #[test]
    fn twist_is_a_bijection_preserving_arrows() {
        let (_, gh) = setup(Family::D, 4);
        let arrows: std::collections::BTreeSet<_> = gh.arrows().into_iter().collect();
        for &v in gh.vertices() {
            assert!(gh.contains(gh.twist(v)));
        }
        for &(a, b) in &arrows {
            assert!(arrows.contains(&(gh.twist(a), gh.twist(b))));
        }
        // tau^h is the identity.
        let h = gh.diagram().coxeter_number();
        for &v in gh.vertices() {
            let mut cur = v;
            for _ in 0..h {
                cur = gh.twist(cur);
            }
            assert_eq!(cur, v);
        }
    }

    #[test]
    fn height_from_word_a2() {
        let (_, gh) = setup(Family::A, 2);
        let h12 = height_from_word(&gh, &[1, 2]);
        assert_eq!(h12.levels(), &[0, 1]);
        let h21 = height_from_word(&gh, &[2, 1]);
        assert_eq!(h21.levels(), &[2, 1]);
        let (_, gh1) = setup(Family::A, 1);
        assert_eq!(height_from_word(&gh1, &[1]).levels(), &[0]);
    }

    #[test]
    fn flip_moves_only_the_chosen_vertex() {
        let (_, gh) = setup(Family::A, 2);
        let h = height_from_word(&gh, &[1, 2]);
        let d = gh.diagram();
        assert_eq!(h.flip(d, 1).unwrap().levels(), &[2, 1]);
        assert_eq!(h.flip(d, 2).unwrap().levels(), &[0, 5]);
    }

    #[test]
    fn interior_vertex_is_not_extremal() {
        let (_, gh) = setup(Family::A, 3);
        let h = height_from_word(&gh, &[1, 2, 3]);
        assert!(matches!(h.flip(gh.diagram(), 2), Err(Error::NotExtremal(2))));
    }

    #[test]
    fn flip_then_flip_returns() {
        let (_, gh) = setup(Family::D, 4);
        let h = height_from_word(&gh, &[1, 2, 3, 4]);
        let d = gh.diagram();
        for i in 1..=4 {
            if let Ok(f) = h.flip(d, i) {
                assert_eq!(f.flip(d, i).unwrap(), h);
            }
        }
    }

    #[test]
    fn sweep_a2_hand_execution() {
        let (rs, gh) = setup(Family::A, 2);
        let h = height_from_word(&gh, &[1, 2]);
        let s = sweep(&rs, &h).unwrap();
        assert_eq!(s.word, vec![1, 2, 1]);
        let coords: Vec<&[i64]> = s.gammas.iter().map(|&g| rs.coords(g)).collect();
        assert_eq!(coords, vec![&[1, 0][..], &[1, 1][..], &[0, 1][..]]);
        assert_eq!(s.sites, vec![(1, 0), (2, 1), (1, 2)]);
    }

    #[test]
    fn sweep_a1_and_a3_lengths() {
        let (rs1, gh1) = setup(Family::A, 1);
        let s1 = sweep(&rs1, &height_from_word(&gh1, &[1])).unwrap();
        assert_eq!(s1.word, vec![1]);
        assert_eq!(s1.sites, vec![(1, 0)]);

        let (rs3, gh3) = setup(Family::A, 3);
        for word in [[1, 2, 3], [2, 1, 3], [3, 2, 1]] {
            let s = sweep(&rs3, &height_from_word(&gh3, &word)).unwrap();
            assert_eq!(s.word.len(), 6);
            let mut gammas = s.gammas.clone();
            gammas.sort_unstable();
            gammas.dedup();
            assert_eq!(gammas.len(), 6, "prefix images enumerate the positives");
        }
    }

    #[test]
    fn sweep_multiplies_to_longest_element() {
        for (f, r) in [(Family::A, 2), (Family::A, 4), (Family::D, 4)] {
            let (rs, gh) = setup(f, r);
            let word: Vec<usize> = (1..=r).collect();
            let h = height_from_word(&gh, &word);
            let s = sweep(&rs, &h).unwrap();
            let w = WeylElement::from_word(rs.diagram(), &s.word);
            let (w0, _) = crate::rootsys::longest_element(&rs);
            assert_eq!(w.matrix(), w0.matrix(), "{f}{r}");
        }
    }

    #[test]
    fn adapted_words_a2_and_a3() {
        let (rs, gh) = setup(Family::A, 2);
        let words = all_adapted_words(&rs, &height_from_word(&gh, &[1, 2])).unwrap();
        assert_eq!(words, vec![vec![1, 2, 1]]);

        let (rs1, gh1) = setup(Family::A, 1);
        let words1 = all_adapted_words(&rs1, &height_from_word(&gh1, &[1])).unwrap();
        assert_eq!(words1, vec![vec![1]]);

        // Bipartite A3 height: sources 1 and 3 at the start.
        let (rs3, gh3) = setup(Family::A, 3);
        let h = height_from_word(&gh3, &[1, 3, 2]);
        let words3 = all_adapted_words(&rs3, &h).unwrap();
        assert!(words3.iter().any(|w| w[..2] == [1, 3]));
        assert!(words3.iter().any(|w| w[..2] == [3, 1]));
        let d = rs3.diagram();
        let forms: BTreeSet<Vec<usize>> =
            words3.iter().map(|w| commutation_normal_form(d, w)).collect();
        assert_eq!(forms.len(), 1, "one commutation class");
    }

    #[test]
    fn enumeration_guard_triggers() {
        let (rs, gh) = setup(Family::E, 6);
        let word: Vec<usize> = (1..=6).collect();
        let h = height_from_word(&gh, &word);
        assert!(matches!(all_adapted_words(&rs, &h), Err(Error::TooLarge(_))));
    }

    #[test]
    fn form_hat_a2_base_and_recurrence() {
        let (_, gh) = setup(Family::A, 2);
        let f = FormHat::new(&gh).unwrap();
        assert_eq!(f.value((1, 0), (1, 0)), 1);
        assert_eq!(f.value((1, 0), (2, 1)), 1);
        assert_eq!(f.value((1, 0), (1, 2)), 0);
    }

    #[test]
    fn form_hat_recurrence_holds_everywhere() {
        for (f, r) in [(Family::A, 3), (Family::D, 4), (Family::D, 5)] {
            let (_, gh) = setup(f, r);
            let fh = FormHat::new(&gh).unwrap();
            let d = gh.diagram();
            let two_h = gh.two_h();
            for &q in gh.vertices() {
                for &(j, n) in gh.vertices() {
                    let lhs = fh.value(q, (j, n));
                    let mid: i64 = d
                        .neighbors(j)
                        .iter()
                        .map(|&k| fh.value(q, (k, (n + 1) % two_h)))
                        .sum();
                    let far = fh.value(q, (j, (n + 2) % two_h));
                    assert_eq!(lhs - mid + far, 0, "{f}{r} at {q:?} -> ({j},{n})");
                }
            }
        }
    }

    #[test]
    fn dot_output_mentions_every_vertex() {
        let (_, gh) = setup(Family::A, 1);
        let dot = gh.to_dot(None);
        assert!(dot.contains("\"1,0\""));
        assert!(dot.contains("\"1,2\""));
        assert!(dot.starts_with("digraph"));
    }

    #[test]
    fn all_height_functions_counted() {
        // h * 2^(r-1) height functions on a tree with levels in Z_{2h}.
        for (f, r) in [(Family::A, 2), (Family::A, 3), (Family::D, 4)] {
            let (_, gh) = setup(f, r);
            let word: Vec<usize> = (1..=r).collect();
            let start = height_from_word(&gh, &word);
            let all = HeightFunction::all(&gh, &start);
            let h = gh.diagram().coxeter_number();
            assert_eq!(all.len(), h * (1 << (r - 1)), "{f}{r}");
        }
    }
}
