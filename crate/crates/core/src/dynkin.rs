//! ADE Dynkin diagrams with Cartan data, Coxeter numbers, and the
//! two-coloring used to build the periodic quiver.
//!
//! Vertex labels are 1-based and canonical:
//!   A_r: the path 1 - 2 - ... - r
//!   D_r: the path 1 - ... - (r-2) with both r-1 and r attached to r-2
//!   E_r: the path 1 - ... - (r-1) with r attached to vertex 3

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Parse a type string such as "A2", "D5" or "E6".
pub fn parse_type(s: &str) -> Result<(Family, usize)> {
    let bad = || Error::IllegalType { family: s.chars().next().unwrap_or('?'), rank: 0 };
    let mut chars = s.chars();
    let family = match chars.next() {
        Some('A') | Some('a') => Family::A,
        Some('D') | Some('d') => Family::D,
        Some('E') | Some('e') => Family::E,
        _ => return Err(bad()),
    };
    let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
    Ok((family, rank))
}

#[derive(Debug, Clone)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
    edges: Vec<(usize, usize)>,
    cartan: Vec<Vec<i64>>,
    coxeter_number: usize,
    parity: Vec<u8>,
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::IllegalType { family: family.letter(), rank });
        }

        let mut edges: Vec<(usize, usize)> = Vec::new();
        match family {
            Family::A => {
                for i in 1..rank {
                    edges.push((i, i + 1));
                }
            }
            Family::D => {
                for i in 1..rank - 2 {
                    edges.push((i, i + 1));
                }
                edges.push((rank - 2, rank - 1));
                edges.push((rank - 2, rank));
            }
            Family::E => {
                for i in 1..rank - 1 {
                    edges.push((i, i + 1));
                }
                edges.push((3, rank));
            }
        }
        edges.sort_unstable();

        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            cartan[i][i] = 2;
        }
        for &(a, b) in &edges {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }

        // Two-color the tree starting from vertex 1.
        let mut parity = vec![u8::MAX; rank];
        parity[0] = 0;
        let mut queue = vec![1usize];
        while let Some(v) = queue.pop() {
            for &(a, b) in &edges {
                let (x, y) = (a, b);
                for (s, t) in [(x, y), (y, x)] {
                    if s == v && parity[t - 1] == u8::MAX {
                        parity[t - 1] = 1 - parity[v - 1];
                        queue.push(t);
                    }
                }
            }
        }

        let coxeter_number = coxeter_matrix_order(&cartan);

        Ok(DynkinDiagram { family, rank, edges, cartan, coxeter_number, parity })
    }

    pub fn from_type_str(s: &str) -> Result<Self> {
        let (family, rank) = parse_type(s)?;
        Self::new(family, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn type_name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cartan(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }

    /// Coxeter number h; the order of any Coxeter element.
    pub fn coxeter_number(&self) -> usize {
        self.coxeter_number
    }

    /// Parity of a 1-based vertex label.
    pub fn parity(&self, v: usize) -> u8 {
        self.parity[v - 1]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.cartan[a - 1][b - 1] == -1
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (1..=self.rank).filter(|&u| self.adjacent(v, u)).collect()
    }

    /// Symmetric pairing of lattice vectors in simple-root coordinates.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += x[i] * self.cartan[i][j] * y[j];
            }
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.letter().to_string(),
            "rank": self.rank,
            "edges": self.edges.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
            "parity": (1..=self.rank).map(|v| self.parity(v)).collect::<Vec<_>>(),
            "h": self.coxeter_number,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::IllegalType { family: '?', rank: 0 };
        let family = match v.get("family").and_then(Value::as_str) {
            Some("A") => Family::A,
            Some("D") => Family::D,
            Some("E") => Family::E,
            _ => return Err(bad()),
        };
        let rank = v.get("rank").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let d = Self::new(family, rank)?;
        if d.to_json() != *v {
            return Err(bad());
        }
        Ok(d)
    }
}

/// Order of the product of all simple reflections taken in label order,
/// acting on the root lattice. Orders of Coxeter elements do not depend
/// on the ordering (the tests also confirm this directly).
fn coxeter_matrix_order(cartan: &[Vec<i64>]) -> usize {
    let rank = cartan.len();
    let reflect = |m: &mut Vec<Vec<i64>>, i: usize| {
        // Replace each column v by s_i(v): coordinates change only in row i.
        for col in 0..rank {
            let mut acc = 0;
            for row in 0..rank {
                acc += cartan[i][row] * m[row][col];
            }
            m[i][col] -= acc;
        }
    };
    let mut c: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    // Rightmost reflection acts first.
    for i in (0..rank).rev() {
        reflect(&mut c, i);
    }
    let mut power = c.clone();
    let mut order = 1usize;
    while !is_int_identity(&power) {
        power = int_mul(&power, &c);
        order += 1;
        assert!(order <= 64, "Coxeter element order out of range");
    }
    order
}

fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn is_int_identity(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::RatMatrix;
    use num_traits::Signed;

    #[test]
    fn a2_shape() {
        let d = DynkinDiagram::new(Family::A, 2).unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.edges(), &[(1, 2)]);
        assert_eq!((d.parity(1), d.parity(2)), (0, 1));
    }

    #[test]
    fn d5_shape_matches_tree() {
        let d = DynkinDiagram::new(Family::D, 5).unwrap();
        assert_eq!(d.edges(), &[(1, 2), (2, 3), (3, 4), (3, 5)]);
    }

    #[test]
    fn illegal_types_rejected() {
        assert!(matches!(
            DynkinDiagram::new(Family::E, 9),
            Err(Error::IllegalType { family: 'E', rank: 9 })
        ));
        assert!(DynkinDiagram::new(Family::D, 3).is_err());
        assert!(DynkinDiagram::new(Family::A, 0).is_err());
    }

    #[test]
    fn parity_is_proper_two_coloring() {
        for d in all_small_diagrams() {
            for &(a, b) in d.edges() {
                assert_ne!(d.parity(a), d.parity(b), "{}", d.type_name());
            }
            assert_eq!(d.parity(1), 0);
        }
    }

    #[test]
    fn coxeter_numbers_match_closed_forms() {
        // Independent cross-check table: h(A_n) = n+1, h(D_n) = 2n-2,
        // h(E6) = 12, h(E7) = 18, h(E8) = 30.
        let cases = [
            (Family::A, 1, 2),
            (Family::A, 2, 3),
            (Family::A, 4, 5),
            (Family::A, 5, 6),
            (Family::D, 4, 6),
            (Family::D, 5, 8),
            (Family::E, 6, 12),
            (Family::E, 7, 18),
            (Family::E, 8, 30),
        ];
        for (f, r, h) in cases {
            assert_eq!(DynkinDiagram::new(f, r).unwrap().coxeter_number(), h, "{f}{r}");
        }
    }

    #[test]
    fn cartan_is_positive_definite() {
        for d in all_small_diagrams() {
            let n = d.rank();
            for k in 1..=n {
                let minor: Vec<Vec<i64>> =
                    (0..k).map(|i| d.cartan()[i][0..k].to_vec()).collect();
                let det = RatMatrix::from_int_rows(&minor).determinant();
                assert!(det.is_positive(), "{} leading minor {k}", d.type_name());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let d = DynkinDiagram::new(Family::D, 5).unwrap();
        let v = d.to_json();
        assert_eq!(v["h"], 8);
        assert_eq!(v["edges"].as_array().unwrap().len(), 4);
        let back = DynkinDiagram::from_json(&v).unwrap();
        assert_eq!(back.to_json(), v);
    }

    #[test]
    fn type_parsing() {
        assert_eq!(parse_type("A2").unwrap(), (Family::A, 2));
        assert_eq!(parse_type("e6").unwrap(), (Family::E, 6));
        assert!(parse_type("Z9").is_err());
        assert!(parse_type("A").is_err());
    }

    fn all_small_diagrams() -> Vec<DynkinDiagram> {
        let mut out = Vec::new();
        for r in 1..=5 {
            out.push(DynkinDiagram::new(Family::A, r).unwrap());
        }
        out.push(DynkinDiagram::new(Family::D, 4).unwrap());
        out.push(DynkinDiagram::new(Family::D, 5).unwrap());
        out.push(DynkinDiagram::new(Family::E, 6).unwrap());
        out
    }
}
