//! Cartan data and the finite root systems they generate.
//!
//! Convention: `A[i][j] = <alpha_j, alpha_i^vee>`, so the simple reflection
//! acts by `s_i(alpha_j) = alpha_j - A[i][j] alpha_i`. Type builders emit the
//! Bourbaki numbering.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_RANK};

pub const DEFAULT_ROOT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i32>>", into = "Vec<Vec<i32>>")]
pub struct CartanDatum {
    matrix: Vec<Vec<i32>>,
}

impl CartanDatum {
    pub fn new(matrix: Vec<Vec<i32>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        if n > MAX_RANK {
            return Err(Error::InvalidCartan(format!("rank {n} exceeds {MAX_RANK}")));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!("row {} has length {}", i + 1, row.len())));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if a > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "positive off-diagonal entry at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if (a == 0) != (matrix[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({}, {}) and ({}, {}) are not both zero",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(CartanDatum { matrix })
    }

    /// Standard Cartan matrix of an irreducible type `letter` and `rank`.
    pub fn of_type(letter: char, rank: usize) -> Result<Self> {
        let n = rank;
        let bad = || Error::InvalidCartan(format!("no type {letter}{rank}"));
        let mut m = vec![vec![0i32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |m: &mut Vec<Vec<i32>>, i: usize, j: usize, aij: i32, aji: i32| {
            m[i - 1][j - 1] = aij;
            m[j - 1][i - 1] = aji;
        };
        match letter.to_ascii_uppercase() {
            'A' if n >= 1 => {
                for i in 1..n {
                    link(&mut m, i, i + 1, -1, -1);
                }
            }
            'B' if n >= 2 => {
                for i in 1..n - 1 {
                    link(&mut m, i, i + 1, -1, -1);
                }
                link(&mut m, n - 1, n, -1, -2);
            }
            'C' if n >= 2 => {
                for i in 1..n - 1 {
                    link(&mut m, i, i + 1, -1, -1);
                }
                link(&mut m, n - 1, n, -2, -1);
            }
            'D' if n >= 4 => {
                for i in 1..n - 1 {
                    link(&mut m, i, i + 1, -1, -1);
                }
                link(&mut m, n - 2, n, -1, -1);
            }
            'E' if (6..=8).contains(&n) => {
                link(&mut m, 1, 3, -1, -1);
                link(&mut m, 2, 4, -1, -1);
                for i in 3..n {
                    link(&mut m, i, i + 1, -1, -1);
                }
            }
            'F' if n == 4 => {
                link(&mut m, 1, 2, -1, -1);
                link(&mut m, 2, 3, -1, -2);
                link(&mut m, 3, 4, -1, -1);
            }
            'G' if n == 2 => {
                link(&mut m, 1, 2, -3, -1);
            }
            _ => return Err(bad()),
        }
        CartanDatum::new(m)
    }

    /// Block-diagonal sum of the given factors, labels concatenated in order.
    pub fn product(factors: &[CartanDatum]) -> Result<Self> {
        let n: usize = factors.iter().map(|f| f.rank()).sum();
        let mut m = vec![vec![0i32; n]; n];
        let mut offset = 0;
        for f in factors {
            for (i, row) in f.matrix.iter().enumerate() {
                for (j, &a) in row.iter().enumerate() {
                    m[offset + i][offset + j] = a;
                }
            }
            offset += f.rank();
        }
        CartanDatum::new(m)
    }

    /// Parses `A2`, `B3`, `A1xA1` (factors joined by `x` or `*`).
    pub fn parse_type(spec: &str) -> Result<Self> {
        let factors = spec
            .split(['x', 'X', '*'])
            .map(|part| {
                let part = part.trim();
                let mut chars = part.chars();
                let letter = chars
                    .next()
                    .ok_or_else(|| Error::Parse(format!("empty type in {spec:?}")))?;
                let rank: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank in type {part:?}")))?;
                CartanDatum::of_type(letter, rank)
            })
            .collect::<Result<Vec<_>>>()?;
        if factors.len() == 1 {
            Ok(factors.into_iter().next().unwrap())
        } else {
            CartanDatum::product(&factors)
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    /// Hex SHA-256 of a canonical text rendering of the matrix.
    pub fn digest(&self) -> String {
        let text = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";");
        hex_digest(text.as_bytes())
    }
}

impl TryFrom<Vec<Vec<i32>>> for CartanDatum {
    type Error = Error;
    fn try_from(m: Vec<Vec<i32>>) -> Result<Self> {
        CartanDatum::new(m)
    }
}

impl From<CartanDatum> for Vec<Vec<i32>> {
    fn from(d: CartanDatum) -> Self {
        d.matrix
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coords: Vec<i32>) -> Self {
        Root(coords)
    }

    pub fn simple(rank: usize, index: usize) -> Self {
        let mut c = vec![0; rank];
        c[index] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn support(&self) -> Subset {
        Subset::from_indices(self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i))
    }

    /// `s_i(self)` under the given datum.
    pub fn reflect(&self, datum: &CartanDatum, i: usize) -> Root {
        let pairing: i64 = self
            .0
            .iter()
            .enumerate()
            .map(|(j, &c)| c as i64 * datum.entry(i, j) as i64)
            .sum();
        let mut c = self.0.clone();
        c[i] = (c[i] as i64 - pairing).clamp(i32::MIN as i64, i32::MAX as i64) as i32;
        Root(c)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

const MAX_COORD: u32 = 64;

/// All roots of a finite root system, with a fixed indexing.
///
/// Positive roots occupy indices `0..n_pos` ordered by height and then by
/// descending coordinate vector (so the simple roots `alpha_1..alpha_n` are
/// indices `0..n`); index `n_pos + k` holds the negative of root `k`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    datum: CartanDatum,
    roots: Vec<Root>,
    lookup: HashMap<Root, u16>,
    supports: Vec<Subset>,
    reflections: Vec<Vec<u16>>,
    digest: String,
}

impl RootSystem {
    pub fn new(datum: CartanDatum) -> Result<Self> {
        Self::with_cap(datum, DEFAULT_ROOT_CAP)
    }

    pub fn with_cap(datum: CartanDatum, cap: usize) -> Result<Self> {
        let cap = cap.min(u16::MAX as usize - 1);
        let n = datum.rank();
        let mut seen: HashMap<Root, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let a = Root::simple(n, i);
            seen.insert(a.neg(), ());
            seen.insert(a.clone(), ());
            queue.push_back(a.neg());
            queue.push_back(a);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let img = r.reflect(&datum, i);
                if seen.contains_key(&img) {
                    continue;
                }
                // Finite-type root coordinates never exceed 6.
                if (!img.is_positive() && !img.is_negative())
                    || img.0.iter().any(|c| c.unsigned_abs() > MAX_COORD)
                {
                    return Err(Error::NotFiniteType { cap });
                }
                seen.insert(img.clone(), ());
                if seen.len() > cap {
                    return Err(Error::NotFiniteType { cap });
                }
                queue.push_back(img);
            }
        }
        let mut positive: Vec<Root> = seen.into_keys().filter(|r| r.is_positive()).collect();
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        let negative: Vec<Root> = positive.iter().map(|r| r.neg()).collect();
        let roots: Vec<Root> = positive.into_iter().chain(negative).collect();
        let lookup: HashMap<Root, u16> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k as u16))
            .collect();
        let supports = roots.iter().map(|r| r.support()).collect();
        let reflections = (0..n)
            .map(|i| roots.iter().map(|r| lookup[&r.reflect(&datum, i)]).collect())
            .collect();
        let digest = datum.digest();
        Ok(RootSystem {
            datum,
            roots,
            lookup,
            supports,
            reflections,
            digest,
        })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn root(&self, index: usize) -> &Root {
        &self.roots[index]
    }

    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.lookup.get(root).map(|&k| k as usize)
    }

    pub fn is_positive_index(&self, index: usize) -> bool {
        index < self.num_positive()
    }

    /// Index of the negated root.
    pub fn negate_index(&self, index: usize) -> usize {
        let np = self.num_positive();
        if index < np {
            index + np
        } else {
            index - np
        }
    }

    /// If root `index` is a simple root, its 0-based label.
    pub fn simple_label(&self, index: usize) -> Option<usize> {
        (index < self.rank()).then_some(index)
    }

    pub fn support_of(&self, index: usize) -> Subset {
        self.supports[index]
    }

    /// Root permutation induced by `s_i`.
    pub fn reflection(&self, i: usize) -> &[u16] {
        &self.reflections[i]
    }

    /// `Phi_J`: roots supported on `J`, in system order.
    pub fn phi_subset(&self, j: Subset) -> Vec<Root> {
        self.phi_subset_indices(j)
            .into_iter()
            .map(|k| self.roots[k].clone())
            .collect()
    }

    pub fn phi_subset_indices(&self, j: Subset) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.supports[k].is_subset(j))
            .collect()
    }

    /// Number of positive roots supported on `J`.
    pub fn num_positive_in(&self, j: Subset) -> usize {
        (0..self.num_positive())
            .filter(|&k| self.supports[k].is_subset(j))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(t: &str) -> RootSystem {
        RootSystem::new(CartanDatum::parse_type(t).unwrap()).unwrap()
    }

    #[test]
    fn small_root_counts() {
        assert_eq!(sys("A1").len(), 2);
        let a2 = sys("A2");
        assert_eq!(a2.len(), 6);
        assert_eq!(
            a2.positive_roots().to_vec(),
            vec![Root::new(vec![1, 0]), Root::new(vec![0, 1]), Root::new(vec![1, 1])]
        );
        let b2 = RootSystem::new(CartanDatum::new(vec![vec![2, -1], vec![-2, 2]]).unwrap()).unwrap();
        assert_eq!(b2.len(), 8);
        assert_eq!(b2.num_positive(), 4);
    }

    #[test]
    fn classical_and_exceptional_counts() {
        for (t, n) in [
            ("G2", 12),
            ("B3", 18),
            ("C3", 18),
            ("A3", 12),
            ("D4", 24),
            ("F4", 48),
            ("E6", 72),
            ("A1xA1", 4),
            ("A2xB2", 14),
        ] {
            assert_eq!(sys(t).len(), n, "{t}");
        }
    }

    #[test]
    fn simple_roots_come_first() {
        let s = sys("B3");
        for i in 0..3 {
            assert_eq!(s.root(i), &Root::simple(3, i));
        }
    }

    #[test]
    fn phi_subset_examples() {
        let s = sys("A2");
        assert!(s.phi_subset(Subset::empty()).is_empty());
        let j1 = s.phi_subset(Subset::from_indices([0]));
        assert_eq!(j1, vec![Root::new(vec![1, 0]), Root::new(vec![-1, 0])]);
        assert_eq!(s.phi_subset(Subset::full(2)).len(), 6);
    }

    #[test]
    fn phi_subset_intersections() {
        let s = sys("A3");
        let full = Subset::full(3);
        for j in full.subsets() {
            for k in full.subsets() {
                let mut a: Vec<_> = s
                    .phi_subset(j)
                    .into_iter()
                    .filter(|r| s.phi_subset(k).contains(r))
                    .collect();
                a.sort();
                let mut b = s.phi_subset(j.intersection(k));
                b.sort();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn closed_under_reflections_and_negation() {
        for t in ["B2", "G2", "A3", "C3"] {
            let s = sys(t);
            for r in s.roots() {
                assert!(s.index_of(&r.neg()).is_some());
                for i in 0..s.rank() {
                    assert!(s.index_of(&r.reflect(s.datum(), i)).is_some());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            CartanDatum::new(vec![vec![2, -1], vec![0, 2]]),
            Err(Error::InvalidCartan(_))
        ));
        assert!(matches!(
            CartanDatum::new(vec![vec![2, 1], vec![1, 2]]),
            Err(Error::InvalidCartan(_))
        ));
        assert!(matches!(CartanDatum::new(vec![]), Err(Error::InvalidCartan(_))));
        let affine = CartanDatum::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(
            RootSystem::with_cap(affine, 500),
            Err(Error::NotFiniteType { .. })
        ));
        let hyperbolic = CartanDatum::new(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert!(matches!(RootSystem::new(hyperbolic), Err(Error::NotFiniteType { .. })));
    }

    #[test]
    fn datum_serde_validates() {
        let ok: CartanDatum = serde_json::from_str("[[2,-1],[-1,2]]").unwrap();
        assert_eq!(ok.rank(), 2);
        assert!(serde_json::from_str::<CartanDatum>("[[2,1],[-1,2]]").is_err());
    }
}
