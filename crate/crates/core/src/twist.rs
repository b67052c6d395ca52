//! Diagram automorphisms `delta` and their action on elements and subsets.

use std::fmt;

use crate::cartan::{CartanDatum, Root, RootSystem};
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::weyl::{Element, WeylGroup};

/// A Cartan-preserving permutation of the simple-root indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    map: Vec<usize>,
    inv: Vec<usize>,
    root_perm: Vec<u16>,
}

impl Automorphism {
    pub fn identity(system: &RootSystem) -> Self {
        Self::validate(&(0..system.rank()).collect::<Vec<_>>(), system)
            .expect("identity is always an automorphism")
    }

    /// Checks that `map` (0-based, `i -> map[i]`) is a bijection with
    /// `A[map i][map j] = A[i][j]`.
    pub fn validate(map: &[usize], system: &RootSystem) -> Result<Self> {
        let datum = system.datum();
        let n = datum.rank();
        if map.len() != n {
            return Err(Error::NotDiagramAutomorphism(format!(
                "mapping has {} entries for rank {n}",
                map.len()
            )));
        }
        let mut inv = vec![usize::MAX; n];
        for (i, &m) in map.iter().enumerate() {
            if m >= n || inv[m] != usize::MAX {
                return Err(Error::NotDiagramAutomorphism("mapping is not a bijection".into()));
            }
            inv[m] = i;
        }
        for i in 0..n {
            for j in 0..n {
                if datum.entry(map[i], map[j]) != datum.entry(i, j) {
                    return Err(Error::NotDiagramAutomorphism(format!(
                        "A[{}][{}] != A[{}][{}]",
                        map[i] + 1,
                        map[j] + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let root_perm = system
            .roots()
            .iter()
            .map(|r| {
                let mut c = vec![0; n];
                for (i, &x) in r.coords().iter().enumerate() {
                    c[map[i]] = x;
                }
                system.index_of(&Root::new(c)).expect("diagram symmetry permutes roots") as u16
            })
            .collect();
        Ok(Automorphism {
            map: map.to_vec(),
            inv,
            root_perm,
        })
    }

    /// Parses `"id"` or a list of 1-based pairs like `"1:2,2:1"`; labels not
    /// mentioned are fixed.
    pub fn parse(text: &str, system: &RootSystem) -> Result<Self> {
        let n = system.rank();
        let t = text.trim();
        let mut map: Vec<usize> = (0..n).collect();
        if t.is_empty() || t == "id" {
            return Self::validate(&map, system);
        }
        for pair in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected i:j, got {pair:?}")))?;
            let parse = |s: &str| -> Result<usize> {
                let v: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad label {s:?}")))?;
                if v == 0 || v > n {
                    return Err(Error::InvalidGenerator(v));
                }
                Ok(v - 1)
            };
            map[parse(a)?] = parse(b)?;
        }
        Self::validate(&map, system)
    }

    pub fn rank(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// `delta(i)` on 0-based indices.
    pub fn apply_index(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Automorphism {
        let mut root_inv = vec![0u16; self.root_perm.len()];
        for (k, &img) in self.root_perm.iter().enumerate() {
            root_inv[img as usize] = k as u16;
        }
        Automorphism {
            map: self.inv.clone(),
            inv: self.map.clone(),
            root_perm: root_inv,
        }
    }

    pub fn apply_subset(&self, j: Subset) -> Subset {
        Subset::from_indices(j.iter().map(|i| self.map[i]))
    }

    pub fn inverse_subset(&self, j: Subset) -> Subset {
        Subset::from_indices(j.iter().map(|i| self.inv[i]))
    }

    /// `delta(w)`, i.e. `s_{i1}...s_{ik} -> s_{delta(i1)}...s_{delta(ik)}`.
    pub fn apply_element(&self, g: &WeylGroup, w: &Element) -> Element {
        g.conjugate_by_root_perm(w, &self.root_perm)
    }

    pub fn inverse_element(&self, g: &WeylGroup, w: &Element) -> Element {
        self.inverse().apply_element(g, w)
    }

    /// Image of root index `k`.
    pub fn apply_root(&self, k: usize) -> usize {
        self.root_perm[k] as usize
    }

    /// Digest-friendly text, e.g. `1:2,2:1`.
    pub fn spec_string(&self) -> String {
        self.map
            .iter()
            .enumerate()
            .map(|(i, m)| format!("{}:{}", i + 1, m + 1))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// All diagram automorphisms of a datum (brute force over permutations;
    /// intended for small ranks).
    pub fn all(system: &RootSystem) -> Vec<Automorphism> {
        fn rec(
            prefix: &mut Vec<usize>,
            used: &mut Vec<bool>,
            datum: &CartanDatum,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = datum.rank();
            let i = prefix.len();
            if i == n {
                out.push(prefix.clone());
                return;
            }
            for m in 0..n {
                if used[m] || datum.entry(m, m) != datum.entry(i, i) {
                    continue;
                }
                if (0..i).any(|j| {
                    datum.entry(m, prefix[j]) != datum.entry(i, j)
                        || datum.entry(prefix[j], m) != datum.entry(j, i)
                }) {
                    continue;
                }
                used[m] = true;
                prefix.push(m);
                rec(prefix, used, datum, out);
                prefix.pop();
                used[m] = false;
            }
        }
        let mut maps = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; system.rank()], system.datum(), &mut maps);
        maps.into_iter()
            .map(|m| Self::validate(&m, system).expect("search yields automorphisms"))
            .collect()
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "id")
        } else {
            write!(f, "{}", self.spec_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::bruhat_leq;
    use crate::coset::{is_min_right, min_coset_reps, CosetKind};

    #[test]
    fn validate_examples() {
        let a2 = WeylGroup::from_type("A2").unwrap();
        assert!(Automorphism::identity(a2.system()).is_identity());
        assert!(Automorphism::parse("1:2,2:1", a2.system()).is_ok());
        let b2 = WeylGroup::from_type("B2").unwrap();
        let err = Automorphism::parse("1:2,2:1", b2.system()).unwrap_err();
        assert!(err.to_string().contains("not a diagram automorphism"));
        assert!(Automorphism::parse("1:1,2:1", a2.system()).is_err());
        assert!(Automorphism::parse("1:3", a2.system()).is_err());
    }

    #[test]
    fn apply_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        let id = Automorphism::identity(g.system());
        let swap = Automorphism::parse("1:2,2:1", g.system()).unwrap();
        for u in g.elements() {
            assert_eq!(&id.apply_element(&g, u), u);
        }
        let s12 = g.from_word(&[1, 2]).unwrap();
        assert_eq!(swap.apply_element(&g, &s12), g.from_word(&[2, 1]).unwrap());
        assert_eq!(swap.apply_element(&g, &g.longest()), g.longest());
        assert_eq!(swap.apply_subset(Subset::singleton(0)), Subset::singleton(1));
    }

    #[test]
    fn apply_matches_relabeling_and_preserves_structure() {
        for t in ["A3", "A2", "A1xA1", "D4"] {
            let g = WeylGroup::from_type(t).unwrap();
            for d in Automorphism::all(g.system()) {
                let els = g.elements();
                for u in els {
                    let word: Vec<usize> =
                        g.reduced_word(u).iter().map(|&l| d.apply_index(l - 1) + 1).collect();
                    let du = d.apply_element(&g, u);
                    assert_eq!(du, g.from_word(&word).unwrap());
                    assert_eq!(du.length(), u.length());
                    assert_eq!(d.inverse_element(&g, &du), *u);
                }
                if els.len() > 48 {
                    continue;
                }
                for u in els {
                    for v in els {
                        assert_eq!(
                            bruhat_leq(&g, u, v),
                            bruhat_leq(&g, &d.apply_element(&g, u), &d.apply_element(&g, v))
                        );
                    }
                }
                for j in g.full_subset().subsets() {
                    let dj = d.apply_subset(j);
                    let reps = min_coset_reps(&g, Subset::empty(), j, CosetKind::Right);
                    assert!(reps.iter().all(|x| is_min_right(&g, &d.apply_element(&g, x), dj)));
                }
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let count = |t: &str| Automorphism::all(WeylGroup::from_type(t).unwrap().system()).len();
        assert_eq!(count("A1"), 1);
        assert_eq!(count("A2"), 2);
        assert_eq!(count("A3"), 2);
        assert_eq!(count("B2"), 1);
        assert_eq!(count("D4"), 6);
        assert_eq!(count("A1xA1"), 2);
    }
}
