//! The index set of G-stable pieces: pairs `(J, w)` with `w in W^{delta(J)}`,
//! the invariant `J_inf`, boundary indices and piece dimensions.

use std::cmp::Ordering;
use std::fmt;

use crate::coset::{is_min_right, min_coset_reps, CosetKind};
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::twist::Automorphism;
use crate::weyl::{Element, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PieceIndex {
    pub j: Subset,
    pub w: Element,
}

impl PieceIndex {
    /// Validates `w in W^{delta(J)}`.
    pub fn new(g: &WeylGroup, d: &Automorphism, j: Subset, w: Element) -> Result<Self> {
        if !j.is_subset(g.full_subset()) {
            return Err(Error::Precondition(format!("{j} is not a subset of I")));
        }
        if !g.owns(&w) {
            return Err(Error::IncompatibleRootSystems);
        }
        if !is_min_right(g, &w, d.apply_subset(j)) {
            return Err(Error::NotMinimal);
        }
        Ok(PieceIndex { j, w })
    }

    /// Parses `J=1,2;w=121` (either part may be empty).
    pub fn parse(text: &str, g: &WeylGroup, d: &Automorphism) -> Result<Self> {
        let mut j = None;
        let mut w = None;
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            match key.trim() {
                "J" | "j" => {
                    let labels = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad label {s:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    j = Some(Subset::from_labels(&labels, g.rank())?);
                }
                "w" | "W" => w = Some(g.parse_word(value)?),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let j = j.ok_or_else(|| Error::Parse("missing J=".into()))?;
        Self::new(g, d, j, w.unwrap_or_else(|| g.identity()))
    }

    /// `J=1,2;w=121` form accepted by [`PieceIndex::parse`].
    pub fn spec_string(&self, g: &WeylGroup) -> String {
        let labels: Vec<String> = self.j.labels().iter().map(|l| l.to_string()).collect();
        let word: Vec<String> = g.reduced_word(&self.w).iter().map(|l| l.to_string()).collect();
        let sep = if g.rank() < 10 { "" } else { "," };
        format!("J={};w={}", labels.join(","), word.join(sep))
    }

    pub fn display<'a>(&'a self, g: &'a WeylGroup) -> PieceDisplay<'a> {
        PieceDisplay { p: self, g }
    }

    pub fn canonical_cmp(&self, other: &Self, g: &WeylGroup) -> Ordering {
        self.j
            .canonical_cmp(other.j)
            .then_with(|| g.canonical_cmp(&self.w, &other.w))
    }
}

/// Renders as `({1},121)`.
pub struct PieceDisplay<'a> {
    p: &'a PieceIndex,
    g: &'a WeylGroup,
}

impl fmt::Display for PieceDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p.j, self.g.word_string(&self.p.w))
    }
}

/// All pieces, `J` by descending size then labels, `w` by length then word.
pub fn enumerate_pieces(g: &WeylGroup, d: &Automorphism) -> Vec<PieceIndex> {
    let mut subsets: Vec<Subset> = g.full_subset().subsets().collect();
    subsets.sort_by(|a, b| a.canonical_cmp(*b));
    subsets
        .into_iter()
        .flat_map(|j| {
            min_coset_reps(g, Subset::empty(), d.apply_subset(j), CosetKind::Right)
                .into_iter()
                .map(move |w| PieceIndex { j, w })
        })
        .collect()
}

/// `(J size reversed, J labels)` and `(length, reduced word)`.
type PieceKey = ((usize, Vec<usize>), (usize, Vec<usize>));

pub fn sort_pieces(g: &WeylGroup, pieces: &mut [PieceIndex]) {
    let mut keyed: Vec<(PieceKey, PieceIndex)> = pieces
        .iter()
        .map(|p| {
            (
                ((usize::MAX - p.j.len(), p.j.labels()), (p.w.length(), g.reduced_word(&p.w))),
                p.clone(),
            )
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for (slot, (_, p)) in pieces.iter_mut().zip(keyed) {
        *slot = p;
    }
}

fn check_minimal(g: &WeylGroup, d: &Automorphism, j: Subset, w: &Element) -> Result<()> {
    if is_min_right(g, w, d.apply_subset(j)) {
        Ok(())
    } else {
        Err(Error::NotMinimal)
    }
}

/// `J_0 = J`, `J_{k+1} = {k in J_k : w(alpha_{delta k}) in Phi_{J_k}}`, until
/// stable. The last entry is `J_inf`.
pub fn j_sequence(g: &WeylGroup, d: &Automorphism, j: Subset, w: &Element) -> Result<Vec<Subset>> {
    check_minimal(g, d, j, w)?;
    let sys = g.system();
    let mut seq = vec![j];
    loop {
        let cur = *seq.last().expect("non-empty");
        let next = Subset::from_indices(
            cur.iter()
                .filter(|&k| sys.support_of(w.image(d.apply_index(k))).is_subset(cur)),
        );
        if next == cur {
            return Ok(seq);
        }
        seq.push(next);
    }
}

/// Largest `K ⊆ J` with `Ad(w) delta(K) = K`.
pub fn j_infinity(g: &WeylGroup, d: &Automorphism, j: Subset, w: &Element) -> Result<Subset> {
    Ok(*j_sequence(g, d, j, w)?.last().expect("non-empty"))
}

/// `Ad(w) delta(K) = K` on simple roots.
pub fn is_ad_stable(g: &WeylGroup, d: &Automorphism, k: Subset, w: &Element) -> bool {
    k.iter().all(|i| {
        g.system()
            .simple_label(w.image(d.apply_index(i)))
            .is_some_and(|l| k.contains(l))
    })
}

/// `y = w_0 w_0^{delta(J)}`, the ambient stratum index.
pub fn ambient_y(g: &WeylGroup, d: &Automorphism, j: Subset) -> Element {
    g.compose(&g.longest(), &g.longest_element(d.apply_subset(j)))
}

/// `J' = Ad(y) delta(J)`.
pub fn j_prime(g: &WeylGroup, d: &Automorphism, j: Subset) -> Subset {
    let y = ambient_y(g, d, j);
    Subset::from_indices(d.apply_subset(j).iter().map(|i| {
        g.system()
            .simple_label(y.image(i))
            .expect("w_0 w_0^K sends simple roots of K to simple roots")
    }))
}

/// `y_K = y w_0^{delta(J)} w_0^{delta(K)}` for `K ⊆ J`.
pub fn boundary_index(g: &WeylGroup, d: &Automorphism, j: Subset, k: Subset) -> Result<Element> {
    if !k.is_subset(j) {
        return Err(Error::NotBoundarySubset(format!("{k} is not contained in {j}")));
    }
    let y = ambient_y(g, d, j);
    Ok(g.product([
        &y,
        &g.longest_element(d.apply_subset(j)),
        &g.longest_element(d.apply_subset(k)),
    ]))
}

/// Piece dimension, derived from the fibration over `G x_{P_{J_inf}} ...`:
///
/// `(N - |Phi+_{J_inf}|) + l(w_0^{J_inf} w y^{-1} w_0^{J'}) + |Phi_{J_inf}| + |J|`.
///
/// This formula is derived rather than quoted; the rank-one values 3, 2, 1
/// and `dim G` for the open piece are pinned in tests.
pub fn piece_dimension(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> usize {
    let sys = g.system();
    let jinf = j_infinity(g, d, p.j, &p.w).expect("piece index is valid");
    let y = ambient_y(g, d, p.j);
    let jp = j_prime(g, d, p.j);
    let n_pos = sys.num_positive();
    let inf_pos = sys.num_positive_in(jinf);
    let mid = g.product([
        &g.longest_element(jinf),
        &p.w,
        &g.inverse(&y),
        &g.longest_element(jp),
    ]);
    (n_pos - inf_pos) + mid.length() + 2 * inf_pos + p.j.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(t: &str, delta: &str) -> (WeylGroup, Automorphism) {
        let g = WeylGroup::from_type(t).unwrap();
        let d = Automorphism::parse(delta, g.system()).unwrap();
        (g, d)
    }

    fn s(labels: &[usize], n: usize) -> Subset {
        Subset::from_labels(labels, n).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let (g, d) = setup("A1", "id");
        let ps = enumerate_pieces(&g, &d);
        let shown: Vec<String> = ps.iter().map(|p| p.display(&g).to_string()).collect();
        assert_eq!(shown, vec!["({1},e)", "({},e)", "({},1)"]);
        assert_eq!(enumerate_pieces(&setup("A2", "id").0, &setup("A2", "id").1).len(), 13);
        let (g, d) = setup("A2", "1:2,2:1");
        assert_eq!(enumerate_pieces(&g, &d).len(), 13);
    }

    #[test]
    fn pieces_distinct_and_counted() {
        for (t, delta) in [("A3", "1:3,3:1"), ("B3", "id"), ("A1xA1", "1:2,2:1")] {
            let (g, d) = setup(t, delta);
            let ps = enumerate_pieces(&g, &d);
            let expected: usize = g
                .full_subset()
                .subsets()
                .map(|j| g.order() / g.parabolic(d.apply_subset(j)).len())
                .sum();
            assert_eq!(ps.len(), expected);
            let set: std::collections::HashSet<_> = ps.iter().collect();
            assert_eq!(set.len(), ps.len());
            let mut sorted = ps.clone();
            sort_pieces(&g, &mut sorted);
            assert_eq!(sorted, ps);
        }
    }

    #[test]
    fn j_infinity_examples() {
        let (g, d) = setup("A2", "id");
        let full = g.full_subset();
        assert_eq!(j_infinity(&g, &d, full, &g.identity()).unwrap(), full);
        let s2 = g.from_word(&[2]).unwrap();
        assert_eq!(j_infinity(&g, &d, s(&[1], 2), &s2).unwrap(), Subset::empty());
        assert_eq!(j_sequence(&g, &d, s(&[1], 2), &s2).unwrap(), vec![s(&[1], 2), Subset::empty()]);
        assert_eq!(j_sequence(&g, &d, full, &g.identity()).unwrap(), vec![full]);
        let (g, swap) = setup("A2", "1:2,2:1");
        assert_eq!(j_infinity(&g, &swap, s(&[1], 2), &g.identity()).unwrap(), Subset::empty());
        assert_eq!(
            j_infinity(&g, &d, s(&[1], 2), &g.from_word(&[1]).unwrap()),
            Err(Error::NotMinimal)
        );
    }

    #[test]
    fn j_sequence_decreases_to_stable_maximum() {
        for (t, delta) in [("A3", "id"), ("A3", "1:3,3:1"), ("B3", "id"), ("A2", "1:2,2:1")] {
            let (g, d) = setup(t, delta);
            for p in enumerate_pieces(&g, &d) {
                let seq = j_sequence(&g, &d, p.j, &p.w).unwrap();
                assert!(seq.len() <= p.j.len() + 1);
                assert!(seq.windows(2).all(|x| x[1].is_subset(x[0]) && x[1] != x[0]));
                let family: Vec<Subset> =
                    p.j.subsets().filter(|k| is_ad_stable(&g, &d, *k, &p.w)).collect();
                for a in &family {
                    for b in &family {
                        assert!(family.contains(&a.union(*b)));
                    }
                }
                let max = family.iter().fold(Subset::empty(), |acc, k| acc.union(*k));
                assert_eq!(*seq.last().unwrap(), max);
            }
        }
    }

    #[test]
    fn boundary_index_examples() {
        let (g, d) = setup("A2", "id");
        let full = g.full_subset();
        assert_eq!(boundary_index(&g, &d, full, full).unwrap(), ambient_y(&g, &d, full));
        assert_eq!(
            boundary_index(&g, &d, full, s(&[1], 2)).unwrap(),
            g.from_word(&[1, 2]).unwrap()
        );
        assert_eq!(boundary_index(&g, &d, full, Subset::empty()).unwrap(), g.longest());
        let err = boundary_index(&g, &d, s(&[1], 2), s(&[2], 2)).unwrap_err();
        assert!(err.to_string().contains("not a boundary subset"));
    }

    #[test]
    fn dimension_examples() {
        let (g, d) = setup("A1", "id");
        let dims: Vec<usize> = enumerate_pieces(&g, &d)
            .iter()
            .map(|p| piece_dimension(&g, &d, p))
            .collect();
        assert_eq!(dims, vec![3, 2, 1]);
        let (g, d) = setup("A2", "id");
        let open = PieceIndex::new(&g, &d, g.full_subset(), g.identity()).unwrap();
        assert_eq!(piece_dimension(&g, &d, &open), 8);
        for t in ["B2", "G2", "A3", "A1xA1"] {
            let (g, d) = setup(t, "id");
            let open = PieceIndex::new(&g, &d, g.full_subset(), g.identity()).unwrap();
            assert_eq!(piece_dimension(&g, &d, &open), g.system().len() + g.rank());
        }
    }

    #[test]
    fn parse_round_trip() {
        let (g, d) = setup("A2", "id");
        let p = PieceIndex::parse("J=1;w=12", &g, &d).unwrap();
        assert_eq!(p.j, s(&[1], 2));
        assert_eq!(p.w, g.from_word(&[1, 2]).unwrap());
        assert_eq!(PieceIndex::parse(&p.spec_string(&g), &g, &d).unwrap(), p);
        assert_eq!(PieceIndex::parse("J=;w=", &g, &d).unwrap().w, g.identity());
        assert_eq!(PieceIndex::parse("J=1;w=1", &g, &d), Err(Error::NotMinimal));
        assert!(PieceIndex::parse("w=1", &g, &d).is_err());
        assert!(PieceIndex::parse("J=4;w=", &g, &d).is_err());
    }
}
