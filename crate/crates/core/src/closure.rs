//! Closures of pieces and of B x B-orbits, and Hasse diagrams of `<=_delta`.

use crate::bruhat::bruhat_leq;
use crate::coset::{is_min_right, min_coset_reps, CosetKind};
use crate::error::{Error, Result};
use crate::order::{geq_twisted, Method, PiecePoset};
use crate::piece::{enumerate_pieces, PieceIndex};
use crate::subset::Subset;
use crate::twist::Automorphism;
use crate::weyl::{Element, WeylGroup};

/// The B x B-orbit label `[J, x, w]` with `x in W^J`, `w in W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BxBOrbit {
    pub j: Subset,
    pub x: Element,
    pub w: Element,
}

impl BxBOrbit {
    pub fn new(g: &WeylGroup, j: Subset, x: Element, w: Element) -> Result<Self> {
        if !is_min_right(g, &x, j) {
            return Err(Error::NotMinimal);
        }
        Ok(BxBOrbit { j, x, w })
    }
}

/// Pieces in the closure of `p`: `{q : q <=_delta p}`, in canonical order.
pub fn piece_closure(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> Vec<PieceIndex> {
    enumerate_pieces(g, d)
        .into_iter()
        .filter(|q| q.j.is_subset(p.j) && geq_twisted(g, d, &q.w, p, Method::Conjugate))
        .collect()
}

/// Springer's criterion: `[K, x', w']` lies in the closure of `[J, x, w]`.
pub fn springer_closure_leq(g: &WeylGroup, a: &BxBOrbit, b: &BxBOrbit) -> bool {
    if !b.j.is_subset(a.j) {
        return false;
    }
    let vs: Vec<Element> = g
        .parabolic(a.j)
        .iter()
        .filter(|v| is_min_right(g, v, b.j))
        .filter(|v| g.compose(&a.w, v).length() == a.w.length() + v.length())
        .cloned()
        .collect();
    g.parabolic(b.j).iter().any(|u| {
        let ui = g.inverse(u);
        let wpu = g.compose(&b.w, u);
        vs.iter().any(|v| {
            bruhat_leq(g, &g.product([&a.x, v, &ui]), &b.x) && bruhat_leq(g, &wpu, &g.compose(&a.w, v))
        })
    })
}

/// `(K, x, u)` with `K ⊆ J`, `x in W^{delta(K)}`, `u in W_J`, `x >= w delta(u)`:
/// the orbits `[K, x, u]_delta` in the closure of `[J, w, 1]_delta`.
pub fn twisted_orbit_closure(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> Vec<(Subset, Element, Element)> {
    let mut ks: Vec<Subset> = p.j.subsets().collect();
    ks.sort_by(|a, b| a.canonical_cmp(*b));
    let mut us: Vec<Element> = g.parabolic(p.j).to_vec();
    g.sort_canonical(&mut us);
    let targets: Vec<Element> = us.iter().map(|u| g.compose(&p.w, &d.apply_element(g, u))).collect();
    let mut out = Vec::new();
    for k in ks {
        for x in min_coset_reps(g, Subset::empty(), d.apply_subset(k), CosetKind::Right) {
            for (u, t) in us.iter().zip(&targets) {
                if bruhat_leq(g, t, &x) {
                    out.push((k, x.clone(), u.clone()));
                }
            }
        }
    }
    out
}

/// `{w' in W^{delta(J)} : w >=_{J,delta} w'}`.
///
/// The direction is reversed relative to [`piece_closure`]: here `w` is on the
/// large side of `>=_{J,delta}`.
pub fn fiber_closure(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> Vec<Element> {
    min_coset_reps(g, Subset::empty(), d.apply_subset(p.j), CosetKind::Right)
        .into_iter()
        .filter(|wp| {
            let q = PieceIndex { j: p.j, w: wp.clone() };
            geq_twisted(g, d, &p.w, &q, Method::Conjugate)
        })
        .collect()
}

/// Covering relations of `<=_delta` on `pieces`, as index pairs
/// `(lower, upper)` into the canonically sorted list that is also returned.
pub fn hasse_diagram(
    g: &WeylGroup,
    d: &Automorphism,
    pieces: &[PieceIndex],
) -> (Vec<PieceIndex>, Vec<(usize, usize)>) {
    let mut sorted = pieces.to_vec();
    crate::piece::sort_pieces(g, &mut sorted);
    sorted.dedup();
    let poset = PiecePoset::new(g, d, sorted);
    let edges = poset.covers();
    (poset.pieces().to_vec(), edges)
}
