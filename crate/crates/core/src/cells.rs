//! The subsets `I_1`, `I_2`, the set `W_delta(J, w)`, the X-grouping of a
//! piece closure, the relation `<='`, and the cellular-decomposition report.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::bruhat::bruhat_leq;
use crate::order::{geq_twisted, geq_twisted_raw, Method};
use crate::piece::{piece_dimension, PieceIndex};
use crate::subset::Subset;
use crate::twist::Automorphism;
use crate::weyl::{Element, WeylGroup};

/// `I_1(J, w, delta) = {k in J : w(alpha_{delta k}) > 0}`.
pub fn i1(g: &WeylGroup, d: &Automorphism, j: Subset, w: &Element) -> Subset {
    let sys = g.system();
    Subset::from_indices(j.iter().filter(|&k| sys.is_positive_index(w.image(d.apply_index(k)))))
}

/// `I_2(J, w, delta)`, the largest `K ⊆ J` with `w Phi_{delta K} = Phi_K`, by
/// fixed-point elimination.
pub fn i2(g: &WeylGroup, d: &Automorphism, j: Subset, w: &Element) -> Subset {
    let sys = g.system();
    let mut cur = j;
    loop {
        let next = Subset::from_indices(
            cur.iter()
                .filter(|&k| sys.support_of(w.image(d.apply_index(k))).is_subset(cur)),
        );
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `w Phi_{delta K} = Phi_K` as root sets.
pub fn maps_phi_onto(g: &WeylGroup, d: &Automorphism, k: Subset, w: &Element) -> bool {
    let sys = g.system();
    let src: HashSet<usize> = sys
        .phi_subset_indices(d.apply_subset(k))
        .into_iter()
        .map(|r| w.image(r))
        .collect();
    let dst: HashSet<usize> = sys.phi_subset_indices(k).into_iter().collect();
    src == dst
}

/// `I_2` by union over all subsets with the defining property.
pub fn i2_brute(g: &WeylGroup, d: &Automorphism, j: Subset, w: &Element) -> Subset {
    j.subsets()
        .filter(|k| maps_phi_onto(g, d, *k, w))
        .fold(Subset::empty(), |acc, k| acc.union(k))
}

/// `W_delta(J, w) = {u : u >=_{J,delta} w, I_2(J,u) ⊆ I_1(J,u)}`, canonical order.
pub fn w_set(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> Vec<Element> {
    let mut out: Vec<Element> = g
        .elements()
        .iter()
        .filter(|u| geq_twisted(g, d, u, p, Method::Conjugate))
        .filter(|u| i2(g, d, p.j, u).is_subset(i1(g, d, p.j, u)))
        .cloned()
        .collect();
    g.sort_canonical(&mut out);
    out
}

/// One part `X_u` of the closure of a piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellGroup {
    pub u: Element,
    pub members: Vec<PieceIndex>,
    pub i1: Subset,
    pub i2: Subset,
}

/// `X_u = ⊔_{v in W_{delta(I_2(J,u))}} ⊔_{K ⊆ I_1(J, u v)} Z^{uv}_K` for each
/// `u in W_delta(J, w)`.
pub fn x_grouping(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> Vec<CellGroup> {
    w_set(g, d, p)
        .into_iter()
        .map(|u| {
            let a = i1(g, d, p.j, &u);
            let b = i2(g, d, p.j, &u);
            let mut members = Vec::new();
            for v in g.parabolic(d.apply_subset(b)).iter() {
                let uv = g.compose(&u, v);
                for k in i1(g, d, p.j, &uv).subsets() {
                    members.push(PieceIndex { j: k, w: uv.clone() });
                }
            }
            crate::piece::sort_pieces(g, &mut members);
            CellGroup { u, members, i1: a, i2: b }
        })
        .collect()
}

/// One step `x -> y` of `<='`: some `v in W_{delta(I_2(J, y))}` has
/// `y v >=_{I_1(J, x), delta} x`.
pub fn prime_step(g: &WeylGroup, d: &Automorphism, j: Subset, x: &Element, y: &Element) -> bool {
    let k = i1(g, d, j, x);
    g.parabolic(d.apply_subset(i2(g, d, j, y)))
        .iter()
        .any(|v| geq_twisted_raw(g, d, &g.compose(y, v), k, x))
}

/// Reachability matrix of `<='` on `W_delta(J, w)`: `reach[a][b]` means
/// `elements[b] <=' elements[a]`.
#[derive(Clone, Debug)]
pub struct PrimeOrder {
    pub elements: Vec<Element>,
    reach: Vec<Vec<bool>>,
}

impl PrimeOrder {
    pub fn new(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> Self {
        let elements = w_set(g, d, p);
        let n = elements.len();
        let mut reach: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| a == b || prime_step(g, d, p.j, &elements[a], &elements[b])).collect())
            .collect();
        for k in 0..n {
            for a in 0..n {
                if reach[a][k] {
                    let via = reach[k].clone();
                    for (slot, hit) in reach[a].iter_mut().zip(via) {
                        *slot |= hit;
                    }
                }
            }
        }
        PrimeOrder { elements, reach }
    }

    /// `elements[b] <=' elements[a]`.
    pub fn below(&self, b: usize, a: usize) -> bool {
        self.reach[a][b]
    }

    pub fn position(&self, u: &Element) -> Option<usize> {
        self.elements.iter().position(|x| x == u)
    }

    /// A pair `a != b` with `a <=' b <=' a`, if any.
    pub fn two_cycle(&self) -> Option<(usize, usize)> {
        let n = self.elements.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.reach[a][b] && self.reach[b][a])
    }

    /// Linear extension with `<='`-smaller elements first; ties broken by the
    /// canonical element order. `None` if `<='` has a cycle.
    pub fn linear_extension(&self) -> Option<Vec<usize>> {
        let n = self.elements.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n).find(|&a| {
                !placed[a] && (0..n).all(|b| b == a || placed[b] || !self.below(b, a))
            })?;
            placed[next] = true;
            out.push(next);
        }
        Some(out)
    }
}

/// `u2 <=' u1` on `W_delta(J, w)`; `None` if either argument lies outside it.
pub fn prime_leq(g: &WeylGroup, d: &Automorphism, u2: &Element, u1: &Element, p: &PieceIndex) -> Option<bool> {
    let order = PrimeOrder::new(g, d, p);
    let a = order.position(u1)?;
    let b = order.position(u2)?;
    Some(order.below(b, a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularReport {
    /// `I_2(J, u, delta) = {}` for every `u >=_{J,delta} w`.
    pub finite: bool,
    /// First `u` (canonical order) violating the finiteness condition, with its `I_2`.
    pub violator: Option<(Element, Subset)>,
    /// `W_delta(J, w)` listed with `<='`-smaller elements first.
    pub alpha_order: Vec<Element>,
    /// Number of cells in each dimension.
    pub cells_by_dim: BTreeMap<usize, usize>,
}

/// Cellular-decomposition report for the closure of `p`.
///
/// Each `X_u` is a vector bundle over the flag variety whose rank is the
/// dimension of its top piece `(I_1(J,u), u)` minus `N`; the Schubert cells
/// of the base then give one cell of dimension `rank + l(x)` per `x in W`.
pub fn cellular_report(g: &WeylGroup, d: &Automorphism, p: &PieceIndex) -> CellularReport {
    let mut upper: Vec<Element> = g
        .elements()
        .iter()
        .filter(|u| geq_twisted(g, d, u, p, Method::Conjugate))
        .cloned()
        .collect();
    g.sort_canonical(&mut upper);
    if let Some(u) = upper.iter().find(|u| !i2(g, d, p.j, u).is_empty()) {
        return CellularReport {
            finite: false,
            violator: Some((u.clone(), i2(g, d, p.j, u))),
            alpha_order: Vec::new(),
            cells_by_dim: BTreeMap::new(),
        };
    }
    let order = PrimeOrder::new(g, d, p);
    let alpha_order = order
        .linear_extension()
        .expect("<=' is acyclic under the finiteness condition")
        .into_iter()
        .map(|a| order.elements[a].clone())
        .collect();
    let n_pos = g.system().num_positive();
    let schubert: HashMap<usize, usize> = g.elements().iter().fold(HashMap::new(), |mut m, x| {
        *m.entry(x.length()).or_default() += 1;
        m
    });
    let mut cells_by_dim = BTreeMap::new();
    for u in &order.elements {
        let top = PieceIndex { j: i1(g, d, p.j, u), w: u.clone() };
        let rank = piece_dimension(g, d, &top) - n_pos;
        for (&len, &count) in &schubert {
            *cells_by_dim.entry(rank + len).or_default() += count;
        }
    }
    CellularReport {
        finite: true,
        violator: None,
        alpha_order,
        cells_by_dim,
    }
}

/// Checks the coset descent bound for one input: returns `false` on a
/// counterexample. `w in W^J`, `v in W_J`.
pub fn coset_descent_bound_holds(g: &WeylGroup, j: Subset, u: &Element, w: &Element, v: &Element) -> bool {
    let wv = g.compose(w, v);
    let uwv = g.compose(u, &wv);
    if uwv.length() + u.length() != wv.length() {
        return true;
    }
    let (wp, _) = crate::coset::coset_decompose(g, &uwv, j, crate::weyl::Side::Right);
    if !bruhat_leq(g, &wp, w) {
        return false;
    }
    if wp != *w {
        return true;
    }
    let sys = g.system();
    crate::coset::support(g, u)
        .iter()
        .all(|i| sys.support_of(g.inverse_image_of_simple(w, i)).is_subset(j))
}
