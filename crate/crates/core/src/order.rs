//! Twisted cyclic shifts, the relation `>=_{J,delta}`, and the partial order
//! `<=_delta` on pieces.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;

use crate::bruhat::bruhat_leq;
use crate::coset::{coset_decompose, is_min_right};
use crate::error::{Error, Result};
use crate::piece::PieceIndex;
use crate::subset::Subset;
use crate::twist::Automorphism;
use crate::weyl::{Element, Side, WeylGroup};

/// How [`geq_twisted`] decides `w' >=_{J,delta} w`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Method {
    /// `w' >= u^{-1} w delta(u)` for some `u in W_J` (length-preserving `u` only).
    #[default]
    Conjugate,
    /// `w' >= w_1` for some `w_1 ~_{J,delta} w`.
    Shift,
}

/// `w` together with every `w'` reachable by one `(J, delta)`-cyclic shift.
///
/// Rule 1 moves a first letter `i in J` of a reduced word:
/// `s_i w s_{delta(i)}`. Rule 2 moves a last letter `i in delta(J)`:
/// `s_{delta^{-1}(i)} w s_i`. Results that change the length are dropped.
/// First letters of reduced words are exactly the left descents, last
/// letters the right descents.
pub fn cyclic_shift_neighbors(g: &WeylGroup, d: &Automorphism, w: &Element, j: Subset) -> Vec<Element> {
    let mut out = vec![w.clone()];
    for i in j.iter().filter(|&i| g.is_left_descent(w, i)) {
        out.push(g.mul_gen(&g.gen_mul(i, w), d.apply_index(i)));
    }
    for i in d.apply_subset(j).iter().filter(|&i| g.is_right_descent(w, i)) {
        out.push(g.gen_mul(d.inverse_index(i), &g.mul_gen(w, i)));
    }
    out.retain(|x| x.length() == w.length());
    g.sort_canonical(&mut out);
    out.dedup();
    out
}

/// The `~_{J,delta}` class of `w`, sorted canonically.
pub fn shift_class(g: &WeylGroup, d: &Automorphism, w: &Element, j: Subset) -> Vec<Element> {
    let mut seen: HashSet<Element> = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for y in cyclic_shift_neighbors(g, d, &x, j) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Element> = seen.into_iter().collect();
    g.sort_canonical(&mut out);
    out
}

/// `u^{-1} w delta(u)`.
pub fn twisted_conjugate(g: &WeylGroup, d: &Automorphism, u: &Element, w: &Element) -> Element {
    g.product([&g.inverse(u), w, &d.apply_element(g, u)])
}

/// `w' >=_{J,delta} w` for `p = (J, w)`.
pub fn geq_twisted(g: &WeylGroup, d: &Automorphism, wprime: &Element, p: &PieceIndex, method: Method) -> bool {
    if wprime.length() < p.w.length() {
        return false;
    }
    match method {
        Method::Conjugate => g.parabolic(p.j).iter().any(|u| {
            let c = twisted_conjugate(g, d, u, &p.w);
            c.length() == p.w.length() && bruhat_leq(g, &c, wprime)
        }),
        Method::Shift => shift_class(g, d, &p.w, p.j)
            .iter()
            .any(|w1| bruhat_leq(g, w1, wprime)),
    }
}

/// Same as [`geq_twisted`] but for an arbitrary `(J, w)`, with no minimality
/// requirement on `w`; the one-step relation of `<='` compares against
/// `(I_1(J, x, delta), x)`.
pub fn geq_twisted_raw(g: &WeylGroup, d: &Automorphism, wprime: &Element, j: Subset, w: &Element) -> bool {
    wprime.length() >= w.length()
        && g.parabolic(j)
            .iter()
            .any(|u| bruhat_leq(g, &twisted_conjugate(g, d, u, w), wprime))
}

/// `(J_1, w_1) <=_delta (J_2, w_2)`.
pub fn leq_pieces(g: &WeylGroup, d: &Automorphism, p1: &PieceIndex, p2: &PieceIndex) -> bool {
    p1.j.is_subset(p2.j) && geq_twisted(g, d, &p1.w, p2, Method::Conjugate)
}

/// Witness `(x, u, u_1)` with `x in W^{delta(K)}`, `u in W_J`, `u_1 in W_K`,
/// `x >= w delta(u)` and `w' = u_1^{-1} u^{-1} x delta(u_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub x: Element,
    pub u: Element,
    pub u1: Element,
}

/// Follows the constructive proof: take `v` minimal (by length, then word)
/// in `{v in W_J : v w' >= w delta(v)}`, factor `v w' = x delta(v')` with
/// `x in W^{delta(K)}`, `v' in W_K`, and set `u = v v'^{-1}`, `u_1 = v'`.
/// Returns `None` when no such `v` exists.
pub fn closure_witness(
    g: &WeylGroup,
    d: &Automorphism,
    p: &PieceIndex,
    k: Subset,
    wprime: &Element,
) -> Result<Option<ClosureWitness>> {
    if !k.is_subset(p.j) {
        return Err(Error::Precondition(format!("{k} is not contained in {}", p.j)));
    }
    let dk = d.apply_subset(k);
    if !is_min_right(g, wprime, dk) {
        return Err(Error::Precondition("w' not in W^{delta(K)}".into()));
    }
    let mut candidates: Vec<Element> = g.parabolic(p.j).to_vec();
    g.sort_canonical(&mut candidates);
    let Some(v) = candidates
        .into_iter()
        .find(|v| bruhat_leq(g, &g.compose(&p.w, &d.apply_element(g, v)), &g.compose(v, wprime)))
    else {
        return Ok(None);
    };
    let (x, t) = coset_decompose(g, &g.compose(&v, wprime), dk, Side::Right);
    let vp = d.inverse_element(g, &t);
    let u = g.compose(&v, &g.inverse(&vp));
    let witness = ClosureWitness { x, u, u1: vp };
    check_witness(g, d, p, k, wprime, &witness)?;
    Ok(Some(witness))
}

fn check_witness(
    g: &WeylGroup,
    d: &Automorphism,
    p: &PieceIndex,
    k: Subset,
    wprime: &Element,
    c: &ClosureWitness,
) -> Result<()> {
    let ok = is_min_right(g, &c.x, d.apply_subset(k))
        && g.in_parabolic(&c.u, p.j)
        && g.in_parabolic(&c.u1, k)
        && bruhat_leq(g, &g.compose(&p.w, &d.apply_element(g, &c.u)), &c.x)
        && g.product([
            &g.inverse(&c.u1),
            &g.inverse(&c.u),
            &c.x,
            &d.apply_element(g, &c.u1),
        ]) == *wprime;
    if ok {
        Ok(())
    } else {
        Err(Error::ProofStep("witness postcondition".into()))
    }
}

/// `<=_delta` over a fixed list of pieces, as a dense matrix.
#[derive(Clone, Debug)]
pub struct PiecePoset {
    pieces: Vec<PieceIndex>,
    leq: Vec<bool>,
}

impl PiecePoset {
    pub fn new(g: &WeylGroup, d: &Automorphism, pieces: Vec<PieceIndex>) -> Self {
        let n = pieces.len();
        let leq = (0..n * n)
            .into_par_iter()
            .map(|k| leq_pieces(g, d, &pieces[k / n], &pieces[k % n]))
            .collect();
        PiecePoset { pieces, leq }
    }

    pub fn pieces(&self) -> &[PieceIndex] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `pieces[a] <=_delta pieces[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn position(&self, p: &PieceIndex) -> Option<usize> {
        self.pieces.iter().position(|q| q == p)
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for b in 0..n {
            let below: BTreeSet<usize> = (0..n).filter(|&a| a != b && self.leq(a, b)).collect();
            for &a in &below {
                if !below.iter().any(|&c| c != a && self.leq(a, c)) {
                    out.push((a, b));
                }
            }
        }
        out.sort();
        out
    }

    /// First violation of reflexivity, antisymmetry or transitivity.
    pub fn partial_order_violation(&self) -> Option<String> {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return Some(format!("not reflexive at {a}"));
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Some(format!("not antisymmetric at ({a}, {b})"));
                }
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Some(format!("not transitive at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        None
    }
}
