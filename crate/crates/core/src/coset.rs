//! Parabolic subgroups, minimal coset representatives, supports, and the
//! constructive factorizations used by the closure-order proofs.

use crate::bruhat::bruhat_leq;
use crate::error::{Error, Result};
use crate::subset::Subset;
use crate::weyl::{Element, Side, WeylGroup};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CosetKind {
    /// `W^K`, minimal representatives of `W / W_K`.
    Right,
    /// `^J W`, minimal representatives of `W_J \ W`.
    Left,
    /// `^J W^K`.
    Double,
}

/// `w in W^J`: `w(alpha_j) > 0` for all `j in J`.
pub fn is_min_right(g: &WeylGroup, w: &Element, j: Subset) -> bool {
    j.iter().all(|i| !g.is_right_descent(w, i))
}

/// `w in ^J W`: `w^{-1}(alpha_j) > 0` for all `j in J`.
pub fn is_min_left(g: &WeylGroup, w: &Element, j: Subset) -> bool {
    j.iter().all(|i| !g.is_left_descent(w, i))
}

pub fn is_min_double(g: &WeylGroup, w: &Element, left: Subset, right: Subset) -> bool {
    is_min_left(g, w, left) && is_min_right(g, w, right)
}

/// Length-additive factorization through `W_J`.
///
/// `Side::Right` returns `(x, v)` with `w = x v`, `x in W^J`, `v in W_J`;
/// `Side::Left` returns `(v, x)` with `w = v x`, `x in ^J W`.
pub fn coset_decompose(g: &WeylGroup, w: &Element, j: Subset, side: Side) -> (Element, Element) {
    let mut x = w.clone();
    let mut v = g.identity();
    match side {
        Side::Right => {
            while let Some(i) = j.iter().find(|&i| g.is_right_descent(&x, i)) {
                x = g.mul_gen(&x, i);
                v = g.gen_mul(i, &v);
            }
            (x, v)
        }
        Side::Left => {
            while let Some(i) = j.iter().find(|&i| g.is_left_descent(&x, i)) {
                x = g.gen_mul(i, &x);
                v = g.mul_gen(&v, i);
            }
            (v, x)
        }
    }
}

/// `W^K`, `^J W`, or `^J W^K`, sorted canonically.
pub fn min_coset_reps(g: &WeylGroup, j: Subset, k: Subset, kind: CosetKind) -> Vec<Element> {
    let mut out: Vec<Element> = g
        .elements()
        .iter()
        .filter(|w| match kind {
            CosetKind::Right => is_min_right(g, w, k),
            CosetKind::Left => is_min_left(g, w, j),
            CosetKind::Double => is_min_double(g, w, j, k),
        })
        .cloned()
        .collect();
    g.sort_canonical(&mut out);
    out
}

/// `supp(w)`: the labels occurring in any reduced word.
pub fn support(g: &WeylGroup, w: &Element) -> Subset {
    Subset::from_indices(g.reduced_word(w).into_iter().map(|l| l - 1))
}

/// If `u(alpha_i)` is a simple root, its index.
pub fn simple_image(g: &WeylGroup, u: &Element, i: usize) -> Option<usize> {
    g.system().simple_label(u.image(i))
}

/// `K = J' ∩ Ad(w)J`: the `k in J'` with `w^{-1}(alpha_k) = alpha_j`, `j in J`.
pub fn conjugate_intersection(g: &WeylGroup, w: &Element, jp: Subset, j: Subset) -> Subset {
    Subset::from_indices(jp.iter().filter(|&k| {
        g.system()
            .simple_label(g.inverse_image_of_simple(w, k))
            .is_some_and(|l| j.contains(l))
    }))
}

/// `Ad(w^{-1})K` for a `K` whose simple roots `w^{-1}` sends to simple roots.
fn conjugate_back(g: &WeylGroup, w: &Element, k: Subset) -> Subset {
    Subset::from_indices(k.iter().filter_map(|i| {
        g.system().simple_label(g.inverse_image_of_simple(w, i))
    }))
}

/// Factors `u w = v w u'` with `v in W_{J'} ∩ W^K` and `u' in W_{Ad(w^{-1})K}`,
/// where `K = J' ∩ Ad(w)J`, by induction on `l(u)`.
///
/// At each step the smallest left descent of `u` is peeled off.
pub fn double_coset_factor(
    g: &WeylGroup,
    w: &Element,
    u: &Element,
    jp: Subset,
    j: Subset,
) -> Result<(Element, Element)> {
    if !is_min_double(g, w, jp, j) {
        return Err(Error::Precondition(
            "w not a double-coset minimal representative".into(),
        ));
    }
    if !g.in_parabolic(u, jp) {
        return Err(Error::Precondition("u not in W_{J'}".into()));
    }
    let k = conjugate_intersection(g, w, jp, j);
    let (v, up) = double_coset_step(g, w, u, j, k)?;

    let lhs = g.compose(u, w);
    let rhs = g.product([&v, w, &up]);
    let back = conjugate_back(g, w, k);
    if lhs != rhs || !g.in_parabolic(&v, jp) || !is_min_right(g, &v, k) || !g.in_parabolic(&up, back) {
        return Err(Error::ProofStep("double coset factorization postcondition".into()));
    }
    Ok((v, up))
}

fn double_coset_step(
    g: &WeylGroup,
    w: &Element,
    u: &Element,
    j: Subset,
    k: Subset,
) -> Result<(Element, Element)> {
    if u.is_identity() {
        return Ok((g.identity(), g.identity()));
    }
    let i = (0..g.rank())
        .find(|&i| g.is_left_descent(u, i))
        .expect("non-identity element has a left descent");
    let u1 = g.gen_mul(i, u);
    let (v1, up1) = double_coset_step(g, w, &u1, j, k)?;
    let si_v1 = g.gen_mul(i, &v1);
    if is_min_right(g, &g.compose(&si_v1, w), j) {
        return Ok((si_v1, up1));
    }
    // s_i v1 = v1 s_k with k in K, then s_k w = w s_l.
    let kk = g
        .system()
        .simple_label(g.inverse_image_of_simple(&v1, i))
        .filter(|&kk| k.contains(kk))
        .ok_or_else(|| Error::ProofStep("s_i v1 is not v1 s_k with k in K".into()))?;
    let l = g
        .system()
        .simple_label(g.inverse_image_of_simple(w, kk))
        .ok_or_else(|| Error::ProofStep("s_k w is not w s_l".into()))?;
    Ok((v1, g.gen_mul(l, &up1)))
}

/// Given `w in W^J`, `l(uw) = l(u) + l(w)`, `uw = x v` (`x in W^J`, `v in W_J`)
/// and `v' <= v`, returns `u' <= u` with `u' w = x v'`.
pub fn parabolic_lift(
    g: &WeylGroup,
    j: Subset,
    w: &Element,
    u: &Element,
    vprime: &Element,
) -> Result<Element> {
    if !is_min_right(g, w, j) {
        return Err(Error::Precondition("w not in W^J".into()));
    }
    let uw = g.compose(u, w);
    if uw.length() != u.length() + w.length() {
        return Err(Error::Precondition("l(uw) != l(u) + l(w)".into()));
    }
    let (x, v) = coset_decompose(g, &uw, j, Side::Right);
    if !bruhat_leq(g, vprime, &v) {
        return Err(Error::Precondition("v' not <= v".into()));
    }
    let up = parabolic_lift_step(g, j, w, u, vprime)?;
    if !bruhat_leq(g, &up, u) || g.compose(&up, w) != g.compose(&x, vprime) {
        return Err(Error::ProofStep("parabolic lift postcondition".into()));
    }
    Ok(up)
}

fn parabolic_lift_step(g: &WeylGroup, j: Subset, w: &Element, u: &Element, vprime: &Element) -> Result<Element> {
    if u.is_identity() {
        return if vprime.is_identity() {
            Ok(g.identity())
        } else {
            Err(Error::ProofStep("v' != e at the base of the induction".into()))
        };
    }
    let i = (0..g.rank())
        .find(|&i| g.is_left_descent(u, i))
        .expect("non-identity element has a left descent");
    let u1 = g.gen_mul(i, u);
    let (x1, v1) = coset_decompose(g, &g.compose(&u1, w), j, Side::Right);
    let si_x1 = g.gen_mul(i, &x1);
    if is_min_right(g, &si_x1, j) {
        let up1 = parabolic_lift_step(g, j, w, &u1, vprime)?;
        return Ok(g.gen_mul(i, &up1));
    }
    // s_i x1 = x1 s_j, and v = s_j v1.
    let jj = simple_image(g, &g.inverse(&x1), i)
        .filter(|&jj| j.contains(jj))
        .ok_or_else(|| Error::ProofStep("s_i x1 is not x1 s_j".into()))?;
    if bruhat_leq(g, vprime, &v1) {
        return parabolic_lift_step(g, j, w, &u1, vprime);
    }
    let vp1 = g.gen_mul(jj, vprime);
    if vp1.length() + 1 != vprime.length() || !bruhat_leq(g, &vp1, &v1) {
        return Err(Error::ProofStep("v' is not s_j v'_1 with v'_1 <= v1".into()));
    }
    let up1 = parabolic_lift_step(g, j, w, &u1, &vp1)?;
    Ok(g.gen_mul(i, &up1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(g: &WeylGroup, word: &[usize]) -> Element {
        g.from_word(word).unwrap()
    }

    fn s(labels: &[usize], n: usize) -> Subset {
        Subset::from_labels(labels, n).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        let (x, v) = coset_decompose(&g, &g.longest(), s(&[1], 2), Side::Right);
        assert_eq!((x, v), (w(&g, &[1, 2]), w(&g, &[1])));
        let (x, v) = coset_decompose(&g, &w(&g, &[2]), s(&[1], 2), Side::Right);
        assert_eq!((x, v), (w(&g, &[2]), g.identity()));
        for u in g.elements() {
            assert_eq!(
                coset_decompose(&g, u, Subset::empty(), Side::Right),
                (u.clone(), g.identity())
            );
        }
        let (v, x) = coset_decompose(&g, &g.longest(), s(&[1], 2), Side::Left);
        assert_eq!(g.compose(&v, &x), g.longest());
        assert!(is_min_left(&g, &x, s(&[1], 2)));
    }

    #[test]
    fn decompose_is_unique_length_additive_factorization() {
        for t in ["A3", "B2", "G2"] {
            let g = WeylGroup::from_type(t).unwrap();
            for j in g.full_subset().subsets() {
                let wj = g.parabolic(j);
                for u in g.elements() {
                    let brute: Vec<_> = wj
                        .iter()
                        .map(|v| (g.compose(u, &g.inverse(v)), v.clone()))
                        .filter(|(x, v)| is_min_right(&g, x, j) && x.length() + v.length() == u.length())
                        .collect();
                    assert_eq!(brute.len(), 1);
                    assert_eq!(brute[0], coset_decompose(&g, u, j, Side::Right));
                }
            }
        }
    }

    #[test]
    fn min_coset_rep_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        let one = s(&[1], 2);
        let two = s(&[2], 2);
        assert_eq!(
            min_coset_reps(&g, Subset::empty(), one, CosetKind::Right),
            vec![g.identity(), w(&g, &[2]), w(&g, &[1, 2])]
        );
        assert_eq!(
            min_coset_reps(&g, one, two, CosetKind::Double),
            vec![g.identity(), w(&g, &[2, 1])]
        );
        assert_eq!(
            min_coset_reps(&g, Subset::empty(), Subset::empty(), CosetKind::Right).len(),
            6
        );
    }

    #[test]
    fn coset_counts_multiply() {
        for t in ["A3", "B3", "G2", "A1xA1"] {
            let g = WeylGroup::from_type(t).unwrap();
            for j in g.full_subset().subsets() {
                let reps = min_coset_reps(&g, Subset::empty(), j, CosetKind::Right);
                assert_eq!(reps.len() * g.parabolic(j).len(), g.order());
            }
        }
    }

    #[test]
    fn support_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        assert!(support(&g, &g.identity()).is_empty());
        assert_eq!(support(&g, &w(&g, &[2])).labels(), vec![2]);
        assert_eq!(support(&g, &g.longest()).labels(), vec![1, 2]);
    }

    #[test]
    fn double_coset_factor_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        let one = s(&[1], 2);
        let (v, up) = double_coset_factor(&g, &w(&g, &[2]), &w(&g, &[1]), one, one).unwrap();
        assert_eq!((v, up), (w(&g, &[1]), g.identity()));
        let (v, up) = double_coset_factor(&g, &w(&g, &[2]), &g.identity(), one, one).unwrap();
        assert_eq!((v, up), (g.identity(), g.identity()));
        assert!(double_coset_factor(&g, &w(&g, &[1]), &g.identity(), one, one).is_err());
        assert!(double_coset_factor(&g, &w(&g, &[2]), &w(&g, &[2]), one, one).is_err());

        let a3 = WeylGroup::from_type("A3").unwrap();
        let j12 = s(&[1, 2], 3);
        let w3 = w(&a3, &[3]);
        assert_eq!(conjugate_intersection(&a3, &w3, j12, j12).labels(), vec![1]);
        let u = w(&a3, &[1]);
        let (v, up) = double_coset_factor(&a3, &w3, &u, j12, j12).unwrap();
        assert_eq!(a3.compose(&u, &w3), a3.product([&v, &w3, &up]));
        assert!(a3.in_parabolic(&v, j12) && is_min_right(&a3, &v, s(&[1], 3)));
    }

    #[test]
    fn double_coset_factor_exhaustive() {
        for t in ["A3", "B3", "G2", "A2"] {
            let g = WeylGroup::from_type(t).unwrap();
            let full = g.full_subset();
            for jp in full.subsets() {
                for j in full.subsets() {
                    for wd in g.elements().iter().filter(|x| is_min_double(&g, x, jp, j)) {
                        for u in g.parabolic(jp).iter() {
                            double_coset_factor(&g, wd, u, jp, j).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parabolic_lift_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        let two = s(&[2], 2);
        let s1 = w(&g, &[1]);
        let u = w(&g, &[1, 2]);
        assert_eq!(parabolic_lift(&g, two, &s1, &u, &g.identity()).unwrap(), w(&g, &[2]));
        assert_eq!(parabolic_lift(&g, two, &s1, &u, &w(&g, &[2])).unwrap(), u);
        assert_eq!(
            parabolic_lift(&g, two, &s1, &g.identity(), &g.identity()).unwrap(),
            g.identity()
        );
        assert!(parabolic_lift(&g, two, &w(&g, &[2]), &g.identity(), &g.identity()).is_err());
        assert!(parabolic_lift(&g, two, &s1, &s1, &g.identity()).is_err());
    }

    #[test]
    fn parabolic_lift_exhaustive() {
        for t in ["A3", "B2", "G2"] {
            let g = WeylGroup::from_type(t).unwrap();
            for j in g.full_subset().subsets() {
                for wj in g.elements().iter().filter(|x| is_min_right(&g, x, j)) {
                    for u in g.elements() {
                        let uw = g.compose(u, wj);
                        if uw.length() != u.length() + wj.length() {
                            continue;
                        }
                        let (x, v) = coset_decompose(&g, &uw, j, Side::Right);
                        for vp in g.parabolic(j).iter().filter(|vp| bruhat_leq(&g, vp, &v)) {
                            let up = parabolic_lift(&g, j, wj, u, vp).unwrap();
                            assert!(bruhat_leq(&g, &up, u));
                            assert_eq!(g.compose(&up, wj), g.compose(&x, vp));
                        }
                    }
                }
            }
        }
    }
}
