//! Bruhat order, lower intervals, and the minimal/maximal products
//! `min {v w : v <= u}` and `max {v w : v <= u}`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::weyl::{Element, WeylGroup};

/// `u <= v` in Bruhat order.
///
/// Descent recursion: with `s_i v < v`, `u <= v` iff `min(u, s_i u) <= s_i v`.
pub fn bruhat_leq(g: &WeylGroup, u: &Element, v: &Element) -> bool {
    let mut u = u.clone();
    let mut v = v.clone();
    loop {
        if u.length() > v.length() {
            return false;
        }
        if u.is_identity() {
            return true;
        }
        if u.length() == v.length() {
            return u == v;
        }
        let i = (0..g.rank())
            .find(|&i| g.is_left_descent(&v, i))
            .expect("non-identity element has a left descent");
        if g.is_left_descent(&u, i) {
            u = g.gen_mul(i, &u);
        }
        v = g.gen_mul(i, &v);
    }
}

pub fn bruhat_lt(g: &WeylGroup, u: &Element, v: &Element) -> bool {
    u != v && bruhat_leq(g, u, v)
}

/// `{v : v <= u}`, sorted canonically.
pub fn lower_set(g: &WeylGroup, u: &Element) -> Vec<Element> {
    let mut set: HashSet<Element> = HashSet::new();
    set.insert(g.identity());
    // Fold a reduced word from the right: [e, x] -> [e, s x] ∪ [e, x].
    for &l in g.reduced_word(u).iter().rev() {
        let lifted: Vec<Element> = set.iter().map(|x| g.gen_mul(l - 1, x)).collect();
        set.extend(lifted);
    }
    let mut out: Vec<Element> = set.into_iter().collect();
    g.sort_canonical(&mut out);
    out
}

/// Lower covers of `v`: `u < v` with `l(u) = l(v) - 1`.
pub fn covers(g: &WeylGroup, v: &Element) -> Vec<Element> {
    lower_set(g, v)
        .into_iter()
        .filter(|u| u.length() + 1 == v.length())
        .collect()
}

/// The unique Bruhat-minimal element of `{v w : v <= u}`.
pub fn min_shift_product(g: &WeylGroup, u: &Element, w: &Element) -> Element {
    shift_product(g, u, w, |g, y1, sy1| if bruhat_lt(g, sy1, y1) { sy1.clone() } else { y1.clone() })
}

/// The unique Bruhat-maximal element of `{v w : v <= u}`.
pub fn max_shift_product(g: &WeylGroup, u: &Element, w: &Element) -> Element {
    shift_product(g, u, w, |g, y1, sy1| if bruhat_lt(g, y1, sy1) { sy1.clone() } else { y1.clone() })
}

fn shift_product(
    g: &WeylGroup,
    u: &Element,
    w: &Element,
    pick: impl Fn(&WeylGroup, &Element, &Element) -> Element + Copy,
) -> Element {
    if u.is_identity() {
        return w.clone();
    }
    let i = (0..g.rank())
        .find(|&i| g.is_left_descent(u, i))
        .expect("non-identity element has a left descent");
    let y1 = shift_product(g, &g.gen_mul(i, u), w, pick);
    let sy1 = g.gen_mul(i, &y1);
    pick(g, &y1, &sy1)
}

/// Same recursion with an explicit sequence of left-descent choices; used to
/// check that the result does not depend on the choice.
pub fn shift_product_with_choices(
    g: &WeylGroup,
    u: &Element,
    w: &Element,
    maximal: bool,
    choose: &mut impl FnMut(&[usize]) -> usize,
) -> Element {
    if u.is_identity() {
        return w.clone();
    }
    let descents: Vec<usize> = (0..g.rank()).filter(|&i| g.is_left_descent(u, i)).collect();
    let i = descents[choose(&descents) % descents.len()];
    let y1 = shift_product_with_choices(g, &g.gen_mul(i, u), w, maximal, choose);
    let sy1 = g.gen_mul(i, &y1);
    let keep_s = if maximal {
        bruhat_lt(g, &y1, &sy1)
    } else {
        bruhat_lt(g, &sy1, &y1)
    };
    if keep_s {
        sy1
    } else {
        y1
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum WitnessPart {
    /// `v <= u` with `v w' <= u w`.
    One,
    /// `v' <= u` with `u w' <= v' w`.
    Two,
}

/// Witness for the existence statements comparing `u w` against shifts of
/// `w' <= w`, found by search over the lower interval of `u`.
pub fn shift_comparison_witness(
    g: &WeylGroup,
    u: &Element,
    w: &Element,
    wprime: &Element,
    part: WitnessPart,
) -> Result<Element> {
    if !bruhat_leq(g, wprime, w) {
        return Err(Error::Precondition("w' not <= w".into()));
    }
    let uw = g.compose(u, w);
    let uwp = g.compose(u, wprime);
    lower_set(g, u)
        .into_iter()
        .find(|v| match part {
            WitnessPart::One => bruhat_leq(g, &g.compose(v, wprime), &uw),
            WitnessPart::Two => bruhat_leq(g, &uwp, &g.compose(v, w)),
        })
        .ok_or_else(|| Error::ProofStep("no witness in the lower interval".into()))
}

/// Dense Bruhat order matrix over [`WeylGroup::elements`] indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatMatrix {
    n: usize,
    bits: Vec<u64>,
}

impl BruhatMatrix {
    pub fn compute(g: &WeylGroup) -> Self {
        use rayon::prelude::*;
        let els = g.elements();
        let n = els.len();
        let words = n.div_ceil(64);
        let rows: Vec<Vec<u64>> = els
            .par_iter()
            .map(|u| {
                let mut row = vec![0u64; words];
                for (k, v) in els.iter().enumerate() {
                    if bruhat_leq(g, u, v) {
                        row[k / 64] |= 1 << (k % 64);
                    }
                }
                row
            })
            .collect();
        BruhatMatrix {
            n,
            bits: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `elements[a] <= elements[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let words = self.n.div_ceil(64);
        self.bits[a * words + b / 64] >> (b % 64) & 1 == 1
    }

    /// Rows as `0`/`1` strings.
    pub fn to_rows(&self) -> Vec<String> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| if self.leq(a, b) { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn from_rows(rows: &[String]) -> Option<Self> {
        let n = rows.len();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return None;
            }
            for (b, c) in row.chars().enumerate() {
                match c {
                    '1' => bits[a * words + b / 64] |= 1 << (b % 64),
                    '0' => {}
                    _ => return None,
                }
            }
        }
        Some(BruhatMatrix { n, bits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(g: &WeylGroup, word: &[usize]) -> Element {
        g.from_word(word).unwrap()
    }

    fn brute_set(g: &WeylGroup, u: &Element, wd: &Element) -> Vec<Element> {
        g.elements()
            .iter()
            .filter(|v| bruhat_leq(g, v, u))
            .map(|v| g.compose(v, wd))
            .collect()
    }

    #[test]
    fn bruhat_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        for v in g.elements() {
            assert!(bruhat_leq(&g, &g.identity(), v));
            assert!(bruhat_leq(&g, v, &g.longest()));
        }
        assert!(bruhat_leq(&g, &w(&g, &[1]), &w(&g, &[1, 2])));
        assert!(!bruhat_leq(&g, &w(&g, &[1]), &w(&g, &[2])));
        assert!(bruhat_leq(&g, &w(&g, &[2]), &g.longest()));
    }

    #[test]
    fn lower_set_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        assert_eq!(lower_set(&g, &g.identity()), vec![g.identity()]);
        assert_eq!(
            lower_set(&g, &w(&g, &[1, 2])),
            vec![g.identity(), w(&g, &[1]), w(&g, &[2]), w(&g, &[1, 2])]
        );
        assert_eq!(lower_set(&g, &g.longest()).len(), 6);
        assert_eq!(covers(&g, &g.longest()).len(), 2);
    }

    #[test]
    fn shift_product_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        let s1 = w(&g, &[1]);
        let s2 = w(&g, &[2]);
        let s21 = w(&g, &[2, 1]);
        for x in g.elements() {
            assert_eq!(&min_shift_product(&g, &g.identity(), x), x);
            assert_eq!(&max_shift_product(&g, &g.identity(), x), x);
        }
        assert_eq!(min_shift_product(&g, &s2, &s21), s1);
        assert_eq!(min_shift_product(&g, &s1, &s21), s21);
        assert_eq!(max_shift_product(&g, &s1, &s2), w(&g, &[1, 2]));
        assert_eq!(max_shift_product(&g, &s2, &s21), s21);
    }

    #[test]
    fn shift_products_are_extremal_and_length_formula_holds() {
        for t in ["A3", "B2", "G2"] {
            let g = WeylGroup::from_type(t).unwrap();
            for u in g.elements() {
                for x in g.elements() {
                    let set = brute_set(&g, u, x);
                    let lo = min_shift_product(&g, u, x);
                    let hi = max_shift_product(&g, u, x);
                    assert!(set.iter().all(|y| bruhat_leq(&g, &lo, y) && bruhat_leq(&g, y, &hi)));
                    assert!(set.contains(&lo) && set.contains(&hi));
                    let xi = g.inverse(x);
                    assert_eq!(lo.length() + g.compose(&lo, &xi).length(), x.length());
                    assert_eq!(hi.length(), x.length() + g.compose(&hi, &xi).length());
                }
            }
        }
    }

    #[test]
    fn shift_products_independent_of_descent_choice() {
        let g = WeylGroup::from_type("A3").unwrap();
        for u in g.elements() {
            for x in g.elements().iter().step_by(3) {
                for pick in 0..3 {
                    let mut choose = |d: &[usize]| pick % d.len();
                    let lo = shift_product_with_choices(&g, u, x, false, &mut choose);
                    let hi = shift_product_with_choices(&g, u, x, true, &mut choose);
                    assert_eq!(lo, min_shift_product(&g, u, x));
                    assert_eq!(hi, max_shift_product(&g, u, x));
                }
            }
        }
    }

    #[test]
    fn length_additive_products_are_monotone() {
        for t in ["A2", "B2", "G2", "A1xA1"] {
            let g = WeylGroup::from_type(t).unwrap();
            for a in g.elements() {
                for b in g.elements() {
                    let ab = g.compose(a, b);
                    if ab.length() != a.length() + b.length() {
                        continue;
                    }
                    for a1 in lower_set(&g, a) {
                        for b1 in lower_set(&g, b) {
                            assert!(bruhat_leq(&g, &g.compose(&a1, &b1), &ab));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shift_comparison_examples() {
        let g = WeylGroup::from_type("A2").unwrap();
        let s1 = w(&g, &[1]);
        let s2 = w(&g, &[2]);
        let s12 = w(&g, &[1, 2]);
        let v = shift_comparison_witness(&g, &s1, &s12, &s2, WitnessPart::One).unwrap();
        assert!(bruhat_leq(&g, &v, &s1));
        assert!(bruhat_leq(&g, &g.compose(&v, &s2), &g.compose(&s1, &s12)));
        assert_eq!(v, g.identity());
        assert_eq!(
            shift_comparison_witness(&g, &g.identity(), &s12, &s2, WitnessPart::One).unwrap(),
            g.identity()
        );
        assert!(shift_comparison_witness(&g, &s1, &s2, &s12, WitnessPart::One).is_err());
    }

    #[test]
    fn shift_comparison_always_succeeds() {
        for t in ["A2", "B2", "G2"] {
            let g = WeylGroup::from_type(t).unwrap();
            for u in g.elements() {
                for x in g.elements() {
                    for xp in lower_set(&g, x) {
                        shift_comparison_witness(&g, u, x, &xp, WitnessPart::One).unwrap();
                        shift_comparison_witness(&g, u, x, &xp, WitnessPart::Two).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_round_trip() {
        let g = WeylGroup::from_type("B2").unwrap();
        let m = BruhatMatrix::compute(&g);
        assert_eq!(BruhatMatrix::from_rows(&m.to_rows()), Some(m.clone()));
        for (a, u) in g.elements().iter().enumerate() {
            for (b, v) in g.elements().iter().enumerate() {
                assert_eq!(m.leq(a, b), bruhat_leq(&g, u, v));
            }
        }
    }
}
