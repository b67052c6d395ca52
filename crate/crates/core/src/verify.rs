//! Exhaustive cross-checks of the fast implementations against brute-force
//! oracles and against each other, over small root data.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bruhat::{
    bruhat_leq, lower_set, max_shift_product, min_shift_product, shift_comparison_witness, WitnessPart,
};
use crate::cells::{coset_descent_bound_holds, i2, w_set, x_grouping, PrimeOrder};
use crate::closure::{piece_closure, springer_closure_leq, twisted_orbit_closure, BxBOrbit};
use crate::coset::{min_coset_reps, CosetKind};
use crate::error::Result;
use crate::oracle::BruteGroup;
use crate::order::{closure_witness, geq_twisted, Method, PiecePoset};
use crate::piece::{enumerate_pieces, is_ad_stable, j_infinity, PieceIndex};
use crate::subset::Subset;
use crate::twist::Automorphism;
use crate::weyl::{Element, WeylGroup};

/// A root datum with a chosen diagram automorphism.
pub struct Setting {
    pub label: String,
    pub group: WeylGroup,
    pub delta: Automorphism,
    brute: BruteGroup,
    to_brute: HashMap<Element, usize>,
}

impl Setting {
    pub fn new(type_spec: &str, delta_spec: &str) -> Result<Self> {
        let group = WeylGroup::from_type(type_spec)?;
        let delta = Automorphism::parse(delta_spec, group.system())?;
        Ok(Self::from_parts(format!("{type_spec} delta={delta}"), group, delta))
    }

    pub fn from_parts(label: String, group: WeylGroup, delta: Automorphism) -> Self {
        let brute = BruteGroup::new(group.datum(), 1 << 20);
        let to_brute = group
            .elements()
            .iter()
            .map(|u| (u.clone(), brute.from_word(&group.reduced_word(u))))
            .collect();
        Setting { label, group, delta, brute, to_brute }
    }

    fn b(&self, u: &Element) -> usize {
        self.to_brute[u]
    }

    fn delta_map(&self) -> Vec<usize> {
        self.delta.mapping().to_vec()
    }
}

/// The standard acceptance data, optionally limited by rank.
pub fn standard_settings(max_rank: usize) -> Vec<(&'static str, &'static str)> {
    [
        ("A1", "id"),
        ("A1xA1", "id"),
        ("A1xA1", "1:2,2:1"),
        ("A2", "id"),
        ("A2", "1:2,2:1"),
        ("B2", "id"),
        ("G2", "id"),
        ("A3", "id"),
        ("A3", "1:3,3:1"),
    ]
    .into_iter()
    .filter(|(t, _)| {
        crate::cartan::CartanDatum::parse_type(t).map(|d| d.rank() <= max_rank).unwrap_or(false)
    })
    .collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    BruhatOracle,
    JInfinity,
    ShiftProducts,
    TwistedOrderMethods,
    PartialOrder,
    ClosureWitness,
    SpringerCriterion,
    CellGroups,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::BruhatOracle,
        Check::JInfinity,
        Check::ShiftProducts,
        Check::TwistedOrderMethods,
        Check::PartialOrder,
        Check::ClosureWitness,
        Check::SpringerCriterion,
        Check::CellGroups,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::BruhatOracle => "bruhat order matches subword oracle",
            Check::JInfinity => "J_inf iteration matches subset maximum",
            Check::ShiftProducts => "min/max shift products and comparison witnesses",
            Check::TwistedOrderMethods => "twisted order: conjugation, shift and oracle agree",
            Check::PartialOrder => "<=_delta is a partial order",
            Check::ClosureWitness => "piece closure matches witness construction",
            Check::SpringerCriterion => "orbit closure criterion specializations",
            Check::CellGroups => "X-groups, factor uniqueness, <=' antisymmetry, descent lemmas",
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            Check::BruhatOracle => "bruhat",
            Check::JInfinity => "j-infinity",
            Check::ShiftProducts => "shift-products",
            Check::TwistedOrderMethods => "twisted-order",
            Check::PartialOrder => "partial-order",
            Check::ClosureWitness => "closure-witness",
            Check::SpringerCriterion => "orbit-closure",
            Check::CellGroups => "cell-groups",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub check: Check,
    pub setting: String,
    /// Number of individual comparisons made.
    pub cases: usize,
    /// First failure, if any.
    pub failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Counts cases and keeps the first failure.
#[derive(Default)]
struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
        self
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

pub fn run(check: Check, s: &Setting) -> Outcome {
    let t = match check {
        Check::BruhatOracle => bruhat_oracle(s),
        Check::JInfinity => j_infinity_oracle(s),
        Check::ShiftProducts => shift_products(s),
        Check::TwistedOrderMethods => twisted_order_methods(s),
        Check::PartialOrder => partial_order(s),
        Check::ClosureWitness => closure_vs_witness(s),
        Check::SpringerCriterion => springer(s),
        Check::CellGroups => cell_groups(s),
    };
    Outcome {
        check,
        setting: s.label.clone(),
        cases: t.cases,
        failure: t.failure,
    }
}

fn bruhat_oracle(s: &Setting) -> Tally {
    let g = &s.group;
    par_tally(g.elements(), |u| {
        let mut t = Tally::default();
        for v in g.elements() {
            let fast = bruhat_leq(g, u, v);
            t.check(fast == s.brute.bruhat_leq(s.b(u), s.b(v)), || {
                format!("{} <= {}: fast says {fast}", g.word_string(u), g.word_string(v))
            });
        }
        t
    })
}

fn j_infinity_oracle(s: &Setting) -> Tally {
    let (g, d) = (&s.group, &s.delta);
    let dm = s.delta_map();
    par_tally(&enumerate_pieces(g, d), |p| {
        let mut t = Tally::default();
        let fast = j_infinity(g, d, p.j, &p.w).ok();
        let brute = s.brute.j_infinity(&dm, p.j, s.b(&p.w));
        t.check(fast.is_some() && fast == brute, || {
            format!("{}: iteration {fast:?}, brute {brute:?}", p.display(g))
        });
        t.check(s.brute.ad_stable_family_union_closed(&dm, p.j, s.b(&p.w)), || {
            format!("{}: stable family not union-closed", p.display(g))
        });
        t
    })
}

fn shift_products(s: &Setting) -> Tally {
    let g = &s.group;
    par_tally(g.elements(), |u| {
        let mut t = Tally::default();
        for w in g.elements() {
            let (lo, hi) = s.brute.min_max_products(s.b(u), s.b(w));
            let show = || format!("u={}, w={}", g.word_string(u), g.word_string(w));
            t.check(lo == Some(s.b(&min_shift_product(g, u, w))), || format!("min product at {}", show()));
            t.check(hi == Some(s.b(&max_shift_product(g, u, w))), || format!("max product at {}", show()));
            for wp in lower_set(g, w) {
                for part in [WitnessPart::One, WitnessPart::Two] {
                    let ok = shift_comparison_witness(g, u, w, &wp, part).is_ok_and(|v| {
                        bruhat_leq(g, &v, u)
                            && match part {
                                WitnessPart::One => bruhat_leq(g, &g.compose(&v, &wp), &g.compose(u, w)),
                                WitnessPart::Two => bruhat_leq(g, &g.compose(u, &wp), &g.compose(&v, w)),
                            }
                    });
                    t.check(ok, || format!("witness {part:?} at {}, w'={}", show(), g.word_string(&wp)));
                }
            }
        }
        t
    })
}

fn twisted_order_methods(s: &Setting) -> Tally {
    let (g, d) = (&s.group, &s.delta);
    let dm = s.delta_map();
    par_tally(&enumerate_pieces(g, d), |p| {
        let mut t = Tally::default();
        let bw = s.b(&p.w);
        let brute_class = s.brute.shift_class(&dm, bw, p.j);
        let mut fast_class: Vec<usize> = crate::order::shift_class(g, d, &p.w, p.j).iter().map(|x| s.b(x)).collect();
        fast_class.sort();
        t.check(fast_class == brute_class, || format!("{}: shift classes differ", p.display(g)));
        for x in g.elements() {
            let bx = s.b(x);
            let conj = geq_twisted(g, d, x, p, Method::Conjugate);
            let shift = geq_twisted(g, d, x, p, Method::Shift);
            let b1 = s.brute.geq_twisted_1(&dm, bx, p.j, bw);
            let b3 = brute_class.iter().any(|&c| s.brute.bruhat_leq(c, bx));
            let b2 = s.brute.geq_twisted_2(&dm, bx, p.j, bw);
            let show = || format!("w'={} vs {}", g.word_string(x), p.display(g));
            t.check(conj == shift && shift == b1 && b1 == b3, || {
                format!("{}: conj {conj}, shift {shift}, brute(1) {b1}, brute(3) {b3}", show())
            });
            t.check(!b2 || b1, || format!("{}: condition (2) adds a positive", show()));
        }
        t
    })
}

fn partial_order(s: &Setting) -> Tally {
    let (g, d) = (&s.group, &s.delta);
    let poset = PiecePoset::new(g, d, enumerate_pieces(g, d));
    let mut t = Tally::default();
    let n = poset.len();
    let violation = poset.partial_order_violation();
    t.cases = n * n * n;
    t.failure = violation;
    t
}

fn closure_vs_witness(s: &Setting) -> Tally {
    let (g, d) = (&s.group, &s.delta);
    let all = enumerate_pieces(g, d);
    par_tally(&all, |p| {
        let mut t = Tally::default();
        let closure = piece_closure(g, d, p);
        for q in &all {
            let via_order = closure.contains(q);
            let via_witness = if q.j.is_subset(p.j) {
                match closure_witness(g, d, p, q.j, &q.w) {
                    Ok(w) => w.is_some(),
                    Err(e) => {
                        t.check(false, || format!("{} in {}: {e}", q.display(g), p.display(g)));
                        continue;
                    }
                }
            } else {
                false
            };
            t.check(via_order == via_witness, || {
                format!("{} in closure of {}: order {via_order}, witness {via_witness}", q.display(g), p.display(g))
            });
        }
        t
    })
}

fn springer(s: &Setting) -> Tally {
    let (g, d) = (&s.group, &s.delta);
    let subsets: Vec<Subset> = g.full_subset().subsets().collect();
    let reps: HashMap<Subset, Vec<Element>> = subsets
        .iter()
        .map(|&k| (k, min_coset_reps(g, Subset::empty(), k, CosetKind::Right)))
        .collect();
    let pieces = enumerate_pieces(g, d);
    par_tally(&pieces, |p| {
        let mut t = Tally::default();
        // Untwisted closure of [J, w, 1] for w in W^J.
        if crate::coset::is_min_right(g, &p.w, p.j) {
            let a = BxBOrbit { j: p.j, x: p.w.clone(), w: g.identity() };
            for &k in &subsets {
                for x in &reps[&k] {
                    for u in g.elements() {
                        let b = BxBOrbit { j: k, x: x.clone(), w: u.clone() };
                        let expected = k.is_subset(p.j) && g.in_parabolic(u, p.j) && bruhat_leq(g, &g.compose(&p.w, u), x);
                        t.check(springer_closure_leq(g, &a, &b) == expected, || {
                            format!("[{},{},e] vs [{},{},{}]", p.j, g.word_string(&p.w), k, g.word_string(x), g.word_string(u))
                        });
                    }
                }
            }
        }
        // Twisted closure translated through delta.
        let twisted: std::collections::HashSet<(Subset, Element, Element)> =
            twisted_orbit_closure(g, d, p).into_iter().collect();
        let a = BxBOrbit { j: d.apply_subset(p.j), x: p.w.clone(), w: g.identity() };
        for k in p.j.subsets() {
            for x in &reps[&d.apply_subset(k)] {
                for u in g.elements() {
                    let b = BxBOrbit { j: d.apply_subset(k), x: x.clone(), w: d.apply_element(g, u) };
                    let lhs = twisted.contains(&(k, x.clone(), u.clone()));
                    t.check(lhs == springer_closure_leq(g, &a, &b), || {
                        format!("twisted ({k},{},{}) under {}", g.word_string(x), g.word_string(u), p.display(g))
                    });
                }
            }
        }
        t
    })
}

fn cell_groups(s: &Setting) -> Tally {
    let (g, d) = (&s.group, &s.delta);
    let pieces = enumerate_pieces(g, d);
    let mut t = par_tally(&pieces, |p| {
        let mut t = Tally::default();
        // X-groups partition the closure.
        let mut union: Vec<PieceIndex> = x_grouping(g, d, p).into_iter().flat_map(|c| c.members).collect();
        let n = union.len();
        crate::piece::sort_pieces(g, &mut union);
        union.dedup();
        t.check(union.len() == n, || format!("{}: X-groups overlap", p.display(g)));
        t.check(union == piece_closure(g, d, p), || format!("{}: X-groups miss the closure", p.display(g)));
        // Factor uniqueness of u v.
        let ws = w_set(g, d, p);
        let mut seen: HashMap<Element, (Element, Element)> = HashMap::new();
        for u in &ws {
            for v in g.parabolic(d.apply_subset(i2(g, d, p.j, u))).iter() {
                let uv = g.compose(u, v);
                let clash = seen.insert(uv.clone(), (u.clone(), v.clone()));
                t.check(clash.is_none(), || format!("{}: {} factors twice", p.display(g), g.word_string(&uv)));
            }
        }
        // Antisymmetry of <=' under the finiteness condition.
        let finite = g
            .elements()
            .iter()
            .filter(|u| geq_twisted(g, d, u, p, Method::Conjugate))
            .all(|u| i2(g, d, p.j, u).is_empty());
        if finite {
            let order = PrimeOrder::new(g, d, p);
            let cycle = order.two_cycle();
            t.check(cycle.is_none(), || format!("{}: <=' has a 2-cycle {cycle:?}", p.display(g)));
        }
        // Right factors from W_{delta(K)} can be dropped when Ad(w') delta(K) = K.
        for k in p.j.subsets() {
            let dk_group = g.parabolic(d.apply_subset(k));
            for wp in g.elements().iter().filter(|wp| is_ad_stable(g, d, k, wp)) {
                let some = dk_group.iter().any(|v| geq_twisted(g, d, &g.compose(wp, v), p, Method::Conjugate));
                if some {
                    t.check(geq_twisted(g, d, wp, p, Method::Conjugate), || {
                        format!("{}: K={k}, w'={} drops", p.display(g), g.word_string(wp))
                    });
                }
            }
        }
        t
    });
    // Coset descent bound, independent of delta.
    for j in g.full_subset().subsets() {
        for w in min_coset_reps(g, Subset::empty(), j, CosetKind::Right) {
            for v in g.parabolic(j).iter() {
                for u in g.elements() {
                    t.check(coset_descent_bound_holds(g, j, u, &w, v), || {
                        format!("descent bound J={j}, u={}, w={}, v={}", g.word_string(u), g.word_string(&w), g.word_string(v))
                    });
                }
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_in_rank_two() {
        for (t, d) in standard_settings(2) {
            let s = Setting::new(t, d).unwrap();
            for c in Check::ALL {
                let o = run(c, &s);
                assert!(o.passed(), "{} on {}: {:?}", c.name(), s.label, o.failure);
                assert!(o.cases > 0);
            }
        }
    }

    #[test]
    fn settings_filter_by_rank() {
        assert_eq!(standard_settings(1), vec![("A1", "id")]);
        assert_eq!(standard_settings(3).len(), 9);
    }
}
