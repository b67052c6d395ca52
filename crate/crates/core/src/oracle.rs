//! Brute-force reference implementations.
//!
//! Nothing here goes through the root-permutation arithmetic of
//! [`crate::weyl`]: elements are integer matrices on the simple-root basis,
//! enumerated breadth-first, multiplied through a table, and compared by
//! literal definitions (subword search, full conjugation sweeps, all reduced
//! words).

use std::collections::{HashMap, HashSet, VecDeque};

use crate::cartan::CartanDatum;
use crate::subset::Subset;

type Matrix = Vec<i64>;

/// A Weyl group enumerated by breadth-first search over reflection matrices.
pub struct BruteGroup {
    n: usize,
    mats: Vec<Matrix>,
    words: Vec<Vec<usize>>,
    gens: Vec<usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

fn mat_mul(n: usize, a: &Matrix, b: &Matrix) -> Matrix {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

impl BruteGroup {
    /// Enumerates `W`; panics past `limit` elements.
    pub fn new(datum: &CartanDatum, limit: usize) -> Self {
        let n = datum.rank();
        // Column j of s_i is s_i(alpha_j) = alpha_j - A[i][j] alpha_i.
        let gens: Vec<Matrix> = (0..n)
            .map(|i| {
                let mut m = vec![0i64; n * n];
                for j in 0..n {
                    m[j * n + j] = 1;
                    m[i * n + j] -= datum.entry(i, j) as i64;
                }
                m
            })
            .collect();
        let mut id = vec![0i64; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        let mut mats = vec![id.clone()];
        let mut words = vec![Vec::new()];
        let mut lookup = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (i, s) in gens.iter().enumerate() {
                let m = mat_mul(n, &mats[a], s);
                if lookup.contains_key(&m) {
                    continue;
                }
                assert!(mats.len() < limit, "group larger than {limit}");
                let mut w = words[a].clone();
                w.push(i + 1);
                lookup.insert(m.clone(), mats.len());
                queue.push_back(mats.len());
                mats.push(m);
                words.push(w);
            }
        }
        let size = mats.len();
        let mul: Vec<Vec<usize>> = (0..size)
            .map(|a| (0..size).map(|b| lookup[&mat_mul(n, &mats[a], &mats[b])]).collect())
            .collect();
        let inv = (0..size)
            .map(|a| (0..size).find(|&b| mul[a][b] == 0).expect("group element has an inverse"))
            .collect();
        let gens = (1..=n)
            .map(|l| words.iter().position(|w| w == &[l]).expect("generator enumerated"))
            .collect();
        BruteGroup { n, mats, words, gens, mul, inv }
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// A reduced word (the breadth-first path).
    pub fn word(&self, a: usize) -> &[usize] {
        &self.words[a]
    }

    pub fn length(&self, a: usize) -> usize {
        self.words[a].len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn gen(&self, i: usize) -> usize {
        self.gens[i]
    }

    /// Element of a 1-based word.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &l| self.mul[acc][self.gens[l - 1]])
    }

    /// `delta(a)`: relabel a word of `a` and multiply out.
    pub fn twist(&self, delta: &[usize], a: usize) -> usize {
        let word: Vec<usize> = self.words[a].iter().map(|&l| delta[l - 1] + 1).collect();
        self.from_word(&word)
    }

    /// `W_J` by closure under generators in `J`.
    pub fn parabolic(&self, j: Subset) -> Vec<usize> {
        let gens: Vec<usize> = j.iter().map(|i| self.gen(i)).collect();
        let mut seen = HashSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &s in &gens {
                let b = self.mul[a][s];
                if seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Subword property over the stored reduced word of `v`.
    pub fn bruhat_leq(&self, u: usize, v: usize) -> bool {
        let mut reach: HashSet<usize> = HashSet::from([0usize]);
        for &l in &self.words[v] {
            let s = self.gen(l - 1);
            let next: Vec<usize> = reach.iter().map(|&x| self.mul[x][s]).collect();
            reach.extend(next);
        }
        reach.contains(&u)
    }

    /// The unique element of `set` below all others in Bruhat order.
    fn bruhat_min(&self, set: &[usize]) -> Option<usize> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&y| self.bruhat_leq(m, y)))
    }

    fn bruhat_max(&self, set: &[usize]) -> Option<usize> {
        set.iter()
            .copied()
            .find(|&m| set.iter().all(|&y| self.bruhat_leq(y, m)))
    }

    /// `(min, max)` of `{v w : v <= u}`; `None` if either extreme fails to exist.
    pub fn min_max_products(&self, u: usize, w: usize) -> (Option<usize>, Option<usize>) {
        let set: Vec<usize> = (0..self.order())
            .filter(|&v| self.bruhat_leq(v, u))
            .map(|v| self.mul[v][w])
            .collect();
        (self.bruhat_min(&set), self.bruhat_max(&set))
    }

    /// `w(alpha_i)` as a coordinate vector.
    fn image_of_simple(&self, w: usize, i: usize) -> Vec<i64> {
        (0..self.n).map(|r| self.mats[w][r * self.n + i]).collect()
    }

    fn simple_label(&self, coords: &[i64]) -> Option<usize> {
        let nz: Vec<usize> = (0..self.n).filter(|&r| coords[r] != 0).collect();
        (nz.len() == 1 && coords[nz[0]] == 1).then(|| nz[0])
    }

    /// `Ad(w) delta(K) = K`: `w` permutes `{alpha_{delta k}}` onto `{alpha_k}`.
    pub fn ad_stable(&self, delta: &[usize], k: Subset, w: usize) -> bool {
        let images: Option<Vec<usize>> = k
            .iter()
            .map(|i| self.simple_label(&self.image_of_simple(w, delta[i])))
            .collect();
        match images {
            Some(im) => Subset::from_indices(im.iter().copied()) == k && im.len() == k.len(),
            None => false,
        }
    }

    /// Literal `max{K ⊆ J : Ad(w) delta(K) = K}` over all subsets; `None` if
    /// the family has no largest member.
    pub fn j_infinity(&self, delta: &[usize], j: Subset, w: usize) -> Option<Subset> {
        let family: Vec<Subset> = j.subsets().filter(|&k| self.ad_stable(delta, k, w)).collect();
        family
            .iter()
            .copied()
            .find(|m| family.iter().all(|k| k.is_subset(*m)))
    }

    /// Union-closure of `{K ⊆ J : Ad(w) delta(K) = K}`.
    pub fn ad_stable_family_union_closed(&self, delta: &[usize], j: Subset, w: usize) -> bool {
        let family: HashSet<Subset> = j.subsets().filter(|&k| self.ad_stable(delta, k, w)).collect();
        family
            .iter()
            .all(|a| family.iter().all(|b| family.contains(&a.union(*b))))
    }

    /// Condition (1): `w' >= u^{-1} w delta(u)` for some `u in W_J`, unpruned.
    pub fn geq_twisted_1(&self, delta: &[usize], wprime: usize, j: Subset, w: usize) -> bool {
        self.parabolic(j).into_iter().any(|u| {
            let c = self.mul[self.mul[self.inv[u]][w]][self.twist(delta, u)];
            self.bruhat_leq(c, wprime)
        })
    }

    /// Condition (2): `w' >= u^{-1} w delta(v)` for some `u <= v` in `W_J`.
    pub fn geq_twisted_2(&self, delta: &[usize], wprime: usize, j: Subset, w: usize) -> bool {
        let wj = self.parabolic(j);
        wj.iter().any(|&v| {
            let tail = self.mul[w][self.twist(delta, v)];
            wj.iter()
                .filter(|&&u| self.bruhat_leq(u, v))
                .any(|&u| self.bruhat_leq(self.mul[self.inv[u]][tail], wprime))
        })
    }

    /// All reduced words of `a`, by search over all words of length `l(a)`.
    pub fn all_reduced_words(&self, a: usize) -> Vec<Vec<usize>> {
        let target_len = self.length(a);
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
        while let Some((x, word)) = stack.pop() {
            if word.len() == target_len {
                if x == a {
                    out.push(word);
                }
                continue;
            }
            for i in 0..self.n {
                let y = self.mul[x][self.gen(i)];
                // Prefixes of reduced words are reduced.
                if self.length(y) == word.len() + 1 {
                    let mut w2 = word.clone();
                    w2.push(i + 1);
                    stack.push((y, w2));
                }
            }
        }
        out.sort();
        out
    }

    /// `~_{J,delta}` class by the literal rules over every reduced word.
    pub fn shift_class(&self, delta: &[usize], w: usize, j: Subset) -> Vec<usize> {
        let mut inv_delta = vec![0; self.n];
        for (i, &m) in delta.iter().enumerate() {
            inv_delta[m] = i;
        }
        let mut seen = HashSet::from([w]);
        let mut queue = VecDeque::from([w]);
        while let Some(x) = queue.pop_front() {
            let mut next = Vec::new();
            for word in self.all_reduced_words(x) {
                let (Some(&first), Some(&last)) = (word.first(), word.last()) else {
                    continue;
                };
                let i1 = first - 1;
                if j.contains(i1) {
                    next.push(self.mul[self.mul[self.gen(i1)][x]][self.gen(delta[i1])]);
                }
                let in_ = last - 1;
                if j.contains(inv_delta[in_]) {
                    next.push(self.mul[self.mul[self.gen(inv_delta[in_])][x]][self.gen(in_)]);
                }
            }
            for y in next {
                if self.length(y) == self.length(x) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort();
        out
    }
}
