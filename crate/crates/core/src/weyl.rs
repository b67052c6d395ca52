//! Weyl group elements as signed permutations of the root system.
//!
//! An [`Element`] stores the image of every root index under the element,
//! so equality, hashing and composition never touch words.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cartan::{CartanDatum, Root, RootSystem};
use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    action: Box<[u16]>,
    length: u16,
    parent: u64,
}

impl Element {
    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Image of root index `k`.
    pub fn image(&self, k: usize) -> usize {
        self.action[k] as usize
    }

    pub fn root_action(&self) -> &[u16] {
        &self.action
    }

    fn num_positive(&self) -> usize {
        self.action.len() / 2
    }

    /// Index `k` with `self(root k) = root target`.
    fn preimage(&self, target: usize) -> usize {
        self.action
            .iter()
            .position(|&x| x as usize == target)
            .expect("root action is a permutation")
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(len={}, {:?})", self.length, self.action)
    }
}

fn count_inversions(action: &[u16]) -> u16 {
    let np = action.len() / 2;
    action[..np].iter().filter(|&&x| x as usize >= np).count() as u16
}

/// The Weyl group of a Cartan datum, with lazily built enumeration tables.
pub struct WeylGroup {
    system: RootSystem,
    parent: u64,
    gens: Vec<Element>,
    identity: Element,
    table: OnceLock<ElementTable>,
    parabolics: Mutex<HashMap<Subset, Arc<[Element]>>>,
    words: Mutex<HashMap<Element, Arc<Vec<Vec<usize>>>>>,
}

struct ElementTable {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylGroup")
            .field("cartan", &self.system.datum())
            .finish()
    }
}

impl WeylGroup {
    pub fn new(datum: CartanDatum) -> Result<Self> {
        Ok(Self::from_root_system(RootSystem::new(datum)?))
    }

    pub fn from_type(spec: &str) -> Result<Self> {
        Self::new(CartanDatum::parse_type(spec)?)
    }

    pub fn from_root_system(system: RootSystem) -> Self {
        let parent = u64::from_str_radix(&system.digest()[..16], 16).unwrap_or(0);
        let identity = Element {
            action: (0..system.len() as u16).collect(),
            length: 0,
            parent,
        };
        let gens = (0..system.rank())
            .map(|i| {
                let action: Box<[u16]> = system.reflection(i).into();
                Element {
                    length: count_inversions(&action),
                    action,
                    parent,
                }
            })
            .collect();
        WeylGroup {
            system,
            parent,
            gens,
            identity,
            table: OnceLock::new(),
            parabolics: Mutex::new(HashMap::new()),
            words: Mutex::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn datum(&self) -> &CartanDatum {
        self.system.datum()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn full_subset(&self) -> Subset {
        Subset::full(self.rank())
    }

    pub fn identity(&self) -> Element {
        self.identity.clone()
    }

    /// Simple reflection for 0-based index `i`.
    pub fn gen(&self, i: usize) -> &Element {
        &self.gens[i]
    }

    pub fn owns(&self, u: &Element) -> bool {
        u.parent == self.parent && u.action.len() == self.system.len()
    }

    /// `s_{i1} s_{i2} ... s_{ik}` for 1-based labels.
    pub fn from_word(&self, word: &[usize]) -> Result<Element> {
        let mut u = self.identity();
        for &l in word {
            if l == 0 || l > self.rank() {
                return Err(Error::InvalidGenerator(l));
            }
            u = self.mul_gen(&u, l - 1);
        }
        Ok(u)
    }

    /// `u v`, panicking on elements of a different group.
    pub fn compose(&self, u: &Element, v: &Element) -> Element {
        assert!(self.owns(u) && self.owns(v), "incompatible root systems");
        let action: Box<[u16]> = v.action.iter().map(|&k| u.action[k as usize]).collect();
        Element {
            length: count_inversions(&action),
            action,
            parent: self.parent,
        }
    }

    pub fn try_compose(&self, u: &Element, v: &Element) -> Result<Element> {
        if !self.owns(u) || !self.owns(v) {
            return Err(Error::IncompatibleRootSystems);
        }
        Ok(self.compose(u, v))
    }

    /// Product of several elements, left to right.
    pub fn product<'a, I: IntoIterator<Item = &'a Element>>(&self, factors: I) -> Element {
        factors
            .into_iter()
            .fold(self.identity(), |acc, x| self.compose(&acc, x))
    }

    pub fn inverse(&self, u: &Element) -> Element {
        let mut action = vec![0u16; u.action.len()].into_boxed_slice();
        for (k, &img) in u.action.iter().enumerate() {
            action[img as usize] = k as u16;
        }
        Element {
            action,
            length: u.length,
            parent: u.parent,
        }
    }

    /// `u s_i`.
    pub fn mul_gen(&self, u: &Element, i: usize) -> Element {
        let s = self.system.reflection(i);
        let action: Box<[u16]> = s.iter().map(|&k| u.action[k as usize]).collect();
        Element {
            length: count_inversions(&action),
            action,
            parent: u.parent,
        }
    }

    /// `s_i u`.
    pub fn gen_mul(&self, i: usize, u: &Element) -> Element {
        let s = self.system.reflection(i);
        let action: Box<[u16]> = u.action.iter().map(|&k| s[k as usize]).collect();
        Element {
            length: count_inversions(&action),
            action,
            parent: u.parent,
        }
    }

    pub fn length(&self, u: &Element) -> usize {
        u.length()
    }

    /// `sigma u sigma^{-1}` for a root permutation `sigma` that normalizes the
    /// group (a diagram symmetry).
    pub(crate) fn conjugate_by_root_perm(&self, u: &Element, sigma: &[u16]) -> Element {
        let mut action = vec![0u16; u.action.len()].into_boxed_slice();
        for (k, &img) in u.action.iter().enumerate() {
            action[sigma[k] as usize] = sigma[img as usize];
        }
        Element {
            action,
            length: u.length,
            parent: u.parent,
        }
    }

    pub fn act_on_root(&self, u: &Element, root: &Root) -> Result<Root> {
        if !self.owns(u) {
            return Err(Error::IncompatibleRootSystems);
        }
        let k = self
            .system
            .index_of(root)
            .ok_or_else(|| Error::Precondition(format!("{root} is not a root")))?;
        Ok(self.system.root(u.image(k)).clone())
    }

    /// Whether `u(alpha_i) < 0`.
    pub fn is_right_descent(&self, u: &Element, i: usize) -> bool {
        u.image(i) >= u.num_positive()
    }

    /// Whether `u^{-1}(alpha_i) < 0`.
    pub fn is_left_descent(&self, u: &Element, i: usize) -> bool {
        u.preimage(i) >= u.num_positive()
    }

    pub fn descents(&self, u: &Element, side: Side) -> Subset {
        Subset::from_indices((0..self.rank()).filter(|&i| match side {
            Side::Right => self.is_right_descent(u, i),
            Side::Left => self.is_left_descent(u, i),
        }))
    }

    /// Root index of `u^{-1}(alpha_i)`.
    pub fn inverse_image_of_simple(&self, u: &Element, i: usize) -> usize {
        u.preimage(i)
    }

    /// Deterministic reduced word (1-based labels): repeatedly strips the
    /// smallest left descent.
    pub fn reduced_word(&self, u: &Element) -> Vec<usize> {
        let mut word = Vec::with_capacity(u.length());
        let mut cur = u.clone();
        while !cur.is_identity() {
            let i = (0..self.rank())
                .find(|&i| self.is_left_descent(&cur, i))
                .expect("non-identity element has a left descent");
            word.push(i + 1);
            cur = self.gen_mul(i, &cur);
        }
        word
    }

    /// Every reduced word of `u`, sorted.
    pub fn all_reduced_words(&self, u: &Element) -> Vec<Vec<usize>> {
        let mut memo = self.words.lock().unwrap();
        self.reduced_words_memo(u, &mut memo).as_ref().clone()
    }

    fn reduced_words_memo(
        &self,
        u: &Element,
        memo: &mut HashMap<Element, Arc<Vec<Vec<usize>>>>,
    ) -> Arc<Vec<Vec<usize>>> {
        if let Some(w) = memo.get(u) {
            return w.clone();
        }
        let words = if u.is_identity() {
            vec![Vec::new()]
        } else {
            let mut set = BTreeSet::new();
            for i in (0..self.rank()).filter(|&i| self.is_right_descent(u, i)) {
                let shorter = self.mul_gen(u, i);
                for w in self.reduced_words_memo(&shorter, memo).iter() {
                    let mut w = w.clone();
                    w.push(i + 1);
                    set.insert(w);
                }
            }
            set.into_iter().collect()
        };
        let words = Arc::new(words);
        memo.insert(u.clone(), words.clone());
        words
    }

    /// The longest element `w_0^J` of `W_J`.
    pub fn longest_element(&self, j: Subset) -> Element {
        let mut w = self.identity();
        while let Some(i) = j.iter().find(|&i| !self.is_right_descent(&w, i)) {
            w = self.mul_gen(&w, i);
        }
        w
    }

    pub fn longest(&self) -> Element {
        self.longest_element(self.full_subset())
    }

    /// Whether `u` lies in the parabolic subgroup `W_J`.
    pub fn in_parabolic(&self, u: &Element, j: Subset) -> bool {
        // u in W_J iff u permutes Phi_J^+ into Phi_J and has no other inversions;
        // equivalently every inversion lies in Phi_J.
        let np = u.num_positive();
        (0..np).all(|k| u.image(k) < np || self.system.support_of(k).is_subset(j))
    }

    /// All of `W_J`, in breadth-first discovery order from `e`.
    pub fn parabolic(&self, j: Subset) -> Arc<[Element]> {
        if let Some(p) = self.parabolics.lock().unwrap().get(&j) {
            return p.clone();
        }
        let elements: Arc<[Element]> = self.bfs(j).into();
        self.parabolics
            .lock()
            .unwrap()
            .insert(j, elements.clone());
        elements
    }

    fn bfs(&self, j: Subset) -> Vec<Element> {
        let mut seen: HashMap<Element, ()> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(self.identity(), ());
        queue.push_back(self.identity());
        while let Some(u) = queue.pop_front() {
            for i in j.iter() {
                let next = self.mul_gen(&u, i);
                if seen.insert(next.clone(), ()).is_none() {
                    queue.push_back(next);
                }
            }
            order.push(u);
        }
        order
    }

    fn table(&self) -> &ElementTable {
        self.table.get_or_init(|| {
            let elements = self.bfs(self.full_subset());
            let index = elements
                .iter()
                .enumerate()
                .map(|(k, e)| (e.clone(), k))
                .collect();
            ElementTable { elements, index }
        })
    }

    /// The whole group in breadth-first discovery order.
    pub fn elements(&self) -> &[Element] {
        &self.table().elements
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    /// Position of `u` in [`WeylGroup::elements`].
    pub fn index_of(&self, u: &Element) -> Option<usize> {
        self.table().index.get(u).copied()
    }

    /// Total order by length, then by reduced word.
    pub fn canonical_cmp(&self, u: &Element, v: &Element) -> Ordering {
        u.length()
            .cmp(&v.length())
            .then_with(|| self.reduced_word(u).cmp(&self.reduced_word(v)))
    }

    pub fn sort_canonical(&self, items: &mut [Element]) {
        let mut keyed: Vec<(usize, Vec<usize>, Element)> = items
            .iter()
            .map(|e| (e.length(), self.reduced_word(e), e.clone()))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        for (slot, (_, _, e)) in items.iter_mut().zip(keyed) {
            *slot = e;
        }
    }

    /// Reduced word rendered as concatenated labels, or `e`.
    pub fn word_string(&self, u: &Element) -> String {
        let w = self.reduced_word(u);
        if w.is_empty() {
            "e".to_string()
        } else if self.rank() < 10 {
            w.iter().map(|l| l.to_string()).collect()
        } else {
            w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    /// Parses a word written as concatenated digits (`121`), comma-separated
    /// labels (`1,2,1`), or `e`/empty for the identity.
    pub fn parse_word(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(self.identity());
        }
        let labels: Vec<usize> = if t.contains(',') || t.contains(' ') {
            t.split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad label {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad label {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        self.from_word(&labels)
    }
}
