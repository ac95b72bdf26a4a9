//! Finite groups as concrete objects: elements are dense indices with `0`
//! the identity.

pub mod abelian;
mod hom;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use abelian::{abelian_invariants, AbelianInvariants};
pub use hom::{extend_along_words, kernel, quotient, Homomorphism};
pub use subgroup::{
    closure, commutator_subgroup, derived_subgroup, intersection, is_normal, join, normal_closure,
    Subgroup,
};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Element index inside a [`RealizedGroup`].
pub type Elem = usize;

/// Groups up to this order keep a full multiplication table; larger ones
/// multiply by tracing the canonical word of the right factor.
pub const DENSE_LIMIT: usize = 1024;

/// Default hard cap on realized group orders.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// A finite group given by its right regular permutation representation.
///
/// Element `0` is the identity. Elements are numbered in breadth-first order
/// over the generators, and each element's canonical word is the
/// breadth-first path that reaches it.
#[derive(Clone)]
pub struct RealizedGroup {
    name: String,
    gen_names: Vec<String>,
    gens: Vec<Elem>,
    // right[s][x] = x * gens[s]
    right: Vec<Vec<u32>>,
    right_inv: Vec<Vec<u32>>,
    parent: Vec<u32>,
    last: Vec<u16>,
    word_start: Vec<u32>,
    word_letters: Vec<u16>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl fmt::Debug for RealizedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealizedGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("generators", &self.gen_names)
            .finish()
    }
}

impl RealizedGroup {
    /// Builds a group from a regular right action on points `0..n`, where
    /// point `0` plays the identity and `right[s]` is the permutation given by
    /// right multiplication with generator `s`.
    ///
    /// Returns the group and the map from input points to element indices.
    pub fn from_regular_action(
        name: impl Into<String>,
        gen_names: Vec<String>,
        right: Vec<Vec<u32>>,
        n: usize,
    ) -> Result<(Self, Vec<Elem>)> {
        if n > u32::MAX as usize / 2 {
            return Err(Error::OrderCap {
                order: n,
                cap: u32::MAX as usize / 2,
            });
        }
        if gen_names.len() != right.len() || right.len() > u16::MAX as usize {
            return Err(Error::InternalInconsistency(
                "generator names do not match permutations".into(),
            ));
        }
        for p in &right {
            if p.len() != n {
                return Err(Error::InternalInconsistency(
                    "permutation length differs from the point count".into(),
                ));
            }
        }
        const NONE: u32 = u32::MAX;
        let mut relabel = vec![NONE; n];
        let mut order_pts = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        let mut last = Vec::with_capacity(n);
        relabel[0] = 0;
        order_pts.push(0u32);
        parent.push(0u32);
        last.push(0u16);
        let mut head = 0;
        while head < order_pts.len() {
            let p = order_pts[head] as usize;
            for (s, perm) in right.iter().enumerate() {
                let q = perm[p] as usize;
                if relabel[q] == NONE {
                    relabel[q] = order_pts.len() as u32;
                    order_pts.push(q as u32);
                    parent.push(head as u32);
                    last.push(s as u16);
                }
            }
            head += 1;
        }
        if order_pts.len() != n {
            return Err(Error::InternalInconsistency(format!(
                "generators reach {} of {} points",
                order_pts.len(),
                n
            )));
        }
        let new_right: Vec<Vec<u32>> = right
            .iter()
            .map(|perm| {
                let mut v = vec![0u32; n];
                for (new, &old) in order_pts.iter().enumerate() {
                    v[new] = relabel[perm[old as usize] as usize];
                }
                v
            })
            .collect();
        let g = Self::assemble(name.into(), gen_names, new_right, parent, last)?;
        Ok((g, relabel.into_iter().map(|x| x as usize).collect()))
    }

    /// Builds a group from a multiplication oracle on indices `0..order`
    /// (index `0` the identity) and generating elements.
    ///
    /// Returns the group and the map from input indices to element indices.
    pub fn from_mul(
        name: impl Into<String>,
        gen_names: Vec<String>,
        order: usize,
        gens: &[usize],
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<(Self, Vec<Elem>)> {
        let right: Vec<Vec<u32>> = gens
            .iter()
            .map(|&g| (0..order).map(|x| mul(x, g) as u32).collect())
            .collect();
        Self::from_regular_action(name, gen_names, right, order)
    }

    /// Builds the group generated by permutations of `0..degree` (images
    /// listed per point, composed left to right).
    pub fn from_permutations(
        name: impl Into<String>,
        gen_names: Vec<String>,
        perms: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        let degree = perms.first().map_or(0, Vec::len);
        let identity: Vec<usize> = (0..degree).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); perms.len()];
        let mut head = 0;
        while head < elems.len() {
            for (s, p) in perms.iter().enumerate() {
                let prod: Vec<usize> = elems[head].iter().map(|&i| p[i]).collect();
                let next = index.len();
                let id = *index.entry(prod.clone()).or_insert_with(|| {
                    elems.push(prod);
                    next
                });
                if elems.len() > cap {
                    return Err(Error::OrderCap {
                        order: elems.len(),
                        cap,
                    });
                }
                right[s].push(id as u32);
            }
            head += 1;
        }
        let n = elems.len();
        Ok(Self::from_regular_action(name, gen_names, right, n)?.0)
    }

    fn assemble(
        name: String,
        gen_names: Vec<String>,
        right: Vec<Vec<u32>>,
        parent: Vec<u32>,
        last: Vec<u16>,
    ) -> Result<Self> {
        let n = parent.len();
        let right_inv: Vec<Vec<u32>> = right
            .iter()
            .map(|perm| {
                let mut inv = vec![0u32; n];
                for (x, &y) in perm.iter().enumerate() {
                    inv[y as usize] = x as u32;
                }
                inv
            })
            .collect();
        let mut word_start = Vec::with_capacity(n + 1);
        let mut word_letters = Vec::new();
        let mut scratch = Vec::new();
        for x in 0..n {
            word_start.push(word_letters.len() as u32);
            scratch.clear();
            let mut y = x;
            while y != 0 {
                scratch.push(last[y]);
                y = parent[y] as usize;
            }
            word_letters.extend(scratch.iter().rev());
        }
        word_start.push(word_letters.len() as u32);
        let gens = (0..right.len()).map(|s| right[s][0] as usize).collect();
        let mut g = RealizedGroup {
            name,
            gen_names,
            gens,
            right,
            right_inv,
            parent,
            last,
            word_start,
            word_letters,
            inverse: Vec::new(),
            table: None,
        };
        g.inverse = (0..n)
            .map(|x| {
                let mut y = 0u32;
                for &s in g.word_of(x).iter().rev() {
                    y = g.right_inv[s as usize][y as usize];
                }
                y
            })
            .collect();
        if n <= DENSE_LIMIT {
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                table[a * n] = a as u32;
                for b in 1..n {
                    let p = g.parent[b] as usize;
                    let s = g.last[b] as usize;
                    table[a * n + b] = g.right[s][table[a * n + p] as usize];
                }
            }
            g.table = Some(table);
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    /// Element indices of the generators.
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn is_dense(&self) -> bool {
        self.table.is_some()
    }

    /// Canonical word of `x` as a sequence of generator indices.
    pub fn word_of(&self, x: Elem) -> &[u16] {
        let a = self.word_start[x] as usize;
        let b = self.word_start[x + 1] as usize;
        &self.word_letters[a..b]
    }

    /// Canonical word of `x` as a run-length [`Word`].
    pub fn element_word(&self, x: Elem) -> Word {
        Word::from_letters(self.word_of(x).iter().map(|&s| Letter {
            gen: s as usize,
            exp: 1,
        }))
    }

    /// `x * gens[s]`
    pub fn mul_gen(&self, x: Elem, s: usize) -> Elem {
        self.right[s][x] as usize
    }

    /// `x * gens[s]^-1`
    pub fn mul_gen_inv(&self, x: Elem, s: usize) -> Elem {
        self.right_inv[s][x] as usize
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => {
                let mut x = a as u32;
                for &s in self.word_of(b) {
                    x = self.right[s as usize][x as usize];
                }
                x as usize
            }
        }
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `b^-1 a b`
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `a^-1 b^-1 a b`
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .fold(1usize, |acc, x| acc.lcm(&self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gens;
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Evaluates a word over this group's generators.
    pub fn eval(&self, w: &Word) -> Elem {
        let mut x = 0;
        for (s, inv) in w.units() {
            x = if inv {
                self.mul_gen_inv(x, s)
            } else {
                self.mul_gen(x, s)
            };
        }
        x
    }

    /// Exhaustively checks the group axioms. Associativity is only checked
    /// for orders up to `assoc_limit`; larger groups are checked on
    /// generator triples.
    pub fn verify_axioms(&self, assoc_limit: usize) -> Result<()> {
        let n = self.order();
        let fail = |msg: String| Err(Error::InternalInconsistency(msg));
        for a in 0..n {
            if self.mul(a, 0) != a || self.mul(0, a) != a {
                return fail(format!("0 is not an identity for {a}"));
            }
            let ai = self.inv(a);
            if self.mul(a, ai) != 0 || self.mul(ai, a) != 0 {
                return fail(format!("inverse of {a} is wrong"));
            }
        }
        if n <= assoc_limit {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        } else {
            for a in 0..n {
                for &b in &self.gens {
                    let ab = self.mul(a, b);
                    for &c in &self.gens {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(format!("associativity fails at ({a},{b},{c})"));
                        }
                    }
                }
            }
        }
        let reached = closure(&Arc::new(self.clone()), &self.gens).order();
        if reached != n {
            return fail(format!("generators reach {reached} of {n} elements"));
        }
        Ok(())
    }

    /// Short human label for an element, e.g. `a b^2` or `1`.
    pub fn element_label(&self, x: Elem) -> String {
        if x == 0 {
            return "1".into();
        }
        self.element_word(x).display(&self.gen_names).to_string()
    }

    /// Trivial group on no generators.
    pub fn trivial(name: impl Into<String>) -> Self {
        Self::from_regular_action(name, Vec::new(), Vec::new(), 1)
            .expect("trivial group")
            .0
    }

    /// Cyclic group of order `n` on one generator `a`.
    pub fn cyclic(n: usize) -> Self {
        if n == 1 {
            return Self::trivial("C1");
        }
        let perm = (0..n).map(|x| ((x + 1) % n) as u32).collect();
        Self::from_regular_action(format!("C{n}"), vec!["a".into()], vec![perm], n)
            .expect("cyclic group")
            .0
    }
}
