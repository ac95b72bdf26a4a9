use std::sync::Arc;

use crate::enumerate::{realize_with, EnumerationBudget, EnumerationStats, Strategy};
use crate::error::{Error, Result};
use crate::group::{
    closure, derived_subgroup, extend_along_words, is_normal, kernel, Elem, Homomorphism,
    RealizedGroup, Subgroup,
};
use crate::word::{Presentation, Word};

use super::CompatibleActionPair;

/// Default cap on `|G|·|H|` for η builds.
pub const DEFAULT_ETA_CAP: usize = 144;

/// Default cap on `|η|`; `ν(C2×C2×C2)` already has 32768 elements.
pub const DEFAULT_ETA_ORDER_CAP: usize = 300_000;

#[derive(Debug, Clone)]
pub struct EtaOptions {
    pub budget: EnumerationBudget,
    pub strategy: Strategy,
    /// Largest allowed `|G|·|H|`.
    pub cap: usize,
    /// Largest allowed `|η|`.
    pub order_cap: usize,
    /// Present each factor on its own generators and quantify the
    /// conjugating element of both relator families over generators only.
    pub generator_only: bool,
    /// Fault injection: drop both η relator families.
    pub skip_eta_relators: bool,
}

impl Default for EtaOptions {
    fn default() -> Self {
        EtaOptions {
            budget: EnumerationBudget::default(),
            strategy: Strategy::default(),
            cap: DEFAULT_ETA_CAP,
            order_cap: DEFAULT_ETA_ORDER_CAP,
            generator_only: false,
            skip_eta_relators: false,
        }
    }
}

impl EtaOptions {
    pub fn with_budget(budget: EnumerationBudget) -> Self {
        EtaOptions {
            budget,
            ..Default::default()
        }
    }
}

/// Which factor an η generator comes from, and the element it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    G(Elem),
    H(Elem),
}

/// A realized `η(G,H)` with both embeddings and the tensor subgroup.
#[derive(Debug, Clone)]
pub struct EtaRealization {
    pair: CompatibleActionPair,
    presentation: Presentation,
    origins: Vec<Origin>,
    eta: Arc<RealizedGroup>,
    embed_g: Homomorphism,
    embed_h_phi: Homomorphism,
    tensor: Subgroup,
    // tensor_values[a * |H| + b] = [a, b^φ]
    tensor_values: Vec<Elem>,
    tensor_group: Arc<RealizedGroup>,
    tensor_back: Vec<Elem>,
    tensor_fwd: Vec<u32>,
    stats: EnumerationStats,
}

const NOT_IN_TENSOR: u32 = u32::MAX;

impl EtaRealization {
    pub fn pair(&self) -> &CompatibleActionPair {
        &self.pair
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn eta(&self) -> &Arc<RealizedGroup> {
        &self.eta
    }

    pub fn embed_g(&self) -> &Homomorphism {
        &self.embed_g
    }

    pub fn embed_h_phi(&self) -> &Homomorphism {
        &self.embed_h_phi
    }

    /// `[G, H^φ]` as a subgroup of η.
    pub fn tensor(&self) -> &Subgroup {
        &self.tensor
    }

    /// `[G, H^φ]` as a standalone group.
    pub fn tensor_group(&self) -> &Arc<RealizedGroup> {
        &self.tensor_group
    }

    pub fn stats(&self) -> &EnumerationStats {
        &self.stats
    }

    /// `[a, b^φ]` as an element of η.
    pub fn tensor_value(&self, a: Elem, b: Elem) -> Elem {
        self.tensor_values[a * self.pair.h().order() + b]
    }

    /// `[a, b^φ]` as an element of the tensor group.
    pub fn tensor_local(&self, a: Elem, b: Elem) -> Elem {
        self.to_tensor_local(self.tensor_value(a, b))
            .expect("tensor values lie in the tensor subgroup")
    }

    /// Tensor-group index of an η element, if it lies in `[G, H^φ]`.
    pub fn to_tensor_local(&self, x: Elem) -> Option<Elem> {
        match self.tensor_fwd[x] {
            NOT_IN_TENSOR => None,
            t => Some(t as usize),
        }
    }

    /// η element of a tensor-group index.
    pub fn from_tensor_local(&self, t: Elem) -> Elem {
        self.tensor_back[t]
    }

    /// `|η| = |[G,H^φ]|·|G|·|H|`.
    pub fn decomposition_holds(&self) -> bool {
        self.eta.order() == self.tensor.order() * self.pair.g().order() * self.pair.h().order()
    }

    /// Checks that a subgroup of the tensor group is normal in η.
    pub fn is_normal_in_eta(&self, s: &Subgroup) -> Result<()> {
        if !Arc::ptr_eq(s.parent(), &self.tensor_group) {
            return Err(Error::MixedParents);
        }
        for &x in s.members() {
            let xe = self.tensor_back[x];
            for &y in self.eta.generators() {
                let c = self.eta.conj(xe, y);
                if !self.to_tensor_local(c).is_some_and(|t| s.contains(t)) {
                    return Err(Error::NotNormal { element: xe, by: y });
                }
            }
        }
        Ok(())
    }
}

struct EtaWords {
    presentation: Presentation,
    origins: Vec<Origin>,
    word_g: Vec<Word>,
    word_h: Vec<Word>,
}

fn tensor_word(x: &Word, y: &Word) -> Word {
    Word::commutator(x, y)
}

/// Presentation on all non-identity elements of both factors.
fn full_presentation(pair: &CompatibleActionPair, skip_eta: bool) -> Result<EtaWords> {
    let (g, h) = (pair.g(), pair.h());
    let (ng, nh) = (g.order(), h.order());
    let mut names = Vec::new();
    let mut origins = Vec::new();
    let mut word_g = vec![Word::identity(); ng];
    let mut word_h = vec![Word::identity(); nh];
    for a in 1..ng {
        word_g[a] = Word::gen(names.len());
        names.push(format!("x{a}"));
        origins.push(Origin::G(a));
    }
    for b in 1..nh {
        word_h[b] = Word::gen(names.len());
        names.push(format!("y{b}"));
        origins.push(Origin::H(b));
    }
    let mut rels = Vec::new();
    for a in 1..ng {
        for b in 1..ng {
            rels.push(word_g[a].mul(&word_g[b]).mul(&word_g[g.mul(a, b)].inverse()));
        }
    }
    for a in 1..nh {
        for b in 1..nh {
            rels.push(word_h[a].mul(&word_h[b]).mul(&word_h[h.mul(a, b)].inverse()));
        }
    }
    if !skip_eta {
        let conjugators_g: Vec<Elem> = g.elements().collect();
        let conjugators_h: Vec<Elem> = h.elements().collect();
        eta_relators(pair, &word_g, &word_h, &conjugators_g, &conjugators_h, &mut rels);
    }
    rels.retain(|r| !r.is_identity());
    Ok(EtaWords {
        presentation: Presentation::new("eta", names, rels)?,
        origins,
        word_g,
        word_h,
    })
}

/// Presentation on small generating sets of both factors. The two relator
/// families are imposed for every element pair `(g, h)` but only for
/// conjugating generators; conjugation by a product then follows by
/// induction on word length.
fn generator_presentation(pair: &CompatibleActionPair, skip_eta: bool) -> Result<EtaWords> {
    let (g, h) = (pair.g(), pair.h());
    let gens_g = small_generating_set(g);
    let gens_h = small_generating_set(h);
    let kg = gens_g.len();
    let mut names = Vec::new();
    let mut origins = Vec::new();
    for (i, &x) in gens_g.iter().enumerate() {
        names.push(format!("x{i}"));
        origins.push(Origin::G(x));
    }
    for (i, &y) in gens_h.iter().enumerate() {
        names.push(format!("y{i}"));
        origins.push(Origin::H(y));
    }
    let word_g = shortest_words(g, &gens_g, 0);
    let word_h = shortest_words(h, &gens_h, kg);
    let mut rels = Vec::new();
    // Cayley-graph relators: w(x) s = w(xs).
    for (grp, gens, words, offset) in [(g, &gens_g, &word_g, 0), (h, &gens_h, &word_h, kg)] {
        for x in grp.elements() {
            for (i, &s) in gens.iter().enumerate() {
                rels.push(
                    words[x]
                        .mul(&Word::gen(offset + i))
                        .mul(&words[grp.mul(x, s)].inverse()),
                );
            }
        }
    }
    if !skip_eta {
        eta_relators(pair, &word_g, &word_h, &gens_g, &gens_h, &mut rels);
    }
    rels.retain(|r| !r.is_identity());
    Ok(EtaWords {
        presentation: Presentation::new("eta", names, rels)?,
        origins,
        word_g,
        word_h,
    })
}

/// Greedy generating set, trying elements of large order first.
fn small_generating_set(g: &Arc<RealizedGroup>) -> Vec<Elem> {
    let mut candidates: Vec<Elem> = g.elements().skip(1).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut span = closure(g, &[]);
    for x in candidates {
        if span.order() == g.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = closure(g, &gens);
        }
    }
    gens
}

/// Shortest words in `gens` and their inverses, with generator indices
/// shifted by `offset`.
fn shortest_words(g: &RealizedGroup, gens: &[Elem], offset: usize) -> Vec<Word> {
    let mut words: Vec<Option<Word>> = vec![None; g.order()];
    words[0] = Some(Word::identity());
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            for inv in [false, true] {
                let y = if inv { g.mul(x, g.inv(s)) } else { g.mul(x, s) };
                if words[y].is_none() {
                    let step = Word::from_units([(i + offset, inv)]);
                    words[y] = Some(words[x].as_ref().expect("visited").mul(&step));
                    queue.push_back(y);
                }
            }
        }
    }
    words.into_iter().map(|w| w.expect("generators reach every element")).collect()
}

/// `[g,h^φ]^{g1} = [g^{g1}, (h^{g1})^φ]` for `g1` in `conj_g` and
/// `[g,h^φ]^{h1^φ} = [g^{h1}, (h^{h1})^φ]` for `h1` in `conj_h`, over all
/// `g`, `h`.
fn eta_relators(
    pair: &CompatibleActionPair,
    word_g: &[Word],
    word_h: &[Word],
    conj_g: &[Elem],
    conj_h: &[Elem],
    rels: &mut Vec<Word>,
) {
    let (g, h) = (pair.g(), pair.h());
    for x in g.elements() {
        for y in h.elements() {
            let t = tensor_word(&word_g[x], &word_h[y]);
            for &x1 in conj_g {
                let lhs = Word::conjugate(&t, &word_g[x1]);
                let rhs = tensor_word(&word_g[g.conj(x, x1)], &word_h[pair.act_on_h(y, x1)]);
                rels.push(lhs.mul(&rhs.inverse()));
            }
            for &y1 in conj_h {
                let lhs = Word::conjugate(&t, &word_h[y1]);
                let rhs = tensor_word(&word_g[pair.act_on_g(x, y1)], &word_h[h.conj(y, y1)]);
                rels.push(lhs.mul(&rhs.inverse()));
            }
        }
    }
}

/// Realizes `η(G,H)` by coset enumeration and extracts the embeddings of
/// `G` and `H^φ` and the tensor subgroup `[G,H^φ]`.
pub fn build_eta(pair: &CompatibleActionPair, opts: &EtaOptions) -> Result<EtaRealization> {
    let (g, h) = (pair.g().clone(), pair.h().clone());
    let product = g.order() * h.order();
    if product > opts.cap {
        return Err(Error::CapExceeded {
            product,
            cap: opts.cap,
        });
    }
    let words = if opts.generator_only {
        generator_presentation(pair, opts.skip_eta_relators)?
    } else {
        full_presentation(pair, opts.skip_eta_relators)?
    };
    let (eta, stats) = realize_with(
        &words.presentation,
        opts.budget,
        opts.strategy,
        opts.order_cap,
    )?;
    let eta = Arc::new(eta.with_name(format!("eta({}, {})", g.name(), h.name())));

    let inconsistent = |what: &str| Error::InternalInconsistency(format!("eta build: {what}"));
    let eg: Vec<Elem> = words.word_g.iter().map(|w| eta.eval(w)).collect();
    let eh: Vec<Elem> = words.word_h.iter().map(|w| eta.eval(w)).collect();
    let embed_g = Homomorphism::new(g.clone(), eta.clone(), eg.clone())?;
    let embed_h_phi = Homomorphism::new(h.clone(), eta.clone(), eh.clone())?;
    if !embed_g.is_injective() || !embed_h_phi.is_injective() {
        return Err(inconsistent("an embedding is not injective"));
    }

    let tensor_values: Vec<Elem> = g
        .elements()
        .flat_map(|a| h.elements().map(move |b| (a, b)))
        .map(|(a, b)| eta.comm(eg[a], eh[b]))
        .collect();
    let mut distinct = tensor_values.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let tensor = closure(&eta, &distinct);
    is_normal(&tensor).map_err(|_| inconsistent("tensor subgroup is not normal"))?;
    if eta.order() != tensor.order() * g.order() * h.order() {
        return Err(inconsistent(&format!(
            "|eta| = {} but |[G,H^phi]|·|G|·|H| = {}·{}·{}",
            eta.order(),
            tensor.order(),
            g.order(),
            h.order()
        )));
    }
    let (tg, tensor_back) = tensor.to_group(format!("{} (x) {}", g.name(), h.name()))?;
    let mut tensor_fwd = vec![NOT_IN_TENSOR; eta.order()];
    for (t, &x) in tensor_back.iter().enumerate() {
        tensor_fwd[x] = t as u32;
    }
    Ok(EtaRealization {
        pair: pair.clone(),
        presentation: words.presentation,
        origins: words.origins,
        eta,
        embed_g,
        embed_h_phi,
        tensor,
        tensor_values,
        tensor_group: Arc::new(tg),
        tensor_back,
        tensor_fwd,
        stats,
    })
}

/// `ν(G)`: η with `H = G` and both actions conjugation.
pub fn build_nu(g: &Arc<RealizedGroup>, opts: &EtaOptions) -> Result<EtaRealization> {
    let pair = CompatibleActionPair::conjugation(g.clone())?;
    build_eta(&pair, opts)
}

/// The set `T⊗(G,H)` of tensors `[a, b^φ]`.
#[derive(Debug, Clone)]
pub struct TensorSet {
    /// Distinct tensors as η elements, sorted.
    pub elements: Vec<Elem>,
    /// `witness[i]` is a pair `(a, b)` with `[a, b^φ] = elements[i]`.
    pub witness: Vec<(Elem, Elem)>,
}

impl TensorSet {
    pub fn count(&self) -> usize {
        self.elements.len()
    }
}

pub fn tensor_set(e: &EtaRealization) -> TensorSet {
    let (g, h) = (e.pair.g(), e.pair.h());
    let mut found: Vec<(Elem, (Elem, Elem))> = Vec::new();
    let mut seen = vec![false; e.eta.order()];
    for a in g.elements() {
        for b in h.elements() {
            let t = e.tensor_value(a, b);
            if !std::mem::replace(&mut seen[t], true) {
                found.push((t, (a, b)));
            }
        }
    }
    found.sort_unstable();
    TensorSet {
        elements: found.iter().map(|f| f.0).collect(),
        witness: found.iter().map(|f| f.1).collect(),
    }
}

/// The homomorphism `[G,H^φ] → target` induced by sending each factor into
/// `target` (via `g_into` and `h_into`) and taking commutators there.
///
/// Well-definedness is checked on every relator of the η presentation; the
/// restriction to the tensor group is then verified exhaustively.
pub fn derived_map(
    e: &EtaRealization,
    target: &Arc<RealizedGroup>,
    g_into: &[Elem],
    h_into: &[Elem],
) -> Result<Homomorphism> {
    let gen_images: Vec<Elem> = e
        .origins
        .iter()
        .map(|o| match *o {
            Origin::G(x) => g_into[x],
            Origin::H(y) => h_into[y],
        })
        .collect();
    for r in &e.presentation.relators {
        let mut x = 0;
        for (s, inv) in r.units() {
            x = if inv {
                target.mul(x, target.inv(gen_images[s]))
            } else {
                target.mul(x, gen_images[s])
            };
        }
        if x != 0 {
            return Err(Error::InternalInconsistency(
                "derived map does not respect an eta relator".into(),
            ));
        }
    }
    let on_eta = extend_along_words(&e.eta, target, &gen_images);
    let images: Vec<Elem> = e.tensor_back.iter().map(|&x| on_eta[x]).collect();
    let k = Homomorphism::new(e.tensor_group.clone(), target.clone(), images)
        .map_err(|err| Error::InternalInconsistency(format!("derived map: {err}")))?;
    let (g, h) = (e.pair.g(), e.pair.h());
    for a in g.elements() {
        for b in h.elements() {
            if k.apply(e.tensor_local(a, b)) != target.comm(g_into[a], h_into[b]) {
                return Err(Error::InternalInconsistency(
                    "derived map does not send [a,b^phi] to [a,b]".into(),
                ));
            }
        }
    }
    Ok(k)
}

fn require_nu(e: &EtaRealization) -> Result<()> {
    if e.pair.is_conjugation() {
        Ok(())
    } else {
        Err(Error::Usage("this construction needs nu(G), not a general eta(G,H)".into()))
    }
}

/// `κ: [G,G^φ] → G`, `[g,h^φ] ↦ [g,h]`. Its image is checked to be `G'`.
pub fn kappa(e: &EtaRealization) -> Result<Homomorphism> {
    require_nu(e)?;
    let g = e.pair.g();
    let id: Vec<Elem> = g.elements().collect();
    let k = derived_map(e, g, &id, &id)?;
    if k.image().members() != derived_subgroup(g).members() {
        return Err(Error::InternalInconsistency("image of kappa is not G'".into()));
    }
    Ok(k)
}

/// `J₂(G) = ker κ`, inside the tensor group.
pub fn j2(e: &EtaRealization) -> Result<Subgroup> {
    Ok(kernel(&kappa(e)?))
}

/// `Δ(G) = ⟨[g,g^φ]⟩`, inside the tensor group.
pub fn delta(e: &EtaRealization) -> Result<Subgroup> {
    require_nu(e)?;
    let gens: Vec<Elem> = e.pair.g().elements().map(|x| e.tensor_local(x, x)).collect();
    Ok(closure(&e.tensor_group, &gens))
}

/// `Δ̃(G) = ⟨[g,h^φ][h,g^φ]⟩`, inside the tensor group. Every generator is
/// checked to lie in `ker κ`.
pub fn delta_tilde(e: &EtaRealization) -> Result<Subgroup> {
    require_nu(e)?;
    let k = kappa(e)?;
    let g = e.pair.g();
    let t = &e.tensor_group;
    let mut gens = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            let d = t.mul(e.tensor_local(x, y), e.tensor_local(y, x));
            if k.apply(d) != 0 {
                return Err(Error::InternalInconsistency(
                    "a generator of the symmetric diagonal is not in ker kappa".into(),
                ));
            }
            gens.push(d);
        }
    }
    gens.sort_unstable();
    gens.dedup();
    Ok(closure(t, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu(n: usize) -> EtaRealization {
        build_nu(&Arc::new(RealizedGroup::cyclic(n)), &EtaOptions::default()).unwrap()
    }

    #[test]
    fn eta_of_trivial_groups() {
        let one = Arc::new(RealizedGroup::trivial("1"));
        let p = CompatibleActionPair::trivial(one.clone(), one).unwrap();
        let e = build_eta(&p, &EtaOptions::default()).unwrap();
        assert_eq!(e.eta().order(), 1);
        assert!(e.decomposition_holds());
    }

    #[test]
    fn nu_of_small_cyclic_groups() {
        let e = nu(2);
        assert_eq!(e.eta().order(), 8);
        assert_eq!(e.tensor().order(), 2);
        let e = nu(3);
        assert_eq!(e.eta().order(), 27);
    }

    #[test]
    fn eta_c2_c3_trivial() {
        let p = CompatibleActionPair::trivial(
            Arc::new(RealizedGroup::cyclic(2)),
            Arc::new(RealizedGroup::cyclic(3)),
        )
        .unwrap();
        let e = build_eta(&p, &EtaOptions::default()).unwrap();
        assert_eq!(e.eta().order(), 6);
        assert!(e.tensor().is_trivial());
        assert_eq!(tensor_set(&e).count(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let g = Arc::new(RealizedGroup::cyclic(13));
        let r = build_nu(&g, &EtaOptions::default());
        assert!(matches!(r, Err(Error::CapExceeded { product: 169, cap: 144 })));
    }

    #[test]
    fn kappa_and_diagonals_for_c2() {
        let e = nu(2);
        let j = j2(&e).unwrap();
        assert_eq!(j.order(), 2);
        assert_eq!(delta(&e).unwrap().order(), 2);
        assert!(delta_tilde(&e).unwrap().is_trivial());
        e.is_normal_in_eta(&j).unwrap();
    }

    #[test]
    fn generator_only_matches_full_build() {
        let g = Arc::new(RealizedGroup::cyclic(4));
        let full = build_nu(&g, &EtaOptions::default()).unwrap();
        let opts = EtaOptions {
            generator_only: true,
            ..Default::default()
        };
        let small = build_nu(&g, &opts).unwrap();
        assert_eq!(full.eta().order(), small.eta().order());
        assert_eq!(j2(&small).unwrap().order(), 4);
    }

    #[test]
    fn skipping_eta_relators_leaves_a_free_product() {
        let g = Arc::new(RealizedGroup::cyclic(2));
        let opts = EtaOptions {
            skip_eta_relators: true,
            budget: EnumerationBudget::with_max_cosets(5_000),
            ..Default::default()
        };
        assert!(matches!(build_nu(&g, &opts), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn kappa_rejects_general_eta() {
        let p = CompatibleActionPair::trivial(
            Arc::new(RealizedGroup::cyclic(2)),
            Arc::new(RealizedGroup::cyclic(2)),
        )
        .unwrap();
        let e = build_eta(&p, &EtaOptions::default()).unwrap();
        assert!(kappa(&e).is_err());
    }
}
