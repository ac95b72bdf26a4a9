use crate::enumerate::{realize_with, EnumerationBudget, EnumerationStats, Strategy};
use crate::error::Result;
use crate::group::{RealizedGroup, DEFAULT_ORDER_CAP};
use crate::word::{Presentation, Word};

use super::CompatibleActionPair;

/// Presentation of `G ⊗ H` on one symbol `g⊗h` per element pair, with
///
/// * `gg' ⊗ h = (g^{g'} ⊗ h^{g'})(g' ⊗ h)`
/// * `g ⊗ hh' = (g ⊗ h')(g^{h'} ⊗ h^{h'})`
///
/// for all elements.
pub fn tensor_presentation(pair: &CompatibleActionPair) -> Result<Presentation> {
    let (g, h) = (pair.g(), pair.h());
    let nh = h.order();
    let t = |a: usize, b: usize| Word::gen(a * nh + b);
    let names = g
        .elements()
        .flat_map(|a| h.elements().map(move |b| format!("t{a}_{b}")))
        .collect();
    let mut rels = Vec::new();
    for x in g.elements() {
        for x1 in g.elements() {
            for y in h.elements() {
                let lhs = t(g.mul(x, x1), y);
                let rhs = t(g.conj(x, x1), pair.act_on_h(y, x1)).mul(&t(x1, y));
                rels.push(lhs.inverse().mul(&rhs));
            }
        }
    }
    for x in g.elements() {
        for y in h.elements() {
            for y1 in h.elements() {
                let lhs = t(x, h.mul(y, y1));
                let rhs = t(x, y1).mul(&t(pair.act_on_g(x, y1), h.conj(y, y1)));
                rels.push(lhs.inverse().mul(&rhs));
            }
        }
    }
    rels.retain(|r| !r.is_identity());
    Presentation::new(format!("{}(x){}", g.name(), h.name()), names, rels)
}

/// Realizes `G ⊗ H` from its defining relations, independently of η.
pub fn tensor_direct(
    pair: &CompatibleActionPair,
    budget: &EnumerationBudget,
) -> Result<(RealizedGroup, EnumerationStats)> {
    let p = tensor_presentation(pair)?;
    realize_with(&p, *budget, Strategy::default(), DEFAULT_ORDER_CAP)
}
