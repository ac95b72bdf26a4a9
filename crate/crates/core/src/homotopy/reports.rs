use std::sync::Arc;

use serde::Serialize;

use crate::enumerate::realize;
use crate::error::{Error, Result};
use crate::group::abelian::{abelian_invariants, abelianization_invariants, free_generators};
use crate::group::{AbelianInvariants, RealizedGroup};
use crate::tensor::{tensor_set, EtaOptions};
use crate::word::Presentation;

use super::{invariants, NuData};

/// Outcome of realizing a presentation, with the infinite case detected
/// from the abelianization first.
enum Realization {
    Finite(Arc<RealizedGroup>),
    /// Index of a generator with infinite-order image in `G^ab`.
    Infinite(usize),
    Undetermined(String),
}

fn try_realize(p: &Presentation, opts: &EtaOptions) -> Result<(AbelianInvariants, Realization)> {
    let rows = p.relation_matrix();
    let ab = abelian_invariants(&rows, p.rank())?;
    if !ab.is_finite() {
        let x = free_generators(&rows, p.rank())[0];
        return Ok((ab, Realization::Infinite(x)));
    }
    match realize(p, opts.budget) {
        Ok((g, _)) => Ok((ab, Realization::Finite(Arc::new(g)))),
        Err(e @ Error::BudgetExceeded { .. }) => Ok((ab, Realization::Undetermined(e.to_string()))),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Finite,
    Infinite,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub status: Status,
    pub abelianization: AbelianInvariants,
    pub derived_order: Option<usize>,
    pub tensor_count_m: Option<usize>,
    pub tensor_order: Option<usize>,
    pub delta: Option<AbelianInvariants>,
    /// `G^ab` embeds in `Δ(G)` by invariant-factor divisibility.
    pub embeds_in_delta: Option<bool>,
    pub note: Option<String>,
}

pub fn finiteness_report(p: &Presentation, opts: &EtaOptions) -> Result<FinitenessReport> {
    let (ab, r) = try_realize(p, opts)?;
    let empty = |status, note: String| FinitenessReport {
        status,
        abelianization: ab.clone(),
        derived_order: None,
        tensor_count_m: None,
        tensor_order: None,
        delta: None,
        embeds_in_delta: None,
        note: Some(note),
    };
    match r {
        Realization::Infinite(x) => Ok(empty(
            Status::Infinite,
            format!("generator {} has infinite order in G^ab", p.generators[x]),
        )),
        Realization::Undetermined(why) => Ok(empty(
            Status::Undetermined,
            format!("undetermined, consistent with infinite: {why}"),
        )),
        Realization::Finite(g) => {
            let d = NuData::compute(&g, opts)?;
            let g_ab = abelianization_invariants(&g)?;
            let delta_group = d.delta.to_group("Delta")?.0;
            let delta = invariants(&delta_group)?;
            Ok(FinitenessReport {
                status: Status::Finite,
                embeds_in_delta: Some(g_ab.embeds_in(&delta)),
                abelianization: g_ab,
                derived_order: Some(d.derived.order()),
                tensor_count_m: Some(tensor_set(&d.nu).count()),
                tensor_order: Some(d.tensor_order()),
                delta: Some(delta),
                note: None,
            })
        }
    }
}

/// One row of the equivalence table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Property {
    pub key: char,
    pub statement: &'static str,
    pub value: bool,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCReport {
    pub regime: Status,
    pub properties: Vec<Property>,
    pub unanimous: bool,
    pub witness: Option<String>,
}

const STATEMENTS: [(char, &str); 7] = [
    ('a', "G is finite"),
    ('b', "the tensor set T(G) is finite"),
    ('c', "[G,G^phi] is finite"),
    ('d', "G' is finite and J2(G) is periodic"),
    ('e', "Delta(G) is periodic"),
    ('f', "Delta~(G) is periodic"),
    ('g', "[G,G^phi] is locally finite"),
];

/// Evaluates the seven equivalent finiteness properties and checks that
/// they agree.
pub fn theorem_c_report(p: &Presentation, opts: &EtaOptions) -> Result<TheoremCReport> {
    let (_, r) = try_realize(p, opts)?;
    let (regime, values, witness) = match r {
        Realization::Undetermined(why) => {
            return Err(Error::Undecided(format!(
                "no realization and no infinite-order certificate: {why}"
            )))
        }
        Realization::Infinite(x) => {
            let a = &p.generators[x];
            let witness = format!(
                "{a} (x) {a} has infinite order: {a} has infinite order in G^ab, so the image of \
                 {a} (x) {a} in G^ab (x) G^ab has a nonzero Z (x) Z component"
            );
            let evidence = [
                format!("{a} has infinite order in G^ab"),
                format!("the tensors {a}^k (x) {a} have distinct images k({a} (x) {a})"),
                format!("{a} (x) {a} has infinite order"),
                format!("[{a},{a}^phi] lies in J2(G) and has infinite order"),
                format!("Delta(G) contains {a} (x) {a}"),
                format!("Delta~(G) contains ({a} (x) {a})^2, of infinite order"),
                format!("the cyclic subgroup generated by {a} (x) {a} is infinite"),
            ];
            (Status::Infinite, evidence.map(|e| (false, e)), Some(witness))
        }
        Realization::Finite(g) => {
            let d = NuData::compute(&g, opts)?;
            let m = tensor_set(&d.nu).count();
            let t = d.tensor_order();
            let exp_j2 = d.j2.exponent();
            let evidence = [
                format!("|G| = {}", g.order()),
                format!("m = {m}"),
                format!("|[G,G^phi]| = {t}"),
                format!("|G'| = {}, exp J2(G) = {exp_j2}", d.derived.order()),
                format!("exp Delta(G) = {}", d.delta.exponent()),
                format!("exp Delta~(G) = {}", d.delta_tilde.exponent()),
                format!("[G,G^phi] is finite of order {t}"),
            ];
            (Status::Finite, evidence.map(|e| (true, e)), None)
        }
    };
    let properties: Vec<Property> = STATEMENTS
        .iter()
        .zip(values)
        .map(|(&(key, statement), (value, evidence))| Property {
            key,
            statement,
            value,
            evidence,
        })
        .collect();
    let unanimous = properties.iter().all(|p| p.value == properties[0].value);
    Ok(TheoremCReport {
        regime,
        properties,
        unanimous,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurnsideReport {
    pub tensor_exponent: usize,
    /// The exponent is one of 2, 3, 4, 6.
    pub applicable: bool,
    pub group_finite: bool,
    pub consistent: bool,
}

pub fn burnside_exponent_check(g: &Arc<RealizedGroup>, opts: &EtaOptions) -> Result<BurnsideReport> {
    let d = NuData::compute(g, opts)?;
    let e = d.nu.tensor().exponent();
    let applicable = matches!(e, 2 | 3 | 4 | 6);
    // A realized group is finite by construction.
    Ok(BurnsideReport {
        tensor_exponent: e,
        applicable,
        group_finite: true,
        consistent: true,
    })
}
