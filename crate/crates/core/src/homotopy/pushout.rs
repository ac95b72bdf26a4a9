use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{commutator_subgroup, intersection, is_normal, join, kernel, RealizedGroup, Subgroup};
use crate::tensor::{build_eta, derived_map, CompatibleActionPair, EtaOptions};

use super::section;

/// `K(G/M,1) ← K(G,1) → K(G/N,1)` described by `G` and normal `M`, `N`.
#[derive(Debug, Clone)]
pub struct PushoutInput {
    pub g: Arc<RealizedGroup>,
    pub m: Subgroup,
    pub n: Subgroup,
}

#[derive(Debug, Clone)]
pub struct PushoutResult {
    /// `(M ∩ N) / [M, N]`
    pub pi2: Arc<RealizedGroup>,
    /// Kernel of `[M, N^φ] → G`, `[a, b^φ] ↦ [a, b]`.
    pub pi3: Arc<RealizedGroup>,
    /// Order of `[M, N^φ]`.
    pub tensor_order: usize,
}

pub fn pushout_em(p: &PushoutInput, opts: &EtaOptions) -> Result<PushoutResult> {
    let g = &p.g;
    if !Arc::ptr_eq(p.m.parent(), g) || !Arc::ptr_eq(p.n.parent(), g) {
        return Err(Error::MixedParents);
    }
    is_normal(&p.m)?;
    is_normal(&p.n)?;
    let meet = intersection(&p.m, &p.n)?;
    let comm = commutator_subgroup(&p.m, &p.n)?;
    let pi2 = section(&meet, &comm, "pi2")?.quotient;

    let (m, m_back) = p.m.to_group("M")?;
    let (n, n_back) = p.n.to_group("N")?;
    let (m, n) = (Arc::new(m), Arc::new(n));
    let local = |back: &[usize], x: usize| {
        back.iter()
            .position(|&y| y == x)
            .expect("conjugate stays in a normal subgroup")
    };
    // Both actions are conjugation inside G.
    let mut m_on_n = Vec::with_capacity(m.order() * n.order());
    for a in m.elements() {
        for b in n.elements() {
            m_on_n.push(local(&n_back, g.conj(n_back[b], m_back[a])));
        }
    }
    let mut n_on_m = Vec::with_capacity(m.order() * n.order());
    for b in n.elements() {
        for a in m.elements() {
            n_on_m.push(local(&m_back, g.conj(m_back[a], n_back[b])));
        }
    }
    let pair = CompatibleActionPair::from_tables(m, n, m_on_n, n_on_m)?;
    let eta = build_eta(&pair, opts)?;
    let k = derived_map(&eta, g, &m_back, &n_back)?;
    let pi3 = kernel(&k).to_group("pi3")?.0;
    Ok(PushoutResult {
        pi2,
        pi3: Arc::new(pi3),
        tensor_order: eta.tensor().order(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeConnectedReport {
    pub pi1_trivial: bool,
    pub pi2_order: usize,
    pub pi3_order: usize,
    pub three_connected: bool,
}

impl ThreeConnectedReport {
    pub fn verdict(&self) -> &'static str {
        if self.three_connected {
            "3-connected"
        } else {
            "not 3-connected"
        }
    }
}

/// Requires `G = MN`, so that the pushout is simply connected, then reads
/// off `π₂` and `π₃`.
pub fn three_connected_check(p: &PushoutInput, opts: &EtaOptions) -> Result<ThreeConnectedReport> {
    let mn = join(&p.m, &p.n)?;
    if mn.order() != p.g.order() {
        return Err(Error::NotGeneratingPair);
    }
    let r = pushout_em(p, opts)?;
    let (pi2_order, pi3_order) = (r.pi2.order(), r.pi3.order());
    Ok(ThreeConnectedReport {
        pi1_trivial: true,
        pi2_order,
        pi3_order,
        three_connected: pi2_order == 1 && pi3_order == 1,
    })
}
