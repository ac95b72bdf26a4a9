//! Homotopy-group invariants computed from group data: `π₃(SK(G,1))`,
//! `H₂(G)`, `π₂^S(K(G,1))`, triad, wedge and pushout groups, the order
//! bounds, and the finiteness reports.

pub mod bounds;
pub mod pushout;
pub mod reports;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    abelian, closure, derived_subgroup, kernel, quotient, AbelianInvariants, Elem, Homomorphism,
    RealizedGroup, Subgroup,
};
use crate::tensor::{self, build_eta, build_nu, CompatibleActionPair, EtaOptions, EtaRealization};

pub use bounds::{bound_pushout_pi3, bound_theorem_a, bound_theorem_b, BoundReport};
pub use pushout::{pushout_em, three_connected_check, PushoutInput, PushoutResult, ThreeConnectedReport};
pub use reports::{
    burnside_exponent_check, finiteness_report, theorem_c_report, BurnsideReport,
    FinitenessReport, Property, TheoremCReport,
};

/// A quotient `upper / lower` with `upper` materialized as its own group.
#[derive(Debug, Clone)]
pub struct Section {
    pub upper: Arc<RealizedGroup>,
    /// `lower` as a subgroup of `upper`.
    pub lower: Subgroup,
    pub quotient: Arc<RealizedGroup>,
    pub projection: Homomorphism,
}

/// Materializes `upper` and forms `upper / lower`; both must share a parent
/// and `lower` must be normal in `upper`.
pub fn section(upper: &Subgroup, lower: &Subgroup, name: &str) -> Result<Section> {
    if !lower.is_subgroup_of(upper) {
        return Err(Error::InternalInconsistency(format!(
            "{name}: lower term is not contained in the upper term"
        )));
    }
    let (u, back) = upper.to_group(format!("{name} upper"))?;
    let u = Arc::new(u);
    let local: Vec<Elem> = lower
        .members()
        .iter()
        .map(|&x| back.iter().position(|&y| y == x).expect("contained"))
        .collect();
    let lower = closure(&u, &local);
    let (q, projection) = quotient(&u, &lower, name)?;
    Ok(Section {
        upper: u,
        lower,
        quotient: q,
        projection,
    })
}

/// `ν(G)` together with κ, `J₂`, `Δ`, `Δ̃` and `G'`.
#[derive(Debug, Clone)]
pub struct NuData {
    pub g: Arc<RealizedGroup>,
    pub nu: EtaRealization,
    pub kappa: Homomorphism,
    pub j2: Subgroup,
    pub delta: Subgroup,
    pub delta_tilde: Subgroup,
    pub derived: Subgroup,
}

impl NuData {
    pub fn compute(g: &Arc<RealizedGroup>, opts: &EtaOptions) -> Result<NuData> {
        let nu = build_nu(g, opts)?;
        Self::from_nu(nu)
    }

    pub fn from_nu(nu: EtaRealization) -> Result<NuData> {
        let g = nu.pair().g().clone();
        let kappa = tensor::kappa(&nu)?;
        let j2 = kernel(&kappa);
        let delta = tensor::delta(&nu)?;
        let delta_tilde = tensor::delta_tilde(&nu)?;
        for (name, s) in [("J2", &j2), ("Delta", &delta), ("Delta~", &delta_tilde)] {
            nu.is_normal_in_eta(s).map_err(|_| {
                Error::InternalInconsistency(format!("{name} is not normal in nu(G)"))
            })?;
        }
        Ok(NuData {
            derived: derived_subgroup(&g),
            g,
            nu,
            kappa,
            j2,
            delta,
            delta_tilde,
        })
    }

    pub fn tensor_group(&self) -> &Arc<RealizedGroup> {
        self.nu.tensor_group()
    }

    pub fn tensor_order(&self) -> usize {
        self.nu.tensor().order()
    }

    /// `π₃(SK(G,1)) ≅ J₂(G)` as a standalone group.
    pub fn pi3_suspension(&self) -> Result<RealizedGroup> {
        Ok(self.j2.to_group(format!("J2({})", self.g.name()))?.0)
    }

    /// `H₂(G) = J₂(G) / Δ(G)`.
    pub fn schur_multiplier(&self) -> Result<Section> {
        section(&self.j2, &self.delta, &format!("H2({})", self.g.name()))
    }

    /// `J₂(G) / Δ̃(G)`, which is both `π₂^S(K(G,1))` and `π₄(S²K(G,1))`.
    pub fn stable_pi2(&self) -> Result<Section> {
        section(&self.j2, &self.delta_tilde, &format!("pi2S({})", self.g.name()))
    }

    /// Order products and structural exactness of the three sequences
    /// `J₂ → [G,G^φ] → G'`, `Δ → J₂ → H₂` and `Δ̃ → J₂ → J₂/Δ̃`.
    pub fn exactness(&self) -> Result<Exactness> {
        let t = self.nu.tensor().order();
        let image = self.kappa.image();
        let kernel_ok = {
            let k: Vec<Elem> = self
                .tensor_group()
                .elements()
                .filter(|&x| self.kappa.apply(x) == 0)
                .collect();
            k == self.j2.members()
        };
        let derived_sequence = SequenceCheck {
            name: "J2 -> [G,G^phi] -> G'".into(),
            left: self.j2.order(),
            middle: t,
            right: self.derived.order(),
            exact: kernel_ok && image.members() == self.derived.members(),
        };
        let h2 = self.schur_multiplier()?;
        let s2 = self.stable_pi2()?;
        Ok(Exactness {
            derived: derived_sequence,
            schur: section_check("Delta -> J2 -> H2", &h2),
            stable: section_check("Delta~ -> J2 -> J2/Delta~", &s2),
        })
    }
}

/// Orders in a short sequence `1 → left → middle → right → 1` and whether
/// it was verified exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceCheck {
    pub name: String,
    pub left: usize,
    pub middle: usize,
    pub right: usize,
    pub exact: bool,
}

impl SequenceCheck {
    pub fn orders_multiply(&self) -> bool {
        self.left * self.right == self.middle
    }

    pub fn holds(&self) -> bool {
        self.exact && self.orders_multiply()
    }
}

fn section_check(name: &str, s: &Section) -> SequenceCheck {
    let ker = kernel(&s.projection);
    let onto = s.projection.image().order() == s.quotient.order();
    SequenceCheck {
        name: name.into(),
        left: s.lower.order(),
        middle: s.upper.order(),
        right: s.quotient.order(),
        exact: onto && ker.same_members(&s.lower),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exactness {
    pub derived: SequenceCheck,
    pub schur: SequenceCheck,
    pub stable: SequenceCheck,
}

impl Exactness {
    pub fn all(&self) -> [&SequenceCheck; 3] {
        [&self.derived, &self.schur, &self.stable]
    }

    pub fn holds(&self) -> bool {
        self.all().iter().all(|s| s.holds())
    }
}

pub fn pi3_suspension_k(g: &Arc<RealizedGroup>, opts: &EtaOptions) -> Result<RealizedGroup> {
    NuData::compute(g, opts)?.pi3_suspension()
}

pub fn schur_multiplier(g: &Arc<RealizedGroup>, opts: &EtaOptions) -> Result<Arc<RealizedGroup>> {
    Ok(NuData::compute(g, opts)?.schur_multiplier()?.quotient)
}

pub fn stable_pi2_k(g: &Arc<RealizedGroup>, opts: &EtaOptions) -> Result<Arc<RealizedGroup>> {
    Ok(NuData::compute(g, opts)?.stable_pi2()?.quotient)
}

/// Same group as [`stable_pi2_k`].
pub fn pi4_double_suspension(
    g: &Arc<RealizedGroup>,
    opts: &EtaOptions,
) -> Result<Arc<RealizedGroup>> {
    stable_pi2_k(g, opts)
}

/// `π_{p+1}(A,C)` and `π_{q+1}(B,C)` with their mutual actions.
#[derive(Debug, Clone)]
pub struct TriadInput {
    pub actions: CompatibleActionPair,
    pub p: u32,
    pub q: u32,
}

#[derive(Debug, Clone)]
pub struct TriadResult {
    /// `π_n(X; A, B)` with `n = p + q + 1`.
    pub group: Arc<RealizedGroup>,
    pub dimension: u32,
    pub eta: EtaRealization,
}

pub fn triad_group(t: &TriadInput, opts: &EtaOptions) -> Result<TriadResult> {
    if t.p == 0 || t.q == 0 {
        return Err(Error::Usage("p and q must be at least 1".into()));
    }
    let eta = build_eta(&t.actions, opts)?;
    Ok(TriadResult {
        group: eta.tensor_group().clone(),
        dimension: t.p + t.q + 1,
        eta,
    })
}

/// `π₃(K(A,2) ∨ K(B,2)) ≅ A ⊗ B` for abelian `A`, `B`.
pub fn wedge_pi3(a: &AbelianInvariants, b: &AbelianInvariants) -> AbelianInvariants {
    tensor::abelian_tensor_oracle(a, b)
}

/// Invariants of an abelian realized group, or of its abelianization
/// otherwise.
pub fn invariants(g: &RealizedGroup) -> Result<AbelianInvariants> {
    if g.is_abelian() {
        abelian::invariants_of_abelian_group(g)
    } else {
        abelian::abelianization_invariants(&Arc::new(g.clone()))
    }
}
