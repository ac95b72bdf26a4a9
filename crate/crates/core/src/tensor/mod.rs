//! Compatible actions, `η(G,H)` and `ν(G)`, tensor products and the
//! subgroups `J₂`, `Δ`, `Δ̃` of the tensor square.

pub mod actions;
pub mod direct;
pub mod eta;
pub mod oracle;

pub use actions::{action_table, validate_compatibility, CompatibleActionPair};
pub use direct::{tensor_direct, tensor_presentation};
pub use eta::{
    build_eta, build_nu, delta, delta_tilde, derived_map, j2, kappa, tensor_set, EtaOptions,
    EtaRealization, Origin, TensorSet, DEFAULT_ETA_CAP, DEFAULT_ETA_ORDER_CAP,
};
pub use oracle::abelian_tensor_oracle;
