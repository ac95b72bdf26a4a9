//! Non-abelian tensor products of finite groups and the homotopy-group
//! invariants built from them.
//!
//! Groups enter as finite presentations, are realized by Todd-Coxeter coset
//! enumeration, and every construction (`η(G,H)`, `ν(G)`, `G ⊗ H`, `J₂(G)`,
//! `Δ(G)`, ...) is materialized as a concrete finite group.

pub mod enumerate;
pub mod error;
pub mod group;
pub mod homotopy;
pub mod io;
pub mod suite;
pub mod tensor;
pub mod word;

pub use error::{Error, Result};
pub use group::{AbelianInvariants, Elem, Homomorphism, RealizedGroup, Subgroup};
pub use word::{Letter, Presentation, Word};
