//! Coherent sheaves on a weighted projective line.

pub mod poset;
mod sheaf;
pub mod wide;
pub mod window;

pub use self::sheaf::{
    ext_dim, ext_dim_direct, hom_dim, is_exceptional, is_exceptional_sequence, orthogonal,
    perp_membership, IndecSheaf, SheafJson,
};
pub use self::wide::{
    c_inv_from_torsion_exc, enumerate_wid_c, exc_torsion_perp_decompose, is_c_invariant, k0_rank,
    leq, membership, CInvariant, Resolved, WideSubcat,
};
