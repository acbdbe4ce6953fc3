//! Permutation groups: products, stabilizer chains, centralizers and central series.

mod chain;
mod group;
mod permutation;

pub use chain::StabChain;
pub use group::{
    center, centralizer_in, check_identity1, identity1_holds_at, is_p_group,
    nilpotency_class_group, quotient_is_p_group_check, upper_central_series_group, GroupSeries,
    PermutationGroup,
};
pub use permutation::{commutator, compose, conjugate, Permutation};
