//! Asymptotic disjointness profiles, the normality partition, the proximity
//! induced by a resemblance on exact models, and the proximity axioms.

mod disjoint;
mod normality;
mod proximity;

pub use disjoint::{disjoint_check, disjoint_check_with, DisjointVerdict, DivergenceProfile, PAIR_BUDGET};
pub use normality::{normality_partition, NormalityCertificate, Strip};
pub(crate) use proximity::meets;
pub use proximity::{check_proximity_axioms, check_proximity_axioms_sampled, delta_proximity, separating_set};
