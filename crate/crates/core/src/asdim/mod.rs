//! Covers and their multiplicity, uniform boundedness, brick covers of
//! lattices as upper-bound certificates, and an exact search for
//! lower-bound witnesses on finite boxes.

mod bricks;
mod cover;
mod lower;

pub use bricks::{asdim_upper, brick_cover, default_side, verify_certificate, DimCertificate, ScaleCertificate};
pub use cover::{
    balls_refine, member_points, multiplicity, multiplicity_witness, point_diameter, refines, restrict_cover,
    s_neighborhood, s_relation, transport_family, uncovered, uniformly_bounded_check, unrefined_member, Cover,
    Direction, UBVerdict, UBWitness,
};
pub use lower::{lower_bound_search, validate_cover, LowerBound, BRANCH_CAP, LINE_CAP};
