//! Exact arithmetic for abelian number fields, CM-types and their reflexes,
//! twist degree bounds, and inertia certificates over `Q(ζ₇)`.

pub mod cm;
pub mod fields;
pub mod groups;
pub mod inertia;
pub mod report;
pub mod sweep;
pub mod twist;
