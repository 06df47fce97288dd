//! Registry of relations satisfied by the two discrete analogues, with a
//! coefficient-wise verifier and a seeded whole-catalog auditor.

mod audit;
mod identity;
mod registry;
mod sampler;
mod verify;

pub use audit::{audit_catalog, AuditEntry, AuditFilter};
pub use identity::{
    Constraints, ExpectedStatus, Family, Identity, RelTerm, Relation, RelationBuilder, Target,
};
pub use registry::builtin_catalog;
pub use sampler::{ParamSampler, DEFAULT_SEED};
pub use verify::{
    side_series, verify_identity, verify_recursion_sum, RelationReport, SamplePoint,
    VerifyMode, VerifyOptions, DEFAULT_TOLERANCE,
};
