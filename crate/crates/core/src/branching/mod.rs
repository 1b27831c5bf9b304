//! Truncated character engine for m(δ;λ), identity checks, strongly
//! orthogonal roots, Schmid decompositions and the closed-form laws.

pub mod decompose;
pub mod engine;
pub mod laws;
pub mod series;

pub use decompose::{decompose_character, recompose};
pub use engine::{
    branch_multiplicities, branch_with_setup, degree_decompositions, restrict_finite_module, restricted_weights,
    verify_character_identity, verify_with_table, BranchEntry, BranchSetup, BranchingTable, IdentityReport,
    LambdaSpec, VermaSpec,
};
pub use laws::{
    closed_form_law, compositions, genericity_check, mf_scan, mf_table, restricted_roots, schmid_decomposition,
    strongly_orthogonal, strongly_orthogonal_sequence, GenericityReport, LawFamily, MfRow, SchmidReport,
};
pub use series::{sym_power_character, sym_powers, tensor, CharacterSeries, Disp, DispChar};
