//! Linear maps on matrices that preserve peripheral spectra of products:
//! sampled verification, and recovery of the standard forms
//! `λ T A T^{-1}`, `λ T A^t T^{-1}` (with `λ^m = 1`) and their unitary
//! versions `c U A U^*`, `c U A^t U^*` (with `c = ±1`).

mod lemmas;
mod preserve;
mod recover;
mod table;

pub use lemmas::{scalar_power_outcome, scalar_power_test, wigner_check, ScalarPowerOutcome, WignerKind};
pub use preserve::{sample_tuple, verify_preservation, Counterexample, PreservationOutcome, TupleKind};
pub use recover::{recover_banach_form, recover_hilbert_form, Constraint, Form, RecoveryReport};
pub use table::{root_of_unity, LinearMapTable};
