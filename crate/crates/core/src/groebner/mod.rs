//! Groebner bases and ideal operations.

mod buchberger;
mod hilbert;
mod ideal;

pub use buchberger::{
    groebner_basis, groebner_basis_default, is_groebner_basis, reduce, StepCounter,
    DEFAULT_STEP_BUDGET,
};
pub use hilbert::{dimension_and_multiplicity, hilbert_numerator, standard_monomials};
pub use ideal::{minimal_homogeneous_generators, Ideal};
