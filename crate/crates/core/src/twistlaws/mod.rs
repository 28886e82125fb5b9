//! Heegner-type setups and the power-of-two laws for Tamagawa numbers of
//! quadratic twists.

mod auxiliary;
mod case3;
mod checks;
mod quantities;
mod setup;

pub use auxiliary::{
    find_auxiliary_discriminant, search_discriminant, SignPattern, DEFAULT_SEARCH_BOUND,
};
pub use case3::{case3_enumeration, Case3Enumeration, C2_PROFILE, C4_PROFILE};
pub use checks::{
    lemma32_check, lemma33_check, quadrec_exponent, quadrec_symbol, tamrecrel_check,
    tamrecrel_check_with, two_adic_case_check, IdentityCheck, SquareClassCheck, TamRecRelCheck,
    TwoAdicCase, TwoAdicCaseCheck,
};
pub use quantities::{
    theorem13_quantity, theorem31_quantity, u_of_discriminant, ExponentVerdict, PairVerdict,
    QuantityTerms, TwistData,
};
pub use setup::{
    canonical_setup, canonical_split, decompose, validate_setup, Decomposition, DecompositionSide,
    TwistSetup,
};

#[cfg(test)]
mod tests;
