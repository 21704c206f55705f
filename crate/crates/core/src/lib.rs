//! Integrally closed modules of rank two attached to complete monomial
//! ideals in two variables.
//!
//! An m-primary monomial ideal `I ⊆ k[[x, y]]` is stored as its staircase
//! of minimal generators. From it the crate computes the Newton polygon,
//! the integral closure, the factorization of a complete ideal into simple
//! complete ideals, and the `2 × (r + 2)` presentation matrix `M_k(I)`.
//! [`choose_k`] picks a `k` for which `M_k(I)` is an indecomposable
//! integrally closed module whose ideal of maximal minors is `I`, and
//! records the side conditions it checked in a [`Certificate`].
//!
//! ```
//! use icmod_core::{choose_k, DecideOptions, MonomialIdeal, Branch};
//!
//! let i = MonomialIdeal::from_pairs(&[(7, 0), (5, 1), (3, 2), (2, 3), (1, 5), (0, 9)]).unwrap();
//! let cert = choose_k(&i, &DecideOptions::default()).unwrap();
//! assert_eq!(cert.branch, Branch::CaseI);
//! assert_eq!(cert.k, Some(3));
//! ```

pub mod engine;
pub mod error;
pub mod newton;
pub mod presentation;
pub mod staircase;
pub mod truncation;

pub use engine::{
    certificate_diff, choose_k, classify, orient, sufficient_indecomposable, valid_ks,
    verify_certificate, Branch, Certificate, Check, Classification, DecideOptions, Sufficiency,
    Verdict, TOOL_VERSION,
};
pub use error::{Error, Result};
pub use newton::{
    closure, is_complete, is_simple, reconstruct, simple_divides, zariski_factor, Factorization,
    NewtonPolygon, SimpleFactor,
};
pub use presentation::{
    build_mk, contracted_numeric, ell_value, fitting_condition_holds, fitting_shortcut, Column,
    FittingShortcut, Presentation2,
};
pub use staircase::{Monomial, MonomialIdeal};
pub use truncation::{
    closure_power_oracle, default_power_bound, enumerate_complete, module_colength,
    module_min_gens, poly_ideal_colength, Poly, PowerOracle, DEFAULT_MARGIN,
};
