//! Quasi-measure theory made computable on discretized spaces.
//!
//! The crate models a rectangle as a cell grid with dual connectivity,
//! constructs quasi-measures (the square measure, three-point measures,
//! point masses, pushforwards, mixtures) through the solid-set extension
//! chain, integrates sampled functions against them via pushforward
//! distributions on the line, and builds image transformations together
//! with their induced quasi-homomorphisms, adjoint pullbacks, and the
//! factorization through finite samples of simple measures. Every axiom
//! and derived identity is exposed as an executable check.

pub mod error;
pub mod family;
pub mod func;
pub mod grid;
pub mod integral;
pub mod map;
pub mod measure;
pub mod report;
pub mod transform;
pub mod value;

pub use error::{Error, Result};
pub use func::GridFunction;
pub use grid::{
    connected_components, dilate, erode, erode_within, is_connected, is_solid, sets_adjacent, Cell,
    CellSet, Connectivity, DistinguishedGeometry, Grid, Image, Kind, Rect,
};
pub use integral::{
    change_of_variables_check, default_subordinates, integrate, pushforward_distribution,
    quasi_linearity_check, riesz_roundtrip_check, simple_value, spectrum, staircase,
    staircase_with_shift, sublevel, verify_staircase, PushforwardDistribution,
    StaircaseDecomposition,
};
pub use map::CellMap;
pub use measure::{
    check_additivity, check_regularity, dirac_characterization_check, find_nonsubadditive_witness,
    is_simple, DiracCharacterization, DisjointPair, NonSubadditiveWitness, QuasiMeasure, SolidRule,
};
pub use report::{CheckReport, Status, WitnessDump};
pub use transform::{
    change_of_variables_transform_check, check_axioms, compose, derived_properties_check,
    enrich_basis_with_level_ramps, factorize, induced_function, pullback,
    reconstruct_from_homomorphism, FactorizationReport, ImageTransformation, StarSample,
};
pub use value::Value;
