//! Finite-model toolkit for bounded distributive lattices with a strict
//! implication and a weak difference: axiom checking, prime-filter
//! spectra, relational frames and complex algebras, congruences, tense
//! (Boolean) extensions, and exhaustive enumeration of small models.

pub mod algebra;
pub mod congruence;
pub mod enumerate;
pub mod frame;
pub mod io;
pub mod lattice;
pub mod spectrum;
pub mod tense;
pub mod term;

pub use algebra::{
    axiom, diamond_example, three_chain_constant_example, three_chain_example, ArrowAlgebra,
    Violation, AXIOM_IDS,
};
pub use congruence::{
    all_congruences_oracle, all_congruences_with, cep_spot_check, closed_of_theta,
    congruence_lattice_distributive, congruences_permute, doubly_closed_sets, is_congruence,
    is_subuniverse, principal_congruence, subalgebra, theta_of_closed, Congruence,
    CongruenceError,
};
pub use enumerate::{
    bdl_counts_direct, canonical_hash, canonical_key, dwh_catalog, enumerate_algebras,
    enumerate_bdls, enumerate_frames, isomorphic, whb_catalog, EnumerateError, FrameKind,
};
pub use io::{algebra_from_json, algebra_to_json, frame_from_json, frame_to_json, lattice_from_json, AlgebraJson, FrameJson, IoError};
pub use frame::{check_morphism, dualize_map, hom_violation, Frame, FrameError, MorphismViolation};
pub use lattice::{all_filters, iter_set, prime_filters, set_of, ElemSet, Filter, FiniteBDL, LatticeError, PrimeFilter};
pub use spectrum::{
    canonical_frame, closure_d, closure_f, related_r, related_s, relation_r, relation_s,
    representation_embedding, stone_map, witness_r, witness_s,
};
pub use tense::{
    check_tense_axioms, check_universal_property, congruence_transfer, d_cyclicity,
    mt_canonical_relations, mt_congruence_count, principal_tense_congruence, s4_check,
    sigma, tense_extension, tense_filter_generated_by, tense_filters, TenseAlgebra,
    TenseAxiomViolation, TenseError, TransferReport, UniversalReport,
};
pub use term::{parse_equation, parse_term, Equation, Signature, Term, TermError};
