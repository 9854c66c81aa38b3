//! Currents of integration over parametrized chains and currents represented
//! by polynomial forms: pairings, boundaries, masses, classification and the
//! maps between Rumin and Federer–Fleming currents.

pub mod cantor;
pub mod chain;
pub mod classify;
pub mod mass;
pub mod pairing;
pub mod smooth;

pub use chain::{Chain, ChainConfig, Domain, ParamSimplex, SimplexConfig};
pub use classify::{classify, classify_smooth, Classification, Verdict};
pub use mass::{mass, mass_report, oblique_mass, oblique_mass_pairing_sup, rumin_mass, MassReport};
pub use pairing::{pair_chain, pair_chain_numeric, PairValue};
pub use smooth::{b_operator, ff_pair, hat, oblique_correction, tilde, Current, SmoothCurrent};
