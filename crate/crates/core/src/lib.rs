//! Expander graphs, the permutation-invariant distance between proper
//! colorings, and codes made of colorings.

pub mod codes;
pub mod colorings;
pub mod error;
pub mod graphs;
pub mod rational;
pub mod regimes;
pub mod seeds;
pub mod spectral;

pub use codes::CodeSet;
pub use colorings::{Coloring, Distance};
pub use error::{CodeError, ColoringError, GraphError, RegimeError, SpectralError};
pub use rational::Fraction;
pub use graphs::{RegularGraph, Signing};
pub use spectral::Spectrum;
