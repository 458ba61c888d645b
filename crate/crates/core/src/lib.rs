//! Catacondensed benzenoid systems on the hexagonal lattice: Kekulé
//! structures, resonance graphs with their binary labelling, and executable
//! checks that resonance graphs of kinky systems are daisy cubes.
//!
//! ```
//! use benzenoid::genesis::fixture;
//! use benzenoid::pipeline::{check_instance, CheckOptions};
//!
//! let phenanthrene = fixture("phenanthrene").unwrap();
//! let report = check_instance(&phenanthrene, &CheckOptions::default()).unwrap();
//! assert!(report.passed());
//! ```

pub mod cubes;
pub mod error;
pub mod genesis;
pub mod hexgrid;
pub mod instance;
pub mod matching;
pub mod pipeline;
pub mod resonance;
pub mod resonant;
pub mod structure;

pub use error::{Error, Result};
pub use hexgrid::{build_benzenoid, Benzenoid, HexAddr, HexClass};
