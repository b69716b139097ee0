//! Combinatorics of Harder-Narasimhan strata for `GL_n` and its inner forms.
//!
//! Everything is exact: rationals are `i64` fractions in lowest terms, and
//! linear algebra over the coefficient field uses big rationals.

pub mod hnengine;
pub mod kottwitz;
pub mod oracle;
pub mod rational;
pub mod rootdata;
pub mod strata;

pub use hnengine::{HnError, ModificationInstance, Polygon, SubobjectLattice};
pub use kottwitz::{GroupDatum, IsocrystalBlocks, KottwitzError, NewtonPoint, SimpleBlock};
pub use rational::{format_rational, parse_rational, q, qi, Rational};
pub use rootdata::{Cocharacter, Composition, RationalVector, RootDataError, WeylElement};
pub use strata::{HNType, StrataError, StratumReport};
