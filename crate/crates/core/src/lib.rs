//! Persistence pairing, shallow-pair cancellation and depth posets of
//! filtered Lefschetz complexes over Z/2.
//!
//! A [`LefschetzComplex`] is a finite set of cells
//! with dimensions and a mod-2 incidence relation whose square vanishes. A
//! [`Filter`] orders the cells; the induced
//! [`OrderedBoundaryMatrix`] yields the
//! birth-death pairing. Shallow (apparent) pairs can be cancelled one at a
//! time, and the dependencies between those cancellations form the
//! [`DepthPoset`], built here from two book-keeping
//! matrix reductions and checked against brute-force enumeration in
//! [`oracle`].
//!
//! ```
//! use depthposet::fixtures;
//! use depthposet::depth_poset::build_depth_poset;
//!
//! let (complex, filter) = fixtures::circle();
//! let poset = build_depth_poset(&complex, &filter).unwrap();
//! assert_eq!(poset.len(), 7);
//! ```

pub mod cancellation;
pub mod cli;
pub mod complex;
pub mod depth_poset;
pub mod emit;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod io;
pub mod oracle;

pub use cancellation::{cancel, cancel_sequence, cancel_shallow, is_shallow, shallow_pairs, ShallowPair};
pub use complex::{betti, sublevel, BettiVector, Cell, CellId, Filter, LefschetzComplex, Reindexed};
pub use depth_poset::{build_depth_poset, order_pi, reduce_alpha, reduce_omega, BirthDeathPair, DepthPoset};
pub use error::{Error, Result};
pub use gf2::{standard_reduction, OrderedBoundaryMatrix, Pairing};
