//! Glauber dynamics for independent sets and proper colourings of
//! hypergraphs, with coupling experiments, closed-form mixing bounds and exact
//! counting oracles.
//!
//! ```
//! use hyperglauber::{chains::ChainParams, exact::count_independent_sets, Hypergraph};
//!
//! let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
//! assert_eq!(count_independent_sets(&h).unwrap().total, 7);
//! assert!(ChainParams::independent_set(1.0).is_ok());
//! ```

pub mod analytics;
pub mod chains;
pub mod coupling;
pub mod error;
pub mod exact;
pub mod hypergraph;
pub mod rng;

pub use error::{Error, Result};
pub use hypergraph::{Graph, Hypergraph};
