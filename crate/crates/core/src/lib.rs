//! Topological Markov-Dyck shifts and their Cantor horizon λ-graph systems.
//!
//! - [`markov`]: transition matrices, admissible words, irreducibility,
//!   condition (I) and entropy.
//! - [`dyck`]: the bracket-word recognizer for `D_A`, a brute-force oracle,
//!   predecessor sets and nonsoficity witnesses.
//! - [`horizon`]: the leveled labeled graph presenting `D_A`, its structural
//!   identities, path searches and DOT/JSON export.
//! - [`ktheory`]: exact integer linear algebra (Smith normal form) and the
//!   level-by-level K-group approximants.
//! - [`cli`]: the `markov-dyck` command line.
//!
//! ```
//! use markov_dyck::dyck::{admissible, DyckWord};
//! use markov_dyck::markov::TransitionMatrix;
//!
//! let f = TransitionMatrix::fibonacci();
//! let w = DyckWord::parse("a1 b1 b2", 2).unwrap();
//! assert!(admissible(&w, &f).unwrap());
//! ```

pub mod cli;
pub mod dyck;
pub mod horizon;
pub mod intmat;
pub mod ktheory;
pub mod markov;
