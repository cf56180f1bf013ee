//! Strong-product structure for planar and k-apex graphs.
//!
//! Every 2-apex graph embeds in `H1 ⊠ H2 ⊠ K_2` where each `H_i` is a forest
//! plus at most one vertex. This crate builds such embeddings explicitly,
//! verifies them independently, and constructs the planar gadgets showing
//! that one factor cannot be a tree when the other has treewidth 2.
//!
//! ```
//! use prodstruct::embedding::apex_product_structure;
//! use prodstruct::graph::catalogue::icosahedron;
//!
//! let e = apex_product_structure(&icosahedron()).unwrap();
//! assert!(e.validate().is_ok());
//! assert_eq!(e.c, 2);
//! ```

pub mod decomposition;
pub mod embedding;
pub mod generators;
pub mod graph;
pub mod io;
pub mod lowerbound;
pub mod partition;

pub use graph::{Graph, GraphError, Matching, VertexMap};
pub use partition::VertexPartition;
