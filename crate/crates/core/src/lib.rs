pub mod bitset;
pub mod cache;
pub mod canon;
pub mod criteria;
pub mod density;
pub mod domination;
pub mod error;
pub mod format;
pub mod graph;
pub mod kregular;
pub mod rank;
pub mod rational;
pub mod transform;
