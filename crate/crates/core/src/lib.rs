pub mod algebra;
pub mod expander;
pub mod fractures;
pub mod graph;
pub mod groups;
pub mod homcount;
pub mod oracle;
pub mod partitions;
pub mod pathcycle;
pub mod presentations;
pub mod selftest;
pub mod spectral;
