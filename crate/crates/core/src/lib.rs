//! Restricted ("coloured") integer partitions and Gentile statistics.
//!
//! p_k^s(n) counts partitions of n into s-th powers of positive integers
//! where no power repeats more than k times. [`exact`] computes these counts
//! exactly; [`asymptotics`] gives the saddle-point densities of states that
//! approximate them; [`cli`] ties both into comparison tables.

pub mod asymptotics;
pub mod cli;
pub mod exact;
pub mod selftest;
pub mod specialfn;

pub use asymptotics::{DensityEstimate, Formula, SaddleData, StatWeight};
pub use exact::{count, count_table, BigCount, CountTable, Multiplicity, PartitionSpec};
